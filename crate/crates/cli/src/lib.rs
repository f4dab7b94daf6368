//! Command-line front end for `cyclonorm-core`: argument parsing, JSON and
//! CSV reports, and thread-parallel range work.

pub mod args;
pub mod numeric;
pub mod parallel;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{CommandFactory, Parser};
use cyclonorm_core::arith::{factorize, pow_mod};
use cyclonorm_core::laws::{self, FamilyCheck, LawId, LawReport};
use cyclonorm_core::repr::{is_representable, ReprQuery};
use cyclonorm_core::{census, Error, MSetSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Law, VerifyArgs};

pub const TOOL: &str = "cyclonorm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

/// What a subcommand produced: the rendered output and whether every
/// verification in it passed.
struct Outcome {
    text: String,
    passed: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: Value,
    passed: bool,
    result: T,
}

fn json_report<T: Serialize>(command: &str, mut config: Value, passed: bool, result: T) -> Outcome {
    // Nothing here is randomized; the flag is recorded for readers of old reports.
    config["deterministic"] = json!(true);
    let env = Envelope { tool: TOOL, version: VERSION, command, config, passed, result };
    let mut text = serde_json::to_string_pretty(&env).expect("reports serialize");
    text.push('\n');
    Outcome { text, passed }
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1\n\n{}", Cli::command().render_usage());
            return EXIT_USAGE;
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", Cli::command().render_usage());
            EXIT_USAGE
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let tabular = matches!(cli.command, Command::Census(_) | Command::ClassCensus(_));
    let format = cli.format.unwrap_or(if tabular { Format::Csv } else { Format::Json });
    if format == Format::Csv && !tabular {
        return Err(CliError::Usage("--format csv is only available for census and class-census".into()));
    }
    match &cli.command {
        Command::Member(a) => member(a.spec, a.n),
        Command::Represent(a) => represent(a.spec, a.n, a.base, a.max_powers),
        Command::Search(a) => search(a.spec, a.base, a.max_powers, a.lo, a.hi),
        Command::Verify(a) => verify(a),
        Command::Family(a) => family(a.p, a.count),
        Command::Census(a) => census_cmd(a.spec, &a.checkpoints.0, format),
        Command::DensityProduct(a) => density_product(a.k, a.prime_limit),
        Command::ClassCensus(a) => class_census(a.k, a.t, a.x, format),
    }
}

#[derive(Serialize)]
struct FactorEvidence {
    prime: u64,
    exponent: u32,
    /// `prime^exponent` modulo the set's modulus; `None` for the ramified prime.
    residue: Option<u64>,
    allowed: bool,
}

fn member(spec: MSetSpec, n: u64) -> Result<Outcome, CliError> {
    let f = factorize(n)?;
    let evidence: Vec<FactorEvidence> = f
        .factors
        .iter()
        .map(|&(prime, exponent)| {
            if prime == spec.base() {
                FactorEvidence { prime, exponent, residue: None, allowed: true }
            } else {
                let residue = pow_mod(prime, u64::from(exponent), spec.modulus());
                FactorEvidence { prime, exponent, residue: Some(residue), allowed: residue == 1 }
            }
        })
        .collect();
    let is_member = cyclonorm_core::msets::is_member(&spec, n)?;
    let config = json!({ "set": spec, "n": n });
    let result = json!({
        "n": n,
        "member": is_member,
        "base": spec.base(),
        "modulus": spec.modulus(),
        "factorization": evidence,
    });
    Ok(json_report("member", config, true, result))
}

fn represent(spec: MSetSpec, n: u64, base: Option<u64>, t: u32) -> Result<Outcome, CliError> {
    let base = base.unwrap_or(spec.base());
    let q = ReprQuery::with_base(n, spec, base, t)?;
    let witness = is_representable(&q)?;
    let config = json!({ "set": spec, "n": n, "base": base, "max_powers": t });
    let result = json!({
        "n": n,
        "verdict": if witness.is_some() { "REP" } else { "NONREP" },
        "witness": witness,
    });
    Ok(json_report("represent", config, true, result))
}

fn search(spec: MSetSpec, base: Option<u64>, t: u32, lo: u64, hi: u64) -> Result<Outcome, CliError> {
    let base = base.unwrap_or(spec.base());
    let report = parallel::find_nonrepresentable(spec, base, t, lo, hi)?;
    let config = json!({ "set": spec, "base": base, "max_powers": t, "lo": lo, "hi": hi });
    Ok(json_report("search", config, true, report))
}

fn law_name(law: Law) -> &'static str {
    match law {
        Law::L1 => "l1",
        Law::L2 => "l2",
        Law::L3 => "l3",
        Law::L4 => "l4",
        Law::L5 => "l5",
        Law::L6 => "l6",
        Law::L7 => "l7",
        Law::Thm => "thm",
    }
}

/// Default upper bound for the representability scaling check by prime.
fn l6_default_hi(p: u64) -> u64 {
    match p {
        3 => 2000,
        5 => 500,
        _ => 300,
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let given: [(&str, bool); 7] = [
        ("lo", a.lo.is_some()),
        ("hi", a.hi.is_some()),
        ("k", a.k.is_some()),
        ("p", a.p.is_some()),
        ("a-max", a.a_max.is_some()),
        ("limit", a.limit.is_some()),
        ("count", a.count.is_some()),
    ];
    let allowed: &[&str] = match a.law {
        Law::L1 => &["limit", "a-max"],
        Law::L2 => &["lo", "hi"],
        Law::L3 => &["k", "lo", "hi", "a-max"],
        Law::L4 => &["k", "lo", "hi"],
        Law::L5 => &["p", "lo", "hi", "a-max"],
        Law::L6 => &["p", "lo", "hi"],
        Law::L7 => &[],
        Law::Thm => &["p", "count"],
    };
    if let Some((flag, _)) = given.iter().find(|(name, set)| *set && !allowed.contains(name)) {
        return Err(CliError::Usage(format!("--{flag} does not apply to law {}", law_name(a.law))));
    }
    let lo = a.lo.unwrap_or(1);
    let hi = a.hi.unwrap_or(100_000);
    let a_max = a.a_max.unwrap_or(3);
    let (config, reports) = match a.law {
        Law::L1 => {
            let limit = a.limit.unwrap_or(2000);
            (json!({ "limit": limit, "a_max": a_max }), vec![laws::check_norm_form_scaling(limit, a_max)?])
        }
        Law::L2 => {
            let mut r = laws::check_doubling_representability(3, lo, hi)?;
            r.law = LawId::L2;
            (json!({ "k": 3, "lo": lo, "hi": hi }), vec![r])
        }
        Law::L3 => {
            let k = a.k.unwrap_or(3);
            if k < 3 {
                return Err(Error::InvalidK { k, min: 3 }.into());
            }
            let spec = MSetSpec::nk(k)?;
            (json!({ "k": k, "lo": lo, "hi": hi, "a_max": a_max }), vec![laws::check_base_scaling(spec, lo, hi, a_max)?])
        }
        Law::L4 => {
            let k = a.k.unwrap_or(3);
            let reports = vec![
                laws::check_mersenne_obstruction(k, lo, hi)?,
                laws::check_doubling_representability(k, lo, hi)?,
            ];
            (json!({ "k": k, "lo": lo, "hi": hi }), reports)
        }
        Law::L5 => {
            let p = a.p.unwrap_or(3);
            let spec = MSetSpec::mp(p)?;
            (json!({ "p": p, "lo": lo, "hi": hi, "a_max": a_max }), vec![laws::check_base_scaling(spec, lo, hi, a_max)?])
        }
        Law::L6 => {
            let p = a.p.unwrap_or(3);
            let hi = a.hi.unwrap_or(l6_default_hi(p));
            (json!({ "p": p, "lo": lo, "hi": hi }), vec![laws::check_scaling_representability(p, lo, hi)?])
        }
        Law::L7 => (json!({}), vec![laws::verify_small_witnesses()?]),
        Law::Thm => {
            let p = a.p.unwrap_or(3);
            let count = a.count.unwrap_or(50);
            (json!({ "p": p, "count": count }), vec![laws::check_theorem_family(p, count)?])
        }
    };
    let mut config = config;
    config["law"] = json!(law_name(a.law));
    let passed = reports.iter().all(LawReport::passed);
    Ok(json_report("verify", config, passed, json!({ "reports": reports })))
}

fn family(p: u64, count: usize) -> Result<Outcome, CliError> {
    let witnesses = laws::theorem_family(p, count)?;
    let passed = witnesses.iter().all(|w| w.check != FamilyCheck::Refuted && laws::family_invariants_hold(w));
    let config = json!({ "p": p, "count": count, "verify_bound": laws::FAMILY_VERIFY_BOUND });
    Ok(json_report("family", config, passed, json!({ "witnesses": witnesses })))
}

fn census_cmd(spec: MSetSpec, checkpoints: &[u64], format: Format) -> Result<Outcome, CliError> {
    let rows = parallel::count_members(spec, checkpoints)?;
    match format {
        Format::Csv => {
            let mut text = String::from("x,count,normalized\n");
            for r in &rows {
                let _ = writeln!(text, "{},{},{}", r.x, r.count, r.normalized);
            }
            Ok(Outcome { text, passed: true })
        }
        Format::Json => {
            let config = json!({ "set": spec, "checkpoints": checkpoints, "growth_degree": spec.growth_degree() });
            Ok(json_report("census", config, true, json!({ "rows": rows })))
        }
    }
}

fn density_product(k: u32, prime_limit: u64) -> Result<Outcome, CliError> {
    let product = census::partial_density_product(k, prime_limit)?;
    let config = json!({ "k": k, "prime_limit": prime_limit });
    Ok(json_report("density-product", config, true, product))
}

fn class_census(k: u32, t: u32, x: u64, format: Format) -> Result<Outcome, CliError> {
    let table = parallel::residue_class_census(k, t, x)?;
    match format {
        Format::Csv => {
            let mut text = String::from(
                "class,popcount,integers,power_sums,representable,nonrepresentable,nonrepresentable_fraction,pairs\n",
            );
            for r in &table.rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{}",
                    r.class,
                    r.popcount,
                    r.integers,
                    r.power_sums,
                    r.representable,
                    r.nonrepresentable,
                    r.nonrepresentable_fraction,
                    r.pairs
                );
            }
            Ok(Outcome { text, passed: true })
        }
        Format::Json => {
            let config = json!({ "k": k, "t": t, "x": x });
            Ok(json_report("class-census", config, true, table))
        }
    }
}
