//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every criterion returns a textual report next to its verdict. Criterion 10
//! reruns 1 through 9 on one and on four worker threads and compares those
//! reports byte for byte with the first run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclonorm::parallel;
use cyclonorm_core::census::{self, Ratio};
use cyclonorm_core::laws;
use cyclonorm_core::msets::{generate_members, is_member, norm_form};
use cyclonorm_core::{MSetSpec, Membership};
use serde_json::Value;

struct Verdict {
    passed: bool,
    detail: String,
    report: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>, report: String) -> Self {
        Verdict { passed, detail: detail.into(), report }
    }
}

type Criterion = fn(Option<usize>) -> Verdict;

/// Runs the CLI in-process; returns (exit code, stdout).
fn cli(threads: Option<usize>, args: &[&str]) -> (i32, String) {
    let mut argv = vec!["cyclonorm".to_string()];
    if let Some(n) = threads {
        argv.push("--threads".into());
        argv.push(n.to_string());
    }
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cyclonorm::run(argv, &mut out, &mut err);
    let out = String::from_utf8(out).expect("utf-8 stdout");
    if code == 2 {
        eprintln!("{}", String::from_utf8_lossy(&err));
    }
    (code, out)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or(Value::Null)
}

fn pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool").install(f)
}

fn reports(v: &Value) -> &[Value] {
    v["result"]["reports"].as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn no_counterexamples(r: &Value) -> bool {
    r["counterexamples"].as_array().is_some_and(Vec::is_empty)
}

fn c1(threads: Option<usize>) -> Verdict {
    let (code, out) = cli(threads, &["verify", "--law", "l7"]);
    let v = json(&out);
    let r = reports(&v);
    let ok = code == 0
        && v["passed"] == true
        && r.len() == 1
        && r[0]["instances"] == 3
        && no_counterexamples(&r[0])
        && r[0]["vacuous"] == false;
    Verdict::new(ok, "11 (M3, t=1), 9 (M5, t=3), 20 (M7, t=5) all NONREP", out)
}

fn c2(threads: Option<usize>) -> Verdict {
    let (code, out) = cli(threads, &["search", "--set", "mp:7", "--max-powers", "5", "--lo", "1", "--hi", "30"]);
    let v = json(&out);
    let list: Vec<u64> = v["result"]["non_representable"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    let ok = code == 0 && list.contains(&20);
    Verdict::new(ok, format!("non-representable in [1,30]: {list:?}"), out)
}

fn c3(_: Option<usize>) -> Verdict {
    let limit = 2000;
    let (values, bound) = match norm_form::stable_values(limit) {
        Ok(v) => v,
        Err(e) => return Verdict::new(false, e.to_string(), String::new()),
    };
    let members = generate_members(&MSetSpec::nk(3).unwrap(), limit).unwrap();
    let ok = values == members;
    let detail = format!("{} quartic values, {} N3 members up to {limit}, box {bound}", values.len(), members.len());
    Verdict::new(ok, detail.clone(), format!("{detail}\n{values:?}\n"))
}

fn c4(threads: Option<usize>) -> Verdict {
    let hi = 1_000_000;
    let specs = ["nk:3", "nk:4", "mp:3", "mp:5", "mp:7"];
    let mut report = String::new();
    let mut ok = true;
    for s in specs {
        let spec: MSetSpec = s.parse().unwrap();
        let sieve = match pool(threads, || parallel::sieve(spec, 1, hi)) {
            Ok(sv) => sv,
            Err(e) => return Verdict::new(false, format!("{s}: {e}"), report),
        };
        let generated = generate_members(&spec, hi).unwrap();
        let sieved: Vec<u64> = sieve.members().collect();
        let mut mismatches = 0u64;
        if sieved != generated {
            mismatches += 1;
        }
        for n in 1..=hi {
            let pointwise = is_member(&spec, n).unwrap();
            if pointwise != sieve.contains(n) || pointwise != generated.binary_search(&n).is_ok() {
                mismatches += 1;
            }
        }
        ok &= mismatches == 0;
        report.push_str(&format!("{s} members={} mismatches={mismatches}\n", sieved.len()));
    }
    Verdict::new(ok, report.trim_end().replace('\n', "; "), report)
}

fn c5(threads: Option<usize>) -> Verdict {
    let hi = "1e5";
    let mut report = String::new();
    let mut ok = true;
    let mut runs = Vec::new();
    for k in ["3", "4"] {
        runs.push(cli(threads, &["verify", "--law", "l3", "--k", k, "--hi", hi, "--a-max", "3"]));
    }
    for p in ["3", "5", "7"] {
        runs.push(cli(threads, &["verify", "--law", "l5", "--p", p, "--hi", hi, "--a-max", "3"]));
    }
    let mut counted = 0;
    for (code, out) in &runs {
        let v = json(out);
        ok &= *code == 0 && reports(&v).iter().all(|r| no_counterexamples(r) && r["vacuous"] == false);
        counted += reports(&v).len();
        report.push_str(out);
    }
    let mut stripped_mismatches = 0;
    for s in ["nk:3", "nk:4", "mp:3", "mp:5", "mp:7"] {
        let spec: MSetSpec = s.parse().unwrap();
        let sieve = pool(threads, || parallel::sieve(spec, 1, 100_000)).unwrap();
        let bad = (1..=100_000u64).filter(|&n| sieve.contains(n) != sieve.contains(spec.strip_base(n))).count();
        stripped_mismatches += bad;
        report.push_str(&format!("{s} stripped-part mismatches={bad}\n"));
    }
    ok &= counted == 5 && stripped_mismatches == 0;
    let detail = format!("{counted} scaling reports on [1,1e5] a_max=3, stripped-part mismatches {stripped_mismatches}");
    Verdict::new(ok, detail, report)
}

fn c6(threads: Option<usize>) -> Verdict {
    let mut report = String::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, hi) in [("3", "2000"), ("5", "500"), ("7", "300")] {
        let (code, out) = cli(threads, &["verify", "--law", "l6", "--p", p, "--hi", hi]);
        let v = json(&out);
        let r = reports(&v);
        ok &= code == 0 && r.len() == 1 && no_counterexamples(&r[0]) && r[0]["vacuous"] == false;
        parts.push(format!("p={p} n<={hi}: {} instances", r.first().map_or(Value::Null, |r| r["instances"].clone())));
        report.push_str(&out);
    }
    Verdict::new(ok, parts.join(", "), report)
}

fn c7(threads: Option<usize>) -> Verdict {
    let mut report = String::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, modulus) in [("3", 49), ("4", 225)] {
        let (code, out) = cli(threads, &["verify", "--law", "l4", "--k", k, "--hi", "1e5"]);
        let v = json(&out);
        let r = reports(&v);
        let obstruction = r.iter().find(|r| r["check"] == "mersenne_obstruction");
        let doubling = r.iter().find(|r| r["check"] == "doubling_representability");
        let obstruction_ok = obstruction.is_some_and(|r| {
            no_counterexamples(r) && r["vacuous"] == false && r["instances"] == 100_000 / modulus
        });
        let doubling_vacuous = doubling.is_some_and(|r| no_counterexamples(r) && r["vacuous"] == true);
        ok &= code == 0 && obstruction_ok && doubling_vacuous;
        parts.push(format!(
            "k={k}: obstruction {} instances, doubling vacuous={doubling_vacuous}",
            obstruction.map_or(Value::Null, |r| r["instances"].clone())
        ));
        report.push_str(&out);
    }
    Verdict::new(ok, parts.join(", "), report)
}

fn c8(threads: Option<usize>) -> Verdict {
    let mut report = String::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in ["3", "5", "7"] {
        let (code, out) = cli(threads, &["family", "--p", p, "--count", "50"]);
        let v = json(&out);
        let ws = v["result"]["witnesses"].as_array().cloned().unwrap_or_default();
        let certified = ws.iter().filter(|w| w["check"] == "certified").count();
        let within = ws.iter().all(|w| w["n"].as_u64().is_some_and(|n| n <= 1_000_000));
        ok &= code == 0 && ws.len() == 50 && certified == 50 && within;
        parts.push(format!("p={p}: {certified}/50 certified"));
        report.push_str(&out);
    }
    let first = |p: u64| laws::theorem_family(p, 1).ok().and_then(|w| w.first().map(|w| w.n));
    let (f3, f5) = (first(3), first(5));
    ok &= f3 == Some(11) && f5 == Some(9);
    parts.push(format!("first witnesses p=3 -> {f3:?}, p=5 -> {f5:?}"));
    report.push_str(&format!("{f3:?} {f5:?}\n"));
    Verdict::new(ok, parts.join(", "), report)
}

fn c9(threads: Option<usize>) -> Verdict {
    let mut report = String::new();
    let mut parts = Vec::new();

    let (code, out) = cli(threads, &["census", "--set", "mp:3", "--checkpoints", "10", "--format", "json"]);
    let small = json(&out)["result"]["rows"][0]["count"].as_u64();
    let mut ok = code == 0 && small == Some(5);
    parts.push(format!("count(M3, 10)={small:?}"));
    report.push_str(&out);

    for s in ["nk:3", "mp:3"] {
        let (code, out) = cli(threads, &["census", "--set", s, "--checkpoints", "1e5,1e6", "--format", "json"]);
        let v = json(&out);
        let norm = |i: usize| v["result"]["rows"][i]["normalized"].as_f64().unwrap_or(f64::NAN);
        let drift = (norm(1) / norm(0) - 1.0).abs();
        ok &= code == 0 && drift < 0.2;
        parts.push(format!("{s} drift {:.2}%", drift * 100.0));
        report.push_str(&out);
    }

    let ladder = [3u64, 10, 100, 1_000, 10_000, 100_000];
    let values: Vec<f64> = ladder
        .iter()
        .map(|&x| census::partial_density_product(3, x).map_or(f64::NAN, |d| d.value))
        .collect();
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let exact = census::partial_density_product(3, 3).ok().and_then(|d| d.exact);
    let three_quarters = exact == Some(Ratio { num: 3, den: 4 });
    ok &= decreasing && three_quarters;
    parts.push(format!("density product strictly decreasing={decreasing}, exact at 3={exact:?}"));
    report.push_str(&format!("{values:?} {exact:?}\n"));
    Verdict::new(ok, parts.join(", "), report)
}

const CRITERIA: [(Criterion, Duration); 9] = [
    (c1, Duration::from_secs(1)),
    (c2, Duration::from_secs(1)),
    (c3, Duration::from_secs(60)),
    (c4, Duration::from_secs(60)),
    (c5, Duration::from_secs(30)),
    (c6, Duration::from_secs(30)),
    (c7, Duration::from_secs(30)),
    (c8, Duration::from_secs(120)),
    (c9, Duration::from_secs(120)),
];

fn main() -> ExitCode {
    let mut all = true;
    let mut first_reports = Vec::new();
    for (i, (criterion, limit)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let v = criterion(None);
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let passed = v.passed && in_time;
        all &= passed;
        println!(
            "criterion {}: {} ({:.3}s of {}s) {}{}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            v.detail,
            if in_time { "" } else { " [time limit exceeded]" }
        );
        first_reports.push(v.report);
    }

    let mut differing = Vec::new();
    for threads in [1, 4] {
        for (i, (criterion, _)) in CRITERIA.iter().enumerate() {
            if criterion(Some(threads)).report != first_reports[i] {
                differing.push(format!("criterion {} on {threads} thread(s)", i + 1));
            }
        }
    }
    let deterministic = differing.is_empty();
    all &= deterministic;
    println!(
        "criterion 10: {} reports of criteria 1-9 byte-identical across three runs (default, 1 and 4 threads){}",
        if deterministic { "PASS" } else { "FAIL" },
        if deterministic { String::new() } else { format!("; differing: {}", differing.join(", ")) }
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
