//! Exhaustive range checks of the closure laws behind the non-representability
//! results, the three small non-representable witnesses, and the
//! `q1*q2 + p - 2` family.
//!
//! Every check returns a [`LawReport`]. A check whose hypothesis never held
//! on the tested range passes *vacuously* and says so.

use alloc::vec::Vec;

use crate::arith::{factorize, is_prime};
use crate::msets::{is_sum_of_two_squares, norm_form, MSetSpec, Membership, MembershipSieve};
use crate::repr::{is_representable, represent_with, ReprQuery, SearchContext};
use crate::{Error, Result, DEFAULT_SPAN_BUDGET};

/// Family witnesses above this are emitted without the exhaustive check.
pub const FAMILY_VERIFY_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LawId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    Thm,
}

/// `n` satisfied the hypothesis but `image` broke the conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counterexample {
    pub n: u64,
    pub image: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LawReport {
    pub law: LawId,
    /// Which check produced this report, e.g. `"base_scaling"`.
    pub check: &'static str,
    /// The set checked, when there is one.
    pub spec: Option<MSetSpec>,
    pub lo: u64,
    pub hi: u64,
    /// Integers in range satisfying the hypothesis.
    pub instances: u64,
    /// Conclusions verified.
    pub checks: u64,
    pub counterexamples: Vec<Counterexample>,
    pub vacuous: bool,
}

impl LawReport {
    fn new(law: LawId, check: &'static str, spec: Option<MSetSpec>, lo: u64, hi: u64) -> Self {
        Self { law, check, spec, lo, hi, instances: 0, checks: 0, counterexamples: Vec::new(), vacuous: true }
    }

    fn finish(mut self) -> Self {
        self.vacuous = self.checks == 0;
        self
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(())
}

fn need_k3(k: u32) -> Result<MSetSpec> {
    if k < 3 {
        return Err(Error::InvalidK { k, min: 3 });
    }
    MSetSpec::nk(k).map_err(|_| Error::InvalidK { k, min: 3 })
}

/// Values of the `Z[ζ8]` norm form not hit by `n` stay unhit by `2^a * n`.
///
/// Uses only the stabilized value set of the quartic up to `limit`;
/// checks every non-value `n` and every `a <= a_max` with `2^a * n <= limit`.
pub fn check_norm_form_scaling(limit: u64, a_max: u32) -> Result<LawReport> {
    if a_max == 0 {
        return Err(Error::Zero { param: "a_max" });
    }
    let (values, _) = norm_form::stable_values(limit)?;
    let mut report = LawReport::new(LawId::L1, "norm_form_scaling", MSetSpec::nk(3).ok(), 1, limit);
    for n in (1..=limit).filter(|n| values.binary_search(n).is_err()) {
        report.instances += 1;
        for a in 1..=a_max {
            let Some(image) = 1u64.checked_shl(a).and_then(|s| s.checked_mul(n)).filter(|&v| v <= limit) else {
                break;
            };
            report.checks += 1;
            if values.binary_search(&image).is_ok() {
                report.counterexamples.push(Counterexample { n, image });
            }
        }
    }
    Ok(report.finish())
}

/// Non-members stay non-members after multiplying by `base^a`, `1 <= a <= a_max`.
pub fn check_base_scaling(spec: MSetSpec, lo: u64, hi: u64, a_max: u32) -> Result<LawReport> {
    check_range(lo, hi)?;
    if a_max == 0 {
        return Err(Error::Zero { param: "a_max" });
    }
    let law = match spec.family() {
        crate::msets::Family::Nk => LawId::L3,
        crate::msets::Family::Mp => LawId::L5,
    };
    let b = spec.base();
    let top = b.checked_pow(a_max).and_then(|s| s.checked_mul(hi)).unwrap_or(u64::MAX);
    let sieve = MembershipSieve::new(spec, lo, top.min(lo.saturating_add(DEFAULT_SPAN_BUDGET - 1)))?;
    let mut report = LawReport::new(law, "base_scaling", Some(spec), lo, hi);
    for n in (lo..=hi).filter(|&n| !sieve.contains(n)) {
        report.instances += 1;
        let mut image = n;
        for _ in 0..a_max {
            let Some(next) = image.checked_mul(b) else { break };
            image = next;
            report.checks += 1;
            if sieve.contains(image) {
                report.counterexamples.push(Counterexample { n, image });
            }
        }
    }
    Ok(report.finish())
}

/// For `n ≡ 0 mod 2^(k-1) (2^k - 1)^2` not representable as an `Nk` member
/// plus at most `k` powers of 2, checks that `2n` is not representable
/// either. Expected to be vacuous at desk scale.
pub fn check_doubling_representability(k: u32, lo: u64, hi: u64) -> Result<LawReport> {
    check_range(lo, hi)?;
    let spec = need_k3(k)?;
    let modulus = doubling_modulus(k)?;
    let mut report = LawReport::new(LawId::L4, "doubling_representability", Some(spec), lo, hi);
    let Some(top) = hi.checked_mul(2) else {
        return Err(Error::Overflow { param: "2 * hi" });
    };
    let oracle = MembershipSieve::new(spec, 1, top.min(DEFAULT_SPAN_BUDGET))?;
    let first = lo.div_ceil(modulus) * modulus;
    for n in (first..=hi).step_by(modulus as usize) {
        let q = ReprQuery::new(n, spec, k)?;
        if represent_with(&q, &oracle)?.is_some() {
            continue;
        }
        report.instances += 1;
        report.checks += 1;
        let doubled = ReprQuery::new(2 * n, spec, k)?;
        if represent_with(&doubled, &oracle)?.is_some() {
            report.counterexamples.push(Counterexample { n, image: 2 * n });
        }
    }
    Ok(report.finish())
}

/// `2^(k-1) * (2^k - 1)^2`.
pub fn doubling_modulus(k: u32) -> Result<u64> {
    let m = 1u64.checked_shl(k).filter(|_| k < 64).ok_or(Error::Overflow { param: "2^k" })? - 1;
    m.checked_mul(m)
        .and_then(|sq| sq.checked_mul(1 << (k - 1)))
        .ok_or(Error::Overflow { param: "2^(k-1) (2^k - 1)^2" })
}

/// For every `n ≡ 0 mod (2^k - 1)^2` in range, `2n - (2^k - 1)` is neither a
/// sum of two squares nor an `Nk` member. Unconditional, so never vacuous
/// on a range containing a multiple.
pub fn check_mersenne_obstruction(k: u32, lo: u64, hi: u64) -> Result<LawReport> {
    check_range(lo, hi)?;
    let spec = need_k3(k)?;
    let m = (1u64 << k) - 1;
    let step = m.checked_mul(m).ok_or(Error::Overflow { param: "(2^k - 1)^2" })?;
    let mut report = LawReport::new(LawId::L4, "mersenne_obstruction", Some(spec), lo, hi);
    let first = lo.div_ceil(step) * step;
    for n in (first..=hi).step_by(step as usize) {
        let image = n.checked_mul(2).ok_or(Error::Overflow { param: "2n" })? - m;
        report.instances += 1;
        report.checks += 1;
        if is_sum_of_two_squares(image)? || spec.contains(image) {
            report.counterexamples.push(Counterexample { n, image });
        }
    }
    Ok(report.finish())
}

/// Non-representable `n` (`Mp`, base `p`, at most `p - 2` powers) has `p*n`
/// non-representable as well.
pub fn check_scaling_representability(p: u64, lo: u64, hi: u64) -> Result<LawReport> {
    check_range(lo, hi)?;
    let spec = MSetSpec::mp(p)?;
    let t = u32::try_from(p - 2).map_err(|_| Error::TooManyPowers { t: u32::MAX, max: crate::repr::MAX_POWERS })?;
    let top = hi.checked_mul(p).ok_or(Error::Overflow { param: "p * hi" })?;
    let ctx = SearchContext::new(spec, p, t, top)?;
    let scaled = ctx.mark(lo * p, top)?;
    let mut report = LawReport::new(LawId::L6, "scaling_representability", Some(spec), lo, hi);
    for n in ctx.classify(lo, hi)? {
        report.instances += 1;
        report.checks += 1;
        let image = n * p;
        let i = (image - lo * p) as usize;
        if scaled[i / 64] >> (i % 64) & 1 == 1 {
            report.counterexamples.push(Counterexample { n, image });
        }
    }
    Ok(report.finish())
}

/// The three fixed non-representable witnesses `(n, p)`, each with `p - 2` powers.
pub const SMALL_WITNESSES: [(u64, u64); 3] = [(11, 3), (9, 5), (20, 7)];

/// 11 (`M3`, one power of 3), 9 (`M5`, three powers of 5) and 20 (`M7`,
/// five powers of 7) are not representable. A counterexample's `image` is
/// the member of the witness found.
pub fn verify_small_witnesses() -> Result<LawReport> {
    let mut report = LawReport::new(LawId::L7, "small_witnesses", None, 9, 20);
    for (n, p) in SMALL_WITNESSES {
        let q = ReprQuery::new(n, MSetSpec::mp(p)?, (p - 2) as u32)?;
        report.instances += 1;
        report.checks += 1;
        if let Some(w) = is_representable(&q)? {
            report.counterexamples.push(Counterexample { n, image: w.member });
        }
    }
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyCheck {
    /// Exhaustively shown not representable.
    Certified,
    /// A representation exists; the construction failed here.
    Refuted,
    /// Above [`FAMILY_VERIFY_BOUND`]; only the congruence invariants were checked.
    Unchecked,
}

/// `n = q1*q2 + p - 2` with distinct primes `q1 < q2`, both `≢ 1 (mod p)`,
/// and `q1*q2 ≡ 1 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilyWitness {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
    pub n: u64,
    pub check: FamilyCheck,
}

/// The `count` smallest family members for `p`, ordered by `n`.
pub fn theorem_family(p: u64, count: usize) -> Result<Vec<FamilyWitness>> {
    let spec = MSetSpec::mp(p)?;
    if count == 0 {
        return Err(Error::Zero { param: "count" });
    }
    let t = u32::try_from(p - 2).unwrap_or(u32::MAX);
    let mut out = Vec::with_capacity(count);
    // Products ≡ 1 (mod p), ascending.
    let mut product = p + 1;
    while out.len() < count {
        let f = factorize(product)?;
        if let [(q1, 1), (q2, 1)] = f.factors[..] {
            if q1 % p != 1 && q2 % p != 1 {
                let n = product.checked_add(p - 2).ok_or(Error::Overflow { param: "n" })?;
                let check = if n <= FAMILY_VERIFY_BOUND && t <= crate::repr::MAX_POWERS {
                    match is_representable(&ReprQuery::new(n, spec, t)?)? {
                        None => FamilyCheck::Certified,
                        Some(_) => FamilyCheck::Refuted,
                    }
                } else {
                    FamilyCheck::Unchecked
                };
                out.push(FamilyWitness { p, q1, q2, n, check });
            }
        }
        product = product.checked_add(p).ok_or(Error::Overflow { param: "q1 * q2" })?;
    }
    Ok(out)
}

/// Family invariants for one witness: primality and distinctness of the
/// factors, the residue conditions, `n ≡ -1 (mod p)`, and `q1*q2 ∉ Mp`.
pub fn family_invariants_hold(w: &FamilyWitness) -> bool {
    let p = w.p;
    let product = w.q1 * w.q2;
    is_prime(w.q1)
        && is_prime(w.q2)
        && w.q1 < w.q2
        && w.q1 % p != 1
        && w.q2 % p != 1
        && product % p == 1
        && w.n == product + p - 2
        && w.n % p == p - 1
        && MSetSpec::mp(p).is_ok_and(|s| !s.contains(product))
}

/// Generates `count` family witnesses and reports any that are refuted or
/// break the family invariants. The counterexample image is `q1 * q2`.
pub fn check_theorem_family(p: u64, count: usize) -> Result<LawReport> {
    let family = theorem_family(p, count)?;
    let hi = family.last().map_or(0, |w| w.n);
    let mut report = LawReport::new(LawId::Thm, "theorem_family", Some(MSetSpec::mp(p)?), family[0].n, hi);
    for w in &family {
        report.instances += 1;
        if w.check != FamilyCheck::Unchecked {
            report.checks += 1;
        }
        if w.check == FamilyCheck::Refuted || !family_invariants_hold(w) {
            report.counterexamples.push(Counterexample { n: w.n, image: w.q1 * w.q2 });
        }
    }
    Ok(report.finish())
}
