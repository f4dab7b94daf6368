//! Member counts against the `x / (log x)^(1 - 1/d)` growth law, partial
//! Euler products for the density, and per-residue-class counts of power
//! sums and representable integers.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{mod_order, popcount, primes_up_to};
use crate::msets::{MSetSpec, MembershipSieve};
use crate::repr::{enumerate_power_sums, SearchContext};
use crate::{Error, Result, DEFAULT_SPAN_BUDGET};

/// Member count at `x` with `count * (ln x)^(1 - 1/d) / x`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DensityRow {
    pub x: u64,
    /// `|{1 <= n <= x : n a member}|`.
    pub count: u64,
    pub normalized: f64,
}

impl DensityRow {
    pub fn new(spec: &MSetSpec, x: u64, count: u64) -> Self {
        let exponent = 1.0 - 1.0 / spec.growth_degree() as f64;
        let log = libm::log(x as f64);
        Self { x, count, normalized: count as f64 * libm::pow(log, exponent) / x as f64 }
    }
}

fn check_checkpoints(checkpoints: &[u64]) -> Result<u64> {
    let Some(&last) = checkpoints.last() else {
        return Err(Error::Zero { param: "checkpoints" });
    };
    if checkpoints[0] == 0 {
        return Err(Error::Zero { param: "checkpoint" });
    }
    if let Some(w) = checkpoints.windows(2).find(|w| w[0] > w[1]) {
        return Err(Error::InvalidRange { lo: w[0], hi: w[1] });
    }
    Ok(last)
}

/// Exact member counts at each checkpoint from one sieve over `[1, max]`.
pub fn count_members(spec: MSetSpec, checkpoints: &[u64]) -> Result<Vec<DensityRow>> {
    let last = check_checkpoints(checkpoints)?;
    count_members_in(&MembershipSieve::new(spec, 1, last)?, checkpoints)
}

/// [`count_members`] over a sieve the caller already built; it must cover
/// `[1, max checkpoint]`.
pub fn count_members_in(sieve: &MembershipSieve, checkpoints: &[u64]) -> Result<Vec<DensityRow>> {
    let last = check_checkpoints(checkpoints)?;
    if sieve.lo() != 1 || sieve.hi() < last {
        return Err(Error::InvalidRange { lo: sieve.lo(), hi: sieve.hi() });
    }
    let spec = crate::Membership::spec(sieve);
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut members = sieve.members().peekable();
    let mut count = 0;
    for &x in checkpoints {
        while members.next_if(|&m| m <= x).is_some() {
            count += 1;
        }
        rows.push(DensityRow::new(&spec, x, count));
    }
    Ok(rows)
}

/// Exact value of a partial product while numerator and denominator fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DensityProduct {
    pub k: u32,
    pub prime_limit: u64,
    /// Odd primes included.
    pub primes: u64,
    /// Natural log of the product.
    pub log_value: f64,
    pub value: f64,
    /// `None` once the reduced fraction no longer fits in `u128`.
    pub exact: Option<Ratio>,
}

/// Kahan-compensated running sum.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `Π (1 - 1/p) / (1 - 1/p^d)` over odd primes `p <= prime_limit`, where
/// `d = ord(p, 2^k)`. Accumulated in log space.
pub fn partial_density_product(k: u32, prime_limit: u64) -> Result<DensityProduct> {
    if !(3..=63).contains(&k) {
        return Err(Error::InvalidK { k, min: 3 });
    }
    if prime_limit > DEFAULT_SPAN_BUDGET {
        return Err(Error::Budget { requested: prime_limit, budget: DEFAULT_SPAN_BUDGET });
    }
    let modulus = 1u64 << k;
    let mut log = KahanSum::default();
    let mut exact = Some(Ratio { num: 1, den: 1 });
    let mut primes = 0;
    for p in primes_up_to(prime_limit).into_iter().skip(1) {
        primes += 1;
        let d = mod_order(p, modulus)?;
        let inv = 1.0 / p as f64;
        log.add(libm::log1p(-inv) - libm::log1p(-libm::pow(inv, d as f64)));
        // (1 - 1/p) / (1 - 1/p^d) = (p - 1) p^(d-1) / (p^d - 1)
        exact = exact.and_then(|r| {
            let pd = u128::from(p).checked_pow(u32::try_from(d).ok()?)?;
            let num = r.num.checked_mul(u128::from(p - 1))?.checked_mul(pd / u128::from(p))?;
            let den = r.den.checked_mul(pd - 1)?;
            let g = gcd128(num, den);
            Some(Ratio { num: num / g, den: den / g })
        });
    }
    let value = match exact {
        Some(r) => r.num as f64 / r.den as f64,
        None => libm::exp(log.sum),
    };
    Ok(DensityProduct { k, prime_limit, primes, log_value: log.sum, value, exact })
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Counts for one residue class `a (mod 2^k)` over `1 <= n < x`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassRow {
    pub class: u64,
    pub popcount: u32,
    /// Integers `n` in `[1, x)` in this class.
    pub integers: u64,
    /// Sums of at most `t` powers of 2 below `x` in this class (0 included).
    pub power_sums: u64,
    /// Integers in this class that are a member plus at most `t` powers of 2.
    pub representable: u64,
    pub nonrepresentable: u64,
    pub nonrepresentable_fraction: f64,
    /// Pairs (member below `x`, power sum in this class); raw count.
    pub pairs: u128,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassCensus {
    pub k: u32,
    pub t: u32,
    pub x: u64,
    /// Members of `Nk` in `[1, x)`.
    pub members: u64,
    pub rows: Vec<ClassRow>,
}

/// Per-class table for `Nk` plus at most `t` powers of 2 below `x`.
pub fn residue_class_census(k: u32, t: u32, x: u64) -> Result<ClassCensus> {
    let spec = class_census_spec(k, x)?;
    let ctx = SearchContext::new(spec, 2, t, x - 1)?;
    residue_class_census_in(k, &ctx, |lo, hi| ctx.mark(lo, hi))
}

fn class_census_spec(k: u32, x: u64) -> Result<MSetSpec> {
    if !(3..=63).contains(&k) {
        return Err(Error::InvalidK { k, min: 3 });
    }
    if x < 2 {
        return Err(Error::InvalidRange { lo: 1, hi: x });
    }
    MSetSpec::nk(k)
}

/// [`residue_class_census`] with a caller-supplied marker; `mark(lo, hi)`
/// must return the same flags as [`SearchContext::mark`] on `ctx`. The
/// context must be for `Nk` with base 2 and cover `[1, x - 1]`.
pub fn residue_class_census_in<F>(k: u32, ctx: &SearchContext, mark: F) -> Result<ClassCensus>
where
    F: FnOnce(u64, u64) -> Result<Vec<u64>>,
{
    let x = ctx.hi() + 1;
    let spec = class_census_spec(k, x)?;
    if ctx.spec() != spec || ctx.base() != 2 {
        return Err(Error::InvalidBase { base: ctx.base() });
    }
    let t = ctx.max_powers();
    let m = spec.modulus();
    let classes = usize::try_from(m).ok().filter(|&c| c <= 1 << 20).ok_or(Error::Budget {
        requested: m,
        budget: 1 << 20,
    })?;
    let mut rows: Vec<ClassRow> = (0..m)
        .map(|a| ClassRow {
            class: a,
            popcount: popcount(a),
            integers: 0,
            power_sums: 0,
            representable: 0,
            nonrepresentable: 0,
            nonrepresentable_fraction: 0.0,
            pairs: 0,
        })
        .collect();
    let span = x - 1;
    // Integers 1..=span: full cycles plus a partial one.
    for (a, row) in rows.iter_mut().enumerate() {
        let a = a as u64;
        row.integers = span / m + u64::from(a != 0 && a <= span % m);
    }
    for s in enumerate_power_sums(2, t, span)? {
        rows[(s.value % m) as usize].power_sums += 1;
    }
    let marked = mark(1, span)?;
    let mut rep = vec![0u64; classes];
    for (wi, &w) in marked.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let n = (wi * 64) as u64 + u64::from(rest.trailing_zeros()) + 1;
            rest &= rest - 1;
            rep[(n % m) as usize] += 1;
        }
    }
    let members = ctx.members().count();
    for (row, r) in rows.iter_mut().zip(rep) {
        row.representable = r;
        row.nonrepresentable = row.integers - r;
        row.nonrepresentable_fraction =
            if row.integers == 0 { 0.0 } else { row.nonrepresentable as f64 / row.integers as f64 };
        row.pairs = u128::from(members) * u128::from(row.power_sums);
    }
    Ok(ClassCensus { k, t, x, members, rows })
}
