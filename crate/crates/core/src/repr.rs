//! Representations `n = m + b^e1 + ... + b^ej` with `m` a set member and
//! `j <= t` powers of a base `b`, repetition and `e = 0` allowed.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::msets::{MSetSpec, Membership, MembershipSieve};
use crate::{Error, Result, DEFAULT_SPAN_BUDGET};

/// Largest `t` accepted by queries and searches.
pub const MAX_POWERS: u32 = 16;

/// Width of the per-element fallback used by [`find_nonrepresentable`]
/// when `hi` is too large for a member sieve over `[1, hi]`.
pub const POINTWISE_BUDGET: u64 = 1 << 20;

/// A sum of powers of `base` together with the exponents that produce it.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerSum {
    pub value: u64,
    /// Ascending; `value == Σ base^e`.
    pub exponents: Vec<u32>,
}

impl PowerSum {
    /// Witness order: fewer powers first, then lexicographic exponents.
    fn order_key(&self) -> (usize, &[u32]) {
        (self.exponents.len(), &self.exponents)
    }
}

fn check_base_and_t(base: u64, t: u32) -> Result<()> {
    if base < 2 {
        return Err(Error::InvalidBase { base });
    }
    if t > MAX_POWERS {
        return Err(Error::TooManyPowers { t, max: MAX_POWERS });
    }
    Ok(())
}

/// Every distinct value `<= limit` that is a sum of at most `t` powers of
/// `base`, ascending, each with its shortest exponent multiset.
///
/// The fewest powers summing to `v` is the digit sum of `v` in base `base`
/// (any exponent used `base` or more times can be merged), and the
/// multiset achieving it is the digit expansion. So the values are exactly
/// those with digit sum `<= t`, and the digits are the certificate. The
/// empty sum gives `0`.
pub fn enumerate_power_sums(base: u64, t: u32, limit: u64) -> Result<Vec<PowerSum>> {
    check_base_and_t(base, t)?;
    let mut powers = vec![1u64];
    while let Some(next) = powers.last().unwrap().checked_mul(base).filter(|&p| p <= limit) {
        powers.push(next);
    }
    let mut out = Vec::new();
    let mut digits = Vec::new();
    digit_walk(&powers, base, t, limit, powers.len(), 0, &mut digits, &mut out);
    out.sort_unstable_by_key(|s| s.value);
    Ok(out)
}

/// Chooses digits from the highest position down, so each value appears once.
#[allow(clippy::too_many_arguments)]
fn digit_walk(
    powers: &[u64],
    base: u64,
    budget: u32,
    limit: u64,
    pos: usize,
    value: u64,
    exps: &mut Vec<u32>,
    out: &mut Vec<PowerSum>,
) {
    if pos == 0 {
        let mut exponents = exps.clone();
        exponents.reverse();
        out.push(PowerSum { value, exponents });
        return;
    }
    let i = pos - 1;
    let max_digit = u64::from(budget).min(base - 1);
    let depth = exps.len();
    let mut v = value;
    for d in 0..=max_digit {
        if d > 0 {
            match v.checked_add(powers[i]) {
                Some(next) if next <= limit => v = next,
                _ => break,
            }
            exps.push(i as u32);
        }
        digit_walk(powers, base, budget - d as u32, limit, i, v, exps, out);
    }
    exps.truncate(depth);
}

/// "Is `n` a member of `spec` plus at most `max_powers` powers of `base`?"
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReprQuery {
    pub n: u64,
    pub spec: MSetSpec,
    pub base: u64,
    pub max_powers: u32,
}

impl ReprQuery {
    /// A query using the set's ramified prime as the power base.
    pub fn new(n: u64, spec: MSetSpec, max_powers: u32) -> Result<Self> {
        Self::with_base(n, spec, spec.base(), max_powers)
    }

    pub fn with_base(n: u64, spec: MSetSpec, base: u64, max_powers: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero { param: "n" });
        }
        check_base_and_t(base, max_powers)?;
        Ok(Self { n, spec, base, max_powers })
    }
}

/// Certificate `n = member + Σ base^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReprWitness {
    pub member: u64,
    /// Ascending.
    pub exponents: Vec<u32>,
}

impl ReprWitness {
    /// `member + Σ base^e`, or `None` on overflow.
    pub fn total(&self, base: u64) -> Option<u64> {
        self.exponents
            .iter()
            .try_fold(self.member, |acc, &e| acc.checked_add(base.checked_pow(e)?))
    }
}

/// The first witness in witness order (fewest powers, then lexicographic
/// exponents), or `None` if `n` is not representable.
pub fn is_representable(q: &ReprQuery) -> Result<Option<ReprWitness>> {
    represent_with(q, &q.spec)
}

/// [`is_representable`] with a caller-supplied membership oracle for `q.spec`.
pub fn represent_with<M: Membership + ?Sized>(q: &ReprQuery, members: &M) -> Result<Option<ReprWitness>> {
    debug_assert_eq!(members.spec(), q.spec);
    let mut sums = enumerate_power_sums(q.base, q.max_powers, q.n - 1)?;
    sums.sort_unstable_by(|a, b| a.order_key().cmp(&b.order_key()));
    Ok(sums.into_iter().find(|s| members.contains(q.n - s.value)).map(|s| ReprWitness {
        member: q.n - s.value,
        exponents: s.exponents,
    }))
}

/// Classification of a range under one query template.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchReport {
    pub spec: MSetSpec,
    pub base: u64,
    pub max_powers: u32,
    pub lo: u64,
    pub hi: u64,
    pub representable_count: u64,
    pub non_representable_count: u64,
    /// Ascending.
    pub non_representable: Vec<u64>,
}

impl SearchReport {
    /// Assembles a report from the non-representable integers of `[lo, hi]`.
    pub fn from_parts(spec: MSetSpec, base: u64, max_powers: u32, lo: u64, hi: u64, non_representable: Vec<u64>) -> Self {
        let non = non_representable.len() as u64;
        Self {
            spec,
            base,
            max_powers,
            lo,
            hi,
            representable_count: hi - lo + 1 - non,
            non_representable_count: non,
            non_representable,
        }
    }
}

/// Member sieve over `[1, hi]` plus the power sums below `hi`; classifies
/// any sub-range of `[1, hi]` by marking.
#[derive(Debug, Clone)]
pub struct SearchContext {
    base: u64,
    max_powers: u32,
    members: MembershipSieve,
    sums: Vec<u64>,
}

impl SearchContext {
    pub fn new(spec: MSetSpec, base: u64, max_powers: u32, hi: u64) -> Result<Self> {
        Self::from_sieve(base, max_powers, MembershipSieve::new(spec, 1, hi)?)
    }

    /// Wraps an existing sieve, which must start at 1.
    pub fn from_sieve(base: u64, max_powers: u32, members: MembershipSieve) -> Result<Self> {
        check_base_and_t(base, max_powers)?;
        if members.lo() != 1 {
            return Err(Error::InvalidRange { lo: members.lo(), hi: members.hi() });
        }
        let sums = enumerate_power_sums(base, max_powers, members.hi() - 1)?
            .into_iter()
            .map(|s| s.value)
            .collect();
        Ok(Self { base, max_powers, members, sums })
    }

    pub fn spec(&self) -> MSetSpec {
        self.members.spec()
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn max_powers(&self) -> u32 {
        self.max_powers
    }

    pub fn hi(&self) -> u64 {
        self.members.hi()
    }

    pub fn members(&self) -> &MembershipSieve {
        &self.members
    }

    /// Representability flags for `[lo, hi]`: bit `i` is set iff `lo + i` is
    /// representable.
    ///
    /// For each power sum `s`, the member flags shifted up by `s` are OR-ed
    /// into the result, so `n` ends up marked iff some `n - s` is a member.
    pub fn mark(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo == 0 || lo > hi || hi > self.hi() {
            return Err(Error::InvalidRange { lo, hi });
        }
        let len = (hi - lo + 1) as usize;
        let mut marked = vec![0u64; bits::words_for(len)];
        for &s in self.sums.iter().take_while(|&&s| s < hi) {
            // n ranges over [max(lo, s + 1), hi]; member index is n - s - 1.
            let first = lo.max(s + 1);
            bits::or_shifted(
                &mut marked,
                (first - lo) as usize,
                self.members.words(),
                (first - s - 1) as usize,
                (hi - first + 1) as usize,
            );
        }
        Ok(marked)
    }

    /// Non-representable integers of `[lo, hi]`, ascending.
    pub fn classify(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        let marked = self.mark(lo, hi)?;
        let len = (hi - lo + 1) as usize;
        Ok((0..len).filter(|&i| !bits::get(&marked, i)).map(|i| lo + i as u64).collect())
    }

    pub fn is_representable(&self, n: u64) -> bool {
        n >= 1 && n <= self.hi() && self.sums.iter().take_while(|&&s| s < n).any(|&s| self.members.contains(n - s))
    }
}

/// Exhaustive classification of `[lo, hi]`.
///
/// Uses a member sieve over `[1, hi]` and marking when `hi` fits the span
/// budget; otherwise falls back to per-element decisions, which needs
/// `hi - lo` within [`POINTWISE_BUDGET`].
pub fn find_nonrepresentable(spec: MSetSpec, base: u64, max_powers: u32, lo: u64, hi: u64) -> Result<SearchReport> {
    check_base_and_t(base, max_powers)?;
    if lo == 0 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let non = if hi <= DEFAULT_SPAN_BUDGET {
        SearchContext::new(spec, base, max_powers, hi)?.classify(lo, hi)?
    } else {
        let span = hi - lo + 1;
        if span > POINTWISE_BUDGET {
            return Err(Error::Budget { requested: span, budget: POINTWISE_BUDGET });
        }
        let mut non = Vec::new();
        for n in lo..=hi {
            if is_representable(&ReprQuery::with_base(n, spec, base, max_powers)?)?.is_none() {
                non.push(n);
            }
        }
        non
    };
    Ok(SearchReport::from_parts(spec, base, max_powers, lo, hi, non))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    fn spec(s: &str) -> MSetSpec {
        s.parse().unwrap()
    }

    fn values(base: u64, t: u32, limit: u64) -> Vec<u64> {
        enumerate_power_sums(base, t, limit).unwrap().into_iter().map(|s| s.value).collect()
    }

    /// Independent count: every non-decreasing exponent multiset of size <= t.
    fn multiset_values(base: u64, t: u32, limit: u64) -> BTreeSet<u64> {
        fn go(base: u64, left: u32, min_e: u32, acc: u64, limit: u64, out: &mut BTreeSet<u64>) {
            out.insert(acc);
            if left == 0 {
                return;
            }
            let mut e = min_e;
            while let Some(p) = base.checked_pow(e) {
                match acc.checked_add(p) {
                    Some(v) if v <= limit => go(base, left - 1, e, v, limit, out),
                    _ => break,
                }
                e += 1;
            }
        }
        let mut out = BTreeSet::new();
        go(base, t, 0, 0, limit, &mut out);
        out
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(values(3, 1, 10), [0, 1, 3, 9]);
        assert_eq!(values(2, 2, 8), [0, 1, 2, 3, 4, 5, 6, 8]);
        for b in [2, 3, 7, 10] {
            assert_eq!(values(b, 0, 1000), [0]);
        }
        assert_eq!(values(2, 3, 0), [0]);
        assert!(enumerate_power_sums(1, 1, 10).is_err());
        assert!(enumerate_power_sums(2, 17, 10).is_err());
    }

    #[test]
    fn power_sum_census_matches_multiset_count() {
        for t in 0..=4 {
            for m in 0..=12 {
                let limit = 1u64 << m;
                let expected: Vec<u64> = multiset_values(2, t, limit).into_iter().collect();
                assert_eq!(values(2, t, limit), expected, "t={t} m={m}");
            }
        }
        for (b, t, limit) in [(3, 5, 5000), (7, 5, 100_000), (5, 3, 700)] {
            let expected: Vec<u64> = multiset_values(b, t, limit).into_iter().collect();
            assert_eq!(values(b, t, limit), expected, "b={b} t={t}");
        }
    }

    #[test]
    fn power_sum_certificates_are_shortest() {
        for s in enumerate_power_sums(3, 4, 500).unwrap() {
            assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(s.exponents.iter().map(|&e| 3u64.pow(e)).sum::<u64>(), s.value);
            // No exponent used base-many times.
            assert!(s.exponents.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2])));
        }
    }

    #[test]
    fn small_witness_regressions() {
        let q = |n, s: &str, t| ReprQuery::new(n, spec(s), t).unwrap();
        assert_eq!(is_representable(&q(11, "mp:3", 1)).unwrap(), None);
        assert_eq!(
            is_representable(&q(10, "mp:3", 1)).unwrap(),
            Some(ReprWitness { member: 9, exponents: vec![0] })
        );
        assert_eq!(is_representable(&q(9, "mp:5", 3)).unwrap(), None);
        assert_eq!(is_representable(&q(20, "mp:7", 5)).unwrap(), None);
        // Zero powers: a member is its own witness.
        assert_eq!(
            is_representable(&q(196, "nk:3", 3)).unwrap(),
            Some(ReprWitness { member: 196, exponents: vec![] })
        );
        assert!(ReprQuery::new(0, spec("mp:3"), 1).is_err());
        assert!(ReprQuery::new(5, spec("mp:3"), 17).is_err());
    }

    #[test]
    fn witness_order_prefers_fewer_then_smaller_exponents() {
        // 8 = 2^3 is not in M3; 8 - 1 = 7 is.
        let w = is_representable(&ReprQuery::new(8, spec("mp:3"), 2).unwrap()).unwrap().unwrap();
        assert_eq!(w, ReprWitness { member: 7, exponents: vec![0] });
        // 11 - 1, 11 - 3, 11 - 9 all fail; 11 - 1 - 1 = 9 is the first two-power hit.
        let w = is_representable(&ReprQuery::new(11, spec("mp:3"), 2).unwrap()).unwrap().unwrap();
        assert_eq!(w, ReprWitness { member: 9, exponents: vec![0, 0] });
        // 6 = 2*3 is not in M3; 6 - 1 = 5 no, 6 - 3 = 3 yes.
        let w = is_representable(&ReprQuery::new(6, spec("mp:3"), 2).unwrap()).unwrap().unwrap();
        assert_eq!(w, ReprWitness { member: 3, exponents: vec![1] });
    }

    #[test]
    fn search_examples() {
        let r = find_nonrepresentable(spec("mp:7"), 7, 5, 1, 30).unwrap();
        assert_eq!(r.non_representable, [20, 26, 27]);
        assert_eq!((r.representable_count, r.non_representable_count), (27, 3));
        let r = find_nonrepresentable(spec("mp:3"), 3, 1, 1, 12).unwrap();
        assert_eq!(r.non_representable, [11]);
        let r = find_nonrepresentable(spec("mp:3"), 3, 1, 1, 5).unwrap();
        assert!(r.non_representable.is_empty());
        let r = find_nonrepresentable(spec("mp:5"), 5, 3, 1, 30).unwrap();
        assert_eq!(r.non_representable, [9, 24, 29]);
        assert!(find_nonrepresentable(spec("mp:3"), 3, 1, 0, 5).is_err());
    }

    #[test]
    fn marking_agrees_with_pointwise() {
        for (s, base, t) in [("mp:3", 3, 1), ("mp:5", 5, 3), ("mp:7", 7, 5), ("nk:3", 2, 3)] {
            let sp = spec(s);
            let ctx = SearchContext::new(sp, base, t, 10_000).unwrap();
            let marked = ctx.classify(1, 10_000).unwrap();
            let pointwise: Vec<u64> = (1..=10_000)
                .filter(|&n| {
                    is_representable(&ReprQuery::with_base(n, sp, base, t).unwrap()).unwrap().is_none()
                })
                .collect();
            assert_eq!(marked, pointwise, "{s}");
            // Offset sub-ranges agree with the full classification.
            let sub = ctx.classify(4321, 9876).unwrap();
            let expected: Vec<u64> = pointwise.iter().copied().filter(|n| (4321..=9876).contains(n)).collect();
            assert_eq!(sub, expected);
        }
    }

    #[test]
    fn pointwise_fallback_for_large_hi() {
        let sp = spec("mp:3");
        let lo = (1u64 << 40) + 1;
        let r = find_nonrepresentable(sp, 3, 1, lo, lo + 300).unwrap();
        for n in lo..=lo + 300 {
            let rep = is_representable(&ReprQuery::new(n, sp, 1).unwrap()).unwrap().is_some();
            assert_eq!(r.non_representable.contains(&n), !rep);
        }
        assert!(find_nonrepresentable(sp, 3, 1, lo, lo + POINTWISE_BUDGET).is_err());
    }

    #[test]
    fn more_powers_never_hurt() {
        for (s, base) in [("mp:3", 3), ("mp:5", 5), ("nk:3", 2), ("nk:4", 2)] {
            let sp = spec(s);
            for t in 0..5 {
                for n in 1..=1000 {
                    let lower = ReprQuery::with_base(n, sp, base, t).unwrap();
                    if let Some(w) = is_representable(&lower).unwrap() {
                        let upper = ReprQuery::with_base(n, sp, base, t + 1).unwrap();
                        assert!(is_representable(&upper).unwrap().is_some(), "{s} t={t} n={n}");
                        assert!(w.exponents.len() as u32 <= t);
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn witnesses_are_sound(
            n in 1u64..2_000_000,
            which in 0usize..6,
            t in 0u32..6,
        ) {
            let (s, base) = [("mp:3", 3), ("mp:5", 5), ("mp:7", 7), ("nk:3", 2), ("nk:4", 2), ("mp:3", 2)][which];
            let sp = spec(s);
            let q = ReprQuery::with_base(n, sp, base, t).unwrap();
            if let Some(w) = is_representable(&q).unwrap() {
                prop_assert_eq!(w.total(base), Some(n));
                prop_assert!(sp.contains(w.member));
                prop_assert!(w.exponents.len() as u32 <= t);
                prop_assert!(w.exponents.windows(2).all(|p| p[0] <= p[1]));
            }
        }
    }
}
