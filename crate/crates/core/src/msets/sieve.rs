use alloc::vec;
use alloc::vec::Vec;

use super::{MSetSpec, Membership};
use crate::arith::{primes_up_to, small_order};
use crate::bits;
use crate::{Error, Result, DEFAULT_SPAN_BUDGET};

/// Integers per sieve segment. A multiple of 64 so segments own whole words.
pub const SEGMENT_LEN: u64 = 1 << 15;

/// Largest upper bound a sieve accepts; base primes go up to its square root.
pub const MAX_SIEVE_HI: u64 = 1 << 48;

/// Shared, read-only state for filling sieve segments: the base primes up
/// to `sqrt(hi)` and, for each, the smallest exponent at which its power is
/// `≡ 1` modulo the set's modulus.
#[derive(Debug, Clone)]
pub struct SegmentFiller {
    spec: MSetSpec,
    primes: Vec<(u64, Option<u32>)>,
}

impl SegmentFiller {
    pub fn new(spec: MSetSpec, hi: u64) -> Result<Self> {
        if hi > MAX_SIEVE_HI {
            return Err(Error::Budget { requested: hi, budget: MAX_SIEVE_HI });
        }
        let m = spec.modulus();
        let primes = primes_up_to(hi.isqrt())
            .into_iter()
            .map(|q| (q, if q == spec.base() { Some(1) } else { small_order(q, m, 63) }))
            .collect();
        Ok(Self { spec, primes })
    }

    /// Sets bit `i` of `words` iff `start + i` is a member, for
    /// `start + i <= end`. Bits past `end` are left clear.
    ///
    /// Requires `start >= 1` and `end` no larger than the `hi` this filler
    /// was built for.
    pub fn fill(&self, start: u64, end: u64, words: &mut [u64]) {
        debug_assert!(start >= 1 && start <= end);
        let len = (end - start + 1) as usize;
        debug_assert!(words.len() >= bits::words_for(len));
        words.fill(0);
        let mut rest: Vec<u64> = (start..=end).collect();
        let mut ok = vec![true; len];
        let base = self.spec.base();
        for &(q, period) in &self.primes {
            let first = start.div_ceil(q) * q;
            let mut idx = (first - start) as usize;
            while idx < len {
                let r = &mut rest[idx];
                let mut e = 0u32;
                while *r % q == 0 {
                    *r /= q;
                    e += 1;
                }
                if q != base && period.is_none_or(|d| e % d != 0) {
                    ok[idx] = false;
                }
                idx += q as usize;
            }
        }
        let m = self.spec.modulus();
        for (i, (&r, &good)) in rest.iter().zip(&ok).enumerate() {
            // What remains is 1 or a single prime above sqrt(hi).
            if good && (r == 1 || r == base || r % m == 1) {
                bits::set(words, i);
            }
        }
    }
}

/// Membership flags for every integer of `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipSieve {
    spec: MSetSpec,
    lo: u64,
    hi: u64,
    words: Vec<u64>,
}

impl MembershipSieve {
    /// Sieve `[lo, hi]` segment by segment with the default span budget.
    pub fn new(spec: MSetSpec, lo: u64, hi: u64) -> Result<Self> {
        Self::build(spec, lo, hi, DEFAULT_SPAN_BUDGET, |filler, segments| {
            for seg in segments {
                filler.fill(seg.start, seg.end, seg.words);
            }
        })
    }

    /// Builds a sieve, delegating the segment loop to `run`.
    ///
    /// `run` receives the filler and the disjoint segments covering the
    /// range; every segment must be filled with [`SegmentFiller::fill`]. The result does not depend on the order or
    /// thread in which segments are filled.
    pub fn build<F>(spec: MSetSpec, lo: u64, hi: u64, budget: u64, run: F) -> Result<Self>
    where
        F: FnOnce(&SegmentFiller, Vec<Segment<'_>>),
    {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let span = hi - lo + 1;
        if span > budget {
            return Err(Error::Budget { requested: span, budget });
        }
        let filler = SegmentFiller::new(spec, hi)?;
        let mut words = vec![0u64; bits::words_for(span as usize)];
        let seg_words = (SEGMENT_LEN / 64) as usize;
        let segments = words
            .chunks_mut(seg_words)
            .enumerate()
            .map(|(j, words)| {
                let start = lo + j as u64 * SEGMENT_LEN;
                let end = (start + SEGMENT_LEN - 1).min(hi);
                Segment { start, end, words }
            })
            .collect();
        run(&filler, segments);
        Ok(Self { spec, lo, hi, words })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Membership of `n` if it lies in the sieved range.
    pub fn get(&self, n: u64) -> Option<bool> {
        (self.lo..=self.hi).contains(&n).then(|| bits::get(&self.words, (n - self.lo) as usize))
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        bits::ones(&self.words).map(move |i| self.lo + i as u64)
    }

    pub fn count(&self) -> u64 {
        bits::count_ones(&self.words)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Membership for MembershipSieve {
    fn spec(&self) -> MSetSpec {
        self.spec
    }

    /// Sieve lookup inside the range, factorization outside it.
    fn contains(&self, n: u64) -> bool {
        self.get(n).unwrap_or_else(|| self.spec.contains(n))
    }
}

/// One slice of a sieve under construction, covering `[start, end]`.
pub struct Segment<'a> {
    pub start: u64,
    pub end: u64,
    pub words: &'a mut [u64],
}
