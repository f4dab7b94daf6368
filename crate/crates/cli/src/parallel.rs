//! Thread-parallel drivers over the core's segment-level entry points.
//!
//! Work is split into fixed chunks whose boundaries do not depend on the
//! thread count, and results are merged in chunk order, so output is the
//! same for any pool size.

use cyclonorm_core::census::{self, ClassCensus, DensityRow};
use cyclonorm_core::repr::{SearchContext, SearchReport};
use cyclonorm_core::{Error, MSetSpec, MembershipSieve, DEFAULT_SPAN_BUDGET};
use rayon::prelude::*;

/// Integers per search chunk; a multiple of 64 so marked words concatenate.
const CHUNK: u64 = 1 << 18;

pub fn sieve(spec: MSetSpec, lo: u64, hi: u64) -> Result<MembershipSieve, Error> {
    MembershipSieve::build(spec, lo, hi, DEFAULT_SPAN_BUDGET, |filler, segments| {
        segments.into_par_iter().for_each(|seg| filler.fill(seg.start, seg.end, seg.words));
    })
}

pub fn search_context(spec: MSetSpec, base: u64, t: u32, hi: u64) -> Result<SearchContext, Error> {
    SearchContext::from_sieve(base, t, sieve(spec, 1, hi)?)
}

fn chunks(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = lo;
    loop {
        let end = start.saturating_add(CHUNK - 1).min(hi);
        out.push((start, end));
        if end == hi {
            return out;
        }
        start = end + 1;
    }
}

pub fn classify(ctx: &SearchContext, lo: u64, hi: u64) -> Result<Vec<u64>, Error> {
    let parts: Vec<Vec<u64>> =
        chunks(lo, hi).into_par_iter().map(|(a, b)| ctx.classify(a, b)).collect::<Result<_, _>>()?;
    Ok(parts.concat())
}

/// Same flags as [`SearchContext::mark`].
pub fn mark(ctx: &SearchContext, lo: u64, hi: u64) -> Result<Vec<u64>, Error> {
    let parts: Vec<Vec<u64>> =
        chunks(lo, hi).into_par_iter().map(|(a, b)| ctx.mark(a, b)).collect::<Result<_, _>>()?;
    Ok(parts.concat())
}

pub fn find_nonrepresentable(spec: MSetSpec, base: u64, t: u32, lo: u64, hi: u64) -> Result<SearchReport, Error> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > DEFAULT_SPAN_BUDGET {
        // Sparse pointwise path; sequential in the core.
        return cyclonorm_core::repr::find_nonrepresentable(spec, base, t, lo, hi);
    }
    let ctx = search_context(spec, base, t, hi)?;
    let non = classify(&ctx, lo, hi)?;
    Ok(SearchReport::from_parts(spec, base, t, lo, hi, non))
}

pub fn count_members(spec: MSetSpec, checkpoints: &[u64]) -> Result<Vec<DensityRow>, Error> {
    let last = *checkpoints.iter().max().ok_or(Error::Zero { param: "checkpoints" })?;
    census::count_members_in(&sieve(spec, 1, last.max(1))?, checkpoints)
}

pub fn residue_class_census(k: u32, t: u32, x: u64) -> Result<ClassCensus, Error> {
    if x < 2 {
        return Err(Error::InvalidRange { lo: 1, hi: x });
    }
    let spec = MSetSpec::nk(k)?;
    let ctx = search_context(spec, 2, t, x - 1)?;
    census::residue_class_census_in(k, &ctx, |lo, hi| mark(&ctx, lo, hi))
}
