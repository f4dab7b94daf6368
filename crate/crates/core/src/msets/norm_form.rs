//! The quartic norm form of `Z[ζ8]`:
//! `N(x, y, z, w) = Norm(x + yζ + zζ^2 + wζ^3)` with `ζ = exp(2πi/8)`.
//!
//! `Z[ζ8]` has class number one, so the positive values of this form are
//! exactly the members of `N3`. The enumeration here is an oracle for that
//! identity that does not touch factorization.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest coordinate bound accepted by [`enumerate_values`]; keeps every
/// intermediate product inside `i128`.
pub const MAX_BOX: u32 = 1 << 24;

/// `x^4 + (4wy + 2z^2)x^2 + (-4zy^2 + 4w^2z)x + (y^4 + 2w^2y^2 - 4wz^2y + z^4 + w^4)`.
pub fn value(x: i64, y: i64, z: i64, w: i64) -> Result<u64> {
    let overflow = Error::Overflow { param: "norm form value" };
    let eval = || -> Option<i128> {
        let (x, y, z, w) = (i128::from(x), i128::from(y), i128::from(z), i128::from(w));
        let sq = |a: i128| a.checked_mul(a);
        let (x2, y2, z2, w2) = (sq(x)?, sq(y)?, sq(z)?, sq(w)?);
        let quad = w.checked_mul(y)?.checked_mul(4)?.checked_add(z2.checked_mul(2)?)?;
        let lin = w2.checked_sub(y2)?.checked_mul(z)?.checked_mul(4)?;
        let constant = sq(y2)?
            .checked_add(w2.checked_mul(y2)?.checked_mul(2)?)?
            .checked_sub(w.checked_mul(z2)?.checked_mul(y)?.checked_mul(4)?)?
            .checked_add(sq(z2)?)?
            .checked_add(sq(w2)?)?;
        sq(x2)?
            .checked_add(quad.checked_mul(x2)?)?
            .checked_add(lin.checked_mul(x)?)?
            .checked_add(constant)
    };
    let v = eval().ok_or(overflow.clone())?;
    u64::try_from(v).map_err(|_| overflow)
}

/// Distinct nonzero values `<= limit` over `|x|, |y|, |z|, |w| <= bound`.
pub fn enumerate_values(limit: u64, bound: u32) -> Result<Vec<u64>> {
    if bound == 0 {
        return Err(Error::Zero { param: "box" });
    }
    if bound > MAX_BOX {
        return Err(Error::Overflow { param: "box" });
    }
    let b = i64::from(bound);
    let mut seen = BTreeSet::new();
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                for w in -b..=b {
                    // In range by MAX_BOX; values above u64 are above any limit.
                    if let Ok(v) = value(x, y, z, w) {
                        if v != 0 && v <= limit {
                            seen.insert(v);
                        }
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Values `<= limit` with the box grown until two successive boxes agree.
///
/// Starts at `ceil(limit^(1/4)) + 2` and doubles. Returns the values and the
/// last box enumerated.
pub fn stable_values(limit: u64) -> Result<(Vec<u64>, u32)> {
    let mut bound = fourth_root_ceil(limit) + 2;
    let mut prev = enumerate_values(limit, bound)?;
    loop {
        bound = bound.checked_mul(2).filter(|&b| b <= MAX_BOX).ok_or(Error::Overflow { param: "box" })?;
        let next = enumerate_values(limit, bound)?;
        if next == prev {
            return Ok((next, bound));
        }
        prev = next;
    }
}

fn fourth_root_ceil(n: u64) -> u32 {
    let r = n.isqrt().isqrt();
    let r = if r.pow(4) < n { r + 1 } else { r };
    r as u32
}
