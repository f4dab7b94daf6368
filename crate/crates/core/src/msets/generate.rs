use alloc::vec;
use alloc::vec::Vec;

use super::MSetSpec;
use crate::arith::{mul_mod, primes_up_to};
use crate::{Error, Result, DEFAULT_SPAN_BUDGET};

/// Every member `<= limit`, ascending, built as products of allowed prime
/// powers rather than by testing candidates.
///
/// The building blocks are the base itself and, for each other prime `q`,
/// `q^d` with `d` the multiplicative order of `q` modulo the set's modulus.
/// A member is exactly a product of powers of those blocks.
pub fn generate_members(spec: &MSetSpec, limit: u64) -> Result<Vec<u64>> {
    if limit == 0 {
        return Err(Error::Zero { param: "limit" });
    }
    if limit > DEFAULT_SPAN_BUDGET {
        return Err(Error::Budget { requested: limit, budget: DEFAULT_SPAN_BUDGET });
    }
    let m = spec.modulus();
    let mut blocks: Vec<u64> = primes_up_to(limit)
        .into_iter()
        .filter_map(|q| {
            if q == spec.base() {
                return Some(q);
            }
            // Walk q, q^2, ... until the first power ≡ 1 (the order) or the limit.
            let (mut power, mut residue) = (q, q % m);
            loop {
                if residue == 1 {
                    return Some(power);
                }
                power = power.checked_mul(q).filter(|&v| v <= limit)?;
                residue = mul_mod(residue, q, m);
            }
        })
        .collect();
    blocks.sort_unstable();

    let mut out = vec![];
    let mut stack = vec![(1u64, 0usize)];
    while let Some((value, from)) = stack.pop() {
        out.push(value);
        for (j, &b) in blocks.iter().enumerate().skip(from) {
            if value > limit / b {
                break;
            }
            let mut v = value * b;
            loop {
                stack.push((v, j + 1));
                match v.checked_mul(b) {
                    Some(next) if next <= limit => v = next,
                    _ => break,
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
