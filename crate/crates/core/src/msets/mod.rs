//! The multiplicative sets `Nk` (ideal norms of `Z[exp(2πi/2^k)]`) and `Mp`
//! (ideal norms of `Z[exp(2πi/p)]`).
//!
//! Membership is decided prime by prime: the ramified base (2 for `Nk`,
//! `p` for `Mp`) may divide a member to any power, and every other prime
//! power `q^a` exactly dividing a member must satisfy `q^a ≡ 1` modulo the
//! set's modulus (`2^k` or `p`). Three independent routes are provided:
//! the pointwise characterization ([`is_member`]), a segmented range sieve
//! ([`MembershipSieve`]) and a constructive generator ([`generate_members`]).
//! For `k = 3` the explicit quartic norm form lives in [`norm_form`].

mod generate;
pub mod norm_form;
mod sieve;

use core::fmt;
use core::str::FromStr;

use crate::arith::{factorize, pow_mod};
use crate::{Error, Result};

pub use generate::generate_members;
pub use sieve::{MembershipSieve, Segment, SegmentFiller, MAX_SIEVE_HI, SEGMENT_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Norms of ideals of `Z[exp(2πi/2^k)]`.
    Nk,
    /// Norms of ideals of `Z[exp(2πi/p)]`.
    Mp,
}

/// A validated descriptor of one of the norm sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MSetSpec {
    family: Family,
    param: u64,
}

impl MSetSpec {
    /// `Nk` for `2 <= k <= 63`.
    pub fn nk(k: u32) -> Result<Self> {
        if !(2..=63).contains(&k) {
            return Err(Error::InvalidK { k, min: 2 });
        }
        Ok(Self { family: Family::Nk, param: u64::from(k) })
    }

    /// `Mp` for an odd prime `p`.
    pub fn mp(p: u64) -> Result<Self> {
        if p == 2 || !crate::arith::is_prime(p) {
            return Err(Error::NotOddPrime { p });
        }
        Ok(Self { family: Family::Mp, param: p })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `k` for `Nk`, `p` for `Mp`.
    pub fn param(&self) -> u64 {
        self.param
    }

    /// The totally ramified prime, whose exponent is unrestricted.
    pub fn base(&self) -> u64 {
        match self.family {
            Family::Nk => 2,
            Family::Mp => self.param,
        }
    }

    pub fn modulus(&self) -> u64 {
        match self.family {
            Family::Nk => 1 << self.param,
            Family::Mp => self.param,
        }
    }

    /// Degree `d` in the growth law `count(x) ≍ x / (log x)^(1 - 1/d)`:
    /// `2^(k-1)` for `Nk` and `p - 1` for `Mp`.
    pub fn growth_degree(&self) -> u64 {
        match self.family {
            Family::Nk => 1 << (self.param - 1),
            Family::Mp => self.param - 1,
        }
    }

    /// `n` with every factor of the ramified base removed.
    pub fn strip_base(&self, mut n: u64) -> u64 {
        let b = self.base();
        if n == 0 {
            return 0;
        }
        while n % b == 0 {
            n /= b;
        }
        n
    }
}

impl fmt::Display for MSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Nk => write!(f, "nk:{}", self.param),
            Family::Mp => write!(f, "mp:{}", self.param),
        }
    }
}

impl FromStr for MSetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s.split_once(':').ok_or(Error::BadSelector)?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "nk" => Self::nk(value.trim().parse().map_err(|_| Error::BadSelector)?),
            "mp" => Self::mp(value.trim().parse().map_err(|_| Error::BadSelector)?),
            _ => Err(Error::BadSelector),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for MSetSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for MSetSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Something that answers membership queries for one set.
pub trait Membership {
    fn spec(&self) -> MSetSpec;

    /// Whether `n >= 1` is a member.
    fn contains(&self, n: u64) -> bool;
}

impl Membership for MSetSpec {
    fn spec(&self) -> MSetSpec {
        *self
    }

    fn contains(&self, n: u64) -> bool {
        n != 0 && member_by_factorization(self, n)
    }
}

fn member_by_factorization(spec: &MSetSpec, n: u64) -> bool {
    let (base, m) = (spec.base(), spec.modulus());
    let f = factorize(n).expect("n >= 1");
    f.factors.iter().all(|&(q, e)| q == base || pow_mod(q, u64::from(e), m) == 1)
}

/// Pointwise membership by factorization. `1` is a member of every set.
pub fn is_member(spec: &MSetSpec, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Zero { param: "n" });
    }
    Ok(member_by_factorization(spec, n))
}

/// Whether `n` is a sum of two integer squares: every prime `≡ 3 (mod 4)`
/// must divide `n` to an even power.
pub fn is_sum_of_two_squares(n: u64) -> Result<bool> {
    Ok(factorize(n)?.factors.iter().all(|&(q, e)| q % 4 != 3 || e % 2 == 0))
}
