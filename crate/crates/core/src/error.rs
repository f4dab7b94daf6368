use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter that must be positive was zero.
    Zero { param: &'static str },
    /// `gcd(g, m) != 1` in a multiplicative order query.
    NotCoprime { g: u64, m: u64 },
    /// A modulus below 2.
    InvalidModulus { m: u64 },
    /// `Nk` needs `2 <= k <= 63` (and callers may demand more).
    InvalidK { k: u32, min: u32 },
    /// `Mp` needs an odd prime.
    NotOddPrime { p: u64 },
    /// Power base below 2.
    InvalidBase { base: u64 },
    /// Too many powers for the enumeration budget.
    TooManyPowers { t: u32, max: u32 },
    /// `lo > hi`, `lo == 0`, or checkpoints out of order.
    InvalidRange { lo: u64, hi: u64 },
    /// Work would exceed a span budget.
    Budget { requested: u64, budget: u64 },
    /// An intermediate value left the 64-bit range.
    Overflow { param: &'static str },
    /// A set selector such as `nk:3` or `mp:7` could not be parsed.
    BadSelector,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Zero { param } => write!(f, "{param} must be at least 1"),
            Error::NotCoprime { g, m } => write!(f, "{g} is not invertible modulo {m}"),
            Error::InvalidModulus { m } => write!(f, "modulus {m} must be at least 2"),
            Error::InvalidK { k, min } => write!(f, "k = {k} out of range (need {min} <= k <= 63)"),
            Error::NotOddPrime { p } => write!(f, "p = {p} is not an odd prime"),
            Error::InvalidBase { base } => write!(f, "power base {base} must be at least 2"),
            Error::TooManyPowers { t, max } => {
                write!(f, "max powers {t} exceeds the enumeration budget of {max}")
            }
            Error::InvalidRange { lo, hi } => write!(f, "invalid range [{lo}, {hi}]"),
            Error::Budget { requested, budget } => {
                write!(f, "span of {requested} integers exceeds the budget of {budget}")
            }
            Error::Overflow { param } => write!(f, "{param} overflows the 64-bit range"),
            Error::BadSelector => f.write_str("set selector must look like nk:<k> or mp:<p>"),
        }
    }
}

impl core::error::Error for Error {}
