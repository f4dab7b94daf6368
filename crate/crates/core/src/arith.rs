//! Exact 64-bit integer arithmetic: primality, factorization, modular
//! exponentiation and multiplicative order.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Prime factorization of a positive 64-bit integer.
///
/// Factors are listed with strictly increasing primes and positive
/// exponents; `1` has no factors.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Product of `prime^exponent`, or `None` on overflow.
    pub fn product(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

/// `g^e mod m` for `m >= 1`.
pub fn pow_mod(g: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = g % m;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of 1 digits in the binary expansion of `a`.
pub fn popcount(a: u64) -> u32 {
    a.count_ones()
}

const SMALL_LIMIT: usize = 1024;

const fn small_primes_table() -> ([u16; 172], usize) {
    let mut composite = [false; SMALL_LIMIT];
    let mut out = [0u16; 172];
    let mut count = 0;
    let mut i = 2;
    while i < SMALL_LIMIT {
        if !composite[i] {
            out[count] = i as u16;
            count += 1;
            let mut j = i * i;
            while j < SMALL_LIMIT {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (out, count)
}

/// All primes below 1024.
const SMALL_PRIMES: [u16; 172] = small_primes_table().0;

/// Primes `<= limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Deterministic primality test for every 64-bit input.
///
/// Trial division by the primes below 1024 followed by strong probable-prime
/// tests to the first twelve prime bases, which is exact below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = u64::from(p);
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < (SMALL_LIMIT * SMALL_LIMIT) as u64 {
        return true;
    }
    miller_rabin(n)
}

fn miller_rabin(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with Brent's cycle detection; returns a nontrivial factor
/// of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    let f = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    // Fixed constants keep the factorization deterministic.
    for c in 1..n {
        let (mut x, mut y, mut ys) = (0, 2u64, 0);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("composite {n} has a factor")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero { param: "n" });
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for &p in &SMALL_PRIMES {
        let p = u64::from(p);
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        if rest < (SMALL_LIMIT * SMALL_LIMIT) as u64 {
            factors.push((rest, 1));
        } else {
            let mut large = Vec::new();
            split_into(rest, &mut large);
            large.sort_unstable();
            for q in large {
                match factors.last_mut() {
                    Some((p, e)) if *p == q => *e += 1,
                    _ => factors.push((q, 1)),
                }
            }
        }
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient from a factorization.
pub fn totient(f: &Factorization) -> u64 {
    f.factors.iter().fold(f.n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Smallest `e >= 1` with `g^e ≡ 1 (mod m)`.
pub fn mod_order(g: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus { m });
    }
    if gcd(g % m, m) != 1 {
        return Err(Error::NotCoprime { g, m });
    }
    let phi = totient(&factorize(m)?);
    let mut order = phi;
    for (r, _) in factorize(phi)?.factors {
        while order % r == 0 && pow_mod(g, order / r, m) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// Smallest `j` in `1..=max_exp` with `g^j ≡ 1 (mod m)`, if any.
///
/// This is the multiplicative order when the order is at most `max_exp`;
/// the sieve uses it because exponents of 64-bit integers never exceed 63.
pub(crate) fn small_order(g: u64, m: u64, max_exp: u32) -> Option<u32> {
    let g = g % m;
    let mut acc = g;
    for j in 1..=max_exp {
        if acc == 1 % m {
            return Some(j);
        }
        acc = mul_mod(acc, g, m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) + 1));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        // strong pseudoprime to bases 2..=37 below 2^64 do not exist; these are
        // classic base-2 pseudoprimes.
        for n in [2047u64, 3_215_031_751, 3_825_123_056_546_413_051] {
            assert!(!is_prime(n), "{n}");
        }
    }

    #[test]
    fn primality_matches_trial_division_to_one_million() {
        let sieve = primes_up_to(1_000_000);
        let mut it = sieve.iter().peekable();
        for n in 0..=1_000_000u64 {
            let expected = it.peek() == Some(&&n);
            if expected {
                it.next();
            }
            assert_eq!(is_prime(n), expected, "{n}");
        }
        for n in [997u64, 1009, 1_048_573, 1_048_576, 999_983 * 999_983] {
            assert_eq!(is_prime(n), trial_is_prime(n), "{n}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors, [(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().factors.is_empty());
        assert_eq!(factorize(10403).unwrap().factors, [(101, 1), (103, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero { param: "n" }));
    }

    #[test]
    fn factorize_hard_semiprimes() {
        let cases = [
            (4_294_967_291u64, 4_294_967_279u64),
            (1_206_429_347, 1_218_991_343),
            (1_518_968_219, 1_556_064_227),
        ];
        for (p, q) in cases {
            let f = factorize(p * q).unwrap();
            assert_eq!(f.factors, [(p.min(q), 1), (p.max(q), 1)]);
        }
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.factors, [(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6_700_417, 1)]);
        let cube = 2_097_143u64.pow(3);
        assert_eq!(factorize(cube).unwrap().factors, [(2_097_143, 3)]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(mod_order(3, 8), Ok(2));
        assert_eq!(mod_order(1, 97), Ok(1));
        assert_eq!(mod_order(3, 16), Ok(4));
        assert_eq!(mod_order(2, 8), Err(Error::NotCoprime { g: 2, m: 8 }));
        assert_eq!(mod_order(3, 1), Err(Error::InvalidModulus { m: 1 }));
    }

    #[test]
    fn order_divides_independent_totient() {
        for m in 2..=1000u64 {
            let phi = (1..=m).filter(|&a| gcd(a, m) == 1).count() as u64;
            for g in (1..m).filter(|&g| gcd(g, m) == 1) {
                let e = mod_order(g, m).unwrap();
                assert_eq!(phi % e, 0, "ord({g},{m}) = {e}");
                assert_eq!(pow_mod(g, e, m), 1);
            }
        }
    }

    #[test]
    fn small_order_agrees_with_mod_order() {
        for m in [3u64, 5, 7, 8, 16, 32, 1 << 20] {
            for g in (1..200u64).filter(|&g| gcd(g, m) == 1) {
                let full = mod_order(g, m).unwrap();
                let small = small_order(g, m, 63).map(u64::from);
                assert_eq!(small, (full <= 63).then_some(full), "g={g} m={m}");
            }
        }
    }

    #[test]
    fn popcount_examples() {
        assert_eq!(popcount(7), 3);
        assert_eq!(popcount(0), 0);
        for k in 1..=63 {
            assert_eq!(popcount((1 << k) - 1), k);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn factorization_reconstructs(n in 1u64..(1 << 40)) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.product(), Some(n));
            prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.factors.iter().all(|&(p, e)| e >= 1 && is_prime(p)));
        }
    }

    proptest! {
        #[test]
        fn factorization_reconstructs_full_range(n in 1u64..=u64::MAX) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.product(), Some(n));
            prop_assert!(f.factors.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
