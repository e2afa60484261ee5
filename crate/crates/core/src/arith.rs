//! Exact integer number theory: factorization, the classical arithmetic
//! functions (μ, φ, W, θ) and the exact-rational real type used for
//! threshold comparisons.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::{BigRational, Ratio};
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Canonical prime factorization: `(prime, exponent)` pairs, primes strictly
/// increasing, exponents at least one. The factorization of 1 is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors, ω(n).
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// Reconstructs n. Saturates only if the factorization did not come from a u64.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.saturating_pow(e))
            .fold(1u64, |acc, x| acc.saturating_mul(x))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes form a deterministic Miller-Rabin witness set for
// every n < 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
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

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = y;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Canonical factorization of `n >= 1`. Trial division by small primes, then
/// Pollard-Brent on the cofactor; every reported prime is certified by the
/// deterministic Miller-Rabin test.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut n = n;
    let mut raw = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            raw.push(p);
            n /= p;
        }
    }
    let mut p = 53u64;
    while p < 1000 && p * p <= n {
        while n % p == 0 {
            raw.push(p);
            n /= p;
        }
        p += 2;
    }
    factor_into(n, &mut raw);
    raw.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for p in raw {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Factorization { pairs }
}

/// Returns `(p, k)` with `n = p^k` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize(n);
    match f.pairs() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.pairs().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.omega() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// W(n): the number of squarefree divisors of n, i.e. 2^ω(n).
pub fn squarefree_divisor_count(n: u64) -> u64 {
    1u64 << factorize(n).omega()
}

/// a / gcd(a, b).
pub fn reduced_part(a: u64, b: u64) -> u64 {
    a / gcd(a, b)
}

/// θ(e) = φ(e)/e as a reduced fraction.
pub fn theta(e: u64) -> Ratio<u64> {
    Ratio::new(euler_phi(e), e)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in factorize(n).pairs() {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// All primes strictly below `n`.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Both sides of the divisor-sum identity
/// `Σ_{d|R} |μ(d_(r))| φ(d) / φ(d_(r)) = gcd(R, r) · W(gcd(R, R_(r)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorIdentityCheck {
    pub lhs: BigRational,
    pub rhs: u64,
    pub equal: bool,
}

pub fn verify_divisor_identity(big_r: u64, r: u64) -> DivisorIdentityCheck {
    let mut lhs = BigRational::zero();
    for d in divisors(big_r) {
        let dr = reduced_part(d, r);
        if mobius(dr) == 0 {
            continue;
        }
        lhs += BigRational::new(BigInt::from(euler_phi(d)), BigInt::from(euler_phi(dr)));
    }
    let rhs = gcd(big_r, r) * squarefree_divisor_count(gcd(big_r, reduced_part(big_r, r)));
    let equal = lhs == BigRational::from_integer(BigInt::from(rhs));
    DivisorIdentityCheck { lhs, rhs, equal }
}

/// Exact real number backed by an arbitrary-precision rational.
///
/// Every quantity compared against a threshold (δ, S, the right-hand sides of
/// the sufficient conditions, the thresholds themselves) is rational, so the
/// comparison path never rounds. `to_f64` is for display only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigReal(BigRational);

impl BigReal {
    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        BigReal(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio<T: Into<BigInt>>(num: T, den: T) -> Self {
        BigReal(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        BigReal(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Fall back on a numerator/denominator split for huge values.
            let n = self.0.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = self.0.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        })
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn powi(&self, e: i32) -> Self {
        BigReal(num::traits::Pow::pow(&self.0, e))
    }

    pub fn recip(&self) -> Self {
        BigReal(self.0.recip())
    }

    /// Compares `sqrt(n)` with `self` exactly (for non-negative `self` this is
    /// `n` against `self^2`).
    pub fn cmp_to_sqrt(&self, n: u64) -> Ordering {
        if !self.0.is_positive() {
            return if n == 0 && self.0.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Less
            };
        }
        let sq = &self.0 * &self.0;
        sq.cmp(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Formats with `digits` significant digits in scientific notation.
    pub fn sci(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self.to_f64())
    }

    pub fn one() -> Self {
        BigReal(BigRational::one())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sci(6))
    }
}

impl Serialize for BigReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

impl std::ops::Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        BigReal(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        BigReal(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        BigReal(&self.0 * &rhs.0)
    }
}

impl std::ops::Div for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        BigReal(&self.0 / &rhs.0)
    }
}
