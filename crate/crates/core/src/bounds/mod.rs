//! The sufficient condition `sqrt(q) > r d W(q-1) W((q-1)/r)`, its sieved
//! refinement, the constant K with `W(n) <= K n^(1/6)`, and the estimation
//! of C_{d,r}.

pub mod estimate;

use num::{BigInt, BigRational, One, Signed};
use serde::Serialize;

use crate::arith::{factorize, primes_below, squarefree_divisor_count, BigReal};

pub use estimate::{estimate_c, Congruence, EstimationStep, EstimationTrace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("r = {r} does not divide q - 1 = {n}")]
    RNotDivisor { r: u64, n: u64 },
    #[error("inconsistent sieve parameters: {0}")]
    Inconsistent(String),
    #[error("r and d must be positive")]
    ZeroParameter,
    #[error("congruence {0} requires r = 2")]
    Congruence(String),
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_qr(q: u64, r: u64, d: u64) -> Result<(), BoundsError> {
    if crate::arith::prime_power(q).is_none() {
        return Err(BoundsError::NotPrimePower(q));
    }
    if r == 0 || d == 0 {
        return Err(BoundsError::ZeroParameter);
    }
    if (q - 1) % r != 0 {
        return Err(BoundsError::RNotDivisor { r, n: q - 1 });
    }
    Ok(())
}

/// `sqrt(q)` against `r d W(q-1) W((q-1)/r)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub q: u64,
    pub r: u64,
    pub d: u64,
    pub lhs: f64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn sufficient_condition(q: u64, r: u64, d: u64) -> Result<ConditionReport, BoundsError> {
    check_qr(q, r, d)?;
    let rhs = r * d * squarefree_divisor_count(q - 1) * squarefree_divisor_count((q - 1) / r);
    let holds = (rhs as u128) * (rhs as u128) < q as u128;
    Ok(ConditionReport {
        q,
        r,
        d,
        lhs: (q as f64).sqrt(),
        rhs,
        holds,
    })
}

/// Sieve data for a concrete q: core divisors `l | q-1`, `l' | (q-1)/r` and
/// the primes of `q-1` (resp. `(q-1)/r`) they omit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveParameters {
    pub l: u64,
    pub l_prime: u64,
    pub excluded: Vec<u64>,
    pub excluded_prime: Vec<u64>,
}

impl SieveParameters {
    /// Derives the excluded primes from `l` and `l'`.
    pub fn for_divisors(q: u64, r: u64, l: u64, l_prime: u64) -> Result<Self, BoundsError> {
        let n = q - 1;
        if l == 0 || n % l != 0 {
            return Err(BoundsError::Inconsistent(format!("l = {l} does not divide {n}")));
        }
        if l_prime == 0 || (n / r) % l_prime != 0 {
            return Err(BoundsError::Inconsistent(format!(
                "l' = {l_prime} does not divide {}",
                n / r
            )));
        }
        let excluded = factorize(n).primes().filter(|&p| l % p != 0).collect();
        let excluded_prime = factorize(n / r).primes().filter(|&p| l_prime % p != 0).collect();
        Ok(SieveParameters {
            l,
            l_prime,
            excluded,
            excluded_prime,
        })
    }

    fn validate(&self, q: u64, r: u64) -> Result<(), BoundsError> {
        let derived = Self::for_divisors(q, r, self.l, self.l_prime)?;
        let mut a = self.excluded.clone();
        let mut b = self.excluded_prime.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != derived.excluded || b != derived.excluded_prime {
            return Err(BoundsError::Inconsistent(
                "excluded primes must be exactly the primes not dividing l (resp. l')".into(),
            ));
        }
        Ok(())
    }
}

/// `delta = 1 - sum 1/p_i - sum 1/p'_i` and `S = (t1 + t2 - 1)/delta + 2`,
/// exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SieveQuantities {
    pub delta: BigReal,
    pub s: Option<BigReal>,
}

/// `delta` from the excluded primes; `S` uses `t_total` in place of
/// `t1 + t2`. `S` is `None` when `delta <= 0`.
pub fn sieve_quantities(excluded: &[u64], excluded_prime: &[u64], t_total: u64) -> SieveQuantities {
    let mut delta = BigRational::one();
    for &p in excluded.iter().chain(excluded_prime) {
        delta -= BigRational::new(BigInt::one(), BigInt::from(p));
    }
    let s = delta
        .is_positive()
        .then(|| (BigRational::from_integer(BigInt::from(t_total as i64 - 1)) / &delta) + rat(2));
    SieveQuantities {
        delta: BigReal::from_rational(delta),
        s: s.map(BigReal::from_rational),
    }
}

/// The outcome of the sieved condition at a concrete q.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SieveReport {
    pub q: u64,
    pub r: u64,
    pub d: u64,
    pub params: SieveParameters,
    pub delta: BigReal,
    pub s: Option<BigReal>,
    pub lhs: f64,
    pub rhs: Option<BigReal>,
    pub holds: bool,
    pub delta_positive: bool,
}

impl SieveReport {
    /// `lhs - rhs` in floating point; `-inf` when `delta <= 0`.
    pub fn margin(&self) -> f64 {
        self.rhs.as_ref().map_or(f64::NEG_INFINITY, |r| self.lhs - r.to_f64())
    }
}

pub fn sieve_check(q: u64, r: u64, d: u64, params: &SieveParameters) -> Result<SieveReport, BoundsError> {
    check_qr(q, r, d)?;
    params.validate(q, r)?;
    let t = (params.excluded.len() + params.excluded_prime.len()) as u64;
    let sq = sieve_quantities(&params.excluded, &params.excluded_prime, t);
    let wl = squarefree_divisor_count(params.l) * squarefree_divisor_count(params.l_prime);
    let rhs =
        sq.s.as_ref()
            .map(|s| BigReal::from_rational(s.as_rational() * rat(r * d * wl)));
    let holds = rhs
        .as_ref()
        .is_some_and(|x| x.cmp_to_sqrt(q) == std::cmp::Ordering::Less);
    Ok(SieveReport {
        q,
        r,
        d,
        params: params.clone(),
        delta_positive: sq.delta.is_positive(),
        delta: sq.delta,
        s: sq.s,
        lhs: (q as f64).sqrt(),
        rhs,
        holds,
    })
}

/// Tries `l`, `l'` as products of the `k` least primes of `q-1` and
/// `(q-1)/r`, for `k` from the full prime count down to 0, and returns the
/// first report that holds; otherwise the one with the largest margin.
pub fn auto_sieve(q: u64, r: u64, d: u64) -> Result<SieveReport, BoundsError> {
    check_qr(q, r, d)?;
    let p1: Vec<u64> = factorize(q - 1).primes().collect();
    let p2: Vec<u64> = factorize((q - 1) / r).primes().collect();
    let kmax = p1.len().max(p2.len());
    let mut best: Option<SieveReport> = None;
    for k in (0..=kmax).rev() {
        let l = p1.iter().take(k).product();
        let lp = p2.iter().take(k).product();
        let rep = sieve_check(q, r, d, &SieveParameters::for_divisors(q, r, l, lp)?)?;
        if rep.holds {
            return Ok(rep);
        }
        if best.as_ref().is_none_or(|b| rep.margin() > b.margin()) {
            best = Some(rep);
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Number of primes below 64 entering K.
pub const K_PRIME_COUNT: usize = 18;

/// `K^6 = 2^108 / (product of the primes below 64)`, exactly.
pub fn k_sixth_power() -> BigRational {
    let primes = primes_below(64);
    let prod: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    BigRational::new(BigInt::one() << (6 * primes.len()), prod)
}

/// `K = 2^18 / (product of the primes below 64)^(1/6)`.
pub fn compute_k() -> f64 {
    let primes = primes_below(64);
    let log_prod: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
    (primes.len() as f64 * std::f64::consts::LN_2 - log_prod / 6.0).exp()
}

/// K rounded up to three decimals, 37.469, used by the generic threshold.
pub fn k_rounded() -> BigRational {
    BigRational::new(BigInt::from(37469), BigInt::from(1000))
}

/// `(K^2 r d)^6` with K rounded up to 37.469: beyond it the sufficient
/// condition holds for every q.
pub fn generic_threshold(r: u64, d: u64) -> BigReal {
    let k2 = k_rounded() * k_rounded();
    BigReal::from_rational(num::traits::Pow::pow(k2 * rat(r * d), 6u32))
}

/// `(K^2 r d)^6 = K^12 (r d)^6` with the exact K.
pub fn generic_threshold_exact_k(r: u64, d: u64) -> BigReal {
    let k6 = k_sixth_power();
    BigReal::from_rational(&k6 * &k6 * num::traits::Pow::pow(rat(r * d), 6u32))
}

/// `W(n) <= K n^(1/6)`, tested exactly as `W(n)^6 <= K^6 n`.
pub fn w_within_k_bound(n: u64) -> bool {
    let w = rat(squarefree_divisor_count(n));
    num::traits::Pow::pow(w, 6u32) <= k_sixth_power() * rat(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sufficient_condition_examples() {
        let c = sufficient_condition(257, 1, 1).unwrap();
        assert!(c.holds && c.rhs == 4);
        let c = sufficient_condition(7, 2, 2).unwrap();
        assert!(!c.holds && c.rhs == 32);
        let c = sufficient_condition(2, 1, 1).unwrap();
        assert!(c.holds && c.rhs == 1);
        assert!(matches!(
            sufficient_condition(7, 4, 1),
            Err(BoundsError::RNotDivisor { .. })
        ));
        assert!(matches!(
            sufficient_condition(6, 1, 1),
            Err(BoundsError::NotPrimePower(6))
        ));
    }

    #[test]
    fn empty_sieve_reduces_to_s_one() {
        let p = SieveParameters::for_divisors(257, 1, 256, 256).unwrap();
        let rep = sieve_check(257, 1, 1, &p).unwrap();
        assert_eq!(rep.delta, BigReal::one());
        assert_eq!(rep.s, Some(BigReal::one()));
        assert!(rep.holds);
    }

    #[test]
    fn sieve_rejects_inconsistent_parameters() {
        let bad = SieveParameters {
            l: 2,
            l_prime: 3,
            excluded: vec![2],
            excluded_prime: vec![],
        };
        assert!(matches!(sieve_check(7, 1, 1, &bad), Err(BoundsError::Inconsistent(_))));
        let bad = SieveParameters {
            l: 4,
            l_prime: 1,
            excluded: vec![],
            excluded_prime: vec![],
        };
        assert!(sieve_check(7, 1, 1, &bad).is_err());
    }

    #[test]
    fn nonpositive_delta_never_holds() {
        // q - 1 = 2 * 3 * 5 * 7 = 210 with l = 1: delta = 1 - 2(1/2 + 1/3 + 1/5 + 1/7) < 0.
        let p = SieveParameters::for_divisors(211, 1, 1, 1).unwrap();
        let rep = sieve_check(211, 1, 1, &p).unwrap();
        assert!(!rep.delta_positive && !rep.holds && rep.s.is_none());
    }

    #[test]
    fn auto_sieve_examples() {
        assert!(auto_sieve(257, 1, 1).unwrap().holds);
        assert!(!auto_sieve(7, 2, 2).unwrap().holds);
    }

    #[test]
    fn k_constant() {
        let k = compute_k();
        assert!(k > 37.4 && k < 37.469, "{k}");
        // K < 37.469 exactly: K^6 < 37.469^6.
        assert!(k_sixth_power() < num::traits::Pow::pow(k_rounded(), 6u32));
        let k6 = num::ToPrimitive::to_f64(&k_sixth_power()).unwrap();
        assert!((k6.powf(1.0 / 6.0) - k).abs() < 1e-9);
    }

    #[test]
    fn generic_threshold_scaling() {
        let t11 = generic_threshold(1, 1);
        assert!((t11.to_f64() / 7.65712e18 - 1.0).abs() < 1e-4);
        let t22 = generic_threshold(2, 2);
        assert_eq!(t22.as_rational(), &(t11.as_rational() * rat(4096)));
        assert!(generic_threshold_exact_k(1, 1) < t11);
    }

    #[test]
    fn w_bound_small_cases() {
        for n in 1..5000 {
            assert!(w_within_k_bound(n));
        }
        let p15: u64 = primes_below(48).iter().product();
        assert!(w_within_k_bound(p15));
    }
}
