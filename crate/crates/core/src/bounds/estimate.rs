//! Iterative estimation of C_{d,r}.
//!
//! Starting from the generic threshold T, each step
//!
//! 1. takes `w`, the largest `n` with (product of the first `n` primes) < T,
//!    so every q below T has `omega(q-1) <= w`;
//! 2. for each `k`, lets `l`, `l'` be products of the `k` least primes and
//!    assumes the worst case, that the remaining primes of `q-1` are the
//!    next `w - k` consecutive primes;
//! 3. computes `delta`, `S` and the threshold `(r d S W(l) W(l'))^2`, keeping
//!    the `k` with the smallest threshold.
//!
//! `S` is recorded in two forms: with `t1 + t2` equal to the number of
//! excluded primes (tight) and with `t1 + t2 = w + w'` (omega-bound). The
//! chain advances on the omega-bound threshold and stops when it no longer
//! decreases.
//!
//! For `r = 2` and `q = 3 mod 4`, `(q-1)/2` is odd, so `W((q-1)/2) =
//! W(q-1)/2`; the start threshold drops by `2^6`, `l'` is built from odd
//! primes and `w' = w - 1`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::Serialize;

use super::{generic_threshold, sieve_quantities, BoundsError};
use crate::arith::{primes_below, BigReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Congruence {
    Generic,
    OneModFour,
    ThreeModFour,
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Congruence::Generic => "generic",
            Congruence::OneModFour => "1 mod 4",
            Congruence::ThreeModFour => "3 mod 4",
        })
    }
}

impl FromStr for Congruence {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_lowercase();
        match norm.as_str() {
            "generic" | "any" => Ok(Congruence::Generic),
            "1mod4" | "1" => Ok(Congruence::OneModFour),
            "3mod4" | "3" => Ok(Congruence::ThreeModFour),
            _ => Err(BoundsError::Congruence(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimationStep {
    pub step: usize,
    /// Threshold this step starts from.
    pub input_threshold: BigReal,
    pub omega_max: usize,
    pub omega_prime_max: usize,
    pub k: usize,
    pub l_primes: Vec<u64>,
    pub l_prime_primes: Vec<u64>,
    pub excluded: Vec<u64>,
    pub excluded_prime: Vec<u64>,
    pub delta: BigReal,
    pub s_tight: BigReal,
    pub s_omega: BigReal,
    pub threshold_tight: BigReal,
    pub threshold_omega: BigReal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimationTrace {
    pub r: u64,
    pub d: u64,
    pub congruence: Congruence,
    pub start_threshold: BigReal,
    pub steps: Vec<EstimationStep>,
    pub final_threshold: BigReal,
    /// No `k` gave a positive delta at the first step.
    pub failed: bool,
    /// Reference value for the final threshold, when one is known.
    pub reference_final: Option<f64>,
    /// Whether `final_threshold` agrees with `reference_final` to 3
    /// significant digits.
    pub matches_reference: Option<bool>,
}

/// Reference final thresholds for C_{2,2}.
pub fn reference_final(r: u64, d: u64, congruence: Congruence) -> Option<f64> {
    match (r, d, congruence) {
        (2, 2, Congruence::OneModFour) => Some(4.072e9),
        (2, 2, Congruence::ThreeModFour) => Some(9.026e8),
        _ => None,
    }
}

/// Agreement after rounding both values to `digits` significant digits.
pub fn agrees_to_digits(a: f64, b: f64, digits: usize) -> bool {
    let p = digits.saturating_sub(1);
    format!("{a:.p$e}") == format!("{b:.p$e}")
}

pub fn estimate_c(r: u64, d: u64, congruence: Congruence) -> Result<EstimationTrace, BoundsError> {
    if r == 0 || d == 0 {
        return Err(BoundsError::ZeroParameter);
    }
    if congruence != Congruence::Generic && r != 2 {
        return Err(BoundsError::Congruence(congruence.to_string()));
    }
    let odd = congruence == Congruence::ThreeModFour;
    let start = if odd {
        &generic_threshold(r, d) / &BigReal::from_integer(64)
    } else {
        generic_threshold(r, d)
    };
    let primes = primes_below(1000);
    let pool: Vec<u64> = if odd { primes[1..].to_vec() } else { primes.clone() };

    let mut steps: Vec<EstimationStep> = Vec::new();
    let mut current = start.clone();
    loop {
        let w = omega_max(&primes, &current);
        let wp = if odd { w.saturating_sub(1) } else { w };
        let best = (1..=wp)
            .filter_map(|k| step_for(r, d, &current, &primes, &pool, w, wp, k))
            .min_by(|a, b| a.threshold_omega.cmp(&b.threshold_omega));
        match best {
            Some(mut s) if s.threshold_omega < current => {
                s.step = steps.len() + 1;
                current = s.threshold_omega.clone();
                steps.push(s);
            }
            _ => break,
        }
    }
    let failed = steps.is_empty();
    let reference = reference_final(r, d, congruence);
    let matches = reference.map(|v| agrees_to_digits(current.to_f64(), v, 3));
    Ok(EstimationTrace {
        r,
        d,
        congruence,
        start_threshold: start,
        steps,
        final_threshold: current,
        failed,
        reference_final: reference,
        matches_reference: matches,
    })
}

/// Largest `n` with the product of the first `n` primes below `t`.
fn omega_max(primes: &[u64], t: &BigReal) -> usize {
    let mut prod = BigRational::from_integer(BigInt::from(1));
    let mut n = 0;
    for &p in primes {
        prod *= BigRational::from_integer(BigInt::from(p));
        if &prod >= t.as_rational() {
            break;
        }
        n += 1;
    }
    n
}

#[allow(clippy::too_many_arguments)]
fn step_for(
    r: u64,
    d: u64,
    input: &BigReal,
    primes: &[u64],
    pool: &[u64],
    w: usize,
    wp: usize,
    k: usize,
) -> Option<EstimationStep> {
    let excluded = primes[k.min(w)..w].to_vec();
    let excluded_prime = pool[k.min(wp)..wp].to_vec();
    let tight = sieve_quantities(
        &excluded,
        &excluded_prime,
        (excluded.len() + excluded_prime.len()) as u64,
    );
    let omega = sieve_quantities(&excluded, &excluded_prime, (w + wp) as u64);
    let (s_tight, s_omega) = (tight.s?, omega.s?);
    let factor = BigReal::from_integer(BigInt::from(r * d) << (2 * k));
    let thr = |s: &BigReal| (&factor * s).powi(2);
    Some(EstimationStep {
        step: 0,
        input_threshold: input.clone(),
        omega_max: w,
        omega_prime_max: wp,
        k,
        l_primes: primes[..k].to_vec(),
        l_prime_primes: pool[..k].to_vec(),
        excluded,
        excluded_prime,
        delta: tight.delta,
        threshold_tight: thr(&s_tight),
        threshold_omega: thr(&s_omega),
        s_tight,
        s_omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_mod_four_chain() {
        let t = estimate_c(2, 2, Congruence::OneModFour).unwrap();
        assert!(!t.failed);
        let s1 = &t.steps[0];
        assert_eq!((s1.omega_max, s1.k), (17, 5));
        assert_eq!(s1.excluded, vec![13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(agrees_to_digits(s1.threshold_tight.to_f64(), 4.69e11, 3));
        let s2 = &t.steps[1];
        assert_eq!((s2.omega_max, s2.k), (11, 4));
        assert_eq!(s2.excluded, vec![11, 13, 17, 19, 23, 29, 31]);
        assert!(agrees_to_digits(s2.threshold_omega.to_f64(), 9.8724e9, 3));
        for w in t.steps.windows(2) {
            assert!(w[1].threshold_omega < w[0].threshold_omega);
        }
    }

    #[test]
    fn three_mod_four_chain() {
        let t = estimate_c(2, 2, Congruence::ThreeModFour).unwrap();
        let s1 = &t.steps[0];
        assert_eq!((s1.omega_max, s1.omega_prime_max, s1.k), (16, 15, 4));
        assert_eq!(s1.excluded.first(), Some(&11));
        assert_eq!(s1.excluded_prime, vec![13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]);
        assert!(agrees_to_digits(s1.threshold_omega.to_f64(), 1.41e11, 3));
        let s2 = &t.steps[1];
        assert_eq!((s2.excluded.len(), s2.excluded_prime.len()), (7, 6));
        assert!(agrees_to_digits(s2.threshold_omega.to_f64(), 1.078e9, 3));
    }

    #[test]
    fn congruence_parsing_and_errors() {
        assert_eq!("3 mod 4".parse::<Congruence>().unwrap(), Congruence::ThreeModFour);
        assert_eq!("1mod4".parse::<Congruence>().unwrap(), Congruence::OneModFour);
        assert!("2 mod 4".parse::<Congruence>().is_err());
        assert!(estimate_c(3, 2, Congruence::OneModFour).is_err());
        let g = estimate_c(1, 1, Congruence::Generic).unwrap();
        assert!(!g.failed && g.final_threshold < g.start_threshold);
        assert_eq!(g.reference_final, None);
    }
}
