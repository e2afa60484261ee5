//! Exhaustive primitive-point search on `z^r = f(x, y)`, exact counts of
//! N_f(l, R) and their character-sum expansion, and the unit-sphere sweep.

use std::time::Instant;

use num::complex::Complex64;
use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, euler_phi, gcd, mobius, prime_power, reduced_part, theta};
use crate::bounds::{sufficient_condition, BoundsError};
use crate::characters::DualGroup;
use crate::finite_field::{irreducible_monics, FieldElement, FieldError, FieldOptions, FieldTable};
use crate::rational_functions::{
    has_y_power_exceptional_specialization, in_delta, in_delta_strict, BivariateRationalFunction, Specialization,
    UnivariateRationalFunction,
};

/// Largest q accepted by [`character_sum_count`] by default.
pub const DEFAULT_CHARACTER_SUM_BUDGET: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("character-sum expansion refused for q = {q} above the budget {budget}")]
    BudgetExceeded { q: u64, budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(
        "no function of degree sum {d} outside the primarily exceptional set found at q = {q} after {attempts} draws"
    )]
    SamplingFailed { q: u64, d: u32, attempts: usize },
    #[error("no primitive point for f = {f} at q = {q}, r = {r}, d = {d} (seed {seed}, sample {index})")]
    Contradiction {
        q: u64,
        r: u64,
        d: u32,
        f: String,
        seed: u64,
        index: usize,
    },
    #[error("value {value} at ({alpha}, {beta}) is r-primitive but has no primitive r-th root (q = {q}, r = {r})")]
    RootAnomaly {
        q: u64,
        r: u64,
        alpha: String,
        beta: String,
        value: String,
    },
}

/// `z^r = f(x, y)` over a field.
#[derive(Clone, Debug)]
pub struct Surface<'a> {
    pub field: &'a FieldTable,
    pub r: u64,
    pub f: BivariateRationalFunction,
}

impl<'a> Surface<'a> {
    pub fn new(field: &'a FieldTable, r: u64, f: BivariateRationalFunction) -> Result<Self, SearchError> {
        let n = field.group_order();
        if r == 0 || n % r != 0 {
            return Err(FieldError::NotDivisor { divisor: r, n }.into());
        }
        Ok(Surface { field, r, f })
    }

    pub fn sphere(field: &'a FieldTable, r: u64) -> Result<Self, SearchError> {
        Self::new(field, r, BivariateRationalFunction::sphere(field))
    }

    fn primitive_list(&self) -> Vec<FieldElement> {
        self.field.primitive_elements().collect()
    }

    /// `(log beta, log f(alpha, beta))` over nonzero non-pole `beta` with
    /// `f(alpha, beta) != 0`.
    fn pairs_at(&self, g: &UnivariateRationalFunction) -> Vec<(u64, u64)> {
        let f = self.field;
        f.nonzero()
            .filter_map(|b| {
                let v = g.eval(f, b)?;
                Some((b.log()?, v.log()?))
            })
            .collect()
    }
}

/// A point with all three coordinates primitive and `gamma^r = f(alpha, beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitiveTriple {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

impl PrimitiveTriple {
    pub fn format(&self, f: &FieldTable) -> [String; 3] {
        [f.format(self.alpha), f.format(self.beta), f.format(self.gamma)]
    }
}

/// Exact N_f(l, R) and, when computed, its character-sum expansion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub l: u64,
    pub big_r: u64,
    pub count: u64,
    /// Primitive `alpha` whose specialization was degenerate and skipped.
    pub degenerate_alphas: usize,
    pub estimate_re: Option<f64>,
    pub estimate_im: Option<f64>,
    pub agrees: Option<bool>,
}

fn check_count_args(s: &Surface, l: u64, big_r: u64) -> Result<(), SearchError> {
    let n = s.field.group_order();
    if l == 0 || n % l != 0 {
        return Err(FieldError::NotDivisor { divisor: l, n }.into());
    }
    if big_r == 0 || (n / s.r) % big_r != 0 {
        return Err(FieldError::NotDivisor {
            divisor: big_r,
            n: n / s.r,
        }
        .into());
    }
    Ok(())
}

/// Counts pairs `(alpha, beta)` with `alpha` primitive, `beta` nonzero, not a
/// pole and l-free, and `f(alpha, beta)` nonzero and (R, r)-free.
pub fn brute_force_count(s: &Surface, l: u64, big_r: u64) -> Result<CountReport, SearchError> {
    check_count_args(s, l, big_r)?;
    let f = s.field;
    let r = s.r;
    let (count, degenerate) = s
        .primitive_list()
        .par_iter()
        .map(|&a| match s.f.specialize_x(f, a) {
            Specialization::Degenerate => (0u64, 1usize),
            Specialization::Function(g) => {
                let c = s
                    .pairs_at(&g)
                    .into_iter()
                    .filter(|&(lb, lv)| gcd(lb, l) == 1 && lv % r == 0 && gcd(lv / r, big_r) == 1)
                    .count() as u64;
                (c, 0)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(CountReport {
        l,
        big_r,
        count,
        degenerate_alphas: degenerate,
        estimate_re: None,
        estimate_im: None,
        agrees: None,
    })
}

/// The character-sum expansion of N_f(l, R):
///
/// ```text
/// theta(l) theta(R) / r * sum_{d1 | l, d2 | R r} mu(d1) mu(d2_(r)) / (phi(d1) phi(d2_(r)))
///     * sum_{chi_d1, chi_d2} sum_{alpha, beta} chi_d1(beta) chi_d2(f(alpha, beta))
/// ```
///
/// over the same `(alpha, beta)` domain as [`brute_force_count`]. Refused
/// when `q > budget`.
pub fn character_sum_count(s: &Surface, l: u64, big_r: u64, budget: u64) -> Result<Complex64, SearchError> {
    check_count_args(s, l, big_r)?;
    let f = s.field;
    if f.q() > budget {
        return Err(SearchError::BudgetExceeded { q: f.q(), budget });
    }
    let n = f.group_order() as usize;
    let r = s.r;
    let dual = DualGroup::new(f);
    let roots: Vec<Complex64> = (0..n)
        .map(|j| dual.evaluate(dual.character(j as u64), f.generator()))
        .collect();

    let mut pairs = Vec::new();
    for a in s.primitive_list() {
        if let Specialization::Function(g) = s.f.specialize_x(f, a) {
            pairs.extend(s.pairs_at(&g));
        }
    }

    // Characters of order d1 | l with their weights mu(d1)/phi(d1).
    let mut chi1: Vec<(u64, f64)> = Vec::new();
    for d1 in divisors(l) {
        let mu = mobius(d1);
        if mu != 0 {
            let w = mu as f64 / euler_phi(d1) as f64;
            chi1.extend(dual.characters_of_order(d1)?.into_iter().map(|c| (c.twist, w)));
        }
    }
    let mut chi2: Vec<(u64, f64)> = Vec::new();
    for d2 in divisors(big_r * r) {
        let dr = reduced_part(d2, r);
        let mu = mobius(dr);
        if mu != 0 {
            let w = mu as f64 / euler_phi(dr) as f64;
            chi2.extend(dual.characters_of_order(d2)?.into_iter().map(|c| (c.twist, w)));
        }
    }

    // For each chi1, fold the beta part into a vector indexed by log f.
    let total: Complex64 = chi1
        .par_iter()
        .map(|&(m1, w1)| {
            let mut by_value = vec![Complex64::new(0.0, 0.0); n];
            for &(lb, lv) in &pairs {
                by_value[lv as usize] += roots[((m1 * lb) % n as u64) as usize];
            }
            let inner: Complex64 = chi2
                .iter()
                .map(|&(m2, w2)| {
                    let sum: Complex64 = by_value
                        .iter()
                        .enumerate()
                        .map(|(lv, z)| z * roots[((m2 * lv as u64) % n as u64) as usize])
                        .sum();
                    sum * w2
                })
                .sum();
            inner * w1
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let scale = theta(l).to_f64().unwrap_or(0.0) * theta(big_r).to_f64().unwrap_or(0.0) / r as f64;
    Ok(total * scale)
}

/// Exact count, character-sum estimate, and agreement within `tolerance`.
pub fn compare_counts(
    s: &Surface,
    l: u64,
    big_r: u64,
    tolerance: f64,
    budget: u64,
) -> Result<CountReport, SearchError> {
    let mut rep = brute_force_count(s, l, big_r)?;
    let est = character_sum_count(s, l, big_r, budget)?;
    rep.estimate_re = Some(est.re);
    rep.estimate_im = Some(est.im);
    rep.agrees = Some((est - Complex64::new(rep.count as f64, 0.0)).norm() < tolerance);
    Ok(rep)
}

/// The first primitive point in the order (log alpha, log beta, log gamma),
/// with alpha, beta primitive, `f(alpha, beta)` r-primitive and gamma a
/// primitive r-th root of it. Parallel over alpha; the result does not depend
/// on the thread count.
pub fn find_primitive_point(s: &Surface) -> Result<Option<PrimitiveTriple>, SearchError> {
    let f = s.field;
    let r = s.r;
    let n = f.group_order();
    let prims = s.primitive_list();
    let hit = prims.par_iter().find_map_first(|&a| {
        let g = match s.f.specialize_x(f, a) {
            Specialization::Degenerate => return None,
            Specialization::Function(g) => g,
        };
        for &b in &prims {
            let v = match g.eval(f, b) {
                Some(v) if !v.is_zero() => v,
                _ => continue,
            };
            let lv = v.log().expect("nonzero");
            if lv % r != 0 || gcd(lv / r, n / r) != 1 {
                continue;
            }
            let roots = f.rth_roots(v, r).expect("r divides q - 1");
            let mut roots: Vec<FieldElement> = roots.into_iter().filter(|&z| f.is_primitive(z)).collect();
            roots.sort();
            return Some(match roots.first() {
                Some(&gamma) => Ok(PrimitiveTriple {
                    alpha: a,
                    beta: b,
                    gamma,
                }),
                None => Err(SearchError::RootAnomaly {
                    q: f.q(),
                    r,
                    alpha: f.format(a),
                    beta: f.format(b),
                    value: f.format(v),
                }),
            });
        }
        None
    });
    hit.transpose()
}

/// Which irreducible defines each field in a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModulusChoice {
    /// The lexicographically smallest irreducible.
    #[default]
    Smallest,
    /// The second irreducible in lexicographic order, where one exists.
    Alternative,
}

pub fn field_with_choice(q: u64, choice: ModulusChoice, cap: u64) -> Result<FieldTable, FieldError> {
    let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    let modulus = match choice {
        ModulusChoice::Smallest => None,
        ModulusChoice::Alternative => irreducible_monics(p, k).nth(1),
    };
    FieldTable::with_options(p, k, &FieldOptions { cap, modulus })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    /// `None` when no primitive point exists.
    pub triple: Option<[String; 3]>,
    pub wall_ms: f64,
}

/// Searches `z^r = 1 - x^2 - y^2` for every prime power `3 <= q <= q_max`
/// with `r | q - 1`.
pub fn sphere_sweep(q_max: u64, r: u64, choice: ModulusChoice, cap: u64) -> Result<Vec<SweepRow>, SearchError> {
    let mut rows = Vec::new();
    for q in 3..=q_max {
        let Some((p, k)) = prime_power(q) else { continue };
        if r == 0 || (q - 1) % r != 0 {
            continue;
        }
        let t0 = Instant::now();
        let field = field_with_choice(q, choice, cap)?;
        let s = Surface::sphere(&field, r)?;
        let triple = find_primitive_point(&s)?.map(|t| t.format(&field));
        rows.push(SweepRow {
            q,
            p,
            k,
            triple,
            wall_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(rows)
}

/// The q of a sweep without a primitive point.
pub fn sweep_exceptions(rows: &[SweepRow]) -> Vec<u64> {
    rows.iter().filter(|r| r.triple.is_none()).map(|r| r.q).collect()
}

/// Which functions are sampled when checking the sufficient condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SampleClass {
    /// Degree sum `d`, not primarily exceptional.
    #[default]
    Delta,
    /// Additionally, no primitive specialization is degenerate, zero or
    /// exceptional up to a power of `y`.
    StrictDelta,
}

fn in_class(field: &FieldTable, f: &BivariateRationalFunction, d: u32, class: SampleClass) -> bool {
    match class {
        SampleClass::Delta => in_delta(field, f, d),
        SampleClass::StrictDelta => in_delta_strict(field, f, d),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub f: String,
    pub found: bool,
    /// Some primitive specialization is degenerate, zero or exceptional up
    /// to a power of `y`.
    pub y_power_exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SufficiencyReport {
    pub q: u64,
    pub r: u64,
    pub d: u32,
    pub class: SampleClass,
    pub seed: u64,
    pub draws: usize,
    pub outcomes: Vec<SampleOutcome>,
}

impl SufficiencyReport {
    pub fn failures(&self) -> impl Iterator<Item = &SampleOutcome> {
        self.outcomes.iter().filter(|o| !o.found)
    }
}

/// Draws `sample_size` functions of `class` at `(q, r, d)` and searches each
/// surface `z^r = f` for a primitive point, recording every outcome.
/// Requires the sufficient condition at `(q, r, d)`.
pub fn sample_and_search(
    field: &FieldTable,
    r: u64,
    d: u32,
    sample_size: usize,
    seed: u64,
    class: SampleClass,
) -> Result<SufficiencyReport, SearchError> {
    let q = field.q();
    if !sufficient_condition(q, r, d as u64)?.holds {
        return Err(SearchError::Precondition(format!(
            "the sufficient condition fails at q = {q}, r = {r}, d = {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_draws = 1000 * sample_size.max(1);
    let mut draws = 0;
    let mut outcomes = Vec::with_capacity(sample_size);
    for index in 0..sample_size {
        let func = loop {
            if draws >= max_draws {
                return Err(SearchError::SamplingFailed { q, d, attempts: draws });
            }
            draws += 1;
            let cand = BivariateRationalFunction::random(field, &mut rng, d);
            if in_class(field, &cand, d, class) {
                break cand;
            }
        };
        let s = Surface::new(field, r, func)?;
        let found = find_primitive_point(&s)?.is_some();
        let y_power_exceptional = match class {
            SampleClass::StrictDelta => false,
            SampleClass::Delta => has_y_power_exceptional_specialization(field, &s.f),
        };
        outcomes.push(SampleOutcome {
            index,
            f: s.f.format(field),
            found,
            y_power_exceptional,
        });
    }
    Ok(SufficiencyReport {
        q,
        r,
        d,
        class,
        seed,
        draws,
        outcomes,
    })
}

/// As [`sample_and_search`], but the first surface without a primitive point
/// is an error carrying the function and seed.
pub fn verify_sufficient_condition(
    field: &FieldTable,
    r: u64,
    d: u32,
    sample_size: usize,
    seed: u64,
    class: SampleClass,
) -> Result<SufficiencyReport, SearchError> {
    let rep = sample_and_search(field, r, d, sample_size, seed, class)?;
    if let Some(o) = rep.failures().next() {
        return Err(SearchError::Contradiction {
            q: rep.q,
            r,
            d,
            f: o.f.clone(),
            seed,
            index: o.index,
        });
    }
    Ok(rep)
}
