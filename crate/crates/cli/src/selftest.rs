//! Consistency suites run by `primsurf selftest`.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use primsurf::arith::{divisors, prime_power, verify_divisor_identity};
use primsurf::characters::{DualGroup, INDICATOR_TOLERANCE};
use primsurf::rational_functions::{Poly, UnivariateRationalFunction};
use primsurf::search::{compare_counts, Surface, DEFAULT_CHARACTER_SUM_BUDGET};
use primsurf::FieldTable;

use crate::output::Out;
use crate::{holds, Ctx, Level, Status};

#[derive(Serialize)]
struct SuiteResult {
    suite: &'static str,
    pass: bool,
    checks: usize,
    failures: usize,
    seconds: f64,
}

fn prime_powers(hi: u64) -> Vec<u64> {
    (2..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

fn fields(ctx: &Ctx, hi: u64) -> Result<Vec<FieldTable>, String> {
    prime_powers(hi).into_iter().map(|q| ctx.field(q)).collect()
}

fn identity(max_r: u64, max_small_r: u64) -> (usize, usize) {
    let bad = (1..=max_r)
        .into_par_iter()
        .map(|big_r| {
            (1..=max_small_r)
                .filter(|&r| !verify_divisor_identity(big_r, r).equal)
                .count()
        })
        .sum();
    ((max_r * max_small_r) as usize, bad)
}

fn indicators(fields: &[FieldTable]) -> (usize, usize) {
    fields
        .par_iter()
        .map(|f| {
            let g = DualGroup::new(f);
            let n = f.group_order();
            let (mut checks, mut bad) = (0, 0);
            let mut check = |got: Complex64, want: bool| {
                checks += 1;
                if (got - Complex64::new(f64::from(u8::from(want)), 0.0)).norm() >= INDICATOR_TOLERANCE {
                    bad += 1;
                }
            };
            for a in f.nonzero() {
                for e in divisors(n) {
                    check(g.rho_indicator(e, a).unwrap(), f.is_e_free(a, e).unwrap());
                }
                for r in divisors(n) {
                    for big_r in divisors(n / r) {
                        check(
                            g.freeness_indicator(big_r, r, a).unwrap(),
                            f.is_rr_free(a, big_r, r).unwrap(),
                        );
                    }
                }
            }
            (checks, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

fn weil(fields: &[FieldTable], per_field: usize, seed: u64) -> (usize, usize) {
    fields
        .par_iter()
        .map(|f| {
            let g = DualGroup::new(f);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ f.q());
            let (mut checks, mut bad) = (0, 0);
            for _ in 0..per_field {
                let (dn, dd) = (rng.random_range(1..=5), rng.random_range(0..=3));
                let num = Poly::random_of_degree(f, &mut rng, dn);
                let den = Poly::random_of_degree(f, &mut rng, dd);
                let func = UnivariateRationalFunction::new(f, num, den).unwrap();
                if func.is_constant() {
                    continue;
                }
                for twist in 1..f.group_order() {
                    let c = g.check_weil_bound(&func, g.character(twist), seed).unwrap();
                    if c.hypothesis_ok {
                        checks += 1;
                        bad += usize::from(!c.holds);
                    }
                }
            }
            (checks, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

fn expansion(fields: &[FieldTable], tolerance: f64) -> (usize, usize) {
    fields
        .par_iter()
        .map(|f| {
            let (mut checks, mut bad) = (0, 0);
            let n = f.group_order();
            for r in [1, 2].into_iter().filter(|r| n % r == 0) {
                let s = Surface::sphere(f, r).unwrap();
                for l in divisors(n) {
                    for big_r in divisors(n / r) {
                        let c = compare_counts(&s, l, big_r, tolerance, DEFAULT_CHARACTER_SUM_BUDGET).unwrap();
                        checks += 1;
                        bad += usize::from(c.agrees != Some(true));
                    }
                }
            }
            (checks, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

pub fn run(ctx: &Ctx, out: &Out, level: Level) -> Result<Status, String> {
    let full = matches!(level, Level::Full);
    let small = fields(ctx, 49)?;
    let (medium, corpus) = if full {
        let corpus: Vec<FieldTable> = [7, 11, 13, 25, 49, 121, 343]
            .into_iter()
            .map(|q| ctx.field(q))
            .collect::<Result<_, _>>()?;
        (fields(ctx, 121)?, corpus)
    } else {
        (Vec::new(), Vec::new())
    };
    let mut suites: Vec<(&'static str, Box<dyn Fn() -> (usize, usize) + '_>)> = vec![
        ("divisor identity", Box::new(|| identity(200, 50))),
        ("indicators q <= 49", Box::new(|| indicators(&small))),
    ];
    if full {
        suites.push(("divisor identity, full range", Box::new(|| identity(500, 100))));
        suites.push(("indicators q <= 121", Box::new(|| indicators(&medium))));
        suites.push(("Weil bound corpus", Box::new(|| weil(&corpus, 100, ctx.run.seed))));
        suites.push((
            "character sums vs exact counts",
            Box::new(|| expansion(&small, ctx.run.tolerance)),
        ));
    }
    let mut all = true;
    for (suite, job) in suites {
        let t0 = std::time::Instant::now();
        let (checks, failures) = job();
        let res = SuiteResult {
            suite,
            pass: failures == 0,
            checks,
            failures,
            seconds: t0.elapsed().as_secs_f64(),
        };
        all &= res.pass;
        out.record("selftest_suite", &res, || {
            format!(
                "{:<34} {}  {} checks, {} failures, {:.2}s",
                suite,
                if res.pass { "PASS" } else { "FAIL" },
                checks,
                failures,
                res.seconds
            )
        });
    }
    Ok(holds(all))
}
