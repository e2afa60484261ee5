//! `primsurf`: batch front end for primitive-point experiments.
//!
//! Exit codes: 0 success or the bound holds, 2 a valid negative result, 1 an
//! error.

mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use primsurf::arith::prime_power;
use primsurf::bounds::estimate::{estimate_c, Congruence};
use primsurf::bounds::{auto_sieve, sieve_check, sufficient_condition, SieveParameters};
use primsurf::finite_field::cache::{load_or_build, CACHE_DIR_ENV};
use primsurf::finite_field::DEFAULT_FIELD_CAP;
use primsurf::rational_functions::parse;
use primsurf::search::{
    compare_counts, find_primitive_point, sample_and_search, sphere_sweep, sweep_exceptions, ModulusChoice,
    SampleClass, Surface, DEFAULT_CHARACTER_SUM_BUDGET,
};
use primsurf::{FieldError, FieldOptions, FieldTable};

use output::{Format, Out};

const SPHERE_EXCEPTIONS: [u64; 5] = [3, 5, 9, 13, 25];

#[derive(Parser)]
#[command(
    name = "primsurf",
    version,
    about = "Primitive points on z^r = f(x, y) over finite fields"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct RunConfig {
    /// Largest field order for which tables are built.
    #[arg(long, global = true, default_value_t = DEFAULT_FIELD_CAP)]
    pub cap: u64,
    /// Tolerance for floating-point agreement checks, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tolerance: f64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for cached field tables.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the unit sphere z^2 = 1 - x^2 - y^2 over odd prime powers.
    Sphere {
        #[arg(long)]
        qmax: u64,
        #[arg(long, default_value_t = 2)]
        r: u64,
        /// Build each field from its second irreducible modulus.
        #[arg(long)]
        alternative: bool,
    },
    /// Search z^r = f(x, y) for a primitive point.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        f: String,
    },
    /// Count N_f(l, R) exactly and through the character-sum expansion.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        l: u64,
        #[arg(long = "big-r")]
        big_r: u64,
    },
    /// The plain sufficient condition sqrt(q) > r d W(q-1) W((q-1)/r).
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u64,
    },
    /// The sieved condition; without --l/--lprime the best split is chosen.
    Sieve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, requires = "lprime")]
        l: Option<u64>,
        #[arg(long, requires = "l")]
        lprime: Option<u64>,
    },
    /// Iterative estimate of the threshold C_{d,r}.
    Estimate {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u64,
        /// "generic", "1 mod 4" or "3 mod 4".
        #[arg(long, default_value = "generic")]
        congruence: String,
    },
    /// Sample functions of degree sum d and search each surface.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Sample only functions with no specialization exceptional up to a power of y.
        #[arg(long)]
        strict: bool,
    },
    /// Built-in consistency suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

pub struct Ctx {
    pub run: RunConfig,
}

impl Ctx {
    pub fn field(&self, q: u64) -> Result<FieldTable, String> {
        let (p, k) = prime_power(q).ok_or_else(|| FieldError::NotPrimePower(q).to_string())?;
        let opts = FieldOptions {
            cap: self.run.cap,
            modulus: None,
        };
        let t = match &self.run.cache_dir {
            Some(dir) => load_or_build(dir, p, k, &opts),
            None => FieldTable::with_options(p, k, &opts),
        };
        t.map_err(|e| e.to_string())
    }
}

pub enum Status {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out::new(cli.run.format);
    if !(cli.run.tolerance > 0.0 && cli.run.tolerance <= 1e-3) {
        out.error("config", "tolerance must lie in (0, 1e-3]");
        return ExitCode::from(1);
    }
    if let Some(n) = cli.run.threads {
        if n == 0 {
            out.error("config", "thread count must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            out.error("config", &e.to_string());
            return ExitCode::from(1);
        }
    }
    let ctx = Ctx { run: cli.run.clone() };
    let name = command_name(&cli.command);
    match run(&ctx, &out, cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(2),
        Err(e) => {
            out.error(name, &e);
            ExitCode::from(1)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sphere { .. } => "sphere",
        Command::Search { .. } => "search",
        Command::Count { .. } => "count",
        Command::Bound { .. } => "bound",
        Command::Sieve { .. } => "sieve",
        Command::Estimate { .. } => "estimate",
        Command::Verify { .. } => "verify",
        Command::Selftest { .. } => "selftest",
    }
}

pub fn holds(b: bool) -> Status {
    if b {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn run(ctx: &Ctx, out: &Out, command: Command) -> Result<Status, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match command {
        Command::Sphere { qmax, r, alternative } => {
            let choice = if alternative {
                ModulusChoice::Alternative
            } else {
                ModulusChoice::Smallest
            };
            let rows = sphere_sweep(qmax, r, choice, ctx.run.cap).map_err(|e| err(&e))?;
            for row in &rows {
                out.record("sphere_row", row, || {
                    let t = row
                        .triple
                        .as_ref()
                        .map_or("NOT_FOUND".to_string(), |t| format!("({}, {}, {})", t[0], t[1], t[2]));
                    format!(
                        "q = {:>6}  p = {:>5}  k = {:>2}  {t:<24} {:.3} ms",
                        row.q, row.p, row.k, row.wall_ms
                    )
                });
            }
            let ex = sweep_exceptions(&rows);
            let expected: Vec<u64> = SPHERE_EXCEPTIONS.iter().copied().filter(|&q| q <= qmax).collect();
            let note = (qmax < 25).then_some("range below 25: partial exception set");
            let matches = r != 2 || ex == expected;
            let missing: Vec<u64> = expected.iter().copied().filter(|q| !ex.contains(q)).collect();
            let unexpected: Vec<u64> = ex.iter().copied().filter(|q| !expected.contains(q)).collect();
            let summary = json!({
                "q_max": qmax, "r": r, "fields": rows.len(), "exceptions": ex,
                "expected": expected, "matches": matches, "missing": missing,
                "unexpected": unexpected, "note": note,
            });
            out.record("sphere_summary", &summary, || {
                let mut s = format!("{} fields, exceptions {:?}", rows.len(), ex);
                if let Some(n) = note {
                    s.push_str(&format!(" ({n})"));
                }
                if !matches {
                    s.push_str(&format!(
                        "; differs from {expected:?}: missing {missing:?}, unexpected {unexpected:?}"
                    ));
                }
                s
            });
            if matches {
                Ok(Status::Ok)
            } else {
                Err(format!("exception set {ex:?} differs from {expected:?}"))
            }
        }
        Command::Search { q, r, f } => {
            let field = ctx.field(q)?;
            let func = parse(&field, &f).map_err(|e| err(&e))?;
            let s = Surface::new(&field, r, func).map_err(|e| err(&e))?;
            let hit = find_primitive_point(&s).map_err(|e| err(&e))?;
            let triple = hit.map(|t| t.format(&field));
            let rec = json!({ "q": q, "r": r, "f": s.f.format(&field), "found": triple.is_some(), "triple": triple });
            out.record("search", &rec, || match &triple {
                Some(t) => format!("({}, {}, {})", t[0], t[1], t[2]),
                None => "NOT_FOUND".to_string(),
            });
            Ok(holds(triple.is_some()))
        }
        Command::Count { q, r, f, l, big_r } => {
            let field = ctx.field(q)?;
            let func = parse(&field, &f).map_err(|e| err(&e))?;
            let s = Surface::new(&field, r, func).map_err(|e| err(&e))?;
            let rep = if q <= DEFAULT_CHARACTER_SUM_BUDGET {
                compare_counts(&s, l, big_r, ctx.run.tolerance, DEFAULT_CHARACTER_SUM_BUDGET)
            } else {
                primsurf::search::brute_force_count(&s, l, big_r)
            }
            .map_err(|e| err(&e))?;
            out.record("count", &rep, || {
                let mut s = format!("N_f({l}, {big_r}) = {}", rep.count);
                if let (Some(re), Some(im)) = (rep.estimate_re, rep.estimate_im) {
                    s.push_str(&format!(
                        "; character sums {re:.6} {im:+.6}i, agree = {}",
                        rep.agrees.unwrap_or(false)
                    ));
                }
                if rep.degenerate_alphas > 0 {
                    s.push_str(&format!("; {} degenerate alpha skipped", rep.degenerate_alphas));
                }
                s
            });
            Ok(holds(rep.agrees != Some(false)))
        }
        Command::Bound { q, r, d } => {
            let rep = sufficient_condition(q, r, d).map_err(|e| err(&e))?;
            out.record("bound", &rep, || {
                format!(
                    "sqrt(q) = {:.6e} vs r d W(q-1) W((q-1)/r) = {}: holds = {}",
                    rep.lhs, rep.rhs, rep.holds
                )
            });
            Ok(holds(rep.holds))
        }
        Command::Sieve { q, r, d, l, lprime } => {
            let rep = match (l, lprime) {
                (Some(l), Some(lp)) => {
                    let params = SieveParameters::for_divisors(q, r, l, lp).map_err(|e| err(&e))?;
                    sieve_check(q, r, d, &params)
                }
                _ => auto_sieve(q, r, d),
            }
            .map_err(|e| err(&e))?;
            out.record("sieve", &rep, || {
                format!(
                    "l = {}, l' = {}, excluded {:?} / {:?}: delta = {}, S = {}, rhs = {}, sqrt(q) = {:.6e}, holds = {}",
                    rep.params.l,
                    rep.params.l_prime,
                    rep.params.excluded,
                    rep.params.excluded_prime,
                    rep.delta.sci(6),
                    rep.s.as_ref().map_or("undefined".into(), |s| s.sci(6)),
                    rep.rhs.as_ref().map_or("undefined".into(), |s| s.sci(6)),
                    rep.lhs,
                    rep.holds
                )
            });
            Ok(holds(rep.holds))
        }
        Command::Estimate { r, d, congruence } => {
            let c: Congruence = congruence.parse().map_err(|e| err(&e))?;
            let t = estimate_c(r, d, c).map_err(|e| err(&e))?;
            out.record("estimate", &t, || {
                let mut s = format!("C_{{{d},{r}}} ({c}): start {}", t.start_threshold.sci(6));
                for st in &t.steps {
                    s.push_str(&format!(
                        "\n  step {}: w = {}, w' = {}, k = {}, delta = {}, S = {} (tight {}), threshold {} (tight {})",
                        st.step,
                        st.omega_max,
                        st.omega_prime_max,
                        st.k,
                        st.delta.sci(6),
                        st.s_omega.sci(6),
                        st.s_tight.sci(6),
                        st.threshold_omega.sci(6),
                        st.threshold_tight.sci(6)
                    ));
                }
                s.push_str(&format!("\n  final {}", t.final_threshold.sci(6)));
                match (t.reference_final, t.matches_reference) {
                    (Some(v), Some(true)) => s.push_str(&format!(" (matches {v:.4e})")),
                    (Some(v), _) => s.push_str(&format!(" (DISCREPANCY: reference {v:.4e})")),
                    _ => {}
                }
                s
            });
            Ok(holds(!t.failed))
        }
        Command::Verify {
            q,
            r,
            d,
            samples,
            strict,
        } => {
            let field = ctx.field(q)?;
            let class = if strict {
                SampleClass::StrictDelta
            } else {
                SampleClass::Delta
            };
            let rep = sample_and_search(&field, r, d, samples, ctx.run.seed, class).map_err(|e| err(&e))?;
            let failures = rep.failures().count();
            out.record("verify", &rep, || {
                let mut s = format!(
                    "{} surfaces sampled in {} draws, {failures} without a primitive point",
                    rep.outcomes.len(),
                    rep.draws
                );
                for o in rep.failures() {
                    s.push_str(&format!(
                        "\n  NOT_FOUND f = {} (y-power exceptional: {})",
                        o.f, o.y_power_exceptional
                    ));
                }
                s
            });
            Ok(holds(failures == 0))
        }
        Command::Selftest { level } => selftest::run(ctx, out, level),
    }
}
