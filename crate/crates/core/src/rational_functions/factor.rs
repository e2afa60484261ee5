//! Factorization of univariate polynomials over F_q.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::{Poly, UnivariateRationalFunction};
use super::RationalError;
use crate::arith;
use crate::finite_field::{FieldElement, FieldTable};

/// Default seed for equal-degree splitting.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed;

/// `unit * y^y_power * prod factors[j].0 ^ factors[j].1`, with monic
/// irreducible factors other than `y`, sorted canonically. Exponents are
/// negative for denominator factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    pub unit: FieldElement,
    pub y_power: i64,
    pub factors: Vec<(Poly, i64)>,
}

impl Multiplicities {
    /// Rebuilds the rational function.
    pub fn reconstruct(&self, f: &FieldTable) -> UnivariateRationalFunction {
        let mut num = Poly::constant(self.unit);
        let mut den = Poly::one(f);
        let y = Poly::x(f);
        let mut push = |p: &Poly, e: i64| {
            if e > 0 {
                num = num.mul(f, &p.pow(f, e as u32));
            } else {
                den = den.mul(f, &p.pow(f, (-e) as u32));
            }
        };
        if self.y_power != 0 {
            push(&y, self.y_power);
        }
        for (p, e) in &self.factors {
            push(p, *e);
        }
        UnivariateRationalFunction::new(f, num, den).expect("nonzero denominator")
    }

    /// Distinct irreducible factors including `y`, with exponents.
    pub fn all_factors(&self, f: &FieldTable) -> Vec<(Poly, i64)> {
        let mut v = Vec::with_capacity(self.factors.len() + 1);
        if self.y_power != 0 {
            v.push((Poly::x(f), self.y_power));
        }
        v.extend(self.factors.iter().cloned());
        v
    }
}

/// Square-free decomposition of a nonzero polynomial: monic pairwise coprime
/// square-free `g_i` with `g = lead * prod g_i^m_i`. Handles the vanishing
/// derivative case by extracting p-th roots.
pub fn squarefree_decomposition(f: &FieldTable, g: &Poly) -> Result<(FieldElement, Vec<(Poly, u64)>), RationalError> {
    if g.is_zero() {
        return Err(RationalError::ZeroPolynomial);
    }
    let (lead, g) = g.monic(f);
    let mut out = Vec::new();
    sff(f, &g, 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok((lead, out))
}

fn sff(f: &FieldTable, g: &Poly, scale: u64, out: &mut Vec<(Poly, u64)>) {
    if g.is_constant() {
        return;
    }
    let p = f.p();
    let mut c = Poly::gcd(f, g, &g.derivative(f));
    let mut w = g.div_exact(f, &c);
    let mut i = 1;
    while !w.is_constant() {
        let y = Poly::gcd(f, &w, &c);
        let fac = w.div_exact(f, &y);
        if !fac.is_constant() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(f, &w);
        i += 1;
    }
    if !c.is_constant() {
        // c is a p-th power.
        let root = Poly::from_coeffs(c.coeffs().iter().step_by(p as usize).map(|&a| f.pth_root(a)).collect());
        sff(f, &root, scale * p, out);
    }
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &FieldTable, g: &Poly) -> Vec<(Poly, usize)> {
    let x = Poly::x(f);
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(f, f.q(), &rest);
        let gd = Poly::gcd(f, &h.sub(f, &x), &rest);
        if !gd.is_one(f) {
            rest = rest.div_exact(f, &gd);
            h = h.rem(f, &rest);
            out.push((gd, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &FieldTable, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().unwrap_or(0);
    if n <= d {
        return vec![g.clone()];
    }
    loop {
        let a = Poly::random_below(f, rng, n);
        if a.is_constant() {
            continue;
        }
        let b = splitting_poly(f, &a, d, g);
        let h = Poly::gcd(f, &b, g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let mut v = equal_degree(f, &h, d, rng);
            v.extend(equal_degree(f, &g.div_exact(f, &h), d, rng));
            return v;
        }
    }
}

// Odd q: a^((q^d-1)/2) - 1, computed as N(a)^((q-1)/2) - 1 where N is the
// norm a * a^q * ... * a^(q^(d-1)). Even q: the absolute trace to F_2.
fn splitting_poly(f: &FieldTable, a: &Poly, d: usize, m: &Poly) -> Poly {
    let one = Poly::one(f);
    if f.p() == 2 {
        let steps = f.k() as usize * d;
        let mut t = a.rem(f, m);
        let mut s = t.clone();
        for _ in 1..steps {
            t = t.mul_mod(f, &t, m);
            s = s.add(f, &t);
        }
        s
    } else {
        let mut frob = a.rem(f, m);
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = frob.pow_mod(f, f.q(), m);
            norm = norm.mul_mod(f, &frob, m);
        }
        norm.pow_mod(f, (f.q() - 1) / 2, m).sub(f, &one)
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles:
/// `(lead, [(factor, multiplicity)])`, canonically sorted.
pub fn factor_poly(f: &FieldTable, g: &Poly, seed: u64) -> Result<(FieldElement, Vec<(Poly, u64)>), RationalError> {
    let (lead, sq) = squarefree_decomposition(f, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, m) in sq {
        for (block, d) in distinct_degree(f, &part) {
            for irr in equal_degree(f, &block, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(f, &b.0));
    Ok((lead, out))
}

/// Factorization of a univariate polynomial as [`Multiplicities`].
pub fn factor_univariate(f: &FieldTable, g: &Poly, seed: u64) -> Result<Multiplicities, RationalError> {
    let (unit, fs) = factor_poly(f, g, seed)?;
    Ok(split_y(f, unit, fs.into_iter().map(|(p, m)| (p, m as i64))))
}

/// Factorization of a reduced rational function with nonzero numerator.
pub fn factor_rational(
    f: &FieldTable,
    g: &UnivariateRationalFunction,
    seed: u64,
) -> Result<Multiplicities, RationalError> {
    if g.is_zero() {
        return Err(RationalError::ZeroNumerator);
    }
    let (unit, num) = factor_poly(f, g.numerator(), seed)?;
    let (_, den) = factor_poly(f, g.denominator(), seed)?;
    let all = num
        .into_iter()
        .map(|(p, m)| (p, m as i64))
        .chain(den.into_iter().map(|(p, m)| (p, -(m as i64))));
    let mut m = split_y(f, unit, all);
    m.factors.sort_by(|a, b| a.0.canonical_cmp(f, &b.0));
    Ok(m)
}

fn split_y(f: &FieldTable, unit: FieldElement, it: impl Iterator<Item = (Poly, i64)>) -> Multiplicities {
    let y = Poly::x(f);
    let mut out = Multiplicities {
        unit,
        y_power: 0,
        factors: Vec::new(),
    };
    for (p, e) in it {
        if p == y {
            out.y_power += e;
        } else {
            out.factors.push((p, e));
        }
    }
    out
}

/// Gcd of the absolute multiplicities of all irreducible factors of the
/// numerator and denominator; 0 for constants. Uses only square-free
/// decomposition.
pub fn multiplicity_gcd(f: &FieldTable, g: &UnivariateRationalFunction) -> Result<u64, RationalError> {
    if g.is_zero() {
        return Err(RationalError::ZeroNumerator);
    }
    let mut acc = 0;
    for p in [g.numerator(), g.denominator()] {
        for (_, m) in squarefree_decomposition(f, p)?.1 {
            acc = arith::gcd(acc, m);
        }
    }
    Ok(acc)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FieldTable, g: &Poly) -> bool {
    let n = match g.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let g = g.monic(f).1;
    let x = Poly::x(f);
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(f, f.q(), &g);
        }
        h
    };
    if !frob(n).sub(f, &x).rem(f, &g).is_zero() {
        return false;
    }
    arith::factorize(n as u64).primes().all(|s| {
        let h = frob(n / s as usize).sub(f, &x);
        Poly::gcd(f, &h, &g).is_one(f)
    })
}
