//! Sparse bivariate polynomials and rational functions `f1(x, y) / f2(x, y)`.

use std::collections::BTreeMap;

use rand::Rng;

use super::factor::{factor_rational, multiplicity_gcd, DEFAULT_FACTOR_SEED};
use super::poly::{Poly, UnivariateRationalFunction};
use super::RationalError;
use crate::arith;
use crate::finite_field::{FieldElement, FieldTable};

/// Nonzero terms keyed by `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::monomial(a, 0, 0)
    }

    pub fn one(f: &FieldTable) -> Self {
        Self::constant(f.one())
    }

    pub fn x(f: &FieldTable) -> Self {
        Self::monomial(f.one(), 1, 0)
    }

    pub fn y(f: &FieldTable) -> Self {
        Self::monomial(f.one(), 0, 1)
    }

    pub fn monomial(a: FieldElement, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert((i, j), a);
        }
        BiPoly { terms }
    }

    /// A polynomial in `x` alone.
    pub fn from_x_poly(p: &Poly) -> Self {
        let mut out = Self::zero();
        for (i, &a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out.terms.insert((i as u32, 0), a);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), FieldElement)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self, f: &FieldTable) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&f.one())
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    fn add_term(&mut self, f: &FieldTable, k: (u32, u32), a: FieldElement) {
        let s = f.add(self.terms.get(&k).copied().unwrap_or(FieldElement::ZERO), a);
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn add(&self, f: &FieldTable, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, a) in o.terms() {
            out.add_term(f, k, a);
        }
        out
    }

    pub fn neg(&self, f: &FieldTable) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, &a)| (k, f.neg(a))).collect(),
        }
    }

    pub fn sub(&self, f: &FieldTable, o: &BiPoly) -> BiPoly {
        self.add(f, &o.neg(f))
    }

    pub fn scale(&self, f: &FieldTable, c: FieldElement) -> BiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, &a)| (k, f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, f: &FieldTable, o: &BiPoly) -> BiPoly {
        let mut out = Self::zero();
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in o.terms() {
                out.add_term(f, (i + k, j + l), f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, f: &FieldTable, e: u32) -> BiPoly {
        let mut out = Self::one(f);
        for _ in 0..e {
            out = out.mul(f, self);
        }
        out
    }

    /// `self(a, y)` as a polynomial in `y`.
    pub fn specialize_x(&self, f: &FieldTable, a: FieldElement) -> Poly {
        let n = self.terms.keys().map(|&(_, j)| j).max().map_or(0, |m| m as usize + 1);
        let mut c = vec![FieldElement::ZERO; n];
        for ((i, j), b) in self.terms() {
            c[j as usize] = f.add(c[j as usize], f.mul(b, f.pow(a, i as u64)));
        }
        Poly::from_coeffs(c)
    }

    pub fn eval(&self, f: &FieldTable, a: FieldElement, b: FieldElement) -> FieldElement {
        self.terms().fold(FieldElement::ZERO, |acc, ((i, j), c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(a, i as u64), f.pow(b, j as u64))))
        })
    }

    /// Terms in graded-lex order: higher total degree first, then higher
    /// `x` degree.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), FieldElement)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| {
            let (ka, kb) = (a.0, b.0);
            (kb.0 + kb.1, kb.0).cmp(&(ka.0 + ka.1, ka.0))
        });
        v
    }

    pub fn format(&self, f: &FieldTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|((i, j), a)| {
                let mut m = Vec::new();
                for (v, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => m.push(v.to_string()),
                        _ => m.push(format!("{v}^{e}")),
                    }
                }
                format_term(f, a, &m.join("*"))
            })
            .collect();
        parts.join(" + ")
    }

    /// Random polynomial of exact total degree `d`; each term is present
    /// with probability 1/2 and at least one top-degree term is nonzero.
    pub fn random_of_degree<R: Rng + ?Sized>(f: &FieldTable, rng: &mut R, d: u32) -> BiPoly {
        let q = f.q() as u32;
        let mut out = Self::zero();
        for t in 0..=d {
            for i in 0..=t {
                if rng.random_bool(0.5) {
                    out.add_term(f, (i, t - i), f.from_vector(rng.random_range(1..q)));
                }
            }
        }
        if out.total_degree() < d || out.is_zero() {
            let i = rng.random_range(0..=d);
            out.add_term(f, (i, d - i), f.from_vector(rng.random_range(1..q)));
            if out.total_degree() < d || out.is_zero() {
                // The added term cancelled an existing one.
                out.add_term(f, (i, d - i), f.one());
            }
        }
        out
    }
}

/// `coef * mono` with the coefficient elided when it is 1.
pub(crate) fn format_term(f: &FieldTable, a: FieldElement, mono: &str) -> String {
    let c = match f.prime_subfield_value(a) {
        Some(v) => v.to_string(),
        None => f.format(a),
    };
    match (mono.is_empty(), c.as_str()) {
        (true, _) => c,
        (false, "1") => mono.to_string(),
        (false, _) => format!("{c}*{mono}"),
    }
}

/// The value of `f` at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Value(FieldElement),
    Pole,
}

/// `f(a, y)`, or `Degenerate` when the specialized denominator vanishes
/// identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    Function(UnivariateRationalFunction),
    Degenerate,
}

/// Evidence that `g = lambda * h^s` with `s | q - 1`, `s > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalWitness {
    pub lambda: FieldElement,
    pub h: UnivariateRationalFunction,
    pub s: u64,
}

/// `f1 / f2` as entered; no cancellation is performed on the bivariate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateRationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl BivariateRationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(f: &FieldTable, num: BiPoly) -> Self {
        Self {
            num,
            den: BiPoly::one(f),
        }
    }

    /// `1 - x^2 - y^2`.
    pub fn sphere(f: &FieldTable) -> Self {
        let one = BiPoly::one(f);
        let x2 = BiPoly::x(f).pow(f, 2);
        let y2 = BiPoly::y(f).pow(f, 2);
        Self::polynomial(f, one.sub(f, &x2).sub(f, &y2))
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    /// Total degree of the numerator plus that of the denominator.
    pub fn degree_sum(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    pub fn specialize_x(&self, f: &FieldTable, a: FieldElement) -> Specialization {
        let num = self.num.specialize_x(f, a);
        let den = self.den.specialize_x(f, a);
        match UnivariateRationalFunction::new(f, num, den) {
            Some(g) => Specialization::Function(g),
            None => Specialization::Degenerate,
        }
    }

    /// Evaluates through the reduced specialization at `a`, so removable
    /// singularities in `y` take their limiting value.
    pub fn evaluate(&self, f: &FieldTable, a: FieldElement, b: FieldElement) -> Evaluation {
        match self.specialize_x(f, a) {
            Specialization::Degenerate => Evaluation::Pole,
            Specialization::Function(g) => match g.eval(f, b) {
                Some(v) => Evaluation::Value(v),
                None => Evaluation::Pole,
            },
        }
    }

    /// Roots in F_q of the reduced denominator of `f(a, y)`, ascending by
    /// vector encoding.
    pub fn pole_set(&self, f: &FieldTable, a: FieldElement) -> Result<Vec<FieldElement>, RationalError> {
        match self.specialize_x(f, a) {
            Specialization::Degenerate => Err(RationalError::Degenerate),
            Specialization::Function(g) => Ok(pole_set_of(f, &g)),
        }
    }

    pub fn format(&self, f: &FieldTable) -> String {
        if self.den.is_one(f) {
            self.num.format(f)
        } else {
            format!("({})/({})", self.num.format(f), self.den.format(f))
        }
    }

    /// A random function with total degree sum exactly `d`. The
    /// denominator degree is uniform in `0..=d`; a degree-0 denominator is 1.
    pub fn random<R: Rng + ?Sized>(f: &FieldTable, rng: &mut R, d: u32) -> Self {
        let dd = rng.random_range(0..=d);
        let num = BiPoly::random_of_degree(f, rng, d - dd);
        let den = if dd == 0 {
            BiPoly::one(f)
        } else {
            BiPoly::random_of_degree(f, rng, dd)
        };
        Self { num, den }
    }
}

pub(crate) fn pole_set_of(f: &FieldTable, g: &UnivariateRationalFunction) -> Vec<FieldElement> {
    if g.denominator().is_constant() {
        return Vec::new();
    }
    f.elements().filter(|&b| g.denominator().eval(f, b).is_zero()).collect()
}

/// Whether `g = lambda * h^s` for some `lambda != 0`, `h`, and `s | q - 1`
/// with `s > 1`.
pub fn is_exceptional(f: &FieldTable, g: &UnivariateRationalFunction) -> Result<bool, RationalError> {
    let m = multiplicity_gcd(f, g)?;
    Ok(if m == 0 {
        f.q() > 2
    } else {
        arith::gcd(m, f.group_order()) > 1
    })
}

/// A witness `(lambda, h, s)` when `g` is exceptional.
pub fn exceptional_witness(
    f: &FieldTable,
    g: &UnivariateRationalFunction,
) -> Result<Option<ExceptionalWitness>, RationalError> {
    if !is_exceptional(f, g)? {
        return Ok(None);
    }
    let m = factor_rational(f, g, DEFAULT_FACTOR_SEED)?;
    let all = m.all_factors(f);
    let s = if all.is_empty() {
        f.group_order()
    } else {
        let mg = all.iter().fold(0, |acc, (_, e)| arith::gcd(acc, e.unsigned_abs()));
        arith::gcd(mg, f.group_order())
    };
    let mut num = Poly::one(f);
    let mut den = Poly::one(f);
    for (p, e) in &all {
        let k = (e.unsigned_abs() / s) as u32;
        if *e > 0 {
            num = num.mul(f, &p.pow(f, k));
        } else {
            den = den.mul(f, &p.pow(f, k));
        }
    }
    let h = UnivariateRationalFunction::new(f, num, den).expect("nonzero denominator");
    Ok(Some(ExceptionalWitness { lambda: m.unit, h, s }))
}

/// Exceptional at every primitive `a`. A degenerate or identically zero
/// specialization at some primitive `a` makes the answer false.
pub fn is_primarily_exceptional(f: &FieldTable, func: &BivariateRationalFunction) -> bool {
    f.primitive_elements().all(|a| match func.specialize_x(f, a) {
        Specialization::Degenerate => false,
        Specialization::Function(g) => !g.is_zero() && is_exceptional(f, &g).unwrap_or(false),
    })
}

/// Whether `g = lambda * y^t * h^s` for some `s | q - 1` with `s > 1`, or
/// `g = lambda * y^t`. The power of `y` is ignored when taking the
/// multiplicity gcd. Such specializations make the character sums over `y`
/// as large as the main term, so the sufficient condition needs them excluded.
pub fn is_exceptional_up_to_y_power(f: &FieldTable, g: &UnivariateRationalFunction) -> Result<bool, RationalError> {
    if g.is_zero() {
        return Err(RationalError::ZeroNumerator);
    }
    let strip = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().copied().skip_while(|a| a.is_zero()).collect());
    let core = UnivariateRationalFunction::new(f, strip(g.numerator()), strip(g.denominator())).expect("nonzero");
    let m = multiplicity_gcd(f, &core)?;
    Ok(m == 0 || arith::gcd(m, f.group_order()) > 1)
}

/// Degree sum `d` and, at every primitive `alpha`, a nondegenerate nonzero
/// specialization that is not exceptional up to a power of `y`. A subset of
/// [`in_delta`].
pub fn in_delta_strict(f: &FieldTable, func: &BivariateRationalFunction, d: u32) -> bool {
    func.degree_sum() == d && !has_y_power_exceptional_specialization(f, func)
}

/// Some primitive `alpha` gives a degenerate or zero specialization, or one
/// that is exceptional up to a power of `y`.
pub fn has_y_power_exceptional_specialization(f: &FieldTable, func: &BivariateRationalFunction) -> bool {
    f.primitive_elements().any(|a| match func.specialize_x(f, a) {
        Specialization::Degenerate => true,
        Specialization::Function(g) => g.is_zero() || is_exceptional_up_to_y_power(f, &g).unwrap_or(true),
    })
}

/// Degree sum `d` and not primarily exceptional.
pub fn in_delta(f: &FieldTable, func: &BivariateRationalFunction, d: u32) -> bool {
    func.degree_sum() == d && !is_primarily_exceptional(f, func)
}

/// `prod_{alpha primitive} (x - alpha) * g + c * h^d`, whose specialization
/// at every primitive `alpha` is `c * h(alpha, y)^d`.
pub fn make_primarily_exceptional_example(
    f: &FieldTable,
    g: &BiPoly,
    h: &BivariateRationalFunction,
    c: FieldElement,
    d: u64,
) -> Result<BivariateRationalFunction, RationalError> {
    if d <= 1 || f.group_order() % d != 0 {
        return Err(RationalError::InvalidPower { d, q: f.q() });
    }
    if c.is_zero() {
        return Err(RationalError::ZeroConstant);
    }
    let prim = f
        .primitive_elements()
        .fold(Poly::one(f), |acc, a| acc.mul(f, &Poly::linear(f, a)));
    let hd = h.den.pow(f, d as u32);
    let num = BiPoly::from_x_poly(&prim)
        .mul(f, g)
        .mul(f, &hd)
        .add(f, &h.num.pow(f, d as u32).scale(f, c));
    BivariateRationalFunction::new(num, hd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_functions::parse;

    fn f7() -> FieldTable {
        FieldTable::for_order(7).unwrap()
    }

    fn uni(f: &FieldTable, c: &[i64]) -> UnivariateRationalFunction {
        UnivariateRationalFunction::polynomial(f, Poly::from_ints(f, c))
    }

    #[test]
    fn evaluation_examples() {
        let f = f7();
        let s = BivariateRationalFunction::sphere(&f);
        let three = f.from_int(3);
        assert_eq!(s.evaluate(&f, three, three), Evaluation::Value(f.from_int(4)));
        let g = parse(&f, "x*y/(x+y)").unwrap();
        assert_eq!(g.evaluate(&f, f.one(), f.from_int(-1)), Evaluation::Pole);
        let one = parse(&f, "1").unwrap();
        assert_eq!(one.evaluate(&f, three, f.zero()), Evaluation::Value(f.one()));
    }

    #[test]
    fn specialization_examples() {
        let f = f7();
        let s = BivariateRationalFunction::sphere(&f);
        assert_eq!(
            s.specialize_x(&f, f.from_int(3)),
            Specialization::Function(uni(&f, &[6, 0, 6]))
        );
        let g = parse(&f, "y/(x-3)").unwrap();
        assert_eq!(g.specialize_x(&f, f.from_int(3)), Specialization::Degenerate);
        let x = parse(&f, "x").unwrap();
        assert_eq!(
            x.specialize_x(&f, f.from_int(5)),
            Specialization::Function(uni(&f, &[5]))
        );
    }

    #[test]
    fn pole_set_examples() {
        let f = f7();
        let s = BivariateRationalFunction::sphere(&f);
        assert!(s.pole_set(&f, f.from_int(2)).unwrap().is_empty());
        let g = parse(&f, "1/(y^2-2)").unwrap();
        assert_eq!(g.pole_set(&f, f.one()).unwrap(), vec![f.from_int(3), f.from_int(4)]);
        let g = parse(&f, "1/(y^2+1)").unwrap();
        assert!(g.pole_set(&f, f.one()).unwrap().is_empty());
        let g = parse(&f, "y/(x-3)").unwrap();
        assert!(matches!(g.pole_set(&f, f.from_int(3)), Err(RationalError::Degenerate)));
    }

    #[test]
    fn exceptional_examples() {
        let f = f7();
        assert!(is_exceptional(&f, &uni(&f, &[0, 0, 5])).unwrap());
        assert!(!is_exceptional(&f, &uni(&f, &[6, 0, 6])).unwrap());
        assert!(is_exceptional(&f, &uni(&f, &[0, 0, 0, 1])).unwrap());
        assert!(!is_exceptional(&f, &uni(&f, &[0, 1])).unwrap());
        assert!(is_exceptional(&f, &uni(&f, &[5])).unwrap());
        let f2 = FieldTable::for_order(2).unwrap();
        assert!(!is_exceptional(&f2, &uni(&f2, &[1])).unwrap());
        assert!(matches!(
            is_exceptional(&f, &uni(&f, &[])),
            Err(RationalError::ZeroNumerator)
        ));
    }

    #[test]
    fn witness_reconstructs() {
        let f = f7();
        let g = uni(&f, &[1, 0, 1]).numerator().pow(&f, 3).scale(&f, f.from_int(4));
        let g = UnivariateRationalFunction::polynomial(&f, g);
        let w = exceptional_witness(&f, &g).unwrap().unwrap();
        assert_eq!(w.s, 3);
        let back = w.h.numerator().pow(&f, w.s as u32).scale(&f, w.lambda);
        assert_eq!(&back, g.numerator());
    }

    #[test]
    fn primarily_exceptional_examples() {
        let f = f7();
        let xy2 = parse(&f, "(x*y)^2").unwrap();
        assert!(is_primarily_exceptional(&f, &xy2));
        let s = BivariateRationalFunction::sphere(&f);
        assert!(!is_primarily_exceptional(&f, &s));
        assert!(is_primarily_exceptional(&f, &parse(&f, "x").unwrap()));
        assert!(in_delta(&f, &s, 2));
        assert!(!in_delta(&f, &s, 3));
        assert!(!in_delta(&f, &xy2, 4));
    }

    #[test]
    fn exceptional_up_to_y_power() {
        let f = f7();
        // 3y: multiplicity 1 but a pure power of y.
        assert!(!is_exceptional(&f, &uni(&f, &[0, 3])).unwrap());
        assert!(is_exceptional_up_to_y_power(&f, &uni(&f, &[0, 3])).unwrap());
        // y (y^2 + 1)^2
        let g = uni(&f, &[1, 0, 1]).numerator().pow(&f, 2).mul(&f, &Poly::x(&f));
        let g = UnivariateRationalFunction::polynomial(&f, g);
        assert!(!is_exceptional(&f, &g).unwrap());
        assert!(is_exceptional_up_to_y_power(&f, &g).unwrap());
        assert!(!is_exceptional_up_to_y_power(&f, &uni(&f, &[6, 0, 6])).unwrap());
        let c_over_y = parse(&f, "3/y").unwrap();
        assert!(in_delta(&f, &c_over_y, 1));
        assert!(!in_delta_strict(&f, &c_over_y, 1));
        assert!(in_delta_strict(&f, &BivariateRationalFunction::sphere(&f), 2));
    }

    #[test]
    fn exceptional_family() {
        let f = f7();
        let h = parse(&f, "y").unwrap();
        let e = make_primarily_exceptional_example(&f, &BiPoly::one(&f), &h, f.one(), 2).unwrap();
        assert_eq!(e, parse(&f, "(x-3)*(x-5) + y^2").unwrap());
        for a in [3, 5] {
            assert_eq!(
                e.specialize_x(&f, f.from_int(a)),
                Specialization::Function(uni(&f, &[0, 0, 1]))
            );
        }
        assert!(is_primarily_exceptional(&f, &e));
        let e0 = make_primarily_exceptional_example(&f, &BiPoly::zero(), &h, f.one(), 2).unwrap();
        assert_eq!(e0, parse(&f, "y^2").unwrap());
        assert!(make_primarily_exceptional_example(&f, &BiPoly::one(&f), &h, f.one(), 4).is_err());
    }

    #[test]
    fn random_functions_have_exact_degree_sum() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for q in [2u64, 3, 4, 7, 9] {
            let f = FieldTable::for_order(q).unwrap();
            for d in 0..6 {
                for _ in 0..20 {
                    assert_eq!(BivariateRationalFunction::random(&f, &mut rng, d).degree_sum(), d);
                }
            }
        }
    }
}
