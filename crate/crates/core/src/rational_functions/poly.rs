//! Dense univariate polynomials and reduced rational functions over a
//! [`FieldTable`].

use std::cmp::Ordering;

use rand::Rng;

use crate::finite_field::{FieldElement, FieldTable};

/// Coefficients low to high, never with a zero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn one(f: &FieldTable) -> Self {
        Self::constant(f.one())
    }

    /// The indeterminate.
    pub fn x(f: &FieldTable) -> Self {
        Poly {
            c: vec![f.zero(), f.one()],
        }
    }

    /// `a * x^n`.
    pub fn monomial(a: FieldElement, n: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::ZERO; n + 1];
        c[n] = a;
        Poly { c }
    }

    /// `x - a`.
    pub fn linear(f: &FieldTable, a: FieldElement) -> Self {
        Poly {
            c: vec![f.neg(a), f.one()],
        }
    }

    pub fn from_coeffs(mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    /// Coefficients given as integers, reduced into the prime subfield.
    pub fn from_ints(f: &FieldTable, c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&n| f.from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self, f: &FieldTable) -> bool {
        self.c.len() == 1 && self.c[0] == f.one()
    }

    pub fn is_monic(&self, f: &FieldTable) -> bool {
        self.c.last() == Some(&f.one())
    }

    pub fn lead(&self) -> FieldElement {
        self.c.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, f: &FieldTable, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &FieldTable, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldTable) -> Poly {
        Poly {
            c: self.c.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, f: &FieldTable, a: FieldElement) -> Poly {
        if a.is_zero() {
            return Self::zero();
        }
        Poly {
            c: self.c.iter().map(|&b| f.mul(a, b)).collect(),
        }
    }

    pub fn mul(&self, f: &FieldTable, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow(&self, f: &FieldTable, e: u32) -> Poly {
        let mut out = Self::one(f);
        for _ in 0..e {
            out = out.mul(f, self);
        }
        out
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn divrem(&self, f: &FieldTable, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![FieldElement::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = f.mul(r[i], inv);
            if t.is_zero() {
                continue;
            }
            q[i - dd] = t;
            for (j, &b) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(t, b));
            }
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, f: &FieldTable, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, f: &FieldTable, d: &Poly) -> Poly {
        let (q, r) = self.divrem(f, d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Leading coefficient and the monic associate. The zero polynomial maps
    /// to `(0, 0)`.
    pub fn monic(&self, f: &FieldTable) -> (FieldElement, Poly) {
        let l = self.lead();
        match f.inv(l) {
            None => (l, Self::zero()),
            Some(i) => (l, self.scale(f, i)),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(f: &FieldTable, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f).1
    }

    pub fn derivative(&self, f: &FieldTable) -> Poly {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &FieldTable, a: FieldElement) -> FieldElement {
        self.c
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &b| f.add(f.mul(acc, a), b))
    }

    pub fn mul_mod(&self, f: &FieldTable, o: &Poly, m: &Poly) -> Poly {
        self.mul(f, o).rem(f, m)
    }

    pub fn pow_mod(&self, f: &FieldTable, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut out = Self::one(f).rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul_mod(f, &base, m);
            }
            base = base.mul_mod(f, &base, m);
            e >>= 1;
        }
        out
    }

    /// Uniformly random polynomial of degree below `n` (possibly zero).
    pub fn random_below<R: Rng + ?Sized>(f: &FieldTable, rng: &mut R, n: usize) -> Poly {
        Self::from_coeffs(
            (0..n)
                .map(|_| f.from_vector(rng.random_range(0..f.q() as u32)))
                .collect(),
        )
    }

    /// Random polynomial of exact degree `n`.
    pub fn random_of_degree<R: Rng + ?Sized>(f: &FieldTable, rng: &mut R, n: usize) -> Poly {
        let mut c: Vec<FieldElement> = (0..n)
            .map(|_| f.from_vector(rng.random_range(0..f.q() as u32)))
            .collect();
        c.push(f.from_vector(rng.random_range(1..f.q() as u32)));
        Poly { c }
    }

    /// Canonical order: by degree, then by coefficient vectors from the top.
    pub fn canonical_cmp(&self, f: &FieldTable, o: &Poly) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| {
            let a = self.c.iter().rev().map(|&e| f.to_vector(e));
            let b = o.c.iter().rev().map(|&e| f.to_vector(e));
            a.cmp(b)
        })
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn format(&self, f: &FieldTable, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(super::bivariate::format_term(f, a, &mono));
        }
        terms.join(" + ")
    }
}

/// A univariate rational function `num / den` with `den` monic and
/// `gcd(num, den) = 1`. The zero function is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariateRationalFunction {
    num: Poly,
    den: Poly,
}

impl UnivariateRationalFunction {
    /// Reduces `num / den`; `None` if `den` is the zero polynomial.
    pub fn new(f: &FieldTable, num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self { num, den: Poly::one(f) });
        }
        let g = Poly::gcd(f, &num, &den);
        let (num, den) = if g.is_one(f) {
            (num, den)
        } else {
            (num.div_exact(f, &g), den.div_exact(f, &g))
        };
        let (l, den) = den.monic(f);
        let num = num.scale(f, f.inv(l).expect("nonzero"));
        Some(Self { num, den })
    }

    pub fn polynomial(f: &FieldTable, num: Poly) -> Self {
        Self { num, den: Poly::one(f) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `None` at a pole.
    pub fn eval(&self, f: &FieldTable, a: FieldElement) -> Option<FieldElement> {
        f.div(self.num.eval(f, a), self.den.eval(f, a))
    }

    pub fn format(&self, f: &FieldTable, var: &str) -> String {
        if self.den.is_one(f) {
            self.num.format(f, var)
        } else {
            format!("({})/({})", self.num.format(f, var), self.den.format(f, var))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = FieldTable::for_order(7).unwrap();
        let a = Poly::from_ints(&f, &[1, 0, 1]); // x^2 + 1
        let b = Poly::from_ints(&f, &[-1, 1]); // x - 1
        let prod = a.mul(&f, &b);
        let (q, r) = prod.divrem(&f, &b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (_, r) = a.divrem(&f, &b);
        assert_eq!(r, Poly::from_ints(&f, &[2]));
        assert_eq!(Poly::gcd(&f, &prod, &b.mul(&f, &b)), b);
        assert_eq!(a.format(&f, "y"), "y^2 + 1");
        assert_eq!(a.eval(&f, f.from_int(3)), f.from_int(3));
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f = FieldTable::for_order(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 0, 0, 2]);
        assert!(a.derivative(&f).is_zero());
    }

    #[test]
    fn rational_function_is_reduced_with_monic_denominator() {
        let f = FieldTable::for_order(7).unwrap();
        let num = Poly::from_ints(&f, &[0, 2, 2]); // 2y(y+1)
        let den = Poly::from_ints(&f, &[3, 3]); // 3(y+1)
        let g = UnivariateRationalFunction::new(&f, num, den).unwrap();
        assert_eq!(g.numerator(), &Poly::from_ints(&f, &[0, 2 * 5])); // 2/3 = 10/15 = 2*5 mod 7
        assert!(g.denominator().is_one(&f));
        assert!(UnivariateRationalFunction::new(&f, Poly::one(&f), Poly::zero()).is_none());
    }
}
