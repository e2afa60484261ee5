//! Multiplicative characters of F_q, the characteristic functions of e-free
//! and (R, r)-free elements, and Weil-type character sums.

use num::complex::Complex64;
use num::ToPrimitive;

use crate::arith::{divisors, euler_phi, gcd, mobius, reduced_part, theta};
use crate::finite_field::{FieldElement, FieldError, FieldTable};
use crate::rational_functions::{factor_rational, UnivariateRationalFunction};

pub type ComplexValue = Complex64;

/// Default tolerance for indicator values.
pub const INDICATOR_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the Weil bound needs a nontrivial character")]
    TrivialCharacter,
    #[error(transparent)]
    Rational(#[from] crate::rational_functions::RationalError),
}

/// `g^i -> exp(2 pi i m i / (q - 1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub twist: u64,
    pub order: u64,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.twist == 0
    }
}

/// The dual group of F_q*, with a table of (q-1)-th roots of unity.
pub struct DualGroup<'a> {
    field: &'a FieldTable,
    roots: Vec<Complex64>,
}

impl<'a> DualGroup<'a> {
    pub fn new(field: &'a FieldTable) -> Self {
        let n = field.group_order();
        let roots = (0..n)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect();
        DualGroup { field, roots }
    }

    pub fn field(&self) -> &FieldTable {
        self.field
    }

    pub fn character(&self, twist: u64) -> Character {
        let n = self.field.group_order();
        let twist = twist % n;
        Character {
            twist,
            order: n / gcd(twist, n),
        }
    }

    pub fn trivial(&self) -> Character {
        self.character(0)
    }

    /// The characters of exact order `d`, by ascending twist.
    pub fn characters_of_order(&self, d: u64) -> Result<Vec<Character>, FieldError> {
        let n = self.field.group_order();
        if d == 0 || n % d != 0 {
            return Err(FieldError::NotDivisor { divisor: d, n });
        }
        let step = n / d;
        Ok((0..d)
            .filter(|&u| gcd(u, d) == 1)
            .map(|u| Character {
                twist: step * u,
                order: d,
            })
            .collect())
    }

    /// All q - 1 characters by ascending twist.
    pub fn all(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.field.group_order()).map(|m| self.character(m))
    }

    /// `chi(a)`, with `chi(0) = 1` for the trivial character and 0 otherwise.
    pub fn evaluate(&self, chi: Character, a: FieldElement) -> ComplexValue {
        match a.log() {
            None if chi.is_trivial() => Complex64::new(1.0, 0.0),
            None => Complex64::new(0.0, 0.0),
            Some(l) => {
                let n = self.field.group_order() as u128;
                self.roots[((chi.twist as u128 * l as u128) % n) as usize]
            }
        }
    }

    /// `sum over characters of order d of chi(a)`.
    fn order_sum(&self, d: u64, a: FieldElement) -> Result<ComplexValue, FieldError> {
        Ok(self
            .characters_of_order(d)?
            .into_iter()
            .map(|c| self.evaluate(c, a))
            .sum())
    }

    /// `theta(e) sum_{s | e} mu(s)/phi(s) sum_{chi_s} chi_s(a)`: 1 on e-free
    /// elements, 0 elsewhere.
    pub fn rho_indicator(&self, e: u64, a: FieldElement) -> Result<ComplexValue, FieldError> {
        let n = self.field.group_order();
        if e == 0 || n % e != 0 {
            return Err(FieldError::NotDivisor { divisor: e, n });
        }
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for s in divisors(e) {
            let mu = mobius(s);
            if mu != 0 {
                acc += self.order_sum(s, a)? * (mu as f64 / euler_phi(s) as f64);
            }
        }
        Ok(acc * theta(e).to_f64().unwrap_or(0.0))
    }

    /// `theta(R)/r sum_{d | R r} mu(d_(r))/phi(d_(r)) sum_{chi_d} chi_d(a)`:
    /// 1 on (R, r)-free elements, 0 elsewhere.
    pub fn freeness_indicator(&self, big_r: u64, r: u64, a: FieldElement) -> Result<ComplexValue, FieldError> {
        let n = self.field.group_order();
        if r == 0 || n % r != 0 {
            return Err(FieldError::NotDivisor { divisor: r, n });
        }
        if big_r == 0 || (n / r) % big_r != 0 {
            return Err(FieldError::NotDivisor {
                divisor: big_r,
                n: n / r,
            });
        }
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for d in divisors(big_r * r) {
            let dr = reduced_part(d, r);
            let mu = mobius(dr);
            if mu != 0 {
                acc += self.order_sum(d, a)? * (mu as f64 / euler_phi(dr) as f64);
            }
        }
        Ok(acc * (theta(big_r).to_f64().unwrap_or(0.0) / r as f64))
    }

    /// `sum over non-poles alpha of chi(F(alpha))`, in ascending vector order.
    pub fn weil_sum(&self, func: &UnivariateRationalFunction, chi: Character) -> ComplexValue {
        let f = self.field;
        f.elements()
            .filter_map(|a| func.eval(f, a))
            .map(|v| self.evaluate(chi, v))
            .sum()
    }

    /// Compares `|weil_sum|` with `(sum deg F_j - 1) sqrt(q)`, the sum over
    /// distinct irreducible factors of numerator and denominator. The
    /// hypothesis is that `F` is not `c G^d` for `d` the order of `chi`,
    /// i.e. some multiplicity is not divisible by `d`.
    pub fn check_weil_bound(
        &self,
        func: &UnivariateRationalFunction,
        chi: Character,
        seed: u64,
    ) -> Result<WeilCheck, CharacterError> {
        if chi.is_trivial() {
            return Err(CharacterError::TrivialCharacter);
        }
        let f = self.field;
        let m = factor_rational(f, func, seed)?;
        let all = m.all_factors(f);
        let deg_sum: usize = all.iter().map(|(p, _)| p.degree().unwrap_or(0)).sum();
        let hypothesis_ok = all.iter().any(|(_, e)| e.unsigned_abs() % chi.order != 0);
        let sum_magnitude = self.weil_sum(func, chi).norm();
        let bound = (deg_sum as f64 - 1.0) * (f.q() as f64).sqrt();
        let holds = sum_magnitude <= bound + 1e-9 * f.q() as f64;
        Ok(WeilCheck {
            sum_magnitude,
            bound,
            holds,
            hypothesis_ok,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct WeilCheck {
    pub sum_magnitude: f64,
    pub bound: f64,
    pub holds: bool,
    pub hypothesis_ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_functions::Poly;

    fn close(z: ComplexValue, x: f64) -> bool {
        (z - Complex64::new(x, 0.0)).norm() < INDICATOR_TOLERANCE
    }

    #[test]
    fn characters_of_given_order() {
        let f = FieldTable::for_order(7).unwrap();
        let g = DualGroup::new(&f);
        assert_eq!(g.characters_of_order(1).unwrap(), vec![g.trivial()]);
        assert_eq!(
            g.characters_of_order(2).unwrap(),
            vec![Character { twist: 3, order: 2 }]
        );
        assert_eq!(g.characters_of_order(6).unwrap().len(), 2);
        assert!(g.characters_of_order(4).is_err());
    }

    #[test]
    fn evaluation_and_extension_rule() {
        let f = FieldTable::for_order(7).unwrap();
        let g = DualGroup::new(&f);
        let quad = g.characters_of_order(2).unwrap()[0];
        assert!(close(g.evaluate(g.trivial(), f.zero()), 1.0));
        assert!(close(g.evaluate(quad, f.zero()), 0.0));
        assert!(close(g.evaluate(quad, f.from_int(4)), 1.0));
        assert!(close(g.evaluate(quad, f.from_int(3)), -1.0));
    }

    #[test]
    fn indicator_examples() {
        let f = FieldTable::for_order(7).unwrap();
        let g = DualGroup::new(&f);
        assert!(close(g.rho_indicator(1, f.from_int(5)).unwrap(), 1.0));
        assert!(close(g.rho_indicator(6, f.from_int(3)).unwrap(), 1.0));
        assert!(close(g.rho_indicator(2, f.from_int(2)).unwrap(), 0.0));
        assert!(close(g.freeness_indicator(1, 1, f.from_int(2)).unwrap(), 1.0));
        assert!(close(g.freeness_indicator(3, 2, f.from_int(4)).unwrap(), 1.0));
        assert!(close(g.freeness_indicator(3, 2, f.from_int(3)).unwrap(), 0.0));
        assert!(g.rho_indicator(4, f.one()).is_err());
        assert!(g.freeness_indicator(2, 2, f.one()).is_err());
    }

    #[test]
    fn weil_sum_examples() {
        let f = FieldTable::for_order(7).unwrap();
        let g = DualGroup::new(&f);
        let quad = g.characters_of_order(2).unwrap()[0];
        let x = UnivariateRationalFunction::polynomial(&f, Poly::x(&f));
        assert!(close(g.weil_sum(&x, quad), 0.0));
        assert!(close(g.weil_sum(&x, g.trivial()), 7.0));

        // x^2 + 1 over F_7: values 1,2,5,3,3,5,2; quadratic character by hand.
        let sq = UnivariateRationalFunction::polynomial(&f, Poly::from_ints(&f, &[1, 0, 1]));
        let legendre = |v: i64| if [1, 2, 4].contains(&v) { 1.0 } else { -1.0 };
        let expected: f64 = (0..7).map(|a| legendre((a * a + 1) % 7)).sum();
        assert!(close(g.weil_sum(&sq, quad), expected));

        let c = g.check_weil_bound(&x, quad, 0).unwrap();
        assert!(c.holds && c.hypothesis_ok && c.bound == 0.0);
        let c = g.check_weil_bound(&sq, quad, 0).unwrap();
        assert!(c.holds && c.hypothesis_ok);
        assert!((c.bound - 7f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            g.check_weil_bound(&sq, g.trivial(), 0),
            Err(CharacterError::TrivialCharacter)
        ));
    }

    #[test]
    fn weil_bound_order_five_over_f31() {
        let f = FieldTable::for_order(31).unwrap();
        let g = DualGroup::new(&f);
        let func = UnivariateRationalFunction::polynomial(&f, Poly::from_ints(&f, &[0, 1, 0, 1]));
        for chi in g.characters_of_order(5).unwrap() {
            let c = g.check_weil_bound(&func, chi, 0).unwrap();
            assert!(c.hypothesis_ok && c.holds, "{c:?}");
        }
    }
}
