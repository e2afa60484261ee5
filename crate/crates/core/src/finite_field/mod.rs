//! Concrete finite fields F_q, q = p^k, in discrete-log representation.
//!
//! Elements are stored as their logarithm to a fixed generator `g`, so
//! multiplication, powers, orders and freeness tests are integer arithmetic
//! modulo q-1. Addition goes through a Zech-logarithm table. The additive
//! (vector) encoding `Σ c_i p^i` of an element is available through the
//! log/exp tables.

pub mod cache;

use std::fmt;

use thiserror::Error;

use crate::arith::{factorize, gcd, is_prime};

/// Default ceiling on the field order; tables cost O(q) memory.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the configured cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("modulus must be monic of degree {expected} with coefficients below p")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("operation is undefined for the zero element")]
    ZeroElement,
    #[error("{divisor} does not divide {n}")]
    NotDivisor { divisor: u64, n: u64 },
    #[error("field cache integrity check failed: {0}")]
    CacheIntegrity(String),
    #[error("field cache I/O error: {0}")]
    CacheIo(String),
}

/// An element of a [`FieldTable`]: the discrete log to the table's generator,
/// or the distinguished zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(NO_LOG);

    pub fn is_zero(self) -> bool {
        self.0 == NO_LOG
    }

    /// The discrete log, `None` for zero.
    pub fn log(self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.0 as u64)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "g^{l}"),
        }
    }
}

/// Construction options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldOptions {
    pub cap: u64,
    /// Monic modulus, low coefficient first, length k+1. `None` selects the
    /// lexicographically smallest irreducible.
    pub modulus: Option<Vec<u32>>,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            cap: DEFAULT_FIELD_CAP,
            modulus: None,
        }
    }
}

/// F_q with full discrete-log, antilog and Zech tables. Immutable once built.
#[derive(Clone)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator_vector())
            .finish()
    }
}

// Dense polynomial arithmetic over F_p used only while constructing a field.
// Coefficients low to high.
mod prime_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        trim(&mut a);
        let dm = m.len() - 1;
        let inv_lead = inv(m[dm], p);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] * inv_lead % p;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = top - dm + i;
                    a[idx] = (a[idx] + p - c * mi % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        super::arith_pow(a % p, p - 2, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= k/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=k / 2 {
            h = pow_mod(&h, p, f, p);
            let mut diff = h.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(&diff, f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn arith_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn decode(v: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    let mut v = v;
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    prime_poly::trim(&mut out);
    out
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &x| acc * p + x)
}

/// Monic irreducible polynomials of degree `k` over F_p in lexicographic
/// order of `(c_0, c_1, ..., c_{k-1})`. Each item has length k+1.
pub fn irreducible_monics(p: u64, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = p.pow(k);
    (0..total).filter_map(move |idx| {
        // c_0 is the most significant digit of idx.
        let mut c = vec![0u64; k as usize + 1];
        let mut rest = idx;
        for i in (0..k as usize).rev() {
            c[i] = rest % p;
            rest /= p;
        }
        c[k as usize] = 1;
        prime_poly::is_irreducible(&c, p).then(|| c.iter().map(|&x| x as u32).collect())
    })
}

impl FieldTable {
    /// F_{p^k} with the default modulus and cap.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        Self::with_options(p, k, &FieldOptions::default())
    }

    /// The field of order `q` (which must be a prime power).
    pub fn for_order(q: u64) -> Result<Self, FieldError> {
        Self::for_order_with(q, &FieldOptions::default())
    }

    pub fn for_order_with(q: u64, options: &FieldOptions) -> Result<Self, FieldError> {
        let (p, k) = crate::arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::with_options(p, k, options)
    }

    pub fn with_options(p: u64, k: u32, options: &FieldOptions) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= options.cap && q <= u32::MAX as u64)
            .ok_or(FieldError::CapExceeded {
                q: p.saturating_pow(k),
                cap: options.cap,
            })?;
        let modulus = match &options.modulus {
            Some(m) => {
                validate_modulus(m, p, k)?;
                m.clone()
            }
            None => irreducible_monics(p, k)
                .next()
                .expect("irreducibles exist in every degree"),
        };
        let m64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();

        // Smallest vector encoding that is primitive.
        let order = q - 1;
        let primes: Vec<u64> = factorize(order.max(1)).primes().collect();
        let generator = (1..q)
            .find(|&v| {
                let g = decode(v, p, k);
                primes
                    .iter()
                    .all(|&s| prime_poly::pow_mod(&g, order / s, &m64, p) != vec![1])
            })
            .expect("F_q* is cyclic");

        let gpoly = decode(generator, p, k);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur: Vec<u64> = vec![1];
        for i in 0..order {
            let v = encode(&cur, p);
            exp.push(v as u32);
            log[v as usize] = i as u32;
            cur = prime_poly::mul_mod(&cur, &gpoly, &m64, p);
        }
        Ok(Self::finish(p as u32, k, q as u32, modulus, exp, log))
    }

    fn finish(p: u32, k: u32, q: u32, modulus: Vec<u32>, exp: Vec<u32>, log: Vec<u32>) -> Self {
        let zech = exp
            .iter()
            .map(|&v| {
                // Adding one touches only the constant coordinate.
                let w = if v % p == p - 1 { v - (p - 1) } else { v + 1 };
                log[w as usize]
            })
            .collect();
        FieldTable {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            zech,
        }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// q - 1, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.q as u64 - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.from_log(1)
    }

    pub fn generator_vector(&self) -> u32 {
        self.to_vector(self.generator())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(0)
    }

    /// g^i, with i reduced modulo q-1.
    pub fn from_log(&self, i: u64) -> FieldElement {
        FieldElement((i % self.group_order()) as u32)
    }

    /// The element with additive encoding `v = Σ c_i p^i`. Panics if `v >= q`.
    pub fn from_vector(&self, v: u32) -> FieldElement {
        FieldElement(self.log[v as usize])
    }

    pub fn to_vector(&self, a: FieldElement) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.exp[l as usize],
        }
    }

    /// Coordinates over F_p, constant coefficient first, length k.
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut v = self.to_vector(a);
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_vector(n.rem_euclid(self.p as i64) as u32)
    }

    /// The integer value when `a` lies in the prime subfield.
    pub fn prime_subfield_value(&self, a: FieldElement) -> Option<u32> {
        let v = self.to_vector(a);
        (v < self.p).then_some(v)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.q - 1;
        let d = (b.0 + n - a.0) % n;
        let z = self.zech[d as usize];
        if z == NO_LOG {
            FieldElement::ZERO
        } else {
            FieldElement(((a.0 as u64 + z as u64) % n as u64) as u32)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let n = self.q - 1;
        FieldElement(((a.0 as u64 + (n / 2) as u64) % n as u64) as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        FieldElement(((a.0 as u64 + b.0 as u64) % n) as u32)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let l = a.log()?;
        let n = self.group_order();
        Some(FieldElement(((n - l) % n) as u32))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        match a.log() {
            None => FieldElement::ZERO,
            Some(l) => {
                let n = self.group_order() as u128;
                FieldElement(((l as u128 * e as u128) % n) as u32)
            }
        }
    }

    /// `a^e` for a signed exponent; `None` for a negative power of zero.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Option<FieldElement> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(self.pow(a, e.unsigned_abs()))
        }
    }

    /// The p-th root (inverse Frobenius).
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.p as u64).pow(self.k - 1))
    }

    /// All q elements in ascending vector encoding.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.from_vector(v))
    }

    /// Nonzero elements by ascending log.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q - 1).map(FieldElement)
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        let l = a.log().ok_or(FieldError::ZeroElement)?;
        let n = self.group_order();
        Ok(n / gcd(l, n))
    }

    pub fn is_primitive(&self, a: FieldElement) -> bool {
        match a.log() {
            None => false,
            Some(l) => gcd(l, self.group_order()) == 1,
        }
    }

    fn require_divides(&self, d: u64, n: u64) -> Result<(), FieldError> {
        if d == 0 || n % d != 0 {
            Err(FieldError::NotDivisor { divisor: d, n })
        } else {
            Ok(())
        }
    }

    /// Order exactly (q-1)/r.
    pub fn is_r_primitive(&self, a: FieldElement, r: u64) -> Result<bool, FieldError> {
        let n = self.group_order();
        self.require_divides(r, n)?;
        Ok(match a.log() {
            None => false,
            Some(l) => n / gcd(l, n) == n / r,
        })
    }

    /// `a` is not a d-th power for any divisor d > 1 of e.
    pub fn is_e_free(&self, a: FieldElement, e: u64) -> Result<bool, FieldError> {
        let n = self.group_order();
        self.require_divides(e, n)?;
        let l = a.log().ok_or(FieldError::ZeroElement)?;
        // a = g^l is a d-th power (d | q-1) iff d | l; it suffices to test primes of e.
        Ok(gcd(l, e) == 1)
    }

    /// `a` lies in the index-r subgroup C_r and is R-free there.
    pub fn is_rr_free(&self, a: FieldElement, big_r: u64, r: u64) -> Result<bool, FieldError> {
        let n = self.group_order();
        self.require_divides(r, n)?;
        self.require_divides(big_r, n / r)?;
        let l = a.log().ok_or(FieldError::ZeroElement)?;
        if l % r != 0 {
            return Ok(false);
        }
        Ok(gcd(l / r, big_r) == 1)
    }

    /// Primitive elements in ascending log order; exactly φ(q-1) of them.
    pub fn primitive_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.group_order();
        self.nonzero().filter(move |a| gcd(a.0 as u64, n) == 1)
    }

    /// All z with z^r = a, ascending log.
    pub fn rth_roots(&self, a: FieldElement, r: u64) -> Result<Vec<FieldElement>, FieldError> {
        let n = self.group_order();
        self.require_divides(r, n)?;
        let Some(l) = a.log() else {
            return Ok(vec![FieldElement::ZERO]);
        };
        if l % r != 0 {
            return Ok(Vec::new());
        }
        let step = n / r;
        let base = l / r;
        // z = g^j with r*j ≡ l (mod n): j ≡ l/r (mod n/r).
        let mut roots: Vec<FieldElement> = (0..r).map(|t| FieldElement(((base + t * step) % n) as u32)).collect();
        roots.sort();
        Ok(roots)
    }

    /// Human-readable element: an integer for prime-subfield elements,
    /// `g^i` otherwise.
    pub fn format(&self, a: FieldElement) -> String {
        match (self.prime_subfield_value(a), a.log()) {
            (Some(v), _) => v.to_string(),
            (None, Some(l)) => format!("g^{l}"),
            (None, None) => "0".into(),
        }
    }

    pub(crate) fn log_table(&self) -> &[u32] {
        &self.log
    }

    /// Rebuilds a table from a stored log table, checking that it is a
    /// bijection and consistent with multiplication by the generator.
    pub(crate) fn from_log_table(p: u64, k: u32, modulus: Vec<u32>, log: Vec<u32>) -> Result<Self, FieldError> {
        let integrity = |m: &str| FieldError::CacheIntegrity(m.to_string());
        if !is_prime(p) {
            return Err(integrity("stored characteristic is not prime"));
        }
        validate_modulus(&modulus, p, k).map_err(|e| integrity(&e.to_string()))?;
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| integrity("order overflow"))?;
        if log.len() as u64 != q {
            return Err(integrity("log table has the wrong length"));
        }
        if log[0] != NO_LOG {
            return Err(integrity("zero must have no logarithm"));
        }
        let order = q - 1;
        let mut exp = vec![NO_LOG; order as usize];
        for (v, &l) in log.iter().enumerate().skip(1) {
            if l as u64 >= order || exp[l as usize] != NO_LOG {
                return Err(integrity("log table is not a bijection onto 0..q-2"));
            }
            exp[l as usize] = v as u32;
        }
        if exp[0] != 1 {
            return Err(integrity("log(1) must be 0"));
        }
        let m64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        let g = decode(exp[1 % order as usize] as u64, p, k);
        for i in 0..order as usize {
            let next = prime_poly::mul_mod(&decode(exp[i] as u64, p, k), &g, &m64, p);
            if encode(&next, p) != exp[(i + 1) % order as usize] as u64 {
                return Err(integrity("log table disagrees with polynomial multiplication"));
            }
        }
        Ok(Self::finish(p as u32, k, q as u32, modulus, exp, log))
    }
}

fn validate_modulus(m: &[u32], p: u64, k: u32) -> Result<(), FieldError> {
    if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c as u64 >= p) {
        return Err(FieldError::BadModulus { expected: k });
    }
    let m64: Vec<u64> = m.iter().map(|&c| c as u64).collect();
    if !prime_poly::is_irreducible(&m64, p) {
        return Err(FieldError::ReducibleModulus(p));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldTable {
        FieldTable::new(7, 1).unwrap()
    }

    #[test]
    fn small_prime_field() {
        let t = f7();
        assert_eq!(t.q(), 7);
        assert_eq!(t.generator_vector(), 3);
        assert_eq!(t.modulus(), &[0, 1]);
        let two = FieldTable::new(2, 1).unwrap();
        assert_eq!(two.q(), 2);
        assert!(two.is_primitive(two.one()));
    }

    #[test]
    fn nine_element_field_uses_x2_plus_1() {
        let t = FieldTable::new(3, 2).unwrap();
        assert_eq!(t.q(), 9);
        assert_eq!(t.modulus(), &[1, 0, 1]);
        // x + 1 is the smallest primitive encoding: x itself has order 4.
        assert_eq!(t.generator_vector(), 4);
    }

    #[test]
    fn order_and_primitivity() {
        let t = f7();
        let e = |v| t.from_vector(v);
        assert_eq!(t.multiplicative_order(e(3)).unwrap(), 6);
        assert_eq!(t.multiplicative_order(e(1)).unwrap(), 1);
        assert_eq!(t.multiplicative_order(e(4)).unwrap(), 3);
        assert_eq!(t.multiplicative_order(t.zero()), Err(FieldError::ZeroElement));
        assert!(t.is_primitive(e(3)));
        assert!(!t.is_primitive(t.zero()));
        assert!(t.is_r_primitive(e(4), 2).unwrap());
        assert!(t.is_r_primitive(e(3), 1).unwrap());
        assert!(!t.is_r_primitive(e(1), 2).unwrap());
        assert!(t.is_r_primitive(e(1), 4).is_err());
    }

    #[test]
    fn freeness_predicates() {
        let t = f7();
        let e = |v| t.from_vector(v);
        assert!(t.is_e_free(e(3), 6).unwrap());
        assert!(!t.is_e_free(e(2), 2).unwrap());
        for v in 1..7 {
            assert!(t.is_e_free(e(v), 1).unwrap());
        }
        assert!(t.is_e_free(t.zero(), 2).is_err());
        assert!(t.is_e_free(e(3), 4).is_err());
        assert!(t.is_rr_free(e(4), 3, 2).unwrap());
        assert!(t.is_rr_free(e(3), 6, 1).unwrap());
        assert!(!t.is_rr_free(e(3), 3, 2).unwrap());
        assert!(t.is_rr_free(e(3), 2, 2).is_err());
    }

    #[test]
    fn primitive_enumeration() {
        let t = f7();
        let prims: Vec<u32> = t.primitive_elements().map(|a| t.to_vector(a)).collect();
        assert_eq!(prims, vec![3, 5]);
        let logs: Vec<u64> = t.primitive_elements().map(|a| a.log().unwrap()).collect();
        assert_eq!(logs, vec![1, 5]);
        let two = FieldTable::new(2, 1).unwrap();
        assert_eq!(two.primitive_elements().count(), 1);
        assert_eq!(FieldTable::new(13, 1).unwrap().primitive_elements().count(), 4);
    }

    #[test]
    fn rth_root_examples() {
        let t = f7();
        let e = |v| t.from_vector(v);
        let mut roots: Vec<u32> = t.rth_roots(e(4), 2).unwrap().iter().map(|&z| t.to_vector(z)).collect();
        roots.sort();
        assert_eq!(roots, vec![2, 5]);
        assert_eq!(t.rth_roots(e(1), 1).unwrap(), vec![t.one()]);
        assert!(t.rth_roots(e(3), 2).unwrap().is_empty());
        assert_eq!(t.rth_roots(t.zero(), 2).unwrap(), vec![t.zero()]);
        assert!(t.rth_roots(e(3), 4).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldTable::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(FieldTable::new(2, 23), Err(FieldError::CapExceeded { .. })));
        let opts = FieldOptions {
            cap: 100,
            modulus: None,
        };
        assert!(matches!(
            FieldTable::with_options(11, 2, &opts),
            Err(FieldError::CapExceeded { .. })
        ));
        let opts = FieldOptions {
            modulus: Some(vec![2, 0, 1]),
            ..Default::default()
        };
        // x^2 + 2 = (x+1)(x+2) over F_3.
        assert_eq!(
            FieldTable::with_options(3, 2, &opts).unwrap_err(),
            FieldError::ReducibleModulus(3)
        );
    }

    #[test]
    fn arithmetic_matches_polynomial_arithmetic_in_f9() {
        // Compare Zech addition with coordinate-wise addition.
        let t = FieldTable::new(3, 2).unwrap();
        for a in t.elements() {
            for b in t.elements() {
                let ca = t.coords(a);
                let cb = t.coords(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(t.coords(t.add(a, b)), sum);
            }
        }
    }

    #[test]
    fn irreducible_enumeration_order() {
        let quads: Vec<Vec<u32>> = irreducible_monics(3, 2).collect();
        assert_eq!(quads, vec![vec![1, 0, 1], vec![2, 1, 1], vec![2, 2, 1]]);
    }
}
