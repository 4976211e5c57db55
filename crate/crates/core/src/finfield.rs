//! Finite fields GF(p^r) as Z_p[t]/(f) with f the lexicographically smallest
//! monic irreducible of degree r.
//!
//! Elements have a canonical index `c0 + c1*p + ... + c_{r-1}*p^{r-1}`
//! (constant coefficient varies fastest), so 0 has index 0 and 1 has index 1.
//! The ring layer works on these indices; [`FieldElement`] is the checked
//! value type for callers that want coefficient vectors.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest extension degree accepted by [`FieldDescriptor::make`].
pub const MAX_DEGREE: usize = 8;

/// Fields up to this order carry precomputed operation tables.
const TABLE_LIMIT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree {0} outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("field order {p}^{r} does not fit in 64 bits")]
    OrderOverflow { p: u64, r: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not a monic irreducible polynomial over Z_{0}")]
    ReducibleModulus(u64),
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad coefficient vector for GF({q}): {reason}")]
    BadElement { q: u64, reason: String },
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^r` into `(p, r)`.
pub fn factor_prime_power(q: u64) -> Result<(u64, usize), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
        if p.saturating_mul(p) > q {
            p = q;
            break;
        }
    }
    let (mut rest, mut r) = (q, 0usize);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest == 1 {
        Ok((p, r))
    } else {
        Err(FieldError::NotPrimePower(q))
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over Z_p.
/// Both are coefficient vectors, constant term first.
pub(crate) fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - d;
            for (i, &mc) in m[..d].iter().enumerate() {
                let slot = &mut r[shift + i];
                *slot = (*slot + p - lead * mc % p) % p;
            }
        }
    }
    r
}

/// Exhaustive irreducibility test: `f` (monic, degree >= 1) has no monic
/// divisor of degree `1..=deg/2`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len().saturating_sub(1);
    if deg == 0 || f[deg] % p != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut divisor = digits(m, p, d);
            divisor.push(1);
            if poly_rem_monic(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

struct Inner {
    p: u64,
    r: usize,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// GF(p^r) with a fixed modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Inner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.0.p)
            .field("r", &self.0.r)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl FieldDescriptor {
    /// GF(p^r) with the lexicographically smallest monic irreducible modulus,
    /// constant term varying fastest.
    pub fn make(p: u64, r: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(FieldError::DegreeOutOfRange(r));
        }
        let q = p
            .checked_pow(r as u32)
            .ok_or(FieldError::OrderOverflow { p, r })?;
        let modulus = (0..q)
            .map(|m| {
                let mut f = digits(m, p, r);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(p, f))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Self::build(p, r, q, modulus))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, r) = factor_prime_power(q)?;
        Self::make(p, r)
    }

    /// GF(p^r) with an explicit modulus (constant term first, monic).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        let r = modulus.len().saturating_sub(1);
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(FieldError::DegreeOutOfRange(r));
        }
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(p, &modulus) {
            return Err(FieldError::ReducibleModulus(p));
        }
        let q = p
            .checked_pow(r as u32)
            .ok_or(FieldError::OrderOverflow { p, r })?;
        Ok(Self::build(p, r, q, modulus))
    }

    fn build(p: u64, r: usize, q: u64, modulus: Vec<u64>) -> Self {
        let mut inner = Inner {
            p,
            r,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut t = Tables {
                add: vec![0; n * n],
                mul: vec![0; n * n],
                neg: vec![0; n],
                inv: vec![0; n],
            };
            for a in 0..n {
                t.neg[a] = inner.neg_slow(a) as u16;
                for b in 0..n {
                    t.add[a * n + b] = inner.add_slow(a, b) as u16;
                    let prod = inner.mul_slow(a, b);
                    t.mul[a * n + b] = prod as u16;
                    if prod == 1 {
                        t.inv[a] = b as u16;
                    }
                }
            }
            inner.tables = Some(t);
        }
        FieldDescriptor(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.r
    }

    /// Field order q = p^r.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Coefficient vector of the element with the given canonical index.
    pub fn coeffs_of(&self, index: usize) -> Vec<u64> {
        digits(index as u64, self.0.p, self.0.r)
    }

    /// Canonical index of a reduced coefficient vector.
    pub fn index_of(&self, coeffs: &[u64]) -> usize {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c) as usize
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.add[a * self.0.q as usize + b] as usize,
            None => self.0.add_slow(a, b),
        }
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.mul[a * self.0.q as usize + b] as usize,
            None => self.0.mul_slow(a, b),
        }
    }

    pub fn neg_index(&self, a: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.neg[a] as usize,
            None => self.0.neg_slow(a),
        }
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    /// Multiplicative inverse by index; `None` for zero.
    pub fn inv_index(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        Some(match &self.0.tables {
            Some(t) => t.inv[a] as usize,
            None => {
                // x^(q-2) = x^-1 in the multiplicative group.
                self.pow_index(a, self.0.q - 2)
            }
        })
    }

    pub fn pow_index(&self, a: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (a, 1usize);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_index(acc, base);
            }
            base = self.mul_index(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn zero(&self) -> FieldElement {
        self.element_at(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element_at(1)
    }

    /// The element with canonical index `index`.
    ///
    /// Panics if `index >= q`.
    pub fn element_at(&self, index: usize) -> FieldElement {
        assert!((index as u64) < self.0.q, "field index out of range");
        FieldElement {
            field: self.clone(),
            coeffs: self.coeffs_of(index),
        }
    }

    /// Builds an element from coefficients (constant term first). Shorter
    /// vectors are zero-padded.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        let bad = |reason: String| FieldError::BadElement {
            q: self.0.q,
            reason,
        };
        if coeffs.len() > self.0.r {
            return Err(bad(format!(
                "{} coefficients, expected at most {}",
                coeffs.len(),
                self.0.r
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(bad(format!("coefficient {c} not reduced mod {}", self.0.p)));
        }
        let mut coeffs = coeffs.to_vec();
        coeffs.resize(self.0.r, 0);
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// All q elements in canonical index order: zero, one, then the rest.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.0.q as usize).map(|i| self.element_at(i)).collect()
    }
}

impl Inner {
    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (
            digits(a as u64, self.p, self.r),
            digits(b as u64, self.p, self.r),
        );
        let sum: Vec<u64> = x.iter().zip(&y).map(|(s, t)| (s + t) % self.p).collect();
        pack(&sum, self.p)
    }

    fn neg_slow(&self, a: usize) -> usize {
        let x = digits(a as u64, self.p, self.r);
        let neg: Vec<u64> = x.iter().map(|&c| (self.p - c) % self.p).collect();
        pack(&neg, self.p)
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (
            digits(a as u64, self.p, self.r),
            digits(b as u64, self.p, self.r),
        );
        let mut prod = vec![0u64; 2 * self.r - 1];
        for (i, &s) in x.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (j, &t) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + s * t) % self.p;
            }
        }
        pack(&poly_rem_monic(&prod, &self.modulus, self.p), self.p)
    }
}

fn pack(coeffs: &[u64], p: u64) -> usize {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize
}

/// A field element as a reduced coefficient vector tied to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldDescriptor,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.field.order(), self)
    }
}

/// Coefficient-list literal `c0,c1,...`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> usize {
        self.field.index_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self
            .field
            .element_at(self.field.add_index(self.index(), other.index())))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self
            .field
            .element_at(self.field.mul_index(self.index(), other.index())))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element_at(self.field.neg_index(self.index()))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field
            .inv_index(self.index())
            .map(|i| self.field.element_at(i))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element_at(self.field.pow_index(self.index(), e))
    }
}
