//! Concrete finite unital rings with canonical element indices.
//!
//! Every construction maps its elements bijectively onto `0..size`, with
//! index 0 the additive zero. Orderings are mixed-radix:
//!
//! | construction        | digits                         | fastest digit        |
//! |---------------------|--------------------------------|----------------------|
//! | `ZMod(n)`           | the residue                    | -                    |
//! | `Field`             | polynomial coefficients        | constant term        |
//! | `Matrix(k, F)`      | entries, row-major             | last entry           |
//! | `PolyQuotient`      | coefficients over the base     | constant term        |
//! | `TrivialExtension`  | `(a, v1, .., vm)`              | `vm`                 |
//! | `Product`           | component indices              | last component       |
//! | `Table`             | the table index                | -                    |
//! | `Quotient`          | cosets ordered by min. member  | -                    |
//!
//! Rings of at most [`MEMO_LIMIT`] elements precompute a full multiplication
//! table at construction time; larger rings multiply structurally.

mod element;
mod ideal;
mod table;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::finfield::{is_irreducible, is_prime, FieldDescriptor, FieldError};
use crate::structure::StructureReport;

pub use element::{ElementForm, RingElement};
pub(crate) use ideal::SubgroupBuilder;
pub use ideal::{Ideal, IdealKind};
pub use table::{CayleyTable, TableJson, MAX_TABLE_SIZE};

/// Rings up to this many elements carry a memoized product table.
pub const MEMO_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero ring (1 = 0) is not supported")]
    TrivialRing,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("ring order overflows the index type")]
    TooLarge,
    #[error("polynomial quotient needs a commutative base ring")]
    NonCommutativeBase,
    #[error("modulus must be monic of degree >= 1")]
    ModulusNotMonic,
    #[error("modulus reduced mod {0} is not irreducible")]
    ReducibleResidueModulus(u64),
    #[error("Cayley table has {0} elements; at most {MAX_TABLE_SIZE} are audited")]
    TableTooLarge(usize),
    #[error("Cayley table fails the ring axioms: {0}")]
    TableAudit(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("the ideal is the whole ring")]
    ImproperIdeal,
    #[error("elements belong to different rings")]
    MixedRings,
    #[error("element index {index} out of range for a ring of order {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("element form does not match the ring: {0}")]
    BadForm(String),
    #[error("ring has {size} elements, above the enumeration cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// How a ring was built. Children are shared, so descriptors are cheap to
/// nest.
#[derive(Debug)]
pub enum Construction {
    ZMod(u64),
    Field(FieldDescriptor),
    Matrix {
        dim: usize,
        field: FieldDescriptor,
    },
    /// `base[t]/(modulus)`; the modulus holds base-ring indices, constant
    /// term first, and is monic.
    PolyQuotient {
        base: Arc<Ring>,
        modulus: Vec<usize>,
    },
    /// `F + F^m` with `(a, u)(b, v) = (ab, av + bu)`.
    TrivialExtension {
        field: FieldDescriptor,
        rank: usize,
    },
    Product(Vec<Arc<Ring>>),
    Table(CayleyTable),
    Quotient(QuotientData),
}

/// Coset bookkeeping for `parent / ideal`.
#[derive(Debug)]
pub struct QuotientData {
    parent: Arc<Ring>,
    ideal: Ideal,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl QuotientData {
    pub fn parent(&self) -> &Arc<Ring> {
        &self.parent
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Minimal parent index of each coset, in quotient index order.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Quotient index of the coset containing a parent element.
    pub fn coset_of(&self, parent_index: usize) -> usize {
        self.coset_of[parent_index] as usize
    }
}

/// An immutable finite ring with unity.
pub struct Ring {
    kind: Construction,
    size: usize,
    one: usize,
    mul_table: Option<Box<[u16]>>,
    additive_gens: OnceLock<Vec<usize>>,
    commutative: OnceLock<bool>,
    pub(crate) structure: OnceLock<Arc<StructureReport>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self}, |R| = {})", self.size)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        use Construction::*;
        match (&self.kind, &other.kind) {
            (ZMod(a), ZMod(b)) => a == b,
            (Field(a), Field(b)) => a == b,
            (Matrix { dim: d1, field: f1 }, Matrix { dim: d2, field: f2 }) => d1 == d2 && f1 == f2,
            (
                PolyQuotient {
                    base: b1,
                    modulus: m1,
                },
                PolyQuotient {
                    base: b2,
                    modulus: m2,
                },
            ) => b1 == b2 && m1 == m2,
            (
                TrivialExtension {
                    field: f1,
                    rank: r1,
                },
                TrivialExtension {
                    field: f2,
                    rank: r2,
                },
            ) => f1 == f2 && r1 == r2,
            (Product(a), Product(b)) => a == b,
            (Table(a), Table(b)) => a.same_tables(b),
            (Quotient(a), Quotient(b)) => a.parent == b.parent && a.ideal == b.ideal,
            _ => false,
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize, RingError> {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(RingError::TooLarge)?;
    }
    Ok(acc)
}

/// Digits of `index` in radix `radix`, most significant first
/// (last digit varies fastest).
fn digits_msf(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

fn pack_msf(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

/// Digits with the first digit varying fastest.
fn digits_lsf(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

fn pack_lsf(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

impl Ring {
    fn finish(kind: Construction, size: usize) -> Result<Arc<Ring>, RingError> {
        if size < 2 {
            return Err(RingError::TrivialRing);
        }
        let mut ring = Ring {
            kind,
            size,
            one: 0,
            mul_table: None,
            additive_gens: OnceLock::new(),
            commutative: OnceLock::new(),
            structure: OnceLock::new(),
        };
        ring.one = ring.compute_one();
        if ring.one == 0 {
            return Err(RingError::TrivialRing);
        }
        if size <= MEMO_LIMIT {
            let rows = exec::map_indices(size, Execution::Parallel, |a| {
                (0..size)
                    .map(|b| ring.mul_raw(a, b) as u16)
                    .collect::<Vec<u16>>()
            });
            ring.mul_table = Some(rows.concat().into_boxed_slice());
        }
        Ok(Arc::new(ring))
    }

    /// Integers modulo `n`.
    pub fn zmod(n: u64) -> Result<Arc<Ring>, RingError> {
        match n {
            0 => Err(RingError::BadParameter("Z0 is infinite".into())),
            1 => Err(RingError::TrivialRing),
            _ => {
                let size = usize::try_from(n).map_err(|_| RingError::TooLarge)?;
                Self::finish(Construction::ZMod(n), size)
            }
        }
    }

    pub fn field(field: FieldDescriptor) -> Result<Arc<Ring>, RingError> {
        let size = usize::try_from(field.order()).map_err(|_| RingError::TooLarge)?;
        Self::finish(Construction::Field(field), size)
    }

    /// GF(q) for a prime power q.
    pub fn field_of_order(q: u64) -> Result<Arc<Ring>, RingError> {
        Self::field(FieldDescriptor::of_order(q)?)
    }

    /// The full matrix ring `M_dim(F)`.
    pub fn matrix(dim: usize, field: FieldDescriptor) -> Result<Arc<Ring>, RingError> {
        if dim == 0 {
            return Err(RingError::BadParameter(
                "matrix dimension must be >= 1".into(),
            ));
        }
        let size = checked_pow(field.order() as usize, dim * dim)?;
        Self::finish(Construction::Matrix { dim, field }, size)
    }

    /// `base[t]/(modulus)` for a commutative base and a monic modulus given
    /// as base-ring indices, constant term first.
    pub fn poly_quotient(base: Arc<Ring>, modulus: Vec<usize>) -> Result<Arc<Ring>, RingError> {
        if !base.is_commutative() {
            return Err(RingError::NonCommutativeBase);
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != base.one() {
            return Err(RingError::ModulusNotMonic);
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= base.size()) {
            return Err(RingError::IndexOutOfRange {
                index: c,
                size: base.size(),
            });
        }
        let size = checked_pow(base.size(), modulus.len() - 1)?;
        Self::finish(Construction::PolyQuotient { base, modulus }, size)
    }

    /// The chain ring `GF(q)[t]/(t^m)`.
    pub fn chain(q: u64, m: usize) -> Result<Arc<Ring>, RingError> {
        if m == 0 {
            return Err(RingError::BadParameter("chain length must be >= 1".into()));
        }
        let base = Self::field_of_order(q)?;
        let mut modulus = vec![0; m + 1];
        modulus[m] = base.one();
        Self::poly_quotient(base, modulus)
    }

    /// The Galois ring `Z_{p^k}[t]/(f)` where `f` lifts the canonical
    /// modulus of GF(p^r).
    pub fn galois(p: u64, k: u32, r: usize) -> Result<Arc<Ring>, RingError> {
        let field = FieldDescriptor::make(p, r)?;
        Self::galois_with_modulus(p, k, field.modulus().to_vec())
    }

    /// `Z_{p^k}[t]/(f)` for an explicit monic `f` over `Z_{p^k}` whose
    /// reduction mod p must be irreducible.
    pub fn galois_with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<Arc<Ring>, RingError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p).into());
        }
        if k == 0 {
            return Err(RingError::BadParameter(
                "Galois ring exponent must be >= 1".into(),
            ));
        }
        let pk = p.checked_pow(k).ok_or(RingError::TooLarge)?;
        if modulus.iter().any(|&c| c >= pk) {
            return Err(RingError::BadParameter(format!(
                "modulus coefficient not reduced mod {pk}"
            )));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !is_irreducible(p, &reduced) {
            return Err(RingError::ReducibleResidueModulus(p));
        }
        let base = Self::zmod(pk)?;
        Self::poly_quotient(base, modulus.iter().map(|&c| c as usize).collect())
    }

    /// `GF(q) + GF(q)^rank` with square-zero radical.
    pub fn trivial_extension(field: FieldDescriptor, rank: usize) -> Result<Arc<Ring>, RingError> {
        if rank == 0 {
            return Err(RingError::BadParameter(
                "trivial extension rank must be >= 1".into(),
            ));
        }
        let size = checked_pow(field.order() as usize, rank + 1)?;
        Self::finish(Construction::TrivialExtension { field, rank }, size)
    }

    pub fn product(factors: Vec<Arc<Ring>>) -> Result<Arc<Ring>, RingError> {
        if factors.len() < 2 {
            return Err(RingError::BadParameter(
                "a product needs at least two factors".into(),
            ));
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
            .ok_or(RingError::TooLarge)?;
        Self::finish(Construction::Product(factors), size)
    }

    /// A ring given by audited Cayley tables.
    pub fn table(table: CayleyTable) -> Result<Arc<Ring>, RingError> {
        let size = table.size();
        Self::finish(Construction::Table(table), size)
    }

    /// Parses and audits the JSON table format; `source` is remembered for
    /// rendering the ring back as `table:<source>`.
    pub fn table_from_json(json: &str, source: Option<String>) -> Result<Arc<Ring>, RingError> {
        Self::table(CayleyTable::from_json(json, source)?)
    }

    /// `parent / ideal`. Cosets are indexed in order of their minimal member,
    /// which is also the stored representative. Multiplication is checked
    /// for well-definedness over every pair.
    pub fn quotient(parent: &Arc<Ring>, ideal: &Ideal) -> Result<Arc<Ring>, RingError> {
        let n = parent.size();
        if ideal.ring_size() != n {
            return Err(RingError::NotAnIdeal(
                "ideal belongs to a ring of different order".into(),
            ));
        }
        if ideal.len() == n {
            return Err(RingError::ImproperIdeal);
        }
        ideal.check_two_sided(parent)?;
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in ideal.members() {
                coset_of[parent.add(x, m)] = id;
            }
        }
        let well_defined = exec::fold_chunks(
            n,
            Execution::Parallel,
            || true,
            |ok, range| {
                ok && range.into_iter().all(|a| {
                    let ra = reps[coset_of[a] as usize];
                    (0..n).all(|b| {
                        let rb = reps[coset_of[b] as usize];
                        coset_of[parent.mul(a, b)] == coset_of[parent.mul(ra, rb)]
                    })
                })
            },
            |x, y| x && y,
        );
        if !well_defined {
            return Err(RingError::NotAnIdeal(
                "coset multiplication is not well defined".into(),
            ));
        }
        let size = reps.len();
        Self::finish(
            Construction::Quotient(QuotientData {
                parent: parent.clone(),
                ideal: ideal.clone(),
                reps,
                coset_of,
            }),
            size,
        )
    }

    pub fn construction(&self) -> &Construction {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Index of the multiplicative identity.
    pub fn one(&self) -> usize {
        self.one
    }

    pub fn has_mul_table(&self) -> bool {
        self.mul_table.is_some()
    }

    /// Row `a` of the memoized product table, if present.
    pub fn mul_row(&self, a: usize) -> Option<&[u16]> {
        self.mul_table
            .as_ref()
            .map(|t| &t[a * self.size..(a + 1) * self.size])
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.mul_raw(a, b),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        use Construction::*;
        match &self.kind {
            ZMod(n) => ((a as u64 + b as u64) % n) as usize,
            Field(f) => f.add_index(a, b),
            Matrix { field, .. } | TrivialExtension { field, .. } => {
                self.zip_uniform(a, b, field.order() as usize, |x, y| field.add_index(x, y))
            }
            PolyQuotient { base, modulus } => {
                let (r, d) = (base.size(), modulus.len() - 1);
                let (x, y) = (digits_lsf(a, r, d), digits_lsf(b, r, d));
                let sum: Vec<usize> = x.iter().zip(&y).map(|(&s, &t)| base.add(s, t)).collect();
                pack_lsf(&sum, r)
            }
            Product(fs) => {
                let (x, y) = (self.split_product(fs, a), self.split_product(fs, b));
                let parts: Vec<usize> = fs
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(f, (&s, &t))| f.add(s, t))
                    .collect();
                Self::join_product(fs, &parts)
            }
            Table(t) => t.add(a, b),
            Quotient(q) => q.coset_of[q.parent.add(q.reps[a], q.reps[b])] as usize,
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        use Construction::*;
        match &self.kind {
            ZMod(n) => ((n - a as u64) % n) as usize,
            Field(f) => f.neg_index(a),
            Matrix { field, .. } | TrivialExtension { field, .. } => {
                let q = field.order() as usize;
                let len = self.uniform_len(q);
                let neg: Vec<usize> = digits_msf(a, q, len)
                    .into_iter()
                    .map(|x| field.neg_index(x))
                    .collect();
                pack_msf(&neg, q)
            }
            PolyQuotient { base, modulus } => {
                let (r, d) = (base.size(), modulus.len() - 1);
                let neg: Vec<usize> = digits_lsf(a, r, d)
                    .into_iter()
                    .map(|x| base.neg(x))
                    .collect();
                pack_lsf(&neg, r)
            }
            Product(fs) => {
                let parts: Vec<usize> = fs
                    .iter()
                    .zip(self.split_product(fs, a))
                    .map(|(f, x)| f.neg(x))
                    .collect();
                Self::join_product(fs, &parts)
            }
            Table(t) => t.neg(a),
            Quotient(q) => q.coset_of[q.parent.neg(q.reps[a])] as usize,
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    fn uniform_len(&self, q: usize) -> usize {
        match &self.kind {
            Construction::Matrix { dim, .. } => dim * dim,
            Construction::TrivialExtension { rank, .. } => rank + 1,
            _ => unreachable!("uniform radix only for matrix and trivial extension ({q})"),
        }
    }

    fn zip_uniform(
        &self,
        a: usize,
        b: usize,
        q: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> usize {
        let len = self.uniform_len(q);
        let (x, y) = (digits_msf(a, q, len), digits_msf(b, q, len));
        let out: Vec<usize> = x.iter().zip(&y).map(|(&s, &t)| op(s, t)).collect();
        pack_msf(&out, q)
    }

    fn split_product(&self, factors: &[Arc<Ring>], mut index: usize) -> Vec<usize> {
        let mut parts = vec![0; factors.len()];
        for (slot, f) in parts.iter_mut().zip(factors).rev() {
            *slot = index % f.size();
            index /= f.size();
        }
        parts
    }

    fn join_product(factors: &[Arc<Ring>], parts: &[usize]) -> usize {
        factors
            .iter()
            .zip(parts)
            .fold(0, |acc, (f, &x)| acc * f.size() + x)
    }

    /// Component indices of a product element (last component fastest).
    pub fn product_components(&self, index: usize) -> Option<Vec<usize>> {
        match &self.kind {
            Construction::Product(fs) => Some(self.split_product(fs, index)),
            _ => None,
        }
    }

    /// Product element from component indices.
    pub fn product_join(&self, parts: &[usize]) -> Option<usize> {
        match &self.kind {
            Construction::Product(fs) if parts.len() == fs.len() => {
                Some(Self::join_product(fs, parts))
            }
            _ => None,
        }
    }

    /// Matrix entries (field indices, row-major) of a matrix-ring element.
    pub fn matrix_entries(&self, index: usize) -> Option<Vec<usize>> {
        match &self.kind {
            Construction::Matrix { dim, field } => {
                Some(digits_msf(index, field.order() as usize, dim * dim))
            }
            _ => None,
        }
    }

    /// Structural multiplication, bypassing the memo table.
    pub fn mul_raw(&self, a: usize, b: usize) -> usize {
        use Construction::*;
        match &self.kind {
            ZMod(n) => ((a as u128 * b as u128) % *n as u128) as usize,
            Field(f) => f.mul_index(a, b),
            Matrix { dim, field } => {
                let (k, q) = (*dim, field.order() as usize);
                let (x, y) = (digits_msf(a, q, k * k), digits_msf(b, q, k * k));
                let mut out = vec![0usize; k * k];
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = 0;
                        for l in 0..k {
                            let t = field.mul_index(x[i * k + l], y[l * k + j]);
                            acc = field.add_index(acc, t);
                        }
                        out[i * k + j] = acc;
                    }
                }
                pack_msf(&out, q)
            }
            PolyQuotient { base, modulus } => {
                let (r, d) = (base.size(), modulus.len() - 1);
                let (x, y) = (digits_lsf(a, r, d), digits_lsf(b, r, d));
                let mut prod = vec![0usize; 2 * d - 1];
                for (i, &s) in x.iter().enumerate() {
                    if s == 0 {
                        continue;
                    }
                    for (j, &t) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(s, t));
                    }
                }
                // t^d = -(m_0 + ... + m_{d-1} t^{d-1}) since the modulus is monic.
                for e in (d..prod.len()).rev() {
                    let lead = prod[e];
                    if lead == 0 {
                        continue;
                    }
                    for (i, &m) in modulus[..d].iter().enumerate() {
                        let slot = e - d + i;
                        prod[slot] = base.sub(prod[slot], base.mul(lead, m));
                    }
                }
                pack_lsf(&prod[..d], r)
            }
            TrivialExtension { field, rank } => {
                let q = field.order() as usize;
                let (x, y) = (digits_msf(a, q, rank + 1), digits_msf(b, q, rank + 1));
                let mut out = vec![field.mul_index(x[0], y[0])];
                for i in 1..=*rank {
                    let av = field.mul_index(x[0], y[i]);
                    let bu = field.mul_index(y[0], x[i]);
                    out.push(field.add_index(av, bu));
                }
                pack_msf(&out, q)
            }
            Product(fs) => {
                let (x, y) = (self.split_product(fs, a), self.split_product(fs, b));
                let parts: Vec<usize> = fs
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(f, (&s, &t))| f.mul(s, t))
                    .collect();
                Self::join_product(fs, &parts)
            }
            Table(t) => t.mul(a, b),
            Quotient(q) => q.coset_of[q.parent.mul(q.reps[a], q.reps[b])] as usize,
        }
    }

    fn compute_one(&self) -> usize {
        use Construction::*;
        match &self.kind {
            ZMod(_) | Field(_) => 1,
            Matrix { dim, field } => {
                let k = *dim;
                let entries: Vec<usize> = (0..k * k).map(|i| usize::from(i / k == i % k)).collect();
                pack_msf(&entries, field.order() as usize)
            }
            PolyQuotient { base, .. } => base.one(),
            TrivialExtension { field, rank } => checked_pow(field.order() as usize, *rank).unwrap(),
            Product(fs) => {
                let ones: Vec<usize> = fs.iter().map(|f| f.one()).collect();
                Self::join_product(fs, &ones)
            }
            Table(t) => t.one(),
            Quotient(q) => q.coset_of[q.parent.one()] as usize,
        }
    }

    pub fn is_commutative(&self) -> bool {
        *self.commutative.get_or_init(|| {
            let n = self.size;
            exec::fold_chunks(
                n,
                Execution::Parallel,
                || true,
                |ok, range| {
                    ok && range
                        .into_iter()
                        .all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
                },
                |x, y| x && y,
            )
        })
    }

    /// A generating set of the additive group, found greedily in index order.
    pub fn additive_generators(&self) -> &[usize] {
        self.additive_gens.get_or_init(|| {
            let mut builder = SubgroupBuilder::new(self);
            for x in 1..self.size {
                if builder.members().len() == self.size {
                    break;
                }
                builder.insert(x);
            }
            builder.into_generators()
        })
    }

    /// Checked element handle.
    pub fn element(&self, index: usize) -> Result<RingElement<'_>, RingError> {
        if index >= self.size {
            return Err(RingError::IndexOutOfRange {
                index,
                size: self.size,
            });
        }
        Ok(RingElement::new(self, index))
    }

    /// All elements in index order, refusing rings above `cap`.
    pub fn enumerate(
        &self,
        cap: usize,
    ) -> Result<impl Iterator<Item = RingElement<'_>> + '_, RingError> {
        if self.size > cap {
            return Err(RingError::SizeCapExceeded {
                size: self.size,
                cap,
            });
        }
        Ok((0..self.size).map(move |i| RingElement::new(self, i)))
    }

    /// Renders the ring in the ring-spec grammar, if it has a grammar form.
    pub fn spec_string(&self) -> Option<String> {
        use Construction::*;
        Some(match &self.kind {
            ZMod(n) => format!("Z{n}"),
            Field(f) => format!("GF{}", f.order()),
            Matrix { dim, field } => format!("M{dim}(GF{})", field.order()),
            TrivialExtension { field, rank } => format!("triv({},{rank})", field.order()),
            PolyQuotient { base, modulus } => {
                let d = modulus.len() - 1;
                match &base.kind {
                    Field(f) if modulus[..d].iter().all(|&c| c == 0) => {
                        format!("chain({},{d})", f.order())
                    }
                    ZMod(pk) => {
                        let (p, k) = crate::finfield::factor_prime_power(*pk).ok()?;
                        let canonical = FieldDescriptor::make(p, d).ok()?;
                        let lifted: Vec<usize> =
                            canonical.modulus().iter().map(|&c| c as usize).collect();
                        if lifted != *modulus {
                            return None;
                        }
                        format!("GR({p},{k},{d})")
                    }
                    _ => return None,
                }
            }
            Product(fs) => {
                let parts: Option<Vec<String>> = fs.iter().map(|f| f.spec_string()).collect();
                parts?.join(" x ")
            }
            Table(t) => format!("table:{}", t.source()?),
            Quotient(_) => return None,
        })
    }

    /// Exhaustive ring-axiom audit for rings of at most 256 elements;
    /// larger rings are checked on `samples` random triples.
    pub fn audit_axioms(&self, samples: usize, seed: u64) -> Result<(), String> {
        let n = self.size;
        let one = self.one;
        for a in 0..n {
            if self.mul(a, one) != a || self.mul(one, a) != a {
                return Err(format!("1 is not an identity at element {a}"));
            }
            if self.add(a, 0) != a || self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive identity or inverse fails at {a}"));
            }
        }
        let triple = |a: usize, b: usize, c: usize| -> Result<(), String> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(format!("associativity fails at ({a}, {b}, {c})"));
            }
            let bc = self.add(b, c);
            if self.mul(a, bc) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(format!("left distributivity fails at ({a}, {b}, {c})"));
            }
            if self.mul(bc, a) != self.add(self.mul(b, a), self.mul(c, a)) {
                return Err(format!("right distributivity fails at ({a}, {b}, {c})"));
            }
            if self.add(self.add(a, b), c) != self.add(a, bc) || self.add(a, b) != self.add(b, a) {
                return Err(format!(
                    "addition is not an abelian group at ({a}, {b}, {c})"
                ));
            }
            Ok(())
        };
        if n <= 256 {
            let failures = exec::map_indices(n, Execution::Parallel, |a| {
                (0..n)
                    .try_for_each(|b| (0..n).try_for_each(|c| triple(a, b, c)))
                    .err()
            });
            match failures.into_iter().flatten().next() {
                Some(e) => Err(e),
                None => Ok(()),
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).try_for_each(|_| {
                triple(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.spec_string() {
            return f.write_str(&s);
        }
        match &self.kind {
            Construction::PolyQuotient { base, modulus } => {
                write!(f, "({base})[t]/(modulus {modulus:?})")
            }
            Construction::Quotient(q) => write!(f, "({}) / I[{}]", q.parent, q.ideal.len()),
            Construction::Table(t) => write!(f, "table[{}]", t.size()),
            Construction::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|r| r.to_string()).collect();
                f.write_str(&parts.join(" x "))
            }
            _ => unreachable!("atoms always render"),
        }
    }
}
