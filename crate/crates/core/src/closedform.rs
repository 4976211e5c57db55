//! Closed-form multiplication probabilities and bounds, evaluated from
//! structural parameters without pair enumeration.
//!
//! Every formula is expressed as a hit count over `|R|^2`, so a
//! [`FormulaResult`] can be compared count-for-count with the enumeration
//! engines.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::finfield::is_prime;
use crate::probability::{Enumerator, ProbError, ProbFraction};
use crate::ring::{Construction, Ring};
use crate::structure::{self, StructureReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("need 0 <= r <= k <= n, got r = {r}, k = {k}, n = {n}")]
    BadDimensionOrder { n: u32, r: u32, k: u32 },
    #[error("q = {0} is not a prime power")]
    BadFieldOrder(u64),
    #[error("ring is not a matrix ring")]
    NotMatrix,
    #[error("ring is not local")]
    NotLocal,
    #[error("needs |R| = q^n with n >= 2, got n = {0}")]
    NTooSmall(u32),
    #[error("ring is not a chain ring (J^(n-1) = 0)")]
    NotChain,
    #[error("the radical does not square to zero")]
    NotJ2Zero,
    #[error("invalid argument: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Enumeration(#[from] ProbError),
}

/// Which closed form (or fallback) produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `|R*| / |R|^2` for units.
    Unit,
    /// Sum over rank strata in `M_n(GF(q))`.
    MatrixRank,
    /// `(k+1)(q-1)/q^(n+1)` by radical layer in a chain ring.
    ChainLayer,
    /// Three-way formula for local rings with `J^2 = 0`.
    SquareZeroRadical,
    /// Chain formula on each prime-power factor of `Z_n`.
    ResidueCrt,
    /// Product of the factors' values.
    Product,
    /// Enumeration fallback through annihilator sums.
    AnnihilatorSum,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::Unit => "unit",
            Formula::MatrixRank => "matrix-rank",
            Formula::ChainLayer => "chain-layer",
            Formula::SquareZeroRadical => "square-zero-radical",
            Formula::ResidueCrt => "residue-crt",
            Formula::Product => "product",
            Formula::AnnihilatorSum => "annihilator-sum",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Formula::Unit => "Prob_x = |R*|/|R|^2 exactly when x is a unit",
            Formula::MatrixRank => {
                "sum over ranks k >= rk(X) of subspaces containing col(X) times surjections"
            }
            Formula::ChainLayer => {
                "x in J^k \\ J^(k+1): (k+1)(q-1)/q^(n+1); x = 0: ((n+1)q - n)/q^(n+1)"
            }
            Formula::SquareZeroRadical => {
                "J^2 = 0: 2(q-1)/q^(n+1), (q-1)/q^(n+1) or (q^(n-1)+2q-2)/q^(n+1)"
            }
            Formula::ResidueCrt => "Z_n split into prime-power factors, chain formula on each",
            Formula::Product => "Prob_(x1,..,xm) = product of Prob_xi over the factors",
            Formula::AnnihilatorSum => "sum of |ann_r(a)| over a with ab = x solvable",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A probability produced by a closed form whose hypotheses were checked.
#[derive(Clone, Debug)]
pub struct FormulaResult {
    pub value: ProbFraction,
    pub formula: Formula,
    /// Hypotheses verified before the formula was applied.
    pub hypotheses: Vec<String>,
}

/// The target of the matrix-ring formula: rank `rank` in `M_dim(GF(q))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixClass {
    q: u64,
    dim: u32,
    rank: u32,
}

impl MatrixClass {
    pub fn new(q: u64, dim: u32, rank: u32) -> Result<Self, FormulaError> {
        crate::finfield::factor_prime_power(q).map_err(|_| FormulaError::BadFieldOrder(q))?;
        if rank > dim || dim == 0 {
            return Err(FormulaError::BadDimensionOrder {
                n: dim,
                r: rank,
                k: dim,
            });
        }
        Ok(MatrixClass { q, dim, rank })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }
}

fn pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// `prod_{i<k} (q^n - q^i)`: ordered linearly independent k-tuples in
/// `GF(q)^n`.
pub fn independent_tuples(q: u64, n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (pow(q, n) - pow(q, i)))
}

/// Number of k-dimensional subspaces of `GF(q)^n` containing a fixed
/// r-dimensional one: `prod_{i=0}^{k-r-1} (q^(n-r) - q^i) / (q^(k-r) - q^i)`.
pub fn subspace_count(q: u64, n: u32, r: u32, k: u32) -> Result<BigUint, FormulaError> {
    if r > k || k > n {
        return Err(FormulaError::BadDimensionOrder { n, r, k });
    }
    if q < 2 {
        return Err(FormulaError::BadFieldOrder(q));
    }
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..k - r {
        num *= pow(q, n - r) - pow(q, i);
        den *= pow(q, k - r) - pow(q, i);
    }
    let (count, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial product is not integral");
    Ok(count)
}

/// Hit count of the rank-k stratum: `q^(n(n-k))` solutions B for each of the
/// `subspace_count * surjections` matrices A of rank k whose column space
/// contains that of X.
pub fn matrix_stratum_hits(cls: MatrixClass, k: u32) -> Result<BigUint, FormulaError> {
    let (q, n, r) = (cls.q, cls.dim, cls.rank);
    Ok(pow(q, n * (n - k)) * subspace_count(q, n, r, k)? * independent_tuples(q, n, k))
}

pub fn prob_matrix_formula(cls: MatrixClass) -> FormulaResult {
    let (q, n, r) = (cls.q, cls.dim, cls.rank);
    let hits = (r..=n).fold(BigUint::zero(), |acc, k| {
        acc + matrix_stratum_hits(cls, k).expect("r <= k <= n")
    });
    FormulaResult {
        value: ProbFraction::new(hits, pow(q, 2 * n * n)),
        formula: Formula::MatrixRank,
        hypotheses: vec![format!("R = M_{n}(GF({q}))"), format!("rk(X) = {r}")],
    }
}

/// Rank of a matrix-ring element by Gaussian elimination over its field.
pub fn matrix_rank(ring: &Ring, x: usize) -> Result<usize, FormulaError> {
    let (dim, field) = match ring.construction() {
        Construction::Matrix { dim, field } => (*dim, field),
        _ => return Err(FormulaError::NotMatrix),
    };
    let mut m: Vec<Vec<usize>> = ring
        .matrix_entries(x)
        .unwrap()
        .chunks(dim)
        .map(<[usize]>::to_vec)
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..dim).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv_index(m[rank][col]).unwrap();
        for v in m[rank].iter_mut() {
            *v = field.mul_index(*v, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub_index(*v, field.mul_index(factor, pv));
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn ring_total(ring: &Ring) -> BigUint {
    BigUint::from(ring.size()) * BigUint::from(ring.size())
}

/// `|R*| / |R|^2`, the value at every unit.
pub fn prob_unit_formula(ring: &Ring) -> FormulaResult {
    let rep = structure::report(ring);
    FormulaResult {
        value: ProbFraction::new(rep.units().len(), ring_total(ring)),
        formula: Formula::Unit,
        hypotheses: vec![format!("|R*| = {}", rep.units().len())],
    }
}

/// Target class for the bound formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundClass {
    Zero,
    /// `x != 0` and not a unit (in a local ring: `0 != x in J`).
    NonzeroNonunit,
}

/// Bounds valid in every finite ring, from `|R|`, `|R*|` and `|Z(R)|`.
pub fn general_bounds(ring: &Ring, class: BoundClass) -> (ProbFraction, ProbFraction) {
    let rep = structure::report(ring);
    let r = BigUint::from(ring.size());
    let units = BigUint::from(rep.units().len());
    let z = BigUint::from(rep.zero_divisors().len());
    let total = &r * &r;
    match class {
        BoundClass::Zero => (
            ProbFraction::new(&r * 2u8 + &z - 2u8, total.clone()),
            ProbFraction::new(&r * 2u8 + &z * &z - &z * 2u8, total),
        ),
        BoundClass::NonzeroNonunit => (
            ProbFraction::new(&units * (&z + 2u8), &total * &z),
            ProbFraction::new(&r + &z * &z - &z * 2u8, total),
        ),
    }
}

fn local_params(rep: &StructureReport) -> Result<(u64, u32), FormulaError> {
    rep.local_params().ok_or(FormulaError::NotLocal)
}

/// Local-ring bounds from `(q, n)` alone, as hit counts over `q^(2n)`.
pub fn local_bounds_from(
    q: u64,
    n: u32,
    class: BoundClass,
) -> Result<(ProbFraction, ProbFraction), FormulaError> {
    if n < 2 {
        return Err(FormulaError::NTooSmall(n));
    }
    let qb = BigUint::from(q);
    let total = pow(q, 2 * n);
    let (lower, upper) = match class {
        // (q-1)(q^(n-2)+1)/q^(2n-1) and (q^(n-1)+q-2)/q^(n+1)
        BoundClass::NonzeroNonunit => (
            (&qb - 1u8) * (pow(q, n - 2) + 1u8) * &qb,
            (pow(q, n - 1) + &qb - 2u8) * pow(q, n - 1),
        ),
        // (3q^(n-1)-q^(n-2)-1)/q^(2n-1) and (q^(n-1)+2q-2)/q^(n+1)
        BoundClass::Zero => (
            (pow(q, n - 1) * 3u8 - pow(q, n - 2) - 1u8) * &qb,
            (pow(q, n - 1) + &qb * 2u8 - 2u8) * pow(q, n - 1),
        ),
    };
    Ok((
        ProbFraction::new(lower, total.clone()),
        ProbFraction::new(upper, total),
    ))
}

pub fn local_bounds(
    ring: &Ring,
    class: BoundClass,
) -> Result<(ProbFraction, ProbFraction), FormulaError> {
    let (q, n) = local_params(&structure::report(ring))?;
    local_bounds_from(q, n, class)
}

/// Chain-ring value from parameters: `layer = Some(k)` for `x` in
/// `J^k \ J^(k+1)` (units are layer 0), `None` for `x = 0`.
pub fn chain_value(q: u64, n: u32, layer: Option<u32>) -> ProbFraction {
    let qb = BigUint::from(q);
    let hits = match layer {
        Some(k) => BigUint::from(k + 1) * (&qb - 1u8) * pow(q, n - 1),
        None => (BigUint::from(n + 1) * &qb - n) * pow(q, n - 1),
    };
    ProbFraction::new(hits, pow(q, 2 * n))
}

pub fn prob_chain_formula(ring: &Ring, x: usize) -> Result<FormulaResult, FormulaError> {
    check_index(ring, x)?;
    let rep = structure::report(ring);
    let (q, n) = local_params(&rep)?;
    if !rep.is_max_chain() {
        return Err(FormulaError::NotChain);
    }
    let layer = rep.radical_layer(x).map(|k| k as u32);
    let mut hypotheses = vec![
        format!("local with |R| = {q}^{n}, R/J = GF({q})"),
        format!("J^{} != 0", n - 1),
    ];
    hypotheses.push(match layer {
        Some(k) => format!("x in J^{k} \\ J^{}", k + 1),
        None => "x = 0".into(),
    });
    Ok(FormulaResult {
        value: chain_value(q, n, layer),
        formula: Formula::ChainLayer,
        hypotheses,
    })
}

/// Where `x` sits relative to J in a local ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalClass {
    Zero,
    NonzeroRadical,
    Unit,
}

pub fn j2zero_value(q: u64, n: u32, class: LocalClass) -> ProbFraction {
    let qb = BigUint::from(q);
    let hits = match class {
        LocalClass::NonzeroRadical => (&qb - 1u8) * 2u8 * pow(q, n - 1),
        LocalClass::Unit => (&qb - 1u8) * pow(q, n - 1),
        LocalClass::Zero => (pow(q, n - 1) + &qb * 2u8 - 2u8) * pow(q, n - 1),
    };
    ProbFraction::new(hits, pow(q, 2 * n))
}

pub fn prob_j2zero_formula(ring: &Ring, x: usize) -> Result<FormulaResult, FormulaError> {
    check_index(ring, x)?;
    let rep = structure::report(ring);
    let (q, n) = local_params(&rep)?;
    if !rep.is_j2_zero() {
        return Err(FormulaError::NotJ2Zero);
    }
    let class = if x == 0 {
        LocalClass::Zero
    } else if rep.radical().contains(x) {
        LocalClass::NonzeroRadical
    } else {
        LocalClass::Unit
    };
    Ok(FormulaResult {
        value: j2zero_value(q, n, class),
        formula: Formula::SquareZeroRadical,
        hypotheses: vec![
            format!("local with |R| = {q}^{n}, R/J = GF({q})"),
            "J^2 = 0".into(),
            match class {
                LocalClass::Zero => "x = 0".into(),
                LocalClass::NonzeroRadical => "0 != x in J".into(),
                LocalClass::Unit => "x not in J".into(),
            },
        ],
    })
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        debug_assert!(is_prime(n));
        out.push((n, 1));
    }
    out
}

/// `Prob_x(Z_n)` through the prime-power factorization of `n`.
pub fn prob_zn(n: u64, x: u64) -> Result<FormulaResult, FormulaError> {
    if n < 2 {
        return Err(FormulaError::BadParameter(format!("Z_{n} needs n >= 2")));
    }
    let mut value = ProbFraction::new(1u8, 1u8);
    let mut hypotheses = Vec::new();
    for (p, e) in prime_power_factors(n) {
        let pe = p.pow(e);
        let xi = x % pe;
        let layer = (xi != 0).then(|| {
            let (mut v, mut k) = (xi, 0u32);
            while v % p == 0 {
                v /= p;
                k += 1;
            }
            k
        });
        value = value.product(&chain_value(p, e, layer));
        hypotheses.push(match layer {
            Some(k) => format!("x = {xi} mod {pe} lies in p^{k}Z_{pe} \\ p^{}Z_{pe}", k + 1),
            None => format!("x = 0 mod {pe}"),
        });
    }
    Ok(FormulaResult {
        value,
        formula: Formula::ResidueCrt,
        hypotheses,
    })
}

/// The four statements compared for local rings with `n >= 2`:
/// every nonzero radical element attains the lower bound; every one
/// attains the upper bound; `Prob_0` attains its lower bound; `|R| = q^2`.
pub fn local_equality_predicates(ring: &Ring) -> Result<[bool; 4], FormulaError> {
    let rep = structure::report(ring);
    let (q, n) = local_params(&rep)?;
    let (lo, hi) = local_bounds_from(q, n, BoundClass::NonzeroNonunit)?;
    let (zero_lo, _) = local_bounds_from(q, n, BoundClass::Zero)?;
    let spectrum = Enumerator::default().pair_counts(ring)?;
    let total = ring_total(ring);
    let value = |x: usize| ProbFraction::new(spectrum[x], total.clone());
    let radical = rep.radical().members();
    let nonzero = || radical.iter().copied().filter(|&x| x != 0);
    Ok([
        nonzero().all(|x| value(x) == lo),
        nonzero().all(|x| value(x) == hi),
        value(0) == zero_lo,
        ring.size() as u64 == q * q,
    ])
}

/// `(Prob_0 equals (q^(n-1)+2q-2)/q^(n+1), J^2 = 0)`.
pub fn zero_extremality_predicate(ring: &Ring) -> Result<(bool, bool), FormulaError> {
    let rep = structure::report(ring);
    let (q, n) = local_params(&rep)?;
    let p0 = Enumerator::default().prob_brute(ring, 0)?;
    Ok((p0 == j2zero_value(q, n, LocalClass::Zero), rep.is_j2_zero()))
}

fn check_index(ring: &Ring, x: usize) -> Result<(), FormulaError> {
    if x >= ring.size() {
        return Err(FormulaError::BadParameter(format!(
            "element index {x} out of range for a ring of order {}",
            ring.size()
        )));
    }
    Ok(())
}

/// Closed form when one applies, annihilator-sum enumeration otherwise.
/// Tried in order: unit, matrix rank, chain layer, square-zero radical,
/// residue CRT, product recursion.
pub fn prob_auto(
    ring: &Ring,
    x: usize,
    enumerator: &Enumerator,
) -> Result<FormulaResult, FormulaError> {
    check_index(ring, x)?;
    let rep = structure::report(ring);
    if rep.is_unit(x) {
        let mut r = prob_unit_formula(ring);
        r.hypotheses.insert(0, "x is a unit".into());
        return Ok(r);
    }
    if let Construction::Matrix { dim, field } = ring.construction() {
        let rank = matrix_rank(ring, x)? as u32;
        return Ok(prob_matrix_formula(MatrixClass::new(
            field.order(),
            *dim as u32,
            rank,
        )?));
    }
    if rep.is_max_chain() {
        return prob_chain_formula(ring, x);
    }
    if rep.is_local() && rep.is_j2_zero() {
        return prob_j2zero_formula(ring, x);
    }
    match ring.construction() {
        Construction::ZMod(n) => prob_zn(*n, x as u64),
        Construction::Product(factors) => {
            let parts = ring.product_components(x).unwrap();
            let mut value = ProbFraction::new(1u8, 1u8);
            let mut hypotheses = vec![format!("R is a product of {} factors", factors.len())];
            for (i, (f, xi)) in factors.iter().zip(parts).enumerate() {
                let sub = prob_auto(f, xi, enumerator)?;
                hypotheses.push(format!("factor {i} ({f}): {} [{}]", sub.value, sub.formula));
                value = value.product(&sub.value);
            }
            Ok(FormulaResult {
                value,
                formula: Formula::Product,
                hypotheses,
            })
        }
        _ => Ok(FormulaResult {
            value: enumerator.prob_annsum(ring, x)?,
            formula: Formula::AnnihilatorSum,
            hypotheses: vec!["no closed form applies".into()],
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::FieldDescriptor;
    use crate::probability::prob_brute;

    fn frac(h: u64, t: u64) -> ProbFraction {
        ProbFraction::new(h, t)
    }

    #[test]
    fn subspace_count_examples() {
        assert_eq!(subspace_count(2, 2, 0, 1).unwrap(), BigUint::from(3u8));
        assert_eq!(subspace_count(2, 3, 1, 2).unwrap(), BigUint::from(3u8));
        assert_eq!(subspace_count(5, 4, 2, 2).unwrap(), BigUint::one());
        assert_eq!(
            subspace_count(2, 2, 2, 1),
            Err(FormulaError::BadDimensionOrder { n: 2, r: 2, k: 1 })
        );
        assert!(subspace_count(2, 2, 0, 3).is_err());
    }

    #[test]
    fn matrix_formula_examples() {
        let hits = |r| prob_matrix_formula(MatrixClass::new(2, 2, r).unwrap()).value;
        assert!(hits(2).same_counts(&frac(6, 256)));
        assert!(hits(1).same_counts(&frac(18, 256)));
        assert!(hits(0).same_counts(&frac(58, 256)));
        assert!(MatrixClass::new(6, 2, 1).is_err());
        assert!(MatrixClass::new(2, 2, 3).is_err());
    }

    #[test]
    fn rank_examples() {
        let m = Ring::matrix(2, FieldDescriptor::of_order(2).unwrap()).unwrap();
        assert_eq!(matrix_rank(&m, m.one()).unwrap(), 2);
        assert_eq!(matrix_rank(&m, 0).unwrap(), 0);
        // [[1,1],[1,1]] has every digit set.
        assert_eq!(matrix_rank(&m, 15).unwrap(), 1);
        assert_eq!(
            matrix_rank(&Ring::zmod(4).unwrap(), 1),
            Err(FormulaError::NotMatrix)
        );
    }

    #[test]
    fn unit_formula_examples() {
        assert!(prob_unit_formula(&Ring::zmod(4).unwrap())
            .value
            .same_counts(&frac(2, 16)));
        assert!(prob_unit_formula(&Ring::field_of_order(7).unwrap())
            .value
            .same_counts(&frac(6, 49)));
        let m = Ring::matrix(2, FieldDescriptor::of_order(2).unwrap()).unwrap();
        assert!(prob_unit_formula(&m).value.same_counts(&frac(6, 256)));
    }

    #[test]
    fn general_bound_examples() {
        let z4 = Ring::zmod(4).unwrap();
        let (lo, hi) = general_bounds(&z4, BoundClass::Zero);
        assert!(lo.same_counts(&frac(8, 16)) && hi.same_counts(&frac(8, 16)));
        let (lo, hi) = general_bounds(&z4, BoundClass::NonzeroNonunit);
        assert_eq!((lo, hi), (frac(4, 16), frac(4, 16)));
        let z8 = Ring::zmod(8).unwrap();
        let (lo, hi) = general_bounds(&z8, BoundClass::Zero);
        assert!(lo.same_counts(&frac(18, 64)) && hi.same_counts(&frac(24, 64)));
        let p0 = prob_brute(&z8, 0).unwrap();
        assert!(p0.same_counts(&frac(20, 64)) && lo <= p0 && p0 <= hi);
    }

    #[test]
    fn local_bound_examples() {
        let (lo, hi) = local_bounds_from(2, 2, BoundClass::NonzeroNonunit).unwrap();
        assert_eq!((lo, hi), (frac(2, 8), frac(2, 8)));
        let (lo, hi) = local_bounds_from(2, 3, BoundClass::Zero).unwrap();
        assert_eq!((lo.clone(), hi.clone()), (frac(9, 32), frac(6, 16)));
        assert!(lo <= frac(20, 64) && frac(20, 64) <= hi);
        let (lo, hi) = local_bounds_from(3, 2, BoundClass::NonzeroNonunit).unwrap();
        assert_eq!((lo, hi), (frac(4, 27), frac(4, 27)));
        assert_eq!(
            local_bounds_from(2, 1, BoundClass::Zero).unwrap_err(),
            FormulaError::NTooSmall(1)
        );
        assert_eq!(
            local_bounds(&Ring::zmod(6).unwrap(), BoundClass::Zero).unwrap_err(),
            FormulaError::NotLocal
        );
    }

    #[test]
    fn chain_formula_examples() {
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(prob_chain_formula(&z4, 2).unwrap().value, frac(1, 4));
        let z8 = Ring::zmod(8).unwrap();
        assert!(prob_chain_formula(&z8, 0)
            .unwrap()
            .value
            .same_counts(&frac(20, 64)));
        let c = Ring::chain(2, 3).unwrap();
        // t^2 has index 4.
        assert_eq!(prob_chain_formula(&c, 4).unwrap().value, frac(3, 16));
        let triv = Ring::trivial_extension(FieldDescriptor::of_order(2).unwrap(), 2).unwrap();
        assert_eq!(
            prob_chain_formula(&triv, 1).unwrap_err(),
            FormulaError::NotChain
        );
    }

    #[test]
    fn square_zero_examples() {
        let triv = Ring::trivial_extension(FieldDescriptor::of_order(2).unwrap(), 2).unwrap();
        // Index 1 is (0; 0, 1), a nonzero radical element.
        assert_eq!(prob_j2zero_formula(&triv, 1).unwrap().value, frac(1, 8));
        assert_eq!(prob_j2zero_formula(&triv, 0).unwrap().value, frac(3, 8));
        let z9 = Ring::zmod(9).unwrap();
        assert_eq!(prob_j2zero_formula(&z9, 3).unwrap().value, frac(4, 27));
        assert_eq!(
            prob_j2zero_formula(&Ring::zmod(8).unwrap(), 2).unwrap_err(),
            FormulaError::NotJ2Zero
        );
    }

    #[test]
    fn zn_examples() {
        assert!(prob_zn(6, 0).unwrap().value.same_counts(&frac(15, 36)));
        assert_eq!(prob_zn(12, 4).unwrap().value, frac(1, 9));
        assert_eq!(prob_zn(4, 1).unwrap().value, frac(1, 8));
        assert!(prob_zn(1, 0).is_err());
    }

    #[test]
    fn equality_predicate_examples() {
        assert_eq!(
            local_equality_predicates(&Ring::zmod(4).unwrap()).unwrap(),
            [true; 4]
        );
        assert_eq!(
            local_equality_predicates(&Ring::zmod(8).unwrap()).unwrap(),
            [false; 4]
        );
        assert_eq!(
            local_equality_predicates(&Ring::chain(3, 2).unwrap()).unwrap(),
            [true; 4]
        );
        assert_eq!(
            zero_extremality_predicate(&Ring::zmod(9).unwrap()).unwrap(),
            (true, true)
        );
        assert_eq!(
            zero_extremality_predicate(&Ring::zmod(8).unwrap()).unwrap(),
            (false, false)
        );
        let triv = Ring::trivial_extension(FieldDescriptor::of_order(2).unwrap(), 3).unwrap();
        assert_eq!(zero_extremality_predicate(&triv).unwrap(), (true, true));
        assert_eq!(
            zero_extremality_predicate(&Ring::zmod(6).unwrap()).unwrap_err(),
            FormulaError::NotLocal
        );
    }

    #[test]
    fn auto_dispatch() {
        let e = Enumerator::default();
        let m = Ring::matrix(2, FieldDescriptor::of_order(2).unwrap()).unwrap();
        assert_eq!(prob_auto(&m, m.one(), &e).unwrap().formula, Formula::Unit);
        assert_eq!(prob_auto(&m, 15, &e).unwrap().formula, Formula::MatrixRank);
        assert_eq!(
            prob_auto(&Ring::zmod(8).unwrap(), 4, &e).unwrap().formula,
            Formula::ChainLayer
        );
        assert_eq!(
            prob_auto(&Ring::zmod(12).unwrap(), 4, &e).unwrap().formula,
            Formula::ResidueCrt
        );
        let prod = Ring::product(vec![Ring::zmod(2).unwrap(), m.clone()]).unwrap();
        let r = prob_auto(&prod, 15, &e).unwrap();
        assert_eq!(r.formula, Formula::Product);
        assert_eq!(r.value, prob_brute(&prod, 15).unwrap());
    }
}
