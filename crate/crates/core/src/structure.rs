//! Units, zero-divisors, annihilators, the Jacobson radical and its powers,
//! and the local / chain / square-zero classification.
//!
//! Zero is counted as a zero-divisor, so units and zero-divisors partition
//! every ring.

use std::sync::Arc;

use thiserror::Error;

use crate::exec::{self, Execution};
use crate::ring::{Ideal, IdealKind, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("ring is not local")]
    NotLocal,
}

/// Structural data of a ring. Computed once per ring and cached.
#[derive(Debug, Clone)]
pub struct StructureReport {
    size: usize,
    unit_mask: Vec<bool>,
    units: Vec<usize>,
    zero_divisors: Vec<usize>,
    radical_chain: Vec<Ideal>,
    is_local: bool,
    q: Option<u64>,
    n: Option<u32>,
    is_max_chain: bool,
    is_j2_zero: bool,
}

impl StructureReport {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn zero_divisors(&self) -> &[usize] {
        &self.zero_divisors
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.unit_mask[x]
    }

    /// The Jacobson radical J.
    pub fn radical(&self) -> &Ideal {
        &self.radical_chain[0]
    }

    /// `[J, J^2, ..., J^t = 0]`.
    pub fn radical_chain(&self) -> &[Ideal] {
        &self.radical_chain
    }

    pub fn radical_chain_sizes(&self) -> Vec<usize> {
        self.radical_chain.iter().map(Ideal::len).collect()
    }

    /// Least t with J^t = 0.
    pub fn nilpotency_index(&self) -> usize {
        self.radical_chain.len()
    }

    pub fn is_local(&self) -> bool {
        self.is_local
    }

    /// Residue field order q and exponent n with |R| = q^n, for local rings.
    pub fn local_params(&self) -> Option<(u64, u32)> {
        self.q.zip(self.n)
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    pub fn n(&self) -> Option<u32> {
        self.n
    }

    /// Local with J^(n-1) != 0 (J^0 read as R).
    pub fn is_max_chain(&self) -> bool {
        self.is_max_chain
    }

    pub fn is_j2_zero(&self) -> bool {
        self.is_j2_zero
    }

    /// The k with `x` in `J^k \ J^(k+1)`, where `J^0 = R`; `None` for zero.
    pub fn radical_layer(&self, x: usize) -> Option<usize> {
        if x == 0 {
            return None;
        }
        Some(
            self.radical_chain
                .iter()
                .take_while(|i| i.contains(x))
                .count(),
        )
    }
}

/// The cached structure report of `ring`.
pub fn report(ring: &Ring) -> Arc<StructureReport> {
    ring.structure
        .get_or_init(|| Arc::new(analyze(ring, Execution::Parallel)))
        .clone()
}

/// Same as [`report`]; the name matches the locality classification it
/// carries.
pub fn classify_local(ring: &Ring) -> Arc<StructureReport> {
    report(ring)
}

fn unit_mask(ring: &Ring, exec: Execution) -> Vec<bool> {
    let (n, one) = (ring.size(), ring.one());
    // A one-sided inverse suffices in a finite ring.
    exec::map_indices(n, exec, |u| match ring.mul_row(u) {
        Some(row) => row.iter().any(|&p| p as usize == one),
        None => (0..n).any(|v| ring.mul(u, v) == one),
    })
}

pub fn units(ring: &Ring) -> Vec<usize> {
    report(ring).units.clone()
}

pub fn zero_divisors(ring: &Ring) -> Vec<usize> {
    report(ring).zero_divisors.clone()
}

fn zero_divisor_mask(ring: &Ring, exec: Execution) -> Vec<bool> {
    let n = ring.size();
    exec::map_indices(n, exec, |x| {
        x == 0 || (1..n).any(|y| ring.mul(x, y) == 0 || ring.mul(y, x) == 0)
    })
}

/// `{y : a y = 0}`, a right ideal.
pub fn right_annihilator(ring: &Ring, a: usize) -> Ideal {
    let mask: Vec<bool> = (0..ring.size()).map(|y| ring.mul(a, y) == 0).collect();
    Ideal::from_mask(ring, IdealKind::Right, mask)
}

/// `{y : y a = 0}`, a left ideal.
pub fn left_annihilator(ring: &Ring, a: usize) -> Ideal {
    let mask: Vec<bool> = (0..ring.size()).map(|y| ring.mul(y, a) == 0).collect();
    Ideal::from_mask(ring, IdealKind::Left, mask)
}

/// Size of `aR`, counted directly from the image.
pub fn right_principal_size(ring: &Ring, a: usize) -> usize {
    let mut seen = vec![false; ring.size()];
    (0..ring.size())
        .filter(|&b| !std::mem::replace(&mut seen[ring.mul(a, b)], true))
        .count()
}

/// Size of `Ra`.
pub fn left_principal_size(ring: &Ring, a: usize) -> usize {
    let mut seen = vec![false; ring.size()];
    (0..ring.size())
        .filter(|&b| !std::mem::replace(&mut seen[ring.mul(b, a)], true))
        .count()
}

/// Every element with a nonzero left annihilating partner also has a
/// nonzero right one, and vice versa.
pub fn left_right_symmetry_check(ring: &Ring) -> bool {
    let n = ring.size();
    exec::fold_chunks(
        n,
        Execution::Parallel,
        || true,
        |ok, range| {
            ok && range.into_iter().all(|a| {
                let left = (1..n).any(|b| ring.mul(b, a) == 0);
                let right = (1..n).any(|c| ring.mul(a, c) == 0);
                left == right
            })
        },
        |x, y| x && y,
    )
}

/// `J = {x : 1 - a x is a unit for every a}`.
pub fn jacobson_radical(ring: &Ring) -> Ideal {
    report(ring).radical().clone()
}

fn radical_from_units(ring: &Ring, unit_mask: &[bool], exec: Execution) -> Ideal {
    let (n, one) = (ring.size(), ring.one());
    let mask = exec::map_indices(n, exec, |x| {
        (0..n).all(|a| unit_mask[ring.sub(one, ring.mul(a, x))])
    });
    let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
    Ideal::new(ring, members).expect("the Jacobson radical is a two-sided ideal")
}

/// `[J, J^2, ..., 0]`.
pub fn radical_powers(ring: &Ring) -> Vec<Ideal> {
    report(ring).radical_chain.clone()
}

fn power_chain(ring: &Ring, radical: &Ideal) -> Vec<Ideal> {
    let mut chain = vec![radical.clone()];
    while !chain.last().unwrap().is_zero() {
        let next = chain.last().unwrap().product(ring, radical);
        assert!(
            next.len() < chain.last().unwrap().len(),
            "radical powers stalled above zero: J is not nilpotent"
        );
        chain.push(next);
    }
    chain
}

fn exact_log(size: usize, q: usize) -> Option<u32> {
    let (mut rest, mut n) = (size, 0u32);
    while rest % q == 0 && rest > 1 {
        rest /= q;
        n += 1;
    }
    (rest == 1).then_some(n)
}

/// Full structural analysis, uncached.
pub fn analyze(ring: &Ring, exec: Execution) -> StructureReport {
    let n = ring.size();
    let unit_mask = unit_mask(ring, exec);
    let zd_mask = zero_divisor_mask(ring, exec);
    let units: Vec<usize> = (0..n).filter(|&i| unit_mask[i]).collect();
    let zero_divisors: Vec<usize> = (0..n).filter(|&i| zd_mask[i]).collect();
    let radical = radical_from_units(ring, &unit_mask, exec);
    let radical_chain = power_chain(ring, &radical);

    let non_units: Vec<usize> = (0..n).filter(|&i| !unit_mask[i]).collect();
    let closed = exec::map_items(&non_units, exec, |&a| {
        non_units.iter().all(|&b| !unit_mask[ring.add(a, b)])
    })
    .into_iter()
    .all(|ok| ok);
    let (mut q, mut exp) = (None, None);
    if closed {
        assert_eq!(
            non_units.as_slice(),
            radical.members(),
            "non-units form an ideal but differ from the Jacobson radical"
        );
        let residue = n / radical.len();
        let e = exact_log(n, residue).expect("a local ring has order q^n with q = |R/J|");
        q = Some(residue as u64);
        exp = Some(e);
    }
    let is_max_chain = match exp {
        Some(1) => true,
        Some(e) => radical_chain
            .get(e as usize - 2)
            .is_some_and(|i| !i.is_zero()),
        None => false,
    };
    let is_j2_zero = radical_chain.len() <= 2;
    StructureReport {
        size: n,
        unit_mask,
        units,
        zero_divisors,
        radical_chain,
        is_local: closed,
        q,
        n: exp,
        is_max_chain,
        is_j2_zero,
    }
}

/// For a local ring with residue field of order q: every principal
/// one-sided ideal, every radical power and every right annihilator has
/// order a power of q.
pub fn ideal_size_power_check(ring: &Ring) -> Result<bool, StructureError> {
    let rep = report(ring);
    let q = rep.q.ok_or(StructureError::NotLocal)? as usize;
    let is_power = |s: usize| exact_log(s, q).is_some();
    let n = ring.size();
    let elementwise = exec::map_indices(n, Execution::Parallel, |a| {
        is_power(right_principal_size(ring, a))
            && is_power(left_principal_size(ring, a))
            && is_power(right_annihilator(ring, a).len())
    });
    Ok(elementwise.into_iter().all(|ok| ok) && rep.radical_chain.iter().all(|i| is_power(i.len())))
}

/// `u + j` is a unit for every unit `u` and every `j` in J.
pub fn unit_plus_radical_check(ring: &Ring) -> bool {
    let rep = report(ring);
    rep.units.iter().all(|&u| {
        rep.radical()
            .members()
            .iter()
            .all(|&j| rep.is_unit(ring.add(u, j)))
    })
}

/// Smallest two-sided ideal containing `g`.
pub fn principal_two_sided_ideal(ring: &Ring, g: usize) -> Ideal {
    Ideal::principal(ring, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::FieldDescriptor;

    fn gf(q: u64) -> FieldDescriptor {
        FieldDescriptor::of_order(q).unwrap()
    }

    #[test]
    fn units_and_zero_divisors_of_residue_rings() {
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(units(&z4), vec![1, 3]);
        assert_eq!(zero_divisors(&z4), vec![0, 2]);
        let z6 = Ring::zmod(6).unwrap();
        assert_eq!(zero_divisors(&z6), vec![0, 2, 3, 4]);
    }

    #[test]
    fn units_of_fields_and_matrices() {
        let f = Ring::field_of_order(9).unwrap();
        assert_eq!(units(&f), (1..9).collect::<Vec<_>>());
        assert_eq!(zero_divisors(&f), vec![0]);
        // |GL_2(F_2)| = (4 - 1)(4 - 2).
        let m = Ring::matrix(2, gf(2)).unwrap();
        assert_eq!(units(&m).len(), 6);
    }

    #[test]
    fn annihilators() {
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(right_annihilator(&z4, 2).members(), &[0, 2]);
        assert_eq!(right_annihilator(&z4, 0).len(), 4);
        assert_eq!(right_annihilator(&z4, 3).members(), &[0]);
        let m = Ring::matrix(2, gf(3)).unwrap();
        for u in units(&m) {
            assert!(right_annihilator(&m, u).is_zero());
        }
    }

    #[test]
    fn radical_examples() {
        let z12 = Ring::zmod(12).unwrap();
        assert_eq!(jacobson_radical(&z12).members(), &[0, 6]);
        let m = Ring::matrix(2, gf(2)).unwrap();
        assert!(jacobson_radical(&m).is_zero());
        // Indices 2, 4, 6 are t, t^2, t + t^2.
        let c = Ring::chain(2, 3).unwrap();
        assert_eq!(jacobson_radical(&c).members(), &[0, 2, 4, 6]);
    }

    #[test]
    fn radical_power_chains() {
        let z8 = Ring::zmod(8).unwrap();
        let chain: Vec<Vec<usize>> = radical_powers(&z8)
            .iter()
            .map(|i| i.members().to_vec())
            .collect();
        assert_eq!(chain, vec![vec![0, 2, 4, 6], vec![0, 4], vec![0]]);
        let triv = Ring::trivial_extension(gf(2), 2).unwrap();
        assert_eq!(report(&triv).radical_chain_sizes(), vec![4, 1]);
        let f = Ring::field_of_order(5).unwrap();
        assert_eq!(report(&f).radical_chain_sizes(), vec![1]);
    }

    #[test]
    fn local_classification() {
        let z9 = report(&Ring::zmod(9).unwrap());
        assert!(z9.is_local() && z9.is_max_chain() && z9.is_j2_zero());
        assert_eq!(z9.local_params(), Some((3, 2)));
        let gr = report(&Ring::galois(2, 2, 2).unwrap());
        assert!(gr.is_local() && gr.is_max_chain());
        assert_eq!(gr.local_params(), Some((4, 2)));
        let z6 = report(&Ring::zmod(6).unwrap());
        assert!(!z6.is_local());
        assert_eq!(z6.local_params(), None);
        let z8 = report(&Ring::zmod(8).unwrap());
        assert!(z8.is_max_chain() && !z8.is_j2_zero());
        let triv = report(&Ring::trivial_extension(gf(2), 3).unwrap());
        assert!(triv.is_local() && !triv.is_max_chain() && triv.is_j2_zero());
        assert_eq!(triv.local_params(), Some((2, 4)));
    }

    #[test]
    fn radical_layers() {
        let z8 = Ring::zmod(8).unwrap();
        let rep = report(&z8);
        let layers: Vec<Option<usize>> = (0..8).map(|x| rep.radical_layer(x)).collect();
        assert_eq!(
            layers,
            vec![
                None,
                Some(0),
                Some(1),
                Some(0),
                Some(2),
                Some(0),
                Some(1),
                Some(0)
            ]
        );
    }

    #[test]
    fn symmetry_and_unit_plus_radical() {
        for ring in [
            Ring::zmod(12).unwrap(),
            Ring::matrix(2, gf(2)).unwrap(),
            Ring::chain(2, 3).unwrap(),
        ] {
            assert!(left_right_symmetry_check(&ring));
            assert!(unit_plus_radical_check(&ring));
        }
    }

    #[test]
    fn ideal_sizes_are_powers_of_q() {
        assert_eq!(ideal_size_power_check(&Ring::zmod(8).unwrap()), Ok(true));
        assert_eq!(
            ideal_size_power_check(&Ring::chain(3, 2).unwrap()),
            Ok(true)
        );
        let triv = Ring::trivial_extension(gf(2), 2).unwrap();
        let sizes: std::collections::BTreeSet<usize> =
            (0..8).map(|a| right_annihilator(&triv, a).len()).collect();
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![1, 4, 8]);
        assert_eq!(ideal_size_power_check(&triv), Ok(true));
        assert_eq!(
            ideal_size_power_check(&Ring::zmod(6).unwrap()),
            Err(StructureError::NotLocal)
        );
    }

    #[test]
    fn principal_ideals() {
        let z12 = Ring::zmod(12).unwrap();
        assert_eq!(principal_two_sided_ideal(&z12, 4).members(), &[0, 4, 8]);
        assert!(principal_two_sided_ideal(&z12, 0).is_zero());
        let m = Ring::matrix(2, gf(2)).unwrap();
        for g in 1..16 {
            assert_eq!(principal_two_sided_ideal(&m, g).len(), 16);
        }
    }

    #[test]
    fn sequential_and_parallel_analysis_agree() {
        let ring = Ring::matrix(2, gf(3)).unwrap();
        let a = analyze(&ring, Execution::Sequential);
        let b = analyze(&ring, Execution::Parallel);
        assert_eq!(a.units(), b.units());
        assert_eq!(a.zero_divisors(), b.zero_divisors());
        assert_eq!(a.radical_chain_sizes(), b.radical_chain_sizes());
    }
}
