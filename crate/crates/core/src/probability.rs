//! Enumeration engines for the multiplication probability.
//!
//! Two independent routes are kept apart on purpose:
//!
//! * [`Enumerator::prob_brute`] counts ordered pairs `(a, b)` with `ab = x`.
//! * [`Enumerator::prob_annsum`] sums `|ann_r(a)|` over the `a` for which
//!   `ab = x` is solvable; the solutions `b` form a coset of `ann_r(a)`.
//!
//! [`Enumerator::spectrum`] does one pass over all pairs and buckets every
//! product, giving all `|R|` probabilities at once.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::ring::{Construction, Ring};
use crate::structure;
use crate::DEFAULT_SIZE_CAP;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbError {
    #[error("ring has {size} elements, above the enumeration cap {cap} (use --force to override)")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("element index {index} out of range for a ring of order {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// An exact probability `hits / total`. Stored unreduced so that hit counts
/// stay comparable with pair counts; equality and ordering are exact
/// cross-multiplications.
#[derive(Clone, Debug)]
pub struct ProbFraction {
    hits: BigUint,
    total: BigUint,
}

impl ProbFraction {
    /// Panics if `total` is zero.
    pub fn new(hits: impl Into<BigUint>, total: impl Into<BigUint>) -> Self {
        let (hits, total) = (hits.into(), total.into());
        assert!(!total.is_zero(), "probability with zero denominator");
        ProbFraction { hits, total }
    }

    pub fn hits(&self) -> &BigUint {
        &self.hits
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// True when both the numerator and denominator match, not just the value.
    pub fn same_counts(&self, other: &ProbFraction) -> bool {
        self.hits == other.hits && self.total == other.total
    }

    /// Numerator and denominator in lowest terms.
    pub fn reduced(&self) -> (BigUint, BigUint) {
        let g = self.hits.gcd(&self.total);
        if g.is_zero() {
            return (BigUint::zero(), BigUint::from(1u8));
        }
        (&self.hits / &g, &self.total / &g)
    }

    /// Product of independent probabilities (numerators and denominators
    /// multiply separately).
    pub fn product(&self, other: &ProbFraction) -> ProbFraction {
        ProbFraction {
            hits: &self.hits * &other.hits,
            total: &self.total * &other.total,
        }
    }

    /// Decimal rendering with `digits` significant digits, rounded half up.
    /// Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let (num, den) = self.reduced();
        if num.is_zero() {
            return "0".into();
        }
        let ten = BigUint::from(10u8);
        // Shift so that the integer part has exactly `digits` digits.
        let mut exp: i64 = 0;
        let mut scaled_num = num.clone();
        let mut scaled_den = den.clone();
        let lower = ten.pow(digits as u32 - 1);
        let upper = ten.pow(digits as u32);
        loop {
            let q = &scaled_num / &scaled_den;
            if q < lower {
                scaled_num *= &ten;
                exp -= 1;
            } else if q >= upper {
                scaled_den *= &ten;
                exp += 1;
            } else {
                break;
            }
        }
        let (mut q, r) = scaled_num.div_rem(&scaled_den);
        if r * 2u8 >= scaled_den {
            q += 1u8;
            if q == upper {
                q /= &ten;
                exp += 1;
            }
        }
        let mantissa = q.to_string();
        // value = mantissa * 10^exp
        let point = mantissa.len() as i64 + exp;
        let mut s = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), mantissa)
        } else if point as usize >= mantissa.len() {
            format!(
                "{}{}",
                mantissa,
                "0".repeat(point as usize - mantissa.len())
            )
        } else {
            let (int, frac) = mantissa.split_at(point as usize);
            format!("{int}.{frac}")
        };
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = self.reduced();
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for ProbFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.hits * &other.total == &other.hits * &self.total
    }
}

impl Eq for ProbFraction {}

impl PartialOrd for ProbFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProbFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.hits * &other.total).cmp(&(&other.hits * &self.total))
    }
}

/// Reduced fraction `a/b`.
impl fmt::Display for ProbFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        write!(f, "{n}/{d}")
    }
}

/// One class of a spectrum: elements sharing a structural label and a
/// probability.
#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub label: String,
    /// Smallest member index.
    pub representative: usize,
    pub members: Vec<usize>,
    pub value: ProbFraction,
}

impl SpectrumEntry {
    pub fn class_size(&self) -> usize {
        self.members.len()
    }
}

/// `Prob_x(R)` for every `x`, grouped into classes.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub size: usize,
    /// Pair count per element index; sums to `|R|^2`.
    pub hits: Vec<u64>,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    pub fn total(&self) -> BigUint {
        BigUint::from(self.size) * BigUint::from(self.size)
    }

    pub fn value(&self, x: usize) -> ProbFraction {
        ProbFraction::new(self.hits[x], self.total())
    }
}

/// `delta_x(a)`: whether `a b = x` has a solution `b`.
pub fn delta(ring: &Ring, a: usize, x: usize) -> bool {
    (0..ring.size()).any(|b| ring.mul(a, b) == x)
}

/// Structural class label of `x`, used to annotate spectra: the rank for
/// matrix rings, the radical layer for local rings, componentwise labels
/// for products and the unit / zero-divisor split otherwise.
pub fn class_label(ring: &Ring, x: usize) -> String {
    if x == 0 {
        return "zero".into();
    }
    match ring.construction() {
        Construction::Matrix { .. } => {
            let rank = crate::closedform::matrix_rank(ring, x).expect("matrix construction");
            return format!("rank {rank}");
        }
        Construction::Product(factors) => {
            let parts = ring.product_components(x).unwrap();
            let labels: Vec<String> = factors
                .iter()
                .zip(parts)
                .map(|(f, c)| class_label(f, c))
                .collect();
            return format!("({})", labels.join(", "));
        }
        _ => {}
    }
    let rep = structure::report(ring);
    if rep.is_unit(x) {
        "unit".into()
    } else if rep.is_local() {
        format!("J^{}", rep.radical_layer(x).unwrap())
    } else {
        "zero-divisor".into()
    }
}

/// Size cap and scheduling for the enumeration engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    pub cap: usize,
    pub exec: Execution,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_SIZE_CAP,
            exec: Execution::default(),
        }
    }
}

impl Enumerator {
    pub fn new(cap: usize, exec: Execution) -> Self {
        Enumerator { cap, exec }
    }

    /// No size cap.
    pub fn unbounded(exec: Execution) -> Self {
        Enumerator {
            cap: usize::MAX,
            exec,
        }
    }

    fn check(&self, ring: &Ring, x: Option<usize>) -> Result<(), ProbError> {
        let size = ring.size();
        if size > self.cap || size > u32::MAX as usize {
            return Err(ProbError::SizeCapExceeded {
                size,
                cap: self.cap,
            });
        }
        match x {
            Some(index) if index >= size => Err(ProbError::IndexOutOfRange { index, size }),
            _ => Ok(()),
        }
    }

    fn total(ring: &Ring) -> BigUint {
        BigUint::from(ring.size()) * BigUint::from(ring.size())
    }

    /// Definitional pair count.
    pub fn prob_brute(&self, ring: &Ring, x: usize) -> Result<ProbFraction, ProbError> {
        self.check(ring, Some(x))?;
        let n = ring.size();
        let hits = exec::fold_chunks(
            n,
            self.exec,
            || 0u128,
            |acc, range| {
                acc + range
                    .map(|a| (0..n).filter(|&b| ring.mul(a, b) == x).count() as u128)
                    .sum::<u128>()
            },
            |s, t| s + t,
        );
        Ok(ProbFraction::new(hits, Self::total(ring)))
    }

    /// Annihilator-sum route: `sum over a with delta_x(a) = 1 of |ann_r(a)|`.
    pub fn prob_annsum(&self, ring: &Ring, x: usize) -> Result<ProbFraction, ProbError> {
        self.check(ring, Some(x))?;
        let n = ring.size();
        let hits = exec::fold_chunks(
            n,
            self.exec,
            || 0u128,
            |acc, range| {
                acc + range
                    .filter(|&a| delta(ring, a, x))
                    .map(|a| (0..n).filter(|&y| ring.mul(a, y) == 0).count() as u128)
                    .sum::<u128>()
            },
            |s, t| s + t,
        );
        Ok(ProbFraction::new(hits, Self::total(ring)))
    }

    /// Annihilator-sum counts for every `x` at once: each `a` contributes
    /// `|ann_r(a)|` to every element of its image `aR`.
    pub fn annsum_counts(&self, ring: &Ring) -> Result<Vec<u64>, ProbError> {
        self.check(ring, None)?;
        let n = ring.size();
        Ok(exec::fold_chunks(
            n,
            self.exec,
            || vec![0u64; n],
            |mut counts, range| {
                let mut image = vec![false; n];
                for a in range {
                    image.iter_mut().for_each(|s| *s = false);
                    let mut ann = 0u64;
                    for b in 0..n {
                        let p = ring.mul(a, b);
                        image[p] = true;
                        ann += u64::from(p == 0);
                    }
                    for (c, &hit) in counts.iter_mut().zip(&image) {
                        if hit {
                            *c += ann;
                        }
                    }
                }
                counts
            },
            merge_counts,
        ))
    }

    /// Pair counts per product value, one pass over `R x R`.
    pub fn pair_counts(&self, ring: &Ring) -> Result<Vec<u64>, ProbError> {
        self.check(ring, None)?;
        let n = ring.size();
        Ok(exec::fold_chunks(
            n,
            self.exec,
            || vec![0u64; n],
            |mut counts, range| {
                for a in range {
                    match ring.mul_row(a) {
                        Some(row) => row.iter().for_each(|&p| counts[p as usize] += 1),
                        None => (0..n).for_each(|b| counts[ring.mul(a, b)] += 1),
                    }
                }
                counts
            },
            merge_counts,
        ))
    }

    /// Full spectrum with structural class labels.
    pub fn spectrum(&self, ring: &Ring) -> Result<SpectrumReport, ProbError> {
        let hits = self.pair_counts(ring)?;
        let n = ring.size();
        let total = Self::total(ring);
        let labels = exec::map_indices(n, self.exec, |x| class_label(ring, x));
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut slot: HashMap<(&str, u64), usize> = HashMap::new();
        for x in 0..n {
            let key = (labels[x].as_str(), hits[x]);
            match slot.get(&key) {
                Some(&i) => entries[i].members.push(x),
                None => {
                    slot.insert(key, entries.len());
                    entries.push(SpectrumEntry {
                        label: labels[x].clone(),
                        representative: x,
                        members: vec![x],
                        value: ProbFraction::new(hits[x], total.clone()),
                    });
                }
            }
        }
        Ok(SpectrumReport {
            size: n,
            hits,
            entries,
        })
    }
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(s, t)| *s += t);
    a
}

pub fn prob_brute(ring: &Ring, x: usize) -> Result<ProbFraction, ProbError> {
    Enumerator::default().prob_brute(ring, x)
}

pub fn prob_annsum(ring: &Ring, x: usize) -> Result<ProbFraction, ProbError> {
    Enumerator::default().prob_annsum(ring, x)
}

pub fn spectrum(ring: &Ring) -> Result<SpectrumReport, ProbError> {
    Enumerator::default().spectrum(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::FieldDescriptor;

    fn frac(h: u64, t: u64) -> ProbFraction {
        ProbFraction::new(h, t)
    }

    #[test]
    fn delta_examples() {
        let z4 = Ring::zmod(4).unwrap();
        assert!(delta(&z4, 2, 2));
        assert!(!delta(&z4, 0, 2));
        assert!(!delta(&z4, 2, 1));
    }

    #[test]
    fn brute_examples() {
        let z2 = Ring::zmod(2).unwrap();
        assert!(prob_brute(&z2, 0).unwrap().same_counts(&frac(3, 4)));
        assert!(prob_brute(&z2, 1).unwrap().same_counts(&frac(1, 4)));
        let z4 = Ring::zmod(4).unwrap();
        let p = prob_brute(&z4, 2).unwrap();
        assert!(p.same_counts(&frac(4, 16)));
        assert_eq!(p.to_string(), "1/4");
    }

    #[test]
    fn annsum_examples() {
        let z4 = Ring::zmod(4).unwrap();
        assert!(prob_annsum(&z4, 2).unwrap().same_counts(&frac(4, 16)));
        let z2 = Ring::zmod(2).unwrap();
        assert!(prob_annsum(&z2, 0).unwrap().same_counts(&frac(3, 4)));
        for ring in [Ring::zmod(12).unwrap(), Ring::chain(2, 3).unwrap()] {
            let units = structure::units(&ring).len() as u64;
            let n = ring.size() as u64;
            assert!(prob_annsum(&ring, ring.one())
                .unwrap()
                .same_counts(&frac(units, n * n)));
        }
    }

    #[test]
    fn spectrum_examples() {
        let z4 = spectrum(&Ring::zmod(4).unwrap()).unwrap();
        assert_eq!(z4.hits, vec![8, 2, 4, 2]);
        let labels: Vec<(&str, usize, u64)> = z4
            .entries
            .iter()
            .map(|e| (e.label.as_str(), e.class_size(), z4.hits[e.representative]))
            .collect();
        assert_eq!(labels, vec![("zero", 1, 8), ("unit", 2, 2), ("J^1", 1, 4)]);

        let gf3 = spectrum(&Ring::field_of_order(3).unwrap()).unwrap();
        assert_eq!(gf3.hits, vec![5, 2, 2]);

        let m2 =
            spectrum(&Ring::matrix(2, FieldDescriptor::of_order(2).unwrap()).unwrap()).unwrap();
        let classes: Vec<(String, usize, u64)> = m2
            .entries
            .iter()
            .map(|e| (e.label.clone(), e.class_size(), m2.hits[e.representative]))
            .collect();
        assert_eq!(
            classes,
            vec![
                ("zero".to_string(), 1, 58),
                ("rank 1".to_string(), 9, 18),
                ("rank 2".to_string(), 6, 6)
            ]
        );
    }

    #[test]
    fn size_cap_is_enforced() {
        let ring = Ring::zmod(50).unwrap();
        let small = Enumerator::new(10, Execution::Sequential);
        assert_eq!(
            small.prob_brute(&ring, 0).unwrap_err(),
            ProbError::SizeCapExceeded { size: 50, cap: 10 }
        );
        assert!(small.spectrum(&ring).is_err());
        assert!(Enumerator::default().prob_brute(&ring, 50).is_err());
    }

    #[test]
    fn execution_modes_agree() {
        let ring = Ring::product(vec![Ring::zmod(6).unwrap(), Ring::chain(2, 2).unwrap()]).unwrap();
        let seq = Enumerator::new(DEFAULT_SIZE_CAP, Execution::Sequential);
        let par = Enumerator::new(DEFAULT_SIZE_CAP, Execution::Parallel);
        assert_eq!(
            seq.pair_counts(&ring).unwrap(),
            par.pair_counts(&ring).unwrap()
        );
        assert_eq!(
            seq.annsum_counts(&ring).unwrap(),
            par.annsum_counts(&ring).unwrap()
        );
        assert_eq!(
            seq.pair_counts(&ring).unwrap(),
            seq.annsum_counts(&ring).unwrap()
        );
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(frac(4, 16), frac(1, 4));
        assert!(!frac(4, 16).same_counts(&frac(1, 4)));
        assert!(frac(9, 32) < frac(20, 64));
        assert_eq!(frac(3, 4).product(&frac(5, 9)).to_string(), "5/12");
        assert_eq!(frac(15, 36).to_decimal(12), "0.416666666667");
        assert_eq!(frac(1, 4).to_decimal(12), "0.25");
        assert_eq!(frac(0, 4).to_decimal(12), "0");
        assert_eq!(frac(4, 4).to_decimal(12), "1");
        assert_eq!(frac(1, 3000).to_decimal(3), "0.000333");
        assert_eq!(frac(2, 3).to_decimal(2), "0.67");
    }
}
