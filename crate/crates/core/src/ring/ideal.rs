use std::fmt;

use super::{Ring, RingError};

/// Which multiplications an ideal is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealKind {
    TwoSided,
    /// Closed under `x -> x r` (e.g. right annihilators, `aR`).
    Right,
    /// Closed under `x -> r x`.
    Left,
}

/// An additive subgroup of a ring closed under multiplication by ring
/// elements on the side(s) given by its [`IdealKind`].
#[derive(Clone)]
pub struct Ideal {
    kind: IdealKind,
    mask: Vec<bool>,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.mask.len() == other.mask.len()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal<{:?}>{:?}", self.kind, self.members)
    }
}

impl Ideal {
    /// Validates `members` as a two-sided ideal of `ring`.
    pub fn new(ring: &Ring, members: impl IntoIterator<Item = usize>) -> Result<Ideal, RingError> {
        let n = ring.size();
        let mut mask = vec![false; n];
        for m in members {
            if m >= n {
                return Err(RingError::IndexOutOfRange { index: m, size: n });
            }
            mask[m] = true;
        }
        let ideal = Self::from_mask(ring, IdealKind::TwoSided, mask);
        if !ideal.contains(0) {
            return Err(RingError::NotAnIdeal("does not contain 0".into()));
        }
        for &a in &ideal.members {
            if !ideal.contains(ring.neg(a)) {
                return Err(RingError::NotAnIdeal(format!(
                    "not closed under negation at {a}"
                )));
            }
            for &b in &ideal.members {
                if !ideal.contains(ring.add(a, b)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under addition at ({a}, {b})"
                    )));
                }
            }
        }
        ideal.check_two_sided(ring)?;
        Ok(ideal)
    }

    /// Builds an ideal of the given kind from a membership mask that the
    /// caller knows to be closed.
    pub(crate) fn from_mask(ring: &Ring, kind: IdealKind, mask: Vec<bool>) -> Ideal {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let mut builder = SubgroupBuilder::new(ring);
        for &m in &members {
            builder.insert(m);
        }
        Ideal {
            kind,
            mask,
            members,
            gens: builder.into_generators(),
        }
    }

    fn from_builder(builder: SubgroupBuilder<'_>, kind: IdealKind) -> Ideal {
        let mut members = builder.members;
        members.sort_unstable();
        Ideal {
            kind,
            mask: builder.mask,
            members,
            gens: builder.gens,
        }
    }

    /// The zero ideal.
    pub fn zero(ring: &Ring) -> Ideal {
        let mut mask = vec![false; ring.size()];
        mask[0] = true;
        Ideal {
            kind: IdealKind::TwoSided,
            mask,
            members: vec![0],
            gens: vec![],
        }
    }

    /// The ideal generated by `seeds` on the given side(s): the additive
    /// closure of `R seeds R`, `seeds R` or `R seeds`.
    pub fn generated(ring: &Ring, seeds: &[usize], kind: IdealKind) -> Ideal {
        let ring_gens = ring.additive_generators();
        let mut builder = SubgroupBuilder::new(ring);
        let mut queue: Vec<usize> = seeds.to_vec();
        while let Some(h) = queue.pop() {
            if !builder.insert(h) {
                continue;
            }
            // Products with additive generators of R suffice by bilinearity.
            for &a in ring_gens {
                if kind != IdealKind::Right {
                    queue.push(ring.mul(a, h));
                }
                if kind != IdealKind::Left {
                    queue.push(ring.mul(h, a));
                }
            }
        }
        Self::from_builder(builder, kind)
    }

    /// Smallest two-sided ideal containing `g`.
    pub fn principal(ring: &Ring, g: usize) -> Ideal {
        Self::generated(ring, &[g], IdealKind::TwoSided)
    }

    /// Additive subgroup spanned by `a b` for `a` in `self` and `b` in
    /// `other`. For two-sided ideals this is the ideal product.
    pub fn product(&self, ring: &Ring, other: &Ideal) -> Ideal {
        let mut builder = SubgroupBuilder::new(ring);
        for &a in &self.gens {
            for &b in &other.gens {
                builder.insert(ring.mul(a, b));
            }
        }
        let kind = if self.kind == IdealKind::TwoSided && other.kind == IdealKind::TwoSided {
            IdealKind::TwoSided
        } else {
            IdealKind::Right
        };
        Self::from_builder(builder, kind)
    }

    /// Checks closure under left and right multiplication by `ring`.
    pub(crate) fn check_two_sided(&self, ring: &Ring) -> Result<(), RingError> {
        for &g in &self.gens {
            for &a in ring.additive_generators() {
                if !self.contains(ring.mul(a, g)) || !self.contains(ring.mul(g, a)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under multiplication at ({a}, {g})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    /// Members in ascending index order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// A generating set of the additive group of the ideal.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    /// Never true: every ideal contains 0.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order of the ring the ideal lives in.
    pub fn ring_size(&self) -> usize {
        self.mask.len()
    }
}

/// Incremental generation of additive subgroups.
pub(crate) struct SubgroupBuilder<'r> {
    ring: &'r Ring,
    mask: Vec<bool>,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl<'r> SubgroupBuilder<'r> {
    pub(crate) fn new(ring: &'r Ring) -> Self {
        let mut mask = vec![false; ring.size()];
        mask[0] = true;
        Self {
            ring,
            mask,
            members: vec![0],
            gens: vec![],
        }
    }

    /// Extends the subgroup `S` to `<S, h>` as the union of cosets
    /// `S + m h`. Returns false if `h` was already a member.
    pub(crate) fn insert(&mut self, h: usize) -> bool {
        if self.mask[h] {
            return false;
        }
        let base = self.members.clone();
        let mut cur = h;
        while !self.mask[cur] {
            for &s in &base {
                let e = self.ring.add(s, cur);
                self.mask[e] = true;
                self.members.push(e);
            }
            cur = self.ring.add(cur, h);
        }
        self.gens.push(h);
        true
    }

    pub(crate) fn members(&self) -> &[usize] {
        &self.members
    }

    pub(crate) fn into_generators(self) -> Vec<usize> {
        self.gens
    }
}
