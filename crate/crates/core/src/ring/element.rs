use std::fmt;

use super::{digits_lsf, digits_msf, pack_lsf, pack_msf, Construction, Ring, RingError};
use crate::finfield::FieldElement;

/// Structural view of a ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementForm {
    Residue(u64),
    Field(FieldElement),
    /// Rows of entries.
    Matrix(Vec<Vec<FieldElement>>),
    /// Coefficients over the base ring, constant term first.
    Poly(Vec<ElementForm>),
    /// `(a, v)` in a trivial extension.
    Pair(FieldElement, Vec<FieldElement>),
    Tuple(Vec<ElementForm>),
    /// Bare index of a table ring.
    Raw(usize),
    /// A coset, shown by its minimal representative.
    Coset(Box<ElementForm>),
}

fn field_literal(x: &FieldElement, nested: bool) -> String {
    if x.coeffs().len() == 1 {
        x.coeffs()[0].to_string()
    } else if nested {
        format!("({x})")
    } else {
        x.to_string()
    }
}

fn list_literal(parts: Vec<String>, nested: bool) -> String {
    let body = parts.join(",");
    if nested && parts.len() > 1 {
        format!("({body})")
    } else {
        body
    }
}

impl ElementForm {
    /// The element-literal syntax accepted by the parser.
    pub fn literal(&self, nested: bool) -> String {
        match self {
            ElementForm::Residue(n) => n.to_string(),
            ElementForm::Field(x) => field_literal(x, nested),
            ElementForm::Matrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let entries: Vec<String> =
                            r.iter().map(|x| field_literal(x, true)).collect();
                        format!("[{}]", entries.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            ElementForm::Poly(cs) => {
                list_literal(cs.iter().map(|c| c.literal(true)).collect(), nested)
            }
            ElementForm::Pair(a, v) => {
                let mut parts = vec![field_literal(a, true)];
                parts.extend(v.iter().map(|x| field_literal(x, true)));
                list_literal(parts, nested)
            }
            ElementForm::Tuple(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.literal(true)).collect();
                format!("({})", parts.join(","))
            }
            ElementForm::Raw(i) => format!("#{i}"),
            ElementForm::Coset(rep) => rep.literal(nested),
        }
    }
}

impl fmt::Display for ElementForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal(false))
    }
}

impl Ring {
    /// Structural form of the element with the given index.
    pub fn decode(&self, index: usize) -> ElementForm {
        assert!(index < self.size, "element index out of range");
        match &self.kind {
            Construction::ZMod(_) => ElementForm::Residue(index as u64),
            Construction::Field(f) => ElementForm::Field(f.element_at(index)),
            Construction::Matrix { dim, field } => {
                let entries = digits_msf(index, field.order() as usize, dim * dim);
                ElementForm::Matrix(
                    entries
                        .chunks(*dim)
                        .map(|row| row.iter().map(|&e| field.element_at(e)).collect())
                        .collect(),
                )
            }
            Construction::PolyQuotient { base, modulus } => {
                let cs = digits_lsf(index, base.size(), modulus.len() - 1);
                ElementForm::Poly(cs.into_iter().map(|c| base.decode(c)).collect())
            }
            Construction::TrivialExtension { field, rank } => {
                let d = digits_msf(index, field.order() as usize, rank + 1);
                ElementForm::Pair(
                    field.element_at(d[0]),
                    d[1..].iter().map(|&e| field.element_at(e)).collect(),
                )
            }
            Construction::Product(fs) => ElementForm::Tuple(
                self.split_product(fs, index)
                    .into_iter()
                    .zip(fs)
                    .map(|(x, f)| f.decode(x))
                    .collect(),
            ),
            Construction::Table(_) => ElementForm::Raw(index),
            Construction::Quotient(q) => {
                ElementForm::Coset(Box::new(q.parent.decode(q.reps[index])))
            }
        }
    }

    /// Canonical index of a structural form. A coset form may carry any
    /// member of the coset.
    pub fn encode(&self, form: &ElementForm) -> Result<usize, RingError> {
        let bad = |what: &str| Err(RingError::BadForm(format!("{what} for ring {self}")));
        let field_index = |x: &FieldElement, field: &crate::finfield::FieldDescriptor| {
            if x.field() == field {
                Ok(x.index())
            } else {
                Err(RingError::BadForm(format!(
                    "entry from GF({}) in ring {self}",
                    x.field().order()
                )))
            }
        };
        if let ElementForm::Raw(i) = form {
            return self.element(*i).map(|e| e.index());
        }
        match (&self.kind, form) {
            (Construction::ZMod(n), ElementForm::Residue(r)) if r < n => Ok(*r as usize),
            (Construction::Field(f), ElementForm::Field(x)) => field_index(x, f),
            (Construction::Matrix { dim, field }, ElementForm::Matrix(rows)) => {
                if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                    return bad("matrix of wrong shape");
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|x| field_index(x, field))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(pack_msf(&entries, field.order() as usize))
            }
            (Construction::PolyQuotient { base, modulus }, ElementForm::Poly(cs)) => {
                let d = modulus.len() - 1;
                if cs.len() > d {
                    return bad("polynomial of too high degree");
                }
                let mut digits = cs
                    .iter()
                    .map(|c| base.encode(c))
                    .collect::<Result<Vec<_>, _>>()?;
                digits.resize(d, 0);
                Ok(pack_lsf(&digits, base.size()))
            }
            (Construction::TrivialExtension { field, rank }, ElementForm::Pair(a, v)) => {
                if v.len() != *rank {
                    return bad("vector part of wrong length");
                }
                let mut digits = vec![field_index(a, field)?];
                for x in v {
                    digits.push(field_index(x, field)?);
                }
                Ok(pack_msf(&digits, field.order() as usize))
            }
            (Construction::Product(fs), ElementForm::Tuple(cs)) if cs.len() == fs.len() => {
                let parts = fs
                    .iter()
                    .zip(cs)
                    .map(|(f, c)| f.encode(c))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self::join_product(fs, &parts))
            }
            (Construction::Quotient(q), ElementForm::Coset(rep)) => {
                Ok(q.coset_of(q.parent.encode(rep)?))
            }
            (Construction::Quotient(q), other) => Ok(q.coset_of(q.parent.encode(other)?)),
            _ => bad("form does not match construction"),
        }
    }
}

/// An element together with the ring it lives in.
#[derive(Clone, Copy)]
pub struct RingElement<'r> {
    ring: &'r Ring,
    index: usize,
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.index == other.index
    }
}

impl Eq for RingElement<'_> {}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} = {}", self.index, self.form())
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

impl<'r> RingElement<'r> {
    pub(crate) fn new(ring: &'r Ring, index: usize) -> Self {
        Self { ring, index }
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn form(&self) -> ElementForm {
        self.ring.decode(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_ring(&self, other: &RingElement<'_>) -> Result<(), RingError> {
        if std::ptr::eq(self.ring, other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::MixedRings)
        }
    }

    pub fn add(&self, other: &RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(other)?;
        Ok(Self::new(self.ring, self.ring.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(other)?;
        Ok(Self::new(self.ring, self.ring.sub(self.index, other.index)))
    }

    pub fn mul(&self, other: &RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(other)?;
        Ok(Self::new(self.ring, self.ring.mul(self.index, other.index)))
    }

    pub fn neg(&self) -> RingElement<'r> {
        Self::new(self.ring, self.ring.neg(self.index))
    }
}
