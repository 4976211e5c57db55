use serde::{Deserialize, Serialize};

use super::RingError;
use crate::exec::{self, Execution};

/// Largest Cayley table accepted; the associativity audit is cubic.
pub const MAX_TABLE_SIZE: usize = 256;

/// On-disk table-ring format: row-major index tables, element 0 is zero.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableJson {
    pub size: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// Audited addition and multiplication tables.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    size: usize,
    one: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    source: Option<String>,
}

impl CayleyTable {
    pub fn from_json(json: &str, source: Option<String>) -> Result<Self, RingError> {
        let raw: TableJson = serde_json::from_str(json)
            .map_err(|e| RingError::TableAudit(format!("malformed JSON: {e}")))?;
        Self::new(raw, source)
    }

    /// Validates shapes and runs the full axiom audit.
    pub fn new(raw: TableJson, source: Option<String>) -> Result<Self, RingError> {
        let n = raw.size;
        if n > MAX_TABLE_SIZE {
            return Err(RingError::TableTooLarge(n));
        }
        if n < 2 {
            return Err(RingError::TrivialRing);
        }
        let audit = |msg: String| Err(RingError::TableAudit(msg));
        if raw.one >= n {
            return audit(format!("identity index {} out of range", raw.one));
        }
        let flatten = |name: &str, rows: &[Vec<usize>]| -> Result<Vec<u16>, RingError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(RingError::TableAudit(format!(
                    "{name} table is not {n} x {n}"
                )));
            }
            if let Some(bad) = rows.iter().flatten().find(|&&v| v >= n) {
                return Err(RingError::TableAudit(format!(
                    "{name} table entry {bad} out of range"
                )));
            }
            Ok(rows.iter().flatten().map(|&v| v as u16).collect())
        };
        let add = flatten("addition", &raw.add)?;
        let mul = flatten("multiplication", &raw.mul)?;
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let m = |x: usize, y: usize| mul[x * n + y] as usize;

        let mut neg = vec![0u16; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            if a(0, x) != x || a(x, 0) != x {
                return audit(format!("element 0 is not an additive identity at {x}"));
            }
            match (0..n).find(|&y| a(x, y) == 0) {
                Some(y) => *slot = y as u16,
                None => return audit(format!("element {x} has no additive inverse")),
            }
            if m(raw.one, x) != x || m(x, raw.one) != x {
                return audit(format!(
                    "element {} is not a two-sided identity at {x}",
                    raw.one
                ));
            }
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return audit(format!("addition is not commutative at ({x}, {y})"));
                }
            }
        }
        let failures = exec::map_indices(n, Execution::Parallel, |x| {
            for y in 0..n {
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Some(format!("addition is not associative at ({x}, {y}, {z})"));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Some(format!(
                            "multiplication is not associative at ({x}, {y}, {z})"
                        ));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Some(format!("left distributivity fails at ({x}, {y}, {z})"));
                    }
                    if m(a(y, z), x) != a(m(y, x), m(z, x)) {
                        return Some(format!("right distributivity fails at ({x}, {y}, {z})"));
                    }
                }
            }
            None
        });
        if let Some(msg) = failures.into_iter().flatten().next() {
            return audit(msg);
        }
        Ok(CayleyTable {
            size: n,
            one: raw.one,
            add,
            mul,
            neg,
            source,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub(crate) fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub(crate) fn same_tables(&self, other: &CayleyTable) -> bool {
        self.size == other.size
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    /// Back to the JSON schema.
    pub fn to_json(&self) -> TableJson {
        let rows = |t: &[u16]| {
            t.chunks(self.size)
                .map(|r| r.iter().map(|&v| v as usize).collect())
                .collect()
        };
        TableJson {
            size: self.size,
            one: self.one,
            add: rows(&self.add),
            mul: rows(&self.mul),
        }
    }
}
