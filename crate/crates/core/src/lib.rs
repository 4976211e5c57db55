//! Exact computational algebra for finite unital rings.
//!
//! The crate builds concrete finite rings (residue rings, finite fields,
//! matrix rings, chain and Galois rings, trivial extensions, products,
//! Cayley-table rings and quotients), computes their structure (units,
//! zero-divisors, Jacobson radical, locality) and evaluates the
//! multiplication probability
//!
//! ```text
//! Prob_x(R) = |{(a, b) in R x R : ab = x}| / |R|^2
//! ```
//!
//! both by enumeration and from closed forms that depend only on structural
//! parameters.
//!
//! Enumeration loops run on rayon when the `parallel` feature is enabled
//! (the default); every engine also has a sequential path selected through
//! [`Execution`], and results never depend on the worker count.

pub mod closedform;
pub mod exec;
pub mod finfield;
pub mod parse;
pub mod probability;
pub mod ring;
pub mod structure;

pub use closedform::{Formula, FormulaError, FormulaResult, MatrixClass};
pub use exec::Execution;
pub use finfield::{FieldDescriptor, FieldElement, FieldError};
pub use parse::{parse_element, parse_ring, ParseError};
pub use probability::{Enumerator, ProbError, ProbFraction, SpectrumReport};
pub use ring::{Construction, ElementForm, Ideal, IdealKind, Ring, RingElement, RingError};
pub use structure::StructureReport;

/// Default refusal threshold for enumeration commands, in ring elements.
pub const DEFAULT_SIZE_CAP: usize = 4096;
