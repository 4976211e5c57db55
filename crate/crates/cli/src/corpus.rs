//! The built-in ring corpus and custom corpus files.

use std::path::Path;
use std::sync::Arc;

use ringprob::{parse_ring, Ring};

use crate::CliError;

/// Upper-triangular 2x2 matrices over GF(2), the non-commutative table
/// member of the default corpus.
pub const UPPER_TRIANGULAR_JSON: &str = include_str!("../fixtures/upper_triangular_f2.json");

/// Where the fixture lives in the source tree. Used as the table source so
/// that its spec string can be parsed back.
pub const UPPER_TRIANGULAR_PATH: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/fixtures/upper_triangular_f2.json"
);

pub const DEFAULT_SPECS: [&str; 27] = [
    "Z2",
    "Z3",
    "Z4",
    "Z6",
    "Z8",
    "Z9",
    "Z12",
    "Z27",
    "GF2",
    "GF3",
    "GF4",
    "GF9",
    "chain(2,2)",
    "chain(2,3)",
    "chain(3,2)",
    "chain(3,3)",
    "GR(2,2,2)",
    "M1(GF2)",
    "M2(GF2)",
    "M2(GF3)",
    "M3(GF2)",
    "triv(2,1)",
    "triv(2,2)",
    "triv(2,3)",
    "triv(3,2)",
    "Z2 x Z4",
    "Z2 x M2(GF2)",
];

/// A corpus ring with the name it is reported under.
#[derive(Clone, Debug)]
pub struct CorpusRing {
    pub name: String,
    pub ring: Arc<Ring>,
}

pub fn upper_triangular() -> Arc<Ring> {
    Ring::table_from_json(
        UPPER_TRIANGULAR_JSON,
        Some(UPPER_TRIANGULAR_PATH.to_string()),
    )
    .expect("the checked-in fixture is a ring")
}

pub fn default_corpus() -> Vec<CorpusRing> {
    let mut rings: Vec<CorpusRing> = DEFAULT_SPECS
        .iter()
        .map(|spec| CorpusRing {
            name: spec.replace(' ', ""),
            ring: parse_ring(spec).expect("built-in corpus specs parse"),
        })
        .collect();
    rings.push(CorpusRing {
        name: "UT2(GF2)".into(),
        ring: upper_triangular(),
    });
    rings
}

/// `default` or the path of a JSON array of ring specs.
pub fn load_corpus(arg: &str) -> Result<Vec<CorpusRing>, CliError> {
    if arg == "default" {
        return Ok(default_corpus());
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Io {
        path: arg.to_string(),
        message: e.to_string(),
    })?;
    let specs: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("corpus file {arg}: {e}")))?;
    specs
        .iter()
        .map(|spec| {
            Ok(CorpusRing {
                name: spec.split_whitespace().collect(),
                ring: parse_ring(spec)?,
            })
        })
        .collect()
}
