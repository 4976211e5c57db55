//! Command implementations behind the `ringprob` binary. Each command
//! returns its full output as a string so it can be tested without a
//! process boundary.

pub mod corpus;
pub mod oracle;
pub mod verify;

use std::fmt::Write as _;

use ringprob::closedform::{
    matrix_rank, prob_auto, prob_matrix_formula, Formula, FormulaError, MatrixClass,
};
use ringprob::{
    parse_element, parse_ring, Construction, Enumerator, Execution, ParseError, ProbError,
    ProbFraction, Ring, RingError, StructureReport, DEFAULT_SIZE_CAP,
};
use serde_json::{json, Value};
use thiserror::Error;

pub use verify::{Format, SuiteId, VerifyReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ring has {size} elements, above the cap of {cap}; pass --force to enumerate anyway")]
    SizeCap { size: usize, cap: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Formula(FormulaError),
    #[error("no closed form applies to this element; use --method auto or annsum")]
    NoClosedForm,
}

impl From<ProbError> for CliError {
    fn from(e: ProbError) -> Self {
        match e {
            ProbError::SizeCapExceeded { size, cap } => CliError::SizeCap { size, cap },
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::Enumeration(p) => p.into(),
            other => CliError::Formula(other),
        }
    }
}

impl CliError {
    /// 2 for bad input, 3 for a size-cap refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SizeCap { .. } => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Method {
    #[default]
    Auto,
    Brute,
    Annsum,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum SpectrumFormat {
    #[default]
    Json,
    Csv,
    Table,
}

/// Options shared by every command.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub force: bool,
    pub exec: Execution,
}

impl Options {
    fn cap(&self) -> usize {
        if self.force {
            usize::MAX
        } else {
            DEFAULT_SIZE_CAP
        }
    }

    fn enumerator(&self) -> Enumerator {
        Enumerator::new(self.cap(), self.exec)
    }

    fn check_cap(&self, ring: &Ring) -> Result<(), CliError> {
        if ring.size() > self.cap() {
            return Err(CliError::SizeCap {
                size: ring.size(),
                cap: self.cap(),
            });
        }
        Ok(())
    }
}

fn ring_name(ring: &Ring, input: &str) -> String {
    ring.spec_string()
        .unwrap_or_else(|| input.trim().to_string())
}

fn decimal(f: &ProbFraction) -> String {
    f.to_decimal(12)
}

/// `prob`: JSON with the hit count, exact fraction and decimal.
pub fn cmd_prob(
    spec: &str,
    x: &str,
    method: Method,
    explain: bool,
    opts: Options,
) -> Result<String, CliError> {
    let ring = parse_ring(spec)?;
    let xi = parse_element(&ring, x)?;
    let e = opts.enumerator();
    let mut explanation = None;
    let value = match method {
        Method::Brute => e.prob_brute(&ring, xi)?,
        Method::Annsum => e.prob_annsum(&ring, xi)?,
        Method::Auto | Method::Formula => {
            let result = match ring.construction() {
                // The rank formula needs no structure analysis, so it also
                // serves matrix rings above the cap.
                Construction::Matrix { dim, field } => {
                    let rank = matrix_rank(&ring, xi)? as u32;
                    let mut r =
                        prob_matrix_formula(MatrixClass::new(field.order(), *dim as u32, rank)?);
                    r.hypotheses.insert(0, format!("x has rank {rank}"));
                    r
                }
                _ => {
                    opts.check_cap(&ring)?;
                    prob_auto(&ring, xi, &e)?
                }
            };
            if method == Method::Formula && result.formula == Formula::AnnihilatorSum {
                return Err(CliError::NoClosedForm);
            }
            explanation = Some(json!({
                "formula": result.formula.name(),
                "statement": result.formula.description(),
                "hypotheses": result.hypotheses,
            }));
            result.value
        }
    };
    let mut out = json!({
        "ring": ring_name(&ring, spec),
        "size": ring.size(),
        "x": ring.decode(xi).to_string(),
        "hits": value.hits().to_string(),
        "total": value.total().to_string(),
        "fraction": format!("{}/{}", value.hits(), value.total()),
        "decimal": decimal(&value),
    });
    if explain {
        out["explain"] = explanation.unwrap_or_else(|| {
            json!({
                "formula": match method {
                    Method::Brute => "pair-count",
                    _ => Formula::AnnihilatorSum.name(),
                },
                "statement": "enumeration",
                "hypotheses": [],
            })
        });
    }
    Ok(serde_json::to_string_pretty(&out).unwrap() + "\n")
}

/// `spectrum`: every class of elements sharing a label and a probability.
pub fn cmd_spectrum(spec: &str, format: SpectrumFormat, opts: Options) -> Result<String, CliError> {
    let ring = parse_ring(spec)?;
    let report = opts.enumerator().spectrum(&ring)?;
    let total = report.total();
    let rows: Vec<(String, String, usize, String, String)> = report
        .entries
        .iter()
        .map(|e| {
            (
                e.label.clone(),
                ring.decode(e.representative).to_string(),
                e.class_size(),
                e.value.hits().to_string(),
                decimal(&e.value),
            )
        })
        .collect();
    Ok(match format {
        SpectrumFormat::Json => {
            let classes: Vec<Value> = rows
                .iter()
                .zip(&report.entries)
                .map(|((label, rep, members, hits, dec), e)| {
                    json!({
                        "label": label,
                        "representative": rep,
                        "members": members,
                        "hits": hits,
                        "fraction": format!("{hits}/{total}"),
                        "reduced": e.value.to_string(),
                        "decimal": dec,
                    })
                })
                .collect();
            let out = json!({
                "ring": ring_name(&ring, spec),
                "size": ring.size(),
                "total": total.to_string(),
                "classes": classes,
            });
            serde_json::to_string_pretty(&out).unwrap() + "\n"
        }
        SpectrumFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "label",
                "representative",
                "members",
                "hits",
                "total",
                "fraction",
                "decimal",
            ])
            .unwrap();
            let total = total.to_string();
            for (label, rep, members, hits, dec) in &rows {
                let fraction = format!("{hits}/{total}");
                w.write_record([
                    label,
                    rep,
                    &members.to_string(),
                    hits,
                    &total,
                    &fraction,
                    dec,
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        SpectrumFormat::Table => {
            let header = ["label", "representative", "members", "hits", "decimal"];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|(l, r, m, h, d)| [l.clone(), r.clone(), m.to_string(), h.clone(), d.clone()])
                .collect();
            let widths: Vec<usize> = (0..5)
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let mut out = String::new();
            writeln!(
                out,
                "{} (|R| = {}, {} pairs)",
                ring_name(&ring, spec),
                ring.size(),
                total
            )
            .unwrap();
            let line = |cols: [&str; 5]| -> String {
                let parts: Vec<String> = cols
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:w$}"))
                    .collect();
                parts.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(header)).unwrap();
            for c in &cells {
                writeln!(out, "{}", line([&c[0], &c[1], &c[2], &c[3], &c[4]])).unwrap();
            }
            out
        }
    })
}

pub fn structure_json(report: &StructureReport) -> Value {
    json!({
        "size": report.size(),
        "units": report.units().len(),
        "zero_divisors": report.zero_divisors().len(),
        "radical_chain_sizes": report.radical_chain_sizes(),
        "nilpotency_index": report.nilpotency_index(),
        "is_local": report.is_local(),
        "q": report.q(),
        "n": report.n(),
        "is_max_chain": report.is_max_chain(),
        "is_j2_zero": report.is_j2_zero(),
    })
}

/// `structure`: the structure report as JSON.
pub fn cmd_structure(spec: &str, opts: Options) -> Result<String, CliError> {
    let ring = parse_ring(spec)?;
    opts.check_cap(&ring)?;
    let report = ringprob::structure::analyze(&ring, opts.exec);
    Ok(serde_json::to_string_pretty(&structure_json(&report)).unwrap() + "\n")
}

/// `verify`: runs suites over a corpus. The flag is true when every case
/// passed or was skipped.
pub fn cmd_verify(
    suites: &[SuiteId],
    corpus: &str,
    format: Format,
    opts: Options,
) -> Result<(String, bool), CliError> {
    let rings = corpus::load_corpus(corpus)?;
    for r in &rings {
        opts.check_cap(&r.ring)?;
    }
    let suites = if suites.is_empty() {
        &SuiteId::ALL[..]
    } else {
        suites
    };
    let report = verify::Verifier::new(opts.cap(), opts.exec).run(suites, &rings)?;
    Ok((report.render(format), report.all_passed()))
}
