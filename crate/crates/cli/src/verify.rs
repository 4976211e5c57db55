//! Verification suites: each one checks a single closed form, bound or
//! structural statement against brute-force enumeration on the corpus.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use ringprob::closedform::{
    general_bounds, local_bounds, local_equality_predicates, matrix_rank, prob_chain_formula,
    prob_j2zero_formula, prob_matrix_formula, prob_zn, subspace_count, zero_extremality_predicate,
    BoundClass, MatrixClass,
};
use ringprob::structure::{self, StructureReport};
use ringprob::{exec, Construction, Enumerator, Execution, Ideal, ProbFraction, Ring};
use serde_json::{json, Value};

use crate::corpus::CorpusRing;
use crate::oracle;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    ZeroDivisorSymmetry,
    AnnihilatorSum,
    UnitLaw,
    ProductLaw,
    QuotientMonotone,
    SubspaceCount,
    MatrixRank,
    IdealOrders,
    LocalBounds,
    LocalEquality,
    ZeroExtremal,
    UnitPlusRadical,
    ChainLayer,
    ResidueCrt,
    SquareZero,
}

impl SuiteId {
    pub const ALL: [SuiteId; 15] = [
        SuiteId::ZeroDivisorSymmetry,
        SuiteId::AnnihilatorSum,
        SuiteId::UnitLaw,
        SuiteId::ProductLaw,
        SuiteId::QuotientMonotone,
        SuiteId::SubspaceCount,
        SuiteId::MatrixRank,
        SuiteId::IdealOrders,
        SuiteId::LocalBounds,
        SuiteId::LocalEquality,
        SuiteId::ZeroExtremal,
        SuiteId::UnitPlusRadical,
        SuiteId::ChainLayer,
        SuiteId::ResidueCrt,
        SuiteId::SquareZero,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SuiteId::ZeroDivisorSymmetry => "lemma21",
            SuiteId::AnnihilatorSum => "lemma23",
            SuiteId::UnitLaw => "lemma24",
            SuiteId::ProductLaw => "lemma25",
            SuiteId::QuotientMonotone => "lemma26",
            SuiteId::SubspaceCount => "lemma31",
            SuiteId::MatrixRank => "thm32",
            SuiteId::IdealOrders => "lemma41",
            SuiteId::LocalBounds => "thm42",
            SuiteId::LocalEquality => "cor43",
            SuiteId::ZeroExtremal => "cor44",
            SuiteId::UnitPlusRadical => "lemma45",
            SuiteId::ChainLayer => "thm46",
            SuiteId::ResidueCrt => "remark_zn",
            SuiteId::SquareZero => "thm48",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            SuiteId::ZeroDivisorSymmetry => "left and right zero-divisors coincide",
            SuiteId::AnnihilatorSum => "pair count equals annihilator sum",
            SuiteId::UnitLaw => "unit characterization and general bounds",
            SuiteId::ProductLaw => "multiplicativity over direct products",
            SuiteId::QuotientMonotone => "quotients do not decrease probabilities",
            SuiteId::SubspaceCount => "subspaces containing a fixed subspace",
            SuiteId::MatrixRank => "matrix rings by rank",
            SuiteId::IdealOrders => "ideal orders in local rings are powers of q",
            SuiteId::LocalBounds => "local-ring bounds",
            SuiteId::LocalEquality => "local-ring equality cases agree",
            SuiteId::ZeroExtremal => "extremal Prob_0 iff J^2 = 0",
            SuiteId::UnitPlusRadical => "unit plus radical is a unit",
            SuiteId::ChainLayer => "chain rings by radical layer",
            SuiteId::ResidueCrt => "Z_n through prime-power factors",
            SuiteId::SquareZero => "local rings with J^2 = 0",
        }
    }
}

impl FromStr for SuiteId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.id() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail { expected: String, actual: String },
    Skip { reason: String },
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub ring: String,
    pub case: String,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: SuiteId,
    pub cases: Vec<CaseResult>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl VerifyReport {
    fn cases(&self) -> impl Iterator<Item = (SuiteId, &CaseResult)> {
        self.suites
            .iter()
            .flat_map(|s| s.cases.iter().map(move |c| (s.id, c)))
    }

    /// `(passed, failed, skipped)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        self.cases()
            .fold((0, 0, 0), |(p, f, s), (_, c)| match c.status {
                Status::Pass => (p + 1, f, s),
                Status::Fail { .. } => (p, f + 1, s),
                Status::Skip { .. } => (p, f, s + 1),
            })
    }

    pub fn all_passed(&self) -> bool {
        self.counts().1 == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => serde_json::to_string_pretty(&self.to_json()).unwrap() + "\n",
            Format::Csv => self.render_csv(),
        }
    }

    pub fn to_json(&self) -> Value {
        let (passed, failed, skipped) = self.counts();
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let cases: Vec<Value> = s
                    .cases
                    .iter()
                    .map(|c| {
                        let mut v = json!({"ring": c.ring, "case": c.case});
                        match &c.status {
                            Status::Pass => v["status"] = json!("pass"),
                            Status::Fail { expected, actual } => {
                                v["status"] = json!("fail");
                                v["expected"] = json!(expected);
                                v["actual"] = json!(actual);
                            }
                            Status::Skip { reason } => {
                                v["status"] = json!("skip");
                                v["reason"] = json!(reason);
                            }
                        }
                        v
                    })
                    .collect();
                json!({"id": s.id.id(), "title": s.id.title(), "cases": cases})
            })
            .collect();
        json!({"suites": suites, "passed": passed, "failed": failed, "skipped": skipped})
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "suite", "ring", "case", "status", "expected", "actual", "reason",
        ])
        .unwrap();
        for (id, c) in self.cases() {
            let (status, expected, actual, reason) = match &c.status {
                Status::Pass => ("pass", "", "", ""),
                Status::Fail { expected, actual } => {
                    ("fail", expected.as_str(), actual.as_str(), "")
                }
                Status::Skip { reason } => ("skip", "", "", reason.as_str()),
            };
            w.write_record([id.id(), &c.ring, &c.case, status, expected, actual, reason])
                .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn render_table(&self) -> String {
        let mut rings: Vec<&str> = Vec::new();
        for (_, c) in self.cases() {
            if !rings.contains(&c.ring.as_str()) {
                rings.push(&c.ring);
            }
        }
        let width = rings.iter().map(|r| r.len()).max().unwrap_or(4).max(4);
        let cols: Vec<usize> = self.suites.iter().map(|s| s.id.id().len().max(4)).collect();
        let mut out = String::new();
        write!(out, "{:width$}", "ring").unwrap();
        for (s, w) in self.suites.iter().zip(&cols) {
            write!(out, "  {:w$}", s.id.id()).unwrap();
        }
        out.push('\n');
        for ring in &rings {
            write!(out, "{ring:width$}").unwrap();
            for (s, w) in self.suites.iter().zip(&cols) {
                let mine: Vec<&Status> = s
                    .cases
                    .iter()
                    .filter(|c| c.ring == *ring)
                    .map(|c| &c.status)
                    .collect();
                let cell = if mine.is_empty() {
                    "."
                } else if mine.iter().any(|st| matches!(st, Status::Fail { .. })) {
                    "FAIL"
                } else if mine.iter().all(|st| matches!(st, Status::Skip { .. })) {
                    "skip"
                } else {
                    "pass"
                };
                write!(out, "  {cell:w$}").unwrap();
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        let failures: Vec<_> = self
            .cases()
            .filter_map(|(id, c)| match &c.status {
                Status::Fail { expected, actual } => Some((id, c, expected, actual)),
                _ => None,
            })
            .collect();
        if !failures.is_empty() {
            out.push_str("\nfailures:\n");
            for (id, c, expected, actual) in failures {
                writeln!(
                    out,
                    "  {} {} [{}]: expected {expected}, got {actual}",
                    id.id(),
                    c.ring,
                    c.case
                )
                .unwrap();
            }
        }
        let skips: Vec<_> = self
            .cases()
            .filter_map(|(id, c)| match &c.status {
                Status::Skip { reason } => Some((id, c, reason)),
                _ => None,
            })
            .collect();
        if !skips.is_empty() {
            out.push_str("\nskipped:\n");
            for (id, c, reason) in skips {
                writeln!(out, "  {} {}: {reason}", id.id(), c.ring).unwrap();
            }
        }
        let (p, f, s) = self.counts();
        writeln!(out, "\n{p} passed, {f} failed, {s} skipped").unwrap();
        out
    }
}

/// A corpus ring with its pair counts computed once.
struct Prepared<'a> {
    name: &'a str,
    ring: &'a Arc<Ring>,
    hits: Vec<u64>,
    total: BigUint,
}

impl Prepared<'_> {
    fn value(&self, x: usize) -> ProbFraction {
        ProbFraction::new(self.hits[x], self.total.clone())
    }

    fn report(&self) -> Arc<StructureReport> {
        structure::report(self.ring)
    }

    fn label(&self, x: usize) -> String {
        self.ring.decode(x).to_string()
    }

    fn case(&self, case: impl Into<String>, status: Status) -> CaseResult {
        CaseResult {
            ring: self.name.to_string(),
            case: case.into(),
            status,
        }
    }

    fn skip(&self, reason: impl Into<String>) -> Vec<CaseResult> {
        vec![self.case(
            "-",
            Status::Skip {
                reason: reason.into(),
            },
        )]
    }

    /// Compares `expected(x)` with the enumerated value on every `x` of a
    /// class and reports the first mismatch.
    fn class_case<F>(
        &self,
        case: String,
        xs: impl IntoIterator<Item = usize>,
        expected: F,
    ) -> Result<CaseResult, CliError>
    where
        F: Fn(usize) -> Result<ProbFraction, CliError>,
    {
        for x in xs {
            let want = expected(x)?;
            let got = self.value(x);
            if want != got {
                return Ok(self.case(
                    format!("{case}, x = {}", self.label(x)),
                    Status::Fail {
                        expected: show(&want),
                        actual: show(&got),
                    },
                ));
            }
        }
        Ok(self.case(case, Status::Pass))
    }

    fn bool_case(&self, case: &str, holds: bool) -> CaseResult {
        self.case(
            case,
            if holds {
                Status::Pass
            } else {
                Status::Fail {
                    expected: "true".into(),
                    actual: "false".into(),
                }
            },
        )
    }
}

fn show(f: &ProbFraction) -> String {
    format!("{}/{}", f.hits(), f.total())
}

fn within(v: &ProbFraction, (lo, hi): &(ProbFraction, ProbFraction)) -> Status {
    if lo <= v && v <= hi {
        Status::Pass
    } else {
        Status::Fail {
            expected: format!("[{}, {}]", show(lo), show(hi)),
            actual: show(v),
        }
    }
}

fn first_failure(
    xs: impl IntoIterator<Item = usize>,
    check: impl Fn(usize) -> Status,
) -> (Option<usize>, Status) {
    for x in xs {
        let st = check(x);
        if st != Status::Pass {
            return (Some(x), st);
        }
    }
    (None, Status::Pass)
}

/// Skip reason when the local-ring hypotheses fail.
fn local_gate(rep: &StructureReport, need_n2: bool) -> Option<String> {
    match rep.local_params() {
        None => Some("not a local ring".into()),
        Some((q, 1)) if need_n2 => Some(format!("n = 1 (R is GF({q})); needs n >= 2")),
        _ => None,
    }
}

fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pe = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pe *= p;
            }
            out.push(pe);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Maps an element to its components in a product decomposition.
type Splitter<'a> = Box<dyn Fn(usize) -> Vec<usize> + 'a>;

pub struct Verifier {
    enumerator: Enumerator,
    exec: Execution,
}

impl Verifier {
    pub fn new(cap: usize, exec: Execution) -> Self {
        Verifier {
            enumerator: Enumerator::new(cap, exec),
            exec,
        }
    }

    fn counts(&self, ring: &Ring) -> Result<Vec<u64>, CliError> {
        Ok(self.enumerator.pair_counts(ring)?)
    }

    fn values(&self, ring: &Ring) -> Result<Vec<ProbFraction>, CliError> {
        let total = BigUint::from(ring.size()) * BigUint::from(ring.size());
        Ok(self
            .counts(ring)?
            .into_iter()
            .map(|h| ProbFraction::new(h, total.clone()))
            .collect())
    }

    /// Runs the suites in the given order over the corpus. Rings are
    /// processed in parallel; results keep corpus order.
    pub fn run(&self, suites: &[SuiteId], corpus: &[CorpusRing]) -> Result<VerifyReport, CliError> {
        let prepared = exec::map_indices(corpus.len(), self.exec, |i| {
            let c = &corpus[i];
            let hits = self.counts(&c.ring)?;
            let n = BigUint::from(c.ring.size());
            Ok(Prepared {
                name: &c.name,
                ring: &c.ring,
                hits,
                total: &n * &n,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;
        let mut out = Vec::new();
        for &id in suites {
            let cases = if id == SuiteId::SubspaceCount {
                subspace_sweep()?
            } else {
                let per_ring = exec::map_items(&prepared, self.exec, |p| self.check(id, p));
                let mut cases = Vec::new();
                for r in per_ring {
                    cases.extend(r?);
                }
                cases
            };
            out.push(SuiteReport { id, cases });
        }
        Ok(VerifyReport { suites: out })
    }

    fn check(&self, id: SuiteId, p: &Prepared<'_>) -> Result<Vec<CaseResult>, CliError> {
        let ring = p.ring.as_ref();
        let n = ring.size();
        let rep = p.report();
        Ok(match id {
            SuiteId::ZeroDivisorSymmetry => vec![p.bool_case(
                "left and right zero-divisors coincide",
                structure::left_right_symmetry_check(ring),
            )],
            SuiteId::AnnihilatorSum => {
                let sum: u64 = p.hits.iter().sum();
                let mut cases = vec![p.case(
                    "hits sum to |R|^2",
                    if BigUint::from(sum) == p.total {
                        Status::Pass
                    } else {
                        Status::Fail {
                            expected: p.total.to_string(),
                            actual: sum.to_string(),
                        }
                    },
                )];
                let mut mismatch = None;
                for x in 0..n {
                    let brute = self.enumerator.prob_brute(ring, x)?;
                    let annsum = self.enumerator.prob_annsum(ring, x)?;
                    if !brute.same_counts(&annsum) {
                        mismatch = Some((x, brute, annsum));
                        break;
                    }
                }
                cases.push(match mismatch {
                    None => p.case("pair count = annihilator sum, all x", Status::Pass),
                    Some((x, brute, annsum)) => p.case(
                        format!("pair count = annihilator sum, x = {}", p.label(x)),
                        Status::Fail {
                            expected: show(&brute),
                            actual: show(&annsum),
                        },
                    ),
                });
                cases
            }
            SuiteId::UnitLaw => {
                let units = rep.units().len() as u64;
                let unit_value = ProbFraction::new(units, p.total.clone());
                let (bad, _) = first_failure(0..n, |x| {
                    if (p.hits[x] == units) == rep.is_unit(x) {
                        Status::Pass
                    } else {
                        Status::Skip {
                            reason: String::new(),
                        }
                    }
                });
                let mut cases = vec![match bad {
                    None => p.case("Prob_x = |R*|/|R|^2 iff x is a unit", Status::Pass),
                    Some(x) => p.case(
                        format!("Prob_x = |R*|/|R|^2 iff x is a unit, x = {}", p.label(x)),
                        Status::Fail {
                            expected: if rep.is_unit(x) {
                                show(&unit_value)
                            } else {
                                format!("!= {}", show(&unit_value))
                            },
                            actual: show(&p.value(x)),
                        },
                    ),
                }];
                cases.push(p.case(
                    "x = 0 within general bounds",
                    within(&p.value(0), &general_bounds(ring, BoundClass::Zero)),
                ));
                let nonunits: Vec<usize> = rep
                    .zero_divisors()
                    .iter()
                    .copied()
                    .filter(|&x| x != 0)
                    .collect();
                if nonunits.is_empty() {
                    cases.push(p.case(
                        "nonzero non-units within general bounds",
                        Status::Skip {
                            reason: "no nonzero non-units".into(),
                        },
                    ));
                } else {
                    let bounds = general_bounds(ring, BoundClass::NonzeroNonunit);
                    let (bad, st) = first_failure(nonunits, |x| within(&p.value(x), &bounds));
                    cases.push(match bad {
                        None => p.case("nonzero non-units within general bounds", st),
                        Some(x) => p.case(
                            format!(
                                "nonzero non-units within general bounds, x = {}",
                                p.label(x)
                            ),
                            st,
                        ),
                    });
                }
                cases
            }
            SuiteId::ProductLaw => self.product_cases(p)?,
            SuiteId::QuotientMonotone => self.quotient_cases(p)?,
            SuiteId::SubspaceCount => unreachable!("ring-independent suite"),
            SuiteId::MatrixRank => {
                let Construction::Matrix { dim, field } = ring.construction() else {
                    return Ok(p.skip("not a full matrix ring over a field"));
                };
                let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); dim + 1];
                for x in 0..n {
                    by_rank[matrix_rank(ring, x)?].push(x);
                }
                let mut cases = Vec::new();
                for (rank, xs) in by_rank.into_iter().enumerate() {
                    let cls = MatrixClass::new(field.order(), *dim as u32, rank as u32)?;
                    let value = prob_matrix_formula(cls).value;
                    let count = xs.len();
                    cases.push(p.class_case(
                        format!("rank {rank} ({count} elements)"),
                        xs,
                        |_| Ok(value.clone()),
                    )?);
                }
                cases
            }
            SuiteId::IdealOrders => match local_gate(&rep, false) {
                Some(reason) => p.skip(reason),
                None => vec![p.bool_case(
                    &format!("ideal orders are powers of q = {}", rep.q().unwrap()),
                    structure::ideal_size_power_check(ring).unwrap_or(false),
                )],
            },
            SuiteId::LocalBounds => match local_gate(&rep, true) {
                Some(reason) => p.skip(reason),
                None => {
                    let zero = local_bounds(ring, BoundClass::Zero)?;
                    let nonzero = local_bounds(ring, BoundClass::NonzeroNonunit)?;
                    let radical: Vec<usize> = rep
                        .radical()
                        .members()
                        .iter()
                        .copied()
                        .filter(|&x| x != 0)
                        .collect();
                    let (bad, st) = first_failure(radical, |x| within(&p.value(x), &nonzero));
                    vec![
                        p.case("x = 0", within(&p.value(0), &zero)),
                        match bad {
                            None => p.case("0 != x in J", st),
                            Some(x) => p.case(format!("0 != x in J, x = {}", p.label(x)), st),
                        },
                    ]
                }
            },
            SuiteId::LocalEquality => match local_gate(&rep, true) {
                Some(reason) => p.skip(reason),
                None => {
                    let preds = local_equality_predicates(ring)?;
                    let agree = preds.iter().all(|&b| b == preds[0]);
                    vec![p.case(
                        format!("four equality conditions agree ({})", preds[0]),
                        if agree {
                            Status::Pass
                        } else {
                            Status::Fail {
                                expected: "all equal".into(),
                                actual: format!("{preds:?}"),
                            }
                        },
                    )]
                }
            },
            SuiteId::ZeroExtremal => match local_gate(&rep, false) {
                Some(reason) => p.skip(reason),
                None => {
                    let (extremal, j2) = zero_extremality_predicate(ring)?;
                    vec![p.case(
                        format!("Prob_0 extremal iff J^2 = 0 ({j2})"),
                        if extremal == j2 {
                            Status::Pass
                        } else {
                            Status::Fail {
                                expected: format!("extremal = {j2}"),
                                actual: format!("extremal = {extremal}"),
                            }
                        },
                    )]
                }
            },
            SuiteId::UnitPlusRadical => vec![p.bool_case(
                "u + j is a unit for u in R*, j in J",
                structure::unit_plus_radical_check(ring),
            )],
            SuiteId::ChainLayer => match local_gate(&rep, false) {
                Some(reason) => p.skip(reason),
                None if !rep.is_max_chain() => {
                    p.skip(format!("J^{} = 0, not a chain ring", rep.n().unwrap() - 1))
                }
                None => {
                    let layers: BTreeSet<Option<usize>> =
                        (0..n).map(|x| rep.radical_layer(x)).collect();
                    let mut cases = Vec::new();
                    for layer in layers {
                        let name = match layer {
                            None => "x = 0".to_string(),
                            Some(0) => "units".to_string(),
                            Some(k) => format!("J^{k} \\ J^{}", k + 1),
                        };
                        let xs = (0..n).filter(|&x| rep.radical_layer(x) == layer);
                        cases.push(
                            p.class_case(name, xs, |x| Ok(prob_chain_formula(ring, x)?.value))?,
                        );
                    }
                    cases
                }
            },
            SuiteId::ResidueCrt => {
                let Construction::ZMod(m) = ring.construction() else {
                    return Ok(p.skip("not Z_n"));
                };
                vec![p.class_case("all x".into(), 0..n, |x| Ok(prob_zn(*m, x as u64)?.value))?]
            }
            SuiteId::SquareZero => match local_gate(&rep, false) {
                Some(reason) => p.skip(reason),
                None if !rep.is_j2_zero() => p.skip("J^2 != 0"),
                None => {
                    let radical = rep.radical();
                    let classes: [(&str, Vec<usize>); 3] = [
                        ("x = 0", vec![0]),
                        (
                            "0 != x in J",
                            radical
                                .members()
                                .iter()
                                .copied()
                                .filter(|&x| x != 0)
                                .collect(),
                        ),
                        ("units", rep.units().to_vec()),
                    ];
                    let mut cases = Vec::new();
                    for (name, xs) in classes {
                        if !xs.is_empty() {
                            cases.push(p.class_case(name.into(), xs, |x| {
                                Ok(prob_j2zero_formula(ring, x)?.value)
                            })?);
                        }
                    }
                    cases
                }
            },
        })
    }

    fn product_cases(&self, p: &Prepared<'_>) -> Result<Vec<CaseResult>, CliError> {
        let ring = p.ring.as_ref();
        let n = ring.size();
        let (factors, split): (Vec<Arc<Ring>>, Splitter<'_>) = match ring.construction() {
            Construction::Product(fs) => (
                fs.clone(),
                Box::new(|x| ring.product_components(x).unwrap()),
            ),
            Construction::ZMod(m) => {
                let moduli = prime_powers(*m);
                if moduli.len() < 2 {
                    return Ok(p.skip("Z_n with n a prime power is not a direct product"));
                }
                let factors = moduli
                    .iter()
                    .map(|&pe| Ring::zmod(pe))
                    .collect::<Result<Vec<_>, _>>()?;
                (
                    factors,
                    Box::new(move |x| moduli.iter().map(|&pe| x % pe as usize).collect()),
                )
            }
            _ => return Ok(p.skip("not a direct product")),
        };
        let factor_values = factors
            .iter()
            .map(|f| self.values(f))
            .collect::<Result<Vec<_>, _>>()?;
        let case = format!("Prob_x = product over {} factors, all x", factors.len());
        Ok(vec![p.class_case(case, 0..n, |x| {
            Ok(split(x)
                .iter()
                .zip(&factor_values)
                .fold(ProbFraction::new(1u8, 1u8), |acc, (&xi, vals)| {
                    acc.product(&vals[xi])
                }))
        })?])
    }

    fn quotient_cases(&self, p: &Prepared<'_>) -> Result<Vec<CaseResult>, CliError> {
        let ring = p.ring;
        let n = ring.size();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut cases = Vec::new();
        for g in 0..n {
            let ideal = Ideal::principal(ring, g);
            if ideal.len() == n || !seen.insert(ideal.members().to_vec()) {
                continue;
            }
            let quotient = Ring::quotient(ring, &ideal)?;
            let Construction::Quotient(data) = quotient.construction() else {
                unreachable!()
            };
            let values = self.values(&quotient)?;
            let (bad, st) = first_failure(0..n, |x| {
                let (lower, upper) = (p.value(x), &values[data.coset_of(x)]);
                if &lower <= upper {
                    Status::Pass
                } else {
                    Status::Fail {
                        expected: format!(">= {}", show(&lower)),
                        actual: show(upper),
                    }
                }
            });
            let name = format!("I = ({}), |I| = {}", p.label(g), ideal.len());
            cases.push(match bad {
                None => p.case(name, st),
                Some(x) => p.case(format!("{name}, x = {}", p.label(x)), st),
            });
        }
        Ok(cases)
    }
}

/// Subspace counts against RREF enumeration for q in {2, 3}, n <= 4.
fn subspace_sweep() -> Result<Vec<CaseResult>, CliError> {
    let mut cases = Vec::new();
    for q in [2u64, 3] {
        for dim in 1..=4usize {
            for k in 0..=dim {
                for r in 0..=k {
                    let oracle = oracle::subspaces_containing(q, dim, r, k);
                    let formula = subspace_count(q, dim as u32, r as u32, k as u32)?;
                    cases.push(CaseResult {
                        ring: format!("GF({q})^{dim}"),
                        case: format!("r = {r}, k = {k}"),
                        status: if formula == BigUint::from(oracle) {
                            Status::Pass
                        } else {
                            Status::Fail {
                                expected: oracle.to_string(),
                                actual: formula.to_string(),
                            }
                        },
                    });
                }
            }
        }
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::default_corpus;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.id().parse::<SuiteId>().unwrap(), id);
        }
        assert!("thm99".parse::<SuiteId>().is_err());
    }

    #[test]
    fn chain_suite_skips_non_chain_rings() {
        let corpus = default_corpus();
        let report = Verifier::new(4096, Execution::default())
            .run(&[SuiteId::ChainLayer], &corpus)
            .unwrap();
        assert!(report.all_passed());
        let status_of = |ring: &str| {
            report.suites[0]
                .cases
                .iter()
                .filter(|c| c.ring == ring)
                .map(|c| c.status.clone())
                .collect::<Vec<_>>()
        };
        for ring in [
            "Z4",
            "Z8",
            "Z9",
            "Z27",
            "chain(2,3)",
            "chain(3,3)",
            "GR(2,2,2)",
        ] {
            let st = status_of(ring);
            assert!(
                !st.is_empty() && st.iter().all(|s| *s == Status::Pass),
                "{ring}"
            );
        }
        for ring in ["Z6", "M2(GF2)", "triv(2,2)", "Z2xZ4", "UT2(GF2)"] {
            let st = status_of(ring);
            assert!(matches!(st.as_slice(), [Status::Skip { .. }]), "{ring}");
        }
    }
}
