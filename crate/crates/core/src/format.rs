//! Operator-set files and machine-readable reports.
//!
//! Operator sets are stored as lattice exponents only:
//!
//! ```json
//! {
//!   "name": "v4",
//!   "d": 2,
//!   "parties": 3,
//!   "operators": [
//!     [[1, 0], [1, 0], [1, 0]],
//!     [[-1, 0], [0, -1], [0, 1]]
//!   ]
//! }
//! ```
//!
//! Each pair `[m, n]` is the party factor `X^{m·α₀} Y^{n·β₀}`. `name` is
//! optional. Reports put floats through [`round12`] so output is stable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{JointEigen, NumericReport};
use crate::paradox::{OperatorSet, ParadoxReport};
use crate::weyl::{party_label, LatticeParams, RationalPhase};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

/// On-disk form of an [`OperatorSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: i64,
    pub parties: usize,
    pub operators: Vec<Vec<[i64; 2]>>,
}

impl OperatorSetFile {
    pub fn from_set(set: &OperatorSet, name: Option<&str>) -> Self {
        Self {
            name: name.map(str::to_string),
            d: set.params().d() as i64,
            parties: set.n_parties(),
            operators: set.exponent_rows().into_iter().map(|r| r.into_iter().map(|e| [e.m, e.n]).collect()).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Validate and build the set. Word prefactors are always zero.
    pub fn to_set(&self) -> Result<OperatorSet, FormatError> {
        let params =
            LatticeParams::new(self.d).map_err(|e| FormatError::Field { field: "d".into(), message: e.to_string() })?;
        if self.parties == 0 {
            return Err(FormatError::Field { field: "parties".into(), message: "must be at least 1".into() });
        }
        if self.operators.is_empty() {
            return Err(FormatError::Field {
                field: "operators".into(),
                message: "must list at least one operator".into(),
            });
        }
        for (k, row) in self.operators.iter().enumerate() {
            if row.len() != self.parties {
                return Err(FormatError::Field {
                    field: format!("operators[{k}]"),
                    message: format!("expected {} [m, n] pairs, found {}", self.parties, row.len()),
                });
            }
        }
        let rows = self.operators.iter().map(|r| r.iter().map(|&[m, n]| (m, n)).collect::<Vec<_>>());
        OperatorSet::from_rows(params, rows)
            .map_err(|e| FormatError::Field { field: "operators".into(), message: e.to_string() })
    }

    /// Deterministic pretty form: one operator per line.
    pub fn emit(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(name) = &self.name {
            writeln!(out, "  \"name\": {},", serde_json::to_string(name).unwrap()).unwrap();
        }
        writeln!(out, "  \"d\": {},", self.d).unwrap();
        writeln!(out, "  \"parties\": {},", self.parties).unwrap();
        out.push_str("  \"operators\": [\n");
        for (k, row) in self.operators.iter().enumerate() {
            let pairs: Vec<String> = row.iter().map(|[m, n]| format!("[{m}, {n}]")).collect();
            let sep = if k + 1 == self.operators.len() { "" } else { "," };
            writeln!(out, "    [{}]{sep}", pairs.join(", ")).unwrap();
        }
        out.push_str("  ]\n}\n");
        out
    }
}

pub fn parse_set(text: &str) -> Result<OperatorSet, FormatError> {
    OperatorSetFile::parse(text)?.to_set()
}

pub fn emit_set(set: &OperatorSet, name: Option<&str>) -> String {
    OperatorSetFile::from_set(set, name).emit()
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap()
}

/// `x` as text with 12 significant digits.
pub fn sig12(x: f64) -> String {
    format!("{:.11e}", if x == 0.0 { 0.0 } else { x })
}

fn phase_text(p: RationalPhase) -> String {
    p.to_string()
}

#[derive(Serialize)]
struct VerifyJson {
    name: Option<String>,
    d: u32,
    parties: usize,
    operators: Vec<String>,
    pairwise_phases: Vec<Vec<String>>,
    column_sums: Vec<[i64; 2]>,
    product: String,
    is_commuting: bool,
    is_lhv_trivial: bool,
    is_local: bool,
    product_phase: Option<String>,
    lhv_phase: String,
    is_paradox: bool,
}

pub fn verify_json(set: &OperatorSet, name: Option<&str>, report: &ParadoxReport) -> String {
    let doc = VerifyJson {
        name: name.map(str::to_string),
        d: set.params().d(),
        parties: set.n_parties(),
        operators: set.operators().iter().map(ToString::to_string).collect(),
        pairwise_phases: report
            .pairwise_phases
            .iter()
            .map(|row| row.iter().copied().map(phase_text).collect())
            .collect(),
        column_sums: report.column_sums.iter().map(|e| [e.m, e.n]).collect(),
        product: report.product.to_string(),
        is_commuting: report.is_commuting,
        is_lhv_trivial: report.is_lhv_trivial,
        is_local: report.is_local,
        product_phase: report.product_phase.map(phase_text),
        lhv_phase: phase_text(report.lhv_phase),
        is_paradox: report.is_paradox,
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verify_text(set: &OperatorSet, name: Option<&str>, report: &ParadoxReport) -> String {
    let mut out = String::new();
    let title = name.unwrap_or("operator set");
    writeln!(out, "{title}: {} operators, {} parties, d = {}", set.len(), set.n_parties(), set.params().d()).unwrap();
    for (k, op) in set.operators().iter().enumerate() {
        writeln!(out, "  M{:<3} = {op}", k + 1).unwrap();
    }
    out.push_str("\npairwise commutation phases (turns)\n");
    let cells: Vec<Vec<String>> =
        report.pairwise_phases.iter().map(|r| r.iter().copied().map(phase_text).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
    write!(out, "  {:>5}", "").unwrap();
    for k in 0..cells.len() {
        write!(out, " {:>w$}", format!("M{}", k + 1)).unwrap();
    }
    out.push('\n');
    for (k, row) in cells.iter().enumerate() {
        write!(out, "  {:>5}", format!("M{}", k + 1)).unwrap();
        for c in row {
            write!(out, " {c:>w$}").unwrap();
        }
        out.push('\n');
    }
    out.push_str("\ncolumn sums (m, n)\n");
    for (j, e) in report.column_sums.iter().enumerate() {
        writeln!(out, "  {:>5}  ({}, {})", party_label(j), e.m, e.n).unwrap();
    }
    out.push('\n');
    writeln!(out, "  product          {}", report.product).unwrap();
    match report.product_phase {
        Some(p) if p == RationalPhase::HALF => writeln!(out, "  product phase    1/2 turn (-1)").unwrap(),
        Some(p) => writeln!(out, "  product phase    {p} turn").unwrap(),
        None => writeln!(out, "  product phase    (not a scalar)").unwrap(),
    }
    writeln!(out, "  commuting        {}", yes(report.is_commuting)).unwrap();
    writeln!(out, "  column sums zero {}", yes(report.is_lhv_trivial)).unwrap();
    writeln!(out, "  locally measured {}", yes(report.is_local)).unwrap();
    writeln!(out, "  paradox          {}", yes(report.is_paradox)).unwrap();
    out
}

#[derive(Serialize)]
struct OracleJson {
    name: Option<String>,
    dimension: usize,
    commutator_norms: Vec<PairNorm>,
    max_commutator_norm: f64,
    max_exchange_deviation: f64,
    product_phase: Option<String>,
    product_deviation: Option<f64>,
    max_unitarity_defect: f64,
    eigenvalues: Option<Vec<[f64; 2]>>,
    eigenvalue_product: Option<[f64; 2]>,
    eigen_residual: Option<f64>,
    pass: bool,
}

#[derive(Serialize)]
struct PairNorm {
    a: usize,
    b: usize,
    norm: f64,
}

pub fn oracle_json(name: Option<&str>, numeric: &NumericReport, eigen: Option<&JointEigen>, pass: bool) -> String {
    let c = |z: num_complex::Complex64| [round12(z.re), round12(z.im)];
    let doc = OracleJson {
        name: name.map(str::to_string),
        dimension: numeric.dimension,
        commutator_norms: numeric
            .commutator_norms
            .iter()
            .map(|&((a, b), norm)| PairNorm { a: a + 1, b: b + 1, norm: round12(norm) })
            .collect(),
        max_commutator_norm: round12(numeric.max_commutator_norm),
        max_exchange_deviation: round12(numeric.max_exchange_deviation),
        product_phase: numeric.symbolic_product_phase.map(phase_text),
        product_deviation: numeric.product_deviation.map(round12),
        max_unitarity_defect: round12(numeric.max_unitarity_defect),
        eigenvalues: eigen.map(|e| e.eigenvalues.iter().copied().map(c).collect()),
        eigenvalue_product: eigen.map(|e| c(e.eigenvalue_product())),
        eigen_residual: eigen.map(|e| round12(e.residual)),
        pass,
    };
    serde_json::to_string_pretty(&doc).unwrap() + "\n"
}

pub fn oracle_text(name: Option<&str>, numeric: &NumericReport, eigen: Option<&JointEigen>, pass: bool) -> String {
    let mut out = String::new();
    writeln!(out, "{}: dense check at dimension {}", name.unwrap_or("operator set"), numeric.dimension).unwrap();
    writeln!(out, "  max commutator norm      {}", sig12(numeric.max_commutator_norm)).unwrap();
    writeln!(out, "  max exchange deviation   {}", sig12(numeric.max_exchange_deviation)).unwrap();
    writeln!(out, "  max unitarity defect     {}", sig12(numeric.max_unitarity_defect)).unwrap();
    match (numeric.symbolic_product_phase, numeric.product_deviation) {
        (Some(p), Some(dev)) => {
            writeln!(out, "  product vs e^(2πi·{p})·I  {}", sig12(dev)).unwrap();
        }
        _ => writeln!(out, "  product                  not a scalar").unwrap(),
    }
    if let Some(e) = eigen {
        out.push_str("  joint eigenvalues\n");
        for (k, l) in e.eigenvalues.iter().enumerate() {
            writeln!(out, "    M{:<3} {:>20} {:>20}", k + 1, sig12(l.re), sig12(l.im)).unwrap();
        }
        let p = e.eigenvalue_product();
        writeln!(out, "  eigenvalue product       {} {}", sig12(p.re), sig12(p.im)).unwrap();
        writeln!(out, "  eigenvector residual     {}", sig12(e.residual)).unwrap();
    } else {
        out.push_str("  joint eigenvalues        (set does not commute)\n");
    }
    writeln!(out, "  result                   {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    out
}
