//! GHZ paradox verification, local-hidden-variable evaluation, and search.
//!
//! A set of Weyl words is a paradox when
//!
//! 1. all words commute, so they share eigenvectors;
//! 2. every party's X and Y exponents sum to zero down the set, which forces
//!    any local-hidden-variable product of the words to `+1`;
//! 3. the operator product is a scalar `e^{2πi·φ}·I` with `φ ≠ 0`, so the
//!    product of joint eigenvalues is `e^{2πi·φ} ≠ 1`.

mod search;

pub use search::{canonical_form, search, SearchError, SearchOutcome, SearchSpace, DEFAULT_MAX_NODES};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::weyl::{LatticeParams, PartyExponent, RationalPhase, WeylError, WeylWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParadoxError {
    #[error("an operator set needs at least one operator")]
    EmptySet,
    #[error("operator {index}: {source}")]
    Inconsistent { index: usize, source: WeylError },
    #[error("unknown built-in set `{0}` (expected `v4` or `w6`)")]
    UnknownBuiltin(String),
    #[error("hidden-variable assignment covers {given} parties, set has {expected}")]
    MissingParty { given: usize, expected: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// An ordered, non-empty list of words on a common lattice and party count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSet {
    params: LatticeParams,
    n_parties: usize,
    operators: Vec<WeylWord>,
}

impl OperatorSet {
    pub fn new(operators: Vec<WeylWord>) -> Result<Self, ParadoxError> {
        let first = operators.first().ok_or(ParadoxError::EmptySet)?;
        let (params, n_parties) = (first.params(), first.n_parties());
        for (index, op) in operators.iter().enumerate() {
            if op.params() != params {
                return Err(ParadoxError::Inconsistent {
                    index,
                    source: WeylError::ParamsMismatch { left: params.d(), right: op.params().d() },
                });
            }
            if op.n_parties() != n_parties {
                return Err(ParadoxError::Inconsistent {
                    index,
                    source: WeylError::PartyCountMismatch { left: n_parties, right: op.n_parties() },
                });
            }
        }
        Ok(Self { params, n_parties, operators })
    }

    /// Phaseless words from rows of per-party `(m, n)` exponents.
    pub fn from_rows<R>(params: LatticeParams, rows: R) -> Result<Self, ParadoxError>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = (i64, i64)>,
    {
        let ops = rows
            .into_iter()
            .map(|row| WeylWord::from_exponents(params, row.into_iter().map(PartyExponent::from), RationalPhase::ZERO))
            .collect();
        Self::new(ops)
    }

    pub fn params(&self) -> LatticeParams {
        self.params
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn operators(&self) -> &[WeylWord] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Ordered product `M_1 · M_2 · ... · M_K`.
    pub fn product(&self) -> Result<WeylWord, WeylError> {
        self.operators[1..].iter().try_fold(self.operators[0].clone(), |acc, w| acc.multiply(w))
    }

    pub fn exponent_rows(&self) -> Vec<Vec<PartyExponent>> {
        self.operators.iter().map(|w| w.exponents().to_vec()).collect()
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, op) in self.operators.iter().enumerate() {
            writeln!(f, "M{} = {}", k + 1, op)?;
        }
        Ok(())
    }
}

/// The two sets of the three- and five-party constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Three parties, four operators, `d = 2` (`α₀ = π`).
    V4,
    /// Five parties, six operators, `d = 4` (`α₀ = q = π/√2`).
    W6,
}

impl Builtin {
    pub fn name(&self) -> &'static str {
        match self {
            Builtin::V4 => "v4",
            Builtin::W6 => "w6",
        }
    }

    pub fn operator_set(&self) -> OperatorSet {
        match self {
            Builtin::V4 => {
                let rows: [[(i64, i64); 3]; 4] = [
                    [(1, 0), (1, 0), (1, 0)],
                    [(-1, 0), (0, -1), (0, 1)],
                    [(0, 1), (-1, 0), (0, -1)],
                    [(0, -1), (0, 1), (-1, 0)],
                ];
                OperatorSet::from_rows(LatticeParams::new(2).unwrap(), rows).unwrap()
            }
            Builtin::W6 => {
                const X: (i64, i64) = (1, 0);
                const XD: (i64, i64) = (-1, 0);
                const Y: (i64, i64) = (0, 1);
                const Y3D: (i64, i64) = (0, -3);
                let rows = [
                    [X, X, X, X, X],
                    [XD, Y3D, Y, Y, Y],
                    [Y, XD, Y3D, Y, Y],
                    [Y, Y, XD, Y3D, Y],
                    [Y, Y, Y, XD, Y3D],
                    [Y3D, Y, Y, Y, XD],
                ];
                OperatorSet::from_rows(LatticeParams::new(4).unwrap(), rows).unwrap()
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = ParadoxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v4" => Ok(Builtin::V4),
            "w6" => Ok(Builtin::W6),
            _ => Err(ParadoxError::UnknownBuiltin(s.to_string())),
        }
    }
}

pub fn builtin(name: &str) -> Result<OperatorSet, ParadoxError> {
    Ok(name.parse::<Builtin>()?.operator_set())
}

/// Everything [`verify`] learns about a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxReport {
    /// `pairwise_phases[a][b]` is φ with `M_a M_b = e^{2πi·φ} M_b M_a`.
    pub pairwise_phases: Vec<Vec<RationalPhase>>,
    /// Per party, `(Σ_k m_kj, Σ_k n_kj)`.
    pub column_sums: Vec<PartyExponent>,
    pub product: WeylWord,
    pub is_commuting: bool,
    pub is_lhv_trivial: bool,
    pub product_phase: Option<RationalPhase>,
    /// Sum of the words' own prefactors: the value any hidden-variable
    /// model must give the product once the column sums vanish.
    pub lhv_phase: RationalPhase,
    /// Every factor is a pure X or pure Y power, i.e. measurable by one
    /// position or momentum measurement per party.
    pub is_local: bool,
    pub is_paradox: bool,
}

pub fn verify(set: &OperatorSet) -> Result<ParadoxReport, ParadoxError> {
    let ops = set.operators();
    let mut pairwise_phases = vec![vec![RationalPhase::ZERO; ops.len()]; ops.len()];
    let mut is_commuting = true;
    for (a, wa) in ops.iter().enumerate() {
        for (b, wb) in ops.iter().enumerate().skip(a + 1) {
            let phase = wa.commutation_phase(wb)?;
            is_commuting &= phase.is_zero();
            pairwise_phases[a][b] = phase;
            pairwise_phases[b][a] = -phase;
        }
    }

    let mut column_sums = vec![PartyExponent::IDENTITY; set.n_parties()];
    for op in ops {
        for (sum, e) in column_sums.iter_mut().zip(op.exponents()) {
            sum.m = sum.m.checked_add(e.m).ok_or(WeylError::Overflow)?;
            sum.n = sum.n.checked_add(e.n).ok_or(WeylError::Overflow)?;
        }
    }
    let is_lhv_trivial = column_sums.iter().all(PartyExponent::is_identity);

    let product = set.product()?;
    let product_phase = product.is_scalar();
    let lhv_phase = ops.iter().fold(RationalPhase::ZERO, |acc, w| acc + w.phase());
    let is_local = ops.iter().all(|w| w.exponents().iter().all(|e| e.m == 0 || e.n == 0));
    let is_paradox = is_commuting && is_lhv_trivial && product_phase.is_some_and(|phase| phase != lhv_phase);

    Ok(ParadoxReport {
        pairwise_phases,
        column_sums,
        product,
        is_commuting,
        is_lhv_trivial,
        product_phase,
        lhv_phase,
        is_local,
        is_paradox,
    })
}

/// Pre-existing values of `x̃_j` and `p̃_j` for every party.
#[derive(Clone, Debug, PartialEq)]
pub struct LhvAssignment {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
}

impl LhvAssignment {
    pub fn new(x: Vec<f64>, p: Vec<f64>) -> Self {
        Self { x, p }
    }

    pub fn n_parties(&self) -> usize {
        self.x.len().min(self.p.len())
    }
}

/// Value a local-hidden-variable model assigns to the product of the set.
///
/// Each factor takes the c-number of the operator it stands for:
/// `X_j^{m·α₀} ↦ e^{i·m·α₀·x̃_j}` and `Y_j^{n·β₀} ↦ e^{i·n·β₀·p̃_j}`, with
/// `α₀ = β₀ = π√(2/d)`. A word's own prefactor `e^{2πi·φ}` is carried
/// through. When every column sum vanishes the exponents cancel party by
/// party, so the result is `e^{2πi·lhv_phase}` (that is, `1` for phaseless
/// sets) whatever the assignment.
pub fn lhv_value(set: &OperatorSet, assignment: &LhvAssignment) -> Result<Complex64, ParadoxError> {
    if assignment.n_parties() < set.n_parties() {
        return Err(ParadoxError::MissingParty { given: assignment.n_parties(), expected: set.n_parties() });
    }
    let base = set.params().base_exponent();
    let mut value = Complex64::new(1.0, 0.0);
    for op in set.operators() {
        let (re, im) = op.phase().to_unit();
        value *= Complex64::new(re, im);
        for (j, e) in op.exponents().iter().enumerate() {
            if e.m != 0 {
                value *= Complex64::from_polar(1.0, e.m as f64 * base * assignment.x[j]);
            }
            if e.n != 0 {
                value *= Complex64::from_polar(1.0, e.n as f64 * base * assignment.p[j]);
            }
        }
    }
    Ok(value)
}
