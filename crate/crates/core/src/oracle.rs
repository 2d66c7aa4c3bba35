//! Dense-matrix ground truth on `d`-dimensional qudits.
//!
//! Each party is represented by the clock `X = diag(ω^k)` and shift
//! `Y|k⟩ = |k+1 mod d⟩`, `ω = e^{2πi/d}`, which satisfy `XY = ω·YX`. A word
//! `e^{2πi·φ} ⊗_j X^{m_j} Y^{n_j}` maps to the Kronecker product of its party
//! factors (party 0 most significant). The map is a homomorphism with the
//! same X-before-Y phase bookkeeping as [`crate::weyl`], which is what the
//! checks here exercise.
//!
//! Matrix norms reported below are the largest absolute entry.

use ndarray::{linalg::kron, Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::paradox::{verify, OperatorSet, ParadoxError};
use crate::weyl::{RationalPhase, WeylError, WeylWord};

pub const DEFAULT_MAX_DIM: usize = 4096;
pub const DEFAULT_SEED: u64 = 0x6768_7a5f_7365_6564;

/// Joint eigenspaces of the random Hermitian combination closer than this
/// are merged.
const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("qudit dimension d = {0} is invalid (need d >= 2)")]
    InvalidDimension(u32),
    #[error("matrix dimension {dim} exceeds the ceiling of {ceiling}")]
    DimensionCeiling { dim: u128, ceiling: usize },
    #[error("operators {a} and {b} do not commute (phase {phase} of a turn)")]
    NotCommuting { a: usize, b: usize, phase: RationalPhase },
    #[error("hint vector has length {got}, expected {expected}")]
    HintLength { got: usize, expected: usize },
    #[error("hint vector has no overlap with any joint eigenspace")]
    ZeroHint,
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Paradox(#[from] ParadoxError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_dim: usize,
    /// Seeds the coefficients of the Hermitian combination used by the
    /// joint eigensolver.
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_dim: DEFAULT_MAX_DIM, seed: DEFAULT_SEED }
    }
}

/// A dense `dimension × dimension` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub matrix: Array2<Complex64>,
}

impl DenseOperator {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: Array2::eye(dim) }
    }

    pub fn dot(&self, rhs: &Self) -> Self {
        Self { matrix: self.matrix.dot(&rhs.matrix) }
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.t().mapv(|z| z.conj()) }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { matrix: self.matrix.mapv(|z| z * c) }
    }

    /// Largest absolute entry of `self - rhs`.
    pub fn distance(&self, rhs: &Self) -> f64 {
        self.matrix.iter().zip(rhs.matrix.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.dot(&self.adjoint()).distance(&Self::identity(self.dimension()))
    }

    pub fn apply(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        self.matrix.dot(v)
    }
}

fn unit(phase: RationalPhase) -> Complex64 {
    let (re, im) = phase.to_unit();
    Complex64::new(re, im)
}

/// `e^{2πi·k/d}`, exact at the quarter turns.
fn root_of_unity(k: i64, d: u32) -> Complex64 {
    unit(RationalPhase::new(k, d as i64))
}

/// Clock `X` and shift `Y` of dimension `d`, with `XY = e^{2πi/d}·YX`.
pub fn clock_shift(d: u32) -> Result<(DenseOperator, DenseOperator), OracleError> {
    Ok((qudit_factor(d, 1, 0)?, qudit_factor(d, 0, 1)?))
}

/// `X^m Y^n` on one qudit: `|k⟩ ↦ ω^{m(k+n)} |k+n⟩`.
fn qudit_factor(d: u32, m: i64, n: i64) -> Result<DenseOperator, OracleError> {
    if d < 2 {
        return Err(OracleError::InvalidDimension(d));
    }
    let dd = d as usize;
    let shift = n.rem_euclid(d as i64) as usize;
    let mut matrix = Array2::zeros((dd, dd));
    for k in 0..dd {
        let row = (k + shift) % dd;
        matrix[[row, k]] = root_of_unity(m * row as i64, d);
    }
    Ok(DenseOperator { matrix })
}

fn check_dim(d: u32, n_parties: usize, ceiling: usize) -> Result<usize, OracleError> {
    let dim = (d as u128).checked_pow(n_parties as u32).unwrap_or(u128::MAX);
    if dim > ceiling as u128 {
        return Err(OracleError::DimensionCeiling { dim, ceiling });
    }
    Ok(dim as usize)
}

/// Dense matrix of a word, refusing anything above `max_dim`.
pub fn represent(word: &WeylWord, max_dim: usize) -> Result<DenseOperator, OracleError> {
    let d = word.params().d();
    check_dim(d, word.n_parties(), max_dim)?;
    let mut matrix = Array2::from_elem((1, 1), unit(word.phase()));
    for e in word.exponents() {
        matrix = kron(&matrix, &qudit_factor(d, e.m, e.n)?.matrix);
    }
    Ok(DenseOperator { matrix })
}

/// Numerical re-check of a set against its symbolic report.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub dimension: usize,
    /// `‖M_a M_b − M_b M_a‖` for every pair `a < b`, row-major.
    pub commutator_norms: Vec<((usize, usize), f64)>,
    pub max_commutator_norm: f64,
    /// Largest `‖M_a M_b − e^{2πi·φ_ab} M_b M_a‖` with the symbolic `φ_ab`.
    pub max_exchange_deviation: f64,
    /// `‖Π_k M_k − e^{2πi·φ}·I‖` when the symbolic product is the scalar
    /// `e^{2πi·φ}`.
    pub product_deviation: Option<f64>,
    pub symbolic_product_phase: Option<RationalPhase>,
    pub max_unitarity_defect: f64,
}

impl NumericReport {
    /// Symbolic and numeric pictures agree to `tol`.
    pub fn agrees(&self, tol: f64) -> bool {
        self.max_exchange_deviation < tol
            && self.max_unitarity_defect < tol
            && self.product_deviation.is_none_or(|dev| dev < tol)
    }
}

pub fn check_set(set: &OperatorSet, config: &OracleConfig) -> Result<NumericReport, OracleError> {
    let dimension = check_dim(set.params().d(), set.n_parties(), config.max_dim)?;
    let symbolic = verify(set)?;
    let mats = set.operators().iter().map(|w| represent(w, config.max_dim)).collect::<Result<Vec<_>, _>>()?;

    let mut commutator_norms = Vec::new();
    let mut max_exchange_deviation: f64 = 0.0;
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            let ab = mats[a].dot(&mats[b]);
            let ba = mats[b].dot(&mats[a]);
            commutator_norms.push(((a, b), ab.distance(&ba)));
            let twisted = ba.scaled(unit(symbolic.pairwise_phases[a][b]));
            max_exchange_deviation = max_exchange_deviation.max(ab.distance(&twisted));
        }
    }
    let max_commutator_norm = commutator_norms.iter().map(|&(_, v)| v).fold(0.0, f64::max);

    let product = mats[1..].iter().fold(mats[0].clone(), |acc, m| acc.dot(m));
    let product_deviation =
        symbolic.product_phase.map(|phase| product.distance(&DenseOperator::identity(dimension).scaled(unit(phase))));
    let max_unitarity_defect = mats.iter().map(DenseOperator::unitarity_defect).fold(0.0, f64::max);

    Ok(NumericReport {
        dimension,
        commutator_norms,
        max_commutator_norm,
        max_exchange_deviation,
        product_deviation,
        symbolic_product_phase: symbolic.product_phase,
        max_unitarity_defect,
    })
}

/// A simultaneous eigenvector of a commuting set.
#[derive(Clone, Debug, PartialEq)]
pub struct JointEigen {
    pub vector: Array1<Complex64>,
    /// `λ_k = ⟨v|M_k|v⟩`, one per operator.
    pub eigenvalues: Vec<Complex64>,
    /// Largest `‖M_k v − λ_k v‖_∞`.
    pub residual: f64,
}

impl JointEigen {
    pub fn eigenvalue_product(&self) -> Complex64 {
        self.eigenvalues.iter().product()
    }
}

struct Diagonalized {
    mats: Vec<DenseOperator>,
    values: Array1<f64>,
    vectors: Array2<Complex64>,
}

fn diagonalize(set: &OperatorSet, config: &OracleConfig) -> Result<Diagonalized, OracleError> {
    let dim = check_dim(set.params().d(), set.n_parties(), config.max_dim)?;
    let ops = set.operators();
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let phase = ops[a].commutation_phase(&ops[b])?;
            if !phase.is_zero() {
                return Err(OracleError::NotCommuting { a, b, phase });
            }
        }
    }
    let mats = ops.iter().map(|w| represent(w, config.max_dim)).collect::<Result<Vec<_>, _>>()?;

    // H = Σ a_k (M + M†) + b_k i(M − M†) is Hermitian and, for generic
    // coefficients, separates the joint eigenspaces of the M_k.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut h = Array2::<Complex64>::zeros((dim, dim));
    for m in &mats {
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        let adj = m.adjoint();
        let re = &m.matrix + &adj.matrix;
        let im = (&m.matrix - &adj.matrix).mapv(|z| z * Complex64::i());
        h = h + re.mapv(|z| z * a) + im.mapv(|z| z * b);
    }
    // Handed a row-major array, LAPACK sees Hᵀ = H̄, whose eigenvectors are
    // the conjugates of ours. Pass column-major storage instead.
    let h = h.reversed_axes().as_standard_layout().reversed_axes().to_owned();
    let (values, vectors) = h.eigh(UPLO::Lower).map_err(|e| OracleError::Eigen(e.to_string()))?;
    Ok(Diagonalized { mats, values, vectors })
}

fn eigen_data(mats: &[DenseOperator], vector: Array1<Complex64>) -> JointEigen {
    let mut residual: f64 = 0.0;
    let eigenvalues = mats
        .iter()
        .map(|m| {
            let mv = m.apply(&vector);
            let lambda: Complex64 = vector.iter().zip(mv.iter()).map(|(v, w)| v.conj() * w).sum();
            let r = mv.iter().zip(vector.iter()).map(|(w, v)| (w - lambda * v).norm()).fold(0.0, f64::max);
            residual = residual.max(r);
            lambda
        })
        .collect();
    JointEigen { vector, eigenvalues, residual }
}

/// One joint eigenvector of a commuting set, with its eigenvalues.
///
/// Diagonalizes a seeded random Hermitian combination of the operators and
/// returns the eigenvector of its lowest eigenvalue. Degenerate joint
/// eigenspaces are resolved arbitrarily.
pub fn joint_eigenvector(set: &OperatorSet, config: &OracleConfig) -> Result<JointEigen, OracleError> {
    let diag = diagonalize(set, config)?;
    let vector = diag.vectors.column(0).to_owned();
    Ok(eigen_data(&diag.mats, vector))
}

/// The joint eigenvector closest to `hint`: its projection onto the joint
/// eigenspace that captures most of its weight, normalized.
pub fn joint_eigenvector_near(
    set: &OperatorSet,
    hint: &Array1<Complex64>,
    config: &OracleConfig,
) -> Result<JointEigen, OracleError> {
    let diag = diagonalize(set, config)?;
    let dim = diag.values.len();
    if hint.len() != dim {
        return Err(OracleError::HintLength { got: hint.len(), expected: dim });
    }
    let overlaps: Vec<Complex64> =
        (0..dim).map(|i| diag.vectors.column(i).iter().zip(hint.iter()).map(|(v, h)| v.conj() * h).sum()).collect();

    let mut best: Option<(f64, usize, usize)> = None;
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && diag.values[end] - diag.values[end - 1] < CLUSTER_TOL {
            end += 1;
        }
        let weight: f64 = overlaps[start..end].iter().map(|c| c.norm_sqr()).sum();
        if best.is_none_or(|(w, _, _)| weight > w) {
            best = Some((weight, start, end));
        }
        start = end;
    }
    let (weight, start, end) = best.expect("dimension is at least 2");
    if weight < 1e-20 {
        return Err(OracleError::ZeroHint);
    }
    let mut vector = Array1::<Complex64>::zeros(dim);
    for (i, c) in overlaps.iter().enumerate().take(end).skip(start) {
        vector = vector + diag.vectors.column(i).mapv(|v| v * c);
    }
    let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    vector.mapv_inplace(|z| z / norm);
    Ok(eigen_data(&diag.mats, vector))
}
