//! Exact algebra of lattice Weyl operators.
//!
//! A single-party translation pair `X^α = exp(iα x̃)`, `Y^β = exp(iβ p̃)`
//! obeys `X^α Y^β = e^{iαβ/π} Y^β X^α`. Restricting to the lattice
//! `α = m·α₀`, `β = n·β₀` with `α₀ = β₀ = π·√(2/d)` makes every commutation
//! phase an exact multiple of `1/d` of a turn, so the whole algebra runs on
//! integers and [`RationalPhase`]s. Nothing in this module touches floats.
//!
//! Words are kept in normal form: `e^{2πi·φ} ⊗_j X_j^{m_j α₀} Y_j^{n_j β₀}`,
//! X left of Y on every party, parties in index order.

mod phase;

pub use phase::RationalPhase;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("lattice dimension d = {0} is invalid (need d >= 2)")]
    InvalidDimension(i64),
    #[error("party index {party} out of range for {n_parties} parties")]
    PartyOutOfRange { party: usize, n_parties: usize },
    #[error("lattice mismatch: d = {left} vs d = {right}")]
    ParamsMismatch { left: u32, right: u32 },
    #[error("party count mismatch: {left} vs {right}")]
    PartyCountMismatch { left: usize, right: usize },
    #[error("integer overflow in exponent arithmetic")]
    Overflow,
}

/// The commensurate lattice, identified by its dimension parameter `d`.
///
/// `α₀β₀ = 2π²/d`, so `X^{α₀}` and `Y^{β₀}` satisfy the qudit relation
/// `XY = e^{2πi/d} YX`. For `d = 2`, `α₀ = π`; for `d = 4`, `α₀ = π/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeParams {
    d: u32,
}

impl LatticeParams {
    pub fn new(d: i64) -> Result<Self, WeylError> {
        if !(2..=u32::MAX as i64).contains(&d) {
            return Err(WeylError::InvalidDimension(d));
        }
        Ok(Self { d: d as u32 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `α₀ = β₀ = π·√(2/d)`. Only numerical code should call this.
    pub fn base_exponent(&self) -> f64 {
        std::f64::consts::PI * (2.0 / self.d as f64).sqrt()
    }

    fn check_same(&self, other: &Self) -> Result<(), WeylError> {
        if self.d != other.d {
            return Err(WeylError::ParamsMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Lattice exponents `(m, n)` of `X^{m·α₀} Y^{n·β₀}` on one party.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartyExponent {
    pub m: i64,
    pub n: i64,
}

impl PartyExponent {
    pub const IDENTITY: Self = Self { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    fn checked_add(self, other: Self) -> Result<Self, WeylError> {
        Ok(Self {
            m: self.m.checked_add(other.m).ok_or(WeylError::Overflow)?,
            n: self.n.checked_add(other.n).ok_or(WeylError::Overflow)?,
        })
    }

    fn checked_neg(self) -> Result<Self, WeylError> {
        Ok(Self {
            m: self.m.checked_neg().ok_or(WeylError::Overflow)?,
            n: self.n.checked_neg().ok_or(WeylError::Overflow)?,
        })
    }
}

impl From<(i64, i64)> for PartyExponent {
    fn from((m, n): (i64, i64)) -> Self {
        Self { m, n }
    }
}

/// A multi-party Weyl operator in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylWord {
    params: LatticeParams,
    exponents: Vec<PartyExponent>,
    phase: RationalPhase,
}

impl WeylWord {
    pub fn identity(params: LatticeParams, n_parties: usize) -> Self {
        Self { params, exponents: vec![PartyExponent::IDENTITY; n_parties], phase: RationalPhase::ZERO }
    }

    pub fn from_exponents(
        params: LatticeParams,
        exponents: impl IntoIterator<Item = PartyExponent>,
        phase: RationalPhase,
    ) -> Self {
        Self { params, exponents: exponents.into_iter().collect(), phase }
    }

    /// `X_party^{exponent·α₀}` or `Y_party^{exponent·β₀}` with no prefactor.
    pub fn generator(
        params: LatticeParams,
        n_parties: usize,
        party: usize,
        axis: Axis,
        exponent: i64,
    ) -> Result<Self, WeylError> {
        if party >= n_parties {
            return Err(WeylError::PartyOutOfRange { party, n_parties });
        }
        let mut word = Self::identity(params, n_parties);
        word.exponents[party] = match axis {
            Axis::X => PartyExponent::new(exponent, 0),
            Axis::Y => PartyExponent::new(0, exponent),
        };
        Ok(word)
    }

    pub fn params(&self) -> LatticeParams {
        self.params
    }

    pub fn n_parties(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[PartyExponent] {
        &self.exponents
    }

    pub fn phase(&self) -> RationalPhase {
        self.phase
    }

    /// Multiply by the scalar `e^{2πi·phase}`.
    pub fn scaled(&self, phase: RationalPhase) -> Self {
        Self { phase: self.phase + phase, ..self.clone() }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), WeylError> {
        self.params.check_same(&other.params)?;
        if self.n_parties() != other.n_parties() {
            return Err(WeylError::PartyCountMismatch { left: self.n_parties(), right: other.n_parties() });
        }
        Ok(())
    }

    /// Normal form of `self · rhs`.
    ///
    /// Moving `rhs`'s X factor left past `self`'s Y factor on party j uses
    /// `Y^n X^m = e^{-2πi·mn/d} X^m Y^n`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, WeylError> {
        self.check_compatible(rhs)?;
        let mut crossing: i128 = 0;
        let mut exponents = Vec::with_capacity(self.n_parties());
        for (a, b) in self.exponents.iter().zip(&rhs.exponents) {
            let term = (b.m as i128).checked_mul(a.n as i128).ok_or(WeylError::Overflow)?;
            crossing = crossing.checked_sub(term).ok_or(WeylError::Overflow)?;
            exponents.push(a.checked_add(*b)?);
        }
        let phase =
            self.phase + rhs.phase + RationalPhase::from_wide(crossing % self.params.d as i128, self.params.d as i128);
        Ok(Self { params: self.params, exponents, phase })
    }

    /// Normal form of the Hermitian adjoint.
    ///
    /// `(X^m Y^n)† = Y^{-n} X^{-m} = e^{-2πi·mn/d} X^{-m} Y^{-n}`.
    pub fn dagger(&self) -> Result<Self, WeylError> {
        let d = self.params.d as i128;
        let mut twist: i128 = 0;
        let mut exponents = Vec::with_capacity(self.n_parties());
        for e in &self.exponents {
            twist = (twist + (e.m as i128 % d) * (e.n as i128 % d)) % d;
            exponents.push(e.checked_neg()?);
        }
        let phase = -self.phase - RationalPhase::from_wide(twist, d);
        Ok(Self { params: self.params, exponents, phase })
    }

    /// The phase `φ` with `self · other = e^{2πi·φ} · other · self`.
    pub fn commutation_phase(&self, other: &Self) -> Result<RationalPhase, WeylError> {
        self.check_compatible(other)?;
        let d = self.params.d as i128;
        let total = self.exponents.iter().zip(&other.exponents).fold(0i128, |acc, (a, b)| {
            let form = (a.m as i128 % d) * (b.n as i128 % d) - (b.m as i128 % d) * (a.n as i128 % d);
            (acc + form) % d
        });
        Ok(RationalPhase::from_wide(total, d))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, WeylError> {
        Ok(self.commutation_phase(other)?.is_zero())
    }

    /// The prefactor if this word is a pure scalar `e^{2πi·φ}·I`.
    pub fn is_scalar(&self) -> Option<RationalPhase> {
        self.exponents.iter().all(PartyExponent::is_identity).then_some(self.phase)
    }
}

/// Party label used in renderings: A, B, ..., Z, then P27, P28, ...
pub fn party_label(index: usize) -> String {
    if index < 26 {
        ((b'A' + index as u8) as char).to_string()
    } else {
        format!("P{}", index + 1)
    }
}

/// The symbol used for `α₀` in renderings.
pub fn base_symbol(params: LatticeParams) -> &'static str {
    match params.d {
        2 => "π",
        4 => "q",
        _ => "θ",
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, op: char, party: usize, k: i64, sym: &str) -> fmt::Result {
    let label = party_label(party);
    match k {
        1 => write!(f, "{op}_{label}^{sym}"),
        -1 => write!(f, "{op}_{label}^{{-{sym}}}"),
        _ => write!(f, "{op}_{label}^{{{k}{sym}}}"),
    }
}

/// Renders in the usual notation, e.g. `X_A^π Y_B^{-π}` (d = 2) or
/// `Y_A^{-3q}` (d = 4). `θ` stands for `π·√(2/d)` at other `d`.
impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = base_symbol(self.params);
        let mut first = true;
        if !self.phase.is_zero() {
            if self.phase == RationalPhase::HALF {
                write!(f, "-")?;
            } else {
                write!(f, "e^{{2πi·{}}} ", self.phase)?;
            }
        }
        for (j, e) in self.exponents.iter().enumerate() {
            for (op, k) in [('X', e.m), ('Y', e.n)] {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write_power(f, op, j, k, sym)?;
            }
        }
        if first {
            write!(f, "I")?;
        }
        Ok(())
    }
}
