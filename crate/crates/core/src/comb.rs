//! Finitely squeezed comb states and closed-form Weyl expectation values.
//!
//! Positions are in the dimensionless `x̃ = x/(√π·L)` units; the length
//! scale `L` never enters. A comb is a finite sum of Gaussian peaks
//!
//! ```text
//! ψ(x̃) = Σ_p w_p · (2πΔ²)^{-1/4} · exp(-(x̃ - μ_p)² / (4Δ²))
//! ```
//!
//! so each peak's probability density has standard deviation `Δ`. On the
//! lattice with parameter `d`, a party factor `X^{m·α₀} Y^{n·β₀}` acts as
//!
//! ```text
//! (X^{mα₀} Y^{nβ₀} ψ)(x̃) = e^{i·m·α₀·x̃} · ψ(x̃ − n·√(2/d))
//! ```
//!
//! i.e. `Y^β` moves `|x̃⟩` to `|x̃ + β/π⟩`. This is the sign that reproduces
//! `X^α Y^β = e^{iαβ/π} Y^β X^α`.

use std::fmt::Write as _;

use ndarray::Array1;
use num_complex::Complex64;
use thiserror::Error;

use crate::format::sig12;
use crate::oracle::{joint_eigenvector_near, OracleConfig, OracleError};
use crate::paradox::{Builtin, OperatorSet};
use crate::weyl::WeylWord;

/// Peak pairs whose Gaussian overlap factor falls below this are skipped.
const OVERLAP_CUTOFF: f64 = 1e-16;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("peak width must be positive and finite, got {0}")]
    BadWidth(f64),
    #[error("envelope width must be positive and finite, got {0}")]
    BadEnvelope(f64),
    #[error("a comb needs at least one peak")]
    NoPeaks,
    #[error("combs have different peak widths ({0} vs {1})")]
    WidthMismatch(f64, f64),
    #[error("state term {term} has {got} parties, expected {expected}")]
    PartyMismatch { term: usize, got: usize, expected: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("a product-state sum needs at least one term")]
    NoTerms,
    #[error("grid step {step} is too coarse for peak width {width} (need step <= width/2)")]
    GridTooCoarse { step: f64, width: f64 },
    #[error("grid [{lo}, {hi}] does not cover the peaks (need [{need_lo}, {need_hi}])")]
    GridTooNarrow { lo: f64, hi: f64, need_lo: f64, need_hi: f64 },
    #[error("widths must be positive and listed in descending order")]
    BadDeltas,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub center: f64,
    pub weight: Complex64,
}

/// A one-party state: Gaussian peaks of common width `Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianComb {
    peaks: Vec<Peak>,
    width: f64,
}

/// `⟨G(μ₁)| e^{i·a·x̃} |G(μ₂ + s)⟩` for unit-normalized peaks of width `Δ`.
fn peak_element(mu1: f64, mu2: f64, width: f64, a: f64, s: f64) -> Complex64 {
    let gap = mu1 - mu2 - s;
    let envelope = (-gap * gap / (8.0 * width * width)).exp();
    let damping = (-a * a * width * width / 2.0).exp();
    Complex64::from_polar(envelope * damping, a * (mu1 + mu2 + s) / 2.0)
}

impl GaussianComb {
    pub fn new(mut peaks: Vec<Peak>, width: f64) -> Result<Self, SimError> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(SimError::BadWidth(width));
        }
        if peaks.is_empty() {
            return Err(SimError::NoPeaks);
        }
        peaks.sort_by(|a, b| a.center.total_cmp(&b.center));
        Ok(Self { peaks, width })
    }

    pub fn peaks(&self) -> &[Peak] {
        &self.peaks
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// `⟨self| e^{i·a·x̃} T_s |other⟩`, with `(T_s ψ)(x̃) = ψ(x̃ − s)`.
    pub fn element(&self, other: &Self, a: f64, s: f64) -> Result<Complex64, SimError> {
        if self.width != other.width {
            return Err(SimError::WidthMismatch(self.width, other.width));
        }
        let reach = self.width * (8.0 * -OVERLAP_CUTOFF.ln()).sqrt();
        let mut total = Complex64::new(0.0, 0.0);
        for p in &self.peaks {
            // other's shifted centers within reach of p
            let lo = p.center - s - reach;
            let first = other.peaks.partition_point(|q| q.center < lo);
            for q in other.peaks[first..].iter().take_while(|q| q.center <= p.center - s + reach) {
                total += p.weight.conj() * q.weight * peak_element(p.center, q.center, self.width, a, s);
            }
        }
        Ok(total)
    }

    pub fn overlap(&self, other: &Self) -> Result<Complex64, SimError> {
        self.element(other, 0.0, 0.0)
    }

    pub fn normalized(mut self) -> Result<Self, SimError> {
        let norm = self.overlap(&self)?.re.sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(SimError::ZeroNorm);
        }
        for p in &mut self.peaks {
            p.weight /= norm;
        }
        Ok(self)
    }

    /// Wavefunction value at `x`, summing every peak.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        let pref = (2.0 * std::f64::consts::PI * self.width * self.width).powf(-0.25);
        self.peaks
            .iter()
            .map(|p| {
                let u = x - p.center;
                p.weight * pref * (-u * u / (4.0 * self.width * self.width)).exp()
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombKind {
    Up,
    Down,
}

/// Regularization of the ideal combs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CombParams {
    /// Peak standard deviation `Δ`.
    pub width: f64,
    /// Peaks sit at integers `k ∈ [−n_peaks, n_peaks]`.
    pub n_peaks: usize,
    /// Amplitudes are damped by `exp(−k²/(2·envelope_width²))`.
    pub envelope_width: f64,
}

impl Default for CombParams {
    fn default() -> Self {
        Self { width: 0.05, n_peaks: 20, envelope_width: 10.0 }
    }
}

impl CombParams {
    pub fn with_width(self, width: f64) -> Self {
        Self { width, ..self }
    }
}

/// The `|↑⟩` / `|↓⟩` comb: weight `1` on even integers, `±i` on odd ones,
/// under a Gaussian envelope, normalized.
pub fn make_comb(kind: CombKind, params: &CombParams) -> Result<GaussianComb, SimError> {
    let env = params.envelope_width;
    if !(env > 0.0 && env.is_finite()) {
        return Err(SimError::BadEnvelope(env));
    }
    let n = params.n_peaks as i64;
    let odd = match kind {
        CombKind::Up => Complex64::i(),
        CombKind::Down => -Complex64::i(),
    };
    let peaks = (-n..=n)
        .map(|k| {
            let damp = (-((k * k) as f64) / (2.0 * env * env)).exp();
            let phase = if k.rem_euclid(2) == 0 { Complex64::new(1.0, 0.0) } else { odd };
            Peak { center: k as f64, weight: phase * damp }
        })
        .collect();
    GaussianComb::new(peaks, params.width)?.normalized()
}

/// `Σ_t c_t ⊗_j φ_{t,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductStateSum {
    terms: Vec<(Complex64, Vec<GaussianComb>)>,
}

impl ProductStateSum {
    pub fn new(terms: Vec<(Complex64, Vec<GaussianComb>)>) -> Result<Self, SimError> {
        let expected = terms.first().ok_or(SimError::NoTerms)?.1.len();
        for (term, (_, factors)) in terms.iter().enumerate() {
            if factors.len() != expected {
                return Err(SimError::PartyMismatch { term, got: factors.len(), expected });
            }
        }
        Ok(Self { terms })
    }

    pub fn n_parties(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn terms(&self) -> &[(Complex64, Vec<GaussianComb>)] {
        &self.terms
    }

    /// `Σ_{t,t'} c̄_t c_t' Π_j f(φ_{t,j}, φ_{t',j}, j)`.
    fn sandwich<F>(&self, mut factor: F) -> Result<Complex64, SimError>
    where
        F: FnMut(&GaussianComb, &GaussianComb, usize) -> Result<Complex64, SimError>,
    {
        let mut total = Complex64::new(0.0, 0.0);
        for (cl, left) in &self.terms {
            for (cr, right) in &self.terms {
                let mut prod = cl.conj() * cr;
                for (j, (l, r)) in left.iter().zip(right).enumerate() {
                    prod *= factor(l, r, j)?;
                }
                total += prod;
            }
        }
        Ok(total)
    }

    pub fn norm_sqr(&self) -> Result<f64, SimError> {
        Ok(self.sandwich(|l, r, _| l.overlap(r))?.re)
    }

    pub fn normalized(mut self) -> Result<Self, SimError> {
        let norm = self.norm_sqr()?.sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(SimError::ZeroNorm);
        }
        for (c, _) in &mut self.terms {
            *c /= norm;
        }
        Ok(self)
    }

    /// Multiply every coefficient by `c`.
    pub fn scaled(mut self, c: Complex64) -> Self {
        for (coef, _) in &mut self.terms {
            *coef *= c;
        }
        self
    }

    fn check_word(&self, word: &WeylWord) -> Result<(), SimError> {
        if word.n_parties() != self.n_parties() {
            return Err(SimError::PartyMismatch { term: 0, got: self.n_parties(), expected: word.n_parties() });
        }
        Ok(())
    }

    /// Image under "peak at integer `k` ↦ qubit basis state `k mod 2`": the
    /// comb-to-qubit reduction for `d = 2`. Party 0 is the most significant
    /// index. Normalized.
    pub fn qubit_image(&self) -> Array1<Complex64> {
        let n = self.n_parties();
        let mut out = Array1::<Complex64>::zeros(1 << n);
        for (c, factors) in &self.terms {
            let images: Vec<[Complex64; 2]> = factors
                .iter()
                .map(|comb| {
                    let mut v = [Complex64::new(0.0, 0.0); 2];
                    for p in comb.peaks() {
                        v[(p.center.round() as i64).rem_euclid(2) as usize] += p.weight;
                    }
                    v
                })
                .collect();
            for (idx, slot) in out.iter_mut().enumerate() {
                let amp: Complex64 = images.iter().enumerate().map(|(j, v)| v[(idx >> (n - 1 - j)) & 1]).product();
                *slot += c * amp;
            }
        }
        let norm = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        out.mapv(|z| z / norm)
    }
}

/// Translation parameters `(a, s)` of each party factor of `word`.
fn party_actions(word: &WeylWord) -> Vec<(f64, f64)> {
    let params = word.params();
    let alpha = params.base_exponent();
    let step = (2.0 / params.d() as f64).sqrt();
    word.exponents().iter().map(|e| (e.m as f64 * alpha, e.n as f64 * step)).collect()
}

fn word_prefactor(word: &WeylWord) -> Complex64 {
    let (re, im) = word.phase().to_unit();
    Complex64::new(re, im)
}

/// The two-term GHZ comb state `(|↑↑↑⟩ − |↓↓↓⟩)/√2`, renormalized with the
/// cross term included.
pub fn ghz_state(params: &CombParams) -> Result<ProductStateSum, SimError> {
    let up = make_comb(CombKind::Up, params)?;
    let down = make_comb(CombKind::Down, params)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ProductStateSum::new(vec![
        (Complex64::new(h, 0.0), vec![up.clone(), up.clone(), up]),
        (Complex64::new(-h, 0.0), vec![down.clone(), down.clone(), down]),
    ])?
    .normalized()
}

/// `⟨ψ|W|ψ⟩ / ⟨ψ|ψ⟩`, every Gaussian integral in closed form.
pub fn weyl_expectation(state: &ProductStateSum, word: &WeylWord) -> Result<Complex64, SimError> {
    state.check_word(word)?;
    let actions = party_actions(word);
    let value = state.sandwich(|l, r, j| l.element(r, actions[j].0, actions[j].1))?;
    Ok(word_prefactor(word) * value / state.norm_sqr()?)
}

/// A uniform grid for [`quadrature_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
}

impl QuadratureGrid {
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n_points.max(2) - 1) as f64
    }

    /// A grid that spans every peak, shifted or not, by 12 widths on each
    /// side, with `points_per_width` samples per `Δ`.
    pub fn covering(state: &ProductStateSum, word: &WeylWord, points_per_width: usize) -> Self {
        let max_shift = party_actions(word).iter().map(|&(_, s)| s.abs()).fold(0.0, f64::max);
        let (mut lo, mut hi, mut width) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for comb in state.terms.iter().flat_map(|(_, f)| f) {
            lo = lo.min(comb.peaks[0].center);
            hi = hi.max(comb.peaks[comb.peaks.len() - 1].center);
            width = width.max(comb.width);
        }
        let pad = max_shift + 12.0 * width;
        let (lo, hi) = (lo - pad, hi + pad);
        let n_points = ((hi - lo) / width * points_per_width as f64).ceil() as usize + 1;
        Self { lo, hi, n_points }
    }
}

/// The same expectation as [`weyl_expectation`], by trapezoidal integration
/// of the sampled wavefunctions on `grid`. Multi-party terms factor into
/// single-party integrals, each done numerically.
pub fn quadrature_check(
    state: &ProductStateSum,
    word: &WeylWord,
    grid: &QuadratureGrid,
) -> Result<Complex64, SimError> {
    state.check_word(word)?;
    let actions = party_actions(word);
    let step = grid.step();
    let mut need = (f64::INFINITY, f64::NEG_INFINITY);
    for comb in state.terms.iter().flat_map(|(_, f)| f) {
        if step > comb.width / 2.0 || grid.n_points < 2 {
            return Err(SimError::GridTooCoarse { step, width: comb.width });
        }
        let max_shift = actions.iter().map(|&(_, s)| s.abs()).fold(0.0, f64::max);
        let pad = 8.0 * comb.width + max_shift;
        need.0 = need.0.min(comb.peaks[0].center - pad);
        need.1 = need.1.max(comb.peaks[comb.peaks.len() - 1].center + pad);
    }
    if grid.lo > need.0 || grid.hi < need.1 {
        return Err(SimError::GridTooNarrow { lo: grid.lo, hi: grid.hi, need_lo: need.0, need_hi: need.1 });
    }

    let xs: Vec<f64> = (0..grid.n_points).map(|i| grid.lo + i as f64 * step).collect();
    let integrate = |l: &GaussianComb, r: &GaussianComb, a: f64, s: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &x) in xs.iter().enumerate() {
            let w = if i == 0 || i + 1 == xs.len() { 0.5 } else { 1.0 };
            acc += w * l.evaluate(x).conj() * Complex64::from_polar(1.0, a * x) * r.evaluate(x - s);
        }
        acc * step
    };
    let value = state.sandwich(|l, r, j| Ok(integrate(l, r, actions[j].0, actions[j].1)))?;
    let norm = state.sandwich(|l, r, _| Ok(integrate(l, r, 0.0, 0.0)))?.re;
    Ok(word_prefactor(word) * value / norm)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub width: f64,
    /// `⟨V_k⟩` for each operator of the three-party set.
    pub expectations: Vec<Complex64>,
    /// `max_k |⟨V_k⟩ − λ_k|`.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    /// Joint eigenvalues `λ_k` of the qubit image of the GHZ state.
    pub eigenvalues: Vec<Complex64>,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].deviation <= w[0].deviation)
    }

    pub fn final_deviation(&self) -> Option<f64> {
        self.rows.last().map(|r| r.deviation)
    }

    /// Columns: `delta`, then `re_Vk,im_Vk` per operator, then `deviation`.
    /// Values carry 12 significant digits.
    pub fn to_csv(&self) -> String {
        let k = self.eigenvalues.len();
        let mut out = String::from("delta");
        for i in 1..=k {
            write!(out, ",re_V{i},im_V{i}").unwrap();
        }
        out.push_str(",deviation\n");
        for row in &self.rows {
            out.push_str(&sig12(row.width));
            for z in &row.expectations {
                write!(out, ",{},{}", sig12(z.re), sig12(z.im)).unwrap();
            }
            writeln!(out, ",{}", sig12(row.deviation)).unwrap();
        }
        out
    }
}

/// `⟨V_k⟩` of the three-party set on the GHZ comb state at each width.
///
/// The reference eigenvalues come from the dense oracle: the joint
/// eigenvector nearest the state's qubit image.
pub fn convergence_study(
    widths: &[f64],
    params: &CombParams,
    oracle: &OracleConfig,
) -> Result<ConvergenceTable, SimError> {
    if widths.iter().any(|&w| !(w > 0.0 && w.is_finite())) || widths.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SimError::BadDeltas);
    }
    let set: OperatorSet = Builtin::V4.operator_set();
    let reference = ghz_state(params)?;
    let eigen = joint_eigenvector_near(&set, &reference.qubit_image(), oracle)?;
    let rows = widths
        .iter()
        .map(|&width| {
            let state = ghz_state(&params.with_width(width))?;
            let expectations =
                set.operators().iter().map(|w| weyl_expectation(&state, w)).collect::<Result<Vec<_>, _>>()?;
            let deviation =
                expectations.iter().zip(&eigen.eigenvalues).map(|(e, l)| (e - l).norm()).fold(0.0, f64::max);
            Ok(ConvergenceRow { width, expectations, deviation })
        })
        .collect::<Result<Vec<_>, SimError>>()?;
    Ok(ConvergenceTable { eigenvalues: eigen.eigenvalues, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Axis, LatticeParams, PartyExponent, RationalPhase};

    fn d2() -> LatticeParams {
        LatticeParams::new(2).unwrap()
    }

    fn single(kind: CombKind, params: &CombParams) -> ProductStateSum {
        ProductStateSum::new(vec![(Complex64::new(1.0, 0.0), vec![make_comb(kind, params).unwrap()])]).unwrap()
    }

    #[test]
    fn trivial_truncation() {
        let c = make_comb(CombKind::Up, &CombParams { width: 0.3, n_peaks: 0, envelope_width: 1.0 }).unwrap();
        assert_eq!(c.peaks().len(), 1);
        assert_eq!(c.peaks()[0].center, 0.0);
        assert!((c.peaks()[0].weight - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn weights_alternate_before_damping() {
        let c = make_comb(CombKind::Up, &CombParams { width: 0.01, n_peaks: 6, envelope_width: 1e9 }).unwrap();
        let w0 = c.peaks()[6].weight;
        for (i, p) in c.peaks().iter().enumerate() {
            let k = i as i64 - 6;
            let expect = if k.rem_euclid(2) == 0 { w0 } else { w0 * Complex64::i() };
            assert!((p.weight - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let ok = CombParams::default();
        assert!(matches!(make_comb(CombKind::Up, &ok.with_width(0.0)), Err(SimError::BadWidth(_))));
        assert!(matches!(make_comb(CombKind::Up, &ok.with_width(-1.0)), Err(SimError::BadWidth(_))));
        assert!(matches!(
            make_comb(CombKind::Up, &CombParams { envelope_width: 0.0, ..ok }),
            Err(SimError::BadEnvelope(_))
        ));
        assert!(matches!(GaussianComb::new(vec![], 0.1), Err(SimError::NoPeaks)));
    }

    #[test]
    fn combs_are_normalized() {
        for width in [0.4, 0.2, 0.05, 0.01] {
            for kind in [CombKind::Up, CombKind::Down] {
                let c = make_comb(kind, &CombParams::default().with_width(width)).unwrap();
                assert!((c.overlap(&c).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn up_down_overlap_vanishes() {
        let narrow = CombParams { width: 0.05, n_peaks: 90, envelope_width: 15.0 };
        let up = make_comb(CombKind::Up, &narrow).unwrap();
        let down = make_comb(CombKind::Down, &narrow).unwrap();
        assert!(up.overlap(&down).unwrap().norm() < 1e-6);
        // cross-checked by quadrature
        let wide = CombParams { width: 0.3, n_peaks: 8, envelope_width: 3.0 };
        let (up, down) = (make_comb(CombKind::Up, &wide).unwrap(), make_comb(CombKind::Down, &wide).unwrap());
        let h = 0.3 / 8.0;
        let n = (40.0 / h) as usize;
        let quad: Complex64 = (0..=n)
            .map(|i| {
                let x = -20.0 + i as f64 * h;
                up.evaluate(x).conj() * down.evaluate(x) * h
            })
            .sum();
        assert!((quad - up.overlap(&down).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn ghz_is_normalized() {
        let s = ghz_state(&CombParams::default()).unwrap();
        assert!((s.norm_sqr().unwrap() - 1.0).abs() < 1e-12);
        let id = WeylWord::identity(d2(), 3);
        assert!((weyl_expectation(&s, &id).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ghz_expectations_are_party_symmetric() {
        let s = ghz_state(&CombParams::default().with_width(0.1)).unwrap();
        let v1 = &Builtin::V4.operator_set().operators()[0].clone();
        let x = |p: usize| WeylWord::generator(d2(), 3, p, Axis::X, 1).unwrap();
        let y = |p: usize| WeylWord::generator(d2(), 3, p, Axis::Y, 1).unwrap();
        // X_A Y_B Y_C and its party permutations
        let xyy = x(0).multiply(&y(1)).unwrap().multiply(&y(2)).unwrap();
        let yxy = y(0).multiply(&x(1)).unwrap().multiply(&y(2)).unwrap();
        let yyx = y(0).multiply(&y(1)).unwrap().multiply(&x(2)).unwrap();
        let a = weyl_expectation(&s, &xyy).unwrap();
        assert!((a - weyl_expectation(&s, &yxy).unwrap()).norm() < 1e-12);
        assert!((a - weyl_expectation(&s, &yyx).unwrap()).norm() < 1e-12);
        // ⟨V_1⟩ ≈ −exp(−3π²Δ²/2) ≈ −0.86 at Δ = 0.1
        let v = weyl_expectation(&s, v1).unwrap();
        assert!(v.re < -0.8 && v.re > -0.9, "{v}");
    }

    #[test]
    fn single_peak_negative_control() {
        let s = ghz_state(&CombParams { width: 0.05, n_peaks: 0, envelope_width: 10.0 });
        // up and down coincide at one peak, so the GHZ combination vanishes
        assert!(matches!(s, Err(SimError::ZeroNorm)));
        let up = single(CombKind::Up, &CombParams { width: 0.05, n_peaks: 0, envelope_width: 10.0 });
        let yword = WeylWord::generator(d2(), 1, 0, Axis::Y, 1).unwrap();
        assert!(weyl_expectation(&up, &yword).unwrap().norm() < 1e-12);
    }

    #[test]
    fn sparse_comb_negative_control() {
        // three peaks carry almost no comb structure: far from the eigenvalues
        let params = CombParams { width: 0.05, n_peaks: 1, envelope_width: 10.0 };
        let t = convergence_study(&[0.05], &params, &OracleConfig::default()).unwrap();
        assert!(t.final_deviation().unwrap() > 0.3);
    }

    #[test]
    fn expectations_are_bounded() {
        let s = ghz_state(&CombParams::default().with_width(0.2)).unwrap();
        for m in -2..=2 {
            for n in -2..=2 {
                let w = WeylWord::from_exponents(
                    d2(),
                    [PartyExponent::new(m, n), PartyExponent::new(n, 0), PartyExponent::new(0, m)],
                    RationalPhase::new(1, 3),
                );
                assert!(weyl_expectation(&s, &w).unwrap().norm() <= 1.0 + 1e-10);
            }
        }
    }

    #[test]
    fn global_phase_is_irrelevant() {
        let s = ghz_state(&CombParams::default()).unwrap();
        let t = s.clone().scaled(Complex64::from_polar(1.0, 0.7));
        for w in Builtin::V4.operator_set().operators() {
            let (a, b) = (weyl_expectation(&s, w).unwrap(), weyl_expectation(&t, w).unwrap());
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn quadrature_matches_closed_form_single_party() {
        let params = CombParams { width: 0.15, n_peaks: 6, envelope_width: 3.0 };
        let up = single(CombKind::Up, &params);
        for (axis, k) in [(Axis::X, 0), (Axis::X, 1), (Axis::Y, 1), (Axis::Y, -2)] {
            let w = WeylWord::generator(d2(), 1, 0, axis, k).unwrap();
            let grid = QuadratureGrid::covering(&up, &w, 6);
            let q = quadrature_check(&up, &w, &grid).unwrap();
            let c = weyl_expectation(&up, &w).unwrap();
            assert!((q - c).norm() < 1e-8, "{axis:?}^{k}: {q} vs {c}");
        }
    }

    #[test]
    fn quadrature_rejects_bad_grids() {
        let params = CombParams { width: 0.1, n_peaks: 3, envelope_width: 2.0 };
        let up = single(CombKind::Up, &params);
        let w = WeylWord::generator(d2(), 1, 0, Axis::X, 1).unwrap();
        let coarse = QuadratureGrid { lo: -10.0, hi: 10.0, n_points: 50 };
        assert!(matches!(quadrature_check(&up, &w, &coarse), Err(SimError::GridTooCoarse { .. })));
        let narrow = QuadratureGrid { lo: -1.0, hi: 1.0, n_points: 4001 };
        assert!(matches!(quadrature_check(&up, &w, &narrow), Err(SimError::GridTooNarrow { .. })));
    }

    #[test]
    fn qubit_image_of_ghz() {
        let img = ghz_state(&CombParams::default()).unwrap().qubit_image();
        // ∝ (|uuu⟩ − |vvv⟩) with u ≈ (1, i), v ≈ (1, −i): no weight on |000⟩
        assert!(img[0].norm() < 1e-6);
        assert!((img.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn convergence_edge_cases() {
        let cfg = OracleConfig::default();
        let empty = convergence_study(&[], &CombParams::default(), &cfg).unwrap();
        assert!(empty.rows.is_empty());
        assert!(matches!(convergence_study(&[0.05, 0.1], &CombParams::default(), &cfg), Err(SimError::BadDeltas)));
        assert!(matches!(convergence_study(&[-0.1], &CombParams::default(), &cfg), Err(SimError::BadDeltas)));
    }

    #[test]
    fn convergence_table_csv() {
        let t = convergence_study(&[0.2, 0.1, 0.05], &CombParams::default(), &OracleConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.is_monotone());
        assert!(t.final_deviation().unwrap() < 0.05);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "delta,re_V1,im_V1,re_V2,im_V2,re_V3,im_V3,re_V4,im_V4,deviation");
        assert_eq!(lines.count(), 3);
    }
}
