//! The `|ξ>` representation: common eigenvectors of the RS mode operator `F` and `F†`.
//!
//! Expanding `exp(-|ξ|²/2 + ξ f⁻¹ a† + ξ* f⁻¹ b† - a† b† f⁻²)|00>` gives
//!
//! ```text
//! <m,n|ξ> = e^{-|ξ|²/2} e^{-iφ(m+n)} H_{m,n}(ξ, ξ*) / sqrt(m! n!)
//! ```
//!
//! with `f = e^{iφ}` (so `f⁻¹ = f*`). On the conjugate line `y = x*` the
//! two-variable Hermite polynomials reduce to Laguerre polynomials,
//! `H_{m,n}(ξ, ξ*) = (-1)^n n! ξ^{m-n} L_n^{(m-n)}(|ξ|²)` for `m >= n`, so each
//! coefficient is a normalized Laguerre function times a pure phase:
//!
//! ```text
//! <m,n|ξ> = e^{-iφ(m+n)} e^{i(m-n)θ} (-1)^{min(m,n)} l_{min(m,n)}^{|m-n|}(r²),   ξ = r e^{iθ}
//! ```
//!
//! That form is what [`xi_state`] evaluates. It is bounded for every `(m, n)`,
//! unlike the two-dimensional Hermite recurrence whose rounding grows with the
//! number of lattice paths.
//!
//! `|ξ>` is delta-normalized, so its truncated coefficient vector has a norm
//! that grows with the cutoff. Coefficients are only meaningful inside
//! quadratures or interior-projected residuals.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{make_basis, TwoModeBasis};
use crate::quad::QuadratureGrid;
use crate::special::laguerre_functions;

/// Tolerance on `|c₊|² + |c₋|² = 1` accepted by [`OnePhotonState::new`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Single k-mode data. Only `phase` (`φ = k·r`, so `f_k = e^{iφ}`) enters any computation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeConfig {
    pub phase: f64,
    /// Wave vector `k` in inverse length units. Metadata only.
    pub wave_vector: Option<[f64; 3]>,
    /// Field prefactor `sqrt(ħ c |k| / (2π)³)`. Metadata only.
    pub prefactor: Option<f64>,
}

impl ModeConfig {
    pub fn new(phase: f64) -> Self {
        Self {
            phase,
            wave_vector: None,
            prefactor: None,
        }
    }

    pub fn with_wave_vector(mut self, k: [f64; 3]) -> Self {
        self.wave_vector = Some(k);
        self
    }

    pub fn with_prefactor(mut self, prefactor: f64) -> Self {
        self.prefactor = Some(prefactor);
        self
    }

    /// `f = e^{iφ}`.
    pub fn f(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }
}

/// Real radial profiles `ρ_{m,n}(r) = (-1)^{min(m,n)} l_{min(m,n)}^{|m-n|}(r²)` in flat basis order.
pub fn radial_profiles(basis: TwoModeBasis, radius: f64) -> Vec<f64> {
    let cutoff = basis.cutoff();
    let t = radius * radius;
    let mut out = vec![0.0; basis.dim()];
    for alpha in 0..=cutoff {
        let ell = laguerre_functions(cutoff - alpha, alpha as f64, t);
        for (k, value) in ell.iter().enumerate() {
            let signed = if k % 2 == 0 { *value } else { -*value };
            out[basis.index(k + alpha, k)] = signed;
            out[basis.index(k, k + alpha)] = signed;
        }
    }
    out
}

/// Phase `e^{-iφ(m+n)}` of every basis state.
pub(crate) fn mode_phases(basis: TwoModeBasis, mode: &ModeConfig) -> Vec<Complex64> {
    basis
        .labels()
        .map(|(m, n)| Complex64::from_polar(1.0, -mode.phase * (m + n) as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct XiState {
    xi: Complex64,
    mode: ModeConfig,
    basis: TwoModeBasis,
    coeffs: DVector<Complex64>,
}

impl XiState {
    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    pub fn mode(&self) -> &ModeConfig {
        &self.mode
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize, n: usize) -> Complex64 {
        self.coeffs[self.basis.index(m, n)]
    }
}

pub fn xi_state(xi: Complex64, mode: ModeConfig, basis: TwoModeBasis) -> XiState {
    let (radius, theta) = xi.to_polar();
    let rho = radial_profiles(basis, radius);
    let phases = mode_phases(basis, &mode);
    let coeffs = DVector::from_fn(basis.dim(), |i, _| {
        let q = basis.charge(i) as f64;
        phases[i] * Complex64::from_polar(rho[i], q * theta)
    });
    XiState {
        xi,
        mode,
        basis,
        coeffs,
    }
}

/// A one-photon state of a single k-mode: `c₊ a†|00> + c₋ b†|00>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnePhotonState {
    c_plus: Complex64,
    c_minus: Complex64,
    mode: ModeConfig,
}

impl OnePhotonState {
    /// Requires `|c₊|² + |c₋|² = 1` within [`NORMALIZATION_TOL`].
    pub fn new(c_plus: Complex64, c_minus: Complex64, mode: ModeConfig) -> Result<Self> {
        let norm_sqr = c_plus.norm_sqr() + c_minus.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Unnormalized { norm_sqr });
        }
        Ok(Self { c_plus, c_minus, mode })
    }

    /// Rescales the amplitudes to unit norm. Fails only for the zero vector
    /// or non-finite input.
    pub fn normalized(c_plus: Complex64, c_minus: Complex64, mode: ModeConfig) -> Result<Self> {
        let norm_sqr = c_plus.norm_sqr() + c_minus.norm_sqr();
        if !(norm_sqr.is_finite() && norm_sqr > 0.0) {
            return Err(Error::Unnormalized { norm_sqr });
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            c_plus: c_plus * scale,
            c_minus: c_minus * scale,
            mode,
        })
    }

    pub fn c_plus(&self) -> Complex64 {
        self.c_plus
    }

    pub fn c_minus(&self) -> Complex64 {
        self.c_minus
    }

    pub fn mode(&self) -> &ModeConfig {
        &self.mode
    }
}

pub fn embed_one_photon(state: &OnePhotonState, basis: TwoModeBasis) -> Result<DVector<Complex64>> {
    if basis.cutoff() < 1 {
        return Err(Error::CutoffTooSmall {
            cutoff: basis.cutoff(),
            what: "a one-photon state",
        });
    }
    let mut psi = DVector::zeros(basis.dim());
    psi[basis.index(1, 0)] = state.c_plus;
    psi[basis.index(0, 1)] = state.c_minus;
    Ok(psi)
}

/// `<ξ|ψ> = Σ conj(coeffs) ψ`.
pub fn overlap_xi(xi_state: &XiState, psi: &DVector<Complex64>) -> Result<Complex64> {
    if psi.len() != xi_state.coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: xi_state.coeffs.len(),
            got: psi.len(),
        });
    }
    Ok(xi_state.coeffs.dotc(psi))
}

/// Closed form `<ξ|ψ> = e^{iφ} e^{-|ξ|²/2} (ξ* c₊ + ξ c₋)` for a one-photon state.
pub fn one_photon_overlap(xi: Complex64, state: &OnePhotonState) -> Complex64 {
    let gauss = (-0.5 * xi.norm_sqr()).exp();
    state.mode.f() * gauss * (xi.conj() * state.c_plus + xi * state.c_minus)
}

/// Largest deviation of `Σ_nodes w <m,n|ξ><ξ|m',n'>` from `δ_{mm'} δ_{nn'}` over
/// probe labels `m, n, m', n' <= probe_cut`.
pub fn completeness_residual(basis: TwoModeBasis, grid: &QuadratureGrid, probe_cut: usize) -> Result<f64> {
    if probe_cut + 2 > basis.cutoff() {
        return Err(Error::ProbeTooLarge {
            probe_cut,
            cutoff: basis.cutoff(),
        });
    }
    // coefficients do not depend on the cutoff, so the probe block is built directly
    let probe = make_basis(probe_cut);
    let mode = ModeConfig::new(0.0);
    let dim = probe.dim();
    let mut gram = vec![Complex64::new(0.0, 0.0); dim * dim];
    for node in grid.nodes() {
        let c = xi_state(node.xi, mode, probe);
        for i in 0..dim {
            let ci = c.coeffs[i] * node.weight;
            for j in 0..dim {
                gram[i * dim + j] += ci * c.coeffs[j].conj();
            }
        }
    }
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[i * dim + j] - target).norm());
        }
    }
    Ok(worst)
}

/// Delta-function check of `<ξ'|ξ>`: the largest deviation of
/// `Σ_nodes w <ξ'|ξ><ξ|m,n>` from `<ξ'|m,n>` over the given `ξ'` and probe labels
/// `m, n <= probe_cut`. The kernel `<ξ'|ξ>` is truncated at the basis cutoff.
pub fn reproducing_residual(
    basis: TwoModeBasis,
    grid: &QuadratureGrid,
    probes: &[Complex64],
    probe_cut: usize,
) -> Result<f64> {
    if probe_cut + 2 > basis.cutoff() {
        return Err(Error::ProbeTooLarge {
            probe_cut,
            cutoff: basis.cutoff(),
        });
    }
    let mode = ModeConfig::new(0.0);
    let targets: Vec<XiState> = probes.iter().map(|&xi| xi_state(xi, mode, basis)).collect();
    let probe_idx: Vec<usize> = basis
        .labels()
        .enumerate()
        .filter(|(_, (m, n))| *m <= probe_cut && *n <= probe_cut)
        .map(|(i, _)| i)
        .collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); probes.len() * probe_idx.len()];
    for node in grid.nodes() {
        let c = xi_state(node.xi, mode, basis);
        for (p, target) in targets.iter().enumerate() {
            let kernel = target.coeffs.dotc(&c.coeffs) * node.weight;
            for (k, &j) in probe_idx.iter().enumerate() {
                acc[p * probe_idx.len() + k] += kernel * c.coeffs[j].conj();
            }
        }
    }
    let mut worst = 0.0f64;
    for (p, target) in targets.iter().enumerate() {
        for (k, &j) in probe_idx.iter().enumerate() {
            worst = worst.max((acc[p * probe_idx.len() + k] - target.coeffs[j].conj()).norm());
        }
    }
    Ok(worst)
}
