//! The polarization operator `e^{iΘ}`, the angle operator `Θ`, and the
//! distribution `P(θ)` of one-photon states.
//!
//! Two independent constructions of `e^{iΘ}` are provided:
//!
//! * **spectral**: `∫ d²ξ/π e^{iθ} |ξ><ξ|` on the quadrature grid;
//! * **polar**: the phase factor `U` of `F = U |F|`, built sector by sector.
//!
//! # Spectral assembly
//!
//! With `<m,n|ξ> = p_i ρ_i(r) e^{i q_i θ}` the node sum factorizes exactly,
//!
//! ```text
//! M_ij = p_i p_j* · 2 Σ_r u_r ρ_i(r) ρ_j(r) · (1/A) Σ_k g(θ_k) e^{i (q_i - q_j) θ_k}
//! ```
//!
//! so the cost is one radial Gram matrix plus a table of discrete Fourier
//! coefficients of `g`. The product `ρ_i ρ_j` carries `r^{|q_i| + |q_j|}`; when that
//! power is odd the radial sum uses the grid's odd-parity rule, which keeps the
//! entry exact once the radial order reaches `N + 1`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{max_abs, number_difference, OperatorMatrix, TwoModeBasis};
use crate::quad::{QuadratureGrid, RadialParity, RadialRule};
use crate::rs_field::rs_operators;
use crate::xi_rep::{mode_phases, one_photon_overlap, radial_profiles, ModeConfig, OnePhotonState};

/// Eigenvalues of `F_q† F_q` below this fraction of the largest one are treated as kernel.
pub const POLAR_NULL_TOL: f64 = 1e-10;

/// Angular resolution used by [`circular_moment`].
pub const MOMENT_THETA_COUNT: usize = 64;

/// Radial order used by [`circular_moment`]; the one-photon integrand needs only 2.
pub const MOMENT_RADIAL_ORDER: usize = 4;

/// Checks the grid resolves every charge difference of the basis without aliasing.
fn check_grid(basis: TwoModeBasis, grid: &QuadratureGrid) -> Result<()> {
    let cutoff = basis.cutoff();
    if grid.angular_order() < 2 * cutoff + 2 {
        return Err(Error::GridTooCoarse {
            cutoff,
            reason: format!("angular order {} < 2N + 2 = {}", grid.angular_order(), 2 * cutoff + 2),
        });
    }
    if grid.radial_order() < cutoff {
        return Err(Error::GridTooCoarse {
            cutoff,
            reason: format!("radial order {} < N = {cutoff}", grid.radial_order()),
        });
    }
    Ok(())
}

/// `Σ_r u_r ρ_i(r) ρ_j(r)` for one radial rule.
fn radial_gram(basis: TwoModeBasis, rule: &RadialRule) -> DMatrix<f64> {
    let dim = basis.dim();
    let mut profiles = DMatrix::<f64>::zeros(rule.len(), dim);
    let mut weighted = DMatrix::<f64>::zeros(rule.len(), dim);
    for (k, (&r, &u)) in rule.radii().iter().zip(rule.weights()).enumerate() {
        for (i, rho) in radial_profiles(basis, r).into_iter().enumerate() {
            profiles[(k, i)] = rho;
            weighted[(k, i)] = u * rho;
        }
    }
    profiles.transpose() * weighted
}

/// `Σ_nodes w g(θ) <m,n|ξ><ξ|m',n'>` with the angular function given at the grid angles.
fn assemble_spectral(mode: &ModeConfig, basis: TwoModeBasis, grid: &QuadratureGrid, g: &[Complex64]) -> OperatorMatrix {
    let cutoff = basis.cutoff() as i64;
    let angles = grid.angles();
    let count = angles.len() as f64;
    // coefficients for charge differences -2N..=2N
    let fourier: Vec<Complex64> = (-2 * cutoff..=2 * cutoff)
        .map(|k| {
            angles
                .iter()
                .zip(g)
                .map(|(&theta, &value)| value * Complex64::from_polar(1.0, k as f64 * theta))
                .sum::<Complex64>()
                / count
        })
        .collect();
    let even = radial_gram(basis, grid.radial(RadialParity::Even));
    let odd = radial_gram(basis, grid.radial(RadialParity::Odd));
    let phases = mode_phases(basis, mode);
    let charges: Vec<i64> = (0..basis.dim()).map(|i| basis.charge(i)).collect();
    OperatorMatrix::from_fn(basis, |i, j| {
        let radial = match RadialParity::of_charges(charges[i], charges[j]) {
            RadialParity::Even => even[(i, j)],
            RadialParity::Odd => odd[(i, j)],
        };
        let k = charges[i] - charges[j];
        phases[i] * phases[j].conj() * (2.0 * radial) * fourier[(k + 2 * cutoff) as usize]
    })
}

/// `e^{iΘ} = ∫ d²ξ/π e^{iθ} |ξ><ξ|` on the grid.
///
/// Requires angular order `>= 2N + 2` and radial order `>= N`.
pub fn phase_operator_spectral(mode: ModeConfig, basis: TwoModeBasis, grid: &QuadratureGrid) -> Result<OperatorMatrix> {
    check_grid(basis, grid)?;
    let g: Vec<Complex64> = grid.angles().iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
    Ok(assemble_spectral(&mode, basis, grid, &g))
}

/// `Θ = ∫ d²ξ/π θ |ξ><ξ|` with the branch `θ ∈ [0, 2π)`.
///
/// The node sitting on the branch cut takes the midpoint value `π` of the jump,
/// which makes the discrete angle sum symmetric about `π`.
pub fn theta_operator(mode: ModeConfig, basis: TwoModeBasis, grid: &QuadratureGrid) -> Result<OperatorMatrix> {
    check_grid(basis, grid)?;
    let g: Vec<Complex64> = grid
        .angles()
        .iter()
        .map(|&t| Complex64::from(if t == 0.0 { PI } else { t }))
        .collect();
    Ok(assemble_spectral(&mode, basis, grid, &g))
}

/// A direction where `F†F` is numerically singular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearNull {
    /// Charge of the sector the direction lives in.
    pub charge: i64,
    pub eigenvalue: f64,
}

/// Phase factor of `F` on the truncated space.
///
/// Truncated `F` has one kernel vector in every sector `q <= 0`, so `U` is a
/// partial isometry rather than a unitary; those directions are listed in `near_null`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactor {
    unitary: OperatorMatrix,
    near_null: Vec<NearNull>,
}

impl PolarFactor {
    pub fn unitary(&self) -> &OperatorMatrix {
        &self.unitary
    }

    pub fn near_null(&self) -> &[NearNull] {
        &self.near_null
    }
}

/// `U = F (F†F)^{-1/2}` computed per charge sector, with pseudo-inversion below
/// [`POLAR_NULL_TOL`] times the largest eigenvalue.
pub fn phase_operator_polar(mode: ModeConfig, basis: TwoModeBasis) -> PolarFactor {
    let f = rs_operators(mode, basis).f().entries().clone();
    let cutoff = basis.cutoff() as i64;
    // charges -N-1..=N; the lowest is empty and receives F's image of q = -N
    let sectors: Vec<Vec<usize>> = (-cutoff - 1..=cutoff)
        .map(|q| (0..basis.dim()).filter(|&i| basis.charge(i) == q).collect())
        .collect();
    let sector = |q: i64| &sectors[(q + cutoff + 1) as usize];

    let mut decompositions = Vec::new();
    let mut largest = 0.0f64;
    for q in -cutoff..=cutoff {
        let cols = sector(q);
        let rows = sector(q - 1);
        let block = DMatrix::from_fn(rows.len(), cols.len(), |r, c| f[(rows[r], cols[c])]);
        let eig = SymmetricEigen::new(block.adjoint() * &block);
        largest = largest.max(eig.eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(*v)));
        decompositions.push((q, block, eig));
    }

    let threshold = POLAR_NULL_TOL * largest;
    let mut near_null = Vec::new();
    let mut entries = DMatrix::<Complex64>::zeros(basis.dim(), basis.dim());
    for (q, block, eig) in decompositions {
        let inv_sqrt: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&v| {
                if v > threshold {
                    v.sqrt().recip()
                } else {
                    near_null.push(NearNull {
                        charge: q,
                        eigenvalue: v,
                    });
                    0.0
                }
            })
            .collect();
        let vecs = &eig.eigenvectors;
        let scaled = DMatrix::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, c)] * inv_sqrt[c]);
        let u_block = &block * scaled * vecs.adjoint();
        let (rows, cols) = (sector(q - 1), sector(q));
        for (r, &gr) in rows.iter().enumerate() {
            for (c, &gc) in cols.iter().enumerate() {
                entries[(gr, gc)] = u_block[(r, c)];
            }
        }
    }
    let unitary = OperatorMatrix::new(basis, entries).expect("square by construction");
    PolarFactor { unitary, near_null }
}

/// `||Π (M†M - I) Π||_inf`.
pub fn interior_unitarity(m: &OperatorMatrix, margin: usize) -> Result<f64> {
    m.basis().check_margin(margin)?;
    let defect = &(&m.adjoint() * m) - &OperatorMatrix::identity(m.basis());
    Ok(max_abs(&defect.interior_block(margin)))
}

/// Both constructions of `e^{iΘ}` for one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOperatorPair {
    spectral: OperatorMatrix,
    polar: PolarFactor,
    mode: ModeConfig,
    radial_order: usize,
    angular_order: usize,
}

impl PhaseOperatorPair {
    pub fn build(mode: ModeConfig, basis: TwoModeBasis, grid: &QuadratureGrid) -> Result<Self> {
        Ok(Self {
            spectral: phase_operator_spectral(mode, basis, grid)?,
            polar: phase_operator_polar(mode, basis),
            mode,
            radial_order: grid.radial_order(),
            angular_order: grid.angular_order(),
        })
    }

    pub fn spectral(&self) -> &OperatorMatrix {
        &self.spectral
    }

    pub fn polar(&self) -> &OperatorMatrix {
        self.polar.unitary()
    }

    pub fn polar_factor(&self) -> &PolarFactor {
        &self.polar
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.spectral.basis()
    }

    pub fn mode(&self) -> &ModeConfig {
        &self.mode
    }

    pub fn radial_order(&self) -> usize {
        self.radial_order
    }

    pub fn angular_order(&self) -> usize {
        self.angular_order
    }

    /// `||Π (spectral - polar) Π||_inf`.
    pub fn agreement(&self, margin: usize) -> Result<f64> {
        self.basis().check_margin(margin)?;
        Ok(max_abs(&(&self.spectral - self.polar.unitary()).interior_block(margin)))
    }

    /// Interior unitarity defects `(spectral, polar)`.
    pub fn interior_unitarity(&self, margin: usize) -> Result<(f64, f64)> {
        Ok((
            interior_unitarity(&self.spectral, margin)?,
            interior_unitarity(self.polar.unitary(), margin)?,
        ))
    }
}

/// `(||Π([Q,M] + M)Π||_inf, ||Π(M Q M† - Q - I)Π||_inf)`.
pub fn phase_q_commutators(m: &OperatorMatrix, margin: usize) -> Result<(f64, f64)> {
    let basis = m.basis();
    basis.check_margin(margin)?;
    let q = number_difference(basis);
    let grading = &q.commutator(m) + m;
    let conj = &(&(m * &q) * &m.adjoint()) - &(&q + &OperatorMatrix::identity(basis));
    Ok((
        max_abs(&grading.interior_block(margin)),
        max_abs(&conj.interior_block(margin)),
    ))
}

/// `||Π([Q,Θ] - i I)Π||_inf`. A bounded `Θ` cannot make this small; it is a diagnostic.
pub fn theta_commutator_residual(theta: &OperatorMatrix, margin: usize) -> Result<f64> {
    let basis = theta.basis();
    basis.check_margin(margin)?;
    let q = number_difference(basis);
    let target = OperatorMatrix::identity(basis).scale(Complex64::i());
    Ok(max_abs(&(&q.commutator(theta) - &target).interior_block(margin)))
}

/// `P(θ_j)` on a uniform angular grid for a one-photon state.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationDistribution {
    thetas: Vec<f64>,
    values: Vec<f64>,
    state: OnePhotonState,
    radial_order: usize,
}

impl PolarizationDistribution {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn state(&self) -> &OnePhotonState {
        &self.state
    }

    pub fn radial_order(&self) -> usize {
        self.radial_order
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.thetas.len() as f64
    }

    /// `Σ P(θ_j) Δθ`.
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spacing()
    }

    /// `Σ e^{i order θ_j} P(θ_j) Δθ`.
    pub fn moment(&self, order: u32) -> Complex64 {
        let dt = self.spacing();
        self.thetas
            .iter()
            .zip(&self.values)
            .map(|(&t, &p)| Complex64::from_polar(p * dt, order as f64 * t))
            .sum()
    }

    /// Largest `|P(θ_j) - analytic(θ_j)|`.
    pub fn max_deviation(&self) -> f64 {
        self.thetas
            .iter()
            .zip(&self.values)
            .map(|(&t, &p)| (p - analytic_density(&self.state, t)).abs())
            .fold(0.0, f64::max)
    }
}

/// `(1/2π) |c₊ e^{-iθ} + c₋ e^{iθ}|²`.
pub fn analytic_density(state: &OnePhotonState, theta: f64) -> f64 {
    let z = state.c_plus() * Complex64::from_polar(1.0, -theta) + state.c_minus() * Complex64::from_polar(1.0, theta);
    z.norm_sqr() / (2.0 * PI)
}

/// `P(θ) = (1/π) ∫ r dr |<ξ|ψ>|²` by radial Gauss–Laguerre quadrature of the closed-form overlap.
pub fn pol_distribution(
    state: &OnePhotonState,
    theta_count: usize,
    radial_order: usize,
) -> Result<PolarizationDistribution> {
    if theta_count < 8 {
        return Err(Error::InvalidOrder(format!("theta count {theta_count} < 8")));
    }
    let rule = RadialRule::new(radial_order, RadialParity::Even)?;
    let thetas: Vec<f64> = (0..theta_count)
        .map(|j| 2.0 * PI * j as f64 / theta_count as f64)
        .collect();
    let values = thetas
        .iter()
        .map(|&theta| rule.integrate(|r| one_photon_overlap(Complex64::from_polar(r, theta), state).norm_sqr()) / PI)
        .collect();
    Ok(PolarizationDistribution {
        thetas,
        values,
        state: *state,
        radial_order,
    })
}

/// `∫ e^{i order θ} P(θ) dθ` at the default resolution.
pub fn circular_moment(state: &OnePhotonState, order: u32) -> Result<Complex64> {
    if order == 0 {
        return Err(Error::InvalidOrder("moment order must be >= 1".into()));
    }
    Ok(pol_distribution(state, MOMENT_THETA_COUNT, MOMENT_RADIAL_ORDER)?.moment(order))
}
