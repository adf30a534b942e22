//! The RS mode operator `F = a f + b† f*` (with `f = e^{iφ}`) and its adjoint.
//!
//! `F` lowers the charge `q = m - n` by exactly one, so the grading identities
//! `[Q,F] = -F` and `[Q,F†] = F†` survive truncation unchanged. The eigen
//! equations `F|ξ> = ξ|ξ>`, `F†|ξ> = ξ*|ξ>` only hold away from the edge and
//! are measured under the interior projection.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ladder_a, ladder_b, number_difference, OperatorMatrix, TwoModeBasis};
use crate::xi_rep::{xi_state, ModeConfig};

/// Tolerance on `||ψ|| = 1` accepted by [`energy_density`].
pub const UNIT_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RsOperators {
    f: OperatorMatrix,
    f_dag: OperatorMatrix,
    mode: ModeConfig,
}

impl RsOperators {
    pub fn f(&self) -> &OperatorMatrix {
        &self.f
    }

    pub fn f_dag(&self) -> &OperatorMatrix {
        &self.f_dag
    }

    pub fn mode(&self) -> &ModeConfig {
        &self.mode
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.f.basis()
    }

    /// `||Π [F, F†] Π||_inf` over `m, n <= N - 1`.
    pub fn interior_commutator(&self) -> f64 {
        let comm = self.f.commutator(&self.f_dag);
        crate::fock::max_abs(&comm.interior_block(1))
    }
}

pub fn rs_operators(mode: ModeConfig, basis: TwoModeBasis) -> RsOperators {
    let f = mode.f();
    let a = ladder_a(basis);
    let b_dag = ladder_b(basis).adjoint();
    let f_op = &a.scale(f) + &b_dag.scale(f.conj());
    let f_dag = f_op.adjoint();
    RsOperators { f: f_op, f_dag, mode }
}

/// `||Π v|| / ||Π reference||` with `Π` the interior projection.
fn interior_ratio(basis: TwoModeBasis, margin: usize, v: &DVector<Complex64>, reference: &DVector<Complex64>) -> f64 {
    let idx = basis.interior_indices(margin);
    let num: f64 = idx.iter().map(|&i| v[i].norm_sqr()).sum();
    let den: f64 = idx.iter().map(|&i| reference[i].norm_sqr()).sum();
    (num / den).sqrt()
}

fn check_eigen_margin(basis: TwoModeBasis, margin: usize) -> Result<()> {
    basis.check_margin(margin)
}

/// Separate interior residuals of `F|ξ> = ξ|ξ>` and `F†|ξ> = ξ*|ξ>`.
pub fn eigen_residuals(xi: Complex64, mode: ModeConfig, basis: TwoModeBasis, margin: usize) -> Result<(f64, f64)> {
    check_eigen_margin(basis, margin)?;
    let ops = rs_operators(mode, basis);
    let c = xi_state(xi, mode, basis).coeffs().clone();
    let rf = ops.f.apply(&c)? - &c * xi;
    let rfd = ops.f_dag.apply(&c)? - &c * xi.conj();
    Ok((
        interior_ratio(basis, margin, &rf, &c),
        interior_ratio(basis, margin, &rfd, &c),
    ))
}

/// Larger of the two residuals from [`eigen_residuals`].
pub fn eigen_residual(xi: Complex64, mode: ModeConfig, basis: TwoModeBasis, margin: usize) -> Result<f64> {
    let (rf, rfd) = eigen_residuals(xi, mode, basis, margin)?;
    Ok(rf.max(rfd))
}

/// Interior residuals of the ladder actions
/// `a|ξ> = (ξ f* - b† f*²)|ξ>` and `b|ξ> = (ξ* f* - a† f*²)|ξ>`.
pub fn ladder_residuals(xi: Complex64, mode: ModeConfig, basis: TwoModeBasis, margin: usize) -> Result<(f64, f64)> {
    check_eigen_margin(basis, margin)?;
    let fc = mode.f().conj();
    let a = ladder_a(basis);
    let b = ladder_b(basis);
    let c = xi_state(xi, mode, basis).coeffs().clone();
    let ra = a.apply(&c)? - (&c * (xi * fc) - b.adjoint().apply(&c)? * (fc * fc));
    let rb = b.apply(&c)? - (&c * (xi.conj() * fc) - a.adjoint().apply(&c)? * (fc * fc));
    Ok((
        interior_ratio(basis, margin, &ra, &c),
        interior_ratio(basis, margin, &rb, &c),
    ))
}

/// `(||[Q,F] + F||_inf, ||[Q,F†] - F†||_inf)` on the full truncated space.
pub fn commutator_check(basis: TwoModeBasis, mode: ModeConfig) -> (f64, f64) {
    let ops = rs_operators(mode, basis);
    let q = number_difference(basis);
    let lower = &q.commutator(&ops.f) + &ops.f;
    let raise = &q.commutator(&ops.f_dag) - &ops.f_dag;
    (lower.max_abs(), raise.max_abs())
}

/// `Re <ψ|F†F|ψ>` for a unit state supported on `m, n <= N - 2`.
pub fn energy_density(psi: &DVector<Complex64>, mode: ModeConfig, basis: TwoModeBasis) -> Result<f64> {
    if basis.cutoff() < 2 {
        return Err(Error::CutoffTooSmall {
            cutoff: basis.cutoff(),
            what: "energy density",
        });
    }
    if psi.len() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: psi.len(),
        });
    }
    let norm_sqr = psi.norm_squared();
    if (norm_sqr - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::Unnormalized { norm_sqr });
    }
    let top = basis.cutoff() - 2;
    for (i, z) in psi.iter().enumerate() {
        let (m, n) = basis.label(i);
        if (m > top || n > top) && *z != Complex64::new(0.0, 0.0) {
            return Err(Error::SupportViolation { m, n });
        }
    }
    let ops = rs_operators(mode, basis);
    let f_psi = ops.f.apply(psi)?;
    Ok(f_psi.norm_squared())
}
