//! Operational cosine operator `C = X / sqrt(X² + P²)` built from the combined
//! quadratures of the two modes, compared with `(e^{iα} + e^{-iα}) / 2` where
//! `e^{iα}` is the polarization operator at zero mode phase.
//!
//! With `x = (a + a†)/√2`, `p = (a - a†)/(√2 i)` for each mode,
//! `X = x_a + x_b` and `P = p_a - p_b` satisfy `X + iP = √2 F` at `φ = 0`,
//! hence `X² + P² = F F† + F† F`. That operator conserves charge, so its inverse
//! fourth root is taken block by block. `C` is formed symmetrically as
//! `G^{-1/4} X G^{-1/4}`, which is Hermitian and coincides with `X G^{-1/2}` wherever
//! `X` and `G` commute.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{ladder_a, ladder_b, max_abs, OperatorMatrix, TwoModeBasis};
use crate::pol_phase::{phase_operator_spectral, NearNull};
use crate::quad::QuadratureGrid;
use crate::xi_rep::ModeConfig;

/// Eigenvalues of `X² + P²` below this fraction of the largest one are pseudo-inverted to zero.
pub const NFM_NULL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct NfmOperators {
    x: OperatorMatrix,
    p: OperatorMatrix,
    c: OperatorMatrix,
    exp_alpha: OperatorMatrix,
    near_null: Vec<NearNull>,
}

impl NfmOperators {
    pub fn x(&self) -> &OperatorMatrix {
        &self.x
    }

    pub fn p(&self) -> &OperatorMatrix {
        &self.p
    }

    pub fn c(&self) -> &OperatorMatrix {
        &self.c
    }

    pub fn exp_alpha(&self) -> &OperatorMatrix {
        &self.exp_alpha
    }

    /// Flagged directions of `X² + P²`, tagged with their charge sector.
    pub fn near_null(&self) -> &[NearNull] {
        &self.near_null
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.x.basis()
    }

    /// `||Π [X, P] Π||_inf` over `m, n <= N - 1`.
    pub fn interior_xp_commutator(&self) -> f64 {
        max_abs(&self.x.commutator(&self.p).interior_block(1))
    }

    /// Ascending eigenvalues of `Π C Π`.
    pub fn c_interior_spectrum(&self, margin: usize) -> Result<Vec<f64>> {
        self.basis().check_margin(margin)?;
        let block = self.c.interior_block(margin);
        let mut values: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
        values.sort_by(|a, b| a.total_cmp(b));
        Ok(values)
    }
}

/// Default grid for `e^{iα}`: the smallest orders that make its assembly exact.
pub fn default_grid(basis: TwoModeBasis) -> Result<QuadratureGrid> {
    let cutoff = basis.cutoff();
    QuadratureGrid::new(cutoff + 1, (2 * cutoff + 2).max(4))
}

pub fn nfm_build(basis: TwoModeBasis) -> Result<NfmOperators> {
    nfm_build_with_grid(basis, &default_grid(basis)?)
}

pub fn nfm_build_with_grid(basis: TwoModeBasis, grid: &QuadratureGrid) -> Result<NfmOperators> {
    let a = ladder_a(basis);
    let b = ladder_b(basis);
    let (a_dag, b_dag) = (a.adjoint(), b.adjoint());
    let s = Complex64::from(FRAC_1_SQRT_2);
    let x = (&(&a + &a_dag) + &(&b + &b_dag)).scale(s);
    let p = (&(&a - &a_dag) - &(&b - &b_dag)).scale(-Complex64::i() * s);

    let g = &(&x * &x) + &(&p * &p);
    let (g_inv_quarter, near_null) = inverse_fourth_root(&g);
    let c = &(&g_inv_quarter * &x) * &g_inv_quarter;
    let exp_alpha = phase_operator_spectral(ModeConfig::new(0.0), basis, grid)?;
    Ok(NfmOperators {
        x,
        p,
        c,
        exp_alpha,
        near_null,
    })
}

/// `G^{-1/4}` for a Hermitian, charge-conserving, positive semidefinite `G`.
fn inverse_fourth_root(g: &OperatorMatrix) -> (OperatorMatrix, Vec<NearNull>) {
    let basis = g.basis();
    let cutoff = basis.cutoff() as i64;
    let mut blocks = Vec::new();
    let mut largest = 0.0f64;
    for q in -cutoff..=cutoff {
        let idx: Vec<usize> = (0..basis.dim()).filter(|&i| basis.charge(i) == q).collect();
        let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| g.entries()[(idx[r], idx[c])]);
        let eig = SymmetricEigen::new(block);
        largest = largest.max(eig.eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(*v)));
        blocks.push((q, idx, eig));
    }
    let threshold = NFM_NULL_TOL * largest;
    let mut near_null = Vec::new();
    let mut out = DMatrix::<Complex64>::zeros(basis.dim(), basis.dim());
    for (q, idx, eig) in blocks {
        let scale: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&v| {
                if v > threshold {
                    v.powf(-0.25)
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
        let scaled = DMatrix::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, c)] * scale[c]);
        let root = scaled * vecs.adjoint();
        for (r, &gr) in idx.iter().enumerate() {
            for (c, &gc) in idx.iter().enumerate() {
                out[(gr, gc)] = root[(r, c)];
            }
        }
    }
    (
        OperatorMatrix::new(basis, out).expect("square by construction"),
        near_null,
    )
}

/// `||Π (C - (e^{iα} + e^{-iα})/2) Π||_inf`.
pub fn nfm_identity_residual(ops: &NfmOperators, margin: usize) -> Result<f64> {
    ops.basis().check_margin(margin)?;
    let cosine = (&ops.exp_alpha + &ops.exp_alpha.adjoint()).scale(Complex64::from(0.5));
    Ok(max_abs(&(&ops.c - &cosine).interior_block(margin)))
}
