//! Truncated two-mode Fock space `{|m,n> : 0 <= m,n <= N}` and dense operators on it.
//!
//! Mode `a` carries left-handed photons (index `m`), mode `b` right-handed
//! photons (index `n`). Flat indices are row-major in `(m, n)` with `m` outer:
//! `index(m, n) = m * (N + 1) + n`. Every serialized matrix uses this order.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square truncation of the two-mode space at `cutoff` photons per mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoModeBasis {
    cutoff: usize,
}

impl TwoModeBasis {
    pub fn new(cutoff: usize) -> Self {
        Self { cutoff }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }

    /// Flat index of `|m,n>`. Panics if either label exceeds the cutoff.
    pub fn index(&self, m: usize, n: usize) -> usize {
        assert!(
            m <= self.cutoff && n <= self.cutoff,
            "label ({m},{n}) outside cutoff {}",
            self.cutoff
        );
        m * (self.cutoff + 1) + n
    }

    pub fn label(&self, index: usize) -> (usize, usize) {
        assert!(index < self.dim(), "index {index} outside dimension {}", self.dim());
        (index / (self.cutoff + 1), index % (self.cutoff + 1))
    }

    /// Eigenvalue `m - n` of the number-difference operator on basis state `index`.
    pub fn charge(&self, index: usize) -> i64 {
        let (m, n) = self.label(index);
        m as i64 - n as i64
    }

    pub fn labels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(move |i| self.label(i))
    }

    /// Flat indices with `m, n <= cutoff - margin`, in ascending order.
    pub fn interior_indices(&self, margin: usize) -> Vec<usize> {
        let top = self.cutoff.saturating_sub(margin);
        (0..self.dim())
            .filter(|&i| {
                let (m, n) = self.label(i);
                m <= top && n <= top
            })
            .collect()
    }

    /// Checks `1 <= margin < cutoff`, the precondition shared by every interior residual.
    pub fn check_margin(&self, margin: usize) -> Result<()> {
        if margin == 0 || margin >= self.cutoff {
            return Err(Error::InvalidMargin {
                margin,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }
}

pub fn make_basis(cutoff: usize) -> TwoModeBasis {
    TwoModeBasis::new(cutoff)
}

/// Dense complex matrix over a [`TwoModeBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: TwoModeBasis,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(basis: TwoModeBasis, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = basis.dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::ShapeMismatch {
                rows: entries.nrows(),
                cols: entries.ncols(),
                dim,
            });
        }
        Ok(Self { basis, entries })
    }

    pub fn zeros(basis: TwoModeBasis) -> Self {
        let dim = basis.dim();
        Self {
            basis,
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(basis: TwoModeBasis) -> Self {
        let dim = basis.dim();
        Self {
            basis,
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_fn<F>(basis: TwoModeBasis, f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let dim = basis.dim();
        Self {
            basis,
            entries: DMatrix::from_fn(dim, dim, f),
        }
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.basis
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Matrix element `<m,n| M |m',n'>`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        self.entries[(self.basis.index(bra.0, bra.1), self.basis.index(ket.0, ket.1))]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis,
            entries: self.entries.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            basis: self.basis,
            entries: &self.entries * factor,
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, psi: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if psi.len() != self.basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                got: psi.len(),
            });
        }
        Ok(&self.entries * psi)
    }

    /// Largest entry modulus. This is the `||.||_inf` used by every residual in the crate.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `Π M Π` as a square block over `interior_indices(margin)`.
    pub fn interior_block(&self, margin: usize) -> DMatrix<Complex64> {
        let idx = self.basis.interior_indices(margin);
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.entries[(idx[r], idx[c])])
    }

    /// Largest modulus among entries connecting charges `q_row - q_col != shift`.
    pub fn grading_violation(&self, shift: i64) -> f64 {
        let dim = self.basis.dim();
        let mut worst = 0.0f64;
        for j in 0..dim {
            let qj = self.basis.charge(j);
            for i in 0..dim {
                if self.basis.charge(i) - qj != shift {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        OperatorMatrix {
            basis: self.basis,
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        OperatorMatrix {
            basis: self.basis,
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        OperatorMatrix {
            basis: self.basis,
            entries: &self.entries * &rhs.entries,
        }
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Annihilator of the left-handed mode: `<m-1,n| a |m,n> = sqrt(m)`.
pub fn ladder_a(basis: TwoModeBasis) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis);
    for (m, n) in basis.labels().filter(|&(m, _)| m > 0) {
        op.entries[(basis.index(m - 1, n), basis.index(m, n))] = Complex64::from((m as f64).sqrt());
    }
    op
}

/// Annihilator of the right-handed mode: `<m,n-1| b |m,n> = sqrt(n)`.
pub fn ladder_b(basis: TwoModeBasis) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis);
    for (m, n) in basis.labels().filter(|&(_, n)| n > 0) {
        op.entries[(basis.index(m, n - 1), basis.index(m, n))] = Complex64::from((n as f64).sqrt());
    }
    op
}

/// `Q = a†a - b†b`, built directly as the diagonal `m - n`.
pub fn number_difference(basis: TwoModeBasis) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis);
    for i in 0..basis.dim() {
        op.entries[(i, i)] = Complex64::from(basis.charge(i) as f64);
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn dimensions() {
        assert_eq!(make_basis(0).dim(), 1);
        assert_eq!(make_basis(1).dim(), 4);
        assert_eq!(make_basis(24).dim(), 625);
    }

    #[test]
    fn ladder_elements() {
        let basis = make_basis(4);
        let a = ladder_a(basis);
        assert_eq!(a.element((0, 0), (1, 0)), ONE);
        assert!((a.element((1, 3), (2, 3)) - Complex64::from(2f64.sqrt())).norm() < 1e-15);
        for n in 0..=4 {
            let col = basis.index(0, n);
            assert!(a.entries().column(col).iter().all(|z| *z == ZERO));
        }
        let b = ladder_b(basis);
        assert!((b.element((3, 1), (3, 2)) - Complex64::from(2f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn q_from_ladders_matches_diagonal() {
        for cutoff in [0, 1, 3, 7] {
            let basis = make_basis(cutoff);
            let a = ladder_a(basis);
            let b = ladder_b(basis);
            let from_ladders = &(&a.adjoint() * &a) - &(&b.adjoint() * &b);
            // sqrt(m)^2 reproduces m up to one rounding
            assert!((&from_ladders - &number_difference(basis)).max_abs() < 1e-14);
        }
        let q = number_difference(make_basis(4));
        assert_eq!(q.element((0, 0), (0, 0)), ZERO);
        assert_eq!(q.element((3, 1), (3, 1)), Complex64::from(2.0));
    }

    #[test]
    fn canonical_commutator_below_edge() {
        let basis = make_basis(6);
        let a = ladder_a(basis);
        let b = ladder_b(basis);
        let comm = a.commutator(&a.adjoint());
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                let (m, _) = basis.label(i);
                let (mj, _) = basis.label(j);
                if m < 6 && mj < 6 {
                    let expect = if i == j { ONE } else { ZERO };
                    assert!((comm.entries()[(i, j)] - expect).norm() < 1e-14);
                }
            }
        }
        assert_eq!(a.commutator(&b.adjoint()).max_abs(), 0.0);
        assert_eq!(a.commutator(&b).max_abs(), 0.0);
    }

    #[test]
    fn q_is_hermitian_with_integer_spectrum() {
        let basis = make_basis(5);
        let q = number_difference(basis);
        assert!(q.is_hermitian(0.0));
        let mut spectrum: Vec<i64> = (0..basis.dim()).map(|i| q.entries()[(i, i)].re as i64).collect();
        spectrum.sort_unstable();
        spectrum.dedup();
        assert_eq!(spectrum, (-5..=5).collect::<Vec<_>>());
    }

    #[test]
    fn number_operators_are_diagonal() {
        let basis = make_basis(4);
        let a = ladder_a(basis);
        let na = &a.adjoint() * &a;
        for (i, (m, _)) in basis.labels().enumerate() {
            assert!((na.entries()[(i, i)].re - m as f64).abs() < 1e-14);
        }
        assert!(na.grading_violation(0) < 1e-15);
    }

    #[test]
    fn shape_is_checked() {
        let err = OperatorMatrix::new(make_basis(1), DMatrix::zeros(3, 4)).unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                rows: 3,
                cols: 4,
                dim: 4
            }
        );
    }

    #[test]
    fn margin_precondition() {
        let basis = make_basis(4);
        assert!(basis.check_margin(0).is_err());
        assert!(basis.check_margin(4).is_err());
        assert!(basis.check_margin(3).is_ok());
        assert_eq!(basis.interior_indices(3), vec![0, 1, 5, 6]);
    }

    proptest! {
        #[test]
        fn index_roundtrip(cutoff in 0usize..40, m in 0usize..40, n in 0usize..40) {
            prop_assume!(m <= cutoff && n <= cutoff);
            let basis = make_basis(cutoff);
            let i = basis.index(m, n);
            prop_assert!(i < basis.dim());
            prop_assert_eq!(basis.label(i), (m, n));
        }
    }
}
