//! SISO quaternionic state-space systems, observability/controllability,
//! and the determinant-free observable companion construction.
//!
//! The companion realization is built directly from the observability
//! matrix: s = O^-1 e_n, T = [s, As, ..., A^{n-1} s], A_o = T^-1 A T. The
//! companion polynomial is read off the negated rightmost column of A_o.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, RightSpectrum};
use crate::poly::QPoly;
use crate::quat::Quat;
use crate::tol::Tol;

/// Continuous-time SISO system x' = A x + B u, y = C x + D u over the
/// quaternions, inputs multiplying on the right.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateSpace {
    pub a: QMatrix,
    pub b: QMatrix,
    pub c: QMatrix,
    pub d: Quat,
}

impl StateSpace {
    pub fn new(a: QMatrix, b: QMatrix, c: QMatrix, d: Quat) -> Result<StateSpace> {
        let n = a.rows();
        if !a.is_square() {
            return Err(Error::Dimension("A must be square".into()));
        }
        if b.rows() != n || b.cols() != 1 {
            return Err(Error::Dimension(format!("B must be {n}x1")));
        }
        if c.rows() != 1 || c.cols() != n {
            return Err(Error::Dimension(format!("C must be 1x{n}")));
        }
        Ok(StateSpace { a, b, c, d })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Rows C, CA, ..., C A^{n-1}.
    pub fn observability_matrix(&self) -> QMatrix {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        let mut row = self.c.clone();
        for _ in 0..n {
            rows.push((0..n).map(|j| row.get(0, j)).collect());
            row = row.matmul(&self.a).expect("dims checked at construction");
        }
        QMatrix::from_rows(rows).expect("n >= 1")
    }

    /// Columns B, AB, ..., A^{n-1} B.
    pub fn controllability_matrix(&self) -> QMatrix {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        let mut col = self.b.clone();
        for _ in 0..n {
            cols.push(col.clone());
            col = self.a.matmul(&col).expect("dims checked at construction");
        }
        QMatrix::from_columns(&cols).expect("n >= 1")
    }

    pub fn is_observable(&self) -> bool {
        self.observability_matrix().rank() == self.dim()
    }

    pub fn is_controllable(&self) -> bool {
        self.controllability_matrix().rank() == self.dim()
    }

    /// Dual system (A*, C*, B*, D*): observability and controllability swap.
    pub fn dual(&self) -> StateSpace {
        StateSpace {
            a: self.a.adjoint(),
            b: self.c.adjoint(),
            c: self.b.adjoint(),
            d: self.d.conj(),
        }
    }

    pub fn to_observable_companion(&self) -> Result<CompanionRealization> {
        self.to_observable_companion_tol(&Tol::default())
    }

    pub fn to_observable_companion_tol(&self, tol: &Tol) -> Result<CompanionRealization> {
        let n = self.dim();
        let obs = self.observability_matrix();
        if obs.rank_tol(tol) != n {
            return Err(Error::NotObservable);
        }
        let s = obs.solve_tol(&QMatrix::basis_column(n, n - 1), tol)?;
        let mut cols = Vec::with_capacity(n);
        let mut col = s.clone();
        for _ in 0..n {
            cols.push(col.clone());
            col = self.a.matmul(&col)?;
        }
        let t = QMatrix::from_columns(&cols)?;
        let t_inv = t.solve_tol(&QMatrix::identity(n), tol)?;
        let a_o = t_inv.matmul(&self.a)?.matmul(&t)?;
        let c_o = self.c.matmul(&t)?;
        let coeffs: Vec<Quat> = (0..n)
            .map(|i| -a_o.get(i, n - 1))
            .chain(std::iter::once(Quat::ONE))
            .collect();
        let poly = QPoly::new(coeffs);
        let cond_estimate = t.frobenius_norm() * t_inv.frobenius_norm();
        Ok(CompanionRealization {
            a_o,
            c_o,
            t,
            t_inv,
            s,
            poly,
            cond_estimate,
        })
    }

    /// Right spectrum via the companion polynomial route (as opposed to the
    /// complex-adjoint route on A directly).
    pub fn spectrum_via_companion(&self) -> Result<RightSpectrum> {
        self.spectrum_via_companion_tol(&Tol::default())
    }

    pub fn spectrum_via_companion_tol(&self, tol: &Tol) -> Result<RightSpectrum> {
        self.to_observable_companion_tol(tol)?
            .poly
            .right_root_classes_tol(tol)
    }
}

/// Observable companion realization of an observable pair (A, C):
/// A_o = T^-1 A T with unit subdiagonal and coefficient column on the right,
/// C_o = C T = [0, ..., 0, 1], and the monic companion polynomial.
#[derive(Clone, Debug)]
pub struct CompanionRealization {
    pub a_o: QMatrix,
    pub c_o: QMatrix,
    pub t: QMatrix,
    /// Computed once by elimination; reused by every back-map.
    pub t_inv: QMatrix,
    pub s: QMatrix,
    pub poly: QPoly,
    /// Conditioning estimate ||T||_F * ||T^-1||_F.
    pub cond_estimate: f64,
}

impl CompanionRealization {
    pub fn dim(&self) -> usize {
        self.a_o.rows()
    }

    /// Frobenius norm of the companion polynomial left-substituted at A_o.
    /// Exact arithmetic gives the zero matrix.
    pub fn annihilation_residual(&self) -> f64 {
        self.poly
            .left_substitute_matrix(&self.a_o)
            .expect("A_o is square")
            .frobenius_norm()
    }
}
