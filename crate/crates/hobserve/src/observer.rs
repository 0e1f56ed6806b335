//! Observer gain synthesis. Three routes:
//!
//! - `place_companion`: coefficient update in observable companion
//!   coordinates, `l_k = d_k - a_k`, then `L = T L_o`. Works for arbitrary
//!   monic quaternionic targets.
//! - `place_ackermann`: one-shot gain `L = a_d(A) O^-1 e_n`. Valid only for
//!   real-coefficient (central) targets; a noncentral target is rejected
//!   unless forced, and forcing reproduces the documented pole misplacement.
//! - `place_dual`: controller-side Ackermann on the dual pair (A*, C*),
//!   mapped back through `L = K*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, RightSpectrum};
use crate::poly::{poly_from_right_roots_tol, QPoly};
use crate::quat::Quat;
use crate::realization::StateSpace;
use crate::tol::Tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Companion,
    Ackermann,
    Dual,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Companion => write!(f, "companion"),
            Method::Ackermann => write!(f, "ackermann"),
            Method::Dual => write!(f, "dual"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObserverDesign {
    /// Output-injection gain, n x 1.
    pub gain: QMatrix,
    /// Gain in companion coordinates, L_o = T^-1 L.
    pub gain_companion: QMatrix,
    pub method: Method,
    pub target: QPoly,
    /// Right spectrum of A - L C, recomputed from the gain.
    pub achieved: RightSpectrum,
}

fn check_target(sys: &StateSpace, target: &QPoly) -> Result<()> {
    if !target.is_monic(1e-9) {
        return Err(Error::NotMonic);
    }
    if target.degree() != sys.dim() {
        return Err(Error::DegreeMismatch {
            got: target.degree(),
            expected: sys.dim(),
        });
    }
    Ok(())
}

fn error_matrix(sys: &StateSpace, gain: &QMatrix) -> Result<QMatrix> {
    Ok(&sys.a - &gain.matmul(&sys.c)?)
}

/// Coefficient update in companion coordinates (valid for quaternionic
/// target coefficients).
pub fn place_companion(sys: &StateSpace, target: &QPoly) -> Result<ObserverDesign> {
    place_companion_tol(sys, target, &Tol::default())
}

pub fn place_companion_tol(sys: &StateSpace, target: &QPoly, tol: &Tol) -> Result<ObserverDesign> {
    check_target(sys, target)?;
    let cr = sys.to_observable_companion_tol(tol)?;
    let gain_companion = QMatrix::column(
        (0..sys.dim())
            .map(|k| target.coeffs[k] - cr.poly.coeffs[k])
            .collect(),
    );
    let gain = cr.t.matmul(&gain_companion)?;
    let achieved = error_matrix(sys, &gain)?.right_spectrum_tol(tol)?;
    Ok(ObserverDesign {
        gain,
        gain_companion,
        method: Method::Companion,
        target: target.clone(),
        achieved,
    })
}

/// One-shot Ackermann gain L = a_d(A) O^-1 e_n. Real-coefficient targets
/// only; `force` bypasses the centrality check to reproduce the failure
/// mode on noncentral targets.
pub fn place_ackermann(sys: &StateSpace, target: &QPoly, force: bool) -> Result<ObserverDesign> {
    place_ackermann_tol(sys, target, force, &Tol::default())
}

pub fn place_ackermann_tol(
    sys: &StateSpace,
    target: &QPoly,
    force: bool,
    tol: &Tol,
) -> Result<ObserverDesign> {
    check_target(sys, target)?;
    if !target.has_real_coeffs(tol.algebra) && !force {
        return Err(Error::NoncentralTarget);
    }
    let n = sys.dim();
    let obs = sys.observability_matrix();
    if obs.rank_tol(tol) != n {
        return Err(Error::NotObservable);
    }
    let s = obs.solve_tol(&QMatrix::basis_column(n, n - 1), tol)?;
    let ad_a = target.left_substitute_matrix(&sys.a)?;
    let gain = ad_a.matmul(&s)?;
    let cr = sys.to_observable_companion_tol(tol)?;
    let gain_companion = cr.t_inv.matmul(&gain)?;
    let achieved = error_matrix(sys, &gain)?.right_spectrum_tol(tol)?;
    Ok(ObserverDesign {
        gain,
        gain_companion,
        method: Method::Ackermann,
        target: target.clone(),
        achieved,
    })
}

/// Duality route: design state feedback K for the dual controllable pair
/// (A*, C*) by controller-side Ackermann, K = e_n^T C(A*, C*)^-1 a_d(A*),
/// then map back with L = K*.
pub fn place_dual(sys: &StateSpace, target: &QPoly) -> Result<ObserverDesign> {
    place_dual_tol(sys, target, &Tol::default())
}

pub fn place_dual_tol(sys: &StateSpace, target: &QPoly, tol: &Tol) -> Result<ObserverDesign> {
    check_target(sys, target)?;
    if !target.has_real_coeffs(tol.algebra) {
        return Err(Error::NoncentralTarget);
    }
    let n = sys.dim();
    let dual = sys.dual();
    let ctrb = dual.controllability_matrix();
    if ctrb.rank_tol(tol) != n {
        return Err(Error::NotObservable);
    }
    // Row e_n^T C^-1: solve C* y = e_n and take the adjoint.
    let y = ctrb.adjoint().solve_tol(&QMatrix::basis_column(n, n - 1), tol)?;
    let row = y.adjoint();
    let ad_dual = target.left_substitute_matrix(&dual.a)?;
    let k = row.matmul(&ad_dual)?;
    let gain = k.adjoint();
    let cr = sys.to_observable_companion_tol(tol)?;
    let gain_companion = cr.t_inv.matmul(&gain)?;
    let achieved = error_matrix(sys, &gain)?.right_spectrum_tol(tol)?;
    Ok(ObserverDesign {
        gain,
        gain_companion,
        method: Method::Dual,
        target: target.clone(),
        achieved,
    })
}

pub fn place(sys: &StateSpace, target: &QPoly, method: Method, force: bool) -> Result<ObserverDesign> {
    match method {
        Method::Companion => place_companion(sys, target),
        Method::Ackermann => place_ackermann(sys, target, force),
        Method::Dual => place_dual(sys, target),
    }
}

/// Per-class comparison of the achieved spectrum against the target's right
/// root classes, plus a stability flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub achieved: RightSpectrum,
    pub expected: RightSpectrum,
    pub class_deviation: f64,
    pub matched: bool,
    pub stable: bool,
}

pub fn verify_design(sys: &StateSpace, design: &ObserverDesign, tol: f64) -> Result<VerifyReport> {
    let a_obs = error_matrix(sys, &design.gain)?;
    let achieved = a_obs.right_spectrum()?;
    let expected = design.target.right_root_classes()?;
    let class_deviation = achieved.max_deviation(&expected);
    let matched = achieved.matches(&expected, tol);
    let stable = achieved.classes.iter().all(|c| c.re < 0.0);
    Ok(VerifyReport {
        achieved,
        expected,
        class_deviation,
        matched,
        stable,
    })
}

/// Build a monic degree-n target polynomial from a pole list. Nonreal poles
/// that are not part of an exact conjugate pair count as quaternionic
/// placements. The degree budget 2s + r <= n (s nonreal conjugate-pair
/// classes, r real poles) is enforced through the exact degree match.
pub fn target_from_poles(poles: &[Quat], n: usize) -> Result<QPoly> {
    let p = poly_from_right_roots_tol(poles, 1e-9)?;
    if p.degree() != n {
        return Err(Error::DegreeMismatch {
            got: p.degree(),
            expected: n,
        });
    }
    Ok(p)
}
