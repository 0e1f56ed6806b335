//! Default numerical tolerances, overridable via the `HOBSERVE_TOL`
//! environment variable (a single float that replaces the spectral
//! tolerance used for class comparison).

#[derive(Clone, Copy, Debug)]
pub struct Tol {
    /// Absolute tolerance for scalar/matrix algebra checks.
    pub algebra: f64,
    /// Tolerance for spectral results (class comparison).
    pub spectral: f64,
    /// Relative pivot threshold for the singularity test in elimination.
    pub pivot: f64,
    /// Relative threshold for counting pivots in the rank computation.
    pub rank: f64,
    /// Tolerance when collapsing conjugate pairs of the complex-adjoint
    /// spectrum into similarity classes.
    pub pair: f64,
}

impl Default for Tol {
    fn default() -> Tol {
        Tol {
            algebra: 1e-9,
            spectral: 1e-6,
            pivot: 1e-12,
            rank: 1e-10,
            pair: 1e-7,
        }
    }
}

impl Tol {
    /// Defaults with the `HOBSERVE_TOL` override applied, if set and valid.
    pub fn from_env() -> Tol {
        let mut tol = Tol::default();
        if let Ok(s) = std::env::var("HOBSERVE_TOL") {
            if let Ok(v) = s.trim().parse::<f64>() {
                if v > 0.0 {
                    tol.spectral = v;
                }
            }
        }
        tol
    }
}
