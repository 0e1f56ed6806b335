//! Observer design and simulation for SISO linear systems whose scalars are
//! quaternions.
//!
//! The toolbox works natively over the quaternions in a determinant-free
//! style: right eigenvalues are handled as similarity classes, realizations
//! are brought to observable companion form directly from the observability
//! matrix, and observer gains come from coefficient updates in companion
//! coordinates, from the one-shot Ackermann formula (real targets), or from
//! the conjugate-transpose duality route.

pub mod checks;
pub mod eig;
pub mod error;
pub mod io;
pub mod matrix;
pub mod observer;
pub mod poly;
pub mod quat;
pub mod realization;
pub mod simulate;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{QMatrix, RightSpectrum};
pub use observer::{place_ackermann, place_companion, place_dual, Method, ObserverDesign};
pub use poly::{poly_from_right_roots, QPoly, ZeroKind};
pub use quat::{are_similar, Quat, SimilarityClass};
pub use realization::{CompanionRealization, StateSpace};
pub use simulate::{simulate_error, simulate_observer, InputSignal, SimConfig, SimTrace};
pub use tol::Tol;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
