//! Jost solutions, Weyl–Titchmarsh M-function and spectral pair of the
//! hermitised half-line Schrödinger system `−εF″ + QF = λF`.

pub mod algebra;
pub mod born;
pub mod error;
pub mod flow;
pub mod grid;
pub mod jost;
pub mod ode;
pub mod oracle;
pub mod potential;
pub mod quad;
pub mod scattering;
pub mod spectral;

pub use algebra::{BoundaryParam, CMat2, CVec2, C64};
pub use error::{JostError, Result};
pub use potential::{MatrixPotential, Potential};
