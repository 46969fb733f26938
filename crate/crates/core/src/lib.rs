//! Bound states of the one-dimensional Dirac equation with a linear
//! Lorentz-scalar potential `V(x) = g|x|`.
//!
//! * [`specfun`]: gamma, Kummer, real-order Hermite and Airy functions.
//! * [`nonrel`]: the Schrödinger limit, solved with Airy zeros.
//! * [`dirac`]: the Hermite-function eigenvalue condition, spinor
//!   wavefunctions and diagnostics.
//! * [`shooting`]: an independent ODE shooting solver used as an oracle.

mod dd;
pub mod dirac;
pub mod nonrel;
pub mod params;
pub mod quadrature;
pub mod shooting;
pub mod specfun;

pub use params::{ModelParams, ParamsError, Parity};
