//! Algebraic treatment of the Dirac-Coulomb radial problem through su(1,1)
//! ladder operators.
//!
//! The crate has two halves. [`symbolic`] holds an exact computer algebra for
//! second-order differential operators in the scaled radius `rho`, which is
//! used to build the factorization operators `B±`, the generators `Σ3, Σ±`
//! (lower spinor component) and `Ξ3, Ξ±` (upper component), and to prove
//! their commutation relations by normal-form comparison. The numeric half
//! ([`special`], [`spectrum`], [`states`], [`ladder`]) instantiates those
//! operators on quasi-polynomial radial functions and checks ladder actions,
//! eigenvalue equations, the energy spectrum and the coupled first-order
//! radial system.
//!
//! [`export`] renders tables, wavefunctions, level diagrams and
//! verification reports in the deterministic CSV/JSON/SVG formats used by the
//! command-line front end.

pub mod error;
pub mod export;
pub mod ladder;
pub mod report;
pub mod special;
pub mod spectrum;
pub mod states;
pub mod symbolic;

pub use error::{Error, Result};
pub use report::{ReportEntry, VerificationReport};
pub use spectrum::{QuantumNumbers, SpectralParams};
pub use states::{QuasiPolynomial, RadialComponent, SpinorState};
pub use symbolic::{Binding, DiffOp, Generator, ScalarPoly};
