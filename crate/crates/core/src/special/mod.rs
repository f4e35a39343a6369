//! Real special functions: terminating Kummer series, Gamma, Laguerre
//! polynomials and Gauss-Laguerre quadrature.

mod gamma;
mod kummer;
mod quadrature;

pub use gamma::{gamma_fn, pochhammer};
pub use kummer::{kummer_coeffs, kummer_m, kummer_term_scale, laguerre_l, KummerParams};
pub use quadrature::{gauss_laguerre, QuadratureRule};
