//! Structural balance of signed graphs measured with Mittag-Leffler matrix
//! functions.
//!
//! The crate covers the signed graph model ([`graph`]), symmetric spectra and
//! scalar Mittag-Leffler evaluation ([`spectral`]), the balance indices
//! ([`balance`]), the consensus and fractional diffusion dynamics they derive
//! from ([`dynamics`]), and signed cycle enumeration ([`cycles`]).

pub mod balance;
pub mod csv;
pub mod cycles;
pub mod dynamics;
pub mod error;
pub mod graph;
mod quad;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Sign, SignedGraph, SquareMatrix};
pub use spectral::{frac_bessel, ml_ln, ml_scalar, ml_trace, sym_eig, MLParams, Spectrum};
