//! Geometry of the thermodynamical phase space.
//!
//! Exact symbolic tensors over Laurent polynomials (`exactalg`, `diffgeo`,
//! `tps`, `sympl`, `heisenberg`) and order-3 jets for smooth potentials
//! (`autodiff`, `legendre`).

pub mod autodiff;
pub mod cli;
pub mod error;
pub mod diffgeo;
pub mod exactalg;
pub mod heisenberg;
pub mod legendre;
pub mod report;
pub mod suites;
pub mod sympl;
pub mod tps;

pub use error::{GeoError, Result};
