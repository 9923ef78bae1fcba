//! Polynomial and truncated series arithmetic: sparse multivariate
//! polynomials, total-degree-truncated series, ramified univariate series,
//! grid series, weight vectors and the monomial substitution phi.

mod mpoly;
mod puiseux_series;
mod rgseries;
mod tseries;
mod weights;
mod ypoly;

pub use mpoly::{grlex, MPoly};
pub use puiseux_series::PuiseuxSeries;
pub use rgseries::{Coeff, RGSeries};
pub use tseries::TSeries;
pub use weights::{
    graded_decompose, initial_form_omega, lattice_box, make_injective_weights, nu_omega,
    nu_omega_tseries, omega_homogeneous_weight, phi_substitute, phi_substitute_poly, WeightVector,
};
pub use ypoly::YPoly;

