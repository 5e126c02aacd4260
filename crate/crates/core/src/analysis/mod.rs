//! Sub-Laplacian, Γ-calculus, spectra and closed-form bounds.

pub mod bounds;
pub mod gamma;
pub mod laplacian;
pub mod spectrum;

pub use bounds::{bounds_clifford, bounds_general, BoundsResult};
pub use gamma::{
    cd_margin, check_cd_inequality, gamma_calculus, random_test_functions, GammaPolynomials, GammaValues,
};
pub use laplacian::{sub_laplacian_apply, HorizontalOperators};
pub use spectrum::{gram_matrices, rayleigh_ritz, SpectrumResult};
