//! Exact polynomial vector-field calculus on flat space and on the unit
//! sphere, plus pointwise jets, frames and sphere quadrature.

pub mod frame;
pub mod jet;
pub mod polynomial;
pub mod sphere;

pub use frame::gram_schmidt_at;
pub use jet::{Jet, Jet1};
pub use polynomial::{
    bracket, directional_derivative, directional_derivative_field, levi_civita, AmbientChart, ChartKind, PolyField,
    Polynomial,
};
pub use sphere::{random_polynomial, sample_points, sphere_integral, sphere_moment};
