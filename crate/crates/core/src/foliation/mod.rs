//! Bott connection, torsion and curvature of totally geodesic foliations,
//! plus the verification predicates built on them.
//!
//! Conventions: `R(X, Y) = ∇_X ∇_Y - ∇_Y ∇_X - ∇_{[X, Y]}`,
//! `Ric_H(X, Y) = Σ_ℓ <R(X_ℓ, X) Y, X_ℓ>`, `T(X, Y) = -π_V [X, Y]` on `H`,
//! and `<J_Z X, Y> = <Z, T(X, Y)>`.

pub mod calculus;
pub mod checks;
pub mod model;
pub mod report;
pub mod tensors;

pub use calculus::{adapted_frame, AdaptedFrameAt, PointCalculus};
pub use checks::{
    calculus_at, check_curvature_constancy, check_einstein, check_foliation_axioms, check_h_type,
    check_lemma_identities, check_oneill, check_parallel_clifford, check_torsion_class, check_vertical_curvature,
    check_yang_mills, detect_quaternionic, fit_lambda, ricci_lower_bound, CliffordFit, QuaternionicType, TorsionClass,
    TOL_ALGEBRAIC, TOL_CURVATURE,
};
pub use model::{Backend, FoliationModel};
pub use report::{CheckReport, Status};
pub use tensors::{
    bott_derivative, curvature, curvature_tensor, j_map, nabla_j, nabla_t, ricci_h, torsion, Direction, TensorAtPoint,
    TensorKind,
};
