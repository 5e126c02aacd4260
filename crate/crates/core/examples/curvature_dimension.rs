//! Evaluate the Γ-calculus curvature-dimension inequality on random
//! polynomials, at the measured Ricci lower bound and above it.
//!
//! ```text
//! cargo run --release --example curvature_dimension
//! ```

use htype::analysis::{cd_margin, check_cd_inequality, gamma_calculus, random_test_functions};
use htype::foliation::ricci_lower_bound;
use htype::models::{model_by_name, model_points};

fn main() -> htype::Result<()> {
    for name in ["heisenberg-quat", "complex-hopf-s5", "quaternionic-hopf-s7"] {
        let model = model_by_name(name)?;
        let pts = model_points(&model, 8, 5);
        let k = ricci_lower_bound(&model, &pts)?;
        let fs = random_test_functions(model.ambient_dim(), 3, 6, 11);
        let report = check_cd_inequality(&model, k, &fs, &[0.1, 1.0, 10.0], &pts, 1e-8)?;
        println!(
            "{name:<22} K = {k:>8.4}  min margin {:>10.4}  {}",
            report.detail_f64("min_margin").unwrap_or(f64::NAN),
            if report.passed() { "pass" } else { "FAIL" }
        );
    }

    // a curvature constant well above Ric_H makes the margin negative
    let s7 = model_by_name("quaternionic-hopf-s7")?;
    let f = &random_test_functions(8, 2, 1, 3)[0];
    let p = &model_points(&s7, 1, 2)[0];
    let v = gamma_calculus(&s7, f, p)?;
    println!("S^7 with K = 200: margin {:.4}", cd_margin(&v, s7.n(), s7.m(), 200.0, 1.0));
    Ok(())
}
