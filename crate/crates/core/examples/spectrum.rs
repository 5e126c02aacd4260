//! Rayleigh–Ritz approximation of the sub-Laplacian spectrum on the Hopf
//! spheres, compared with the first-eigenvalue lower bound.
//!
//! ```text
//! cargo run --release --example spectrum
//! ```

use htype::analysis::{bounds_clifford, rayleigh_ritz};
use htype::models::model_by_name;

fn main() -> htype::Result<()> {
    for name in ["complex-hopf-s3", "quaternionic-hopf-s7"] {
        let model = model_by_name(name)?;
        for degree in 1..=3 {
            let r = rayleigh_ritz(&model, degree)?;
            let mut distinct: Vec<f64> = Vec::new();
            for &l in &r.eigenvalues {
                let l = if l.abs() < 1e-10 { 0.0 } else { l };
                if distinct.last().is_none_or(|&d| (l - d).abs() > 1e-8) {
                    distinct.push(l);
                }
            }
            println!(
                "{name} degree {degree}: rank {}/{}, cond {:.1e}, distinct {:.6?}",
                r.rank, r.basis_size, r.gram_condition, distinct
            );
        }
    }
    let s7 = rayleigh_ritz(&model_by_name("quaternionic-hopf-s7")?, 2)?;
    let bound = bounds_clifford(4, 3, 2.0, true)?;
    println!(
        "S^7: λ₁ = {:.6}, bound {:.6}",
        s7.first_nonzero(1e-9).unwrap_or(f64::NAN),
        bound.lambda1_bound
    );
    Ok(())
}
