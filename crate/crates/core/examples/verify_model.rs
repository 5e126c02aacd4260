//! Run the full check suite on a catalog model and print the reports.
//!
//! ```text
//! cargo run --release --example verify_model -- heisenberg-cl3-mixed
//! ```

use htype::cli::{verify_model, DEFAULT_CHECKS};
use htype::models::{catalog, model_by_name};

fn main() -> htype::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "quaternionic-hopf-s7".into());
    let spec = catalog().into_iter().find(|s| s.name == name);
    if let Some(spec) = &spec {
        println!("{}", spec.summary());
    }
    let model = model_by_name(&name)?;
    let checks: Vec<String> = DEFAULT_CHECKS.iter().map(|s| s.to_string()).collect();
    let outcome = verify_model(&model, &checks, 16, 42, None)?;
    for r in &outcome.reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!("{:<24} {status:<5} {:.2e}", r.check, r.max_residual);
    }
    for s in &outcome.skipped {
        println!("{:<24} skip  {}", s.check, s.reason);
    }
    println!("torsion class {:?}, κ {:?}", outcome.torsion_class, outcome.kappa);
    println!("quaternionic type {:?}", outcome.quaternionic);
    Ok(())
}
