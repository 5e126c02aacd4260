//! Diameter and first-eigenvalue bounds for a range of dimensions.
//!
//! ```text
//! cargo run --example bounds
//! ```

use htype::analysis::{bounds_clifford, bounds_general};

fn main() -> htype::Result<()> {
    println!("general, K = 1");
    for (n, m) in [(2, 1), (4, 3), (8, 7), (16, 8)] {
        let b = bounds_general(n, m, 1.0)?;
        println!("  n={n:<3} m={m:<2} diam ≤ {:>8.4}  λ₁ ≥ {:.4}", b.diameter_bound, b.lambda1_bound);
    }
    println!("parallel Clifford structure, κ = 2");
    for n in [4, 8, 12, 16] {
        let q = bounds_clifford(n, 3, 2.0, true)?;
        let c = bounds_clifford(n, 3, 2.0, false)?;
        println!(
            "  n={n:<3} quaternionic diam ≤ {:.4} λ₁ ≥ {:.4} | non-quaternionic diam ≤ {:.4} λ₁ ≥ {:.4}",
            q.diameter_bound, q.lambda1_bound, c.diameter_bound, c.lambda1_bound
        );
    }
    match bounds_general(4, 3, 0.0) {
        Err(e) => println!("K = 0: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
