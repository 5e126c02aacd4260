//! Exact Bott-connection calculus at a point of the quaternionic Hopf
//! fibration `S^3 → S^7 → S^4`.
//!
//! ```text
//! cargo run --example frame_calculus
//! ```

use htype::foliation::{adapted_frame, PointCalculus};
use htype::models::{model_by_name, model_points};

fn main() -> htype::Result<()> {
    let s7 = model_by_name("quaternionic-hopf-s7")?;
    let p = &model_points(&s7, 1, 3)[0];
    println!("point {p:.4?}");

    let frame = adapted_frame(&s7, p)?;
    for (a, z) in frame.z.iter().enumerate() {
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        println!("Z_{} has round norm {norm:.6}", a + 1);
    }

    let pc = PointCalculus::at(&s7, p)?;
    for a in 0..pc.m {
        let j = pc.j_operator(a);
        println!("J_{}:\n{j:.4}", a + 1);
        println!("|J^2 + I| = {:.1e}", (&j * &j + nalgebra::DMatrix::<f64>::identity(pc.n, pc.n)).amax());
    }

    // ∇_H T vanishes while ∇_V T does not
    let mut horizontal = 0.0f64;
    let mut vertical = 0.0f64;
    for e in 0..pc.n + pc.m {
        for a in 0..pc.m {
            let v = pc.nabla_j_operator(e, a).amax();
            if e < pc.n {
                horizontal = horizontal.max(v);
            } else {
                vertical = vertical.max(v);
            }
        }
    }
    println!("max |∇_X J| = {horizontal:.1e}, max |∇_Z J| = {vertical:.3}");
    println!("horizontal Ricci:\n{:.6}", pc.ricci_h());
    Ok(())
}
