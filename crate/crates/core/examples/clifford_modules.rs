//! Clifford modules: minimal dimensions, relations, and the structure of
//! the Lie algebra generated by the `J` maps.
//!
//! ```text
//! cargo run --example clifford_modules
//! ```

use htype::clifford::{analyze_j_algebra, build_representation, minimal_dimension, wedge_to_cl2, CliffordElement};

fn main() -> htype::Result<()> {
    println!(" m   d(m)  relation   lie-dim");
    for m in 1..=9 {
        let rep = build_representation(m, 1, &[1])?;
        let alg = analyze_j_algebra(&rep);
        println!("{m:>2} {:>6} {:>10.1e} {:>9}", minimal_dimension(m), rep.relation_residual(), alg.lie_dimension);
    }

    // the two chiralities of Cl(R^3) on R^4
    for chi in [1, -1] {
        let rep = build_representation(3, 1, &[chi])?;
        println!("chirality {chi:+}: J1 J2 J3 = {:?} I", analyze_j_algebra(&rep).sigma_scalar);
    }

    // J_z for z = (1, 2, 2) squares to -|z|^2 = -9
    let rep = build_representation(3, 2, &[1, -1])?;
    let jz = rep.apply_vector(&[1.0, 2.0, 2.0])?;
    println!("J_z^2 diagonal: {:?}", (&jz * &jz).diagonal().as_slice());

    // the geometric product uses v·v = -|v|^2
    let v = CliffordElement::vector(&[3.0, 4.0]);
    println!("v·v = {}", v.geometric_product(&v)?.coefficient(&[]));
    let w = wedge_to_cl2(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0])?;
    println!("e1 ∧ e2 has e1e2 coefficient {}", w.coefficient(&[0, 1]));
    Ok(())
}
