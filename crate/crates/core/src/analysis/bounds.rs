//! Closed-form diameter and spectral-gap bounds.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsResult {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub kappa: Option<f64>,
    pub quaternionic: bool,
    pub diameter_bound: f64,
    pub lambda1_bound: f64,
    pub formula_used: String,
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be positive".into()));
    }
    Ok(())
}

/// Bounds from `Ric_H ≥ K` with `K > 0`.
pub fn bounds_general(n: usize, m: usize, k: f64) -> Result<BoundsResult> {
    check_dims(n, m)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::NotApplicable(format!("the bounds need K > 0, got {k}")));
    }
    let (nf, mf) = (n as f64, m as f64);
    Ok(BoundsResult {
        n,
        m,
        k: Some(k),
        kappa: None,
        quaternionic: false,
        diameter_bound: 2.0 * 3f64.sqrt() * PI * ((nf + 4.0 * mf) * (nf + 6.0 * mf) / (nf * k)).sqrt(),
        lambda1_bound: nf * k / (nf + 3.0 * mf - 1.0),
        formula_used: "general: diam ≤ 2√3π√((n+4m)(n+6m)/(nK)), λ₁ ≥ nK/(n+3m-1)".into(),
    })
}

/// Bounds for a parallel horizontal Clifford structure with `κ > 0`.
pub fn bounds_clifford(n: usize, m: usize, kappa: f64, quaternionic: bool) -> Result<BoundsResult> {
    check_dims(n, m)?;
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::NotApplicable(format!("the Clifford bounds need κ > 0, got {kappa}")));
    }
    if m < 2 {
        return Err(Error::NotApplicable("the Clifford bounds need m ≥ 2".into()));
    }
    if quaternionic && m != 3 {
        return Err(Error::InvalidArgument("quaternionic type requires m = 3".into()));
    }
    let (nf, mf) = (n as f64, m as f64);
    let root_k = kappa.sqrt();
    let (diameter_bound, lambda1_bound, formula_used) = if quaternionic {
        (
            2.0 * 6f64.sqrt() * (PI / root_k) * ((nf + 12.0) * (nf + 18.0) / (nf * (nf + 8.0))).sqrt(),
            nf * kappa / 2.0,
            "quaternionic: diam ≤ 2√6(π/√κ)√((n+12)(n+18)/(n(n+8))), λ₁ ≥ nκ/2",
        )
    } else {
        let c = nf + 8.0 * (mf - 1.0);
        (
            4.0 * 3f64.sqrt() * (PI / root_k) * ((nf + 4.0 * mf) * (nf + 6.0 * mf) / (nf * c)).sqrt(),
            kappa / 4.0 * nf * c / (nf + 3.0 * mf - 1.0),
            "clifford: diam ≤ 4√3(π/√κ)√((n+4m)(n+6m)/(n(n+8(m-1)))), λ₁ ≥ (κ/4)n(n+8(m-1))/(n+3m-1)",
        )
    };
    Ok(BoundsResult {
        n,
        m,
        k: None,
        kappa: Some(kappa),
        quaternionic,
        diameter_bound,
        lambda1_bound,
        formula_used: formula_used.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s7_values() {
        let g = bounds_general(4, 3, 12.0).unwrap();
        assert!((g.lambda1_bound - 4.0).abs() < 1e-14);
        assert!((g.diameter_bound - 29.471).abs() < 1e-3);
        let c = bounds_clifford(4, 3, 2.0, true).unwrap();
        assert!((c.lambda1_bound - 4.0).abs() < 1e-14);
        assert!((c.diameter_bound - g.diameter_bound).abs() < 1e-12);
        assert_eq!(bounds_clifford(8, 3, 2.0, true).unwrap().lambda1_bound, 8.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(bounds_general(4, 3, 0.0).is_err());
        assert!(bounds_clifford(4, 1, 2.0, false).is_err());
        assert!(bounds_clifford(4, 3, -1.0, true).is_err());
    }
}
