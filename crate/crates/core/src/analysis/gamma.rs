//! Γ-calculus and the generalized curvature-dimension inequality.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::analysis::laplacian::HorizontalOperators;
use crate::error::{Error, Result};
use crate::foliation::{ricci_lower_bound, CheckReport, FoliationModel};
use crate::geometry::{random_polynomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaValues {
    pub gamma: f64,
    pub gamma_v: f64,
    pub gamma2: f64,
    pub gamma2_v: f64,
    pub delta_f: f64,
}

/// The five Γ-calculus quantities of `f` as polynomials.
#[derive(Clone, Debug)]
pub struct GammaPolynomials {
    pub gamma: Polynomial,
    pub gamma_v: Polynomial,
    pub gamma2: Polynomial,
    pub gamma2_v: Polynomial,
    pub delta_f: Polynomial,
}

impl GammaPolynomials {
    pub fn new(ops: &HorizontalOperators, f: &Polynomial) -> Result<Self> {
        let delta_f = ops.laplacian(f)?;
        let gamma = ops.gamma(f, f)?;
        let gamma_v = ops.gamma_v(f, f)?;
        // Γ₂(f) = ½ Δ_H Γ(f) - Γ(f, Δ_H f), likewise for Γ^V
        let gamma2 = &ops.laplacian(&gamma)?.scale(0.5) - &ops.gamma(f, &delta_f)?;
        let gamma2_v = &ops.laplacian(&gamma_v)?.scale(0.5) - &ops.gamma_v(f, &delta_f)?;
        Ok(Self { gamma, gamma_v, gamma2, gamma2_v, delta_f })
    }

    pub fn eval(&self, p: &[f64]) -> GammaValues {
        GammaValues {
            gamma: self.gamma.eval(p),
            gamma_v: self.gamma_v.eval(p),
            gamma2: self.gamma2.eval(p),
            gamma2_v: self.gamma2_v.eval(p),
            delta_f: self.delta_f.eval(p),
        }
    }
}

pub fn gamma_calculus(model: &FoliationModel, f: &Polynomial, p: &[f64]) -> Result<GammaValues> {
    if p.len() != model.ambient_dim() {
        return Err(Error::Dimension { expected: model.ambient_dim(), found: p.len() });
    }
    let ops = HorizontalOperators::new(model)?;
    Ok(GammaPolynomials::new(&ops, f)?.eval(p))
}

/// `Γ₂ + εΓ₂^V - [(1/n)(Δ_H f)² + (K - m/ε)Γ + (n/4)Γ^V]`.
pub fn cd_margin(v: &GammaValues, n: usize, m: usize, k: f64, epsilon: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    v.gamma2 + epsilon * v.gamma2_v - (v.delta_f * v.delta_f / n + (k - m / epsilon) * v.gamma + n / 4.0 * v.gamma_v)
}

/// Seeded test functions of degree `≤ degree` with coefficients in `[-1, 1]`.
pub fn random_test_functions(nn: usize, degree: u32, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count).map(|_| random_polynomial(nn, degree, &mut rng)).collect()
}

/// Check the curvature-dimension inequality for every `(f, ε, p)`.
///
/// `k` must not exceed the smallest eigenvalue of `Ric_H` over `points`.
pub fn check_cd_inequality(
    model: &FoliationModel,
    k: f64,
    fs: &[Polynomial],
    epsilons: &[f64],
    points: &[Vec<f64>],
    tol: f64,
) -> Result<CheckReport> {
    if let Some(&e) = epsilons.iter().find(|&&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidArgument(format!("CD parameter ε must be positive, got {e}")));
    }
    let ric_min = ricci_lower_bound(model, points)?;
    if k > ric_min + 1e-9 {
        return Err(Error::Precondition(format!("K = {k} exceeds the measured lower bound of Ric_H ({ric_min:.12})")));
    }
    let ops = HorizontalOperators::new(model)?;
    let polys = fs.par_iter().map(|f| GammaPolynomials::new(&ops, f)).collect::<Result<Vec<_>>>()?;
    let (n, m) = (model.n(), model.m());
    let worst = polys
        .par_iter()
        .map(|gp| {
            let mut worst = f64::INFINITY;
            for p in points {
                let v = gp.eval(p);
                for &e in epsilons {
                    worst = worst.min(cd_margin(&v, n, m, k, e));
                }
            }
            worst
        })
        .reduce(|| f64::INFINITY, f64::min);
    let residual = if worst.is_nan() { f64::NAN } else { (-worst).max(0.0) };
    Ok(CheckReport::new(
        "cd",
        residual,
        tol,
        points.len(),
        json!({"K": k, "ricci_lower_bound": ric_min, "min_margin": worst, "functions": fs.len(), "epsilons": epsilons}),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_points;
    use crate::models::model_by_name;

    #[test]
    fn constants_vanish() {
        let h = model_by_name("heisenberg").unwrap();
        let v = gamma_calculus(&h, &Polynomial::constant(3, 2.0), &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(v, GammaValues { gamma: 0.0, gamma_v: 0.0, gamma2: 0.0, gamma2_v: 0.0, delta_f: 0.0 });
        assert_eq!(cd_margin(&v, 2, 1, 0.0, 1.0), 0.0);
    }

    #[test]
    fn sphere_gradient_splits_orthogonally() {
        let s7 = model_by_name("quaternionic-hopf-s7").unwrap();
        let f = Polynomial::var(8, 0);
        for p in sample_points(&s7.chart(), 5, 2) {
            let v = gamma_calculus(&s7, &f, &p).unwrap();
            // |∇f|² = Γ + (1/ε)Γ^V + (normal part)², ε = 4
            let total = v.gamma + v.gamma_v / 4.0 + p[0] * p[0];
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k_above_ricci_is_rejected() {
        let h = model_by_name("heisenberg-quat").unwrap();
        let pts = sample_points(&h.chart(), 2, 1);
        let fs = random_test_functions(7, 2, 1, 1);
        assert!(matches!(check_cd_inequality(&h, 1.0, &fs, &[1.0], &pts, 1e-9), Err(Error::Precondition(_))));
    }
}
