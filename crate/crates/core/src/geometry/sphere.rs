use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::geometry::polynomial::{AmbientChart, ChartKind, Polynomial};

/// Normalized moment `(1/|S^{N-1}|) ∫ x^α dσ` over the unit sphere.
///
/// Uses `Γ((α_i+1)/2) / Γ(1/2) = (α_i - 1)!! / 2^{α_i/2}`, so the Gamma
/// product reduces to `Π (α_i - 1)!! / (N (N+2) ⋯ (N + |α| - 2))`.
pub fn sphere_moment(n: usize, alpha: &[u32]) -> f64 {
    if alpha.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let mut num = 1.0;
    for &a in alpha {
        let mut k = a as i64 - 1;
        while k > 1 {
            num *= k as f64;
            k -= 2;
        }
    }
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let den: f64 = (0..half).map(|j| (n as f64) + 2.0 * f64::from(j)).product();
    num / den
}

/// Normalized integral of a polynomial over the unit sphere.
pub fn sphere_integral(f: &Polynomial) -> f64 {
    f.terms().map(|(e, c)| c * sphere_moment(f.n(), e)).sum()
}

/// Deterministic sample points: normalized Gaussians on the sphere, or the
/// cube `[-1, 1]^N` in flat coordinates.
pub fn sample_points(chart: &AmbientChart, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match chart.kind {
            ChartKind::UnitSphere => loop {
                let v: Vec<f64> = (0..chart.n).map(|_| rng.sample(StandardNormal)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-3 {
                    break v.into_iter().map(|x| x / norm).collect();
                }
            },
            ChartKind::Euclidean => (0..chart.n).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
        })
        .collect()
}

/// Seeded random polynomial with all monomials of degree `≤ degree` and
/// coefficients uniform in `[-1, 1]`.
pub fn random_polynomial(n: usize, degree: u32, rng: &mut impl Rng) -> Polynomial {
    let mut f = Polynomial::zero(n);
    for e in Polynomial::monomial_basis(n, degree) {
        f = &f + &Polynomial::monomial(n, e, rng.gen_range(-1.0..=1.0));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        assert_eq!(sphere_moment(4, &[1, 0, 0, 0]), 0.0);
        assert!((sphere_moment(4, &[2, 0, 0, 0]) - 0.25).abs() < 1e-15);
        assert!((sphere_moment(2, &[2, 2]) - 0.125).abs() < 1e-15);
        assert_eq!(sphere_moment(5, &[0; 5]), 1.0);
    }

    #[test]
    fn circle_moment_matches_trigonometric_integral() {
        // (1/2π) ∫ cos^4 = 3/8
        assert!((sphere_moment(2, &[4, 0]) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn sphere_points_are_unit_and_deterministic() {
        let chart = AmbientChart::unit_sphere(8).unwrap();
        let a = sample_points(&chart, 4, 1);
        assert_eq!(a.len(), 4);
        for p in &a {
            let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((r - 1.0).abs() < 1e-15);
        }
        assert_eq!(a, sample_points(&chart, 4, 1));
        assert_ne!(a, sample_points(&chart, 4, 2));
    }

    #[test]
    fn euclidean_points_in_cube() {
        let pts = sample_points(&AmbientChart::euclidean(5), 4, 1);
        assert!(pts.iter().flatten().all(|x| (-1.0..=1.0).contains(x)));
    }
}
