//! Exact polynomial sub-Laplacian and carré du champ operators.
//!
//! Sphere models use `Δ_H = Δ_round - Σ_a Z̄_a²` where `Z̄_a` are the
//! round-unit vertical fields. They are Killing, hence divergence-free, so
//! no first-order correction appears. `Δ_round` acts on any polynomial
//! extension as `ΔF - E²F - (N-2) EF` with `E` the Euler operator.
//! Group models use `Δ_H = Σ_i X_i²` with left-invariant `X_i`.

use crate::error::{Error, Result};
use crate::foliation::{Backend, FoliationModel, PointCalculus};
use crate::geometry::{directional_derivative, sample_points, PolyField, Polynomial};

/// Polynomial operators `Δ_H`, `Γ` and `Γ^V` for one model.
#[derive(Clone, Debug)]
pub struct HorizontalOperators {
    backend: Backend,
    nn: usize,
    epsilon: f64,
    horizontal: Vec<PolyField>,
    vertical: Vec<PolyField>,
}

impl HorizontalOperators {
    pub fn new(model: &FoliationModel) -> Result<Self> {
        let vertical = model.vertical_fields().to_vec();
        if model.backend() == Backend::Sphere {
            for p in sample_points(&model.chart(), 3, 11) {
                let vals: Vec<Vec<f64>> = vertical.iter().map(|z| z.eval(&p)).collect();
                for (a, va) in vals.iter().enumerate() {
                    for (b, vb) in vals.iter().enumerate() {
                        let g: f64 = va.iter().zip(vb).map(|(s, t)| s * t).sum();
                        if (g - f64::from(u8::from(a == b))).abs() > 1e-12 {
                            return Err(Error::NotApplicable(
                                "polynomial sub-Laplacian needs round-orthonormal vertical fields".into(),
                            ));
                        }
                    }
                }
            }
        } else if model.group_structure().is_none() {
            return Err(Error::NotApplicable("polynomial sub-Laplacian needs a two-step group structure".into()));
        }
        Ok(Self {
            backend: model.backend(),
            nn: model.ambient_dim(),
            epsilon: model.epsilon(),
            horizontal: model.horizontal_spanning_fields().to_vec(),
            vertical,
        })
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.n() != self.nn {
            return Err(Error::Dimension { expected: self.nn, found: f.n() });
        }
        Ok(())
    }

    /// `Δ_H f` as a polynomial (exact on-chart).
    pub fn laplacian(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        match self.backend {
            Backend::Group => {
                let mut out = Polynomial::zero(self.nn);
                for x in &self.horizontal {
                    out = &out + &directional_derivative(x, &directional_derivative(x, f)?)?;
                }
                Ok(out)
            }
            Backend::Sphere => {
                let ef = f.euler();
                let mut out = &(&f.laplacian() - &ef.euler()) - &ef.scale(self.nn as f64 - 2.0);
                for z in &self.vertical {
                    out = &out - &directional_derivative(z, &directional_derivative(z, f)?)?;
                }
                Ok(out)
            }
        }
    }

    /// `Γ(f, g) = <∇_H f, ∇_H g>`.
    pub fn gamma(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        match self.backend {
            Backend::Group => {
                let mut out = Polynomial::zero(self.nn);
                for x in &self.horizontal {
                    out = &out + &(&directional_derivative(x, f)? * &directional_derivative(x, g)?);
                }
                Ok(out)
            }
            Backend::Sphere => {
                let mut out = Polynomial::zero(self.nn);
                for k in 0..self.nn {
                    out = &out + &(&f.partial(k) * &g.partial(k));
                }
                out = &out - &(&f.euler() * &g.euler());
                for z in &self.vertical {
                    out = &out - &(&directional_derivative(z, f)? * &directional_derivative(z, g)?);
                }
                Ok(out)
            }
        }
    }

    /// `Γ^V(f, g) = <∇_V f, ∇_V g>` for the metric `(1/ε) g₀` on `V`.
    pub fn gamma_v(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let mut out = Polynomial::zero(self.nn);
        for z in &self.vertical {
            out = &out + &(&directional_derivative(z, f)? * &directional_derivative(z, g)?);
        }
        Ok(out.scale(self.epsilon))
    }
}

/// `Δ_H f(p) = Σ_i (X_i X_i f - (∇_{X_i} X_i) f)` over the adapted frame at `p`.
pub fn sub_laplacian_apply(model: &FoliationModel, f: &Polynomial, p: &[f64]) -> Result<f64> {
    if f.n() != model.ambient_dim() {
        return Err(Error::Dimension { expected: model.ambient_dim(), found: f.n() });
    }
    Ok(PointCalculus::at(model, p)?.sub_laplacian(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{complex_hopf, model_by_name, quaternionic_hopf};

    #[test]
    fn linear_functions_on_hopf_spheres() {
        let s3 = complex_hopf(1, 4.0).unwrap();
        let ops = HorizontalOperators::new(&s3).unwrap();
        let x1 = Polynomial::var(4, 0);
        assert_eq!(ops.laplacian(&x1).unwrap(), x1.scale(-2.0));

        let s7 = quaternionic_hopf(1, 4.0).unwrap();
        let ops = HorizontalOperators::new(&s7).unwrap();
        let x1 = Polynomial::var(8, 0);
        assert_eq!(ops.laplacian(&x1).unwrap(), x1.scale(-4.0));
    }

    #[test]
    fn pointwise_route_matches_polynomial_route() {
        let s7 = model_by_name("quaternionic-hopf-s7").unwrap();
        let ops = HorizontalOperators::new(&s7).unwrap();
        let f = &(&Polynomial::var(8, 0) * &Polynomial::var(8, 5)) + &Polynomial::monomial(8, vec![0, 0, 3, 0, 0, 0, 0, 1], 0.7);
        let lf = ops.laplacian(&f).unwrap();
        for p in sample_points(&s7.chart(), 4, 3) {
            let direct = sub_laplacian_apply(&s7, &f, &p).unwrap();
            assert!((direct - lf.eval(&p)).abs() < 1e-9);
        }
    }

    #[test]
    fn heisenberg_gamma_of_coordinate() {
        let h = model_by_name("heisenberg").unwrap();
        let ops = HorizontalOperators::new(&h).unwrap();
        let x1 = Polynomial::var(3, 0);
        assert_eq!(ops.gamma(&x1, &x1).unwrap(), Polynomial::constant(3, 1.0));
        assert!(ops.gamma_v(&x1, &x1).unwrap().is_zero());
        assert!(ops.laplacian(&x1).unwrap().is_zero());
        assert!(ops.laplacian(&Polynomial::constant(3, 1.0)).unwrap().is_zero());
    }
}
