//! Rayleigh–Ritz spectrum of `-Δ_H` on polynomials of bounded degree.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::laplacian::HorizontalOperators;
use crate::error::{Error, Result};
use crate::foliation::{Backend, FoliationModel};
use crate::geometry::{sphere_integral, Polynomial};

/// Relative cutoff for the near-null space of the mass matrix.
pub const NULL_THRESHOLD: f64 = 1e-10;
/// Condition number of the retained mass matrix above which the solve is refused.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub model: String,
    pub degree: u32,
    pub eigenvalues: Vec<f64>,
    pub gram_condition: f64,
    /// `max |A - Aᵀ|` before symmetrization.
    pub asymmetry: f64,
    pub basis_size: usize,
    pub rank: usize,
    /// Polynomial representatives of the Ritz vectors, in eigenvalue order.
    #[serde(skip)]
    pub eigenfunctions: Vec<Polynomial>,
}

impl SpectrumResult {
    /// Smallest eigenvalue above `threshold`.
    pub fn first_nonzero(&self, threshold: f64) -> Option<f64> {
        self.eigenvalues.iter().copied().find(|&l| l > threshold)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,eigenvalue\n");
        for l in &self.eigenvalues {
            out.push_str(&format!("{},{:.15e}\n", self.degree, l));
        }
        out
    }
}

/// Stiffness `A_{fg} = -∫ f Δ_H g` and mass `B_{fg} = ∫ f g` over the
/// monomial basis of degree `≤ degree`, with normalized sphere measure.
pub fn gram_matrices(model: &FoliationModel, degree: u32) -> Result<(Vec<Polynomial>, DMatrix<f64>, DMatrix<f64>)> {
    if model.backend() != Backend::Sphere {
        return Err(Error::UnsupportedBackend("the spectrum needs a compact sphere model".into()));
    }
    let nn = model.ambient_dim();
    let ops = HorizontalOperators::new(model)?;
    let basis: Vec<Polynomial> =
        Polynomial::monomial_basis(nn, degree).into_iter().map(|e| Polynomial::monomial(nn, e, 1.0)).collect();
    let lap = basis.par_iter().map(|g| ops.laplacian(g)).collect::<Result<Vec<_>>>()?;
    let k = basis.len();
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..k)
        .into_par_iter()
        .map(|i| {
            let a = (0..k).map(|j| -sphere_integral(&(&basis[i] * &lap[j]))).collect();
            let b = (0..k).map(|j| sphere_integral(&(&basis[i] * &basis[j]))).collect();
            (a, b)
        })
        .collect();
    let a = DMatrix::from_fn(k, k, |i, j| rows[i].0[j]);
    let b = DMatrix::from_fn(k, k, |i, j| rows[i].1[j]);
    Ok((basis, a, b))
}

pub fn rayleigh_ritz(model: &FoliationModel, degree: u32) -> Result<SpectrumResult> {
    let (basis, a, b) = gram_matrices(model, degree)?;
    let asymmetry = (&a - a.transpose()).amax();
    let a = (&a + a.transpose()) * 0.5;

    let eb = b.clone().symmetric_eigen();
    let bmax = eb.eigenvalues.max();
    let keep: Vec<usize> = (0..eb.eigenvalues.len()).filter(|&i| eb.eigenvalues[i] > NULL_THRESHOLD * bmax).collect();
    let bmin = keep.iter().map(|&i| eb.eigenvalues[i]).fold(f64::INFINITY, f64::min);
    let gram_condition = bmax / bmin;
    if !(gram_condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(gram_condition));
    }
    // B-orthonormal basis of the retained subspace
    let u = DMatrix::from_fn(basis.len(), keep.len(), |r, c| {
        let i = keep[c];
        eb.eigenvectors[(r, i)] / eb.eigenvalues[i].sqrt()
    });
    let reduced = u.transpose() * &a * &u;
    let reduced = (&reduced + reduced.transpose()) * 0.5;
    let ec = reduced.symmetric_eigen();
    let mut order: Vec<usize> = (0..keep.len()).collect();
    order.sort_by(|&i, &j| ec.eigenvalues[i].total_cmp(&ec.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| ec.eigenvalues[i]).collect();
    let eigenfunctions = order
        .iter()
        .map(|&i| {
            let coeffs = &u * ec.eigenvectors.column(i);
            let mut f = Polynomial::zero(model.ambient_dim());
            for (g, c) in basis.iter().zip(coeffs.iter()) {
                f = &f + &g.scale(*c);
            }
            f
        })
        .collect();
    Ok(SpectrumResult {
        model: model.name().to_string(),
        degree,
        eigenvalues,
        gram_condition,
        asymmetry,
        basis_size: basis.len(),
        rank: keep.len(),
        eigenfunctions,
    })
}
