use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AmbientChart, PolyField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Flat coordinates `(x, z)` on a nilpotent group; the metric makes the
    /// defining frame orthonormal.
    Group,
    /// The unit sphere in `R^N` with the round metric on `H` and
    /// `(1/ε)·round` on `V`.
    Sphere,
}

/// A totally geodesic foliation given by polynomial frame data on an ambient
/// chart, with vertical metric `g_V = (1/ε)·g₀_V`.
///
/// For the group backend `g₀` makes the defining horizontal and vertical
/// fields orthonormal; for the sphere backend `g₀` is the round metric.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationModel {
    name: String,
    backend: Backend,
    n: usize,
    m: usize,
    vertical: Vec<PolyField>,
    horizontal: Vec<PolyField>,
    epsilon: f64,
    group_structure: Option<Vec<DMatrix<f64>>>,
}

impl FoliationModel {
    pub fn new(
        name: impl Into<String>,
        backend: Backend,
        n: usize,
        m: usize,
        vertical: Vec<PolyField>,
        horizontal: Vec<PolyField>,
        epsilon: f64,
        group_structure: Option<Vec<DMatrix<f64>>>,
    ) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidModel(format!("epsilon must be positive, got {epsilon}")));
        }
        if m == 0 || n == 0 {
            return Err(Error::InvalidModel("both distributions must be nontrivial".into()));
        }
        let ambient = match backend {
            Backend::Group => n + m,
            Backend::Sphere => n + m + 1,
        };
        if vertical.len() != m {
            return Err(Error::InvalidModel(format!("expected {m} vertical fields, found {}", vertical.len())));
        }
        let enough = match backend {
            Backend::Group => horizontal.len() == n,
            Backend::Sphere => horizontal.len() >= n,
        };
        if !enough {
            return Err(Error::InvalidModel(format!(
                "{} horizontal fields cannot span a rank-{n} distribution on this backend",
                horizontal.len()
            )));
        }
        if let Some(bad) = vertical.iter().chain(&horizontal).find(|f| f.n() != ambient) {
            return Err(Error::Dimension { expected: ambient, found: bad.n() });
        }
        if let Some(a) = &group_structure {
            if a.len() != m || a.iter().any(|x| x.nrows() != n || x.ncols() != n) {
                return Err(Error::InvalidModel("group structure must be m matrices of size n×n".into()));
            }
        }
        Ok(Self { name: name.into(), backend, n, m, vertical, horizontal, epsilon, group_structure })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Rank of `H`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of `V`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn ambient_dim(&self) -> usize {
        match self.backend {
            Backend::Group => self.n + self.m,
            Backend::Sphere => self.n + self.m + 1,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn vertical_fields(&self) -> &[PolyField] {
        &self.vertical
    }

    pub fn horizontal_spanning_fields(&self) -> &[PolyField] {
        &self.horizontal
    }

    /// For two-step groups: the matrices `A^a` with `X_i = ∂_{x_i} + ½ Σ_a (A^a x)_i ∂_{z_a}`.
    pub fn group_structure(&self) -> Option<&[DMatrix<f64>]> {
        self.group_structure.as_deref()
    }

    pub fn chart(&self) -> AmbientChart {
        match self.backend {
            Backend::Group => AmbientChart::euclidean(self.ambient_dim()),
            Backend::Sphere => AmbientChart::unit_sphere(self.ambient_dim()).expect("N >= 2"),
        }
    }

    /// Same fields with vertical scale `ε'`.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
        }
        let mut out = self.clone();
        out.epsilon = epsilon;
        Ok(out)
    }

    /// Replace one vertical field, keeping everything else. Used to build
    /// deliberately malformed variants.
    pub fn with_vertical_field(&self, a: usize, field: PolyField) -> Result<Self> {
        let mut vertical = self.vertical.clone();
        if a >= vertical.len() {
            return Err(Error::InvalidArgument(format!("no vertical field {a}")));
        }
        vertical[a] = field;
        Self::new(
            self.name.clone(),
            self.backend,
            self.n,
            self.m,
            vertical,
            self.horizontal.clone(),
            self.epsilon,
            None,
        )
    }

    pub fn with_horizontal_fields(&self, horizontal: Vec<PolyField>) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.backend,
            self.n,
            self.m,
            self.vertical.clone(),
            horizontal,
            self.epsilon,
            None,
        )
    }
}
