//! Second-order Taylor jets of smooth functions at a point of `R^N`.
//!
//! A [`Jet`] carries the value, gradient and Hessian at the base point.
//! Products, compositions with scalar functions and directional derivatives
//! are exact up to the truncation order, which is all the frame calculus
//! needs: connection coefficients are built from first derivatives of frame
//! fields and curvature from first derivatives of those coefficients.

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub grad: Vec<f64>,
    /// Row-major `N × N`, symmetric.
    pub hess: Vec<f64>,
}

impl Jet {
    pub fn constant(n: usize, value: f64) -> Self {
        Self { value, grad: vec![0.0; n], hess: vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.grad.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            value: self.value + other.value,
            grad: self.grad.iter().zip(&other.grad).map(|(a, b)| a + b).collect(),
            hess: self.hess.iter().zip(&other.hess).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            value: s * self.value,
            grad: self.grad.iter().map(|a| s * a).collect(),
            hess: self.hess.iter().map(|a| s * a).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        self.value += s * other.value;
        for (a, b) in self.grad.iter_mut().zip(&other.grad) {
            *a += s * b;
        }
        for (a, b) in self.hess.iter_mut().zip(&other.hess) {
            *a += s * b;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n();
        let (f, g) = (self.value, other.value);
        let grad = (0..n).map(|i| f * other.grad[i] + g * self.grad[i]).collect();
        let mut hess = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                hess[i * n + j] = f * other.hess[i * n + j]
                    + g * self.hess[i * n + j]
                    + self.grad[i] * other.grad[j]
                    + other.grad[i] * self.grad[j];
            }
        }
        Self { value: f * g, grad, hess }
    }

    /// `φ ∘ self` given `φ`, `φ'`, `φ''` at the base value.
    pub fn compose(&self, phi: f64, dphi: f64, ddphi: f64) -> Self {
        let n = self.n();
        let grad = self.grad.iter().map(|g| dphi * g).collect();
        let mut hess = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                hess[i * n + j] = dphi * self.hess[i * n + j] + ddphi * self.grad[i] * self.grad[j];
            }
        }
        Self { value: phi, grad, hess }
    }

    pub fn recip(&self) -> Self {
        let v = self.value;
        self.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn sqrt(&self) -> Self {
        let s = self.value.sqrt();
        self.compose(s, 0.5 / s, -0.25 / (s * s * s))
    }

    pub fn inv_sqrt(&self) -> Self {
        let v = self.value;
        let r = 1.0 / v.sqrt();
        self.compose(r, -0.5 * r / v, 0.75 * r / (v * v))
    }

    /// First-order jet of the derivative along the jet vector field `x`:
    /// `Σ_k x^k ∂_k self`.
    pub fn derivative_along(&self, x: &[Jet]) -> Jet1 {
        let n = self.n();
        let mut value = 0.0;
        let mut grad = vec![0.0; n];
        for (k, xk) in x.iter().enumerate() {
            value += xk.value * self.grad[k];
            for j in 0..n {
                grad[j] += xk.grad[j] * self.grad[k] + xk.value * self.hess[k * n + j];
            }
        }
        Jet1 { value, grad }
    }

    pub fn truncate(&self) -> Jet1 {
        Jet1 { value: self.value, grad: self.grad.clone() }
    }
}

/// First-order jet: value and gradient.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet1 {
    pub value: f64,
    pub grad: Vec<f64>,
}

impl Jet1 {
    pub fn zero(n: usize) -> Self {
        Self { value: 0.0, grad: vec![0.0; n] }
    }

    pub fn axpy(&mut self, s: f64, other: &Self) {
        self.value += s * other.value;
        for (a, b) in self.grad.iter_mut().zip(&other.grad) {
            *a += s * b;
        }
    }

    /// `self += a * b` for first-order jets.
    pub fn add_product(&mut self, a: &Jet1, b: &Jet1) {
        self.value += a.value * b.value;
        for ((g, ga), gb) in self.grad.iter_mut().zip(&a.grad).zip(&b.grad) {
            *g += a.value * gb + b.value * ga;
        }
    }

    pub fn directional(&self, v: &[f64]) -> f64 {
        self.grad.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// Jet of the Euclidean pairing of two jet vectors.
pub fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    let n = a[0].n();
    let mut out = Jet::constant(n, 0.0);
    for (x, y) in a.iter().zip(b) {
        out = out.add(&x.mul(y));
    }
    out
}

/// `a - s * b` for jet vectors with a jet scalar `s`.
pub fn sub_scaled(a: &[Jet], s: &Jet, b: &[Jet]) -> Vec<Jet> {
    a.iter().zip(b).map(|(x, y)| x.sub(&s.mul(y))).collect()
}

pub fn scale_vec(s: &Jet, a: &[Jet]) -> Vec<Jet> {
    a.iter().map(|x| s.mul(x)).collect()
}

pub fn values(a: &[Jet]) -> Vec<f64> {
    a.iter().map(|x| x.value).collect()
}
