use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::jet::Jet;

/// Real polynomial in `N` variables, stored as a sparse map from exponent
/// vectors to coefficients. Zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    /// The coordinate function `x_k` (0-based).
    pub fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Self::monomial(n, e, 1.0)
    }

    pub fn monomial(n: usize, exponents: Vec<u32>, c: f64) -> Self {
        assert_eq!(exponents.len(), n, "exponent vector has wrong length");
        let mut p = Self::zero(n);
        p.add_term(exponents, c);
        p
    }

    /// `Σ_k coeffs[k] x_k`.
    pub fn linear(coeffs: &[f64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (k, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[k] = 1;
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> f64 {
        self.terms.get(exponents).copied().unwrap_or(0.0)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.n);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), s * c);
        }
        out
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, &c) in &self.terms {
            if e[k] > 0 {
                let mut d = e.clone();
                d[k] -= 1;
                out.add_term(d, c * f64::from(e[k]));
            }
        }
        out
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        debug_assert_eq!(p.len(), self.n);
        self.terms
            .iter()
            .map(|(e, &c)| c * e.iter().zip(p).map(|(&k, &x)| x.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Second-order Taylor jet at `p`: value, gradient and Hessian.
    pub fn jet(&self, p: &[f64]) -> Jet {
        let n = self.n;
        let mut jet = Jet::constant(n, 0.0);
        let pow = |x: f64, k: u32| if k == 0 { 1.0 } else { x.powi(k as i32) };
        for (e, &c) in &self.terms {
            let vals: Vec<f64> = e.iter().zip(p).map(|(&k, &x)| pow(x, k)).collect();
            let prod_except = |skip: &[usize]| -> f64 {
                vals.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, v)| v).product()
            };
            jet.value += c * prod_except(&[]);
            for i in 0..n {
                if e[i] == 0 {
                    continue;
                }
                let di = f64::from(e[i]) * pow(p[i], e[i] - 1);
                jet.grad[i] += c * di * prod_except(&[i]);
                for j in 0..n {
                    if j == i {
                        if e[i] >= 2 {
                            let dii = f64::from(e[i] * (e[i] - 1)) * pow(p[i], e[i] - 2);
                            jet.hess[i * n + i] += c * dii * prod_except(&[i]);
                        }
                    } else if e[j] > 0 {
                        let dj = f64::from(e[j]) * pow(p[j], e[j] - 1);
                        jet.hess[i * n + j] += c * di * dj * prod_except(&[i, j]);
                    }
                }
            }
        }
        jet
    }

    /// `Σ x_k ∂_k f`, the Euler operator (multiplies each homogeneous part by its degree).
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, &c) in &self.terms {
            let d: u32 = e.iter().sum();
            out.add_term(e.clone(), c * f64::from(d));
        }
        out
    }

    /// Flat Laplacian `Σ ∂_k² f`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.n);
        for k in 0..self.n {
            out = &out + &self.partial(k).partial(k);
        }
        out
    }

    /// `‖x‖²`.
    pub fn norm_squared(n: usize) -> Self {
        let mut out = Self::zero(n);
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 2;
            out.add_term(e, 1.0);
        }
        out
    }

    /// All exponent vectors of total degree `≤ d`, ordered by degree then
    /// reverse-lexicographically.
    pub fn monomial_basis(n: usize, d: u32) -> Vec<Vec<u32>> {
        fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == n - 1 {
                cur[k] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[k] = e;
                rec(n, k + 1, left - e, cur, out);
            }
            cur[k] = 0;
        }
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut cur = vec![0; n];
            rec(n, 0, deg, &mut cur, &mut out);
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(&rhs.scale(-1.0)).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() || c.abs() != 1.0 {
                write!(f, "{}", c.abs())?;
                if !mono.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", mono.join("*"))?;
        }
        Ok(())
    }
}

/// Polynomial vector field `Σ X^k ∂_k` on `R^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyField {
    components: Vec<Polynomial>,
}

impl PolyField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.n() != n) {
            return Err(Error::Dimension { expected: n, found: bad.n() });
        }
        Ok(Self { components })
    }

    pub fn zero(n: usize) -> Self {
        Self { components: vec![Polynomial::zero(n); n] }
    }

    /// Constant coordinate field `∂_k`.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut f = Self::zero(n);
        f.components[k] = Polynomial::constant(n, 1.0);
        f
    }

    /// Linear field `x ↦ A x`.
    pub fn linear(a: &nalgebra::DMatrix<f64>) -> Self {
        let n = a.nrows();
        let components = (0..n).map(|r| Polynomial::linear(&a.row(r).iter().copied().collect::<Vec<_>>())).collect();
        Self { components }
    }

    /// The position field `x ↦ x`.
    pub fn position(n: usize) -> Self {
        Self::linear(&nalgebra::DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k]
    }

    pub fn eval(&self, p: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    pub fn jet(&self, p: &[f64]) -> Vec<Jet> {
        self.components.iter().map(|c| c.jet(p)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_n(self.n(), other.n())?;
        Ok(Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    /// Multiply every component by a polynomial.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Self> {
        check_n(self.n(), f.n())?;
        Ok(Self { components: self.components.iter().map(|c| c * f).collect() })
    }

    /// Euclidean pairing `Σ X^k Y^k`.
    pub fn dot(&self, other: &Self) -> Result<Polynomial> {
        check_n(self.n(), other.n())?;
        let mut out = Polynomial::zero(self.n());
        for (a, b) in self.components.iter().zip(&other.components) {
            out = &out + &(a * b);
        }
        Ok(out)
    }
}

fn check_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension { expected: a, found: b });
    }
    Ok(())
}

/// `D_X f = Σ X^k ∂_k f`.
pub fn directional_derivative(x: &PolyField, f: &Polynomial) -> Result<Polynomial> {
    check_n(x.n(), f.n())?;
    let mut out = Polynomial::zero(f.n());
    for (k, xk) in x.components().iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        let d = f.partial(k);
        if !d.is_zero() {
            out = &out + &(xk * &d);
        }
    }
    Ok(out)
}

/// Componentwise `D_X Y`.
pub fn directional_derivative_field(x: &PolyField, y: &PolyField) -> Result<PolyField> {
    check_n(x.n(), y.n())?;
    let components = y.components().iter().map(|c| directional_derivative(x, c)).collect::<Result<Vec<_>>>()?;
    PolyField::new(components)
}

/// `[X, Y] = D_X Y - D_Y X`.
pub fn bracket(x: &PolyField, y: &PolyField) -> Result<PolyField> {
    directional_derivative_field(x, y)?.sub(&directional_derivative_field(y, x)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Euclidean,
    UnitSphere,
}

/// Ambient coordinates for a backend: flat `R^N` or the unit sphere `S^{N-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientChart {
    pub kind: ChartKind,
    pub n: usize,
}

impl AmbientChart {
    pub fn euclidean(n: usize) -> Self {
        Self { kind: ChartKind::Euclidean, n }
    }

    pub fn unit_sphere(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("unit sphere needs N >= 2, got {n}")));
        }
        Ok(Self { kind: ChartKind::UnitSphere, n })
    }

    /// Tangential projection `A - <A, p> p`, polynomial because `‖p‖² = 1` on-chart.
    pub fn tangential(&self, a: &PolyField) -> Result<PolyField> {
        match self.kind {
            ChartKind::Euclidean => Ok(a.clone()),
            ChartKind::UnitSphere => {
                let pos = PolyField::position(self.n);
                let normal = a.dot(&pos)?;
                a.sub(&pos.mul_poly(&normal)?)
            }
        }
    }
}

/// Levi-Civita derivative of the flat metric or of the round metric on the
/// unit sphere. Sphere values are exact at points with `‖p‖ = 1` and
/// tangent `X(p)`.
pub fn levi_civita(chart: &AmbientChart, x: &PolyField, y: &PolyField) -> Result<PolyField> {
    check_n(chart.n, x.n())?;
    let d = directional_derivative_field(x, y)?;
    chart.tangential(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::var(n, k)
    }

    #[test]
    fn derivative_examples() {
        let f = &x(2, 0) * &x(2, 0);
        let d = directional_derivative(&PolyField::coordinate(2, 0), &f).unwrap();
        assert_eq!(d, x(2, 0).scale(2.0));

        let field = PolyField::new(vec![Polynomial::zero(2), x(2, 0)]).unwrap();
        assert_eq!(directional_derivative(&field, &x(2, 1)).unwrap(), x(2, 0));
    }

    #[test]
    fn heisenberg_bracket() {
        let n = 3;
        let xf = PolyField::new(vec![Polynomial::constant(n, 1.0), Polynomial::zero(n), x(n, 1).scale(-0.5)]).unwrap();
        let yf = PolyField::new(vec![Polynomial::zero(n), Polynomial::constant(n, 1.0), x(n, 0).scale(0.5)]).unwrap();
        assert_eq!(bracket(&xf, &yf).unwrap(), PolyField::coordinate(n, 2));
        assert_eq!(bracket(&xf, &xf).unwrap(), PolyField::zero(n));
        assert_eq!(
            bracket(&PolyField::coordinate(n, 0), &PolyField::coordinate(n, 1)).unwrap(),
            PolyField::zero(n)
        );
    }

    #[test]
    fn mismatched_dimensions() {
        assert!(bracket(&PolyField::zero(2), &PolyField::zero(3)).is_err());
        assert!(directional_derivative(&PolyField::zero(2), &Polynomial::zero(3)).is_err());
    }

    #[test]
    fn flat_levi_civita_of_coordinate_fields() {
        let chart = AmbientChart::euclidean(3);
        let z = levi_civita(&chart, &PolyField::coordinate(3, 0), &PolyField::coordinate(3, 1)).unwrap();
        assert_eq!(z, PolyField::zero(3));
    }

    #[test]
    fn great_circle_is_geodesic() {
        let chart = AmbientChart::unit_sphere(3).unwrap();
        let rot = PolyField::new(vec![x(3, 1).scale(-1.0), x(3, 0), Polynomial::zero(3)]).unwrap();
        let acc = levi_civita(&chart, &rot, &rot).unwrap();
        let v = acc.eval(&[1.0, 0.0, 0.0]);
        assert!(v.iter().all(|c| c.abs() < 1e-15), "{v:?}");
    }

    #[test]
    fn position_field_derivative_is_identity_on_tangent_vectors() {
        let chart = AmbientChart::unit_sphere(3).unwrap();
        let rot = PolyField::new(vec![x(3, 1).scale(-1.0), x(3, 0), Polynomial::zero(3)]).unwrap();
        let d = levi_civita(&chart, &rot, &PolyField::position(3)).unwrap();
        let p = [0.6, 0.0, 0.8];
        let want = rot.eval(&p);
        for (a, b) in d.eval(&p).iter().zip(&want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn jet_matches_symbolic_derivatives() {
        let n = 3;
        let f = &(&(&x(n, 0) * &x(n, 0)) * &x(n, 1)) + &(&x(n, 2).scale(3.0) * &x(n, 1));
        let p = [0.3, -1.1, 0.7];
        let j = f.jet(&p);
        assert!((j.value - f.eval(&p)).abs() < 1e-14);
        for i in 0..n {
            assert!((j.grad[i] - f.partial(i).eval(&p)).abs() < 1e-14);
            for k in 0..n {
                assert!((j.hess[i * n + k] - f.partial(i).partial(k).eval(&p)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn euler_and_laplacian() {
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 0)) + &x(n, 1);
        assert_eq!(f.euler(), &(&x(n, 0) * &x(n, 0)).scale(2.0) + &x(n, 1));
        assert_eq!(f.laplacian(), Polynomial::constant(n, 2.0));
    }

    #[test]
    fn monomial_basis_counts() {
        assert_eq!(Polynomial::monomial_basis(4, 2).len(), 15);
        assert_eq!(Polynomial::monomial_basis(8, 2).len(), 45);
        assert_eq!(Polynomial::monomial_basis(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn display_is_canonical() {
        let f = &x(2, 0).scale(2.0) - &Polynomial::constant(2, 1.0);
        assert_eq!(f.to_string(), "2*x1 - 1");
    }
}
