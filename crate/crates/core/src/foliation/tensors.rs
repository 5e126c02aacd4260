use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foliation::calculus::PointCalculus;
use crate::foliation::model::{Backend, FoliationModel};
use crate::geometry::{bracket, directional_derivative, levi_civita, sample_points, PolyField, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorKind {
    Torsion,
    J,
    NablaT,
    NablaJ,
    Curvature,
    RicciH,
}

/// Component array in the adapted frame at a point.
///
/// Layouts: torsion, `J`, `∇T` and `∇J` use `[a][i][j]` with `a` vertical
/// and `i, j` horizontal; torsion stores `<T(X_i, X_j), Z_a>` and `J` stores
/// `<J_{Z_a} X_i, X_j>`. Curvature uses `[α][β][γ][δ]` over the full frame
/// and Ricci `[i][j]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorAtPoint {
    pub kind: TensorKind,
    pub shape: Vec<usize>,
    pub components: Vec<f64>,
}

impl TensorAtPoint {
    pub fn get(&self, index: &[usize]) -> f64 {
        let flat = index.iter().zip(&self.shape).fold(0, |acc, (&i, &s)| acc * s + i);
        self.components[flat]
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn vhh(kind: TensorKind, pc: &PointCalculus, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let (n, m) = (pc.n, pc.m);
        let mut components = Vec::with_capacity(m * n * n);
        for a in 0..m {
            for i in 0..n {
                for j in 0..n {
                    components.push(f(a, i, j));
                }
            }
        }
        Self { kind, shape: vec![m, n, n], components }
    }
}

/// Frame direction for covariant derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal(usize),
    Vertical(usize),
}

impl Direction {
    fn index(self, pc: &PointCalculus) -> Result<usize> {
        match self {
            Direction::Horizontal(i) if i < pc.n => Ok(i),
            Direction::Vertical(a) if a < pc.m => Ok(pc.n + a),
            _ => Err(Error::InvalidArgument(format!("direction {self:?} out of range"))),
        }
    }
}

pub fn torsion(model: &FoliationModel, p: &[f64]) -> Result<TensorAtPoint> {
    let pc = PointCalculus::at(model, p)?;
    Ok(torsion_of(&pc))
}

pub fn torsion_of(pc: &PointCalculus) -> TensorAtPoint {
    TensorAtPoint::vhh(TensorKind::Torsion, pc, |a, i, j| pc.torsion[pc.i3(i, j, pc.v(a))])
}

pub fn j_map(model: &FoliationModel, p: &[f64]) -> Result<TensorAtPoint> {
    let pc = PointCalculus::at(model, p)?;
    Ok(j_map_of(&pc))
}

pub fn j_map_of(pc: &PointCalculus) -> TensorAtPoint {
    TensorAtPoint::vhh(TensorKind::J, pc, |a, i, j| pc.torsion[pc.i3(i, j, pc.v(a))])
}

pub fn nabla_t(model: &FoliationModel, direction: Direction, p: &[f64]) -> Result<TensorAtPoint> {
    let pc = PointCalculus::at(model, p)?;
    let e = direction.index(&pc)?;
    Ok(TensorAtPoint::vhh(TensorKind::NablaT, &pc, |a, i, j| pc.nabla_t[pc.i4(e, i, j, pc.v(a))]))
}

/// `<(∇_E J)_{Z_a} X_i, X_j> = <Z_a, (∇_E T)(X_i, X_j)>`.
pub fn nabla_j(model: &FoliationModel, direction: Direction, p: &[f64]) -> Result<TensorAtPoint> {
    let mut t = nabla_t(model, direction, p)?;
    t.kind = TensorKind::NablaJ;
    Ok(t)
}

/// Frame components of `R(E_u, E_v) E_w` for frame indices (horizontal first).
pub fn curvature(model: &FoliationModel, u: usize, v: usize, w: usize, p: &[f64]) -> Result<Vec<f64>> {
    let pc = PointCalculus::at(model, p)?;
    if [u, v, w].iter().any(|&k| k >= pc.d) {
        return Err(Error::InvalidArgument(format!("frame index out of range (dimension {})", pc.d)));
    }
    Ok((0..pc.d).map(|e| pc.curvature[pc.i4(u, v, w, e)]).collect())
}

pub fn curvature_tensor(model: &FoliationModel, p: &[f64]) -> Result<TensorAtPoint> {
    let pc = PointCalculus::at(model, p)?;
    Ok(TensorAtPoint { kind: TensorKind::Curvature, shape: vec![pc.d; 4], components: pc.curvature.clone() })
}

/// `Ric_H(X_i, X_j) = Σ_ℓ <R(X_ℓ, X_i) X_j, X_ℓ>`.
pub fn ricci_h(model: &FoliationModel, p: &[f64]) -> Result<TensorAtPoint> {
    let pc = PointCalculus::at(model, p)?;
    let r = pc.ricci_h();
    Ok(TensorAtPoint {
        kind: TensorKind::RicciH,
        shape: vec![pc.n, pc.n],
        components: (0..pc.n).flat_map(|i| (0..pc.n).map(move |j| (i, j))).map(|(i, j)| r[(i, j)]).collect(),
    })
}

/// Symbolic Bott derivative `∇_X Y` as a polynomial field, exact on-chart.
///
/// Sphere models split fields with the round-orthonormal vertical fields
/// and use the round Levi-Civita derivative; two-step groups expand in the
/// left-invariant frame with constant connection coefficients.
pub fn bott_derivative(model: &FoliationModel, x: &PolyField, y: &PolyField) -> Result<PolyField> {
    let nn = model.ambient_dim();
    if x.n() != nn || y.n() != nn {
        return Err(Error::Dimension { expected: nn, found: if x.n() != nn { x.n() } else { y.n() } });
    }
    match model.backend() {
        Backend::Sphere => sphere_bott(model, x, y),
        Backend::Group => group_bott(model, x, y),
    }
}

fn sphere_bott(model: &FoliationModel, x: &PolyField, y: &PolyField) -> Result<PolyField> {
    let chart = model.chart();
    let zs = model.vertical_fields();
    for p in sample_points(&chart, 3, 7) {
        let vals: Vec<Vec<f64>> = zs.iter().map(|z| z.eval(&p)).collect();
        for (a, va) in vals.iter().enumerate() {
            for (b, vb) in vals.iter().enumerate() {
                let g: f64 = va.iter().zip(vb).map(|(s, t)| s * t).sum();
                if (g - f64::from(u8::from(a == b))).abs() > 1e-12 {
                    return Err(Error::NotApplicable(
                        "symbolic Bott derivative needs round-orthonormal vertical fields".into(),
                    ));
                }
            }
        }
    }
    let pi_v = |a: &PolyField| -> Result<PolyField> {
        let mut out = PolyField::zero(a.n());
        for z in zs {
            out = out.try_add(&z.mul_poly(&a.dot(z)?)?)?;
        }
        Ok(out)
    };
    let pi_h = |a: &PolyField| -> Result<PolyField> { chart.tangential(a)?.sub(&pi_v(a)?) };
    let (xh, xv) = (pi_h(x)?, pi_v(x)?);
    let (yh, yv) = (pi_h(y)?, pi_v(y)?);
    let hh = pi_h(&levi_civita(&chart, &xh, &yh)?)?;
    let vh = pi_h(&bracket(&xv, &yh)?)?;
    let hv = pi_v(&bracket(&xh, &yv)?)?;
    let vv = pi_v(&levi_civita(&chart, &xv, &yv)?)?;
    hh.try_add(&vh)?.try_add(&hv)?.try_add(&vv)
}

fn group_bott(model: &FoliationModel, x: &PolyField, y: &PolyField) -> Result<PolyField> {
    let a_mats = model
        .group_structure()
        .ok_or_else(|| Error::NotApplicable("symbolic Bott derivative needs a two-step group structure".into()))?;
    let (n, m) = (model.n(), model.m());
    let nn = n + m;
    let sq = model.epsilon().sqrt();
    // basis F = (X_i, Z_a) with dual coframe θ^i = dx_i, ζ^a = dz_a - ½ Σ_i (A^a x)_i dx_i
    let basis: Vec<PolyField> = model.horizontal_spanning_fields().iter().chain(model.vertical_fields()).cloned().collect();
    let coords = |f: &PolyField| -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = (0..n).map(|i| f.component(i).clone()).collect();
        for (a, am) in a_mats.iter().enumerate() {
            let mut za = f.component(n + a).clone();
            for i in 0..n {
                let ax = Polynomial::linear(
                    &(0..nn).map(|k| if k < n { 0.5 * am[(i, k)] } else { 0.0 }).collect::<Vec<_>>(),
                );
                za = &za - &(&ax * f.component(i));
            }
            out.push(za);
        }
        out
    };
    let origin = vec![0.0; nn];
    let pc = PointCalculus::at(model, &origin)?;
    let sigma = |k: usize| if k < n { 1.0 } else { sq };
    let xc = coords(x);
    let yc = coords(y);
    let mut out = PolyField::zero(nn);
    for (b, fb) in basis.iter().enumerate() {
        let mut coef = directional_derivative(x, &yc[b])?;
        for a in 0..nn {
            for e in 0..nn {
                // ∇_{F_a} F_e = Σ_b B_{aeb} σ_b / (σ_a σ_e) F_b
                let k = pc.bott[pc.i3(a, e, b)] * sigma(b) / (sigma(a) * sigma(e));
                if k != 0.0 {
                    coef = &coef + &(&xc[a] * &yc[e]).scale(k);
                }
            }
        }
        out = out.try_add(&fb.mul_poly(&coef)?)?;
    }
    Ok(out)
}

/// Operator matrices `J_{Z_a}` on horizontal coordinates at a point.
pub fn j_operators(pc: &PointCalculus) -> Vec<DMatrix<f64>> {
    (0..pc.m).map(|a| pc.j_operator(a)).collect()
}
