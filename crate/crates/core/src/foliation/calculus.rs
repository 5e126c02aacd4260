//! Moving-frame calculus at a point.
//!
//! Frame fields are carried as second-order jets. Their brackets give the
//! structure functions `c_{αβγ}` (with `[E_α, E_β] = Σ_γ c_{αβγ} E_γ`) and
//! their first derivatives along the frame. Every connection used in the
//! crate is a linear function of `c`, so connection coefficients, their
//! derivatives, torsion and curvature all follow algebraically.
//!
//! Index layout: frame indices `0..n` are horizontal, `n..n+m` vertical.
//! Flat arrays are row-major; derivative arrays put the direction first, so
//! `dc[δ][α][β][γ] = E_δ(c_{αβγ})`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::foliation::model::{Backend, FoliationModel};
use crate::geometry::jet::{self, Jet, Jet1};
use crate::geometry::{PolyField, Polynomial};

const FRAME_TOL: f64 = 1e-8;

/// Orthonormal adapted frame at a point, as ambient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedFrameAt {
    pub point: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
}

enum Coframe {
    /// Sphere: `θ^γ(A) = <A, E_γ>₀ / w_γ`.
    Weighted(Vec<f64>),
    /// Group: rows of the inverse frame matrix and its first derivatives.
    Inverse { inv: DMatrix<f64>, dinv: Vec<DMatrix<f64>> },
}

struct FrameJets {
    fields: Vec<Vec<Jet>>,
    coframe: Coframe,
}

impl FrameJets {
    fn coords(&self, a: &[Jet1]) -> Vec<Jet1> {
        let nn = a.len();
        match &self.coframe {
            Coframe::Weighted(w) => self
                .fields
                .iter()
                .zip(w)
                .map(|(e, &wg)| {
                    let mut out = Jet1::zero(nn);
                    for (ak, ek) in a.iter().zip(e) {
                        out.add_product(ak, &ek.truncate());
                    }
                    out.value /= wg;
                    out.grad.iter_mut().for_each(|g| *g /= wg);
                    out
                })
                .collect(),
            Coframe::Inverse { inv, dinv } => {
                let d = inv.nrows();
                (0..d)
                    .map(|g| {
                        let mut out = Jet1::zero(nn);
                        for (k, ak) in a.iter().enumerate() {
                            out.value += inv[(g, k)] * ak.value;
                            for j in 0..nn {
                                out.grad[j] += dinv[j][(g, k)] * ak.value + inv[(g, k)] * ak.grad[j];
                            }
                        }
                        out
                    })
                    .collect()
            }
        }
    }

    fn coords_value(&self, a: &[f64]) -> Vec<f64> {
        match &self.coframe {
            Coframe::Weighted(w) => self
                .fields
                .iter()
                .zip(w)
                .map(|(e, &wg)| a.iter().zip(e).map(|(x, y)| x * y.value).sum::<f64>() / wg)
                .collect(),
            Coframe::Inverse { inv, .. } => {
                let v = inv * nalgebra::DVector::from_column_slice(a);
                v.iter().copied().collect()
            }
        }
    }
}

fn gs_jets(
    candidates: &[Vec<Jet>],
    against: &[Vec<Jet>],
    count: usize,
    pivot: bool,
) -> Result<Vec<Vec<Jet>>> {
    // Choose the order at the base point, then orthonormalize jets in it.
    let vals: Vec<Vec<f64>> = candidates.iter().map(|c| jet::values(c)).collect();
    let basis0: Vec<Vec<f64>> = against.iter().map(|c| jet::values(c)).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(count);
    let mut ortho: Vec<Vec<f64>> = basis0.clone();
    let project = |v: &[f64], basis: &[Vec<f64>]| -> Vec<f64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for e in basis {
                let c: f64 = r.iter().zip(e).map(|(a, b)| a * b).sum();
                r.iter_mut().zip(e).for_each(|(a, b)| *a -= c * b);
            }
        }
        r
    };
    for step in 0..count {
        let pick = if pivot {
            (0..candidates.len())
                .filter(|i| !chosen.contains(i))
                .map(|i| {
                    let r = project(&vals[i], &ortho);
                    let scale = vals[i].iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
                    (i, r.iter().map(|x| x * x).sum::<f64>().sqrt() / scale)
                })
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
        } else {
            let r = project(&vals[step], &ortho);
            let scale = vals[step].iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
            Some((step, r.iter().map(|x| x * x).sum::<f64>().sqrt() / scale))
        };
        let Some((i, residual)) = pick else {
            return Err(Error::DegenerateFrame { residual: 0.0, tolerance: FRAME_TOL });
        };
        if residual < FRAME_TOL {
            return Err(Error::DegenerateFrame { residual, tolerance: FRAME_TOL });
        }
        let r = project(&vals[i], &ortho);
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        ortho.push(r.into_iter().map(|x| x / norm).collect());
        chosen.push(i);
    }

    let mut out: Vec<Vec<Jet>> = Vec::with_capacity(count);
    for &i in &chosen {
        let mut r = candidates[i].clone();
        for e in against.iter().chain(out.iter()) {
            let c = jet::dot(&r, e);
            r = jet::sub_scaled(&r, &c, e);
        }
        let inv = jet::dot(&r, &r).inv_sqrt();
        out.push(jet::scale_vec(&inv, &r));
    }
    Ok(out)
}

fn frame_jets(model: &FoliationModel, p: &[f64]) -> Result<FrameJets> {
    let nn = model.ambient_dim();
    if p.len() != nn {
        return Err(Error::Dimension { expected: nn, found: p.len() });
    }
    let eps = model.epsilon();
    let sq = eps.sqrt();
    let jets = |f: &[PolyField]| f.iter().map(|x| x.jet(p)).collect::<Vec<_>>();
    match model.backend() {
        Backend::Sphere => {
            let r2: f64 = p.iter().map(|x| x * x).sum();
            if (r2 - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidArgument(format!("point is off the unit sphere (|p|² = {r2})")));
            }
            let z0 = gs_jets(&jets(model.vertical_fields()), &[], model.m(), false)?;
            let x = gs_jets(&jets(model.horizontal_spanning_fields()), &z0, model.n(), true)?;
            let mut fields = x;
            let mut weights = vec![1.0; model.n()];
            for z in z0 {
                fields.push(z.iter().map(|c| c.scale(sq)).collect());
                weights.push(eps);
            }
            Ok(FrameJets { fields, coframe: Coframe::Weighted(weights) })
        }
        Backend::Group => {
            let mut fields = jets(model.horizontal_spanning_fields());
            for z in jets(model.vertical_fields()) {
                fields.push(z.iter().map(|c| c.scale(sq)).collect());
            }
            let m0 = DMatrix::from_fn(nn, nn, |k, a| fields[a][k].value);
            let svd = m0.clone().svd(false, false);
            let smin = svd.singular_values.min();
            let smax = svd.singular_values.max();
            if smin < FRAME_TOL * smax.max(1.0) {
                return Err(Error::DegenerateFrame { residual: smin, tolerance: FRAME_TOL });
            }
            let inv = m0.try_inverse().ok_or(Error::DegenerateFrame { residual: 0.0, tolerance: FRAME_TOL })?;
            let dinv = (0..nn)
                .map(|j| {
                    let dm = DMatrix::from_fn(nn, nn, |k, a| fields[a][k].grad[j]);
                    -(&inv * dm * &inv)
                })
                .collect();
            Ok(FrameJets { fields, coframe: Coframe::Inverse { inv, dinv } })
        }
    }
}

/// Orthonormal adapted frame at `p` (horizontal first, then vertical).
pub fn adapted_frame(model: &FoliationModel, p: &[f64]) -> Result<AdaptedFrameAt> {
    let fj = frame_jets(model, p)?;
    let vals: Vec<Vec<f64>> = fj.fields.iter().map(|f| jet::values(f)).collect();
    Ok(AdaptedFrameAt { point: p.to_vec(), x: vals[..model.n()].to_vec(), z: vals[model.n()..].to_vec() })
}

/// Linear maps from structure functions to connection coefficients.
pub(crate) struct Layout {
    pub n: usize,
    pub d: usize,
}

impl Layout {
    #[inline]
    pub fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.d + b) * self.d + c
    }

    #[inline]
    pub fn i4(&self, a: usize, b: usize, c: usize, e: usize) -> usize {
        ((a * self.d + b) * self.d + c) * self.d + e
    }

    #[inline]
    pub fn h(&self, a: usize) -> bool {
        a < self.n
    }

    /// Levi-Civita coefficients `<∇_α E_β, E_γ>` of the frame metric.
    pub fn levi_civita(&self, c: &[f64]) -> Vec<f64> {
        self.scaled_levi_civita(c, 1.0)
    }

    /// Levi-Civita coefficients of `g_H ⊕ (1/s) g_V`, expressed in the
    /// `g`-orthonormal frame: `∇'_α E_β = Σ_γ L_{αβγ} E_γ`.
    pub fn scaled_levi_civita(&self, c: &[f64], s: f64) -> Vec<f64> {
        let d = self.d;
        let w = |a: usize| if self.h(a) { 1.0 } else { 1.0 / s };
        let mut out = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for g in 0..d {
                    out[self.i3(a, b, g)] = 0.5
                        * (c[self.i3(a, b, g)] - c[self.i3(b, g, a)] * w(a) / w(g)
                            + c[self.i3(g, a, b)] * w(b) / w(g));
                }
            }
        }
        out
    }

    /// Bott connection coefficients from the four-case table.
    pub fn bott(&self, c: &[f64]) -> Vec<f64> {
        let d = self.d;
        let lc = self.levi_civita(c);
        let mut out = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for g in 0..d {
                    let (ha, hb, hg) = (self.h(a), self.h(b), self.h(g));
                    let i = self.i3(a, b, g);
                    out[i] = match (ha, hb, hg) {
                        (true, true, true) | (false, false, false) => lc[i],
                        (false, true, true) | (true, false, false) => c[i],
                        _ => 0.0,
                    };
                }
            }
        }
        out
    }

    /// Torsion `T_{αβγ} = B_{αβγ} - B_{βαγ} - c_{αβγ}` of a connection `B`.
    pub fn torsion(&self, b: &[f64], c: &[f64]) -> Vec<f64> {
        let d = self.d;
        let mut out = vec![0.0; d * d * d];
        for a in 0..d {
            for e in 0..d {
                for g in 0..d {
                    out[self.i3(a, e, g)] = b[self.i3(a, e, g)] - b[self.i3(e, a, g)] - c[self.i3(a, e, g)];
                }
            }
        }
        out
    }

    /// `∇' = ∇ - ½T + (1/2s)(J_A B + J_B A)` with `J_A B = J_{π_V A} π_H B`.
    pub fn oneill_connection(&self, c: &[f64], s: f64) -> Vec<f64> {
        let d = self.d;
        let b = self.bott(c);
        let t = self.torsion(&b, c);
        let jj = |a: usize, e: usize, g: usize| -> f64 {
            if !self.h(a) && self.h(e) && self.h(g) {
                t[self.i3(e, g, a)]
            } else {
                0.0
            }
        };
        let mut out = vec![0.0; d * d * d];
        for a in 0..d {
            for e in 0..d {
                for g in 0..d {
                    let i = self.i3(a, e, g);
                    out[i] = b[i] - 0.5 * t[i] + (jj(a, e, g) + jj(e, a, g)) / (2.0 * s);
                }
            }
        }
        out
    }

    /// Apply a linear coefficient map to `c` and to each derivative slice.
    pub fn with_derivatives(&self, c: &[f64], dc: &[f64], f: impl Fn(&[f64]) -> Vec<f64>) -> (Vec<f64>, Vec<f64>) {
        let d3 = self.d * self.d * self.d;
        let base = f(c);
        let mut deriv = Vec::with_capacity(d3 * self.d);
        for slice in dc.chunks(d3) {
            deriv.extend(f(slice));
        }
        (base, deriv)
    }

    /// `R[α][β][γ][δ]`: the `E_δ` component of `R(E_α, E_β) E_γ` for the
    /// connection with coefficients `l` and derivatives `dl`.
    pub fn curvature(&self, l: &[f64], dl: &[f64], c: &[f64]) -> Vec<f64> {
        let d = self.d;
        let mut r = vec![0.0; d * d * d * d];
        for a in 0..d {
            for b in 0..d {
                for g in 0..d {
                    for e in 0..d {
                        let mut v = dl[self.i4(a, b, g, e)] - dl[self.i4(b, a, g, e)];
                        for mu in 0..d {
                            v += l[self.i3(b, g, mu)] * l[self.i3(a, mu, e)] - l[self.i3(a, g, mu)] * l[self.i3(b, mu, e)]
                                - c[self.i3(a, b, mu)] * l[self.i3(mu, g, e)];
                        }
                        r[self.i4(a, b, g, e)] = v;
                    }
                }
            }
        }
        r
    }

    /// `(∇_ε T)_{αβγ}` for a vector-valued two-form `T` and connection `B`.
    pub fn covariant_derivative_2form(&self, t: &[f64], dt: &[f64], b: &[f64]) -> Vec<f64> {
        let d = self.d;
        let mut out = vec![0.0; d * d * d * d];
        for e in 0..d {
            for a in 0..d {
                for be in 0..d {
                    for g in 0..d {
                        let mut v = dt[self.i4(e, a, be, g)];
                        for mu in 0..d {
                            v += t[self.i3(a, be, mu)] * b[self.i3(e, mu, g)]
                                - b[self.i3(e, a, mu)] * t[self.i3(mu, be, g)]
                                - b[self.i3(e, be, mu)] * t[self.i3(a, mu, g)];
                        }
                        out[self.i4(e, a, be, g)] = v;
                    }
                }
            }
        }
        out
    }
}

/// Everything the checks need at one point.
pub struct PointCalculus {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub point: Vec<f64>,
    /// `E_α(p)` as ambient vectors.
    pub frame: Vec<Vec<f64>>,
    pub c: Vec<f64>,
    pub dc: Vec<f64>,
    pub bott: Vec<f64>,
    pub dbott: Vec<f64>,
    pub torsion: Vec<f64>,
    pub dtorsion: Vec<f64>,
    /// `∇T[ε][α][β][γ]`: `E_γ` component of `(∇_{E_ε} T)(E_α, E_β)`.
    pub nabla_t: Vec<f64>,
    pub curvature: Vec<f64>,
    jets: FrameJets,
}

impl PointCalculus {
    pub fn at(model: &FoliationModel, p: &[f64]) -> Result<Self> {
        let jets = frame_jets(model, p)?;
        let (n, m) = (model.n(), model.m());
        let d = n + m;
        let nn = model.ambient_dim();
        let lay = Layout { n, d };
        let frame: Vec<Vec<f64>> = jets.fields.iter().map(|f| jet::values(f)).collect();

        let mut c = vec![0.0; d * d * d];
        let mut dc = vec![0.0; d * d * d * d];
        for a in 0..d {
            for b in (a + 1)..d {
                let br: Vec<Jet1> = (0..nn)
                    .map(|l| {
                        let mut x = jets.fields[b][l].derivative_along(&jets.fields[a]);
                        x.axpy(-1.0, &jets.fields[a][l].derivative_along(&jets.fields[b]));
                        x
                    })
                    .collect();
                let coeffs = jets.coords(&br);
                for (g, cj) in coeffs.iter().enumerate() {
                    c[lay.i3(a, b, g)] = cj.value;
                    c[lay.i3(b, a, g)] = -cj.value;
                    for (e, fe) in frame.iter().enumerate() {
                        let v = cj.directional(fe);
                        dc[lay.i4(e, a, b, g)] = v;
                        dc[lay.i4(e, b, a, g)] = -v;
                    }
                }
            }
        }

        let (bott, dbott) = lay.with_derivatives(&c, &dc, |x| lay.bott(x));
        let (torsion, dtorsion) = lay.with_derivatives(&c, &dc, |x| {
            let b = lay.bott(x);
            lay.torsion(&b, x)
        });
        let nabla_t = lay.covariant_derivative_2form(&torsion, &dtorsion, &bott);
        let curvature = lay.curvature(&bott, &dbott, &c);
        Ok(Self { n, m, d, point: p.to_vec(), frame, c, dc, bott, dbott, torsion, dtorsion, nabla_t, curvature, jets })
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout { n: self.n, d: self.d }
    }

    pub fn i3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.d + b) * self.d + c
    }

    pub fn i4(&self, a: usize, b: usize, c: usize, e: usize) -> usize {
        ((a * self.d + b) * self.d + c) * self.d + e
    }

    /// Vertical frame index of `Z_a`.
    pub fn v(&self, a: usize) -> usize {
        self.n + a
    }

    /// Component array `<J_{Z_a} X_i, X_j> = <Z_a, T(X_i, X_j)>`.
    pub fn j_components(&self, a: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.torsion[self.i3(i, j, self.v(a))])
    }

    /// Matrix of the operator `J_{Z_a}` acting on horizontal coordinates.
    pub fn j_operator(&self, a: usize) -> DMatrix<f64> {
        self.j_components(a).transpose()
    }

    /// Operator matrix of `(∇_{E_e} J)_{Z_a}` on horizontal coordinates.
    pub fn nabla_j_operator(&self, e: usize, a: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |j, i| self.nabla_t[self.i4(e, i, j, self.v(a))])
    }

    /// Operator matrix of `R(E_α, E_β)` restricted to `H`.
    pub fn curvature_operator_h(&self, a: usize, b: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |l, k| self.curvature[self.i4(a, b, k, l)])
    }

    pub fn ricci_h(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| (0..self.n).map(|l| self.curvature[self.i4(l, i, j, l)]).sum())
    }

    /// Ambient vector `Σ_γ v_γ E_γ(p)`.
    pub fn to_ambient(&self, v: &[f64]) -> Vec<f64> {
        let nn = self.frame[0].len();
        let mut out = vec![0.0; nn];
        for (vg, e) in v.iter().zip(&self.frame) {
            for (o, x) in out.iter_mut().zip(e) {
                *o += vg * x;
            }
        }
        out
    }

    /// Frame components of a tangent vector at `p`.
    pub fn to_frame(&self, a: &[f64]) -> Vec<f64> {
        self.jets.coords_value(a)
    }

    /// Bott derivative `∇_X Y` at `p` of polynomial fields, as an ambient vector.
    pub fn covariant_derivative(&self, x: &PolyField, y: &PolyField) -> Vec<f64> {
        let p = &self.point;
        let xv = self.to_frame(&x.eval(p));
        let yj: Vec<Jet1> = y.jet(p).iter().map(Jet::truncate).collect();
        let yc = self.jets.coords(&yj);
        let mut out = vec![0.0; self.d];
        for (g, o) in out.iter_mut().enumerate() {
            for a in 0..self.d {
                if xv[a] == 0.0 {
                    continue;
                }
                let mut v = yc[g].directional(&self.frame[a]);
                for b in 0..self.d {
                    v += yc[b].value * self.bott[self.i3(a, b, g)];
                }
                *o += xv[a] * v;
            }
        }
        self.to_ambient(&out)
    }

    /// `Σ_i (X_i X_i f - (∇_{X_i} X_i) f)` over the horizontal frame.
    pub fn sub_laplacian(&self, f: &Polynomial) -> f64 {
        let fj = f.jet(&self.point);
        let mut total = 0.0;
        for i in 0..self.n {
            let xf = fj.derivative_along(&self.jets.fields[i]);
            total += xf.directional(&self.frame[i]);
            for g in 0..self.d {
                let b = self.bott[self.i3(i, i, g)];
                if b != 0.0 {
                    let eg: f64 = fj.grad.iter().zip(&self.frame[g]).map(|(a, b)| a * b).sum();
                    total -= b * eg;
                }
            }
        }
        total
    }

    /// Horizontal and vertical gradient norms `(Γ(f), Γ^V(f))` at `p`.
    pub fn gradient_norms(&self, f: &Polynomial) -> (f64, f64) {
        let grad: Vec<f64> = (0..f.n()).map(|k| f.partial(k).eval(&self.point)).collect();
        let mut gh = 0.0;
        let mut gv = 0.0;
        for (a, e) in self.frame.iter().enumerate() {
            let v: f64 = grad.iter().zip(e).map(|(x, y)| x * y).sum();
            if a < self.n {
                gh += v * v;
            } else {
                gv += v * v;
            }
        }
        (gh, gv)
    }

    /// Levi-Civita connection of `g_H ⊕ (1/s) g_V` by Koszul, with its curvature.
    pub fn scaled_curvature(&self, s: f64) -> Vec<f64> {
        let lay = self.layout();
        let (l, dl) = lay.with_derivatives(&self.c, &self.dc, |x| lay.scaled_levi_civita(x, s));
        lay.curvature(&l, &dl, &self.c)
    }

    /// Curvature of `∇ - ½T + (1/2s)(J_A B + J_B A)`.
    pub fn oneill_curvature(&self, s: f64) -> Vec<f64> {
        let lay = self.layout();
        let (l, dl) = lay.with_derivatives(&self.c, &self.dc, |x| lay.oneill_connection(x, s));
        lay.curvature(&l, &dl, &self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_levi_civita_at_unit_scale_is_metric() {
        // random antisymmetric c: Levi-Civita coefficients are skew in the last two slots
        let lay = Layout { n: 2, d: 3 };
        let mut c = vec![0.0; 27];
        let vals = [0.3, -1.2, 0.5, 0.9, 2.0, -0.4, 0.1, 0.7, -0.8];
        let mut k = 0;
        for a in 0..3 {
            for b in (a + 1)..3 {
                for g in 0..3 {
                    c[lay.i3(a, b, g)] = vals[k % 9];
                    c[lay.i3(b, a, g)] = -vals[k % 9];
                    k += 1;
                }
            }
        }
        let l = lay.levi_civita(&c);
        for a in 0..3 {
            for b in 0..3 {
                for g in 0..3 {
                    assert!((l[lay.i3(a, b, g)] + l[lay.i3(a, g, b)]).abs() < 1e-15);
                    // torsion-free
                    let t = l[lay.i3(a, b, g)] - l[lay.i3(b, a, g)] - c[lay.i3(a, b, g)];
                    assert!(t.abs() < 1e-15);
                }
            }
        }
    }
}
