//! Verification predicates: each evaluates an identity at sample points and
//! reports the worst residual.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::foliation::calculus::PointCalculus;
use crate::foliation::model::FoliationModel;
use crate::foliation::report::CheckReport;
use crate::foliation::tensors::j_operators;

/// Default tolerance for curvature pipelines.
pub const TOL_CURVATURE: f64 = 1e-9;
/// Default tolerance for purely algebraic identities.
pub const TOL_ALGEBRAIC: f64 = 1e-12;

/// Evaluate the frame calculus at every point in parallel.
pub fn calculus_at(model: &FoliationModel, points: &[Vec<f64>]) -> Result<Vec<PointCalculus>> {
    points.par_iter().map(|p| PointCalculus::at(model, p)).collect()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x.abs()) })
}

/// Bundle-like metric (`L_Z g(X, Y) = 0`), totally geodesic leaves
/// (`L_X g(Z, W) = 0`) and integrability of `V`, over frame fields.
pub fn check_foliation_axioms(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    let pcs = calculus_at(model, points)?;
    let (n, d) = (model.n(), model.dim());
    let mut bundle_like = 0.0f64;
    let mut geodesic = 0.0f64;
    let mut integrable = 0.0f64;
    for pc in &pcs {
        for a in n..d {
            for i in 0..n {
                for j in 0..n {
                    bundle_like = bundle_like.max((pc.c[pc.i3(a, i, j)] + pc.c[pc.i3(a, j, i)]).abs());
                }
            }
        }
        for i in 0..n {
            for a in n..d {
                for b in n..d {
                    geodesic = geodesic.max((pc.c[pc.i3(i, a, b)] + pc.c[pc.i3(i, b, a)]).abs());
                }
            }
        }
        for a in n..d {
            for b in n..d {
                for i in 0..n {
                    integrable = integrable.max(pc.c[pc.i3(a, b, i)].abs());
                }
            }
        }
    }
    Ok(CheckReport::new(
        "foliation-axioms",
        bundle_like.max(geodesic).max(integrable),
        tol,
        points.len(),
        json!({"bundle_like": bundle_like, "totally_geodesic": geodesic, "vertical_integrable": integrable}),
    ))
}

/// Unit vertical test directions: the frame and normalized pair sums.
fn unit_vertical_directions(m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for a in 0..m {
        let mut z = vec![0.0; m];
        z[a] = 1.0;
        out.push(z);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for a in 0..m {
        for b in (a + 1)..m {
            let mut z = vec![0.0; m];
            z[a] = s;
            z[b] = s;
            out.push(z);
        }
    }
    out
}

fn j_along(pc: &PointCalculus, z: &[f64]) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(pc.n, pc.n);
    for (a, &za) in z.iter().enumerate() {
        out += za * pc.j_components(a);
    }
    out
}

/// Fit `<J_Z X, J_Z Y> = λ |Z|² <X, Y>` and test `λ = 1`.
pub fn check_h_type(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    let pcs = calculus_at(model, points)?;
    let n = model.n() as f64;
    let dirs = unit_vertical_directions(model.m());
    let mut lambdas = Vec::new();
    let mut isotropy = 0.0f64;
    for pc in &pcs {
        for z in &dirs {
            let c = j_along(pc, z);
            let g = &c * c.transpose();
            let lambda = g.trace() / n;
            let id = DMatrix::<f64>::identity(pc.n, pc.n);
            isotropy = isotropy.max((g - lambda * id).amax());
            lambdas.push(lambda);
        }
    }
    let lambda = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
    let spread = max_of(lambdas.iter().map(|l| l - lambda));
    let residual = isotropy.max(spread).max((lambda - 1.0).abs());
    Ok(CheckReport::new(
        "h-type",
        residual,
        tol,
        points.len(),
        json!({"lambda": lambda, "lambda_spread": spread, "isotropy_residual": isotropy}),
    ))
}

/// Fitted `λ` with its spread and isotropy residual, without the `λ = 1` test.
pub fn fit_lambda(model: &FoliationModel, points: &[Vec<f64>]) -> Result<(f64, f64)> {
    let r = check_h_type(model, points, 0.0)?;
    let lambda = r.detail_f64("lambda").unwrap_or(f64::NAN);
    let spread = r.detail_f64("lambda_spread").unwrap_or(f64::NAN).max(r.detail_f64("isotropy_residual").unwrap_or(f64::NAN));
    Ok((lambda, spread))
}

fn yang_mills_residual(pc: &PointCalculus) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..pc.n {
        for g in pc.n..pc.d {
            let s: f64 = (0..pc.n).map(|i| pc.nabla_t[pc.i4(i, i, j, g)]).sum();
            worst = worst.max(s.abs());
        }
    }
    worst
}

/// Horizontal divergence `Σ_i (∇_{X_i} T)(X_i, Y)` over frame `Y`.
pub fn check_yang_mills(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    let pcs = calculus_at(model, points)?;
    let r = max_of(pcs.iter().map(yang_mills_residual));
    Ok(CheckReport::new("yang-mills", r, tol, points.len(), json!({})))
}

fn nabla_t_residual(pc: &PointCalculus, horizontal_only: bool) -> f64 {
    let dirs = if horizontal_only { pc.n } else { pc.d };
    let stride = pc.d * pc.d * pc.d;
    max_of(pc.nabla_t[..dirs * stride].iter().copied())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorsionClass {
    CompletelyParallel,
    HorizontallyParallel,
    YangMillsOnly,
    Unclassified,
}

impl TorsionClass {
    pub fn label(self) -> &'static str {
        match self {
            TorsionClass::CompletelyParallel => "completely-parallel",
            TorsionClass::HorizontallyParallel => "horizontally-parallel",
            TorsionClass::YangMillsOnly => "yang-mills-only",
            TorsionClass::Unclassified => "unclassified",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            TorsionClass::CompletelyParallel => "CP",
            TorsionClass::HorizontallyParallel => "HP",
            TorsionClass::YangMillsOnly => "YM",
            TorsionClass::Unclassified => "-",
        }
    }
}

/// Strongest of `∇T = 0`, `∇_H T = 0`, Yang–Mills that holds at all points.
pub fn check_torsion_class(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<(TorsionClass, CheckReport)> {
    let pcs = calculus_at(model, points)?;
    let full = max_of(pcs.iter().map(|pc| nabla_t_residual(pc, false)));
    let horizontal = max_of(pcs.iter().map(|pc| nabla_t_residual(pc, true)));
    let ym = max_of(pcs.iter().map(yang_mills_residual));
    let (class, residual) = if full <= tol {
        (TorsionClass::CompletelyParallel, full)
    } else if horizontal <= tol {
        (TorsionClass::HorizontallyParallel, horizontal)
    } else if ym <= tol {
        (TorsionClass::YangMillsOnly, ym)
    } else {
        (TorsionClass::Unclassified, ym)
    };
    let report = CheckReport::new(
        "torsion-class",
        residual,
        tol,
        points.len(),
        json!({"class": class.label(), "nabla_t": full, "nabla_h_t": horizontal, "yang_mills": ym}),
    );
    Ok((class, report))
}

/// Least-squares coordinates of `target` in the span of `basis`, with the
/// residual norm and the numerical rank of the basis.
fn least_squares(basis: &[DMatrix<f64>], target: &DMatrix<f64>) -> (Vec<f64>, f64, usize) {
    let rows = target.len();
    let a = DMatrix::from_fn(rows, basis.len(), |r, c| basis[c][r]);
    let b = DVector::from_iterator(rows, target.iter().copied());
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-10 * smax.max(1.0)).count();
    let x = svd.solve(&b, 1e-12 * smax.max(1.0)).unwrap_or_else(|_| DVector::zeros(basis.len()));
    let resid = (&a * &x - &b).amax();
    (x.iter().copied().collect(), resid, rank)
}

/// Outcome of the `Ψ`-fit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliffordFit {
    /// `None` when `m = 1` (only `Ψ = 0` is tested).
    pub kappa: Option<f64>,
    pub fit_residual: f64,
    pub structure_residual: f64,
    pub rank_deficient: bool,
}

/// Fit `(∇_{Z_a} J)_{Z_b} = J_ψ` over `ψ ∈ span{e_c e_d}` and test
/// `ψ = -κ (Z_a·Z_b + <Z_a, Z_b>)` for one constant `κ`.
pub fn check_parallel_clifford(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<(CliffordFit, CheckReport)> {
    let h = check_h_type(model, points, tol)?;
    let (_, tc) = check_torsion_class(model, points, tol)?;
    let nabla_h = tc.detail_f64("nabla_h_t").unwrap_or(f64::NAN);
    if !h.passed() || !(nabla_h <= tol) {
        return Err(Error::InvalidModel(format!(
            "parallel Clifford fit needs an H-type model with horizontally parallel torsion (h-type residual {:.3e}, ∇_H T {:.3e})",
            h.max_residual, nabla_h
        )));
    }
    let pcs = calculus_at(model, points)?;
    let m = model.m();
    let mut fit_residual = 0.0f64;
    let mut rank_deficient = false;
    let mut estimates = Vec::new();
    let mut off_pattern = 0.0f64;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|c| ((c + 1)..m).map(move |d| (c, d))).collect();
    for pc in &pcs {
        let ops = j_operators(pc);
        let basis: Vec<DMatrix<f64>> = pairs.iter().map(|&(c, d)| &ops[c] * &ops[d]).collect();
        for a in 0..m {
            for b in 0..m {
                let target = pc.nabla_j_operator(pc.v(a), b);
                if a == b || basis.is_empty() {
                    fit_residual = fit_residual.max(target.amax());
                    continue;
                }
                let (x, resid, rank) = least_squares(&basis, &target);
                fit_residual = fit_residual.max(resid);
                rank_deficient |= rank < basis.len();
                let (lo, hi, sign) = if a < b { (a, b, -1.0) } else { (b, a, 1.0) };
                for (k, &(c, d)) in pairs.iter().enumerate() {
                    if (c, d) == (lo, hi) {
                        estimates.push(sign * x[k]);
                    } else {
                        off_pattern = off_pattern.max(x[k].abs());
                    }
                }
            }
        }
    }
    let kappa = if estimates.is_empty() { None } else { Some(estimates.iter().sum::<f64>() / estimates.len() as f64) };
    let spread = kappa.map_or(0.0, |k| max_of(estimates.iter().map(|e| e - k)));
    let structure_residual = spread.max(off_pattern);
    let fit = CliffordFit { kappa, fit_residual, structure_residual, rank_deficient };
    let report = CheckReport::new(
        "parallel-clifford",
        fit_residual.max(structure_residual),
        tol,
        points.len(),
        json!({"kappa": kappa, "fit_residual": fit_residual, "structure_residual": structure_residual, "rank_deficient": rank_deficient}),
    )
    .with_condition(!rank_deficient);
    Ok((fit, report))
}

/// Vertical sectional curvature `<R(Z_a, Z_b) Z_b, Z_a>` against `κ²`, both
/// directly and through `|(∇_{Z_a} J)_{Z_b} X|² = <R(Z_a, Z_b) Z_b, Z_a> |X|²`.
pub fn check_vertical_curvature(model: &FoliationModel, kappa: f64, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    let pcs = calculus_at(model, points)?;
    let m = model.m();
    let mut direct = 0.0f64;
    let mut lemma = 0.0f64;
    let mut agreement = 0.0f64;
    let mut sample = None;
    for pc in &pcs {
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let (za, zb) = (pc.v(a), pc.v(b));
                let sec = pc.curvature[pc.i4(za, zb, zb, za)];
                sample.get_or_insert(sec);
                direct = direct.max((sec - kappa * kappa).abs());
                let op = pc.nabla_j_operator(za, b);
                for i in 0..pc.n {
                    let norm2 = op.column(i).norm_squared();
                    lemma = lemma.max((norm2 - kappa * kappa).abs());
                    agreement = agreement.max((norm2 - sec).abs());
                }
            }
        }
    }
    Ok(CheckReport::new(
        "vertical-curvature",
        direct.max(lemma).max(agreement),
        tol,
        points.len(),
        json!({"kappa_squared": kappa * kappa, "measured": sample, "direct_residual": direct, "lemma_residual": lemma, "route_agreement": agreement}),
    ))
}

/// `R^ĝ(V, X) Y = (κ/2)(ĝ(X, Y) V - ĝ(V, Y) X)` for `ĝ = g_H ⊕ 2κ g_V`.
pub fn check_curvature_constancy(model: &FoliationModel, kappa: f64, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidArgument("curvature constancy needs κ ≠ 0".into()));
    }
    let pcs = calculus_at(model, points)?;
    let s = 1.0 / (2.0 * kappa);
    let (n, d) = (model.n(), model.dim());
    let g = |a: usize, b: usize| -> f64 {
        if a != b {
            0.0
        } else if a < n {
            1.0
        } else {
            2.0 * kappa
        }
    };
    let delta = |a: usize, b: usize| f64::from(u8::from(a == b));
    let mut residual = 0.0f64;
    let mut space_form = 0.0f64;
    for pc in &pcs {
        let r = pc.scaled_curvature(s);
        for v in n..d {
            for x in 0..d {
                for y in 0..d {
                    for e in 0..d {
                        let want = 0.5 * kappa * (g(x, y) * delta(v, e) - g(v, y) * delta(x, e));
                        residual = residual.max((r[pc.i4(v, x, y, e)] - want).abs());
                    }
                }
            }
        }
        for u in 0..d {
            for x in 0..d {
                for y in 0..d {
                    for e in 0..d {
                        let want = 0.5 * kappa * (g(x, y) * delta(u, e) - g(u, y) * delta(x, e));
                        space_form = space_form.max((r[pc.i4(u, x, y, e)] - want).abs());
                    }
                }
            }
        }
    }
    // ĝ agrees with the round metric when 2κ g_V = g₀_V, i.e. 2κ = ε
    let metric_ratio = 2.0 * kappa / model.epsilon();
    Ok(CheckReport::new(
        "curvature-constancy",
        residual,
        tol,
        points.len(),
        json!({"kappa": kappa, "rho": kappa / 2.0, "vertical_metric_ratio_to_base": metric_ratio, "full_space_form_residual": space_form}),
    ))
}

/// Variation parameters used by [`check_oneill`].
pub const ONEILL_SCALES: [f64; 4] = [0.25, 0.5, 1.0, 3.0];

/// Curvature of `g_H ⊕ (1/s) g_V` three ways: Koszul, the connection formula
/// `∇ - ½T + (1/2s)(J_A B + J_B A)`, and the closed form for `R(V, X) Y`.
pub fn check_oneill(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    let pcs = calculus_at(model, points)?;
    let (n, d) = (model.n(), model.dim());
    let mut connection = 0.0f64;
    let mut closed_form = 0.0f64;
    let mut vertical = 0.0f64;
    for pc in &pcs {
        let t = |i: usize, j: usize, g: usize| pc.torsion[pc.i3(i, j, g)];
        for &s in &ONEILL_SCALES {
            let rk = pc.scaled_curvature(s);
            let ra = pc.oneill_curvature(s);
            connection = connection.max(max_of(rk.iter().zip(&ra).map(|(a, b)| a - b)));
            for v in n..d {
                for i in 0..n {
                    for j in 0..n {
                        for e in 0..d {
                            let want = if e >= n {
                                -0.5 * pc.nabla_t[pc.i4(v, i, j, e)]
                                    + (0..n).map(|k| t(j, k, v) * t(i, k, e)).sum::<f64>() / (4.0 * s)
                            } else {
                                -pc.nabla_t[pc.i4(i, j, e, v)] / (2.0 * s)
                            };
                            closed_form = closed_form.max((rk[pc.i4(v, i, j, e)] - want).abs());
                        }
                    }
                }
                for x in n..d {
                    for y in n..d {
                        for e in 0..d {
                            let i = pc.i4(v, x, y, e);
                            vertical = vertical.max((rk[i] - pc.curvature[i]).abs());
                        }
                    }
                }
            }
        }
    }
    Ok(CheckReport::new(
        "oneill",
        connection.max(closed_form).max(vertical),
        tol,
        points.len(),
        json!({"scales": ONEILL_SCALES, "connection_formula": connection, "closed_form": closed_form, "vertical_case": vertical}),
    ))
}

/// Skew-symmetry of `∇J`, the curvature decomposition, the commutator
/// identity for `R_H`, vertical sectional curvature and Yang–Mills helper (e).
pub fn check_lemma_identities(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<Vec<CheckReport>> {
    let pcs = calculus_at(model, points)?;
    let (n, m, d) = (model.n(), model.m(), model.dim());
    let kappa = if m >= 2 {
        check_parallel_clifford(model, points, tol).ok().and_then(|(f, r)| if r.passed() { f.kappa } else { None })
    } else {
        None
    };
    let mut skew = 0.0f64;
    let mut decomposition = 0.0f64;
    let mut commutator = 0.0f64;
    let mut commutator_kappa = 0.0f64;
    let mut sectional = 0.0f64;
    let mut helper = 0.0f64;
    for pc in &pcs {
        let ops = j_operators(pc);
        let nj: Vec<Vec<DMatrix<f64>>> = (0..d).map(|e| (0..m).map(|a| pc.nabla_j_operator(e, a)).collect()).collect();

        for e in 0..d {
            for a in 0..m {
                let other = if e >= n { nj[pc.v(a)][e - n].clone() } else { DMatrix::zeros(n, n) };
                skew = skew.max((&nj[e][a] + other).amax());
            }
        }

        for a in 0..d {
            for b in 0..d {
                for g in 0..d {
                    let all_h = a < n && b < n && g < n;
                    let all_v = a >= n && b >= n && g >= n;
                    for e in 0..d {
                        let r = pc.curvature[pc.i4(a, b, g, e)];
                        let parts = if all_h || all_v { r } else { 0.0 };
                        let nt = pc.nabla_t[pc.i4(g, a, b, e)];
                        decomposition = decomposition.max((r - parts - nt).abs());
                    }
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                let rop = pc.curvature_operator_h(i, j);
                for a in 0..m {
                    let lhs = &rop * &ops[a] - &ops[a] * &rop;
                    let mut rhs = DMatrix::zeros(n, n);
                    for b in 0..m {
                        rhs += pc.torsion[pc.i3(i, j, pc.v(b))] * &nj[pc.v(b)][a];
                        rhs += pc.nabla_t[pc.i4(pc.v(a), i, j, pc.v(b))] * &ops[b];
                    }
                    commutator = commutator.max((&lhs - rhs).amax());
                    if let Some(k) = kappa {
                        let mut form = DMatrix::zeros(n, n);
                        for b in (0..m).filter(|&b| b != a) {
                            let jab = &ops[a] * &ops[b];
                            form += pc.torsion[pc.i3(i, j, pc.v(b))] * &jab;
                            form -= jab[(j, i)] * &ops[b];
                        }
                        commutator_kappa = commutator_kappa.max((&lhs - k * form).amax());
                    }
                }
            }
        }

        for a in 0..m {
            for b in 0..m {
                let sec = pc.curvature[pc.i4(pc.v(a), pc.v(b), pc.v(b), pc.v(a))];
                for i in 0..n {
                    let norm2 = nj[pc.v(a)][b].column(i).norm_squared();
                    sectional = sectional.max((norm2 - sec).abs());
                }
            }
        }

        for a in 0..m {
            for i in 0..n {
                let jx = ops[a].column(i).clone_owned();
                let mut lhs = DVector::zeros(n);
                for k in 0..n {
                    lhs += jx[k] * nj[k][a].column(i);
                }
                let rhs = &nj[i][a] * &jx;
                let rhs2 = -(&ops[a] * nj[i][a].column(i));
                helper = helper.max((&lhs - &rhs).amax()).max((&rhs - rhs2).amax());
            }
        }
    }
    let pts = points.len();
    Ok(vec![
        CheckReport::new("nabla-j-skew", skew, tol, pts, json!({})),
        CheckReport::new("curvature-decomposition", decomposition, tol, pts, json!({})),
        CheckReport::new(
            "commutator-identity",
            commutator.max(commutator_kappa),
            tol,
            pts,
            json!({"direct": commutator, "kappa_form": kappa.map(|_| commutator_kappa), "kappa": kappa}),
        ),
        CheckReport::new("vertical-sectional-lemma", sectional, tol, pts, json!({})),
        CheckReport::new("yang-mills-helper", helper, tol, pts, json!({})),
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum QuaternionicType {
    Quaternionic { sigma_sign: i8 },
    NonQuaternionic { dim_plus: usize, dim_minus: usize },
    NotApplicable,
}

/// Classify the `m = 3` case through `σ = J_1 J_2 J_3` at `p`.
pub fn detect_quaternionic(model: &FoliationModel, p: &[f64], tol: f64) -> Result<QuaternionicType> {
    if model.m() != 3 {
        return Ok(QuaternionicType::NotApplicable);
    }
    let pc = PointCalculus::at(model, p)?;
    Ok(classify_sigma(&pc, tol))
}

fn sigma(pc: &PointCalculus) -> DMatrix<f64> {
    let ops = j_operators(pc);
    &ops[0] * &ops[1] * &ops[2]
}

fn classify_sigma(pc: &PointCalculus, tol: f64) -> QuaternionicType {
    let s = sigma(pc);
    let id = DMatrix::<f64>::identity(pc.n, pc.n);
    if (&s - &id).amax() <= tol {
        return QuaternionicType::Quaternionic { sigma_sign: 1 };
    }
    if (&s + &id).amax() <= tol {
        return QuaternionicType::Quaternionic { sigma_sign: -1 };
    }
    let sym = (&s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let dim_plus = eig.eigenvalues.iter().filter(|&&e| e > 0.0).count();
    QuaternionicType::NonQuaternionic { dim_plus, dim_minus: pc.n - dim_plus }
}

/// Closed-form horizontal Ricci prediction at one point.
fn einstein_prediction(pc: &PointCalculus, kappa: f64, tol: f64) -> DMatrix<f64> {
    let (n, m) = (pc.n as f64, pc.m as f64);
    let id = DMatrix::<f64>::identity(pc.n, pc.n);
    if pc.m != 3 {
        return kappa * (n / 4.0 + 2.0 * (m - 1.0)) * id;
    }
    match classify_sigma(pc, tol) {
        QuaternionicType::Quaternionic { .. } => kappa * (n / 2.0 + 4.0) * id,
        _ => {
            let s = sigma(pc);
            kappa * (n / 4.0 + 4.0) * id + (kappa / 4.0) * s.trace() * s.transpose()
        }
    }
}

/// Compare measured `Ric_H` with the closed form selected by `m` and type.
pub fn check_einstein(model: &FoliationModel, points: &[Vec<f64>], tol: f64) -> Result<CheckReport> {
    if model.m() < 2 {
        return Err(Error::NotApplicable("horizontal Einstein formulas need m >= 2".into()));
    }
    let (fit, report) = check_parallel_clifford(model, points, tol)?;
    if !report.passed() {
        return Err(Error::InvalidModel(format!(
            "no parallel horizontal Clifford structure (residual {:.3e})",
            report.max_residual
        )));
    }
    let kappa = fit.kappa.unwrap_or(0.0);
    let pcs = calculus_at(model, points)?;
    let mut residual = 0.0f64;
    let mut measured = None;
    let mut predicted = None;
    for pc in &pcs {
        let ric = pc.ricci_h();
        let want = einstein_prediction(pc, kappa, tol);
        residual = residual.max((&ric - &want).amax());
        measured.get_or_insert(ric[(0, 0)]);
        predicted.get_or_insert(want[(0, 0)]);
    }
    Ok(CheckReport::new(
        "einstein",
        residual,
        tol,
        points.len(),
        json!({"kappa": kappa, "ric_00": measured, "predicted_00": predicted}),
    ))
}

/// Smallest eigenvalue of `Ric_H` over the points.
pub fn ricci_lower_bound(model: &FoliationModel, points: &[Vec<f64>]) -> Result<f64> {
    let pcs = calculus_at(model, points)?;
    Ok(pcs
        .iter()
        .map(|pc| {
            let r = pc.ricci_h();
            let sym = (&r + r.transpose()) * 0.5;
            sym.symmetric_eigen().eigenvalues.min()
        })
        .fold(f64::INFINITY, f64::min))
}
