//! Built-in model spaces and JSON ingestion.
//!
//! Group models live on `R^{n+m}` with coordinates `(x, z)`; sphere models
//! on the unit sphere of `R^{n+m+1}`, with vertical fields given by linear
//! complex or quaternionic structures (right multiplication on `H^{k+1}`).

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clifford::{build_representation, CliffordRepresentation};
use crate::error::{Error, Result};
use crate::foliation::{check_foliation_axioms, fit_lambda, Backend, FoliationModel};
use crate::geometry::{sample_points, PolyField, Polynomial};

/// Sample points used when validating ingested models.
pub const VALIDATION_POINTS: usize = 8;

/// Deterministic sample points on the model's chart.
pub fn model_points(model: &FoliationModel, count: usize, seed: u64) -> Vec<Vec<f64>> {
    sample_points(&model.chart(), count, seed)
}

/// Two-step nilpotent group with `X_i = ∂_{x_i} + ½ Σ_a (A^a x)_i ∂_{z_a}` and
/// `Z_a = ∂_{z_a}`. The torsion satisfies `<J_{Z_a} X_i, X_j> = A^a_{ij}`.
pub fn two_step_group(name: &str, matrices: &[DMatrix<f64>], epsilon: f64) -> Result<FoliationModel> {
    let m = matrices.len();
    let n = matrices.first().map_or(0, DMatrix::nrows);
    if m == 0 || n == 0 {
        return Err(Error::InvalidModel("a two-step group needs at least one nonzero-size matrix".into()));
    }
    for a in matrices {
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::InvalidModel("structure matrices must all be n×n".into()));
        }
        let skew = (a + a.transpose()).amax();
        if skew > 1e-12 {
            return Err(Error::InvalidModel(format!("structure matrix is not skew-symmetric (residual {skew:.3e})")));
        }
    }
    let nn = n + m;
    let horizontal = (0..n)
        .map(|i| {
            let mut comps: Vec<Polynomial> = (0..nn).map(|_| Polynomial::zero(nn)).collect();
            comps[i] = Polynomial::constant(nn, 1.0);
            for (a, am) in matrices.iter().enumerate() {
                let coeffs: Vec<f64> = (0..nn).map(|k| if k < n { 0.5 * am[(i, k)] } else { 0.0 }).collect();
                comps[n + a] = Polynomial::linear(&coeffs);
            }
            PolyField::new(comps)
        })
        .collect::<Result<Vec<_>>>()?;
    let vertical = (0..m).map(|a| PolyField::coordinate(nn, n + a)).collect();
    FoliationModel::new(name, Backend::Group, n, m, vertical, horizontal, epsilon, Some(matrices.to_vec()))
}

/// H-type group of a Clifford module; `ε = 1`.
pub fn htype_group(rep: &CliffordRepresentation) -> Result<FoliationModel> {
    let name = format!("htype-group-m{}-n{}", rep.m(), rep.n());
    two_step_group(&name, rep.generators(), 1.0)
}

fn check_sphere_params(k: usize, epsilon: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Horizontal spanning fields `e_k - <e_k, p> p - Σ_a <e_k, Z_a> Z_a`.
fn sphere_horizontal(vertical: &[PolyField], nn: usize) -> Result<Vec<PolyField>> {
    let pos = PolyField::position(nn);
    (0..nn)
        .map(|k| {
            let mut s = PolyField::coordinate(nn, k).sub(&pos.mul_poly(&Polynomial::var(nn, k))?)?;
            for z in vertical {
                s = s.sub(&z.mul_poly(z.component(k))?)?;
            }
            Ok(s)
        })
        .collect()
}

fn sphere_model(name: String, vertical_mats: Vec<DMatrix<f64>>, epsilon: f64) -> Result<FoliationModel> {
    let nn = vertical_mats[0].nrows();
    let m = vertical_mats.len();
    let vertical: Vec<PolyField> = vertical_mats.iter().map(PolyField::linear).collect();
    let horizontal = sphere_horizontal(&vertical, nn)?;
    FoliationModel::new(name, Backend::Sphere, nn - 1 - m, m, vertical, horizontal, epsilon, None)
}

/// Hopf fibration `S^1 → S^{2k+1} → CP^k` with `Z(p) = i p`.
pub fn complex_hopf(k: usize, epsilon: f64) -> Result<FoliationModel> {
    check_sphere_params(k, epsilon)?;
    let nn = 2 * k + 2;
    let mut a = DMatrix::zeros(nn, nn);
    for l in 0..=k {
        a[(2 * l, 2 * l + 1)] = -1.0;
        a[(2 * l + 1, 2 * l)] = 1.0;
    }
    sphere_model(format!("complex-hopf-s{}", nn - 1), vec![a], epsilon)
}

/// Matrices of right multiplication by `i, j, k` on one quaternion block
/// `(a, b, c, d) = a + bi + cj + dk`.
fn right_quaternion_units() -> [[[f64; 4]; 4]; 3] {
    // p·i = (-b, a, d, -c), p·j = (-c, -d, a, b), p·k = (-d, c, -b, a)
    [
        [[0., -1., 0., 0.], [1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]],
        [[0., 0., -1., 0.], [0., 0., 0., -1.], [1., 0., 0., 0.], [0., 1., 0., 0.]],
        [[0., 0., 0., -1.], [0., 0., 1., 0.], [0., -1., 0., 0.], [1., 0., 0., 0.]],
    ]
}

/// Quaternionic Hopf fibration `S^3 → S^{4k+3} → HP^k`, vertical fields
/// `Z_a(p) = p·e_a` by right multiplication.
pub fn quaternionic_hopf(k: usize, epsilon: f64) -> Result<FoliationModel> {
    check_sphere_params(k, epsilon)?;
    let nn = 4 * k + 4;
    let units = right_quaternion_units();
    let mats = units
        .iter()
        .map(|u| {
            let mut a = DMatrix::zeros(nn, nn);
            for b in 0..=k {
                for r in 0..4 {
                    for c in 0..4 {
                        a[(4 * b + r, 4 * b + c)] = u[r][c];
                    }
                }
            }
            a
        })
        .collect();
    sphere_model(format!("quaternionic-hopf-s{}", nn - 1), mats, epsilon)
}

/// Same fields with the vertical metric `(1/ε') g₀_V`.
pub fn canonical_variation(model: &FoliationModel, epsilon: f64) -> Result<FoliationModel> {
    model.with_epsilon(epsilon)
}

/// Rescale the vertical metric so that `λ = 1`; returns the measured `λ`.
pub fn normalize_to_htype(model: &FoliationModel) -> Result<(FoliationModel, f64)> {
    let points = model_points(model, 16, 42);
    let (lambda, spread) = fit_lambda(model, &points)?;
    if !(spread <= 1e-9) || !(lambda > 1e-12) {
        return Err(Error::NotNormalizable(format!(
            "<J_Z X, J_Z Y> is not a constant multiple of |Z|²<X, Y> (λ ≈ {lambda:.6}, deviation {spread:.3e})"
        )));
    }
    // J for a g-unit Z scales with √(ε/ε'), so λ scales with ε/ε'.
    let normalized = model.with_epsilon(model.epsilon() * lambda)?;
    Ok((normalized, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    HtypeGroup,
    ComplexHopf,
    QuaternionicHopf,
    Custom,
}

/// A named model recipe with its expected structural labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelSpec {
    pub name: String,
    pub kind: ModelKind,
    pub parameters: Value,
    pub n: usize,
    pub m: usize,
    /// `"CP"` or `"HP"`.
    pub expected_class: &'static str,
    pub expected_kappa: Option<f64>,
    /// Whether the default metric is H-type.
    pub normalized: bool,
}

impl ModelSpec {
    pub fn build(&self) -> Result<FoliationModel> {
        from_parameters(&self.name, self.kind, &self.parameters)
    }

    /// One-line catalog entry.
    pub fn summary(&self) -> String {
        let kappa = self.expected_kappa.map_or_else(|| "-".to_string(), |k| format!("{k}"));
        format!("{} (n={}, m={}, {}, κ={})", self.name, self.n, self.m, self.expected_class, kappa)
    }
}

fn group_spec(name: &str, m: usize, chirality: &[i8], kappa: f64) -> ModelSpec {
    let n = chirality.len() * crate::clifford::minimal_dimension(m);
    ModelSpec {
        name: name.into(),
        kind: ModelKind::HtypeGroup,
        parameters: json!({"m": m, "chirality": chirality, "epsilon": 1.0}),
        n,
        m,
        expected_class: "CP",
        expected_kappa: Some(kappa),
        normalized: true,
    }
}

fn sphere_spec(name: &str, kind: ModelKind, k: usize, epsilon: f64) -> ModelSpec {
    let (n, m, class, kappa) = match kind {
        ModelKind::ComplexHopf => (2 * k, 1, "CP", None),
        _ => (4 * k, 3, "HP", if epsilon == 4.0 { Some(2.0) } else { None }),
    };
    ModelSpec {
        name: name.into(),
        kind,
        parameters: json!({"k": k, "epsilon": epsilon}),
        n,
        m,
        expected_class: class,
        expected_kappa: kappa,
        normalized: epsilon == 4.0,
    }
}

/// All built-in models.
pub fn catalog() -> Vec<ModelSpec> {
    vec![
        group_spec("heisenberg", 1, &[1], 0.0),
        group_spec("heisenberg-cl2", 2, &[1], 0.0),
        group_spec("heisenberg-quat", 3, &[1], 0.0),
        group_spec("heisenberg-cl3-mixed", 3, &[1, -1], 0.0),
        group_spec("heisenberg-oct", 7, &[1], 0.0),
        sphere_spec("complex-hopf-s3", ModelKind::ComplexHopf, 1, 4.0),
        sphere_spec("complex-hopf-s5", ModelKind::ComplexHopf, 2, 4.0),
        sphere_spec("quaternionic-hopf-s7", ModelKind::QuaternionicHopf, 1, 4.0),
        sphere_spec("quaternionic-hopf-s11", ModelKind::QuaternionicHopf, 2, 4.0),
        sphere_spec("round-s7-unnormalized", ModelKind::QuaternionicHopf, 1, 1.0),
        sphere_spec("round-s3-unnormalized", ModelKind::ComplexHopf, 1, 1.0),
    ]
}

pub fn model_spec(name: &str) -> Result<ModelSpec> {
    catalog().into_iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownModel(name.into()))
}

pub fn model_by_name(name: &str) -> Result<FoliationModel> {
    model_spec(name)?.build()
}

fn get_epsilon(params: &Value, default: f64) -> Result<f64> {
    match params.get("epsilon") {
        None | Some(Value::Null) => Ok(default),
        Some(v) => v.as_f64().ok_or_else(|| Error::Schema("`epsilon` must be a number".into())),
    }
}

fn get_usize(params: &Value, key: &str) -> Result<usize> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Schema(format!("`{key}` must be a nonnegative integer")))
}

fn parse_matrix(v: &Value) -> Result<DMatrix<f64>> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Schema(format!("matrix: {e}")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema("matrices must be square".into()));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

fn from_parameters(name: &str, kind: ModelKind, params: &Value) -> Result<FoliationModel> {
    let model = match kind {
        ModelKind::HtypeGroup => {
            let rep = if let Some(r) = params.get("rep") {
                CliffordRepresentation::from_json(r)?
            } else {
                let m = get_usize(params, "m")?;
                let chirality: Vec<i8> = match params.get("chirality") {
                    Some(c) => serde_json::from_value(c.clone()).map_err(|e| Error::Schema(format!("chirality: {e}")))?,
                    None => vec![1],
                };
                build_representation(m, chirality.len(), &chirality)?
            };
            two_step_group(name, rep.generators(), get_epsilon(params, 1.0)?)?
        }
        ModelKind::ComplexHopf => complex_hopf(get_usize(params, "k")?, get_epsilon(params, 4.0)?)?,
        ModelKind::QuaternionicHopf => quaternionic_hopf(get_usize(params, "k")?, get_epsilon(params, 4.0)?)?,
        ModelKind::Custom => {
            let mats = params
                .get("matrices")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Schema("custom models need a `matrices` array".into()))?
                .iter()
                .map(parse_matrix)
                .collect::<Result<Vec<_>>>()?;
            two_step_group(name, &mats, get_epsilon(params, 1.0)?)?
        }
    };
    Ok(model.with_name(name))
}

/// Build a model from `{"kind", "name", "epsilon", "rep" | "k" | "matrices"}`
/// and reject it unless the foliation axioms hold at sample points.
pub fn load_model(value: &Value) -> Result<FoliationModel> {
    let kind: ModelKind = serde_json::from_value(
        value.get("kind").cloned().ok_or_else(|| Error::Schema("missing `kind`".into()))?,
    )
    .map_err(|e| Error::Schema(format!("kind: {e}")))?;
    let name = value
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("missing string `name`".into()))?;
    let model = from_parameters(name, kind, value)?;
    let points = model_points(&model, VALIDATION_POINTS, 42);
    let report = check_foliation_axioms(&model, &points, crate::foliation::TOL_CURVATURE)?;
    if !report.passed() {
        return Err(Error::InvalidModel(format!(
            "foliation axioms fail (residual {:.3e})",
            report.max_residual
        )));
    }
    Ok(model)
}

pub fn load_model_str(text: &str) -> Result<FoliationModel> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    load_model(&value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_are_unique_and_build() {
        let cat = catalog();
        assert!(cat.len() >= 6);
        for spec in &cat {
            let model = spec.build().unwrap();
            assert_eq!((model.n(), model.m()), (spec.n, spec.m), "{}", spec.name);
            assert_eq!(model.name(), spec.name);
        }
        let mut names: Vec<_> = cat.iter().map(|s| s.name.clone()).collect();
        names.dedup();
        assert_eq!(names.len(), cat.len());
    }

    #[test]
    fn s7_summary_line() {
        let line = model_spec("quaternionic-hopf-s7").unwrap().summary();
        assert_eq!(line, "quaternionic-hopf-s7 (n=4, m=3, HP, κ=2)");
    }

    #[test]
    fn quaternion_units_are_orthogonal_and_anticommute() {
        let u = right_quaternion_units();
        let m: Vec<DMatrix<f64>> = u.iter().map(|x| DMatrix::from_fn(4, 4, |r, c| x[r][c])).collect();
        let id = DMatrix::<f64>::identity(4, 4);
        for a in 0..3 {
            assert_eq!(&m[a] * &m[a], -&id);
            assert_eq!(&m[a] + m[a].transpose(), DMatrix::zeros(4, 4));
            for b in (a + 1)..3 {
                assert_eq!(&m[a] * &m[b] + &m[b] * &m[a], DMatrix::zeros(4, 4));
            }
        }
        // right multiplication reverses the product order: (p·i)·j = p·k
        assert_eq!(&m[1] * &m[0], m[2]);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(model_by_name("nope"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn load_rejects_non_skew_custom() {
        let j = json!({"kind": "custom", "name": "bad", "matrices": [[[0.0, 1.0], [1.0, 0.0]]]});
        assert!(load_model(&j).is_err());
    }

    #[test]
    fn load_sphere_by_k() {
        let j = json!({"kind": "complex-hopf", "name": "s5", "k": 2, "epsilon": 4.0});
        let model = load_model(&j).unwrap();
        assert_eq!((model.n(), model.m(), model.name()), (4, 1, "s5"));
    }
}
