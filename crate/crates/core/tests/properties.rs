//! Property tests over random inputs.

use nalgebra::DMatrix;
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;

use htype::analysis::{bounds_clifford, bounds_general, rayleigh_ritz, HorizontalOperators};
use htype::clifford::{build_representation, minimal_dimension, CliffordElement};
use htype::foliation::PointCalculus;
use htype::geometry::{bracket, sphere_integral, sphere_moment, PolyField, Polynomial};
use htype::models::{complex_hopf, model_by_name, quaternionic_hopf};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn unit(v: Vec<f64>) -> Option<Vec<f64>> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (norm > 0.1).then(|| v.iter().map(|x| x / norm).collect())
}

fn sphere_point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, dim).prop_filter_map("near origin", unit)
}

fn small_poly(nn: usize, degree: u32) -> impl Strategy<Value = Polynomial> {
    let basis = Polynomial::monomial_basis(nn, degree);
    prop::collection::vec(-1.0..1.0f64, basis.len()).prop_map(move |cs| {
        let mut f = Polynomial::zero(nn);
        for (e, c) in basis.iter().zip(cs) {
            f = &f + &Polynomial::monomial(nn, e.clone(), c);
        }
        f
    })
}

fn field(nn: usize, degree: u32) -> impl Strategy<Value = PolyField> {
    prop::collection::vec(small_poly(nn, degree), nn).prop_map(|c| PolyField::new(c).unwrap())
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn moment_oracle(nn: usize, alpha: &[u32]) -> f64 {
    if alpha.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let total: u32 = alpha.iter().sum();
    let ln = ln_gamma(nn as f64 / 2.0) - ln_gamma((f64::from(total) + nn as f64) / 2.0)
        + alpha.iter().map(|&a| ln_gamma((f64::from(a) + 1.0) / 2.0) - ln_gamma(0.5)).sum::<f64>();
    ln.exp()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn clifford_relations(m in 1usize..=12, mult in 1usize..=2, signs in prop::collection::vec(prop::bool::ANY, 2)) {
        let chi: Vec<i8> = signs[..mult].iter().map(|&s| if s { 1 } else { -1 }).collect();
        let rep = build_representation(m, mult, &chi).unwrap();
        prop_assert_eq!(rep.n(), mult * minimal_dimension(m));
        prop_assert!(rep.relation_residual() < 1e-12);
        prop_assert!(rep.skew_residual() < 1e-12);
        prop_assert!(rep.orthogonality_residual() < 1e-12);
    }

    #[test]
    fn j_squares_to_minus_norm(m in 1usize..=8, z in prop::collection::vec(-2.0..2.0f64, 8)) {
        let rep = build_representation(m, 1, &[1]).unwrap();
        let z = &z[..m];
        let j = rep.apply_vector(z).unwrap();
        let n2: f64 = z.iter().map(|x| x * x).sum();
        let want = DMatrix::<f64>::identity(rep.n(), rep.n()) * (-n2);
        prop_assert!((&j * &j - want).amax() < 1e-11);
    }

    #[test]
    fn geometric_product_is_associative(
        a in prop::collection::vec(-1.0..1.0f64, 5),
        b in prop::collection::vec(-1.0..1.0f64, 5),
        c in prop::collection::vec(-1.0..1.0f64, 5),
    ) {
        let (a, b, c) = (CliffordElement::vector(&a), CliffordElement::vector(&b), CliffordElement::vector(&c));
        let ab = a.geometric_product(&b).unwrap();
        let bc = b.geometric_product(&c).unwrap();
        let left = ab.geometric_product(&c).unwrap();
        let right = a.geometric_product(&bc).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn vector_squares_to_minus_norm(v in prop::collection::vec(-3.0..3.0f64, 1..9)) {
        let x = CliffordElement::vector(&v);
        let sq = x.geometric_product(&x).unwrap();
        let n2: f64 = v.iter().map(|t| t * t).sum();
        prop_assert!(sq.max_abs_diff(&CliffordElement::scalar(v.len(), -n2)) < 1e-12);
    }

    #[test]
    fn representation_is_multiplicative(
        a in prop::collection::vec(-1.0..1.0f64, 4),
        b in prop::collection::vec(-1.0..1.0f64, 4),
    ) {
        let rep = build_representation(4, 1, &[1]).unwrap();
        let (x, y) = (CliffordElement::vector(&a), CliffordElement::vector(&b));
        let xy = rep.represent(&x.geometric_product(&y).unwrap()).unwrap();
        let prod = rep.represent(&x).unwrap() * rep.represent(&y).unwrap();
        prop_assert!((xy - prod).amax() < 1e-12);
    }

    #[test]
    fn polynomial_product_rule(f in small_poly(3, 2), g in small_poly(3, 2), p in prop::collection::vec(-1.0..1.0f64, 3), k in 0usize..3) {
        let lhs = (&f * &g).partial(k);
        let rhs = &(&f.partial(k) * &g) + &(&f * &g.partial(k));
        prop_assert!((lhs.eval(&p) - rhs.eval(&p)).abs() < 1e-12);
        let jet = (&f * &g).jet(&p);
        prop_assert!((jet.value - f.eval(&p) * g.eval(&p)).abs() < 1e-12);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in field(3, 1), y in field(3, 1), z in field(3, 2), p in prop::collection::vec(-1.0..1.0f64, 3)) {
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        prop_assert!(max_diff(&xy.eval(&p), &yx.scale(-1.0).eval(&p)) < 1e-12);
        let j1 = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
        let j2 = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
        let j3 = bracket(&z, &xy).unwrap();
        let sum = j1.try_add(&j2).unwrap().try_add(&j3).unwrap();
        prop_assert!(sum.eval(&p).iter().all(|v| v.abs() < 1e-11));
    }

    #[test]
    fn sphere_moments_match_gamma_oracle(alpha in prop::collection::vec(0u32..7, 2..6)) {
        let nn = alpha.len();
        let want = moment_oracle(nn, &alpha);
        let got = sphere_moment(nn, &alpha);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1e-3), "{got} vs {want}");
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn frame_tensors_on_s7(p in sphere_point(8)) {
        let s7 = model_by_name("quaternionic-hopf-s7").unwrap();
        let pc = PointCalculus::at(&s7, &p).unwrap();
        let d = pc.n + pc.m;
        for i in 0..pc.n {
            for j in 0..pc.n {
                for g in 0..d {
                    prop_assert!((pc.torsion[pc.i3(i, j, g)] + pc.torsion[pc.i3(j, i, g)]).abs() < 1e-12);
                }
            }
        }
        for a in 0..pc.m {
            let j = pc.j_operator(a);
            prop_assert!((&j + j.transpose()).amax() < 1e-12);
            prop_assert!((&j * &j + DMatrix::<f64>::identity(pc.n, pc.n)).amax() < 1e-12);
            for e in 0..d {
                let nj = pc.nabla_j_operator(e, a);
                prop_assert!((&nj + nj.transpose()).amax() < 1e-10);
            }
        }
        let ric = pc.ricci_h();
        prop_assert!((&ric - ric.transpose()).amax() < 1e-10);
    }

    #[test]
    fn frame_tensors_on_groups(p in prop::collection::vec(-1.0..1.0f64, 15)) {
        let h = model_by_name("heisenberg-oct").unwrap();
        let pc = PointCalculus::at(&h, &p).unwrap();
        prop_assert!(pc.nabla_t.iter().all(|v| v.abs() < 1e-12));
        prop_assert!(pc.ricci_h().amax() < 1e-12);
    }

    #[test]
    fn integration_by_parts(f in small_poly(4, 3), g in small_poly(4, 2)) {
        let s3 = complex_hopf(1, 4.0).unwrap();
        let ops = HorizontalOperators::new(&s3).unwrap();
        let lhs = -sphere_integral(&(&f * &ops.laplacian(&g).unwrap()));
        let rhs = -sphere_integral(&(&g * &ops.laplacian(&f).unwrap()));
        let gam = sphere_integral(&ops.gamma(&f, &g).unwrap());
        prop_assert!((lhs - rhs).abs() < 1e-10);
        prop_assert!((lhs - gam).abs() < 1e-10);
    }

    #[test]
    fn integration_by_parts_s7(f in small_poly(8, 2)) {
        let s7 = quaternionic_hopf(1, 4.0).unwrap();
        let ops = HorizontalOperators::new(&s7).unwrap();
        let energy = -sphere_integral(&(&f * &ops.laplacian(&f).unwrap()));
        let gam = sphere_integral(&ops.gamma(&f, &f).unwrap());
        prop_assert!(energy >= -1e-12);
        prop_assert!((energy - gam).abs() < 1e-10);
    }

    #[test]
    fn general_bounds_scale_with_k(n in 1usize..40, m in 1usize..10, k in 0.01..100.0f64, s in 0.1..10.0f64) {
        let a = bounds_general(n, m, k).unwrap();
        let b = bounds_general(n, m, s * k).unwrap();
        prop_assert!((b.lambda1_bound - s * a.lambda1_bound).abs() < 1e-9 * b.lambda1_bound);
        prop_assert!((b.diameter_bound * s.sqrt() - a.diameter_bound).abs() < 1e-9 * a.diameter_bound);
    }

    #[test]
    fn clifford_bounds_consistency(k in 1usize..10, kappa in 0.01..50.0f64) {
        let n = 4 * k;
        let quat = bounds_clifford(n, 3, kappa, true).unwrap();
        let plain = bounds_clifford(n, 3, kappa, false).unwrap();
        let unit = bounds_clifford(n, 3, 1.0, true).unwrap();
        prop_assert!(quat.lambda1_bound > 0.0 && plain.lambda1_bound > 0.0);
        prop_assert!((quat.lambda1_bound - kappa * unit.lambda1_bound).abs() < 1e-9 * quat.lambda1_bound);
        prop_assert!((quat.diameter_bound * kappa.sqrt() - unit.diameter_bound).abs() < 1e-9 * unit.diameter_bound);
        prop_assert!(bounds_clifford(n, 2, kappa, true).is_err());
    }
}

#[test]
fn ritz_eigenfunctions_are_eigenfunctions() {
    for model in [complex_hopf(1, 4.0).unwrap(), quaternionic_hopf(1, 4.0).unwrap()] {
        let r = rayleigh_ritz(&model, 2).unwrap();
        let ops = HorizontalOperators::new(&model).unwrap();
        let pts = htype::models::model_points(&model, 16, 11);
        for (lambda, f) in r.eigenvalues.iter().zip(&r.eigenfunctions) {
            let lf = ops.laplacian(f).unwrap();
            for p in &pts {
                assert!((lf.eval(p) + lambda * f.eval(p)).abs() < 1e-8, "{}: λ = {lambda}", model.name());
            }
        }
    }
}

#[test]
fn ritz_values_decrease_with_degree() {
    let s3 = complex_hopf(1, 4.0).unwrap();
    let mut prev = rayleigh_ritz(&s3, 1).unwrap();
    for degree in 2..=4 {
        let next = rayleigh_ritz(&s3, degree).unwrap();
        assert!(next.rank >= prev.rank);
        for (k, l) in prev.eigenvalues.iter().enumerate() {
            assert!(next.eigenvalues[k] <= l + 1e-9);
        }
        prev = next;
    }
}
