//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use htype::analysis::{bounds_clifford, bounds_general, check_cd_inequality, gram_matrices, random_test_functions, rayleigh_ritz};
use htype::clifford::{build_representation, minimal_dimension};
use htype::foliation::{
    check_curvature_constancy, check_einstein, check_foliation_axioms, check_h_type, check_lemma_identities,
    check_oneill, check_parallel_clifford, check_torsion_class, check_vertical_curvature, check_yang_mills,
    ricci_h, Backend, FoliationModel,
};
use htype::models::{catalog, model_by_name, model_points, normalize_to_htype};

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn model(name: &str) -> Result<FoliationModel, String> {
    model_by_name(name).map_err(|e| e.to_string())
}

/// Radon–Hurwitz number `ρ(n)` for `n = 2^{4a+b}·odd`.
fn radon_hurwitz(n: usize) -> usize {
    let t = n.trailing_zeros() as usize;
    8 * (t / 4) + (1 << (t % 4))
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for m in 1..=8 {
        for mult in 1..=2usize {
            let patterns: Vec<Vec<i8>> = if m == 3 {
                (0..(1 << mult)).map(|bits| (0..mult).map(|b| if bits >> b & 1 == 1 { -1 } else { 1 }).collect()).collect()
            } else {
                vec![vec![1; mult]]
            };
            for chi in patterns {
                let rep = build_representation(m, mult, &chi).map_err(|e| e.to_string())?;
                worst = worst.max(rep.relation_residual()).max(rep.skew_residual());
                count += 1;
            }
        }
    }
    ensure(worst < 1e-12, format!("relation residual {worst:.3e}"))?;
    for m in 1..=16 {
        let oracle = (0..).map(|k| 1usize << k).find(|&n| radon_hurwitz(n) > m).unwrap();
        ensure(minimal_dimension(m) == oracle, format!("d({m}) = {} but expected {oracle}", minimal_dimension(m)))?;
    }
    Ok(format!("{count} representations, residual {worst:.1e}; d(m) matches for m ≤ 16"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for spec in catalog() {
        let m = spec.build().map_err(|e| e.to_string())?;
        let pts = model_points(&m, 64, SEED);
        let ax = check_foliation_axioms(&m, &pts, 1e-9).map_err(|e| e.to_string())?;
        ensure(ax.passed(), format!("{}: axioms residual {:.3e}", spec.name, ax.max_residual))?;
        let (norm, _) = normalize_to_htype(&m).map_err(|e| format!("{}: {e}", spec.name))?;
        let h = check_h_type(&norm, &pts, 1e-9).map_err(|e| e.to_string())?;
        ensure(h.passed(), format!("{}: h-type residual {:.3e}", spec.name, h.max_residual))?;
        worst = worst.max(ax.max_residual).max(h.max_residual);
    }
    let mut lambdas = Vec::new();
    for name in ["round-s7-unnormalized", "round-s3-unnormalized"] {
        let m = model(name)?;
        let r = check_h_type(&m, &model_points(&m, 64, SEED), 1e-9).map_err(|e| e.to_string())?;
        let l = r.detail_f64("lambda").unwrap_or(f64::NAN);
        ensure(!r.passed() && (l - 4.0).abs() < 1e-9, format!("{name}: λ = {l}"))?;
        lambdas.push(l);
    }
    Ok(format!("{} models, worst residual {worst:.1e}; unnormalized λ = {:?}", catalog().len(), lambdas))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for spec in catalog() {
        let m = spec.build().map_err(|e| e.to_string())?;
        let r = check_yang_mills(&m, &model_points(&m, 64, SEED), 1e-9).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{}: {:.3e}", spec.name, r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("worst horizontal divergence {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for spec in catalog() {
        let m = spec.build().map_err(|e| e.to_string())?;
        let (_, r) = check_torsion_class(&m, &model_points(&m, 64, SEED), 1e-9).map_err(|e| e.to_string())?;
        let key = if m.backend() == Backend::Group { "nabla_t" } else { "nabla_h_t" };
        let res = r.detail_f64(key).unwrap_or(f64::NAN);
        ensure(res < 1e-9, format!("{}: {key} = {res:.3e}", spec.name))?;
        worst = worst.max(res);
    }
    Ok(format!("groups CP, Hopf models HP; worst residual {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for name in ["quaternionic-hopf-s7", "quaternionic-hopf-s11"] {
        let m = model(name)?;
        let pts = model_points(&m, 16, SEED);
        let (fit, r) = check_parallel_clifford(&m, &pts, 1e-9).map_err(|e| e.to_string())?;
        let k = fit.kappa.unwrap_or(f64::NAN);
        ensure(r.passed() && (k - 2.0).abs() < 1e-8, format!("{name}: κ = {k}, residual {:.3e}", r.max_residual))?;
        let v = check_vertical_curvature(&m, k, &pts, 1e-8).map_err(|e| e.to_string())?;
        ensure(v.passed(), format!("{name}: vertical sectional residual {:.3e}", v.max_residual))?;
        notes.push(format!("{name} κ = {k:.12}"));
    }
    for spec in catalog().into_iter().filter(|s| s.kind == htype::models::ModelKind::HtypeGroup) {
        let m = spec.build().map_err(|e| e.to_string())?;
        let (fit, r) = check_parallel_clifford(&m, &model_points(&m, 16, SEED), 1e-9).map_err(|e| e.to_string())?;
        ensure(r.passed() && fit.kappa.unwrap_or(0.0) == 0.0, format!("{}: κ = {:?}", spec.name, fit.kappa))?;
    }
    Ok(format!("{}; κ = 0 on all groups", notes.join(", ")))
}

fn ricci_deviation(m: &FoliationModel, value: f64, points: &[Vec<f64>]) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for p in points {
        let r = ricci_h(m, p).map_err(|e| e.to_string())?;
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { value } else { 0.0 };
                worst = worst.max((r.get(&[i, j]) - want).abs());
            }
        }
    }
    Ok(worst)
}

fn criterion_6() -> Outcome {
    for (name, value) in [("quaternionic-hopf-s7", 12.0), ("quaternionic-hopf-s11", 16.0)] {
        let m = model(name)?;
        let pts = model_points(&m, 16, SEED);
        let dev = ricci_deviation(&m, value, &pts)?;
        ensure(dev < 1e-8, format!("{name}: Ric_H deviates from {value} by {dev:.3e}"))?;
        let r = check_einstein(&m, &pts, 1e-8).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{name}: closed form residual {:.3e}", r.max_residual))?;
    }
    for spec in catalog().into_iter().filter(|s| s.kind == htype::models::ModelKind::HtypeGroup && s.m >= 2) {
        let m = spec.build().map_err(|e| e.to_string())?;
        let dev = ricci_deviation(&m, 0.0, &model_points(&m, 16, SEED))?;
        ensure(dev < 1e-9, format!("{}: Ric_H = {dev:.3e}", spec.name))?;
    }
    Ok("Ric_H = 12 on S⁷, 16 on S¹¹, 0 on groups with m ≥ 2".into())
}

fn criterion_7() -> Outcome {
    let m = model("quaternionic-hopf-s7")?;
    let pts = model_points(&m, 32, SEED);
    let r = check_curvature_constancy(&m, 2.0, &pts, 1e-9).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("constancy residual {:.3e}", r.max_residual))?;
    let ratio = r.detail_f64("vertical_metric_ratio_to_base").unwrap_or(f64::NAN);
    let space_form = r.detail_f64("full_space_form_residual").unwrap_or(f64::NAN);
    ensure((ratio - 1.0).abs() < 1e-15 && space_form < 1e-9, format!("ĝ/round = {ratio}, space form {space_form:.3e}"))?;
    let o = check_oneill(&m, &pts, 1e-9).map_err(|e| e.to_string())?;
    ensure(o.passed(), format!("O'Neill residual {:.3e}", o.max_residual))?;
    Ok(format!("constancy {:.1e}, round curvature {:.1e}, O'Neill {:.1e}", r.max_residual, space_form, o.max_residual))
}

fn criterion_8() -> Outcome {
    let mut names = vec!["quaternionic-hopf-s7".to_string()];
    names.extend(catalog().into_iter().filter(|s| s.kind == htype::models::ModelKind::HtypeGroup).map(|s| s.name));
    let mut worst = 0.0f64;
    for name in &names {
        let m = model(name)?;
        for r in check_lemma_identities(&m, &model_points(&m, 16, SEED), 1e-9).map_err(|e| e.to_string())? {
            ensure(r.passed(), format!("{name}: {} residual {:.3e}", r.check, r.max_residual))?;
            worst = worst.max(r.max_residual);
        }
    }
    Ok(format!("{} models, worst residual {worst:.1e}", names.len()))
}

fn criterion_9() -> Outcome {
    let s7 = model("quaternionic-hopf-s7")?;
    let l7 = rayleigh_ritz(&s7, 2).map_err(|e| e.to_string())?.first_nonzero(1e-8).unwrap_or(f64::NAN);
    let bc = bounds_clifford(4, 3, 2.0, true).map_err(|e| e.to_string())?.lambda1_bound;
    let bg = bounds_general(4, 3, 12.0).map_err(|e| e.to_string())?.lambda1_bound;
    ensure((l7 - 4.0).abs() < 1e-8, format!("S⁷ λ₁ = {l7}"))?;
    ensure((l7 - bc).abs() < 1e-8 && (bc - bg).abs() < 1e-12, format!("bounds {bc} / {bg}"))?;
    let s3 = model("complex-hopf-s3")?;
    let l3 = rayleigh_ritz(&s3, 2).map_err(|e| e.to_string())?.first_nonzero(1e-8).unwrap_or(f64::NAN);
    ensure((l3 - 2.0).abs() < 1e-8, format!("S³ λ₁ = {l3}"))?;
    Ok(format!("S⁷ λ₁ = {l7:.10} (bound {bc}), S³ λ₁ = {l3:.10}"))
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    for (name, k) in [("heisenberg-quat", 0.0), ("quaternionic-hopf-s7", 12.0)] {
        let m = model(name)?;
        let fs = random_test_functions(m.ambient_dim(), 3, 20, SEED);
        let r = check_cd_inequality(&m, k, &fs, &[0.1, 1.0, 10.0], &model_points(&m, 32, SEED), 1e-9)
            .map_err(|e| e.to_string())?;
        let margin = r.detail_f64("min_margin").unwrap_or(f64::NAN);
        ensure(r.passed(), format!("{name}: min margin {margin:.3e}"))?;
        notes.push(format!("{name} min margin {margin:.3}"));
    }
    Ok(notes.join(", "))
}

fn criterion_11() -> Outcome {
    let g = bounds_general(4, 3, 12.0).map_err(|e| e.to_string())?.diameter_bound;
    let c = bounds_clifford(4, 3, 2.0, true).map_err(|e| e.to_string())?.diameter_bound;
    ensure((g - 29.471).abs() < 1e-3 && (c - 29.471).abs() < 1e-3, format!("{g} / {c}"))?;
    Ok(format!("diam ≤ {g:.6} (general) = {c:.6} (quaternionic)"))
}

fn criterion_12() -> Outcome {
    let mut worst = 0.0f64;
    for name in ["complex-hopf-s3", "quaternionic-hopf-s7"] {
        let m = model(name)?;
        for d in 1..=3 {
            let (_, a, _) = gram_matrices(&m, d).map_err(|e| e.to_string())?;
            worst = worst.max((&a - a.transpose()).amax());
        }
    }
    ensure(worst < 1e-10, format!("asymmetry {worst:.3e}"))?;
    Ok(format!("max Gram asymmetry {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Clifford relations and Radon–Hurwitz dimensions", criterion_1),
        ("foliation axioms and H-type normalization", criterion_2),
        ("Yang–Mills condition", criterion_3),
        ("torsion classes", criterion_4),
        ("parallel Clifford structure and κ", criterion_5),
        ("horizontal Einstein constants", criterion_6),
        ("curvature constancy and O'Neill formula", criterion_7),
        ("lemma identities", criterion_8),
        ("spectral sharpness", criterion_9),
        ("curvature-dimension inequality", criterion_10),
        ("diameter bound arithmetic", criterion_11),
        ("Gram matrix self-adjointness", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
