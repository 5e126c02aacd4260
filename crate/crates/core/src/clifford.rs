//! Real Clifford algebras `Cl(R^m)` with the negative-definite relation
//! `v·v = -|v|^2`, and explicit matrix representations on `R^n` by
//! anticommuting skew-symmetric complex structures.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when checking the defining relations of a representation.
pub const RELATION_TOL: f64 = 1e-12;

/// Element of `Cl(R^m)` stored on the blade basis.
///
/// A blade is a strictly increasing set of generator indices (0-based),
/// encoded as a bit mask. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement {
    m: usize,
    coeffs: BTreeMap<u64, f64>,
}

fn blade_sign(a: u64, b: u64) -> f64 {
    // Reorder e_A e_B into increasing order: count transpositions, then
    // every repeated generator contributes e_i e_i = -1.
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    let squares = (a & b).count_ones();
    if (swaps + squares) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl CliffordElement {
    pub fn zero(m: usize) -> Self {
        Self { m, coeffs: BTreeMap::new() }
    }

    pub fn scalar(m: usize, value: f64) -> Self {
        let mut e = Self::zero(m);
        e.add_term(0, value);
        e
    }

    /// The generator `e_i` (0-based).
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::InvalidArgument(format!("generator {i} out of range for m = {m}")));
        }
        let mut e = Self::zero(m);
        e.add_term(1 << i, 1.0);
        Ok(e)
    }

    /// The blade `e_{i1}·e_{i2}·…` for strictly increasing indices.
    pub fn blade(m: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        let mut last = None;
        for &i in indices {
            if i >= m || last.is_some_and(|l| l >= i) {
                return Err(Error::InvalidArgument(format!(
                    "blade indices must be strictly increasing and < {m}: {indices:?}"
                )));
            }
            mask |= 1 << i;
            last = Some(i);
        }
        let mut e = Self::zero(m);
        e.add_term(mask, 1.0);
        Ok(e)
    }

    pub fn vector(v: &[f64]) -> Self {
        let mut e = Self::zero(v.len());
        for (i, &x) in v.iter().enumerate() {
            e.add_term(1 << i, x);
        }
        e
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn add_term(&mut self, blade: u64, value: f64) {
        if value == 0.0 {
            return;
        }
        let entry = self.coeffs.entry(blade).or_insert(0.0);
        *entry += value;
        if *entry == 0.0 {
            self.coeffs.remove(&blade);
        }
    }

    /// Iterate over `(indices, coefficient)` pairs in blade-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.coeffs.iter().map(|(&mask, &c)| {
            let idx = (0..64).filter(|i| mask & (1 << i) != 0).collect();
            (idx, c)
        })
    }

    pub fn coefficient(&self, indices: &[usize]) -> f64 {
        let mask = indices.iter().fold(0u64, |acc, &i| acc | (1 << i));
        self.coeffs.get(&mask).copied().unwrap_or(0.0)
    }

    /// Grade-`k` part.
    pub fn grade(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(mask, _)| mask.count_ones() as usize == k)
            .map(|(&b, &c)| (b, c))
            .collect();
        Self { m: self.m, coeffs }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.values().all(|c| c.abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<u64> = self.coeffs.keys().copied().collect();
        keys.extend(other.coeffs.keys().copied());
        keys.into_iter()
            .map(|k| {
                (self.coeffs.get(&k).copied().unwrap_or(0.0) - other.coeffs.get(&k).copied().unwrap_or(0.0)).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_m(self.m, other.m)?;
        let mut out = self.clone();
        for (&b, &c) in &other.coeffs {
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.m);
        for (&b, &c) in &self.coeffs {
            out.add_term(b, s * c);
        }
        out
    }

    /// Clifford product with `e_i·e_j + e_j·e_i = -2δ_ij`.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        check_m(self.m, other.m)?;
        let mut out = Self::zero(self.m);
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                out.add_term(a ^ b, blade_sign(a, b) * ca * cb);
            }
        }
        Ok(out)
    }
}

fn check_m(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension { expected: a, found: b });
    }
    Ok(())
}

/// The embedding `z1 ∧ z2 ↦ z1·z2 + <z1, z2>` of `Λ²` into `Cl_2`.
pub fn wedge_to_cl2(z1: &[f64], z2: &[f64]) -> Result<CliffordElement> {
    check_m(z1.len(), z2.len())?;
    let a = CliffordElement::vector(z1);
    let b = CliffordElement::vector(z2);
    let dot: f64 = z1.iter().zip(z2).map(|(x, y)| x * y).sum();
    let prod = a.geometric_product(&b)?;
    prod.add(&CliffordElement::scalar(z1.len(), dot))
}

/// `m` anticommuting skew-symmetric matrices `J_1..J_m` on `R^n` with
/// `J_i J_j + J_j J_i = -2 δ_ij I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRepresentation {
    m: usize,
    n: usize,
    generators: Vec<DMatrix<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    m: usize,
    n: usize,
    generators: Vec<Vec<Vec<f64>>>,
}

impl CliffordRepresentation {
    /// Validate and wrap a list of generator matrices.
    pub fn new(generators: Vec<DMatrix<f64>>) -> Result<Self> {
        let m = generators.len();
        if m == 0 {
            return Err(Error::InvalidArgument("a representation needs at least one generator".into()));
        }
        let n = generators[0].nrows();
        for g in &generators {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::Dimension { expected: n, found: g.nrows().max(g.ncols()) });
            }
        }
        let rep = Self { m, n, generators };
        let skew = rep.skew_residual();
        if skew > RELATION_TOL {
            return Err(Error::InvalidArgument(format!("generators are not skew-symmetric (residual {skew:.3e})")));
        }
        let rel = rep.relation_residual();
        if rel > RELATION_TOL {
            return Err(Error::InvalidArgument(format!(
                "generators violate J_i J_j + J_j J_i = -2δ_ij I (residual {rel:.3e})"
            )));
        }
        Ok(rep)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    pub fn skew_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| (g + g.transpose()).amax())
            .fold(0.0, f64::max)
    }

    /// `max |J_i J_j + J_j J_i + 2 δ_ij I|` over all pairs.
    pub fn relation_residual(&self) -> f64 {
        let id = DMatrix::<f64>::identity(self.n, self.n);
        let mut worst = 0.0f64;
        for i in 0..self.m {
            for j in i..self.m {
                let mut a = &self.generators[i] * &self.generators[j] + &self.generators[j] * &self.generators[i];
                if i == j {
                    a += 2.0 * &id;
                }
                worst = worst.max(a.amax());
            }
        }
        worst
    }

    pub fn orthogonality_residual(&self) -> f64 {
        let id = DMatrix::<f64>::identity(self.n, self.n);
        self.generators
            .iter()
            .map(|g| (g.transpose() * g - &id).amax())
            .fold(0.0, f64::max)
    }

    /// `J_z = Σ z_i J_i`.
    pub fn apply_vector(&self, z: &[f64]) -> Result<DMatrix<f64>> {
        check_m(self.m, z.len())?;
        let mut out = DMatrix::zeros(self.n, self.n);
        for (g, &c) in self.generators.iter().zip(z) {
            out += c * g;
        }
        Ok(out)
    }

    /// Algebra homomorphism `Cl(R^m) → End(R^n)`, `e_{i1}…e_{ik} ↦ J_{i1}…J_{ik}`.
    pub fn represent(&self, a: &CliffordElement) -> Result<DMatrix<f64>> {
        check_m(self.m, a.m())?;
        let mut out = DMatrix::zeros(self.n, self.n);
        for (indices, c) in a.terms() {
            let mut blade = DMatrix::<f64>::identity(self.n, self.n);
            for i in indices {
                blade *= &self.generators[i];
            }
            out += c * blade;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let generators = self
            .generators
            .iter()
            .map(|g| (0..self.n).map(|r| (0..self.n).map(|c| g[(r, c)]).collect()).collect())
            .collect();
        serde_json::to_value(RepresentationJson { m: self.m, n: self.n, generators }).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: RepresentationJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Schema(format!("representation: {e}")))?;
        if raw.generators.len() != raw.m {
            return Err(Error::Schema(format!("expected {} generators, found {}", raw.m, raw.generators.len())));
        }
        let mut mats = Vec::with_capacity(raw.m);
        for g in &raw.generators {
            if g.len() != raw.n || g.iter().any(|row| row.len() != raw.n) {
                return Err(Error::Schema(format!("generator is not {0}×{0}", raw.n)));
            }
            mats.push(DMatrix::from_fn(raw.n, raw.n, |r, c| g[r][c]));
        }
        Self::new(mats)
    }
}

/// Radon–Hurwitz dimension: the smallest `n` admitting `m` anticommuting
/// skew-symmetric complex structures on `R^n`.
pub fn minimal_dimension(m: usize) -> usize {
    const BASE: [usize; 9] = [1, 2, 4, 4, 8, 8, 8, 8, 16];
    if m <= 8 {
        BASE[m]
    } else {
        16 * minimal_dimension(m - 8)
    }
}

fn mat(n: usize, entries: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for &(r, c, v) in entries {
        m[(r, c)] = v;
    }
    m
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// Left multiplication by `i`, `j`, `k` on `H = R^4` with basis `(1, i, j, k)`.
fn quaternion_left() -> Vec<DMatrix<f64>> {
    vec![
        // i·(a + bi + cj + dk) = -b + ai - dj + ck
        mat(4, &[(0, 1, -1.0), (1, 0, 1.0), (2, 3, -1.0), (3, 2, 1.0)]),
        // j·q = -c + di + aj - bk
        mat(4, &[(0, 2, -1.0), (1, 3, 1.0), (2, 0, 1.0), (3, 1, -1.0)]),
        // k·q = -d - ci + bj + ak
        mat(4, &[(0, 3, -1.0), (1, 2, -1.0), (2, 1, 1.0), (3, 0, 1.0)]),
    ]
}

/// Right multiplication by `i`, `j`, `k` on `H = R^4`.
fn quaternion_right() -> Vec<DMatrix<f64>> {
    vec![
        // q·i = -b + ai + dj - ck
        mat(4, &[(0, 1, -1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, -1.0)]),
        // q·j = -c - di + aj + bk
        mat(4, &[(0, 2, -1.0), (1, 3, -1.0), (2, 0, 1.0), (3, 1, 1.0)]),
        // q·k = -d + ci - bj + ak
        mat(4, &[(0, 3, -1.0), (1, 2, 1.0), (2, 1, -1.0), (3, 0, 1.0)]),
    ]
}

/// Left multiplication by the imaginary octonion units on `O = R^8`,
/// built from the Cayley–Dickson pair `(a, b)(c, d) = (ac - d̄b, da + bc̄)`.
fn octonion_left() -> Vec<DMatrix<f64>> {
    // Octonion x = (p, q) with p, q ∈ H; unit u = (u1, u2).
    // Left multiplication L_u(p, q) = (u1 p - q̄ u2, q u1 + u2 p̄).
    let conj = mat(4, &[(0, 0, 1.0), (1, 1, -1.0), (2, 2, -1.0), (3, 3, -1.0)]);
    let left = quaternion_left();
    let right = quaternion_right();
    let id4 = DMatrix::<f64>::identity(4, 4);
    let lq = |k: Option<usize>| k.map_or(id4.clone(), |k| left[k].clone());
    let rq = |k: Option<usize>| k.map_or(id4.clone(), |k| right[k].clone());
    let block = |tl: DMatrix<f64>, tr: DMatrix<f64>, bl: DMatrix<f64>, br: DMatrix<f64>| {
        let mut m = DMatrix::zeros(8, 8);
        m.view_mut((0, 0), (4, 4)).copy_from(&tl);
        m.view_mut((0, 4), (4, 4)).copy_from(&tr);
        m.view_mut((4, 0), (4, 4)).copy_from(&bl);
        m.view_mut((4, 4), (4, 4)).copy_from(&br);
        m
    };
    let zero = DMatrix::<f64>::zeros(4, 4);
    let mut gens = Vec::with_capacity(7);
    // u = (e, 0), e ∈ {i, j, k}: (e p, q e)... with u2 = 0: L_u(p,q) = (u1 p, q u1).
    for k in 0..3 {
        gens.push(block(lq(Some(k)), zero.clone(), zero.clone(), rq(Some(k))));
    }
    // u = (0, u2), u2 ∈ {1, i, j, k}: L_u(p, q) = (-q̄ u2, u2 p̄).
    for k in [None, Some(0), Some(1), Some(2)] {
        let tr = -(rq(k) * &conj);
        let bl = lq(k) * &conj;
        gens.push(block(zero.clone(), tr, bl, zero.clone()));
    }
    gens
}

/// Irreducible generators for `1 ≤ m ≤ 8` (`m = 3` as left quaternion multiplication).
fn base_generators(m: usize) -> Vec<DMatrix<f64>> {
    let j2 = mat(2, &[(0, 1, -1.0), (1, 0, 1.0)]);
    match m {
        1 => vec![j2],
        2 => quaternion_left().into_iter().take(2).collect(),
        3 => quaternion_left(),
        4..=7 => octonion_left().into_iter().take(m).collect(),
        8 => {
            // Cl(8) on R^16: J_i ⊗ σ for i < 7 plus the extra generator
            // I ⊗ J_2 anticommutes once the octonionic ones are tensored with
            // a symmetric involution.
            let oct = octonion_left();
            let s = mat(2, &[(0, 0, 1.0), (1, 1, -1.0)]);
            let mut gens: Vec<DMatrix<f64>> = oct.iter().map(|g| kron(g, &s)).collect();
            gens.push(kron(&DMatrix::identity(8, 8), &j2));
            gens
        }
        _ => unreachable!("base cases are 1..=8"),
    }
}

/// Generators of an irreducible module, using `m → m + 8` periodicity
/// (`Cl(m + 8) ≅ Cl(m) ⊗ Cl(8)`-style doubling) beyond the base cases.
fn irreducible_generators(m: usize, chirality: f64) -> Vec<DMatrix<f64>> {
    if m <= 8 {
        let mut gens = base_generators(m);
        // left multiplication by i, j, k has J_1J_2J_3 = -I, right multiplication +I
        if m == 3 && chirality > 0.0 {
            gens = quaternion_right();
        }
        return gens;
    }
    let low = irreducible_generators(m - 8, chirality);
    let eight = base_generators(8);
    let d = low[0].nrows();
    // The product of all eight Cl(8) generators is a symmetric involution
    // anticommuting with each of them.
    let mut vol = DMatrix::<f64>::identity(16, 16);
    for g in &eight {
        vol *= g;
    }
    let mut gens: Vec<DMatrix<f64>> = eight.iter().map(|g| kron(&DMatrix::identity(d, d), g)).collect();
    gens.extend(low.iter().map(|g| kron(g, &vol)));
    gens
}

/// Build a representation of `Cl(R^m)` on `R^{multiplicity · d(m)}` as a
/// block-diagonal sum of irreducibles. `chirality` selects, for `m = 3`,
/// the block with `J_1J_2J_3 = +I` (`+1`, right quaternion multiplication)
/// or `-I` (`-1`, left multiplication); it is ignored for other `m`.
pub fn build_representation(m: usize, multiplicity: usize, chirality: &[i8]) -> Result<CliffordRepresentation> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if multiplicity == 0 {
        return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
    }
    if chirality.len() != multiplicity {
        return Err(Error::InvalidArgument(format!(
            "chirality pattern has {} entries, expected {multiplicity}",
            chirality.len()
        )));
    }
    if chirality.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidArgument("chirality entries must be +1 or -1".into()));
    }
    let d = minimal_dimension(m);
    let n = multiplicity * d;
    let mut gens = vec![DMatrix::<f64>::zeros(n, n); m];
    for (block, &sign) in chirality.iter().enumerate() {
        let irr = irreducible_generators(m, f64::from(sign));
        debug_assert_eq!(irr[0].nrows(), d);
        for (g, piece) in gens.iter_mut().zip(&irr) {
            g.view_mut((block * d, block * d), (d, d)).copy_from(piece);
        }
    }
    CliffordRepresentation::new(gens)
}

/// Structure of the Lie algebra generated by a family of skew matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub lie_dimension: usize,
    pub closed_under_bracket: bool,
    /// For three generators: `Some(±1)` when `J_1J_2J_3 = ±I`.
    pub sigma_scalar: Option<i8>,
}

fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

fn span_rank(vectors: &[DVector<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = DMatrix::from_columns(vectors);
    cols.svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

/// Lie-algebra report for arbitrary skew matrices (e.g. pointwise `J` maps).
pub fn analyze_matrices(generators: &[DMatrix<f64>], tol: f64) -> AlgebraReport {
    let n = generators.first().map_or(0, |g| g.nrows());
    let gen_vecs: Vec<DVector<f64>> = generators.iter().map(flatten).collect();
    let base_rank = span_rank(&gen_vecs, tol);

    // Iterated bracket closure, keeping a linearly independent basis.
    let mut basis: Vec<DMatrix<f64>> = Vec::new();
    let mut basis_vecs: Vec<DVector<f64>> = Vec::new();
    let push = |m: DMatrix<f64>, basis: &mut Vec<DMatrix<f64>>, vecs: &mut Vec<DVector<f64>>| -> bool {
        let v = flatten(&m);
        let before = vecs.len();
        vecs.push(v);
        if span_rank(vecs, tol) > before {
            basis.push(m);
            true
        } else {
            vecs.pop();
            false
        }
    };
    for g in generators {
        push(g.clone(), &mut basis, &mut basis_vecs);
    }
    let mut frontier = 0;
    while frontier < basis.len() {
        let end = basis.len();
        for i in frontier..end {
            for j in 0..end {
                let c = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                if c.amax() > tol {
                    push(c, &mut basis, &mut basis_vecs);
                }
            }
        }
        frontier = end;
    }
    let lie_dimension = basis.len();

    let sigma_scalar = if generators.len() == 3 && n > 0 {
        let sigma = &generators[0] * &generators[1] * &generators[2];
        let id = DMatrix::<f64>::identity(n, n);
        if (&sigma - &id).amax() <= tol {
            Some(1)
        } else if (&sigma + &id).amax() <= tol {
            Some(-1)
        } else {
            None
        }
    } else {
        None
    };

    AlgebraReport { lie_dimension, closed_under_bracket: lie_dimension == base_rank, sigma_scalar }
}

pub fn analyze_j_algebra(rep: &CliffordRepresentation) -> AlgebraReport {
    analyze_matrices(rep.generators(), 1e-9)
}
