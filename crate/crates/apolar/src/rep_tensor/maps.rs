//! Skew-symmetrization and multiplication maps, triple intersections, the
//! complement modules that candidates live in, and the `sl(V)` pieces used
//! for kernel bookkeeping.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::module::{enumerate_borel_fixed, WeightModule};
use super::space::{binomial, FactorSpace, SpaceExpr, TensorSpace, TorusBlock};
use super::tensors::TensorElement;
use crate::exact_linalg::{rank_by_blocks, rat, sparse_from_pairs, Rational, SparseMatrix, SparseVec, Subspace};
use crate::poly::Poly;
use crate::poly_rank::PolyMatrix;

/// Which skew map: `E⊗A → Λ²A⊗B` or `E⊗B → A⊗Λ²B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "210")]
    S210,
    #[serde(rename = "120")]
    S120,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::S210 => "210",
            Side::S120 => "120",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("piece of degree {piece:?} does not sit one step below {target:?}")]
    Grading { piece: [usize; 3], target: [usize; 3] },
    #[error("piece of degree {piece:?} has ambient {got}, expected {want}")]
    Ambient { piece: [usize; 3], got: usize, want: usize },
}

/// Position of `e_lo ∧ e_hi` in the lexicographic basis of `Λ²` of an
/// `n`-dimensional space.
pub fn ext2_index(lo: usize, hi: usize, n: usize) -> usize {
    debug_assert!(lo < hi && hi < n);
    lo * n - lo * (lo + 1) / 2 + (hi - lo - 1)
}

trait Scalar: Clone {
    fn negated(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn vanishes(&self) -> bool;
}

impl Scalar for Rational {
    fn negated(&self) -> Self {
        -self
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Poly {
    fn negated(&self) -> Self {
        self.neg()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

fn collect<T: Scalar>(entries: Vec<(usize, T)>) -> Vec<(usize, T)> {
    let mut acc: std::collections::BTreeMap<usize, T> = std::collections::BTreeMap::new();
    for (c, x) in entries {
        match acc.get_mut(&c) {
            Some(e) => *e = e.plus(&x),
            None => {
                acc.insert(c, x);
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !x.vanishes()).collect()
}

/// Rows `e⊗x_c` (e-major) and the column count of the target.
fn skew_rows<T: Scalar>(na: usize, nb: usize, e: &[Vec<(usize, T)>], side: Side) -> (Vec<Vec<(usize, T)>>, usize) {
    let mut rows = Vec::new();
    match side {
        Side::S210 => {
            for v in e {
                for c in 0..na {
                    let mut row = Vec::new();
                    for (idx, x) in v {
                        let (a, b) = (idx / nb, idx % nb);
                        if a < c {
                            row.push((ext2_index(a, c, na) * nb + b, x.clone()));
                        } else if a > c {
                            row.push((ext2_index(c, a, na) * nb + b, x.negated()));
                        }
                    }
                    rows.push(collect(row));
                }
            }
            (rows, binomial(na, 2) * nb)
        }
        Side::S120 => {
            let pairs = binomial(nb, 2);
            for v in e {
                for c in 0..nb {
                    let mut row = Vec::new();
                    for (idx, x) in v {
                        let (a, b) = (idx / nb, idx % nb);
                        if b < c {
                            row.push((a * pairs + ext2_index(b, c, nb), x.clone()));
                        } else if b > c {
                            row.push((a * pairs + ext2_index(c, b, nb), x.negated()));
                        }
                    }
                    rows.push(collect(row));
                }
            }
            (rows, na * pairs)
        }
    }
}

/// Matrix of the skew map on `E⊗A` (210) or `E⊗B` (120); `E ⊂ A⊗B` is
/// given by basis vectors with flat index `a*nb + b`.
pub fn skew_map(na: usize, nb: usize, e: &[SparseVec], side: Side) -> SparseMatrix {
    let (rows, ncols) = skew_rows(na, nb, e, side);
    SparseMatrix::from_rows(ncols, rows).expect("skew columns are in range")
}

/// The skew map of a parametric candidate.
pub fn skew_map_poly(na: usize, nb: usize, e: &[Vec<(usize, Poly)>], side: Side) -> PolyMatrix {
    let (rows, ncols) = skew_rows(na, nb, e, side);
    PolyMatrix::new(ncols, rows)
}

/// Kernel dimension of the skew map; `E` must be linearly independent.
pub fn skew_kernel(na: usize, nb: usize, e: &[SparseVec], side: Side) -> usize {
    let (rows, _) = skew_rows(na, nb, e, side);
    rows.len() - rank_by_blocks(&rows)
}

/// `dim (E₁₁₀⊗C) ∩ (E₁₀₁⊗B) ∩ (E₀₁₁⊗A)` with `E₁₁₀ ⊂ A⊗B` (index
/// `a*nb+b`), `E₁₀₁ ⊂ C⊗A` (`c*na+a`) and `E₀₁₁ ⊂ B⊗C` (`b*nc+c`).
pub fn triple_intersection(dims: [usize; 3], e110: &Subspace, e101: &Subspace, e011: &Subspace) -> usize {
    let rows = triple_constraints(dims, e110, e101, e011);
    e110.dim() * dims[2] - rank_by_blocks(&rows)
}

/// Linear conditions on the coefficients `x_{ik}` of `Σ x_{ik} e_i⊗c_k`.
fn triple_constraints(dims: [usize; 3], e110: &Subspace, e101: &Subspace, e011: &Subspace) -> Vec<SparseVec> {
    let [na, nb, nc] = dims;
    // e_i split by b and by a
    let mut by_b: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); nb];
    let mut by_a: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); na];
    for (i, v) in e110.basis().iter().enumerate() {
        for (idx, x) in v {
            let (a, b) = (idx / nb, idx % nb);
            by_b[b].push((i, a, x.clone()));
            by_a[a].push((i, b, x.clone()));
        }
    }
    let mut rows = Vec::new();
    for phi in e101.annihilator().basis() {
        // φ over C⊗A, grouped by a
        let mut by_a_phi: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); na];
        for (idx, y) in phi {
            by_a_phi[idx % na].push((idx / na, y.clone()));
        }
        for entries in &by_b {
            let row = entries
                .iter()
                .flat_map(|(i, a, x)| by_a_phi[*a].iter().map(move |(k, y)| (i * nc + k, x * y)))
                .collect::<Vec<_>>();
            let row = sparse_from_pairs(row);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    for phi in e011.annihilator().basis() {
        let mut by_b_phi: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nb];
        for (idx, y) in phi {
            by_b_phi[idx / nc].push((idx % nc, y.clone()));
        }
        for entries in &by_a {
            let row = entries
                .iter()
                .flat_map(|(i, b, x)| by_b_phi[*b].iter().map(move |(k, y)| (i * nc + k, x * y)))
                .collect::<Vec<_>>();
            let row = sparse_from_pairs(row);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

/// Whether `T` lies in all three of `E₁₁₀⊗C`, `E₁₀₁⊗B`, `E₀₁₁⊗A`.
pub fn tensor_in_triple(t: &TensorElement, e110: &Subspace, e101: &Subspace, e011: &Subspace) -> bool {
    let [na, nb, nc] = t.dims();
    let mut slices: [HashMap<usize, Vec<(usize, Rational)>>; 3] = Default::default();
    for (k, x) in t.coeffs() {
        let [a, b, c] = *k;
        slices[0].entry(c).or_default().push((a * nb + b, x.clone()));
        slices[1].entry(b).or_default().push((c * na + a, x.clone()));
        slices[2].entry(a).or_default().push((b * nc + c, x.clone()));
    }
    [e110, e101, e011]
        .iter()
        .zip(slices)
        .all(|(e, s)| s.into_values().all(|v| e.contains(&sparse_from_pairs(v))))
}

/// Monomial basis of `S^iA*⊗S^jB*⊗S^kC*`, ordered factor by factor with
/// lexicographic multisets.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    dims: [usize; 3],
    degree: [usize; 3],
    basis: Vec<[Vec<usize>; 3]>,
    index: HashMap<[Vec<usize>; 3], usize>,
}

impl GradedSpace {
    pub fn new(dims: [usize; 3], degree: [usize; 3]) -> Self {
        let parts: Vec<Vec<Vec<usize>>> = (0..3).map(|f| multisets(dims[f], degree[f])).collect();
        let mut basis = Vec::new();
        for x in &parts[0] {
            for y in &parts[1] {
                for z in &parts[2] {
                    basis.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        GradedSpace { dims, degree, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> [usize; 3] {
        self.degree
    }

    pub fn index_of(&self, key: &[Vec<usize>; 3]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn key_of(&self, i: usize) -> &[Vec<usize>; 3] {
        &self.basis[i]
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Matrix of `⊕ F_g ⊗ (factor)* → S^iA*⊗S^jB*⊗S^kC*` over the supplied
/// pieces; each piece is a subspace of its [`GradedSpace`] at degree `g`,
/// where `g` is the target lowered in one factor.
pub fn multiplication_map(dims: [usize; 3], target: [usize; 3], pieces: &[([usize; 3], &Subspace)]) -> Result<SparseMatrix, MapError> {
    let tspace = GradedSpace::new(dims, target);
    let mut rows = Vec::new();
    for (g, f) in pieces {
        let factor = (0..3).find(|&i| {
            let mut up = *g;
            up[i] += 1;
            up == target
        });
        let factor = factor.ok_or(MapError::Grading { piece: *g, target })?;
        let gspace = GradedSpace::new(dims, *g);
        if f.ambient() != gspace.dim() {
            return Err(MapError::Ambient { piece: *g, got: f.ambient(), want: gspace.dim() });
        }
        for v in f.basis() {
            for x in 0..dims[factor] {
                let row = v.iter().map(|(i, c)| {
                    let mut key = gspace.key_of(*i).clone();
                    let pos = key[factor].partition_point(|y| *y <= x);
                    key[factor].insert(pos, x);
                    (tspace.index_of(&key).expect("raised monomial is in the target"), c.clone())
                });
                rows.push(sparse_from_pairs(row));
            }
        }
    }
    Ok(SparseMatrix::from_rows(tspace.dim(), rows).expect("target indices are in range"))
}

/// Moves a vector of `C⊗A` (index `c*na+a`) to `A⊗C` (index `a*nc+c`).
pub fn swap_pair(v: &[(usize, Rational)], first: usize, second: usize) -> SparseVec {
    sparse_from_pairs(v.iter().map(|(i, x)| ((i % second) * first + i / second, x.clone())))
}

/// Basis of `U*⊗sl(V)⊗W ⊂ A⊗B` in the order `(i, X, k)`, with `sl(V)`
/// spanned by `E_ab` (`a ≠ b`) followed by `h_c = E_cc − E_{c+1,c+1}`.
pub fn mamu_complement(u: usize, v: usize, w: usize) -> Vec<SparseVec> {
    let nb = v * w;
    let idx = |i: usize, j: usize, j2: usize, k: usize| (i * v + j) * nb + j2 * w + k;
    let mut out = Vec::new();
    for i in 0..u {
        for x in sl_basis(v) {
            for k in 0..w {
                out.push(sparse_from_pairs(x.iter().map(|((a, b), c)| (idx(i, *a, *b, k), c.clone()))));
            }
        }
    }
    out
}

/// `sl(V)` basis as `(row, col) → coefficient` lists.
pub fn sl_basis(v: usize) -> Vec<Vec<((usize, usize), Rational)>> {
    let mut out = Vec::new();
    for a in 0..v {
        for b in 0..v {
            if a != b {
                out.push(vec![((a, b), Rational::one())]);
            }
        }
    }
    for c in 0..v.saturating_sub(1) {
        out.push(vec![((c, c), Rational::one()), ((c + 1, c + 1), -Rational::one())]);
    }
    out
}

/// The 72-dimensional complement `S²U⊗S²V ⊕ S²U⊗Λ²V ⊕ Λ²U⊗S²V` of
/// `det₃(C*) = Λ²U⊗Λ²V` in `A⊗B`.
pub fn det3_complement() -> Vec<SparseVec> {
    let mut out = det3_block(1, 1);
    out.extend(det3_block(1, -1));
    out.extend(det3_block(-1, 1));
    out
}

fn det3_block(su: i64, sv: i64) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in a..3 {
            if su < 0 && a == b {
                continue;
            }
            for c in 0..3 {
                for d in c..3 {
                    if sv < 0 && c == d {
                        continue;
                    }
                    let mut entries = Vec::new();
                    for (ua, ub, cu) in [(a, b, 1), (b, a, su)] {
                        for (vc, vd, cv) in [(c, d, 1), (d, c, sv)] {
                            entries.push(((ua * 3 + vc) * 9 + ub * 3 + vd, rat(cu * cv)));
                        }
                    }
                    out.push(sparse_from_pairs(entries));
                }
            }
        }
    }
    out
}

/// The involution of `A⊗B` for `u = w` that swaps the roles of `A` and `B`
/// through transposition with index reversal; signs are dropped.
pub fn mamu_transpose(u: usize, v: usize, w: usize, vec: &[(usize, Rational)]) -> SparseVec {
    assert_eq!(u, w, "transpose symmetry needs u = w");
    let nb = v * w;
    sparse_from_pairs(vec.iter().map(|(idx, x)| {
        let (a, b) = (idx / nb, idx % nb);
        let (i, j) = (a / v, a % v);
        let (j2, k) = (b / w, b % w);
        let a2 = (u - 1 - k) * v + (v - 1 - j2);
        let b2 = (v - 1 - j) * w + (u - 1 - i);
        (a2 * nb + b2, x.clone())
    }))
}

/// `V⊗V*` with `E_ab = v_a⊗v^b` at index `a*v+b`.
pub fn gl_space(v: usize) -> TensorSpace {
    TensorSpace::new(
        vec![TorusBlock { name: "V".into(), dim: v }],
        SpaceExpr::tensor(vec![
            SpaceExpr::Factor(FactorSpace::primal("V", 0, v)),
            SpaceExpr::Factor(FactorSpace::dual("V", 0, v)),
        ]),
    )
}

/// `sl(V)` as a module in [`gl_space`], basis as in [`sl_basis`].
pub fn sl_module(v: usize) -> (TensorSpace, WeightModule) {
    let space = gl_space(v);
    let vectors = sl_basis(v)
        .into_iter()
        .map(|x| sparse_from_pairs(x.into_iter().map(|((a, b), c)| (a * v + b, c))))
        .collect();
    let module = WeightModule::new(&space, vectors).expect("sl(V) is a submodule");
    (space, module)
}

/// Borel-fixed subspaces of `sl(V)` of every dimension, parametric cells
/// sampled at small rationals that satisfy their closure equations.
/// Vectors are in [`gl_space`] coordinates.
pub fn inner_catalog(v: usize) -> Vec<Vec<SparseVec>> {
    let (_, module) = sl_module(v);
    let samples = [rat(0), rat(1), rat(-1), rat(2), crate::exact_linalg::frac(1, 2), rat(-2), rat(3)];
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for d in 0..=module.dim() {
        let (fams, _) = enumerate_borel_fixed(&module, d);
        for f in fams {
            let mut points = vec![HashMap::new()];
            for p in &f.params {
                points = points
                    .into_iter()
                    .flat_map(|pt: HashMap<_, _>| {
                        samples.iter().map(move |s| {
                            let mut q = pt.clone();
                            q.insert(*p, s.clone());
                            q
                        })
                    })
                    .collect();
            }
            for pt in points {
                let ok = f.closure.iter().all(|e| e.eval(&pt).map(|x| x.is_zero()).unwrap_or(false));
                if !ok {
                    continue;
                }
                let vs = f.specialize(&module, &pt).expect("all parameters assigned");
                let key = Subspace::span(module.ambient_dim(), vs.clone()).integer_key();
                if seen.insert(key) {
                    out.push(vs);
                }
            }
        }
    }
    out
}

/// `V⊗V⊗V*` coordinates: `v_a⊗v_b⊗v^c` at `(a*v + b)*v + c`.
fn vvv(v: usize, a: usize, b: usize, c: usize) -> usize {
    (a * v + b) * v + c
}

/// The copy of `V` inside `V⊗sl(V)`: at weight `e_i` the vector
/// `Σ_j (v·v_j⊗v_i⊗v^j − v_i⊗v_j⊗v^j)`.
pub fn v_copy(v: usize) -> Subspace {
    let vecs = (0..v)
        .map(|i| {
            sparse_from_pairs((0..v).flat_map(|j| [(vvv(v, j, i, j), rat(v as i64)), (vvv(v, i, j, j), rat(-1))]))
        })
        .collect();
    Subspace::span(v * v * v, vecs)
}

/// Kernel of the contraction `S²V⊗V* → V` (`sym`) or `Λ²V⊗V* → V`,
/// embedded in `V⊗V⊗V*`.
pub fn contraction_kernel(v: usize, sym: bool) -> Subspace {
    let sign = if sym { rat(1) } else { rat(-1) };
    let mut gens = Vec::new();
    for a in 0..v {
        for b in a..v {
            if !sym && a == b {
                continue;
            }
            for c in 0..v {
                gens.push((a, b, c));
            }
        }
    }
    // contraction of (v_a v_b)⊗v^c is δ_bc v_a ± δ_ac v_b
    let rows: Vec<SparseVec> = gens
        .iter()
        .map(|&(a, b, c)| {
            let mut out = Vec::new();
            if b == c {
                out.push((a, rat(1)));
            }
            if a == c {
                out.push((b, sign.clone()));
            }
            sparse_from_pairs(out)
        })
        .collect();
    let m = SparseMatrix::from_rows(v, rows).expect("contraction lands in V").transpose();
    let ker = m.kernel_basis();
    let embedded = ker
        .basis()
        .iter()
        .map(|k| {
            sparse_from_pairs(k.iter().flat_map(|(g, x)| {
                let (a, b, c) = gens[*g];
                [(vvv(v, a, b, c), x.clone()), (vvv(v, b, a, c), &sign * x)]
            }))
        })
        .collect();
    Subspace::span(v * v * v, embedded)
}

/// `V⊗X ⊂ V⊗V⊗V*` for `X` given in [`gl_space`] coordinates.
pub fn v_tensor(v: usize, x: &[SparseVec]) -> Subspace {
    let vecs = (0..v).flat_map(|a| x.iter().map(move |e| e.iter().map(|(i, c)| (a * v * v + i, c.clone())).collect())).collect();
    Subspace::span(v * v * v, vecs)
}

/// `(d₂, d_ω, d_V)`: dimensions of `V⊗X` meeting `V_{2ω₁+ω_{v−1}}⊕V`,
/// `V_{ω₂+ω_{v−1}}⊕V` and the copy of `V`.
pub fn isotypic_meets(v: usize, x: &[SparseVec]) -> (usize, usize, usize) {
    let vx = v_tensor(v, x);
    let vc = v_copy(v);
    let meet = |s: &Subspace| vx.intersect(s).expect("same ambient").dim();
    let two = contraction_kernel(v, true).sum(&vc).expect("same ambient");
    let omega = contraction_kernel(v, false).sum(&vc).expect("same ambient");
    (meet(&two), meet(&omega), meet(&vc))
}

/// Whether every weight-`e₁` monomial of `V⊗sl(V)` lies in `V⊗X`, and
/// whether the copy of `V` meets `V⊗X`.
pub fn v_copy_check(v: usize, x: &[SparseVec]) -> (bool, bool) {
    let vx = v_tensor(v, x);
    let xs = Subspace::span(v * v, x.to_vec());
    let cartan = (0..v.saturating_sub(1)).all(|c| xs.contains(&[(c * v + c, rat(1)), ((c + 1) * v + c + 1, rat(-1))]));
    let roots = (1..v).all(|c| xs.contains(&[(c, rat(1))]));
    let meets = vx.intersect(&v_copy(v)).expect("same ambient").dim() > 0;
    (cartan && roots, meets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_tensor::tensors::{det3_pair_space, mamu_pair_space, mamu_tensor, Factor};

    #[test]
    fn ext2_index_is_lexicographic() {
        let n = 5;
        let mut k = 0;
        for lo in 0..n {
            for hi in lo + 1..n {
                assert_eq!(ext2_index(lo, hi, n), k);
                k += 1;
            }
        }
    }

    #[test]
    fn single_monomial_kernel() {
        let e = vec![vec![(0, rat(1))]];
        let m = skew_map(2, 2, &e, Side::S210);
        assert_eq!(m.nrows() - m.rank(), 1);
        assert_eq!(skew_kernel(2, 2, &e, Side::S120), 1);
    }

    #[test]
    fn complements_are_submodules() {
        let s = mamu_pair_space(2, 3, 2);
        let c = mamu_complement(2, 3, 2);
        assert_eq!(c.len(), 2 * 8 * 2);
        assert!(WeightModule::new(&s, c).is_ok());
        let d = det3_complement();
        assert_eq!(d.len(), 72);
        assert!(WeightModule::new(&det3_pair_space(), d.clone()).is_ok());
        let tc = crate::rep_tensor::det3_tensor().flattening(Factor::C);
        let all = tc.sum(&Subspace::span(81, d)).unwrap();
        assert_eq!(all.dim(), 81);
    }

    #[test]
    fn mamu_flattening_plus_complement_is_everything() {
        let (u, v, w) = (2, 3, 2);
        let tc = mamu_tensor(u, v, w).flattening(Factor::C);
        let all = tc.sum(&Subspace::span(u * v * v * w, mamu_complement(u, v, w))).unwrap();
        assert_eq!(all.dim(), u * v * v * w);
    }

    #[test]
    fn graded_space_dims() {
        assert_eq!(GradedSpace::new([9, 9, 9], [2, 1, 0]).dim(), 405);
        assert_eq!(GradedSpace::new([4, 4, 4], [1, 1, 1]).dim(), 64);
    }

    #[test]
    fn full_piece_is_surjective() {
        let full = Subspace::full(16);
        let m = multiplication_map([4, 4, 4], [2, 1, 0], &[([1, 1, 0], &full)]).unwrap();
        assert_eq!(m.rank(), 40);
        assert!(multiplication_map([4, 4, 4], [2, 1, 0], &[([0, 1, 1], &full)]).is_err());
    }

    #[test]
    fn isotypic_dimensions() {
        for v in 2..=4 {
            assert_eq!(contraction_kernel(v, true).dim(), (v * v * v + v * v) / 2 - v);
            assert_eq!(contraction_kernel(v, false).dim(), (v * v * v - v * v) / 2 - v);
            assert_eq!(v_copy(v).dim(), v);
        }
    }

    #[test]
    fn catalog_sizes() {
        let c2 = inner_catalog(2);
        assert_eq!(c2.len(), 4);
        let c3 = inner_catalog(3);
        assert!(c3.iter().any(|x| x.len() == 4));
    }
}
