//! Borel-stable submodules given by weight bases, and enumeration of their
//! Borel-fixed subspaces as Schubert cells with closure equations.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use super::space::{RaisingOp, TensorSpace};
use crate::exact_linalg::{rref, sparse_from_pairs, Rational, SparseVec};
use crate::poly::{Poly, Var, VarNames};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("basis vector {0} is not a weight vector")]
    NotWeightVector(usize),
    #[error("basis vectors of weight {0:?} are linearly dependent")]
    Dependent(Vec<i32>),
    #[error("raising basis vector {index} leaves the module")]
    NotStable { index: usize },
}

/// Solves `v = Σ c_i b_i` inside one weight space.
#[derive(Clone, Debug)]
struct WeightSolver {
    /// Echelon rows of `[B | I]`: ambient part, then combination part.
    rows: Vec<(SparseVec, SparseVec)>,
}

impl WeightSolver {
    fn new(vectors: &[&SparseVec], ambient: usize) -> Option<Self> {
        let aug: Vec<SparseVec> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut row = (*v).clone();
                row.push((ambient + k, Rational::one()));
                row
            })
            .collect();
        let (reduced, pivots) = rref(&aug);
        if pivots.iter().any(|p| *p >= ambient) {
            return None;
        }
        let rows = reduced
            .into_iter()
            .map(|r| {
                let (amb, comb): (SparseVec, SparseVec) = r.into_iter().partition(|(c, _)| *c < ambient);
                (amb, comb.into_iter().map(|(c, x)| (c - ambient, x)).collect())
            })
            .collect();
        Some(WeightSolver { rows })
    }

    fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut rest: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut comb: Vec<(usize, Rational)> = Vec::new();
        for (amb, c) in &self.rows {
            let pivot = amb[0].0;
            let Some(x) = rest.get(&pivot).cloned() else { continue };
            for (i, a) in amb {
                let e = rest.entry(*i).or_insert_with(Rational::zero);
                *e -= &x * a;
                if e.is_zero() {
                    rest.remove(i);
                }
            }
            comb.extend(c.iter().map(|(k, y)| (*k, &x * y)));
        }
        rest.is_empty().then(|| sparse_from_pairs(comb))
    }
}

/// A submodule of a [`TensorSpace`] spanned by weight vectors and stable
/// under the raising operators.
#[derive(Clone, Debug)]
pub struct WeightModule {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
    weights: Vec<Vec<i32>>,
    heights: Vec<i64>,
    spaces: BTreeMap<Vec<i32>, Vec<usize>>,
    /// Per operator and basis element: image in module coordinates.
    ops: Vec<Vec<SparseVec>>,
}

impl WeightModule {
    pub fn new(space: &TensorSpace, vectors: Vec<SparseVec>) -> Result<Self, ModuleError> {
        let mut weights = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            weights.push(space.weight_of_vector(v).ok_or(ModuleError::NotWeightVector(i))?);
        }
        let mut spaces: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            spaces.entry(w.clone()).or_default().push(i);
        }
        let mut solvers: HashMap<Vec<i32>, (WeightSolver, &Vec<usize>)> = HashMap::new();
        for (w, idx) in &spaces {
            let vs: Vec<&SparseVec> = idx.iter().map(|i| &vectors[*i]).collect();
            let s = WeightSolver::new(&vs, space.dim()).ok_or_else(|| ModuleError::Dependent(w.clone()))?;
            solvers.insert(w.clone(), (s, idx));
        }
        let mut ops = Vec::new();
        for op in space.raising_ops() {
            let mut images = Vec::with_capacity(vectors.len());
            for (i, v) in vectors.iter().enumerate() {
                let img = space.apply(op, v);
                if img.is_empty() {
                    images.push(Vec::new());
                    continue;
                }
                let w = space.weight_of_vector(&img).ok_or(ModuleError::NotStable { index: i })?;
                let (solver, idx) = solvers.get(&w).ok_or(ModuleError::NotStable { index: i })?;
                let local = solver.solve(&img).ok_or(ModuleError::NotStable { index: i })?;
                images.push(local.into_iter().map(|(k, c)| (idx[k], c)).collect());
            }
            ops.push(images);
        }
        let heights = weights.iter().map(|w| space.height(w)).collect();
        Ok(WeightModule { ambient_dim: space.dim(), vectors, weights, heights, spaces, ops })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn weight(&self, i: usize) -> &[i32] {
        &self.weights[i]
    }

    pub fn weight_spaces(&self) -> &BTreeMap<Vec<i32>, Vec<usize>> {
        &self.spaces
    }

    /// Weight multiplicities, highest first.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for idx in self.spaces.values() {
            *out.entry(idx.len()).or_insert(0) += 1;
        }
        out
    }

    fn ordered_weights(&self) -> Vec<Vec<i32>> {
        // ties keep the order of first appearance in the basis
        let mut ws: Vec<(i64, usize, Vec<i32>)> =
            self.spaces.iter().map(|(w, idx)| (self.heights[idx[0]], idx[0], w.clone())).collect();
        ws.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        ws.into_iter().map(|(_, _, w)| w).collect()
    }

    /// Converts module coordinates to the ambient space.
    pub fn to_ambient(&self, coords: &[(usize, Rational)]) -> SparseVec {
        sparse_from_pairs(coords.iter().flat_map(|(i, c)| self.vectors[*i].iter().map(move |(j, x)| (*j, c * x))))
    }

    fn to_ambient_poly(&self, coords: &[(usize, Poly)]) -> Vec<(usize, Poly)> {
        let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
        for (i, c) in coords {
            for (j, x) in &self.vectors[*i] {
                let e = acc.entry(*j).or_default();
                *e = e.add(&c.scale(x));
            }
        }
        acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Raising operator count.
    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    /// `op` applied to a vector in module coordinates.
    pub fn apply(&self, op: usize, v: &[(usize, Rational)]) -> SparseVec {
        sparse_from_pairs(v.iter().flat_map(|(i, c)| self.ops[op][*i].iter().map(move |(j, x)| (*j, c * x))))
    }
}

/// A cell of Borel-fixed subspaces: per weight, echelon rows whose free
/// entries are parameters, subject to closure equations.
#[derive(Clone, Debug, Serialize)]
pub struct BorelFixedFamily {
    /// Weight -> (pivot positions, rows over the weight space basis).
    #[serde(skip)]
    pub cells: BTreeMap<Vec<i32>, (Vec<usize>, Vec<Vec<Poly>>)>,
    #[serde(skip)]
    pub params: Vec<Var>,
    #[serde(skip)]
    pub closure: Vec<Poly>,
    pub dims: BTreeMap<String, usize>,
    pub dim: usize,
}

impl BorelFixedFamily {
    pub fn is_discrete(&self) -> bool {
        self.params.is_empty()
    }

    /// Basis vectors in module coordinates.
    pub fn module_vectors(&self, module: &WeightModule) -> Vec<Vec<(usize, Poly)>> {
        let mut out = Vec::new();
        for (w, (_, rows)) in &self.cells {
            let idx = &module.spaces[w];
            for row in rows {
                out.push(row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (idx[p], c.clone())).collect());
            }
        }
        out
    }

    /// Basis vectors in ambient coordinates with polynomial entries.
    pub fn ambient_vectors(&self, module: &WeightModule) -> Vec<Vec<(usize, Poly)>> {
        self.module_vectors(module).iter().map(|v| module.to_ambient_poly(v)).collect()
    }

    /// Ambient basis at a parameter value.
    pub fn specialize(&self, module: &WeightModule, values: &HashMap<Var, Rational>) -> Option<Vec<SparseVec>> {
        let mut out = Vec::new();
        for v in self.module_vectors(module) {
            let mut coords = Vec::with_capacity(v.len());
            for (i, p) in v {
                coords.push((i, p.eval(values).ok()?));
            }
            out.push(module.to_ambient(&coords));
        }
        Some(out)
    }

    /// Discrete families only.
    pub fn vectors(&self, module: &WeightModule) -> Vec<SparseVec> {
        self.specialize(module, &HashMap::new()).expect("discrete family has no parameters")
    }
}

struct Enumerator<'a> {
    module: &'a WeightModule,
    order: Vec<Vec<i32>>,
    names: VarNames,
    out: Vec<BorelFixedFamily>,
}

#[derive(Clone)]
struct Partial {
    cells: BTreeMap<Vec<i32>, (Vec<usize>, Vec<Vec<Poly>>)>,
    params: Vec<Var>,
    eqs: Vec<Poly>,
    dim: usize,
}

/// All Borel-fixed `d`-dimensional subspaces of `module`, cell by cell.
/// Parameter names are `p1, p2, …` in the returned [`VarNames`].
pub fn enumerate_borel_fixed(module: &WeightModule, d: usize) -> (Vec<BorelFixedFamily>, VarNames) {
    let mut e = Enumerator { module, order: module.ordered_weights(), names: VarNames::new(), out: Vec::new() };
    let start = Partial { cells: BTreeMap::new(), params: Vec::new(), eqs: Vec::new(), dim: 0 };
    e.recurse(0, start, d);
    (e.out, e.names)
}

impl Enumerator<'_> {
    fn recurse(&mut self, i: usize, fam: Partial, remaining: usize) {
        if remaining == 0 {
            let dims = fam.cells.iter().map(|(w, (p, _))| (format!("{w:?}"), p.len())).collect();
            self.out.push(BorelFixedFamily { cells: fam.cells, params: fam.params, closure: fam.eqs, dims, dim: fam.dim });
            return;
        }
        if i == self.order.len() {
            return;
        }
        let capacity: usize = self.order[i..].iter().map(|w| self.module.spaces[w].len()).sum();
        if capacity < remaining {
            return;
        }
        let wt = self.order[i].clone();
        let m = self.module.spaces[&wt].len();
        for k in (0..=m.min(remaining)).rev() {
            for piv in combinations(m, k) {
                let mut rows = Vec::with_capacity(k);
                let mut new_params = Vec::new();
                for &p in &piv {
                    let mut row = vec![Poly::zero(); m];
                    row[p] = Poly::int(1);
                    for (c, slot) in row.iter_mut().enumerate().skip(p + 1) {
                        if !piv.contains(&c) {
                            let v = self.names.fresh(format!("p{}", self.names.len() + 1));
                            new_params.push(v);
                            *slot = Poly::var(v);
                        }
                    }
                    rows.push(row);
                }
                let mut eqs = fam.eqs.clone();
                for row in &rows {
                    eqs.extend(self.closure_equations(&fam, &wt, row));
                }
                let mut next = fam.clone();
                if k > 0 {
                    next.cells.insert(wt.clone(), (piv.clone(), rows));
                }
                next.params.extend(new_params);
                next.eqs = eqs;
                next.dim += k;
                if let Some(next) = simplify(next) {
                    self.recurse(i + 1, next, remaining - k);
                }
            }
        }
    }

    /// Components of each raised row outside the chosen higher cell.
    fn closure_equations(&self, fam: &Partial, wt: &[i32], row: &[Poly]) -> Vec<Poly> {
        let idx = &self.module.spaces[wt];
        let mut eqs = Vec::new();
        for op in 0..self.module.num_ops() {
            let mut img: BTreeMap<usize, Poly> = BTreeMap::new();
            for (pos, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, x) in &self.module.ops[op][idx[pos]] {
                    let e = img.entry(*j).or_default();
                    *e = e.add(&c.scale(x));
                }
            }
            img.retain(|_, p| !p.is_zero());
            let Some(&first) = img.keys().next() else { continue };
            let tw = &self.module.weights[first];
            let tidx = &self.module.spaces[tw];
            let mut vec: Vec<Poly> = tidx.iter().map(|j| img.get(j).cloned().unwrap_or_default()).collect();
            if let Some((pivots, trows)) = fam.cells.get(tw) {
                for (p, r) in pivots.iter().zip(trows) {
                    let c = vec[*p].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, x) in vec.iter_mut().zip(r) {
                        *slot = slot.sub(&c.mul(x));
                    }
                }
            }
            eqs.extend(vec.into_iter().filter(|p| !p.is_zero()));
        }
        eqs
    }
}

/// Solves linear equations with constant coefficients; `None` if inconsistent.
fn simplify(mut fam: Partial) -> Option<Partial> {
    loop {
        let mut eqs = Vec::with_capacity(fam.eqs.len());
        for e in fam.eqs.drain(..) {
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                return None;
            }
            if !eqs.contains(&e) {
                eqs.push(e);
            }
        }
        fam.eqs = eqs;
        let found = fam.eqs.iter().find_map(|e| e.vars().into_iter().find_map(|v| e.solve_linear(v).map(|s| (v, s))));
        let Some((v, sol)) = found else { return Some(fam) };
        for (_, rows) in fam.cells.values_mut() {
            for row in rows.iter_mut() {
                for c in row.iter_mut() {
                    *c = c.substitute(v, &sol);
                }
            }
        }
        fam.eqs = fam.eqs.iter().map(|e| e.substitute(v, &sol)).collect();
        fam.params.retain(|p| *p != v);
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// Checks stability of a span of ambient vectors under every raising op.
pub fn is_raising_stable(space: &TensorSpace, vectors: &[SparseVec]) -> bool {
    let base = crate::exact_linalg::Subspace::span(space.dim(), vectors.to_vec());
    space.raising_ops().into_iter().all(|op: RaisingOp| vectors.iter().all(|v| base.contains(&space.apply(op, v))))
}

#[cfg(test)]
mod tests {
    use super::super::space::{FactorSpace, SpaceExpr, TorusBlock};
    use super::*;
    use crate::exact_linalg::rat;

    fn u_tensor_u(n: usize) -> TensorSpace {
        let u = SpaceExpr::Factor(FactorSpace::primal("U", 0, n));
        TensorSpace::new(vec![TorusBlock { name: "U".into(), dim: n }], SpaceExpr::tensor(vec![u.clone(), u]))
    }

    #[test]
    fn planes_in_u_tensor_u() {
        let s = u_tensor_u(3);
        let module = WeightModule::new(&s, (0..9).map(|i| vec![(i, rat(1))]).collect()).unwrap();
        let (fams, _) = enumerate_borel_fixed(&module, 2);
        // the P^1 of planes through u1⊗u1 splits into a one-parameter cell
        // and a point; the wedge plane is isolated
        assert_eq!(fams.len(), 3);
        let params: Vec<usize> = fams.iter().map(|f| f.params.len()).collect();
        assert_eq!(params.iter().filter(|p| **p == 1).count(), 1);
        let u11 = s.index_of(&[0, 0]).unwrap();
        let through_u11 = fams.iter().filter(|f| f.module_vectors(&module).iter().any(|v| v == &vec![(u11, Poly::int(1))])).count();
        assert_eq!(through_u11, 2);
        let wedge = fams.iter().find(|f| f.is_discrete() && !f.vectors(&module).iter().any(|v| v == &vec![(u11, rat(1))])).unwrap();
        let vs = wedge.vectors(&module);
        let (u12, u21) = (s.index_of(&[0, 1]).unwrap(), s.index_of(&[1, 0]).unwrap());
        let (u13, u31) = (s.index_of(&[0, 2]).unwrap(), s.index_of(&[2, 0]).unwrap());
        let span = crate::exact_linalg::Subspace::span(9, vs.clone());
        assert!(span.contains(&[(u12, rat(1)), (u21, rat(-1))]));
        assert!(span.contains(&[(u13, rat(1)), (u31, rat(-1))]));
        for f in &fams {
            let mut vals = HashMap::new();
            for p in &f.params {
                vals.insert(*p, rat(3));
            }
            assert!(is_raising_stable(&s, &f.specialize(&module, &vals).unwrap()));
        }
    }

    #[test]
    fn unstable_span_is_rejected() {
        let s = u_tensor_u(2);
        let u22 = s.index_of(&[1, 1]).unwrap();
        assert_eq!(WeightModule::new(&s, vec![vec![(u22, rat(1))]]).unwrap_err(), ModuleError::NotStable { index: 0 });
    }
}
