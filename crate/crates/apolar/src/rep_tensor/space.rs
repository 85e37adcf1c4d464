//! Labeled monomial bases of tensor, symmetric and exterior products, with
//! torus weights and the derivation action of raising operators.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{sparse_from_pairs, Rational, SparseMatrix, SparseVec};

/// A factor of a torus block, primal or dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorSpace {
    pub name: String,
    /// Index of the `GL` block whose torus acts on this factor.
    pub group: usize,
    pub dim: usize,
    pub dual: bool,
}

impl FactorSpace {
    pub fn primal(name: &str, group: usize, dim: usize) -> Self {
        assert!(dim >= 1, "factor dimension must be positive");
        FactorSpace { name: name.to_string(), group, dim, dual: false }
    }

    pub fn dual(name: &str, group: usize, dim: usize) -> Self {
        assert!(dim >= 1, "factor dimension must be positive");
        FactorSpace { name: name.to_string(), group, dim, dual: true }
    }

    /// `e_j` has weight `+ε_j`, `e^j` has `-ε_j`; index 0 is `e_1`.
    fn weight_sign(&self) -> i32 {
        if self.dual {
            -1
        } else {
            1
        }
    }

    fn label(&self, j: usize) -> String {
        let letter = self.name.to_lowercase();
        if self.dual {
            format!("{}^{}", letter, j + 1)
        } else {
            format!("{}_{}", letter, j + 1)
        }
    }

    /// The raising operator `E_p` (`e_{p+1} -> e_p`) on this factor; on a
    /// dual factor it acts by `e^p -> -e^{p+1}`.
    fn raise(&self, p: usize, j: usize) -> Option<(usize, i64)> {
        if self.dual {
            (j == p).then_some((p + 1, -1))
        } else {
            (j == p + 1).then_some((p, 1))
        }
    }
}

/// Shape of a space, built from factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceExpr {
    Factor(FactorSpace),
    Tensor(Vec<SpaceExpr>),
    Sym(Box<SpaceExpr>, usize),
    Ext(Box<SpaceExpr>, usize),
}

impl SpaceExpr {
    pub fn tensor(parts: Vec<SpaceExpr>) -> Self {
        SpaceExpr::Tensor(parts)
    }

    pub fn sym(inner: SpaceExpr, k: usize) -> Self {
        SpaceExpr::Sym(Box::new(inner), k)
    }

    pub fn ext(inner: SpaceExpr, k: usize) -> Self {
        SpaceExpr::Ext(Box::new(inner), k)
    }

    /// Dimension from the usual formulas, without enumerating.
    pub fn dim_formula(&self) -> usize {
        match self {
            SpaceExpr::Factor(f) => f.dim,
            SpaceExpr::Tensor(parts) => parts.iter().map(SpaceExpr::dim_formula).product(),
            SpaceExpr::Sym(inner, k) => binomial(inner.dim_formula() + k - 1, *k),
            SpaceExpr::Ext(inner, k) => binomial(inner.dim_formula(), *k),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// An elementary raising operator `E_p` of torus block `group`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaisingOp {
    pub group: usize,
    pub p: usize,
}

#[derive(Clone, Debug)]
struct Node {
    expr: SpaceExpr,
    children: Vec<Node>,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    weights: Vec<Vec<i32>>,
}

impl Node {
    fn weight_of(&self, i: usize, rank: usize) -> Vec<i32> {
        let key = &self.basis[i];
        match &self.expr {
            SpaceExpr::Factor(_) => unreachable!("factor weights are set at construction"),
            SpaceExpr::Tensor(_) => {
                let mut w = vec![0; rank];
                for (ch, &j) in self.children.iter().zip(key) {
                    for (a, b) in w.iter_mut().zip(&ch.weights[j]) {
                        *a += b;
                    }
                }
                w
            }
            SpaceExpr::Sym(..) | SpaceExpr::Ext(..) => {
                let mut w = vec![0; rank];
                for &j in key {
                    for (a, b) in w.iter_mut().zip(&self.children[0].weights[j]) {
                        *a += b;
                    }
                }
                w
            }
        }
    }

    fn label(&self, i: usize) -> String {
        let key = &self.basis[i];
        match &self.expr {
            SpaceExpr::Factor(f) => f.label(key[0]),
            SpaceExpr::Tensor(_) => {
                let parts: Vec<String> = self.children.iter().zip(key).map(|(c, &j)| c.label(j)).collect();
                parts.join("⊗")
            }
            SpaceExpr::Sym(..) => {
                let parts: Vec<String> = key.iter().map(|&j| self.children[0].label(j)).collect();
                parts.join("·")
            }
            SpaceExpr::Ext(..) => {
                let parts: Vec<String> = key.iter().map(|&j| self.children[0].label(j)).collect();
                parts.join("∧")
            }
        }
    }

    /// Image of basis element `i` under `op`, as `(index, coefficient)` pairs.
    fn raise(&self, op: RaisingOp, i: usize) -> Vec<(usize, i64)> {
        let key = &self.basis[i];
        match &self.expr {
            SpaceExpr::Factor(f) => {
                if f.group != op.group {
                    return Vec::new();
                }
                f.raise(op.p, key[0]).map(|(j, c)| vec![(j, c)]).unwrap_or_default()
            }
            SpaceExpr::Tensor(_) => {
                let mut out = Vec::new();
                for (slot, ch) in self.children.iter().enumerate() {
                    for (j, c) in ch.raise(op, key[slot]) {
                        let mut k = key.clone();
                        k[slot] = j;
                        out.push((self.index[&k], c));
                    }
                }
                out
            }
            SpaceExpr::Sym(..) => {
                let mut out = Vec::new();
                for slot in 0..key.len() {
                    for (j, c) in self.children[0].raise(op, key[slot]) {
                        let mut k = key.clone();
                        k[slot] = j;
                        k.sort_unstable();
                        out.push((self.index[&k], c));
                    }
                }
                out
            }
            SpaceExpr::Ext(..) => {
                let mut out = Vec::new();
                for slot in 0..key.len() {
                    for (j, c) in self.children[0].raise(op, key[slot]) {
                        let mut k = key.clone();
                        k[slot] = j;
                        if let Some(sign) = sort_with_sign(&mut k) {
                            out.push((self.index[&k], c * sign));
                        }
                    }
                }
                out
            }
        }
    }
}

/// Sorts in place; returns the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(k: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..k.len() {
        let mut j = i;
        while j > 0 && k[j - 1] > k[j] {
            k.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    k.windows(2).all(|w| w[0] != w[1]).then_some(sign)
}

fn multisets(n: usize, k: usize, strict: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, strict: bool, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, strict, if strict { i + 1 } else { i }, cur, out);
            cur.pop();
        }
    }
    rec(n, k, strict, 0, &mut cur, &mut out);
    out
}

/// A torus block: a `GL` factor acting on some of the factor spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusBlock {
    pub name: String,
    pub dim: usize,
}

/// A space with an enumerated monomial basis and a weight for every element.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    blocks: Vec<TorusBlock>,
    offsets: Vec<usize>,
    root: Node,
}

impl TensorSpace {
    pub fn new(blocks: Vec<TorusBlock>, expr: SpaceExpr) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for b in &blocks {
            offsets.push(acc);
            acc += b.dim;
        }
        let root = build_with_factor_weights(&expr, &offsets, acc);
        TensorSpace { blocks, offsets, root }
    }

    pub fn dim(&self) -> usize {
        self.root.basis.len()
    }

    pub fn expr(&self) -> &SpaceExpr {
        &self.root.expr
    }

    pub fn blocks(&self) -> &[TorusBlock] {
        &self.blocks
    }

    pub fn weight(&self, i: usize) -> &[i32] {
        &self.root.weights[i]
    }

    pub fn weights(&self) -> &[Vec<i32>] {
        &self.root.weights
    }

    pub fn label(&self, i: usize) -> String {
        self.root.label(i)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    /// Index of the basis element with the given child indices.
    pub fn index_of(&self, key: &[usize]) -> Option<usize> {
        self.root.index.get(key).copied()
    }

    pub fn key_of(&self, i: usize) -> &[usize] {
        &self.root.basis[i]
    }

    /// Elementary raising operators of every block.
    pub fn raising_ops(&self) -> Vec<RaisingOp> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(g, b)| (0..b.dim.saturating_sub(1)).map(move |p| RaisingOp { group: g, p }))
            .collect()
    }

    /// Height `Σ (m-1-i) w_i` summed over blocks; raising adds one.
    pub fn height(&self, w: &[i32]) -> i64 {
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(b, off)| (0..b.dim).map(|i| (b.dim - 1 - i) as i64 * w[off + i] as i64).sum::<i64>())
            .sum()
    }

    /// Simple root of an operator, as a weight shift.
    pub fn root_of(&self, op: RaisingOp) -> Vec<i32> {
        let mut w = vec![0; self.weights_len()];
        w[self.offsets[op.group] + op.p] += 1;
        w[self.offsets[op.group] + op.p + 1] -= 1;
        w
    }

    pub fn weights_len(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// Matrix of `op` acting on row vectors: row `i` is the image of basis `i`.
    pub fn raising_action(&self, op: RaisingOp) -> SparseMatrix {
        let rows = (0..self.dim())
            .map(|i| self.root.raise(op, i).into_iter().map(|(j, c)| (j, Rational::from_integer(c.into()))).collect())
            .collect();
        SparseMatrix::from_rows(self.dim(), rows).expect("indices come from the basis")
    }

    pub fn apply(&self, op: RaisingOp, v: &[(usize, Rational)]) -> SparseVec {
        sparse_from_pairs(v.iter().flat_map(|(i, c)| {
            self.root.raise(op, *i).into_iter().map(move |(j, d)| (j, c * Rational::from_integer(d.into())))
        }))
    }

    /// Weight of a weight vector, `None` if the support mixes weights.
    pub fn weight_of_vector(&self, v: &[(usize, Rational)]) -> Option<Vec<i32>> {
        let mut it = v.iter().filter(|(_, c)| !c.is_zero()).map(|(i, _)| self.weight(*i));
        let first = it.next()?.to_vec();
        it.all(|w| w == first.as_slice()).then_some(first)
    }
}

fn build_with_factor_weights(expr: &SpaceExpr, offsets: &[usize], rank: usize) -> Node {
    match expr {
        SpaceExpr::Factor(f) => {
            let basis: Vec<Vec<usize>> = (0..f.dim).map(|j| vec![j]).collect();
            let weights = (0..f.dim)
                .map(|j| {
                    let mut w = vec![0; rank];
                    w[offsets[f.group] + j] = f.weight_sign();
                    w
                })
                .collect();
            let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
            Node { expr: expr.clone(), children: Vec::new(), basis, index, weights }
        }
        SpaceExpr::Tensor(parts) => {
            let children: Vec<Node> = parts.iter().map(|p| build_with_factor_weights(p, offsets, rank)).collect();
            finish(expr, children, rank)
        }
        SpaceExpr::Sym(inner, _) | SpaceExpr::Ext(inner, _) => {
            let ch = build_with_factor_weights(inner, offsets, rank);
            finish(expr, vec![ch], rank)
        }
    }
}

fn finish(expr: &SpaceExpr, children: Vec<Node>, rank: usize) -> Node {
    let basis = match expr {
        SpaceExpr::Tensor(_) => {
            let mut basis = vec![Vec::new()];
            for ch in &children {
                basis = basis
                    .into_iter()
                    .flat_map(|pre: Vec<usize>| {
                        (0..ch.basis.len()).map(move |i| {
                            let mut v = pre.clone();
                            v.push(i);
                            v
                        })
                    })
                    .collect();
            }
            basis
        }
        SpaceExpr::Sym(_, k) => multisets(children[0].basis.len(), *k, false),
        SpaceExpr::Ext(_, k) => multisets(children[0].basis.len(), *k, true),
        SpaceExpr::Factor(_) => unreachable!("factors are built directly"),
    };
    let mut node = Node { expr: expr.clone(), children, basis, index: HashMap::new(), weights: Vec::new() };
    node.index = node.basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    node.weights = (0..node.basis.len()).map(|i| node.weight_of(i, rank)).collect();
    node
}

/// `v` as a sparse vector with unit coefficient.
pub fn unit(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(dims: &[(&str, usize)]) -> Vec<TorusBlock> {
        dims.iter().map(|(n, d)| TorusBlock { name: n.to_string(), dim: *d }).collect()
    }

    #[test]
    fn dimensions_match_formulas() {
        let u = SpaceExpr::Factor(FactorSpace::primal("U", 0, 4));
        for expr in [
            SpaceExpr::sym(u.clone(), 3),
            SpaceExpr::ext(u.clone(), 2),
            SpaceExpr::tensor(vec![u.clone(), SpaceExpr::ext(u.clone(), 3)]),
            SpaceExpr::sym(SpaceExpr::tensor(vec![u.clone(), u.clone()]), 2),
        ] {
            let s = TensorSpace::new(blocks(&[("U", 4)]), expr.clone());
            assert_eq!(s.dim(), expr.dim_formula());
        }
    }

    #[test]
    fn raising_on_primal_and_dual() {
        let b = blocks(&[("U", 2)]);
        let u = TensorSpace::new(b.clone(), SpaceExpr::Factor(FactorSpace::primal("U", 0, 2)));
        let e = u.raising_action(RaisingOp { group: 0, p: 0 });
        assert_eq!(e.get(1, 0), Rational::one());
        assert!(e.rows()[0].is_empty());
        let ud = TensorSpace::new(b, SpaceExpr::Factor(FactorSpace::dual("U", 0, 2)));
        let e = ud.raising_action(RaisingOp { group: 0, p: 0 });
        assert_eq!(e.get(0, 1), -Rational::one());
        assert!(e.rows()[1].is_empty());
        assert_eq!(ud.label(0), "u^1");
    }

    #[test]
    fn weights_add_and_survive_symmetrization() {
        let b = blocks(&[("U", 3)]);
        let u = SpaceExpr::Factor(FactorSpace::primal("U", 0, 3));
        let t = TensorSpace::new(b.clone(), SpaceExpr::tensor(vec![u.clone(), u.clone()]));
        let s = TensorSpace::new(b, SpaceExpr::sym(u, 2));
        let i = t.index_of(&[0, 2]).unwrap();
        let j = t.index_of(&[2, 0]).unwrap();
        assert_eq!(t.weight(i), t.weight(j));
        let k = s.index_of(&[0, 2]).unwrap();
        assert_eq!(s.weight(k), t.weight(i));
        assert_eq!(t.weight(i), &[1, 0, 1]);
    }

    #[test]
    fn exterior_signs() {
        let mut k = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut k), Some(1));
        let mut k = vec![1, 0];
        assert_eq!(sort_with_sign(&mut k), Some(-1));
        let mut k = vec![1, 1];
        assert_eq!(sort_with_sign(&mut k), None);
    }
}
