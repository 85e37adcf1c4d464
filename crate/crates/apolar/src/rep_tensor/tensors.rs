//! The target tensors in `A⊗B⊗C` and their flattenings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::space::{sort_with_sign, FactorSpace, SpaceExpr, TensorSpace, TorusBlock};
use crate::exact_linalg::{Rational, SparseVec, Subspace};

/// One of the three tensor factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    A,
    B,
    C,
}

impl Factor {
    pub fn index(self) -> usize {
        match self {
            Factor::A => 0,
            Factor::B => 1,
            Factor::C => 2,
        }
    }
}

/// A tensor in `A⊗B⊗C` with sparse rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    dims: [usize; 3],
    coeffs: BTreeMap<[usize; 3], Rational>,
}

impl TensorElement {
    pub fn new(dims: [usize; 3]) -> Self {
        TensorElement { dims, coeffs: BTreeMap::new() }
    }

    pub fn add(&mut self, idx: [usize; 3], c: Rational) {
        assert!(idx.iter().zip(&self.dims).all(|(i, d)| i < d), "index out of range");
        let e = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn coeffs(&self) -> &BTreeMap<[usize; 3], Rational> {
        &self.coeffs
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    /// Flat index `(a*nB + b)*nC + c`.
    pub fn flat(&self) -> SparseVec {
        let [_, nb, nc] = self.dims;
        self.coeffs.iter().map(|(k, v)| ((k[0] * nb + k[1]) * nc + k[2], v.clone())).collect()
    }

    /// Image of `factor*` in the product of the other two factors, taken in
    /// cyclic order: `T(A*) ⊂ B⊗C`, `T(B*) ⊂ C⊗A`, `T(C*) ⊂ A⊗B`.
    pub fn flattening(&self, factor: Factor) -> Subspace {
        let f = factor.index();
        let (g, h) = ((f + 1) % 3, (f + 2) % 3);
        let mut slices: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (k, v) in &self.coeffs {
            slices.entry(k[f]).or_default().push((k[g] * self.dims[h] + k[h], v.clone()));
        }
        Subspace::span(self.dims[g] * self.dims[h], slices.into_values().map(crate::exact_linalg::sparse_from_pairs).collect())
    }

    pub fn is_concise(&self) -> bool {
        [Factor::A, Factor::B, Factor::C].iter().all(|&f| self.flattening(f).dim() == self.dims[f.index()])
    }

    /// Relabels factors cyclically: `A -> B -> C -> A`.
    pub fn rotate(&self) -> TensorElement {
        let mut out = TensorElement::new([self.dims[2], self.dims[0], self.dims[1]]);
        for (k, v) in &self.coeffs {
            out.add([k[2], k[0], k[1]], v.clone());
        }
        out
    }
}

/// `A = U*⊗V`, `B = V*⊗W`, `C = W*⊗U` with `x^i_j ⊗ y^j_k ⊗ z^k_i` summed.
pub fn mamu_tensor(u: usize, v: usize, w: usize) -> TensorElement {
    assert!(u >= 1 && v >= 1 && w >= 1, "dimensions must be positive");
    let mut t = TensorElement::new([u * v, v * w, w * u]);
    for i in 0..u {
        for j in 0..v {
            for k in 0..w {
                t.add([i * v + j, j * w + k, k * u + i], Rational::one());
            }
        }
    }
    t
}

/// `det₃` in `A=B=C=U⊗V`, `x_{ij}` at index `3i+j`.
pub fn det3_tensor() -> TensorElement {
    let mut t = TensorElement::new([9, 9, 9]);
    let perms = permutations3();
    for (s, ss) in &perms {
        for (p, sp) in &perms {
            let idx = [s[0] * 3 + p[0], s[1] * 3 + p[1], s[2] * 3 + p[2]];
            t.add(idx, Rational::from_integer(BigInt::from(ss * sp)));
        }
    }
    t
}

fn permutations3() -> Vec<([usize; 3], i64)> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut k = vec![a, b, c];
                if let Some(sign) = sort_with_sign(&mut k) {
                    out.push(([a, b, c], sign));
                }
            }
        }
    }
    out
}

/// `A⊗B` for `M⟨u,v,w⟩`, ordered so that basis `(i,j,j',k)` sits at
/// `(i*v+j)*(v*w) + j'*w+k`.
pub fn mamu_pair_space(u: usize, v: usize, w: usize) -> TensorSpace {
    let blocks = vec![
        TorusBlock { name: "U".into(), dim: u },
        TorusBlock { name: "V".into(), dim: v },
        TorusBlock { name: "W".into(), dim: w },
    ];
    let a = SpaceExpr::tensor(vec![
        SpaceExpr::Factor(FactorSpace::dual("U", 0, u)),
        SpaceExpr::Factor(FactorSpace::primal("V", 1, v)),
    ]);
    let b = SpaceExpr::tensor(vec![
        SpaceExpr::Factor(FactorSpace::dual("V", 1, v)),
        SpaceExpr::Factor(FactorSpace::primal("W", 2, w)),
    ]);
    TensorSpace::new(blocks, SpaceExpr::tensor(vec![a, b]))
}

/// `A⊗B` for `det₃`, each factor `U⊗V` with `dim U = dim V = 3`.
pub fn det3_pair_space() -> TensorSpace {
    let blocks = vec![TorusBlock { name: "U".into(), dim: 3 }, TorusBlock { name: "V".into(), dim: 3 }];
    let f = SpaceExpr::tensor(vec![
        SpaceExpr::Factor(FactorSpace::primal("U", 0, 3)),
        SpaceExpr::Factor(FactorSpace::primal("V", 1, 3)),
    ]);
    TensorSpace::new(blocks, SpaceExpr::tensor(vec![f.clone(), f]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mamu_small_cases() {
        let t = mamu_tensor(1, 1, 1);
        assert_eq!(t.nnz(), 1);
        let t = mamu_tensor(2, 2, 2);
        assert_eq!(t.nnz(), 8);
        assert!(t.coeffs().values().all(|c| c == &Rational::one()));
        assert!(t.is_concise());
    }

    #[test]
    fn det3_coefficients() {
        let t = det3_tensor();
        assert_eq!(t.nnz(), 36);
        let sum: Rational = t.coeffs().values().cloned().sum();
        assert!(sum.is_zero());
        let plus = t.coeffs().values().filter(|c| **c == Rational::one()).count();
        assert_eq!(plus, 18);
        assert!(t.is_concise());
    }

    #[test]
    fn flattening_dimensions() {
        assert_eq!(mamu_tensor(2, 3, 4).flattening(Factor::C).dim(), 8);
        assert_eq!(det3_tensor().flattening(Factor::C).dim(), 9);
    }

    #[test]
    fn rank_one_is_not_concise() {
        let mut t = TensorElement::new([2, 2, 2]);
        t.add([0, 0, 0], Rational::one());
        assert!(!t.is_concise());
    }

    #[test]
    fn pair_space_index_matches_tensor_layout() {
        let s = mamu_pair_space(2, 3, 2);
        let (i, j, j2, k) = (1, 2, 0, 1);
        let a = i * 3 + j;
        let b = j2 * 2 + k;
        let idx = s.index_of(&[a, b]).unwrap();
        assert_eq!(idx, a * 6 + b);
        assert_eq!(s.label(idx), "u^2⊗v_3⊗v^1⊗w_2");
    }
}
