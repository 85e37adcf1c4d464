//! The hook-shaped `E′` whose kernel depends only on `στ`, and the
//! resulting ceiling on what the pairwise tests can prove.

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{rat, SparseVec};
use crate::rep_tensor::maps::{skew_kernel, Side};
use crate::rep_tensor::{mamu_tensor, Factor};

/// `C(στ+1, 2) + στ`: symmetric square of the left arm plus the right arm.
pub fn hook_kernel(sigma: usize, tau: usize) -> usize {
    let st = sigma * tau;
    st * (st + 1) / 2 + st
}

/// Unit vectors `u^{n−1−s}⊗v_a⊗v^{v−1}⊗w_0` (`s < σ, a < τ`) and
/// `u^{n−1}⊗v_0⊗v^{v−1−a}⊗w_t` (`a < τ, t < σ`) in `A⊗B` of
/// `M⟨n,v,n⟩`. Needs `τ < v` to stay off the diagonal.
pub fn hook_vectors(n: usize, v: usize, sigma: usize, tau: usize) -> Vec<SparseVec> {
    assert!(tau < v && sigma <= n, "hook does not fit");
    let nb = v * n;
    let idx = |i: usize, j: usize, j2: usize, k: usize| (i * v + j) * nb + j2 * n + k;
    let mut keys = std::collections::BTreeSet::new();
    for s in 0..sigma {
        for a in 0..tau {
            keys.insert(idx(n - 1 - s, a, v - 1, 0));
        }
    }
    for a in 0..tau {
        for t in 0..sigma {
            keys.insert(idx(n - 1, 0, v - 1 - a, t));
        }
    }
    keys.into_iter().map(|k| vec![(k, rat(1))]).collect()
}

/// Increase of the (210) kernel when the hook is added to `T(C*)`.
pub fn hook_engine_kernel(n: usize, v: usize, sigma: usize, tau: usize) -> usize {
    let (na, nb) = (n * v, v * n);
    let mut e: Vec<SparseVec> = mamu_tensor(n, v, n).flattening(Factor::C).basis().to_vec();
    let before = skew_kernel(na, nb, &e, Side::S210);
    e.extend(hook_vectors(n, v, sigma, tau));
    skew_kernel(na, nb, &e, Side::S210) - before
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Barrier {
    pub n: usize,
    pub sigma: usize,
    /// `dim E′ = 2σ − 1` for the `τ = 1` hook.
    pub rho: usize,
    pub ratio: f64,
}

/// The first `τ = 1` hook whose kernel count reaches `n² + dim E′`: past
/// this `ρ` the (210) and (120) tests stop refuting, and `ρ/n → 2√2`.
pub fn barrier_check(n: usize) -> Barrier {
    let mut sigma = 1;
    while hook_kernel(sigma, 1) < n * n + 2 * sigma - 1 {
        sigma += 1;
    }
    let rho = 2 * sigma - 1;
    Barrier { n, sigma, rho, ratio: rho as f64 / n as f64 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_small_values() {
        assert_eq!(hook_kernel(1, 1), 2);
        assert_eq!(hook_kernel(3, 1), 9);
        assert_eq!(hook_kernel(2, 2), 14);
    }

    #[test]
    fn hook_dimension() {
        assert_eq!(hook_vectors(6, 3, 3, 2).len(), 11);
    }

    #[test]
    fn barrier_ratio_approaches_two_root_two() {
        let b = barrier_check(2000);
        assert!((b.ratio - 2.0 * 2f64.sqrt()).abs() < 0.01, "{b:?}");
    }
}
