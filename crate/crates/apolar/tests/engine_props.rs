//! Engine invariants: equivariance, duality between the two formulations
//! of the pairwise tests, Borel stability, symmetry and certificate replay.

use apolar::apolarity_engine::{
    certify, generate_110_candidates, pairwise_stage, reduced_210_kernel, symmetry_generators, test_210, test_degree, Certificate, Problem,
    TensorId,
};
use apolar::checks::duality_trials;
use apolar::exact_linalg::{rat, SparseVec, Subspace};
use apolar::rep_tensor::maps::{skew_kernel, triple_intersection, tensor_in_triple, Side};
use proptest::prelude::*;

/// Random `E ⊂ A⊗B` as integer vectors.
fn subspace_in(na: usize, nb: usize) -> impl Strategy<Value = Vec<SparseVec>> {
    let n = na * nb;
    proptest::collection::vec(proptest::collection::vec(prop_oneof![2 => Just(0i64), 1 => -2i64..=2], n), 1..n).prop_map(|rows| {
        rows.into_iter().map(|r| r.into_iter().enumerate().filter(|(_, x)| *x != 0).map(|(i, x)| (i, rat(x))).collect()).collect()
    })
}

/// Row-permuted unitriangular integer matrix.
fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (proptest::collection::vec(-2i64..=2, n * n), Just((0..n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(move |(entries, perm)| {
        (0..n)
            .map(|i| {
                let src = perm[i];
                (0..n).map(|j| if j == src { 1 } else if j > src { entries[src * n + j] } else { 0 }).collect()
            })
            .collect()
    })
}

fn setting() -> impl Strategy<Value = (usize, usize, Vec<SparseVec>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (2usize..=3, 2usize..=3).prop_flat_map(|(na, nb)| (Just(na), Just(nb), subspace_in(na, nb), invertible(na), invertible(nb)))
}

fn act(g: &[Vec<i64>], h: &[Vec<i64>], v: &SparseVec) -> SparseVec {
    let nb = h.len();
    let mut out = std::collections::BTreeMap::new();
    for (idx, x) in v {
        let (a, b) = (idx / nb, idx % nb);
        for (a2, row) in g.iter().enumerate() {
            if row[a] == 0 {
                continue;
            }
            for (b2, hrow) in h.iter().enumerate() {
                if hrow[b] != 0 {
                    *out.entry(a2 * nb + b2).or_insert_with(|| rat(0)) += x * rat(row[a] * hrow[b]);
                }
            }
        }
    }
    out.into_iter().filter(|(_, x)| *x != rat(0)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn skew_kernels_are_gl_invariant((na, nb, e, g, h) in setting()) {
        let moved: Vec<SparseVec> = e.iter().map(|v| act(&g, &h, v)).collect();
        for side in [Side::S210, Side::S120] {
            prop_assert_eq!(skew_kernel(na, nb, &e, side), skew_kernel(na, nb, &moved, side));
        }
    }

    #[test]
    fn multiplication_and_skew_maps_agree(seed in any::<u64>()) {
        prop_assert_eq!(duality_trials(3, seed), 0);
    }
}

fn discrete_candidates(id: TensorId, r: usize) -> (Problem, Vec<Vec<SparseVec>>) {
    let problem = Problem::new(id);
    let (families, _) = generate_110_candidates(&problem, r);
    let e: Vec<Vec<SparseVec>> = families.iter().filter(|f| f.is_discrete()).map(|f| f.vectors(problem.complement())).collect();
    (problem, e)
}

#[test]
fn reduced_kernel_equals_full_kernel() {
    for (id, r) in [(TensorId::Mamu(2, 2, 2), 6), (TensorId::Mamu(2, 2, 3), 9), (TensorId::Mamu(2, 3, 3), 13)] {
        let (problem, cands) = discrete_candidates(id, r);
        let [u, v, w] = problem.arrangement();
        for e in &cands {
            let full = test_210(&problem, e, r).kernel.unwrap();
            assert_eq!(reduced_210_kernel(u, v, w, e).kernel, full, "{id}");
        }
    }
}

#[test]
fn degree_test_matches_skew_test() {
    for (id, r) in [(TensorId::Mamu(2, 2, 2), 6), (TensorId::Mamu(2, 2, 3), 9)] {
        let (problem, cands) = discrete_candidates(id, r);
        let dims = problem.dims();
        for e in &cands {
            let full: Vec<SparseVec> = problem.tc_star().basis().iter().cloned().chain(e.iter().cloned()).collect();
            let f = Subspace::span(dims[0] * dims[1], full).annihilator();
            let deg = test_degree(dims, [2, 1, 0], &[([1, 1, 0], &f)], r).unwrap();
            let skew = test_210(&problem, e, r);
            assert_eq!(deg.kernel, skew.kernel, "{id}");
            assert_eq!(deg.outcome, skew.outcome);
        }
    }
}

#[test]
fn candidates_are_borel_stable() {
    for (id, r) in [(TensorId::Mamu(2, 2, 2), 6), (TensorId::Mamu(2, 3, 3), 13), (TensorId::Mamu(3, 3, 3), 16)] {
        let problem = Problem::new(id);
        let module = problem.complement();
        let (families, _) = generate_110_candidates(&problem, r);
        for f in families.iter().filter(|f| f.is_discrete()) {
            let coords: Vec<SparseVec> = f
                .module_vectors(module)
                .into_iter()
                .map(|v| v.into_iter().map(|(i, p)| (i, p.as_constant().expect("discrete"))).collect())
                .collect();
            let span = Subspace::span(module.dim(), coords.clone());
            assert_eq!(span.dim(), f.dim);
            for op in 0..module.num_ops() {
                for v in &coords {
                    assert!(span.contains(&module.apply(op, v)), "{id}: raising operator {op} leaves the family");
                }
            }
        }
    }
}

#[test]
fn symmetries_preserve_triple_tests() {
    let problem = Problem::new(TensorId::Mamu(3, 3, 3));
    let stage = pairwise_stage(&problem, 16, "110");
    let dims = problem.dims();
    let gens = symmetry_generators(&problem);
    assert!(!gens.is_empty());
    let s = &stage.survivors;
    for (i, j, k) in [(0, 1, 2), (3, 3, 4), (5, 6, 7), (7, 0, 2)] {
        let [a, b, c] = [&s[i % s.len()], &s[j % s.len()], &s[k % s.len()]];
        // the same list serves all three gradings for M⟨3⟩ up to the cyclic relabelling
        let triple = [a.clone(), b.clone(), c.clone()];
        let dim = triple_intersection(dims, a, b, c);
        let inside = tensor_in_triple(problem.tensor(), a, b, c);
        for g in &gens {
            let img = g.apply(dims, &triple).expect("generator fits the dims");
            assert_eq!(triple_intersection(dims, &img[0], &img[1], &img[2]), dim, "{}", g.name);
            assert_eq!(tensor_in_triple(problem.tensor(), &img[0], &img[1], &img[2]), inside, "{}", g.name);
        }
    }
}

#[test]
fn certificates_replay_and_are_byte_stable() {
    let problem = Problem::new(TensorId::Mamu(2, 2, 3));
    let cert = certify(&problem, 9, 3).unwrap();
    assert!(cert.verify_hash());
    let json = serde_json::to_string_pretty(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    assert!(back.verify_hash());
    let mut tampered = back.clone();
    tampered.stages[0].passed += 1;
    assert!(!tampered.verify_hash());
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let again = one.install(|| certify(&problem, 9, 3).unwrap());
    assert_eq!(serde_json::to_string_pretty(&again).unwrap(), json);
}
