//! Exact rank and rank-locus properties against brute-force oracles.

use std::collections::HashMap;

use apolar::exact_linalg::{rank_by_blocks, rat, Rational, SparseMatrix, Subspace};
use apolar::poly::{Poly, VarNames};
use apolar::poly_rank::{locus_status, rank_locus, LocusRecord, LocusStatus, PolyMatrix};
use num_traits::Zero;
use proptest::prelude::*;

/// Cofactor determinant; the matrices here are at most 5×5.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest nonvanishing minor.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                if det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        // sparse-ish entries so low ranks actually occur
        proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_minors(m in small_matrix()) {
        let sm = SparseMatrix::from_dense(&m);
        prop_assert_eq!(sm.rank(), minor_rank(&m));
        prop_assert_eq!(rank_by_blocks(sm.rows()), sm.rank());
    }

    #[test]
    fn rank_duality(m in small_matrix()) {
        let sm = SparseMatrix::from_dense(&m);
        let t = sm.transpose();
        prop_assert_eq!(sm.rank(), t.rank());
        let ker = sm.kernel_basis();
        prop_assert_eq!(ker.dim() + sm.rank(), sm.ncols());
        for v in ker.basis() {
            prop_assert!(sm.mul_vec(v).is_empty());
        }
        let rows = Subspace::span(sm.ncols(), sm.rows().to_vec());
        prop_assert_eq!(rows.annihilator().dim(), ker.dim());
        prop_assert_eq!(rows.annihilator().annihilator(), rows);
    }
}

fn record_contains(rec: &LocusRecord, point: &HashMap<u32, Rational>) -> bool {
    rec.generators.iter().all(|g| g.eval(point).map(|x| x.is_zero()).unwrap_or(false))
        && rec.inverted.iter().all(|q| q.eval(point).map(|x| !x.is_zero()).unwrap_or(false))
}

/// Affine entries `c₀ + c₁x + c₂y`.
fn affine_matrix() -> impl Strategy<Value = (usize, usize, Vec<[i64; 3]>)> {
    (2usize..=3, 2usize..=3).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![2 => Just([0i64; 3]), 3 => [-2i64..=2, -1i64..=1, -1i64..=1]];
        (Just(r), Just(c), proptest::collection::vec(entry, r * c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rank_locus_is_sound_and_complete((r, c, entries) in affine_matrix(), drop in 0usize..2) {
        let mut names = VarNames::new();
        let (x, y) = (names.fresh("x"), names.fresh("y"));
        let poly = |e: &[i64; 3]| Poly::int(e[0]).add(&Poly::var(x).scale(&rat(e[1]))).add(&Poly::var(y).scale(&rat(e[2])));
        let rows: Vec<Vec<(usize, Poly)>> = (0..r)
            .map(|i| (0..c).map(|j| (j, poly(&entries[i * c + j]))).filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        let m = PolyMatrix::new(c, rows);
        let bound = r.min(c) - drop;
        let records = rank_locus(&m, bound).expect("bound fits");
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let pt: HashMap<u32, Rational> = [(x, rat(a)), (y, rat(b))].into();
                let below = m.specialize(&pt, &names).expect("all variables bound").rank() < bound;
                let covered = records.iter().any(|rec| record_contains(rec, &pt));
                prop_assert_eq!(below, covered, "point ({}, {})", a, b);
            }
        }
        for rec in &records {
            if let LocusStatus::Witness(w) = locus_status(rec) {
                let mut pt: HashMap<u32, Rational> = w.into_iter().collect();
                for v in [x, y] {
                    pt.entry(v).or_insert_with(Rational::zero);
                }
                prop_assert!(record_contains(rec, &pt));
                prop_assert!(m.specialize(&pt, &names).expect("bound").rank() < bound);
            }
        }
    }
}
