//! Bound machinery against brute force: tableau enumeration, the exact
//! engine on small grids, and the two inequalities behind the closed form.

use apolar::exact_linalg::{frac, rat, Rational};
use apolar::mamu_bounds::*;
use apolar::rep_tensor::maps::Side;
use proptest::prelude::*;

/// Every label-monotone tableau in the `n×n` box with `Σμ = rho` and
/// labels `≤ k`, built cell by cell in row-major order.
fn all_tableaux(n: usize, k: usize, rho: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(n: usize, k: usize, left: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if left == 0 {
            out.push(rows.clone());
            return;
        }
        // extend the last row
        if let Some(last) = rows.last() {
            let s = rows.len() - 1;
            let t = last.len();
            let cap_left = last[t - 1];
            let cap_up = if s > 0 { rows[s - 1].get(t).copied().unwrap_or(0) } else { k };
            let cap = cap_left.min(cap_up).min(left);
            if t < n {
                for mu in 1..=cap {
                    rows[s].push(mu);
                    grow(n, k, left - mu, rows, out);
                    rows[s].pop();
                }
            }
        }
        // open a new row
        if rows.len() < n {
            let cap = rows.last().map_or(k, |r| r[0]).min(left);
            for mu in 1..=cap {
                rows.push(vec![mu]);
                grow(n, k, left - mu, rows, out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(n, k, rho, &mut Vec::new(), &mut out);
    out
}

fn sums(rows: &[Vec<usize>], table: &ContributionTable, n: usize) -> (i64, i64) {
    GridTableau { n, rows: rows.to_vec() }.sums(table)
}

#[test]
fn enumeration_produces_valid_tableaux() {
    for rho in 0..=7 {
        for rows in all_tableaux(4, 3, rho) {
            let t = GridTableau { n: 4, rows };
            assert!(rho == 0 || t.is_valid(), "{t:?}");
            assert_eq!(t.rho(), rho);
        }
    }
}

#[test]
fn closed_form_dominates_every_tableau() {
    for table in [ContributionTable::sl2(), ContributionTable::sl3()] {
        for n in 2..=8 {
            for rho in 1..=12 {
                let cap = closed_form_bound(rho, &table, n);
                for rows in all_tableaux(n, table.k(), rho) {
                    let (x, y) = sums(&rows, &table, n);
                    assert!(rat(x.min(y)) <= cap, "n={n} ρ={rho} {rows:?}: {} > {cap}", x.min(y));
                }
            }
        }
    }
}

#[test]
fn tableau_search_matches_brute_force() {
    for (table, ns) in [(ContributionTable::sl2(), 4..=6), (ContributionTable::sl3(), 4..=5)] {
        for n in ns {
            let brute = (1..)
                .find(|&rho| all_tableaux(n, table.k(), rho).iter().any(|rows| {
                    let (x, y) = sums(rows, &table, n);
                    x.min(y) >= (n * n + rho) as i64
                }))
                .expect("some ρ passes");
            assert_eq!(search_bound(n, &table).bound, n * n + brute, "n={n} v={}", table.v);
        }
    }
}

/// Kernel gains of `T(C*) + E′` for a prefix of the sites in `order`.
fn prefix_gains(n: usize, rows: &[Vec<usize>], order: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let chain = sl2_chain();
    (0..=order.len())
        .map(|k| {
            let mut partial: Vec<Vec<usize>> = vec![Vec::new(); rows.len()];
            for &(s, t) in &order[..k] {
                partial[s].push(rows[s][t]);
            }
            partial.retain(|r| !r.is_empty());
            tableau_kernel(n, 2, &tableau_vectors(n, 2, &partial, &chain))
        })
        .collect()
}

#[test]
fn v2_kernels_do_not_depend_on_the_filtration() {
    let table = ContributionTable::sl2();
    let n = 3;
    for rho in 1..=9 {
        for rows in all_tableaux(n, 3, rho) {
            let sites: usize = rows.iter().map(Vec::len).sum();
            if sites > 6 {
                continue;
            }
            let total = tableau_kernel(n, 2, &tableau_vectors(n, 2, &rows, &sl2_chain()));
            let (x, y) = sums(&rows, &table, n);
            assert_eq!((total.0 as i64, total.1 as i64), (x, y), "{rows:?}");
            let row_major: Vec<(usize, usize)> = rows.iter().enumerate().flat_map(|(s, r)| (0..r.len()).map(move |t| (s, t))).collect();
            let width = rows[0].len();
            let col_major: Vec<(usize, usize)> =
                (0..width).flat_map(|t| rows.iter().enumerate().filter(move |(_, r)| r.len() > t).map(move |(s, _)| (s, t))).collect();
            for order in [row_major, col_major] {
                let gains = prefix_gains(n, &rows, &order);
                for (i, &(s, t)) in order.iter().enumerate() {
                    let mu = rows[s][t];
                    let step = (gains[i + 1].0 as i64 - gains[i].0 as i64, gains[i + 1].1 as i64 - gains[i].1 as i64);
                    assert_eq!(step, (table.value(mu, s + 1, n), table.value(mu, t + 1, n)), "{rows:?} at ({s},{t})");
                }
            }
        }
    }
}

#[test]
fn v2_engine_reproduces_the_table() {
    let table = ContributionTable::sl2();
    for n in 2..=5 {
        for (j, x) in sl2_chain().iter().enumerate() {
            for s in 1..=n {
                for t in 1..=n {
                    let site = Site { u: n, w: n, s, t };
                    assert_eq!(site_contribution(2, x, site, Side::S210) as i64, table.value(j + 1, s, n));
                    assert_eq!(site_contribution(2, x, site, Side::S120) as i64, table.value(j + 1, t, n));
                }
            }
        }
    }
}

#[test]
fn v3_closed_form_site_values_match_the_engine() {
    for xs in catalog_by_dim(3) {
        for x in &xs {
            for (s, t) in [(1, 1), (2, 1), (3, 2), (1, 3)] {
                let site = Site { u: 4, w: 4, s, t };
                for side in [Side::S210, Side::S120] {
                    assert_eq!(site_contribution(3, x, site, side) as i64, site_contribution_closed(3, x, site, side), "{}", inner_key(3, x));
                }
            }
        }
    }
}

fn partition() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1usize..=12, 1..=12).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn partition_inequality(l in partition()) {
        prop_assert!(is_partition(&l));
        prop_assert!(singlebound_check(&l), "{:?}", l);
        // the exemption is exactly where the strict form breaks
        let strict = rat(n_of(&l) as i64) <= singlebound_rhs(&l) - frac(1, 8);
        prop_assert_eq!(strict, !singlebound_exempt(&l) || rat(n_of(&l) as i64) < singlebound_rhs(&l) - frac(1, 8));
    }

    #[test]
    fn optimisation_inequality(
        k in 1usize..=3,
        c in proptest::collection::vec(0i64..=10, 3),
        d in proptest::collection::vec(-10i64..=10, 3),
        w in proptest::collection::vec(0i64..=30, 6),
        rho in 1i64..=60,
    ) {
        let total: i64 = w[..2 * k].iter().sum();
        prop_assume!(total > 0);
        let c: Vec<Rational> = c[..k].iter().map(|&x| rat(x)).collect();
        let d: Vec<Rational> = d[..k].iter().map(|&x| rat(x)).collect();
        // increments at the simplex vertices ρ/i, then suffix sums
        let inc = |o: usize, i: usize| frac(w[o + i] * rho, total * (i as i64 + 1));
        let mut x = vec![rat(0); k];
        let mut y = vec![rat(0); k];
        for i in (0..k).rev() {
            let (nx, ny) = x.get(i + 1).cloned().zip(y.get(i + 1).cloned()).unwrap_or((rat(0), rat(0)));
            x[i] = inc(0, i) + nx;
            y[i] = inc(k, i) + ny;
        }
        prop_assert!(opt_objective(&c, &d, &x, &y) <= opt_bound(&c, &d, &rat(rho)));
    }
}

#[test]
fn every_partition_up_to_twenty() {
    let mut count = 0;
    for size in 1..=20 {
        for l in partitions_of(size) {
            assert!(singlebound_check(&l), "{l:?}");
            count += 1;
        }
    }
    assert_eq!(count, 2713);
}
