//! Label-monotone grid tableaux and the branch-and-bound search behind the
//! finite-`n` tables.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed_form::closed_form_bound;
use super::contributions::ContributionTable;
use crate::exact_linalg::rat;
use super::partitions::{conjugate, Partition};

/// Labels `μ_{s,t} ≥ 1` on a Young-diagram support inside the `n×n` grid;
/// `rows[s−1][t−1]` is the label at `(s,t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridTableau {
    pub n: usize,
    pub rows: Vec<Vec<usize>>,
}

impl GridTableau {
    /// Builds the tableau whose label-`≥ i` cells form `chain[i−1]`.
    pub fn from_chain(n: usize, chain: &[Partition]) -> Self {
        let rows = chain
            .first()
            .map(|top| {
                top.iter()
                    .enumerate()
                    .map(|(s, &len)| (0..len).map(|t| chain.iter().filter(|l| l.get(s).is_some_and(|&p| p > t)).count()).collect())
                    .collect()
            })
            .unwrap_or_default();
        GridTableau { n, rows }
    }

    /// Non-increasing along rows and columns, support a Young diagram in
    /// the box, every label positive.
    pub fn is_valid(&self) -> bool {
        if self.rows.len() > self.n {
            return false;
        }
        for (s, row) in self.rows.iter().enumerate() {
            if row.is_empty() || row.len() > self.n || row.contains(&0) {
                return false;
            }
            if row.windows(2).any(|w| w[1] > w[0]) {
                return false;
            }
            if s > 0 {
                let up = &self.rows[s - 1];
                if row.len() > up.len() || row.iter().zip(up).any(|(x, y)| x > y) {
                    return false;
                }
            }
        }
        true
    }

    /// `ρ = Σ μ_{s,t}`.
    pub fn rho(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    pub fn max_label(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `(Σ a_μ s + b_μ, Σ a_μ t + b_μ)`: the (210) and (120) kernel totals.
    pub fn sums(&self, table: &ContributionTable) -> (i64, i64) {
        let mut x = 0;
        let mut y = 0;
        for (s, row) in self.rows.iter().enumerate() {
            for (t, &mu) in row.iter().enumerate() {
                x += table.value(mu, s + 1, self.n);
                y += table.value(mu, t + 1, self.n);
            }
        }
        (x, y)
    }

    pub fn transpose(&self) -> Self {
        let width = self.rows.first().map_or(0, Vec::len);
        let rows = (0..width).map(|t| self.rows.iter().take_while(|r| r.len() > t).map(|r| r[t]).collect()).collect();
        GridTableau { n: self.n, rows }
    }
}

/// Level increments of a table at grid size `n`.
struct Deltas {
    da: Vec<i64>,
    db: Vec<i64>,
}

impl Deltas {
    fn new(table: &ContributionTable, n: usize) -> Self {
        let n = n as i64;
        let mut da = Vec::new();
        let mut db = Vec::new();
        let (mut pa, mut pb) = (0, 0);
        for row in &table.rows {
            let b = row.b.at(n);
            da.push(row.a - pa);
            db.push(b - pb);
            pa = row.a;
            pb = b;
        }
        Deltas { da, db }
    }

    fn k(&self) -> usize {
        self.da.len()
    }
}

/// `n(λ)+|λ|` and the conjugate analogue: row-index and column-index sums.
fn index_sums(lambda: &[usize]) -> (i64, i64) {
    let rows: usize = lambda.iter().enumerate().map(|(i, &p)| (i + 1) * p).sum();
    let cols: usize = lambda.iter().map(|&p| p * (p + 1) / 2).sum();
    (rows as i64, cols as i64)
}

/// Largest row-index sum of a size-`m` sub-diagram of `outer`, for every
/// `m ≤ limit`: fill whole columns left to right (the sum is convex in
/// column lengths).
fn greedy_sums(outer: &[usize], limit: usize) -> (Vec<i64>, Vec<i64>) {
    let conj = conjugate(outer);
    let fill = |lens: &[usize]| {
        let mut out = vec![0i64];
        'outer: for &len in lens {
            for i in 1..=len {
                if out.len() > limit {
                    break 'outer;
                }
                let last = *out.last().expect("seeded");
                out.push(last + i as i64);
            }
        }
        out
    };
    (fill(&conj), fill(outer))
}

/// Upper bound on the increments available from levels `level..k` inside
/// `outer` with exactly `rem` cells spread over non-increasing level sizes.
fn level_bound(d: &Deltas, level: usize, outer_size: usize, sums: &[i64], rem: usize, dsel: &[i64]) -> Option<i64> {
    let k = d.k();
    // best[c][r]: levels i..k, sizes ≤ c, total r
    let cap = outer_size.min(rem);
    let mut next: Vec<Vec<Option<i64>>> = vec![vec![None; rem + 1]; cap + 1];
    for row in next.iter_mut() {
        row[0] = Some(0);
    }
    for i in (level..k).rev() {
        let mut cur: Vec<Vec<Option<i64>>> = vec![vec![None; rem + 1]; cap + 1];
        for c in 0..=cap {
            for r in 0..=rem {
                let mut best = None;
                for m in 0..=c.min(r) {
                    if m >= sums.len() {
                        break;
                    }
                    if let Some(tail) = next[m][r - m] {
                        let v = dsel[i] * sums[m] + d.db[i] * m as i64 + tail;
                        best = Some(best.map_or(v, |b: i64| b.max(v)));
                    }
                }
                cur[c][r] = best;
            }
        }
        next = cur;
    }
    next[cap][rem]
}

struct Search<'a> {
    d: &'a Deltas,
    target: i64,
}

impl Search<'_> {
    fn feasible(&self, level: usize, outer: &[usize], rem: usize, x: i64, y: i64) -> bool {
        let size: usize = outer.iter().sum();
        if rem > size * (self.d.k() - level) {
            return false;
        }
        let (rx, ry) = greedy_sums(outer, rem);
        let bx = level_bound(self.d, level, size, &rx, rem, &self.d.da);
        let by = level_bound(self.d, level, size, &ry, rem, &self.d.da);
        matches!((bx, by), (Some(bx), Some(by)) if x + bx >= self.target && y + by >= self.target)
    }

    /// Depth-first over chains below `outer`; returns the levels chosen.
    fn descend(&self, level: usize, outer: &[usize], rem: usize, x: i64, y: i64) -> Option<Vec<Partition>> {
        if rem == 0 {
            return (x >= self.target && y >= self.target).then(Vec::new);
        }
        if level == self.d.k() || !self.feasible(level, outer, rem, x, y) {
            return None;
        }
        let min_size = rem.div_ceil(self.d.k() - level);
        let mut found = None;
        for_each_subpartition(outer, min_size, rem, &mut |lam| {
            let size: usize = lam.iter().sum();
            let (sx, sy) = index_sums(lam);
            let dx = self.d.da[level] * sx + self.d.db[level] * size as i64;
            let dy = self.d.da[level] * sy + self.d.db[level] * size as i64;
            if let Some(mut tail) = self.descend(level + 1, lam, rem - size, x + dx, y + dy) {
                tail.insert(0, lam.to_vec());
                found = Some(tail);
                return true;
            }
            false
        });
        found
    }
}

/// Calls `f` on every sub-diagram of `outer` with size in `[lo, hi]`,
/// larger first rows first; stops when `f` returns `true`.
fn for_each_subpartition(outer: &[usize], lo: usize, hi: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(outer: &[usize], i: usize, prefix: &mut Vec<usize>, size: usize, lo: usize, hi: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        // the rows still open can add at most this many cells
        let cap: usize = {
            let top = prefix.last().copied().unwrap_or(usize::MAX);
            outer[i..].iter().scan(top, |m, &o| {
                *m = (*m).min(o);
                Some(*m)
            }).sum()
        };
        if size + cap < lo {
            return false;
        }
        if size >= lo && size > 0 && f(prefix) {
            return true;
        }
        if i == outer.len() {
            return false;
        }
        let top = prefix.last().copied().unwrap_or(usize::MAX);
        let most = top.min(outer[i]).min(hi - size);
        for p in (1..=most).rev() {
            prefix.push(p);
            if rec(outer, i + 1, prefix, size + p, lo, hi, f) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    rec(outer, 0, &mut Vec::new(), 0, lo, hi, f)
}

/// All partitions of size in `[lo, hi]` inside the `n×n` box.
pub fn box_partitions(n: usize, lo: usize, hi: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_subpartition(&vec![n; n], lo.max(1), hi, &mut |l| {
        out.push(l.to_vec());
        false
    });
    out
}

/// A tableau with `ρ = r − n²` whose two kernel totals both reach `r`, if
/// one exists. Exhaustive with admissible pruning, so `None` refutes `r`.
pub fn tableau_search(n: usize, table: &ContributionTable, r: usize) -> Option<GridTableau> {
    if r >= n * n && closed_form_bound(r - n * n, table, n) < rat(r as i64) {
        return None;
    }
    tableau_search_exhaustive(n, table, r)
}

/// [`tableau_search`] without the closed-form shortcut at the root.
pub fn tableau_search_exhaustive(n: usize, table: &ContributionTable, r: usize) -> Option<GridTableau> {
    assert!(r >= n * n, "r below n²");
    let rho = r - n * n;
    let d = Deltas::new(table, n);
    let search = Search { d: &d, target: r as i64 };
    if rho == 0 {
        return (r as i64 <= 0).then(|| GridTableau { n, rows: Vec::new() });
    }
    let full = vec![n; n];
    if !search.feasible(0, &full, rho, 0, 0) {
        return None;
    }
    // a chain passes iff its transpose does, so the top shape can be
    // taken at least as tall as it is wide (lexicographically)
    let tops: Vec<Partition> = box_partitions(n, rho.div_ceil(d.k()), rho)
        .into_iter()
        .filter(|l| *l >= conjugate(l))
        .collect();
    tops.par_iter()
        .find_map_first(|top| {
            let size: usize = top.iter().sum();
            let (sx, sy) = index_sums(top);
            let x = d.da[0] * sx + d.db[0] * size as i64;
            let y = d.da[0] * sy + d.db[0] * size as i64;
            search.descend(1, top, rho - size, x, y).map(|mut tail| {
                tail.insert(0, top.clone());
                tail
            })
        })
        .map(|chain| GridTableau::from_chain(n, &chain))
}

/// One line of a bound table: every `r ∈ [n², bound−1]` refuted, a passing
/// tableau at `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    pub bound: usize,
    pub refuted: (usize, usize),
    pub witness: GridTableau,
}

/// Ladder of refutations from `r = n²` up to the first passing tableau.
pub fn search_bound(n: usize, table: &ContributionTable) -> BoundRow {
    let mut r = n * n;
    loop {
        if let Some(witness) = tableau_search(n, table, r) {
            return BoundRow { n, bound: r, refuted: (n * n, r - 1), witness };
        }
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_round_trip() {
        let t = GridTableau::from_chain(5, &[vec![3, 2, 1], vec![2, 1], vec![1]]);
        assert_eq!(t.rows, vec![vec![3, 2, 1], vec![2, 1], vec![1]]);
        assert!(t.is_valid());
        assert_eq!(t.rho(), 10);
        assert_eq!(t.transpose().transpose(), t);
    }

    #[test]
    fn sums_match_level_formula() {
        let table = ContributionTable::sl2();
        let chain = vec![vec![4, 3, 1], vec![2, 2], vec![1]];
        let t = GridTableau::from_chain(6, &chain);
        let d = Deltas::new(&table, 6);
        let (mut x, mut y) = (0, 0);
        for (i, l) in chain.iter().enumerate() {
            let (sx, sy) = index_sums(l);
            let size: usize = l.iter().sum();
            x += d.da[i] * sx + d.db[i] * size as i64;
            y += d.da[i] * sy + d.db[i] * size as i64;
        }
        assert_eq!(t.sums(&table), (x, y));
    }

    #[test]
    fn n4_ladder() {
        let table = ContributionTable::sl2();
        for r in 16..22 {
            assert!(tableau_search(4, &table, r).is_none(), "r={r}");
        }
        let w = tableau_search(4, &table, 22).expect("passes at 22");
        assert!(w.is_valid());
        let (x, y) = w.sums(&table);
        assert!(x >= 22 && y >= 22 && w.rho() == 6);
    }
}
