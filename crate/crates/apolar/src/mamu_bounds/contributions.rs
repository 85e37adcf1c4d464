//! Per-site kernel contributions of inner structures on the `U*×W` grid.

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{rat, SparseVec, Subspace};
use crate::rep_tensor::maps::{inner_catalog, isotypic_meets, skew_kernel, Side};
use crate::rep_tensor::{mamu_tensor, Factor};

/// `b_j = c + k·n`, an affine function of the grid size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub constant: i64,
    pub per_n: i64,
}

impl Affine {
    pub const fn new(constant: i64, per_n: i64) -> Self {
        Affine { constant, per_n }
    }

    pub fn at(self, n: i64) -> i64 {
        self.constant + self.per_n * n
    }
}

impl std::fmt::Display for Affine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.per_n, self.constant) {
            (0, c) => write!(f, "{c}"),
            (k, 0) => write!(f, "{}n", coef(k)),
            (k, c) if c < 0 => write!(f, "{}n{c}", coef(k)),
            (k, c) => write!(f, "{}n+{c}", coef(k)),
        }
    }
}

fn coef(k: i64) -> String {
    match k {
        1 => String::new(),
        -1 => "-".into(),
        k => k.to_string(),
    }
}

/// One row `a_j s + b_j` of a contribution table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub a: i64,
    pub b: Affine,
    /// Whether the row is attained (rather than only an upper bound).
    pub exact: bool,
}

/// Rows indexed by inner-structure dimension `j = 1..=v²−1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionTable {
    pub v: usize,
    pub rows: Vec<ContributionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("table for v={v} needs {expected} rows, got {got}")]
    RowCount { v: usize, expected: usize, got: usize },
    #[error("a_j decreases at j={0}")]
    NotMonotone(usize),
}

impl ContributionTable {
    pub fn new(v: usize, rows: Vec<ContributionRow>) -> Result<Self, TableError> {
        let expected = v * v - 1;
        if rows.len() != expected {
            return Err(TableError::RowCount { v, expected, got: rows.len() });
        }
        if let Some(j) = (1..rows.len()).find(|&j| rows[j].a < rows[j - 1].a) {
            return Err(TableError::NotMonotone(j + 1));
        }
        Ok(ContributionTable { v, rows })
    }

    /// The exact `sl₂` table.
    pub fn sl2() -> Self {
        let row = |a, c, k| ContributionRow { a, b: Affine::new(c, k), exact: true };
        ContributionTable::new(2, vec![row(2, 0, 0), row(3, 0, 1), row(4, 0, 2)]).expect("well formed")
    }

    /// Upper bounds for `sl₃`; rows 1, 2, 5 and 8 are claimed exact.
    pub fn sl3() -> Self {
        let row = |a, c, k, exact| ContributionRow { a, b: Affine::new(c, k), exact };
        ContributionTable::new(
            3,
            vec![
                row(1, 0, 0, true),
                row(4, -1, 0, true),
                row(10, -4, 0, false),
                row(11, -4, 0, false),
                row(15, -4, 1, true),
                row(20, -6, 1, false),
                row(21, -6, 2, false),
                row(21, -6, 3, true),
            ],
        )
        .expect("well formed")
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// `a_j s + b_j(n)` for label `j ≥ 1`.
    pub fn value(&self, j: usize, s: usize, n: usize) -> i64 {
        let row = &self.rows[j - 1];
        row.a * s as i64 + row.b.at(n as i64)
    }
}

/// Embeds `u^{u−s}⊗X⊗w_{t−1}` into `A⊗B` of `M⟨u,v,w⟩`.
pub fn site_vectors(u: usize, v: usize, w: usize, s: usize, t: usize, x: &[SparseVec]) -> Vec<SparseVec> {
    let nb = v * w;
    let i = u - s;
    let k = t - 1;
    x.iter()
        .map(|e| {
            let mut out: SparseVec = e
                .iter()
                .map(|(idx, c)| {
                    let (a, b) = (idx / v, idx % v);
                    ((i * v + a) * nb + b * w + k, c.clone())
                })
                .collect();
            out.sort_by_key(|p| p.0);
            out
        })
        .collect()
}

/// Grid dimensions and the filtration step for one site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site {
    pub u: usize,
    pub w: usize,
    pub s: usize,
    pub t: usize,
}

/// Exact kernel difference for adding `X` at `(s,t)` on top of `T(C*)`
/// and every earlier site of the `s×t` rectangle, each also carrying `X`.
pub fn site_contribution(v: usize, x: &[SparseVec], site: Site, side: Side) -> usize {
    let Site { u, w, s, t } = site;
    let (na, nb) = (u * v, v * w);
    let mut base: Vec<SparseVec> = mamu_tensor(u, v, w).flattening(Factor::C).basis().to_vec();
    for ss in 1..=s {
        for tt in 1..=t {
            if (ss, tt) != (s, t) {
                base.extend(site_vectors(u, v, w, ss, tt, x));
            }
        }
    }
    let before = skew_kernel(na, nb, &base, side);
    base.extend(site_vectors(u, v, w, s, t, x));
    skew_kernel(na, nb, &base, side) - before
}

/// `E_ij ↦ E_{v+1−j, v+1−i}`, which keeps upper-triangular structures
/// upper-triangular.
pub fn anti_transpose(v: usize, x: &[SparseVec]) -> Vec<SparseVec> {
    x.iter()
        .map(|vec| {
            let mut out: SparseVec = vec.iter().map(|(idx, c)| ((v - 1 - idx % v) * v + (v - 1 - idx / v), c.clone())).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        })
        .collect()
}

/// Closed form `s(d₂−d_V) + (s−1)(d_ω−d_V) + u·d_V` from the isotypic
/// meets of `V⊗X`. The (120) side sees `X` anti-transposed, with `(t, w)`
/// in place of `(s, u)`.
pub fn site_contribution_closed(v: usize, x: &[SparseVec], site: Site, side: Side) -> i64 {
    let (pos, len, (d2, dw, dv)) = match side {
        Side::S210 => (site.s, site.u, isotypic_meets(v, x)),
        Side::S120 => (site.t, site.w, isotypic_meets(v, &anti_transpose(v, x))),
    };
    let (pos, len) = (pos as i64, len as i64);
    let (d2, dw, dv) = (d2 as i64, dw as i64, dv as i64);
    pos * (d2 - dv) + (pos - 1) * (dw - dv) + len * dv
}

/// `(a, b_const, b_per_n)` of the closed form for `X`.
pub fn closed_coefficients(v: usize, x: &[SparseVec]) -> (i64, Affine) {
    let (d2, dw, dv) = isotypic_meets(v, x);
    let (d2, dw, dv) = (d2 as i64, dw as i64, dv as i64);
    (d2 + dw - 2 * dv, Affine::new(dv - dw, dv))
}

/// The inner-structure catalogue grouped by dimension, index `j−1`.
pub fn catalog_by_dim(v: usize) -> Vec<Vec<Vec<SparseVec>>> {
    let mut out = vec![Vec::new(); v * v - 1];
    for x in inner_catalog(v) {
        if !x.is_empty() && x.len() < v * v {
            out[x.len() - 1].push(x);
        }
    }
    out
}

/// Maximises the closed form over the catalogue at each dimension. Ties
/// in `a` are broken by `b` at `n = v`.
pub fn contribution_table(v: usize) -> ContributionTable {
    let rows = catalog_by_dim(v)
        .iter()
        .map(|xs| {
            let best = xs
                .iter()
                .map(|x| closed_coefficients(v, x))
                .max_by_key(|(a, b)| (*a, b.at(v as i64)))
                .expect("every dimension has a Borel-fixed subspace");
            let attained = xs.iter().all(|x| {
                let (a, b) = closed_coefficients(v, x);
                a <= best.0 && b.per_n <= best.1.per_n && b.constant <= best.1.constant
            });
            ContributionRow { a: best.0, b: best.1, exact: attained }
        })
        .collect();
    ContributionTable { v, rows }
}

/// Integer span of `X` for display and keys.
pub fn inner_key(v: usize, x: &[SparseVec]) -> String {
    let sub = Subspace::span(v * v, x.to_vec());
    let one = rat(1);
    sub.basis()
        .iter()
        .map(|b| {
            b.iter()
                .map(|(i, c)| {
                    let lbl = format!("E{}{}", i / v + 1, i % v + 1);
                    if *c == one {
                        lbl
                    } else {
                        format!("{c}·{lbl}")
                    }
                })
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// The flag `⟨E₁₂⟩ ⊂ ⟨E₁₂, h⟩ ⊂ sl₂`: the only Borel-fixed subspaces.
pub fn sl2_chain() -> Vec<Vec<SparseVec>> {
    let e12 = vec![(1, rat(1))];
    let h = vec![(0, rat(1)), (3, rat(-1))];
    let e21 = vec![(2, rat(1))];
    vec![vec![e12.clone()], vec![e12.clone(), h.clone()], vec![e12, h, e21]]
}

/// `E′` of a labelled grid: `X_μ` at each site, with `inner[μ−1] = X_μ`.
pub fn tableau_vectors(n: usize, v: usize, labels: &[Vec<usize>], inner: &[Vec<SparseVec>]) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for (s, row) in labels.iter().enumerate() {
        for (t, &mu) in row.iter().enumerate() {
            out.extend(site_vectors(n, v, n, s + 1, t + 1, &inner[mu - 1]));
        }
    }
    out
}

/// Exact (210) and (120) kernel gains of `E′` over `T(C*)` in `M⟨n,v,n⟩`.
pub fn tableau_kernel(n: usize, v: usize, e_prime: &[SparseVec]) -> (usize, usize) {
    let na = n * v;
    let mut e: Vec<SparseVec> = mamu_tensor(n, v, n).flattening(Factor::C).basis().to_vec();
    let base = (skew_kernel(na, na, &e, Side::S210), skew_kernel(na, na, &e, Side::S120));
    e.extend_from_slice(e_prime);
    (skew_kernel(na, na, &e, Side::S210) - base.0, skew_kernel(na, na, &e, Side::S120) - base.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anti_transpose_is_an_involution() {
        for x in inner_catalog(3) {
            let y = anti_transpose(3, &x);
            assert_eq!(y.len(), x.len());
            assert_eq!(anti_transpose(3, &y), x);
        }
        // E12 ↦ E23
        assert_eq!(anti_transpose(3, &[vec![(1, rat(1))]]), vec![vec![(5, rat(1))]]);
    }
}
