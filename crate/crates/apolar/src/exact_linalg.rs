//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored row-major with sorted sparse rows. Elimination runs
//! fraction-free on integer rows (each rational row is scaled to a primitive
//! integer row first), with an `i128` fast path that falls back to big
//! integers on overflow. Pivots are chosen by smallest column, then sparsest
//! row, so echelon forms are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact scalar used throughout.
pub type Rational = BigRational;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a sparse vector from unsorted `(index, value)` pairs, summing repeats.
pub fn sparse_from_pairs<I>(pairs: I) -> SparseVec
where
    I: IntoIterator<Item = (usize, Rational)>,
{
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, v) in pairs {
        *acc.entry(i).or_insert_with(Rational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows], row_labels: None, col_labels: None }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, rows, row_labels: None, col_labels: None }
    }

    /// Rows may arrive unsorted or with repeated indices; they are normalized.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Result<Self, LinalgError> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = sparse_from_pairs(row);
            if let Some(&(c, _)) = row.last() {
                if c >= ncols {
                    return Err(LinalgError::OutOfRange { index: c, dim: ncols });
                }
            }
            out.push(row);
        }
        Ok(SparseMatrix { nrows: out.len(), ncols, rows: out, row_labels: None, col_labels: None })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, rat(*v))).collect())
            .collect::<Vec<SparseVec>>();
        SparseMatrix { nrows: rows.len(), ncols, rows, row_labels: None, col_labels: None }
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self, LinalgError> {
        if rows.len() != self.nrows {
            return Err(LinalgError::DimensionMismatch { left: rows.len(), right: self.nrows });
        }
        if cols.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch { left: cols.len(), right: self.ncols });
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&c, |(i, _)| *i) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn push_row(&mut self, row: Vec<(usize, Rational)>) {
        self.rows.push(sparse_from_pairs(row));
        self.nrows += 1;
        self.row_labels = None;
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[(usize, Rational)]) -> SparseVec {
        sparse_from_pairs(v.iter().flat_map(|(r, a)| self.rows[*r].iter().map(move |(c, b)| (*c, a * b))))
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = Rational::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    acc += a * *x;
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.ncols != other.nrows {
            return Err(LinalgError::DimensionMismatch { left: self.ncols, right: other.nrows });
        }
        let rows = self.rows.iter().map(|row| other.left_mul(row)).collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows, row_labels: None, col_labels: None })
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|(_, v)| v.is_integer()))
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Subspace {
        kernel_basis(self)
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mut dense = vec![Rational::zero(); self.ncols];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            let cells: Vec<String> = dense.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// integer elimination core

trait Coef: Clone + PartialEq + fmt::Debug {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a*x - b*y`, or `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Coef for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        *self / *d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Coef for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

type IntRow<T> = Vec<(usize, T)>;

/// Divides out the content and makes the leading entry positive.
fn normalize<T: Coef>(row: &mut IntRow<T>) {
    if row.is_empty() {
        return;
    }
    let mut g = row[0].1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = g.neg();
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `p*row - c*pivot` where `p` is the pivot entry and `c` the entry of `row`
/// in the pivot column; the pivot column drops out.
fn cross_reduce<T: Coef>(row: &IntRow<T>, pivot: &IntRow<T>, col: usize) -> Option<IntRow<T>> {
    let p = &pivot.iter().find(|(c, _)| *c == col)?.1;
    let c = &row.iter().find(|(k, _)| *k == col)?.1;
    let zero = T::from_big(&BigInt::zero())?;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (k, v) = if ci < cj {
            i += 1;
            (ci, T::cross(p, &row[i - 1].1, c, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, T::cross(p, &zero, c, &pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, T::cross(p, &row[i - 1].1, c, &pivot[j - 1].1)?)
        };
        if k != col && !v.is_zero() {
            out.push((k, v));
        }
    }
    normalize(&mut out);
    Some(out)
}

/// Sparse fraction-free elimination. Returns the pivot rows ordered by
/// leading column, or `None` on coefficient overflow.
fn eliminate<T: Coef>(rows: Vec<IntRow<T>>) -> Option<Vec<IntRow<T>>> {
    let mut buckets: BTreeMap<usize, Vec<IntRow<T>>> = BTreeMap::new();
    for mut row in rows {
        if row.is_empty() {
            continue;
        }
        normalize(&mut row);
        buckets.entry(row[0].0).or_default().push(row);
    }
    let mut pivots = Vec::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let best = bucket
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("non-empty bucket");
        let pivot = bucket.swap_remove(best);
        for row in bucket {
            let reduced = cross_reduce(&row, &pivot, col)?;
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        pivots.push(pivot);
    }
    Some(pivots)
}

/// Clears every pivot column above its pivot, giving a reduced echelon form
/// with integer rows (pivot entries positive, not necessarily one).
fn reduce_upward<T: Coef>(mut pivots: Vec<IntRow<T>>) -> Option<Vec<IntRow<T>>> {
    for k in (0..pivots.len()).rev() {
        let col = pivots[k][0].0;
        let (head, tail) = pivots.split_at_mut(k);
        let pivot = &tail[0];
        for row in head.iter_mut() {
            if row.binary_search_by_key(&col, |e| e.0).is_ok() {
                *row = cross_reduce(row, pivot, col)?;
            }
        }
    }
    Some(pivots)
}

fn to_int_rows(rows: &[SparseVec]) -> Vec<IntRow<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for (_, v) in row {
                l = l.lcm(v.denom());
            }
            row.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect()
        })
        .collect()
}

fn narrow(rows: &[IntRow<BigInt>]) -> Option<Vec<IntRow<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i128().map(|x| (*c, x))).collect::<Option<Vec<_>>>())
        .collect()
}

fn widen<T: Coef>(rows: Vec<IntRow<T>>) -> Vec<IntRow<BigInt>> {
    rows.into_iter().map(|r| r.into_iter().map(|(c, v)| (c, v.to_big())).collect()).collect()
}

/// Integer echelon form of the given rational rows.
fn echelon_int(rows: &[SparseVec], reduced: bool) -> Vec<IntRow<BigInt>> {
    let big = to_int_rows(rows);
    if let Some(small) = narrow(&big) {
        let fast = eliminate(small).and_then(|p| if reduced { reduce_upward(p) } else { Some(p) });
        if let Some(p) = fast {
            return widen(p);
        }
    }
    let p = eliminate(big).expect("big integer elimination cannot overflow");
    if reduced {
        reduce_upward(p).expect("big integer elimination cannot overflow")
    } else {
        p
    }
}

fn to_unit_rows(rows: Vec<IntRow<BigInt>>) -> Vec<SparseVec> {
    rows.into_iter()
        .map(|r| {
            let lead = r[0].1.clone();
            r.into_iter().map(|(c, v)| (c, Rational::new(v, lead.clone()))).collect()
        })
        .collect()
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    echelon_int(&m.rows, false).len()
}

/// Rank of the span of a list of sparse vectors.
pub fn rank_of_rows(rows: &[SparseVec]) -> usize {
    echelon_int(rows, false).len()
}

/// Groups rows into blocks that share no column; the rank of the whole is
/// the sum of the block ranks. Blocks are listed by their smallest row.
pub fn column_blocks<T>(rows: &[Vec<(usize, T)>]) -> Vec<Vec<usize>> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            match owner.get(c) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(*c, i);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..rows.len() {
        if !rows[i].is_empty() {
            let root = find(&mut parent, i);
            blocks.entry(root).or_default().push(i);
        }
    }
    blocks.into_values().collect()
}

/// Rank computed block by block, in parallel.
pub fn rank_by_blocks(rows: &[SparseVec]) -> usize {
    use rayon::prelude::*;
    column_blocks(rows)
        .par_iter()
        .map(|b| {
            let sub: Vec<SparseVec> = b.iter().map(|i| rows[*i].clone()).collect();
            rank_of_rows(&sub)
        })
        .sum()
}

/// Reduced row echelon form: leading ones, pivot columns cleared.
pub fn rref(rows: &[SparseVec]) -> (Vec<SparseVec>, Vec<usize>) {
    let reduced = to_unit_rows(echelon_int(rows, true));
    let pivots = reduced.iter().map(|r| r[0].0).collect();
    (reduced, pivots)
}

/// Kernel `{v : M v = 0}` as a subspace of the column space.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let (basis, pivots) = rref(&m.rows);
    null_space_of_rref(m.ncols, &basis, &pivots)
}

fn null_space_of_rref(ncols: usize, basis: &[SparseVec], pivots: &[usize]) -> Subspace {
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut columns: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (k, row) in basis.iter().enumerate() {
        for (c, v) in row.iter().skip(1) {
            columns.entry(*c).or_default().push((pivots[k], -v.clone()));
        }
    }
    let mut vecs = Vec::new();
    for f in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = columns.remove(&f).unwrap_or_default();
        v.push((f, Rational::one()));
        v.sort_by_key(|e| e.0);
        vecs.push(v);
    }
    Subspace::span(ncols, vecs)
}

// ---------------------------------------------------------------------------
// subspaces

/// A subspace of `Q^ambient`, stored as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn span(ambient: usize, vectors: Vec<SparseVec>) -> Self {
        let (basis, pivots) = rref(&vectors);
        Subspace { ambient, basis, pivots }
    }

    /// Span of integer-coefficient vectors given as `(index, value)` pairs.
    pub fn span_int(ambient: usize, vectors: &[Vec<(usize, i64)>]) -> Self {
        let vs = vectors.iter().map(|v| sparse_from_pairs(v.iter().map(|(i, x)| (*i, rat(*x))))).collect();
        Subspace::span(ambient, vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix {
            nrows: self.basis.len(),
            ncols: self.ambient,
            rows: self.basis.clone(),
            row_labels: None,
            col_labels: None,
        }
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_of_rows(&rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.sum(other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, rows))
    }

    /// Annihilator under the standard pairing of the ambient basis with its dual.
    pub fn annihilator(&self) -> Subspace {
        null_space_of_rref(self.ambient, &self.basis, &self.pivots)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Image of this subspace under `v -> v * m` (rows of `m` indexed by ambient).
    pub fn image(&self, m: &SparseMatrix) -> Result<Subspace, LinalgError> {
        if m.nrows() != self.ambient {
            return Err(LinalgError::DimensionMismatch { left: m.nrows(), right: self.ambient });
        }
        Ok(Subspace::span(m.ncols(), self.basis.iter().map(|b| m.left_mul(b)).collect()))
    }

    /// Primitive integer rows of the echelon basis; a canonical key.
    pub fn integer_key(&self) -> Vec<Vec<(usize, BigInt)>> {
        to_int_rows(&self.basis)
    }
}

/// Codimension of the image of a linear map, i.e. `ncols - rank`.
pub fn image_codim(m: &SparseMatrix) -> usize {
    m.ncols() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn block_rank_matches_plain_rank() {
        let rows = m(&[&[1, 0, 2, 0], &[0, 1, 0, 0], &[2, 0, 4, 0], &[0, 3, 0, 1]]).rows().to_vec();
        assert_eq!(column_blocks(&rows), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(rank_by_blocks(&rows), rank_of_rows(&rows));
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = SparseMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_of_difference_row() {
        let k = m(&[&[1, -1]]).kernel_basis();
        assert_eq!(k, Subspace::span_int(2, &[vec![(0, 1), (1, 1)]]));
    }

    #[test]
    fn coordinate_planes_meet_in_a_line() {
        let s1 = Subspace::span_int(4, &[vec![(0, 1)], vec![(1, 1)]]);
        let s2 = Subspace::span_int(4, &[vec![(1, 1)], vec![(2, 1)]]);
        assert_eq!(s1.intersect(&s2).unwrap(), Subspace::span_int(4, &[vec![(1, 1)]]));
        assert_eq!(s1.sum(&s2).unwrap().dim(), 3);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let s1 = Subspace::zero(3);
        let s2 = Subspace::zero(4);
        assert_eq!(s1.intersect(&s2), Err(LinalgError::DimensionMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn rational_entries() {
        let a = SparseMatrix::from_rows(
            2,
            vec![vec![(0, frac(1, 2)), (1, frac(1, 3))], vec![(0, frac(3, 2)), (1, rat(1))]],
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
        assert!(!a.is_integral());
    }

    #[test]
    fn big_entries_fall_back_to_bigint() {
        let big = 1i64 << 62;
        let a = m(&[&[big, big - 1, 3], &[big - 7, big, 5], &[1, 2, big]]);
        assert_eq!(a.rank(), 3);
        let b = m(&[&[big, big - 1], &[2 * (big / 2), big - 1]]);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn annihilator_is_an_involution() {
        let s = Subspace::span_int(5, &[vec![(0, 2), (3, 1)], vec![(1, 1), (4, -3)]]);
        assert_eq!(s.annihilator().dim(), 3);
        assert_eq!(s.annihilator().annihilator(), s);
    }

    #[test]
    fn rref_has_unit_pivots() {
        let (rows, piv) = rref(&m(&[&[2, 4, 6], &[1, 1, 1]]).rows);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], vec![(0, rat(1)), (2, rat(-1))]);
        assert_eq!(rows[1], vec![(1, rat(1)), (2, rat(2))]);
    }
}
