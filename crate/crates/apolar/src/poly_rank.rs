//! Rank-drop loci of matrices with polynomial entries.
//!
//! `rank_locus` row-reduces on constant pivots first, then on entries that
//! are units on the current branch. When no unit is left it picks the
//! nonzero entry of least total degree, `p`, and splits into the quotient
//! branch (`p = 0`) and the localized branch (`p` invertible). Each leaf where
//! the bound can no longer be met by the remaining rows is returned as a
//! [`LocusRecord`]; their union is the locus `rank < bound`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_linalg::{Rational, SparseMatrix};
use crate::poly::{Poly, PolyError, Var, VarNames};

/// A sparse matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, Poly)>>,
}

impl PolyMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<(usize, Poly)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
                for (c, p) in r {
                    assert!(c < ncols, "column {c} out of range");
                    let e = acc.entry(c).or_default();
                    *e = e.add(&p);
                }
                acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect();
        PolyMatrix { ncols, rows }
    }

    pub fn from_constant(m: &SparseMatrix) -> Self {
        let rows = m.rows().iter().map(|r| r.iter().map(|(c, v)| (*c, Poly::constant(v.clone()))).collect()).collect();
        PolyMatrix { ncols: m.ncols(), rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(usize, Poly)>] {
        &self.rows
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.rows.iter().flat_map(|r| r.iter().flat_map(|(_, p)| p.vars())).collect()
    }

    /// Entrywise evaluation.
    pub fn specialize(&self, values: &HashMap<Var, Rational>, names: &VarNames) -> Result<SparseMatrix, PolyError> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut row = Vec::with_capacity(r.len());
            for (c, p) in r {
                let v = p.eval(values).map_err(|v| PolyError::MissingVariable(names.name(v)))?;
                row.push((*c, v));
            }
            rows.push(row);
        }
        Ok(SparseMatrix::from_rows(self.ncols, rows).expect("columns already checked"))
    }
}

/// One decision on the way to a record.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BranchStep {
    Quotient(Poly),
    Localize(Poly),
}

/// A branch of the splitting: solved variables, residual generators and the
/// polynomials assumed nonzero.
#[derive(Clone, Debug, Default)]
pub struct Branch {
    subs: BTreeMap<Var, Poly>,
    gens: Vec<Poly>,
    inv: Vec<Poly>,
    trace: Vec<BranchStep>,
}

impl Branch {
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut q = p.clone();
        if !self.subs.is_empty() {
            for v in q.vars() {
                if let Some(e) = self.subs.get(&v) {
                    q = q.substitute(v, e);
                }
            }
        }
        if q.is_constant() || self.gens.is_empty() {
            q
        } else {
            q.remainder(&self.gens)
        }
    }

    /// Nonzero constant times a product of inverted polynomials.
    pub fn is_unit(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return false;
        }
        let mut q = p.clone();
        let mut progress = true;
        while !q.is_constant() && progress {
            progress = false;
            for d in &self.inv {
                if let Some(x) = q.div_exact(d) {
                    q = x;
                    progress = true;
                    if q.is_constant() {
                        break;
                    }
                }
            }
        }
        q.is_constant()
    }

    fn absorb_linear(&mut self) -> bool {
        loop {
            let mut found = None;
            'scan: for (i, g) in self.gens.iter().enumerate() {
                for v in g.vars() {
                    if let Some(sol) = g.solve_linear(v) {
                        found = Some((i, v, sol));
                        break 'scan;
                    }
                }
            }
            let Some((i, v, sol)) = found else { return true };
            self.gens.remove(i);
            self.assign(v, sol);
            if !self.renormalize() {
                return false;
            }
        }
    }

    fn assign(&mut self, v: Var, sol: Poly) {
        for e in self.subs.values_mut() {
            *e = e.substitute(v, &sol);
        }
        self.subs.insert(v, sol);
    }

    fn renormalize(&mut self) -> bool {
        let gens = std::mem::take(&mut self.gens);
        for g in gens {
            let r = self.reduce(&g);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return false;
            }
            self.gens.push(r.monic());
        }
        let inv = std::mem::take(&mut self.inv);
        for q in inv {
            let r = self.reduce(&q);
            if r.is_zero() {
                return false;
            }
            if !r.is_constant() {
                self.inv.push(r.monic());
            }
        }
        true
    }

    /// The branch with `p = 0` added, or `None` if that is inconsistent.
    pub fn with_zero(&self, p: &Poly) -> Option<Branch> {
        let mut b = self.clone();
        b.trace.push(BranchStep::Quotient(p.clone()));
        let p = b.reduce(p);
        if p.is_zero() {
            return Some(b);
        }
        if b.is_unit(&p) {
            return None;
        }
        if let Some(v) = p.vars().into_iter().find(|v| p.solve_linear(*v).is_some()) {
            let sol = p.solve_linear(v).expect("checked");
            b.assign(v, sol);
        } else {
            b.gens.push(p.monic());
        }
        (b.renormalize() && b.absorb_linear()).then_some(b)
    }

    /// The branch with `p` inverted, or `None` if `p` vanishes on it.
    pub fn with_inverse(&self, p: &Poly) -> Option<Branch> {
        let mut b = self.clone();
        b.trace.push(BranchStep::Localize(p.clone()));
        let mut p = b.reduce(p);
        if p.is_zero() {
            return None;
        }
        // keep only the part not already inverted, so `is_unit` can peel
        // products of stored factors greedily
        let mut progress = true;
        while progress && !p.is_constant() {
            progress = false;
            for d in &b.inv {
                if let Some(x) = p.div_exact(d) {
                    p = x;
                    progress = true;
                }
            }
        }
        if !p.is_constant() {
            b.inv.push(p.monic());
        }
        Some(b)
    }

    pub fn record(&self) -> LocusRecord {
        let mut generators: Vec<Poly> = self.subs.iter().map(|(v, e)| Poly::var(*v).sub(e)).collect();
        generators.extend(self.gens.iter().cloned());
        LocusRecord { generators, inverted: self.inv.clone(), trace: self.trace.clone() }
    }

    pub fn solved(&self) -> &BTreeMap<Var, Poly> {
        &self.subs
    }

    pub fn residual(&self) -> &[Poly] {
        &self.gens
    }

    pub fn inverted(&self) -> &[Poly] {
        &self.inv
    }
}

/// A piece of a rank-drop locus: the zero set of `generators` with every
/// polynomial in `inverted` nonzero. The trace is provenance only and does
/// not take part in equality.
#[derive(Clone, Debug)]
pub struct LocusRecord {
    pub generators: Vec<Poly>,
    pub inverted: Vec<Poly>,
    pub trace: Vec<BranchStep>,
}

impl PartialEq for LocusRecord {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.inverted == other.inverted
    }
}

impl Eq for LocusRecord {}

impl LocusRecord {
    /// Rebuilds the branch from generators and inverted polynomials.
    pub fn to_branch(&self) -> Option<Branch> {
        let mut b = Branch::default();
        for g in &self.generators {
            b = b.with_zero(g)?;
        }
        for q in &self.inverted {
            b = b.with_inverse(q)?;
        }
        Some(b)
    }

    /// Replays the recorded decisions from an empty branch.
    pub fn replay(trace: &[BranchStep]) -> Option<LocusRecord> {
        let mut b = Branch::default();
        for step in trace {
            b = match step {
                BranchStep::Quotient(p) => b.with_zero(p)?,
                BranchStep::Localize(p) => b.with_inverse(p)?,
            };
        }
        Some(b.record())
    }

    /// Common refinement of two records, if consistent.
    pub fn intersect(&self, other: &LocusRecord) -> Option<LocusRecord> {
        let mut b = Branch::default();
        for step in self.trace.iter().chain(other.trace.iter()) {
            b = match step {
                BranchStep::Quotient(p) => b.with_zero(p)?,
                BranchStep::Localize(p) => b.with_inverse(p)?,
            };
        }
        Some(b.record())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.generators.iter().chain(self.inverted.iter()).flat_map(Poly::vars).collect()
    }
}

/// Outcome of the emptiness check on a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusStatus {
    Empty,
    Witness(BTreeMap<Var, Rational>),
    Undecided,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocusError {
    #[error("rank bound {bound} exceeds matrix size {nrows}x{ncols}")]
    BoundTooLarge { bound: usize, nrows: usize, ncols: usize },
    #[error("malformed ideal export: {0}")]
    Import(String),
}

/// Records covering the locus where `rank(M) < bound`.
pub fn rank_locus(m: &PolyMatrix, bound: usize) -> Result<Vec<LocusRecord>, LocusError> {
    if bound > m.nrows().min(m.ncols()) {
        return Err(LocusError::BoundTooLarge { bound, nrows: m.nrows(), ncols: m.ncols() });
    }
    Ok(rank_locus_from(m, bound, Branch::default()))
}

/// As [`rank_locus`], starting inside an existing branch.
pub fn rank_locus_from(m: &PolyMatrix, bound: usize, start: Branch) -> Vec<LocusRecord> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Vec<(usize, Poly)>>, isize, Branch)> = vec![(m.rows.clone(), bound as isize, start)];
    while let Some((rows, rb, br)) = stack.pop() {
        if rb <= 0 {
            continue;
        }
        let (rows, rb) = pivot_units(reduce_rows(rows, &br), rb, &br);
        if rb <= 0 {
            continue;
        }
        if rows.is_empty() {
            out.push(br.record());
            continue;
        }
        let p = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(c, p)| ((p.total_degree(), *c, i), p)))
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, p)| p.clone())
            .expect("rows are non-empty");
        if let Some(bq) = br.with_zero(&p) {
            stack.push((rows.clone(), rb, bq));
        }
        if let Some(bl) = br.with_inverse(&p) {
            stack.push((rows, rb, bl));
        }
    }
    out
}

fn reduce_rows(rows: Vec<Vec<(usize, Poly)>>, br: &Branch) -> Vec<Vec<(usize, Poly)>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|(c, p)| (c, br.reduce(&p))).filter(|(_, p)| !p.is_zero()).collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect()
}

fn find_pivot(rows: &[Vec<(usize, Poly)>], pred: impl Fn(&Poly) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize, usize), (usize, usize))> = None;
    for (i, r) in rows.iter().enumerate() {
        for (k, (c, p)) in r.iter().enumerate() {
            if pred(p) {
                let key = (r.len(), *c, i);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, (i, k)));
                }
            }
        }
    }
    best.map(|b| b.1)
}

fn pivot_units(mut rows: Vec<Vec<(usize, Poly)>>, mut rb: isize, br: &Branch) -> (Vec<Vec<(usize, Poly)>>, isize) {
    while rb > 0 && !rows.is_empty() {
        let piv = find_pivot(&rows, Poly::is_constant).or_else(|| find_pivot(&rows, |p| br.is_unit(p)));
        let Some((i, k)) = piv else { break };
        let prow = rows.swap_remove(i);
        let (col, pv) = prow[k].clone();
        rb -= 1;
        let inv_const = pv.as_constant().map(|c| Rational::one() / c);
        let mut next = Vec::with_capacity(rows.len());
        for row in rows {
            let Some(f) = row.iter().find(|(c, _)| *c == col).map(|(_, f)| f.clone()) else {
                next.push(row);
                continue;
            };
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            match &inv_const {
                Some(ic) => {
                    let factor = f.scale(ic);
                    for (c, p) in &row {
                        acc.insert(*c, p.clone());
                    }
                    for (c, p) in &prow {
                        let e = acc.entry(*c).or_default();
                        *e = e.sub(&factor.mul(p));
                    }
                }
                None => {
                    for (c, p) in &row {
                        acc.insert(*c, pv.mul(p));
                    }
                    for (c, p) in &prow {
                        let e = acc.entry(*c).or_default();
                        *e = e.sub(&f.mul(p));
                    }
                }
            }
            let reduced: Vec<(usize, Poly)> = acc
                .into_iter()
                .filter(|(c, _)| *c != col)
                .map(|(c, p)| (c, br.reduce(&p)))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            if !reduced.is_empty() {
                next.push(reduced);
            }
        }
        rows = next;
    }
    (rows, rb)
}

const GRID: [i64; 3] = [0, 1, -1];

/// Decides a record syntactically, or finds a rational point on it.
pub fn locus_status(rec: &LocusRecord) -> LocusStatus {
    let Some(b) = rec.to_branch() else { return LocusStatus::Empty };
    let free: Vec<Var> = rec.vars().into_iter().filter(|v| !b.subs.contains_key(v)).collect();
    if free.len() > 3 {
        return LocusStatus::Undecided;
    }
    let mut idx = vec![0usize; free.len()];
    loop {
        let point: HashMap<Var, Rational> =
            free.iter().zip(&idx).map(|(v, i)| (*v, Rational::from_integer(BigInt::from(GRID[*i])))).collect();
        if let Some(w) = check_point(&b, rec, point) {
            return LocusStatus::Witness(w);
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return LocusStatus::Undecided;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < GRID.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Completes a point on the free variables by the solved ones and checks it.
fn check_point(b: &Branch, rec: &LocusRecord, mut point: HashMap<Var, Rational>) -> Option<BTreeMap<Var, Rational>> {
    for (v, e) in &b.subs {
        point.insert(*v, e.eval(&point).ok()?);
    }
    let ok = rec.generators.iter().all(|g| g.eval(&point).map(|x| x.is_zero()).unwrap_or(false))
        && rec.inverted.iter().all(|q| q.eval(&point).map(|x| !x.is_zero()).unwrap_or(false));
    ok.then(|| {
        let vars = rec.vars();
        point.into_iter().filter(|(v, _)| vars.contains(v)).collect()
    })
}

/// All points of a zero-dimensional record, when they are rational and the
/// record makes them explicit. `vars` are the coordinates that must be
/// determined. `None` means the points could not be listed exactly.
pub fn rational_points(rec: &LocusRecord, vars: &BTreeSet<Var>) -> Option<Vec<BTreeMap<Var, Rational>>> {
    let b = rec.to_branch()?;
    let free: Vec<Var> = vars.iter().copied().filter(|v| !b.subs.contains_key(v)).collect();
    let candidates: Vec<HashMap<Var, Rational>> = match free.as_slice() {
        [] => vec![HashMap::new()],
        [x] => {
            let g = b.gens.iter().find(|g| g.vars().len() == 1 && g.vars().contains(x))?;
            univariate_rational_roots(g, *x)?.into_iter().map(|r| [(*x, r)].into_iter().collect()).collect()
        }
        _ => return None,
    };
    let mut out = Vec::new();
    for cand in candidates {
        let mut point = cand;
        for (v, e) in &b.subs {
            point.insert(*v, e.eval(&point).ok()?);
        }
        let ok = rec.generators.iter().all(|g| g.eval(&point).map(|x| x.is_zero()).unwrap_or(false))
            && rec.inverted.iter().all(|q| q.eval(&point).map(|x| !x.is_zero()).unwrap_or(false));
        if ok {
            out.push(point.into_iter().filter(|(v, _)| vars.contains(v)).collect());
        }
    }
    Some(out)
}

/// Rational roots of a univariate polynomial that splits into rational
/// linear factors; `None` if an irrational or complex factor remains.
fn univariate_rational_roots(p: &Poly, x: Var) -> Option<Vec<Rational>> {
    let deg = p.degree_in(x) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponent(x) as usize] = c.clone();
    }
    let mut den = BigInt::one();
    for c in &coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut roots = Vec::new();
    let mut rest = p.clone();
    if ints[0].is_zero() {
        roots.push(Rational::zero());
    }
    let low = ints.iter().position(|c| !c.is_zero())?;
    let a0 = ints[low].abs().to_u64()?;
    let an = ints[deg].abs().to_u64()?;
    for q in divisors(an) {
        for pnum in divisors(a0) {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(pnum) * sign, BigInt::from(q));
                let vals: HashMap<Var, Rational> = [(x, r.clone())].into_iter().collect();
                if p.eval(&vals).ok()?.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    for r in &roots {
        let lin = Poly::var(x).sub(&Poly::constant(r.clone()));
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
    }
    rest.is_constant().then(|| {
        roots.sort();
        roots
    })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Plain-text form: an `inv:` header, then one generator per line.
pub fn export_ideal(rec: &LocusRecord, names: &VarNames) -> String {
    let inv: Vec<String> = rec.inverted.iter().map(|p| names.render(p)).collect();
    let mut out = if inv.is_empty() { "inv:\n".to_string() } else { format!("inv: {}\n", inv.join(", ")) };
    for g in &rec.generators {
        out.push_str(&names.render(g));
        out.push('\n');
    }
    out
}

/// Reads the format written by [`export_ideal`].
pub fn import_ideal(text: &str, names: &mut VarNames) -> Result<LocusRecord, LocusError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| LocusError::Import("empty input".into()))?;
    let inv_text = header.strip_prefix("inv:").ok_or_else(|| LocusError::Import(format!("bad header `{header}`")))?;
    let mut parse = |s: &str| Poly::parse(s, &mut |n| names.lookup_or_insert(n)).map_err(|e| LocusError::Import(e.to_string()));
    let mut inverted = Vec::new();
    for piece in inv_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        inverted.push(parse(piece)?);
    }
    let mut generators = Vec::new();
    for line in lines.map(str::trim).filter(|l| !l.is_empty()) {
        generators.push(parse(line)?);
    }
    let trace = generators
        .iter()
        .cloned()
        .map(BranchStep::Quotient)
        .chain(inverted.iter().cloned().map(BranchStep::Localize))
        .collect();
    Ok(LocusRecord { generators, inverted, trace })
}

impl fmt::Display for LocusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", export_ideal(self, &VarNames::new()))
    }
}

/// True when the point lies on the zero set of the product of the records'
/// ideals, i.e. on at least one record with its inverted polynomials nonzero.
pub fn point_in_union(records: &[LocusRecord], point: &HashMap<Var, Rational>) -> bool {
    records.iter().any(|r| {
        r.generators.iter().all(|g| g.eval(point).map(|x| x.is_zero()).unwrap_or(false))
            && r.inverted.iter().all(|q| q.eval(point).map(|x| !x.is_zero()).unwrap_or(false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    fn pm(rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let ncols = rows[0].len();
        PolyMatrix::new(ncols, rows.into_iter().map(|r| r.into_iter().enumerate().collect()).collect())
    }

    #[test]
    fn unit_matrix_has_empty_locus() {
        assert!(rank_locus(&pm(vec![vec![Poly::int(1)]]), 1).unwrap().is_empty());
    }

    #[test]
    fn single_variable_entry() {
        let recs = rank_locus(&pm(vec![vec![Poly::var(0)]]), 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].generators, vec![Poly::var(0)]);
        assert!(recs[0].inverted.is_empty());
    }

    #[test]
    fn two_by_two_determinant() {
        let (t, s) = (Poly::var(0), Poly::var(1));
        let recs = rank_locus(&pm(vec![vec![t.clone(), Poly::int(1)], vec![Poly::int(1), s.clone()]]), 2).unwrap();
        assert_eq!(recs.len(), 1);
        let det = t.mul(&s).sub(&Poly::int(1));
        let g = &recs[0].generators;
        assert_eq!(g.len(), 1);
        assert!(g[0].sub(&det).is_zero() || g[0].add(&det).is_zero());
        let names = VarNames::from_names(["t", "s"]);
        match locus_status(&recs[0]) {
            LocusStatus::Witness(w) => {
                let vals: HashMap<Var, Rational> = w.into_iter().collect();
                assert_eq!(det.eval(&vals), Ok(rat(0)));
            }
            other => panic!("expected witness, got {other:?} for {}", export_ideal(&recs[0], &names)),
        }
    }

    #[test]
    fn bound_above_size_is_rejected() {
        assert!(rank_locus(&pm(vec![vec![Poly::int(1)]]), 2).is_err());
    }

    #[test]
    fn status_examples() {
        let one = LocusRecord { generators: vec![Poly::int(1)], inverted: vec![], trace: vec![] };
        assert_eq!(locus_status(&one), LocusStatus::Empty);
        let t = LocusRecord { generators: vec![Poly::var(0)], inverted: vec![], trace: vec![] };
        assert_eq!(locus_status(&t), LocusStatus::Witness([(0, rat(0))].into_iter().collect()));
        let ts = Poly::var(0).mul(&Poly::var(1)).sub(&Poly::int(1));
        let rec = LocusRecord { generators: vec![ts], inverted: vec![], trace: vec![] };
        assert_eq!(locus_status(&rec), LocusStatus::Witness([(0, rat(1)), (1, rat(1))].into_iter().collect()));
        let clash = LocusRecord { generators: vec![Poly::var(0)], inverted: vec![Poly::var(0)], trace: vec![] };
        assert_eq!(locus_status(&clash), LocusStatus::Empty);
    }

    #[test]
    fn export_format() {
        let mut names = VarNames::from_names(["t", "s"]);
        let t = LocusRecord { generators: vec![Poly::var(0)], inverted: vec![], trace: vec![] };
        assert_eq!(export_ideal(&t, &names), "inv:\nt\n");
        let ts = Poly::var(0).mul(&Poly::var(1)).sub(&Poly::int(1));
        let rec = LocusRecord { generators: vec![ts, Poly::var(1)], inverted: vec![Poly::var(0)], trace: vec![] };
        let text = export_ideal(&rec, &names);
        assert_eq!(text, "inv: t\nt*s - 1\ns\n");
        assert_eq!(import_ideal(&text, &mut names).unwrap(), rec);
    }

    #[test]
    fn trace_replays() {
        let (t, s) = (Poly::var(0), Poly::var(1));
        let m = pm(vec![
            vec![t.clone(), s.clone(), Poly::int(0)],
            vec![Poly::int(0), t.clone(), s.add(&Poly::int(1))],
            vec![s.clone(), Poly::int(1), t.clone()],
        ]);
        for rec in rank_locus(&m, 3).unwrap() {
            assert_eq!(LocusRecord::replay(&rec.trace), Some(rec.clone()));
        }
    }

    #[test]
    fn rational_points_of_quadratic() {
        let x = Poly::var(0);
        let g = x.mul(&x).sub(&Poly::int(1));
        let rec = LocusRecord { generators: vec![g], inverted: vec![], trace: vec![] };
        let vars: BTreeSet<Var> = [0].into_iter().collect();
        let pts = rational_points(&rec, &vars).unwrap();
        assert_eq!(pts.len(), 2);
        let irr = LocusRecord { generators: vec![x.mul(&x).sub(&Poly::int(2))], inverted: vec![], trace: vec![] };
        assert_eq!(rational_points(&irr, &vars), None);
    }
}
