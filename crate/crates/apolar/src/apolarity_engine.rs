//! Candidate generation, the pairwise skew tests, triple assembly under the
//! tensor's symmetries, the (111) test and certificate emission.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact_linalg::{column_blocks, rank_by_blocks, rank_of_rows, Rational, SparseVec, Subspace};
use crate::poly::{Poly, Var, VarNames};
use crate::poly_rank::{export_ideal, rank_locus_from, rational_points, Branch, LocusRecord, PolyMatrix};
use crate::rep_tensor::maps::{
    det3_complement, ext2_index, mamu_complement, mamu_transpose, multiplication_map, skew_kernel, skew_map_poly,
    tensor_in_triple, triple_intersection, MapError, Side,
};
use crate::rep_tensor::module::{enumerate_borel_fixed, BorelFixedFamily, WeightModule};
use crate::rep_tensor::space::{binomial, TensorSpace};
use crate::rep_tensor::tensors::{det3_pair_space, det3_tensor, mamu_pair_space, mamu_tensor, Factor, TensorElement};

/// Version of the certificate layout.
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("unknown tensor spec `{0}` (expected mamu:l,m,n or det3)")]
    BadTensor(String),
    #[error("degree cap {0} is unsupported (use 2 or 3)")]
    DegreeCap(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The tensors the engine knows how to set up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TensorId {
    Mamu(usize, usize, usize),
    Det3,
}

impl fmt::Display for TensorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorId::Mamu(l, m, n) => write!(f, "mamu:{l},{m},{n}"),
            TensorId::Det3 => write!(f, "det3"),
        }
    }
}

impl FromStr for TensorId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EngineError::BadTensor(s.to_string());
        if s == "det3" {
            return Ok(TensorId::Det3);
        }
        let rest = s.strip_prefix("mamu:").ok_or_else(bad)?;
        let parts: Vec<usize> = rest.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [l, m, n] if *l > 0 && *m > 0 && *n > 0 => Ok(TensorId::Mamu(*l, *m, *n)),
            _ => Err(bad()),
        }
    }
}

/// Everything the tests need about one tensor in one arrangement.
#[derive(Clone, Debug)]
pub struct Problem {
    id: TensorId,
    arrangement: [usize; 3],
    tensor: TensorElement,
    space: TensorSpace,
    tc_star: Subspace,
    complement: WeightModule,
}

impl Problem {
    /// Sets up `id`; matrix multiplication is arranged with the smallest
    /// dimension in the middle and `u ≤ w`.
    pub fn new(id: TensorId) -> Problem {
        match id {
            TensorId::Det3 => Problem::det3(),
            TensorId::Mamu(l, m, n) => {
                let mut d = [l, m, n];
                d.sort_unstable();
                let mut p = Problem::mamu(d[1], d[0], d[2]);
                p.id = id;
                p
            }
        }
    }

    /// `M⟨u,v,w⟩` exactly as given.
    pub fn mamu(u: usize, v: usize, w: usize) -> Problem {
        let tensor = mamu_tensor(u, v, w);
        let space = mamu_pair_space(u, v, w);
        let complement = WeightModule::new(&space, mamu_complement(u, v, w)).expect("U*⊗sl(V)⊗W is a submodule");
        Problem {
            id: TensorId::Mamu(u, v, w),
            arrangement: [u, v, w],
            tc_star: tensor.flattening(Factor::C),
            tensor,
            space,
            complement,
        }
    }

    pub fn det3() -> Problem {
        let tensor = det3_tensor();
        let space = det3_pair_space();
        let complement = WeightModule::new(&space, det3_complement()).expect("the complement is a submodule");
        Problem { id: TensorId::Det3, arrangement: [3, 3, 3], tc_star: tensor.flattening(Factor::C), tensor, space, complement }
    }

    pub fn id(&self) -> TensorId {
        self.id
    }

    pub fn arrangement(&self) -> [usize; 3] {
        self.arrangement
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.tensor
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn tc_star(&self) -> &Subspace {
        &self.tc_star
    }

    pub fn complement(&self) -> &WeightModule {
        &self.complement
    }

    pub fn dims(&self) -> [usize; 3] {
        self.tensor.dims()
    }

    /// Largest flattening rank; border rank is at least this.
    pub fn concise_bound(&self) -> usize {
        [Factor::A, Factor::B, Factor::C].iter().map(|f| self.tensor.flattening(*f).dim()).max().unwrap_or(0)
    }

    fn is_mamu(&self) -> bool {
        matches!(self.id, TensorId::Mamu(..))
    }

    /// Problems whose `A⊗B` is this problem's `C⊗A` and `B⊗C`.
    fn rotations(&self) -> Option<[Problem; 2]> {
        let [u, v, w] = self.arrangement;
        (self.is_mamu() && !(u == v && v == w)).then(|| [Problem::mamu(w, u, v), Problem::mamu(v, w, u)])
    }
}

/// Pass, fail, or not settled by the available algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

/// One executed rank test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestResult {
    pub test: String,
    /// Rows and columns of the matrix whose rank decides the test.
    pub shape: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Kernel of the skew map, or codimension of the image on the primal side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<usize>,
    pub threshold: usize,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub loci: Vec<String>,
}

/// Kernel of the skew map restricted to `E′⊗A` modulo the image of
/// `T(C*)⊗A`, for matrix multiplication candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedKernel {
    pub domain: usize,
    pub kernel: usize,
    pub rank: usize,
    /// Same numbers for the 120 side, via the `U*↔W` transpose.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_120: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub index: usize,
    pub params: usize,
    pub tests: Vec<TestResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<ReducedKernel>,
    /// Parameter values at which both pairwise tests pass.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub survivors: Vec<BTreeMap<String, String>>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub grading: String,
    pub candidates: usize,
    /// Surviving subspaces, counting each rational point separately.
    pub passed: usize,
    pub undecided: usize,
    pub details: Vec<CandidateReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub total: usize,
    pub mod_symmetry: usize,
    pub passed: usize,
    pub symmetries: Vec<String>,
    /// Intersection dimension -> number of orbit representatives.
    pub dims: BTreeMap<usize, usize>,
    pub passing: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    BorderRankExceedsR,
    SurvivorsRemain,
    UndecidedBranches,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub tensor: String,
    pub arrangement: [usize; 3],
    pub r: usize,
    pub degree_cap: usize,
    pub concise_bound: usize,
    pub stages: Vec<StageReport>,
    pub triples: TripleReport,
    pub conclusion: Conclusion,
    pub hash: String,
}

impl Certificate {
    /// SHA-256 of the certificate serialized with an empty hash field.
    pub fn compute_hash(&self) -> String {
        let mut copy = self.clone();
        copy.hash.clear();
        let bytes = serde_json::to_vec(&copy).expect("certificate serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn verify_hash(&self) -> bool {
        self.hash == self.compute_hash()
    }
}

/// Outcome of the pairwise stage for one grading.
#[derive(Clone, Debug)]
pub struct PairwiseStage {
    pub report: StageReport,
    /// Surviving `E` spaces in the order they were found.
    pub survivors: Vec<Subspace>,
}

/// All Borel-fixed `E ⊇ T(C*)` of dimension `r`, as families of `E′`.
pub fn generate_110_candidates(problem: &Problem, r: usize) -> (Vec<BorelFixedFamily>, VarNames) {
    let c = problem.tc_star.dim();
    if r < c {
        return (Vec::new(), VarNames::new());
    }
    enumerate_borel_fixed(&problem.complement, r - c)
}

fn e_basis(problem: &Problem, e_prime: &[SparseVec]) -> Vec<SparseVec> {
    problem.tc_star.basis().iter().cloned().chain(e_prime.iter().cloned()).collect()
}

/// The (210) or (120) test on a discrete candidate `E = T(C*) ⊕ E′`.
pub fn test_skew(problem: &Problem, e_prime: &[SparseVec], side: Side, r: usize) -> TestResult {
    let [na, nb, _] = problem.dims();
    let e = e_basis(problem, e_prime);
    let factor = if side == Side::S210 { na } else { nb };
    let rows = e.len() * factor;
    let cols = if side == Side::S210 { binomial(na, 2) * nb } else { na * binomial(nb, 2) };
    let kernel = skew_kernel(na, nb, &e, side);
    TestResult {
        test: side.name().to_string(),
        shape: [rows, cols],
        rank: Some(rows - kernel),
        kernel: Some(kernel),
        threshold: r,
        outcome: if kernel >= r { Outcome::Pass } else { Outcome::Fail },
        loci: Vec::new(),
    }
}

pub fn test_210(problem: &Problem, e_prime: &[SparseVec], r: usize) -> TestResult {
    test_skew(problem, e_prime, Side::S210, r)
}

pub fn test_120(problem: &Problem, e_prime: &[SparseVec], r: usize) -> TestResult {
    test_skew(problem, e_prime, Side::S120, r)
}

/// Kernel of `E′⊗A → Λ²A⊗B / K` where `K` is spanned by the copies of
/// `S²U*⊗V⊗W` and `Λ²U*⊗V⊗W`, i.e. the image of `T(C*)⊗A`.
pub fn reduced_210_kernel(u: usize, v: usize, w: usize, e_prime: &[SparseVec]) -> ReducedKernel {
    let (na, nb) = (u * v, v * w);
    let k = v_copies(u, v, w);
    let rank_k = rank_by_blocks(&k);
    let reduced_rank = |ep: &[SparseVec]| {
        let m = crate::rep_tensor::maps::skew_map(na, nb, ep, Side::S210);
        let mut rows = m.rows().to_vec();
        rows.extend(k.iter().cloned());
        rank_by_blocks(&rows) - rank_k
    };
    let domain = e_prime.len() * na;
    let rank = reduced_rank(e_prime);
    let rank_120 = (u == w).then(|| {
        let t: Vec<SparseVec> = e_prime.iter().map(|x| mamu_transpose(u, v, w, x)).collect();
        reduced_rank(&t)
    });
    ReducedKernel { domain, kernel: domain - rank, rank, rank_120 }
}

fn v_copies(u: usize, v: usize, w: usize) -> Vec<SparseVec> {
    let (na, nb) = (u * v, v * w);
    let wedge = |p: usize, q: usize, col_b: usize, c: Rational, out: &mut Vec<(usize, Rational)>| {
        if p < q {
            out.push((ext2_index(p, q, na) * nb + col_b, c));
        } else if p > q {
            out.push((ext2_index(q, p, na) * nb + col_b, -c));
        }
    };
    let mut rows = Vec::new();
    for sign in [1i64, -1] {
        for a in 0..u {
            for b in a..u {
                if sign < 0 && a == b {
                    continue;
                }
                for i in 0..v {
                    for k in 0..w {
                        let mut out = Vec::new();
                        for j in 0..v {
                            let col_b = j * w + k;
                            wedge(a * v + i, b * v + j, col_b, Rational::from_integer(1.into()), &mut out);
                            wedge(b * v + i, a * v + j, col_b, Rational::from_integer(sign.into()), &mut out);
                        }
                        let row = crate::exact_linalg::sparse_from_pairs(out);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    rows
}

/// Splits a poly matrix into constant blocks (ranked exactly) and the rows
/// that involve parameters.
fn split_blocks(m: &PolyMatrix) -> (usize, PolyMatrix) {
    let blocks = column_blocks(m.rows());
    let mut const_rank = 0;
    let mut param_rows = Vec::new();
    for b in blocks {
        let constant: Option<Vec<SparseVec>> = b
            .iter()
            .map(|i| m.rows()[*i].iter().map(|(c, p)| p.as_constant().map(|x| (*c, x))).collect::<Option<Vec<_>>>())
            .collect();
        match constant {
            Some(rows) => const_rank += rank_of_rows(&rows),
            None => param_rows.extend(b.iter().map(|i| m.rows()[*i].clone())),
        }
    }
    (const_rank, PolyMatrix::new(m.ncols(), param_rows))
}

/// Locus where the skew kernel of a parametric family is at least `r`.
fn skew_locus(problem: &Problem, vectors: &[Vec<(usize, Poly)>], side: Side, r: usize, start: &Branch) -> (TestResult, Vec<LocusRecord>) {
    let [na, nb, _] = problem.dims();
    let m = skew_map_poly(na, nb, vectors, side);
    let rows = m.nrows();
    let (const_rank, param) = split_blocks(&m);
    // kernel ≥ r  ⇔  rank < rows − r + 1
    let bound = (rows + 1).saturating_sub(r);
    let records = if bound <= const_rank { Vec::new() } else { rank_locus_from(&param, bound - const_rank, start.clone()) };
    let outcome = if records.is_empty() { Outcome::Fail } else { Outcome::Undecided };
    let result = TestResult {
        test: side.name().to_string(),
        shape: [rows, m.ncols()],
        rank: None,
        kernel: None,
        threshold: r,
        outcome,
        loci: Vec::new(),
    };
    (result, records)
}

fn point_label(point: &BTreeMap<Var, Rational>, names: &VarNames) -> BTreeMap<String, String> {
    point.iter().map(|(v, x)| (names.name(*v), x.to_string())).collect()
}

/// Runs both pairwise tests on every candidate family for grading (1,1,0).
pub fn pairwise_stage(problem: &Problem, r: usize, grading: &str) -> PairwiseStage {
    let (families, names) = generate_110_candidates(problem, r);
    let module = &problem.complement;
    let results: Vec<(CandidateReport, Vec<Subspace>)> = families
        .par_iter()
        .enumerate()
        .map(|(index, fam)| {
            if fam.is_discrete() {
                discrete_candidate(problem, index, &fam.vectors(module), r)
            } else {
                parametric_candidate(problem, index, fam, &names, r)
            }
        })
        .collect();
    let mut survivors: Vec<Subspace> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut details = Vec::with_capacity(results.len());
    for (rep, subs) in results {
        for s in subs {
            if seen.insert(s.integer_key()) {
                survivors.push(s);
            }
        }
        details.push(rep);
    }
    let undecided = details.iter().filter(|d| d.outcome == Outcome::Undecided).count();
    PairwiseStage {
        report: StageReport { grading: grading.to_string(), candidates: details.len(), passed: survivors.len(), undecided, details },
        survivors,
    }
}

fn discrete_candidate(problem: &Problem, index: usize, e_prime: &[SparseVec], r: usize) -> (CandidateReport, Vec<Subspace>) {
    let t210 = test_210(problem, e_prime, r);
    let t120 = test_120(problem, e_prime, r);
    let pass = t210.outcome == Outcome::Pass && t120.outcome == Outcome::Pass;
    let reduced = match problem.id {
        TensorId::Mamu(..) => {
            let [u, v, w] = problem.arrangement;
            Some(reduced_210_kernel(u, v, w, e_prime))
        }
        TensorId::Det3 => None,
    };
    let dim = problem.space.dim();
    let survivors = if pass { vec![Subspace::span(dim, e_basis(problem, e_prime))] } else { Vec::new() };
    let report = CandidateReport {
        index,
        params: 0,
        tests: vec![t210, t120],
        reduced,
        survivors: if pass { vec![BTreeMap::new()] } else { Vec::new() },
        outcome: if pass { Outcome::Pass } else { Outcome::Fail },
    };
    (report, survivors)
}

fn parametric_candidate(problem: &Problem, index: usize, fam: &BorelFixedFamily, names: &VarNames, r: usize) -> (CandidateReport, Vec<Subspace>) {
    let module = &problem.complement;
    let mut vectors: Vec<Vec<(usize, Poly)>> =
        problem.tc_star.basis().iter().map(|v| v.iter().map(|(i, x)| (*i, Poly::constant(x.clone()))).collect()).collect();
    vectors.extend(fam.ambient_vectors(module));
    let mut start = Some(Branch::default());
    for eq in &fam.closure {
        start = start.and_then(|b| b.with_zero(eq));
    }
    let fail = |tests| CandidateReport { index, params: fam.params.len(), tests, reduced: None, survivors: Vec::new(), outcome: Outcome::Fail };
    let Some(start) = start else { return (fail(Vec::new()), Vec::new()) };
    let (mut t210, rec210) = skew_locus(problem, &vectors, Side::S210, r, &start);
    let (mut t120, rec120) = skew_locus(problem, &vectors, Side::S120, r, &start);
    t210.loci = rec210.iter().map(|x| export_ideal(x, names)).collect();
    t120.loci = rec120.iter().map(|x| export_ideal(x, names)).collect();
    let params: BTreeSet<Var> = fam.params.iter().copied().collect();
    let mut points = Vec::new();
    let mut undecided = Vec::new();
    for a in &rec210 {
        for b in &rec120 {
            let Some(both) = a.intersect(b) else { continue };
            match rational_points(&both, &params) {
                Some(pts) => points.extend(pts),
                None => undecided.push(both),
            }
        }
    }
    points.sort();
    points.dedup();
    let mut survivors = Vec::new();
    let mut labels = Vec::new();
    let mut seen = BTreeSet::new();
    for p in &points {
        let values: HashMap<Var, Rational> = p.iter().map(|(k, v)| (*k, v.clone())).collect();
        let Some(ep) = fam.specialize(module, &values) else { continue };
        // witnesses are re-checked exactly
        let ok = test_210(problem, &ep, r).outcome == Outcome::Pass && test_120(problem, &ep, r).outcome == Outcome::Pass;
        let s = Subspace::span(problem.space.dim(), e_basis(problem, &ep));
        if ok && s.dim() == r && seen.insert(s.integer_key()) {
            survivors.push(s);
            labels.push(point_label(p, names));
        }
    }
    for t in [&mut t210, &mut t120] {
        if t.outcome == Outcome::Undecided && !labels.is_empty() {
            t.outcome = Outcome::Pass;
        }
    }
    let outcome = if !undecided.is_empty() {
        Outcome::Undecided
    } else if survivors.is_empty() {
        Outcome::Fail
    } else {
        Outcome::Pass
    };
    if outcome == Outcome::Undecided {
        t210.loci.extend(undecided.iter().map(|x| format!("unresolved\n{}", export_ideal(x, names))));
    }
    let report = CandidateReport { index, params: fam.params.len(), tests: vec![t210, t120], reduced: None, survivors: labels, outcome };
    (report, survivors)
}

/// A symmetry of `T` acting on triples: factor `f` goes to `perm[f]` with
/// basis index `i` sent to `maps[f][i]`; signs are irrelevant for spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGenerator {
    pub name: String,
    pub perm: [usize; 3],
    pub maps: [Vec<usize>; 3],
}

/// Factor pairs of the three gradings (1,1,0), (1,0,1), (0,1,1).
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (2, 0), (1, 2)];

impl SymmetryGenerator {
    pub fn identity_maps(dims: [usize; 3]) -> [Vec<usize>; 3] {
        [(0..dims[0]).collect(), (0..dims[1]).collect(), (0..dims[2]).collect()]
    }

    pub fn apply(&self, dims: [usize; 3], triple: &[Subspace; 3]) -> Option<[Subspace; 3]> {
        let mut out: [Option<Subspace>; 3] = [None, None, None];
        for (slot, (f, g)) in PAIRS.iter().enumerate() {
            let (pf, pg) = (self.perm[*f], self.perm[*g]);
            if dims[pf] != dims[*f] || dims[pg] != dims[*g] {
                return None;
            }
            let (target, flip) = match PAIRS.iter().position(|p| *p == (pf, pg)) {
                Some(t) => (t, false),
                None => (PAIRS.iter().position(|p| *p == (pg, pf))?, true),
            };
            let vecs = triple[slot]
                .basis()
                .iter()
                .map(|v| {
                    crate::exact_linalg::sparse_from_pairs(v.iter().map(|(idx, x)| {
                        let (xf, xg) = (idx / dims[*g], idx % dims[*g]);
                        let (yf, yg) = (self.maps[*f][xf], self.maps[*g][xg]);
                        let i = if flip { yg * dims[pf] + yf } else { yf * dims[pg] + yg };
                        (i, x.clone())
                    }))
                })
                .collect();
            out[target] = Some(Subspace::span(triple[slot].ambient(), vecs));
        }
        let [a, b, c] = out;
        Some([a?, b?, c?])
    }
}

/// The symmetry group generators used to reduce triples.
pub fn symmetry_generators(problem: &Problem) -> Vec<SymmetryGenerator> {
    let dims = problem.dims();
    match problem.id {
        TensorId::Det3 => {
            let transpose: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
            vec![
                SymmetryGenerator { name: "cycle ABC".into(), perm: [1, 2, 0], maps: SymmetryGenerator::identity_maps(dims) },
                SymmetryGenerator { name: "swap AB".into(), perm: [1, 0, 2], maps: SymmetryGenerator::identity_maps(dims) },
                SymmetryGenerator { name: "transpose".into(), perm: [0, 1, 2], maps: [transpose.clone(), transpose.clone(), transpose] },
            ]
        }
        TensorId::Mamu(..) => {
            let [u, v, w] = problem.arrangement;
            let mut gens = Vec::new();
            if u == v && v == w {
                gens.push(SymmetryGenerator { name: "cycle ABC".into(), perm: [1, 2, 0], maps: SymmetryGenerator::identity_maps(dims) });
            } else if u == w {
                let a_to_b = (0..u * v).map(|a| (v - 1 - a % v) * w + (u - 1 - a / v)).collect();
                let b_to_a = (0..v * w).map(|b| (u - 1 - b % w) * v + (v - 1 - b / w)).collect();
                let c_to_c = (0..w * u).map(|c| (u - 1 - c % u) * u + (u - 1 - c / u)).collect();
                gens.push(SymmetryGenerator { name: "transpose U*<->W".into(), perm: [1, 0, 2], maps: [a_to_b, b_to_a, c_to_c] });
            }
            gens
        }
    }
}

/// Orbit representatives of `lists[0] × lists[1] × lists[2]` under the
/// generators that permute the lists; returns representatives, orbit sizes
/// and the names of the generators used.
pub fn assemble_triples(dims: [usize; 3], lists: [&[Subspace]; 3], gens: &[SymmetryGenerator]) -> (Vec<[usize; 3]>, Vec<usize>, Vec<String>) {
    let keys: Vec<HashMap<Vec<Vec<(usize, BigInt)>>, usize>> =
        lists.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.integer_key(), i)).collect()).collect();
    let sizes = [lists[0].len(), lists[1].len(), lists[2].len()];
    let total = sizes[0] * sizes[1] * sizes[2];
    let flat = |t: [usize; 3]| (t[0] * sizes[1] + t[1]) * sizes[2] + t[2];
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut used = Vec::new();
    'gens: for g in gens {
        let mut images = Vec::with_capacity(total);
        for a in 0..sizes[0] {
            for b in 0..sizes[1] {
                for c in 0..sizes[2] {
                    let triple = [lists[0][a].clone(), lists[1][b].clone(), lists[2][c].clone()];
                    let Some(img) = g.apply(dims, &triple) else { continue 'gens };
                    let mut t = [0; 3];
                    for s in 0..3 {
                        match keys[s].get(&img[s].integer_key()) {
                            Some(i) => t[s] = *i,
                            None => continue 'gens,
                        }
                    }
                    images.push(([a, b, c], t));
                }
            }
        }
        for (x, y) in images {
            let (rx, ry) = (find(&mut parent, flat(x)), find(&mut parent, flat(y)));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        used.push(g.name.clone());
    }
    let mut orbits: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..total {
        *orbits.entry(find(&mut parent, x)).or_insert(0) += 1;
    }
    let unflat = |x: usize| [x / (sizes[1] * sizes[2]), (x / sizes[2]) % sizes[1], x % sizes[2]];
    let reps = orbits.keys().map(|x| unflat(*x)).collect();
    (reps, orbits.into_values().collect(), used)
}

/// The (111) test: the triple intersection must have dimension at least `r`
/// and contain `T`.
pub fn test_111(t: &TensorElement, triple: [&Subspace; 3], r: usize) -> TestResult {
    let dims = t.dims();
    let dim = triple_intersection(dims, triple[0], triple[1], triple[2]);
    let contains = tensor_in_triple(t, triple[0], triple[1], triple[2]);
    TestResult {
        test: "111".into(),
        shape: [triple[0].dim() * dims[2], dims[0] * dims[1] * dims[2]],
        rank: Some(triple[0].dim() * dims[2] - dim),
        kernel: Some(dim),
        threshold: r,
        outcome: if dim >= r && contains { Outcome::Pass } else { Outcome::Fail },
        loci: Vec::new(),
    }
}

/// Codimension test for the multiplication map into degree `target`, with
/// `F` pieces given in [`crate::rep_tensor::maps::GradedSpace`] coordinates.
pub fn test_degree(dims: [usize; 3], target: [usize; 3], pieces: &[([usize; 3], &Subspace)], r: usize) -> Result<TestResult, MapError> {
    let m = multiplication_map(dims, target, pieces)?;
    let rank = m.rank();
    let codim = m.ncols() - rank;
    Ok(TestResult {
        test: format!("{}{}{}", target[0], target[1], target[2]),
        shape: [m.nrows(), m.ncols()],
        rank: Some(rank),
        kernel: Some(codim),
        threshold: r,
        outcome: if codim >= r { Outcome::Pass } else { Outcome::Fail },
        loci: Vec::new(),
    })
}

/// Runs the pairwise stages and, when the cap allows, the triple stage.
pub fn certify(problem: &Problem, r: usize, degree_cap: usize) -> Result<Certificate, EngineError> {
    if !(2..=3).contains(&degree_cap) {
        return Err(EngineError::DegreeCap(degree_cap));
    }
    let concise_bound = problem.concise_bound();
    let mut cert = Certificate {
        version: CERTIFICATE_VERSION,
        tensor: problem.id.to_string(),
        arrangement: problem.arrangement,
        r,
        degree_cap,
        concise_bound,
        stages: Vec::new(),
        triples: TripleReport::default(),
        conclusion: Conclusion::BorderRankExceedsR,
        hash: String::new(),
    };
    if r < concise_bound {
        cert.hash = cert.compute_hash();
        return Ok(cert);
    }
    let first = pairwise_stage(problem, r, "110");
    let mut stages = vec![first];
    let any_undecided = |st: &[PairwiseStage]| st.iter().any(|s| s.report.undecided > 0);
    if degree_cap >= 3 && !stages[0].survivors.is_empty() {
        match problem.rotations() {
            Some([p101, p011]) => {
                stages.push(pairwise_stage(&p101, r, "101"));
                stages.push(pairwise_stage(&p011, r, "011"));
            }
            None => {
                // cyclically symmetric: the other gradings see the same list
                for g in ["101", "011"] {
                    let mut s = stages[0].clone();
                    s.report.grading = g.to_string();
                    stages.push(s);
                }
            }
        }
    }
    let undecided = any_undecided(&stages);
    let all_nonempty = stages.len() == 3 && stages.iter().all(|s| !s.survivors.is_empty());
    if all_nonempty {
        let dims = problem.dims();
        let lists = [&stages[0].survivors[..], &stages[1].survivors[..], &stages[2].survivors[..]];
        let gens = symmetry_generators(problem);
        let (reps, _, used) = assemble_triples(dims, lists, &gens);
        let results: Vec<TestResult> =
            reps.par_iter().map(|t| test_111(&problem.tensor, [&lists[0][t[0]], &lists[1][t[1]], &lists[2][t[2]]], r)).collect();
        let mut dims_hist = BTreeMap::new();
        let mut passing = Vec::new();
        for (t, res) in reps.iter().zip(&results) {
            *dims_hist.entry(res.kernel.unwrap_or(0)).or_insert(0) += 1;
            if res.outcome == Outcome::Pass {
                passing.push(*t);
            }
        }
        cert.triples = TripleReport {
            total: lists.iter().map(|l| l.len()).product(),
            mod_symmetry: reps.len(),
            passed: passing.len(),
            symmetries: used,
            dims: dims_hist,
            passing,
        };
    }
    let survivors_left = if degree_cap >= 3 { cert.triples.passed > 0 } else { !stages[0].survivors.is_empty() };
    cert.conclusion = if undecided {
        Conclusion::UndecidedBranches
    } else if survivors_left {
        Conclusion::SurvivorsRemain
    } else {
        Conclusion::BorderRankExceedsR
    };
    cert.stages = stages.into_iter().map(|s| s.report).collect();
    cert.hash = cert.compute_hash();
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_ids_round_trip() {
        for s in ["det3", "mamu:2,2,3"] {
            assert_eq!(s.parse::<TensorId>().unwrap().to_string(), s);
        }
        assert!("mamu:2,2".parse::<TensorId>().is_err());
        assert!("mamu:0,1,1".parse::<TensorId>().is_err());
    }

    #[test]
    fn arrangement_puts_smallest_in_the_middle() {
        assert_eq!(Problem::new(TensorId::Mamu(2, 3, 3)).arrangement(), [3, 2, 3]);
        assert_eq!(Problem::new(TensorId::Mamu(3, 2, 2)).arrangement(), [2, 2, 3]);
    }

    #[test]
    fn m2_at_six() {
        let p = Problem::new(TensorId::Mamu(2, 2, 2));
        let (fams, _) = generate_110_candidates(&p, 6);
        assert_eq!(fams.len(), 3);
        let mut kernels: Vec<(usize, usize)> = fams
            .iter()
            .map(|f| {
                let ep = f.vectors(p.complement());
                (test_210(&p, &ep, 6).kernel.unwrap(), test_120(&p, &ep, 6).kernel.unwrap())
            })
            .collect();
        kernels.sort();
        assert_eq!(kernels, vec![(4, 6), (5, 5), (6, 4)]);
        let cert = certify(&p, 6, 3).unwrap();
        assert_eq!(cert.conclusion, Conclusion::BorderRankExceedsR);
        assert!(cert.verify_hash());
    }

    #[test]
    fn bad_cap_is_rejected() {
        let p = Problem::new(TensorId::Mamu(1, 1, 1));
        assert_eq!(certify(&p, 1, 4).unwrap_err(), EngineError::DegreeCap(4));
    }
}
