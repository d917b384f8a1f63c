//! Integral homology of finite simplicial sets via Smith normal form.
//!
//! Chains are normalized: one basis element per nondegenerate simplex, and
//! faces that normalize to degenerate simplices are dropped from boundaries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::sset::{nerve, FinCategory, FiniteSimplicialSet, GenId, SimplexRef};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Rows of equal length; `cols` disambiguates the zero-row case.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i][j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// `D = U M V` with `U`, `V` unimodular and `D` diagonal with successively
/// dividing nonnegative entries.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    /// The nonzero diagonal entries, in order.
    pub factors: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let rank = snf_in_place(&mut d.data, m.rows, m.cols, Some((&mut u.data, &mut v.data)));
    let factors = (0..rank).map(|i| d.data[i][i].clone()).collect();
    SmithForm { d, u, v, rank, factors }
}

/// Invariant factors only; transforms are not tracked.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = m.data.clone();
    let rank = snf_in_place(&mut d, m.rows, m.cols, None);
    (0..rank).map(|i| d[i][i].clone()).collect()
}

type Transforms<'a> = Option<(&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>)>;

fn snf_in_place(a: &mut [Vec<BigInt>], rows: usize, cols: usize, mut tr: Transforms<'_>) -> usize {
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(a, &mut tr, t, pi);
        swap_cols(a, &mut tr, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    add_row(a, &mut tr, i, t, &(-q));
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    add_col(a, &mut tr, j, t, &(-q));
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a smaller remainder now sits in row or column t
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(a, &mut tr, t, best.0);
                swap_cols(a, &mut tr, t, best.1);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => add_row(a, &mut tr, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            let neg = BigInt::from(-1);
            scale_row(a, &mut tr, t, &neg);
        }
        t += 1;
    }
    t
}

fn swap_rows(a: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, i: usize, k: usize) {
    if i != k {
        a.swap(i, k);
        if let Some((u, _)) = tr {
            u.swap(i, k);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, j: usize, k: usize) {
    if j != k {
        for r in a.iter_mut() {
            r.swap(j, k);
        }
        if let Some((_, v)) = tr {
            for r in v.iter_mut() {
                r.swap(j, k);
            }
        }
    }
}

/// row_i += q * row_k
fn add_row(a: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, i: usize, k: usize, q: &BigInt) {
    fn go(m: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
        let src = m[k].clone();
        for (x, s) in m[i].iter_mut().zip(src) {
            if !s.is_zero() {
                *x += q * s;
            }
        }
    }
    go(a, i, k, q);
    if let Some((u, _)) = tr {
        go(u, i, k, q);
    }
}

/// col_j += q * col_k
fn add_col(a: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, j: usize, k: usize, q: &BigInt) {
    fn go(m: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
        for r in m.iter_mut() {
            if !r[k].is_zero() {
                let add = q * &r[k];
                r[j] += add;
            }
        }
    }
    go(a, j, k, q);
    if let Some((_, v)) = tr {
        go(v, j, k, q);
    }
}

fn scale_row(a: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, i: usize, q: &BigInt) {
    for x in a[i].iter_mut() {
        *x *= q;
    }
    if let Some((u, _)) = tr {
        for x in u[i].iter_mut() {
            *x *= q;
        }
    }
}

/// Sparse integer matrix as a list of `(row, col, value)` with distinct positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(i, j, x) in &self.entries {
            m.data[i][j] += x;
        }
        m
    }

    /// Rank and the invariant factors larger than one.
    ///
    /// Unit pivots are eliminated sparsely; whatever is left goes through
    /// dense Smith normal form.
    pub fn rank_and_torsion(&self) -> (usize, Vec<BigInt>) {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for &(i, j, x) in &self.entries {
            if x != 0 {
                *rows[i].entry(j).or_insert_with(BigInt::zero) += x;
                col_rows[j].insert(i);
            }
        }
        let mut rank = 0;
        loop {
            let mut progress = false;
            for c in 0..self.cols {
                let pivot = col_rows[c].iter().copied().filter(|&r| rows[r][&c].abs().is_one()).min_by_key(|&r| rows[r].len());
                let Some(r) = pivot else { continue };
                progress = true;
                rank += 1;
                let prow = std::mem::take(&mut rows[r]);
                for j in prow.keys() {
                    col_rows[*j].remove(&r);
                }
                let p = prow[&c].clone();
                let targets: Vec<usize> = col_rows[c].iter().copied().collect();
                for i in targets {
                    let q = &rows[i][&c] * &p;
                    for (j, y) in &prow {
                        let e = rows[i].entry(*j).or_insert_with(BigInt::zero);
                        *e -= &q * y;
                        if e.is_zero() {
                            rows[i].remove(j);
                            col_rows[*j].remove(&i);
                        } else {
                            col_rows[*j].insert(i);
                        }
                    }
                }
                debug_assert!(col_rows[c].is_empty());
            }
            if !progress {
                break;
            }
        }
        let live_rows: Vec<usize> = (0..self.rows).filter(|&i| !rows[i].is_empty()).collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&j| !col_rows[j].is_empty()).collect();
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (k, &i) in live_rows.iter().enumerate() {
            for (j, x) in &rows[i] {
                rest.data[k][col_pos[j]] = x.clone();
            }
        }
        let factors = invariant_factors(&rest);
        rank += factors.len();
        (rank, factors.into_iter().filter(|f| !f.is_one()).collect())
    }
}

/// Normalized chain complex: `boundaries[d]` maps degree `d` to `d - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub bases: Vec<Vec<GenId>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, |b| b.len())
    }

    /// Checks `∂∂ = 0` for every consecutive pair.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|d| {
            let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
            let mut by_col: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
            for &(i, j, x) in &self.boundaries[d - 1].entries {
                by_col.entry(j).or_default().push((i, x));
            }
            for &(k, j, y) in &self.boundaries[d].entries {
                for &(i, x) in by_col.get(&k).into_iter().flatten() {
                    *acc.entry((i, j)).or_default() += x * y;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// The normalized chain complex through degree `top`.
pub fn chain_complex_to(x: &FiniteSimplicialSet, top: usize) -> ChainComplex {
    let bases: Vec<Vec<GenId>> = (0..=top).map(|d| x.gens(d).collect()).collect();
    let mut boundaries = vec![SparseMatrix { rows: 0, cols: bases[0].len(), entries: Vec::new() }];
    for d in 1..=top {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (j, &g) in bases[d].iter().enumerate() {
            for (k, f) in x.gen_faces(g).iter().enumerate() {
                if !f.is_degenerate() {
                    *acc.entry((f.gen.idx, j)).or_default() += if k % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((i, j), v)| (i, j, v)).collect();
        boundaries.push(SparseMatrix { rows: bases[d - 1].len(), cols: bases[d].len(), entries });
    }
    let cc = ChainComplex { bases, boundaries };
    assert!(cc.boundary_squares_to_zero(), "boundary does not square to zero");
    cc
}

pub fn chain_complex(x: &FiniteSimplicialSet) -> ChainComplex {
    chain_complex_to(x, x.top_dim())
}

fn big_list<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub betti: usize,
    #[serde(serialize_with = "big_list")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Initial,
    Final,
}

/// An initial or final object, or a cone point in the simplicial-set case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub object: String,
}

/// How much of "weakly contractible" a certificate actually establishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    NotAcyclic,
    /// Connected with vanishing reduced homology through the bound.
    Acyclic,
    /// Genuinely contractible, by an initial or final object.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyCertificate {
    pub bound: usize,
    pub degrees: Vec<DegreeHomology>,
    pub connected: bool,
    pub witness: Option<Witness>,
    pub grade: Grade,
}

impl HomologyCertificate {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// Betti numbers `(1, 0, 0, …)` and no torsion.
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().enumerate().all(|(d, h)| h.torsion.is_empty() && h.betti == usize::from(d == 0))
    }

    pub fn is_contractible_grade(&self) -> bool {
        self.grade >= Grade::Acyclic
    }
}

/// `H_d(X; Z)` for `d ≤ bound`.
pub fn homology(x: &FiniteSimplicialSet, bound: usize) -> HomologyCertificate {
    let cc = chain_complex_to(x, bound + 1);
    let ranks: Vec<(usize, Vec<BigInt>)> = cc.boundaries.iter().map(|b| b.rank_and_torsion()).collect();
    let degrees: Vec<DegreeHomology> =
        (0..=bound).map(|d| DegreeHomology { betti: cc.rank(d) - ranks[d].0 - ranks[d + 1].0, torsion: ranks[d + 1].1.clone() }).collect();
    let connected = degrees[0].betti == 1;
    let mut cert = HomologyCertificate { bound, degrees, connected, witness: None, grade: Grade::NotAcyclic };
    if cert.is_acyclic() {
        cert.grade = Grade::Acyclic;
    }
    cert
}

/// Inputs that can be certified weakly contractible.
pub trait Contractible {
    fn certificate(&self, bound: usize) -> HomologyCertificate;
}

impl Contractible for FiniteSimplicialSet {
    fn certificate(&self, bound: usize) -> HomologyCertificate {
        let mut cert = homology(self, bound);
        if cert.grade == Grade::Acyclic {
            cert.witness = cone_point(self, WitnessKind::Initial).or_else(|| cone_point(&self.opposite(), WitnessKind::Final));
            if cert.witness.is_some() {
                cert.grade = Grade::Witness;
            }
        }
        cert
    }
}

impl Contractible for FinCategory {
    fn certificate(&self, bound: usize) -> HomologyCertificate {
        let mut cert = homology(&nerve(self, bound + 1), bound);
        let n = self.num_objects();
        let initial = (0..n).find(|&a| (0..n).all(|b| self.hom(a, b).len() == 1));
        let fin = (0..n).find(|&a| (0..n).all(|b| self.hom(b, a).len() == 1));
        cert.witness = match (initial, fin) {
            (Some(a), _) => Some(Witness { kind: WitnessKind::Initial, object: self.objects()[a].clone() }),
            (None, Some(a)) => Some(Witness { kind: WitnessKind::Final, object: self.objects()[a].clone() }),
            _ => None,
        };
        if cert.witness.is_some() {
            assert!(cert.is_acyclic(), "category with an initial or final object has nontrivial homology");
            cert.grade = Grade::Witness;
        }
        cert
    }
}

/// Tries a witness first, then falls back to homology.
pub fn contractibility_certificate<T: Contractible + ?Sized>(x: &T, bound: usize) -> HomologyCertificate {
    x.certificate(bound)
}

/// Searches for an extra degeneracy `h` with apex `v`: `d_0 h = id`,
/// `d_{i+1} h = h d_i`, `h(s_i y) = s_{i+1} h(y)`, and `d_1 h(w) = v` on
/// vertices. Its existence makes the realization contractible. Choices are
/// greedy, so a `None` is inconclusive.
fn cone_point(x: &FiniteSimplicialSet, kind: WitnessKind) -> Option<Witness> {
    let top = x.dim();
    let levels: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>> = (1..=top + 1)
        .map(|m| {
            let mut by_faces: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for s in x.simplices(m) {
                by_faces.entry((0..=m).map(|k| x.face(&s, k)).collect()).or_default().push(s);
            }
            by_faces
        })
        .collect();
    'apex: for v in x.gens(0) {
        let apex = SimplexRef::nondeg(v);
        let mut h: HashMap<GenId, SimplexRef> = HashMap::new();
        let lift = |h: &HashMap<GenId, SimplexRef>, y: &SimplexRef| -> SimplexRef {
            let mut out = h[&y.gen].clone();
            for &i in y.word.iter().rev() {
                out = x.degeneracy(&out, i + 1);
            }
            out
        };
        for (n, level) in levels.iter().enumerate().take(top + 1) {
            for g in x.gens(n) {
                let sigma = SimplexRef::nondeg(g);
                let mut want = vec![sigma.clone()];
                if n == 0 {
                    want.push(apex.clone());
                } else {
                    want.extend((0..=n).map(|i| lift(&h, &x.face(&sigma, i))));
                }
                match level.get(&want).and_then(|c| c.first()) {
                    Some(tau) => {
                        h.insert(g, tau.clone());
                    }
                    None => continue 'apex,
                }
            }
        }
        return Some(Witness { kind, object: x.label(v).to_string() });
    }
    None
}

/// The poset of linearly ordered subsets `S ⊆ [m] × [n]` whose projection to
/// `[m]` is onto, ordered by inclusion. Its nerve is a deformation retract
/// of the nerve of the category of spans `[m] <<- [k] -> [n]`.
pub fn surjective_chain_poset(m: usize, n: usize) -> FinCategory {
    use itertools::Itertools;
    let points: Vec<(usize, usize)> = (0..=m).cartesian_product(0..=n).collect();
    let mut subsets: Vec<Vec<(usize, usize)>> = Vec::new();
    for k in m + 1..=m + n + 1 {
        for s in points.iter().copied().combinations(k) {
            let chain = s.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1);
            let onto = (0..=m).all(|i| s.iter().any(|p| p.0 == i));
            if chain && onto {
                subsets.push(s);
            }
        }
    }
    let names: Vec<String> = subsets.iter().map(|s| s.iter().map(|p| format!("{}{}", p.0, p.1)).join(".")).collect();
    let sets: Vec<BTreeSet<(usize, usize)>> = subsets.iter().map(|s| s.iter().copied().collect()).collect();
    FinCategory::from_poset(&names, |a, b| sets[a].is_subset(&sets[b])).expect("inclusion is a partial order")
}

/// Contractibility certificate for the span category at `(m, n)`, computed
/// on the surjective-chain poset through its nerve dimension `n`.
pub fn span_category_certificate(m: usize, n: usize) -> HomologyCertificate {
    contractibility_certificate(&surjective_chain_poset(m, n), n.max(1))
}
