use std::collections::{BTreeSet, HashMap};

use super::poset::{bits, interval, mask_of, Subset};
use crate::sset::{codegeneracy, uniquify, FiniteSimplicialSet, GenId, SimplexRef, SimplicialMap};
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// A simplex of `Hom_{C[Δⁿ]}(0, n)` pushed forward along a nondegenerate
/// `n`-simplex of the base: a weakly increasing chain of subsets of
/// `[0, n]`, each containing `0` and `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub sigma: GenId,
    pub chain: Vec<Subset>,
}

/// A composable string of atoms; the empty string is an identity.
pub type AtomString = Vec<Atom>;

/// `C[ρ]` applied to a chain, for any simplex `ρ` of the base: restrict to
/// the face spanned by the top subset, then push through its degeneracy.
pub fn push_atom(s: &FiniteSimplicialSet, rho: &SimplexRef, chain: &[Subset]) -> Vec<Atom> {
    let top = *chain.last().expect("nonempty chain");
    let verts: Vec<usize> = bits(top).collect();
    let face = s.restrict(rho, &verts);
    if face.gen.dim == 0 {
        return Vec::new();
    }
    let surj = face.surjection();
    let mut pos = [0usize; 32];
    for (p, &v) in verts.iter().enumerate() {
        pos[v] = p;
    }
    let chain = chain.iter().map(|&u| mask_of(bits(u).map(|b| surj[pos[b]]))).collect();
    vec![Atom { sigma: face.gen, chain }]
}

/// All one-step rewrites of an atom: shrinking to the face spanned by its
/// top subset, and splitting at an interior vertex of its bottom subset.
fn rewrites(s: &FiniteSimplicialSet, a: &Atom) -> Vec<Vec<Atom>> {
    let n = a.sigma.dim;
    let sigma = SimplexRef::nondeg(a.sigma);
    let mut out = Vec::new();
    let top = *a.chain.last().unwrap();
    if top != interval(0, n) {
        out.push(push_atom(s, &sigma, &a.chain));
    }
    for v in bits(a.chain[0]).filter(|&v| v > 0 && v < n) {
        let left: Vec<Subset> = a.chain.iter().map(|&u| u & interval(0, v)).collect();
        let right: Vec<Subset> = a.chain.iter().map(|&u| u & interval(v, n)).collect();
        let mut pieces = push_atom(s, &sigma, &left);
        pieces.extend(push_atom(s, &sigma, &right));
        out.push(pieces);
    }
    out
}

/// Fully reduced form: every atom uses all its vertices and has no interior
/// vertex in its bottom subset.
pub fn reduce_string(s: &FiniteSimplicialSet, w: &[Atom]) -> AtomString {
    let mut out = Vec::new();
    let mut stack: Vec<Atom> = w.iter().rev().cloned().collect();
    while let Some(a) = stack.pop() {
        let n = a.sigma.dim;
        let top = *a.chain.last().unwrap();
        let sigma = SimplexRef::nondeg(a.sigma);
        if top != interval(0, n) {
            stack.extend(push_atom(s, &sigma, &a.chain).into_iter().rev());
        } else if let Some(v) = bits(a.chain[0]).find(|&v| v > 0 && v < n) {
            let left: Vec<Subset> = a.chain.iter().map(|&u| u & interval(0, v)).collect();
            let right: Vec<Subset> = a.chain.iter().map(|&u| u & interval(v, n)).collect();
            let mut pieces = push_atom(s, &sigma, &left);
            pieces.extend(push_atom(s, &sigma, &right));
            stack.extend(pieces.into_iter().rev());
        } else {
            out.push(a);
        }
    }
    out
}

fn is_degenerate_at(w: &[Atom], i: usize) -> bool {
    w.iter().all(|a| a.chain[i] == a.chain[i + 1])
}

fn delete_level(w: &[Atom], i: usize) -> AtomString {
    w.iter()
        .map(|a| {
            let mut c = a.chain.clone();
            c.remove(i);
            Atom { sigma: a.sigma, chain: c }
        })
        .collect()
}

/// Endpoints and directed-graph structure of the nondegenerate simplices.
pub(crate) struct Paths {
    /// Nondegenerate simplices of positive dimension starting at a vertex.
    out: Vec<Vec<GenId>>,
    ends: HashMap<GenId, (usize, usize)>,
}

impl Paths {
    pub(crate) fn new(s: &FiniteSimplicialSet) -> Self {
        let mut out = vec![Vec::new(); s.num_gens(0)];
        let mut ends = HashMap::new();
        for d in 1..=s.top_dim() {
            for g in s.gens(d) {
                let r = SimplexRef::nondeg(g);
                let (a, b) = (s.vertex(&r, 0).idx, s.vertex(&r, d).idx);
                out[a].push(g);
                ends.insert(g, (a, b));
            }
        }
        Paths { out, ends }
    }

    fn reach(&self, from: usize, forward: bool) -> Vec<bool> {
        let n = self.out.len();
        let mut seen = vec![false; n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for (&_, &(a, b)) in self.ends.iter() {
                let (p, q) = if forward { (a, b) } else { (b, a) };
                if p == v && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// Vertices lying on some path from `x` to `y`; fails on directed cycles.
    pub(crate) fn between(&self, x: usize, y: usize) -> Result<Vec<bool>> {
        let fwd = self.reach(x, true);
        let bwd = self.reach(y, false);
        let on: Vec<bool> = (0..self.out.len()).map(|v| fwd[v] && bwd[v]).collect();
        // a cycle through usable vertices makes the strings unbounded
        let mut state = vec![0u8; on.len()];
        fn dfs(v: usize, p: &Paths, on: &[bool], state: &mut [u8]) -> bool {
            state[v] = 1;
            for g in &p.out[v] {
                let b = p.ends[g].1;
                if !on[b] {
                    continue;
                }
                if state[b] == 1 || (state[b] == 0 && !dfs(b, p, on, state)) {
                    return false;
                }
            }
            state[v] = 2;
            true
        }
        for v in 0..on.len() {
            if on[v] && state[v] == 0 && !dfs(v, self, &on, &mut state) {
                return Err(Error::Precondition("directed cycle of nondegenerate simplices between the endpoints".into()));
            }
        }
        Ok(on)
    }

    /// Largest total number of interior vertices along a string from `x` to
    /// `y`; no nondegenerate simplex of the hom complex exceeds it.
    pub(crate) fn dimension_bound(&self, x: usize, y: usize, on: &[bool]) -> usize {
        let mut memo: HashMap<usize, Option<usize>> = HashMap::new();
        fn best(v: usize, y: usize, p: &Paths, on: &[bool], memo: &mut HashMap<usize, Option<usize>>) -> Option<usize> {
            if let Some(r) = memo.get(&v) {
                return *r;
            }
            let mut r = if v == y { Some(0) } else { None };
            for g in &p.out[v] {
                let b = p.ends[g].1;
                if on[b] {
                    if let Some(t) = best(b, y, p, on, memo) {
                        r = Some(r.map_or(t + g.dim - 1, |c: usize| c.max(t + g.dim - 1)));
                    }
                }
            }
            memo.insert(v, r);
            r
        }
        best(x, y, self, on, &mut memo).unwrap_or(0)
    }

    /// Every string of atoms from `x` to `y` at level `m`.
    fn strings(&self, x: usize, y: usize, on: &[bool], m: usize) -> Vec<AtomString> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.walk(x, y, on, m, &mut cur, &mut out);
        out
    }

    fn walk(&self, v: usize, y: usize, on: &[bool], m: usize, cur: &mut AtomString, out: &mut Vec<AtomString>) {
        if v == y {
            out.push(cur.clone());
            return;
        }
        for &g in &self.out[v] {
            let b = self.ends[&g].1;
            if !on[b] {
                continue;
            }
            for chain in chains(g.dim, m) {
                cur.push(Atom { sigma: g, chain });
                self.walk(b, y, on, m, cur, out);
                cur.pop();
            }
        }
    }
}

/// Weakly increasing chains `U_0 ⊆ … ⊆ U_m` of subsets of `[0, n]`
/// containing both ends.
fn chains(n: usize, m: usize) -> Vec<Vec<Subset>> {
    let interior: Vec<usize> = (1..n).collect();
    let base = mask_of([0, n]);
    let k = interior.len();
    let choices = m + 2;
    let total = choices.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let mut entry = vec![0usize; k];
            for e in entry.iter_mut() {
                *e = code % choices;
                code /= choices;
            }
            (0..=m).map(|l| base | mask_of(interior.iter().zip(&entry).filter(|(_, &t)| t <= l).map(|(&v, _)| v))).collect()
        })
        .collect()
}

/// `Hom_{C[S]}(x, y)` through a dimension bound.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub x: GenId,
    pub y: GenId,
    pub set: FiniteSimplicialSet,
    /// Per level, every string of atoms and the simplex it names.
    classes: Vec<HashMap<AtomString, SimplexRef>>,
    reps: Vec<Vec<AtomString>>,
}

impl HomComplex {
    /// The simplex named by a string of atoms, if within the bound.
    pub fn simplex_of(&self, w: &[Atom]) -> Option<&SimplexRef> {
        let m = w.first().map_or(0, |a| a.chain.len() - 1);
        self.classes.get(m)?.get(w)
    }

    /// As [`simplex_of`](Self::simplex_of) at an explicit level; needed for identities.
    pub fn simplex_at(&self, m: usize, w: &[Atom]) -> Option<&SimplexRef> {
        self.classes.get(m)?.get(w)
    }

    pub fn representative(&self, g: GenId) -> &AtomString {
        &self.reps[g.dim][g.idx]
    }

    pub fn bound(&self) -> usize {
        self.classes.len() - 1
    }
}

/// `Hom_{C[S]}(x, y)` through `dim_bound`, as a levelwise coequalizer.
///
/// Level `m` is the quotient of all strings of atoms by the relations of
/// the simplex category and composition in each `C[Δⁿ]`. Fails if a
/// directed cycle of nondegenerate simplices lies between `x` and `y`.
pub fn hom_complex(s: &FiniteSimplicialSet, x: &str, y: &str, dim_bound: usize) -> Result<HomComplex> {
    let gx = s.gen_by_label(x).filter(|g| g.dim == 0).ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
    let gy = s.gen_by_label(y).filter(|g| g.dim == 0).ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
    let paths = Paths::new(s);
    hom_complex_with(s, &paths, gx, gy, dim_bound)
}

/// The largest dimension in which `Hom_{C[S]}(x, y)` can have a nondegenerate simplex.
pub fn hom_dimension_bound(s: &FiniteSimplicialSet, x: &str, y: &str) -> Result<usize> {
    let gx = s.gen_by_label(x).ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
    let gy = s.gen_by_label(y).ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
    let paths = Paths::new(s);
    let on = paths.between(gx.idx, gy.idx)?;
    Ok(paths.dimension_bound(gx.idx, gy.idx, &on))
}

pub(crate) fn hom_complex_with(s: &FiniteSimplicialSet, paths: &Paths, gx: GenId, gy: GenId, dim_bound: usize) -> Result<HomComplex> {
    let on = paths.between(gx.idx, gy.idx)?;
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    let mut reps: Vec<Vec<AtomString>> = Vec::new();
    let mut classes: Vec<HashMap<AtomString, SimplexRef>> = Vec::new();
    for m in 0..=dim_bound {
        let strings = if on[gx.idx] { paths.strings(gx.idx, gy.idx, &on, m) } else { Vec::new() };
        let index: HashMap<&AtomString, usize> = strings.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFind::new(strings.len());
        for (i, w) in strings.iter().enumerate() {
            for (p, a) in w.iter().enumerate() {
                for pieces in rewrites(s, a) {
                    let mut v = w[..p].to_vec();
                    v.extend(pieces);
                    v.extend_from_slice(&w[p + 1..]);
                    let j = *index.get(&v).expect("rewrites stay among the strings");
                    uf.union(i, j);
                }
            }
        }
        // a class is degenerate iff it has a degenerate member
        let mut degenerate: HashMap<usize, (usize, usize)> = HashMap::new();
        if m > 0 {
            for (i, w) in strings.iter().enumerate() {
                if let Some(k) = (0..m).find(|&k| is_degenerate_at(w, k)) {
                    degenerate.entry(uf.find(i)).or_insert((i, k));
                }
            }
        }
        let mut level_labels = Vec::new();
        let mut level_faces = Vec::new();
        let mut level_reps = Vec::new();
        let mut nf_of_root: HashMap<usize, SimplexRef> = HashMap::new();
        for i in 0..strings.len() {
            let r = uf.find(i);
            if nf_of_root.contains_key(&r) {
                continue;
            }
            let nf = match degenerate.get(&r) {
                Some(&(member, k)) => {
                    let lower = &classes[m - 1][&delete_level(&strings[member], k)];
                    let surj = lower.surjection();
                    let comp: Vec<usize> = codegeneracy(m - 1, k).iter().map(|&t| surj[t]).collect();
                    SimplexRef::from_surjection(lower.gen, &comp)
                }
                None => {
                    let g = GenId::new(m, level_labels.len());
                    let w = &strings[r];
                    level_labels.push(string_label(s, &reduce_string(s, w)));
                    level_faces.push(if m == 0 { Vec::new() } else { (0..=m).map(|k| classes[m - 1][&delete_level(w, k)].clone()).collect() });
                    level_reps.push(w.clone());
                    SimplexRef::nondeg(g)
                }
            };
            nf_of_root.insert(r, nf);
        }
        let level: HashMap<AtomString, SimplexRef> = strings.iter().enumerate().map(|(i, w)| (w.clone(), nf_of_root[&uf.find(i)].clone())).collect();
        labels.push(level_labels);
        faces.push(level_faces);
        reps.push(level_reps);
        classes.push(level);
    }
    uniquify(&mut labels);
    let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces)?;
    let remap = |r: &SimplexRef| SimplexRef { gen: GenId::new(r.gen.dim, perm[r.gen.dim][r.gen.idx]), word: r.word.clone() };
    for level in classes.iter_mut() {
        for v in level.values_mut() {
            *v = remap(v);
        }
    }
    let mut sorted_reps: Vec<Vec<AtomString>> = reps.iter().map(|l| vec![Vec::new(); l.len()]).collect();
    for (d, l) in reps.into_iter().enumerate() {
        for (i, w) in l.into_iter().enumerate() {
            sorted_reps[d][perm[d][i]] = w;
        }
    }
    Ok(HomComplex { x: gx, y: gy, set, classes, reps: sorted_reps })
}

/// `σ[U_0<U_1<…]` per atom, joined by `·`; the identity is `id`.
fn string_label(s: &FiniteSimplicialSet, w: &[Atom]) -> String {
    if w.is_empty() {
        return "id".into();
    }
    w.iter()
        .map(|a| {
            let chain: Vec<String> = a.chain.iter().map(|&u| bits(u).map(|b| b.to_string()).collect::<Vec<_>>().join("")).collect();
            let mut dedup = chain.clone();
            dedup.dedup();
            if a.sigma.dim == 1 {
                s.label(a.sigma).to_string()
            } else {
                format!("{}[{}]", s.label(a.sigma), dedup.join("<"))
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// The map `Hom_{C[S]}(x, y) -> Hom_{C[T]}(f x, f y)` induced by `f : S -> T`.
pub fn hom_complex_map(f: &SimplicialMap, s: &FiniteSimplicialSet, t: &FiniteSimplicialSet, hs: &HomComplex, ht: &HomComplex) -> Result<SimplicialMap> {
    f.validate(s, t)?;
    let mut images = Vec::new();
    for d in 0..=hs.set.top_dim() {
        let mut level = Vec::new();
        for g in hs.set.gens(d) {
            let w = hs.representative(g);
            let mut v = Vec::new();
            for a in w {
                v.extend(push_atom(t, f.image_of_gen(a.sigma), &a.chain));
            }
            let img = ht.simplex_at(d, &v).ok_or_else(|| Error::Precondition("image string outside the target hom complex".into()))?;
            level.push(img.clone());
        }
        images.push(level);
    }
    let m = SimplicialMap::new(images);
    m.validate(&hs.set, &ht.set)?;
    Ok(m)
}

/// Concatenation of strings, `v` after `w`.
pub fn concat(w: &[Atom], v: &[Atom]) -> AtomString {
    w.iter().chain(v).cloned().collect()
}

/// Distinct reduced strings: the necklace count used as an independent check.
pub fn reduced_strings(s: &FiniteSimplicialSet, hom: &HomComplex, m: usize) -> BTreeSet<AtomString> {
    hom.classes[m].keys().map(|w| reduce_string(s, w)).collect()
}
