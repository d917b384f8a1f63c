use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::simplex::{codegeneracy, coface, is_monotone, GenId, Operator, SimplexRef};
use super::SimplicialMap;
use crate::{Error, Result};

/// A finite simplicial set presented by its nondegenerate generators.
///
/// Labels are sorted within each dimension and unique across the whole set,
/// so structural equality is equality of presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, GenId>,
}

impl FiniteSimplicialSet {
    /// The empty simplicial set.
    pub fn empty() -> Self {
        FiniteSimplicialSet { labels: vec![Vec::new()], faces: vec![Vec::new()], lookup: HashMap::new() }
    }

    /// Builds a complex from generators given in arbitrary order per dimension.
    ///
    /// Face entries refer to the *input* indices. Labels are sorted, references
    /// are remapped, and all simplicial identities are verified. A label that
    /// reappears in a higher dimension gets a `#d` suffix.
    pub fn from_indexed(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<SimplexRef>>>) -> Result<Self> {
        Self::from_indexed_perm(labels, faces).map(|(x, _)| x)
    }

    /// As [`from_indexed`](Self::from_indexed), also returning for every
    /// dimension the map from input index to final index.
    pub fn from_indexed_perm(mut labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<SimplexRef>>>) -> Result<(Self, Vec<Vec<usize>>)> {
        if labels.is_empty() {
            labels.push(Vec::new());
        }
        if faces.len() > labels.len() {
            return Err(Error::Malformed("face table longer than generator table".into()));
        }
        let mut faces = faces;
        faces.resize(labels.len(), Vec::new());
        faces[0] = vec![Vec::new(); labels[0].len()];
        for d in 1..labels.len() {
            if faces[d].len() != labels[d].len() {
                return Err(Error::Malformed(format!("dimension {d}: {} labels but {} face lists", labels[d].len(), faces[d].len())));
            }
        }
        // global uniqueness
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (d, ls) in labels.iter_mut().enumerate() {
            let mut here = BTreeSet::new();
            for l in ls.iter_mut() {
                if !here.insert(l.clone()) {
                    return Err(Error::Malformed(format!("duplicate label `{l}` in dimension {d}")));
                }
                while seen.contains_key(l.as_str()) {
                    l.push_str(&format!("#{d}"));
                }
                seen.insert(l.clone(), d);
            }
        }
        // canonical order
        let perms: Vec<Vec<usize>> = labels
            .iter()
            .map(|ls| {
                let mut order: Vec<usize> = (0..ls.len()).collect();
                order.sort_by(|&a, &b| ls[a].cmp(&ls[b]));
                let mut inv = vec![0; ls.len()];
                for (new, &old) in order.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            })
            .collect();
        let mut new_labels: Vec<Vec<String>> = labels.iter().map(|ls| vec![String::new(); ls.len()]).collect();
        let mut new_faces: Vec<Vec<Vec<SimplexRef>>> = labels.iter().map(|ls| vec![Vec::new(); ls.len()]).collect();
        for d in 0..labels.len() {
            for old in 0..labels[d].len() {
                let new = perms[d][old];
                new_labels[d][new] = labels[d][old].clone();
                let mut fs = Vec::with_capacity(d + 1);
                for r in &faces[d][old] {
                    if r.gen.dim >= labels.len() || r.gen.idx >= labels[r.gen.dim].len() {
                        return Err(Error::Malformed(format!("face of `{}` refers to a missing generator", labels[d][old])));
                    }
                    fs.push(SimplexRef { gen: GenId::new(r.gen.dim, perms[r.gen.dim][r.gen.idx]), word: r.word.clone() });
                }
                new_faces[d][new] = fs;
            }
        }
        let mut lookup = HashMap::new();
        for (d, ls) in new_labels.iter().enumerate() {
            for (i, l) in ls.iter().enumerate() {
                lookup.insert(l.clone(), GenId::new(d, i));
            }
        }
        let x = FiniteSimplicialSet { labels: new_labels, faces: new_faces, lookup };
        x.validate()?;
        Ok((x, perms))
    }

    fn validate(&self) -> Result<()> {
        for d in 1..self.labels.len() {
            for (i, fs) in self.faces[d].iter().enumerate() {
                let name = &self.labels[d][i];
                if fs.len() != d + 1 {
                    return Err(Error::Malformed(format!("`{name}` has {} faces, expected {}", fs.len(), d + 1)));
                }
                for f in fs {
                    if !f.is_normal() || f.dim() != d - 1 || f.gen.dim >= d {
                        return Err(Error::Malformed(format!("`{name}` has a face not in normal form of dimension {}", d - 1)));
                    }
                }
            }
        }
        for d in 2..self.labels.len() {
            for i in 0..self.labels[d].len() {
                let g = SimplexRef::nondeg(GenId::new(d, i));
                for j in 1..=d {
                    for k in 0..j {
                        let a = self.face(&self.face(&g, j), k);
                        let b = self.face(&self.face(&g, k), j - 1);
                        if a != b {
                            return Err(Error::Malformed(format!("simplicial identity d{k}d{j} = d{}d{k} fails on `{}`", j - 1, self.labels[d][i])));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top_dim(&self) -> usize {
        self.labels.len() - 1
    }

    /// Highest dimension carrying a generator (0 for the empty set).
    pub fn dim(&self) -> usize {
        (0..self.labels.len()).rev().find(|&d| !self.labels[d].is_empty()).unwrap_or(0)
    }

    pub fn num_gens(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, |v| v.len())
    }

    pub fn gens(&self, d: usize) -> impl Iterator<Item = GenId> + '_ {
        (0..self.num_gens(d)).map(move |i| GenId::new(d, i))
    }

    /// All generators ordered by dimension, then label.
    pub fn all_gens(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.labels.len()).flat_map(move |d| self.gens(d))
    }

    pub fn total_gens(&self) -> usize {
        self.labels.iter().map(|v| v.len()).sum()
    }

    pub fn label(&self, g: GenId) -> &str {
        &self.labels[g.dim][g.idx]
    }

    pub fn labels(&self, d: usize) -> &[String] {
        &self.labels[d]
    }

    pub fn gen_by_label(&self, l: &str) -> Option<GenId> {
        self.lookup.get(l).copied()
    }

    pub fn gen_face(&self, g: GenId, k: usize) -> &SimplexRef {
        &self.faces[g.dim][g.idx][k]
    }

    pub fn gen_faces(&self, g: GenId) -> &[SimplexRef] {
        &self.faces[g.dim][g.idx]
    }

    /// Nondegenerate generator counts, trailing zeros trimmed.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.labels.iter().map(|l| l.len()).collect();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// `x ∘ θ` for a monotone map `θ : [k] -> [dim x]`, in normal form.
    pub fn restrict(&self, x: &SimplexRef, theta: &[usize]) -> SimplexRef {
        debug_assert!(is_monotone(theta));
        let eta = x.surjection();
        let phi: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        self.restrict_gen(x.gen, phi)
    }

    fn restrict_gen(&self, g: GenId, phi: Vec<usize>) -> SimplexRef {
        let d = g.dim;
        let mut present = vec![false; d + 1];
        for &v in &phi {
            present[v] = true;
        }
        if let Some(v) = (0..=d).rev().find(|&v| !present[v]) {
            let phi2: Vec<usize> = phi.iter().map(|&p| if p > v { p - 1 } else { p }).collect();
            let face = &self.faces[d][g.idx][v];
            return self.restrict(face, &phi2);
        }
        SimplexRef::from_surjection(g, &phi)
    }

    pub fn face(&self, x: &SimplexRef, k: usize) -> SimplexRef {
        self.restrict(x, &coface(x.dim(), k))
    }

    pub fn degeneracy(&self, x: &SimplexRef, k: usize) -> SimplexRef {
        self.restrict(x, &codegeneracy(x.dim(), k))
    }

    pub fn apply_operator(&self, x: &SimplexRef, op: Operator) -> Result<SimplexRef> {
        self.check_ref(x)?;
        let n = x.dim();
        match op {
            Operator::Face(k) if n == 0 || k > n => Err(Error::IndexOutOfRange { index: k, limit: n }),
            Operator::Face(k) => Ok(self.face(x, k)),
            Operator::Degeneracy(k) if k > n => Err(Error::IndexOutOfRange { index: k, limit: n }),
            Operator::Degeneracy(k) => Ok(self.degeneracy(x, k)),
        }
    }

    pub fn check_ref(&self, x: &SimplexRef) -> Result<()> {
        if x.gen.dim >= self.labels.len() || x.gen.idx >= self.labels[x.gen.dim].len() {
            return Err(Error::Precondition(format!("generator {:?} not in complex", x.gen)));
        }
        if !x.is_normal() {
            return Err(Error::Precondition(format!("degeneracy word {:?} not in normal form", x.word)));
        }
        Ok(())
    }

    /// Vertex `v` of a simplex.
    pub fn vertex(&self, x: &SimplexRef, v: usize) -> GenId {
        self.restrict(x, &[v]).gen
    }

    pub fn vertices(&self, x: &SimplexRef) -> Vec<GenId> {
        (0..=x.dim()).map(|v| self.vertex(x, v)).collect()
    }

    /// The edge of `x` from vertex `a` to vertex `b`.
    pub fn edge(&self, x: &SimplexRef, a: usize, b: usize) -> SimplexRef {
        self.restrict(x, &[a, b])
    }

    /// Every `m`-simplex, degenerate ones included, in (generator, word) order.
    pub fn simplices(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for d in 0..=m.min(self.top_dim()) {
            let combos: Vec<Vec<usize>> = (0..m).combinations(m - d).collect();
            for g in self.gens(d) {
                for c in &combos {
                    let mut word = c.clone();
                    word.reverse();
                    out.push(SimplexRef { gen: g, word });
                }
            }
        }
        out.sort();
        out
    }

    pub fn count_simplices(&self, m: usize) -> usize {
        (0..=m.min(self.top_dim())).map(|d| self.num_gens(d) * binomial(m, m - d)).sum()
    }

    /// Human-readable name of a simplex: the label, prefixed by its word.
    pub fn ref_label(&self, x: &SimplexRef) -> String {
        if x.word.is_empty() {
            self.label(x.gen).to_string()
        } else {
            format!("s{:?}({})", x.word, self.label(x.gen))
        }
    }

    pub fn parse_ref(&self, label: &str, word: &[usize]) -> Result<SimplexRef> {
        let g = self.gen_by_label(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let r = SimplexRef { gen: g, word: word.to_vec() };
        self.check_ref(&r)?;
        Ok(r)
    }

    /// Whether `gens` is closed under taking faces.
    pub fn is_closed(&self, gens: &BTreeSet<GenId>) -> bool {
        gens.iter().all(|&g| self.gen_faces(g).iter().all(|f| gens.contains(&f.gen)))
    }

    /// The smallest face-closed set containing `seed`.
    pub fn closure(&self, seed: impl IntoIterator<Item = GenId>) -> BTreeSet<GenId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<GenId> = seed.into_iter().collect();
        while let Some(g) = stack.pop() {
            if out.insert(g) {
                stack.extend(self.gen_faces(g).iter().map(|f| f.gen));
            }
        }
        out
    }

    /// The simplicial subset on a face-closed generator set, with its inclusion.
    pub fn subcomplex(&self, keep: &BTreeSet<GenId>) -> Result<(FiniteSimplicialSet, SimplicialMap)> {
        if !self.is_closed(keep) {
            return Err(Error::Precondition("generator set not closed under faces".into()));
        }
        let top = keep.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut index: HashMap<GenId, GenId> = HashMap::new();
        let mut labels = vec![Vec::new(); top + 1];
        for &g in keep {
            index.insert(g, GenId::new(g.dim, labels[g.dim].len()));
            labels[g.dim].push(self.label(g).to_string());
        }
        let mut faces = vec![Vec::new(); top + 1];
        for &g in keep {
            let fs = self.gen_faces(g).iter().map(|f| SimplexRef { gen: index[&f.gen], word: f.word.clone() }).collect();
            faces[g.dim].push(fs);
        }
        let sub = FiniteSimplicialSet::from_indexed(labels, faces)?;
        let images = (0..=sub.top_dim()).map(|d| sub.gens(d).map(|g| SimplexRef::nondeg(self.gen_by_label(sub.label(g)).unwrap())).collect()).collect();
        Ok((sub, SimplicialMap::new(images)))
    }

    /// The opposite simplicial set: vertex order reversed in every simplex.
    pub fn opposite(&self) -> FiniteSimplicialSet {
        let faces = self.faces.iter().map(|fs| fs.iter().map(|f| f.iter().rev().map(opposite_ref).collect()).collect()).collect();
        let lookup = self.lookup.clone();
        FiniteSimplicialSet { labels: self.labels.clone(), faces, lookup }
    }

    /// Lifts `top_dim` to at least `d` without adding generators.
    pub fn with_top_dim(mut self, d: usize) -> Self {
        while self.labels.len() <= d {
            self.labels.push(Vec::new());
            self.faces.push(Vec::new());
        }
        self
    }
}

/// The same simplex read in the opposite simplicial set.
pub fn opposite_ref(x: &SimplexRef) -> SimplexRef {
    let f = x.surjection();
    let (m, k) = (f.len() - 1, x.gen.dim);
    let g: Vec<usize> = (0..=m).map(|i| k - f[m - i]).collect();
    SimplexRef::from_surjection(x.gen, &g)
}

/// Makes labels unique within each dimension by appending primes.
pub fn uniquify(labels: &mut [Vec<String>]) {
    for ls in labels.iter_mut() {
        let mut seen = BTreeSet::new();
        for l in ls.iter_mut() {
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
