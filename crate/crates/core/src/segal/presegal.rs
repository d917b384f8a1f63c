use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::sset::{codegeneracy, coface, collapses, epi_mono, CategoryJson, FinCategory, FiniteSimplicialSet, GenId, Morphism, SimplexRef};
use crate::{Error, Result};

/// Per `(sequence, k)`, the index map of a face or degeneracy.
type IndexMaps = HashMap<(Vec<usize>, usize), Vec<usize>>;
/// An element `e` of `X(seq)`, as `(seq, e)`.
type Element = (Vec<usize>, usize);
type Shift = dyn Fn(&[usize], usize) -> Option<Vec<usize>>;

/// A functor `X : Δ_S^op -> FinSet` on sequences of at most `bound + 1`
/// objects, stored through its face and degeneracy maps. `X([s])` is a
/// single point for every `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSegalSet {
    objects: Vec<String>,
    bound: usize,
    values: BTreeMap<Vec<usize>, Vec<String>>,
    faces: IndexMaps,
    degeneracies: IndexMaps,
}

fn all_sequences(objects: usize, bound: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=bound).flat_map(move |n| (0..=n).map(|_| 0..objects).multi_cartesian_product())
}

fn compose_seq(seq: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| seq[i]).collect()
}

impl PreSegalSet {
    /// Tabulates `value` on every sequence and the action of faces and
    /// degeneracies through `act(f, seq, e)`, the image of `e ∈ X(seq)`
    /// under `f : [m] -> [n]`; then checks the simplicial identities.
    pub fn tabulate<E: Clone + Eq + Hash>(
        objects: Vec<String>,
        bound: usize,
        value: impl Fn(&[usize]) -> Vec<E>,
        label: impl Fn(&E) -> String,
        act: impl Fn(&[usize], &[usize], &E) -> E,
    ) -> Result<Self> {
        let mut elems: BTreeMap<Vec<usize>, Vec<E>> = BTreeMap::new();
        for seq in all_sequences(objects.len(), bound) {
            let v = value(&seq);
            if !v.is_empty() {
                elems.insert(seq, v);
            }
        }
        let lookup: HashMap<&Vec<usize>, HashMap<&E, usize>> = elems.iter().map(|(s, v)| (s, v.iter().enumerate().map(|(i, e)| (e, i)).collect())).collect();
        let image = |seq: &[usize], f: &[usize], e: &E| -> Result<usize> {
            let target = compose_seq(seq, f);
            let img = act(f, seq, e);
            lookup.get(&target).and_then(|m| m.get(&img)).copied().ok_or_else(|| Error::Malformed(format!("action lands outside X({target:?})")))
        };
        let mut faces = HashMap::new();
        let mut degeneracies = HashMap::new();
        for (seq, v) in &elems {
            let n = seq.len() - 1;
            if n >= 1 {
                for k in 0..=n {
                    let f = coface(n, k);
                    faces.insert((seq.clone(), k), v.iter().map(|e| image(seq, &f, e)).collect::<Result<Vec<_>>>()?);
                }
            }
            if n < bound {
                for k in 0..=n {
                    let f = codegeneracy(n, k);
                    degeneracies.insert((seq.clone(), k), v.iter().map(|e| image(seq, &f, e)).collect::<Result<Vec<_>>>()?);
                }
            }
        }
        let values = elems.into_iter().map(|(s, v)| (s, v.iter().map(&label).collect())).collect();
        let p = PreSegalSet { objects, bound, values, faces, degeneracies };
        p.validate()?;
        Ok(p)
    }

    /// `Fr^n(A)`: objects `0..n`, `X(c)` empty for non-monotone `c`, a point
    /// for constant `c`, and `A` otherwise.
    pub fn free_cell(n: usize, generators: &[String], bound: usize) -> Result<Self> {
        let objects = (0..=n).map(|i| i.to_string()).collect();
        let constant = |s: &[usize]| s.iter().all(|&v| v == s[0]);
        PreSegalSet::tabulate(
            objects,
            bound,
            |s| {
                if !s.windows(2).all(|w| w[0] <= w[1]) {
                    vec![]
                } else if constant(s) {
                    vec![None]
                } else {
                    (0..generators.len()).map(Some).collect()
                }
            },
            |e| e.map_or("*".to_string(), |a| generators[a].clone()),
            |f, s, e| if constant(&compose_seq(s, f)) { None } else { *e },
        )
    }

    /// The nerve-like datum `X[s₀,…,sₙ] = Hom(s₀,s₁) × … × Hom(sₙ₋₁,sₙ)`.
    pub fn from_category(c: &FinCategory, bound: usize) -> Result<Self> {
        let chains = |s: &[usize]| -> Vec<Vec<usize>> { s.windows(2).map(|w| c.hom(w[0], w[1])).multi_cartesian_product().collect() };
        let label = |t: &Vec<usize>| if t.is_empty() { "*".to_string() } else { t.iter().map(|&f| c.morphism(f).name.as_str()).join("|") };
        PreSegalSet::tabulate(c.objects().to_vec(), bound, chains, label, |f, s, t| {
            f.windows(2).map(|w| t[w[0]..w[1]].iter().fold(c.identity(s[w[0]]), |acc, &g| c.compose(acc, g))).collect()
        })
    }

    /// Points on constant sequences and nothing else.
    pub fn discrete(objects: Vec<String>, bound: usize) -> Result<Self> {
        PreSegalSet::tabulate(objects, bound, |s| if s.iter().all(|&v| v == s[0]) { vec![()] } else { vec![] }, |_| "*".to_string(), |_, _, _| ())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// `X(seq)`; empty when `seq` carries no elements or exceeds the bound.
    pub fn value(&self, seq: &[usize]) -> &[String] {
        self.values.get(seq).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Sequences with a nonempty value.
    pub fn supported(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<String>)> {
        self.values.iter()
    }

    pub fn face(&self, seq: &[usize], k: usize, e: usize) -> usize {
        self.faces[&(seq.to_vec(), k)][e]
    }

    pub fn degeneracy(&self, seq: &[usize], k: usize, e: usize) -> usize {
        self.degeneracies[&(seq.to_vec(), k)][e]
    }

    /// `X(f)(e)` for monotone `f : [m] -> [n]`, with the new sequence.
    pub fn act(&self, f: &[usize], seq: &[usize], e: usize) -> (Vec<usize>, usize) {
        let (image, surj) = epi_mono(f);
        let mut s = seq.to_vec();
        let mut e = e;
        for k in (0..seq.len()).rev().filter(|k| !image.contains(k)) {
            e = self.face(&s, k, e);
            s.remove(k);
        }
        let mut cs = collapses(&surj);
        cs.reverse();
        for c in cs {
            e = self.degeneracy(&s, c, e);
            s.insert(c, s[c]);
        }
        (s, e)
    }

    fn validate(&self) -> Result<()> {
        for s in 0..self.objects.len() {
            if self.value(&[s]).len() != 1 {
                return Err(Error::Malformed(format!("X([{}]) is not a point", self.objects[s])));
            }
        }
        let bad = |what: &str, seq: &[usize]| Error::Malformed(format!("simplicial identity {what} fails on X({seq:?})"));
        let d = |s: &[usize], k: usize, e: usize| -> (Vec<usize>, usize) {
            let mut t = s.to_vec();
            t.remove(k);
            (t, self.face(s, k, e))
        };
        let sg = |s: &[usize], k: usize, e: usize| -> (Vec<usize>, usize) {
            let mut t = s.to_vec();
            t.insert(k, s[k]);
            (t, self.degeneracy(s, k, e))
        };
        for (seq, v) in &self.values {
            let n = seq.len() - 1;
            for e in 0..v.len() {
                for j in 0..=n {
                    for i in 0..j {
                        if n >= 2 {
                            let (a, x) = d(seq, j, e);
                            let (b, y) = d(seq, i, e);
                            if d(&a, i, x) != d(&b, j - 1, y) {
                                return Err(bad("d_i d_j = d_{j-1} d_i", seq));
                            }
                        }
                    }
                }
                if n >= self.bound {
                    continue;
                }
                for j in 0..=n {
                    let (a, x) = sg(seq, j, e);
                    if d(&a, j, x) != (seq.clone(), e) || d(&a, j + 1, x) != (seq.clone(), e) {
                        return Err(bad("d_j s_j = d_{j+1} s_j = id", seq));
                    }
                    for i in 0..=n + 1 {
                        if n == 0 || i == j || i == j + 1 {
                            continue;
                        }
                        let (b, y) = d(seq, if i < j { i } else { i - 1 }, e);
                        let rhs = sg(&b, if i < j { j - 1 } else { j }, y);
                        if d(&a, i, x) != rhs {
                            return Err(bad("d_i s_j", seq));
                        }
                    }
                    if n + 1 < self.bound {
                        for i in 0..=j {
                            let (b, y) = sg(&a, i, x);
                            let (c, z) = sg(seq, i, e);
                            if (b, y) != sg(&c, j + 1, z) {
                                return Err(bad("s_i s_j = s_{j+1} s_i", seq));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The Set-level Segal condition: every
    /// `X[s₀,…,sₙ] -> X[s₀,s₁] × … × X[sₙ₋₁,sₙ]` is a bijection.
    pub fn segal_failure(&self) -> Option<String> {
        for seq in all_sequences(self.objects.len(), self.bound).filter(|s| s.len() >= 3) {
            let n = seq.len() - 1;
            let size: usize = seq.windows(2).map(|w| self.value(w).len()).product();
            let mut seen = HashMap::new();
            for e in 0..self.value(&seq).len() {
                let spine: Vec<usize> = (0..n).map(|i| self.act(&[i, i + 1], &seq, e).1).collect();
                if let Some(other) = seen.insert(spine, e) {
                    return Some(format!(
                        "X({}) has elements {} and {} with the same spine",
                        self.seq_name(&seq),
                        self.value(&seq)[other],
                        self.value(&seq)[e]
                    ));
                }
            }
            if seen.len() != size {
                return Some(format!("X({}) has {} elements but its spine product has {size}", self.seq_name(&seq), seen.len()));
            }
        }
        None
    }

    pub fn seq_name(&self, seq: &[usize]) -> String {
        format!("[{}]", seq.iter().map(|&s| self.objects[s].as_str()).join(","))
    }

    /// A label unique among all elements of all values.
    pub fn element_label(&self, seq: &[usize], e: usize) -> String {
        if seq.len() == 1 {
            self.objects[seq[0]].clone()
        } else {
            format!("{}@{}", self.value(seq)[e], self.seq_name(seq))
        }
    }

    pub fn to_json(&self) -> PreSegalJson {
        let names = |s: &[usize]| s.iter().map(|&i| self.objects[i].clone()).collect::<Vec<_>>();
        let map_json = |m: &IndexMaps, target: &dyn Fn(&[usize], usize) -> Vec<usize>| {
            let mut out: Vec<SegMapJson> = m
                .iter()
                .map(|((s, k), v)| {
                    let t = target(s, *k);
                    SegMapJson { seq: names(s), k: *k, map: v.iter().map(|&i| self.value(&t)[i].clone()).collect() }
                })
                .collect();
            out.sort_by(|a, b| (&a.seq, a.k).cmp(&(&b.seq, b.k)));
            out
        };
        PreSegalJson::Table {
            objects: self.objects.clone(),
            bound: self.bound,
            values: self.values.iter().map(|(s, v)| SegValueJson { seq: names(s), elements: v.clone() }).collect(),
            faces: map_json(&self.faces, &|s, k| {
                let mut t = s.to_vec();
                t.remove(k);
                t
            }),
            degeneracies: map_json(&self.degeneracies, &|s, k| {
                let mut t = s.to_vec();
                t.insert(k, s[k]);
                t
            }),
        }
    }

    pub fn from_json(j: &PreSegalJson) -> Result<Self> {
        match j {
            PreSegalJson::Free { n, generators, bound } => PreSegalSet::free_cell(*n, generators, *bound),
            PreSegalJson::Category { category, bound } => PreSegalSet::from_category(&FinCategory::from_json(category)?, *bound),
            PreSegalJson::Discrete { objects, bound } => PreSegalSet::discrete(objects.clone(), *bound),
            PreSegalJson::Table { objects, bound, values, faces, degeneracies } => table_from_json(objects, *bound, values, faces, degeneracies),
        }
    }
}

fn table_from_json(objects: &[String], bound: usize, values: &[SegValueJson], faces: &[SegMapJson], degens: &[SegMapJson]) -> Result<PreSegalSet> {
    let idx = |n: &String| objects.iter().position(|o| o == n).ok_or_else(|| Error::UnknownLabel(n.clone()));
    let seq_of = |v: &[String]| v.iter().map(idx).collect::<Result<Vec<usize>>>();
    let mut vals: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for v in values {
        let s = seq_of(&v.seq)?;
        if s.is_empty() || s.len() > bound + 1 {
            return Err(Error::Malformed(format!("sequence {:?} outside the length bound", v.seq)));
        }
        if !v.elements.is_empty() && vals.insert(s, v.elements.clone()).is_some() {
            return Err(Error::Malformed(format!("sequence {:?} listed twice", v.seq)));
        }
    }
    for s in 0..objects.len() {
        vals.entry(vec![s]).or_insert_with(|| vec!["*".to_string()]);
    }
    let read = |maps: &[SegMapJson], shift: &Shift| -> Result<IndexMaps> {
        let mut out = HashMap::new();
        for m in maps {
            let s = seq_of(&m.seq)?;
            let t = shift(&s, m.k).ok_or_else(|| Error::Malformed(format!("operator index {} out of range for {:?}", m.k, m.seq)))?;
            let target = vals.get(&t).map(Vec::as_slice).unwrap_or(&[]);
            let v = m.map.iter().map(|l| target.iter().position(|x| x == l).ok_or_else(|| Error::UnknownLabel(l.clone()))).collect::<Result<Vec<_>>>()?;
            if v.len() != vals.get(&s).map_or(0, Vec::len) {
                return Err(Error::Malformed(format!("map on {:?} has the wrong length", m.seq)));
            }
            out.insert((s, m.k), v);
        }
        Ok(out)
    };
    let faces = read(faces, &|s, k| {
        (k < s.len() && s.len() >= 2).then(|| {
            let mut t = s.to_vec();
            t.remove(k);
            t
        })
    })?;
    let degeneracies = read(degens, &|s, k| {
        (k < s.len()).then(|| {
            let mut t = s.to_vec();
            t.insert(k, s[k]);
            t
        })
    })?;
    for s in vals.keys() {
        let n = s.len() - 1;
        // single objects have no faces to supply
        for k in (0..=n).filter(|_| n >= 1) {
            if !faces.contains_key(&(s.clone(), k)) {
                return Err(Error::Malformed(format!("missing face d{k} on {s:?}")));
            }
        }
        if n < bound {
            for k in 0..=n {
                if !degeneracies.contains_key(&(s.clone(), k)) {
                    return Err(Error::Malformed(format!("missing degeneracy s{k} on {s:?}")));
                }
            }
        }
    }
    let p = PreSegalSet { objects: objects.to_vec(), bound, values: vals, faces, degeneracies };
    p.validate()?;
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegValueJson {
    pub seq: Vec<String>,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegMapJson {
    pub seq: Vec<String>,
    pub k: usize,
    pub map: Vec<String>,
}

/// Input formats: the free cell `Fr^n(A)`, the datum of a category, the
/// discrete datum, or an explicit table of values with face and
/// degeneracy maps (element labels of the target value).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PreSegalJson {
    Free { n: usize, generators: Vec<String>, bound: usize },
    Category { category: CategoryJson, bound: usize },
    Discrete { objects: Vec<String>, bound: usize },
    Table { objects: Vec<String>, bound: usize, values: Vec<SegValueJson>, faces: Vec<SegMapJson>, degeneracies: Vec<SegMapJson> },
}

/// `UnPre(S,X)_n = ⨿_{s₀,…,sₙ} X([s₀,…,sₙ])` through level `n_max`.
pub fn unpre(p: &PreSegalSet, n_max: usize) -> Result<FiniteSimplicialSet> {
    if n_max > p.bound {
        return Err(Error::Precondition(format!("level {n_max} exceeds the stored bound {}", p.bound)));
    }
    let levels: Vec<Vec<(Vec<usize>, usize)>> =
        (0..=n_max).map(|n| p.values.iter().filter(|(s, _)| s.len() == n + 1).flat_map(|(s, v)| (0..v.len()).map(move |e| (s.clone(), e))).collect()).collect();
    let face = |x: &(Vec<usize>, usize), k: usize| -> (Vec<usize>, usize) {
        let mut t = x.0.clone();
        t.remove(k);
        (t, p.face(&x.0, k, x.1))
    };
    let degen = |x: &(Vec<usize>, usize), k: usize| -> (Vec<usize>, usize) {
        let mut t = x.0.clone();
        t.insert(k, x.0[k]);
        (t, p.degeneracy(&x.0, k, x.1))
    };
    let degenerate_at = |x: &(Vec<usize>, usize)| -> Option<usize> {
        let n = x.0.len() - 1;
        (0..n).find(|&j| degen(&face(x, j), j) == *x)
    };
    let mut gen_of: HashMap<(Vec<usize>, usize), GenId> = HashMap::new();
    let mut cells: Vec<Vec<(Vec<usize>, usize)>> = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        let nd: Vec<(Vec<usize>, usize)> = level.iter().filter(|x| degenerate_at(x).is_none()).cloned().collect();
        for (i, x) in nd.iter().enumerate() {
            gen_of.insert(x.clone(), GenId::new(n, i));
        }
        cells.push(nd);
    }
    fn normal(
        x: &(Vec<usize>, usize),
        gen_of: &HashMap<(Vec<usize>, usize), GenId>,
        face: &dyn Fn(&Element, usize) -> Element,
        degenerate_at: &dyn Fn(&Element) -> Option<usize>,
    ) -> SimplexRef {
        if let Some(&g) = gen_of.get(x) {
            return SimplexRef::nondeg(g);
        }
        let n = x.0.len() - 1;
        let j = degenerate_at(x).expect("non-generator elements are degenerate");
        let r = normal(&face(x, j), gen_of, face, degenerate_at);
        let s = r.surjection();
        let surj: Vec<usize> = codegeneracy(n - 1, j).iter().map(|&i| s[i]).collect();
        SimplexRef::from_surjection(r.gen, &surj)
    }
    let labels: Vec<Vec<String>> = cells.iter().map(|l| l.iter().map(|(s, e)| p.element_label(s, *e)).collect()).collect();
    let faces: Vec<Vec<Vec<SimplexRef>>> = cells
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter().map(|x| if n == 0 { Vec::new() } else { (0..=n).map(|k| normal(&face(x, k), &gen_of, &face, &degenerate_at)).collect() }).collect()
        })
        .collect();
    let (mut labels, mut faces) = (labels, faces);
    while labels.len() > 1 && labels.last().is_some_and(Vec::is_empty) {
        labels.pop();
        faces.pop();
    }
    FiniteSimplicialSet::from_indexed(labels, faces)
}

/// Objects `S`, `Hom(x,y) = X[x,y]`, and composition through the inverse
/// of the Segal bijection `X[x,y,z] -> X[x,y] × X[y,z]`.
pub fn homotopy_category_presegal(p: &PreSegalSet) -> Result<FinCategory> {
    if p.bound < 2 {
        return Err(Error::Precondition("composition needs sequences of length 3".into()));
    }
    if let Some(msg) = p.segal_failure() {
        return Err(Error::Segal(msg));
    }
    let n = p.objects.len();
    let mut morphisms = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (x, y) in (0..n).cartesian_product(0..n) {
        for (e, l) in p.value(&[x, y]).iter().enumerate() {
            index.insert((x, y, e), morphisms.len());
            morphisms.push(Morphism { name: l.clone(), src: x, tgt: y });
        }
    }
    let mut names: Vec<Vec<String>> = vec![morphisms.iter().map(|m| m.name.clone()).collect()];
    if names[0].iter().duplicates().next().is_some() {
        for m in morphisms.iter_mut() {
            m.name = format!("{}>{}:{}", p.objects[m.src], p.objects[m.tgt], m.name);
        }
        names = vec![morphisms.iter().map(|m| m.name.clone()).collect()];
        crate::sset::uniquify(&mut names);
        for (m, l) in morphisms.iter_mut().zip(&names[0]) {
            m.name = l.clone();
        }
    }
    let identities = (0..n).map(|x| index[&(x, x, p.degeneracy(&[x], 0, 0))]).collect();
    let mut table = HashMap::new();
    for (x, y, z) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
        let seq = [x, y, z];
        for e in 0..p.value(&seq).len() {
            let f = p.face(&seq, 2, e);
            let g = p.face(&seq, 0, e);
            let h = p.face(&seq, 1, e);
            table.insert((index[&(x, y, f)], index[&(y, z, g)]), index[&(x, z, h)]);
        }
    }
    FinCategory::new(p.objects.clone(), morphisms, identities, table)
}
