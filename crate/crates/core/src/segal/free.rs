use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use super::presegal::PreSegalSet;
use crate::sset::{uniquify, FinCategory, Morphism};
use crate::unionfind::UnionFind;
use crate::{Error, Result, Verdict};

/// A sequence `x = s₀, …, sₙ = y` with cut points `0 = i₀ < … < i_k = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JObject {
    pub seq: Vec<usize>,
    pub cuts: Vec<usize>,
}

impl JObject {
    pub fn len(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn segments(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.cuts.windows(2).map(|w| &self.seq[w[0]..=w[1]])
    }

    fn concat(&self, other: &JObject) -> JObject {
        let n = self.len();
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq[1..]);
        let mut cuts = self.cuts.clone();
        cuts.extend(other.cuts[1..].iter().map(|c| c + n));
        JObject { seq, cuts }
    }
}

type Element = (JObject, Vec<usize>);

/// Objects of `J_{x,y}(S)` of length at most `bound` with nonempty `H`.
fn j_objects(p: &PreSegalSet, x: usize, y: usize, bound: usize) -> Vec<JObject> {
    let s = p.objects().len();
    let mut out = Vec::new();
    if x == y {
        out.push(JObject { seq: vec![x], cuts: vec![0] });
    }
    for n in 1..=bound {
        for mid in (1..n).map(|_| 0..s).multi_cartesian_product() {
            let mut seq = vec![x];
            seq.extend(mid);
            seq.push(y);
            for inner in (1..n).powerset() {
                let mut cuts = vec![0];
                cuts.extend(inner);
                cuts.push(n);
                let o = JObject { seq: seq.clone(), cuts };
                if o.segments().all(|g| !p.value(g).is_empty()) {
                    out.push(o);
                }
            }
        }
    }
    out
}

fn h_elements(p: &PreSegalSet, o: &JObject) -> Vec<Vec<usize>> {
    o.segments().map(|g| 0..p.value(g).len()).multi_cartesian_product().collect()
}

/// Every morphism `σ -> σ'` of `J_{x,y}` out of `σ` with `|σ'| ≤ bound`,
/// as `σ'` and the map `H(σ) -> H(σ')` on one element. A segment of `σ'`
/// collapsing to a point is always admissible, its component factoring
/// through `X([s]) = *`; this connects the length-zero object to the
/// degenerate data.
fn morphisms_out(p: &PreSegalSet, o: &JObject, bound: usize) -> Vec<(JObject, Vec<Vec<usize>>)> {
    let n = o.len();
    let hs = h_elements(p, o);
    let mut out = Vec::new();
    for m in 0..=bound {
        for f in (0..=n).combinations_with_replacement(m + 1) {
            if f[0] != 0 || f[m] != n {
                continue;
            }
            let seq: Vec<usize> = f.iter().map(|&i| o.seq[i]).collect();
            for inner in (1..m).powerset() {
                let mut cuts = vec![0];
                cuts.extend(inner);
                if m > 0 {
                    cuts.push(m);
                }
                // for each segment of the source: Some(j) for a host segment of σ, None when collapsed
                let hosts: Option<Vec<Option<usize>>> = cuts
                    .windows(2)
                    .map(|w| {
                        let (a, b) = (f[w[0]], f[w[1]]);
                        if a == b {
                            Some(None)
                        } else {
                            o.cuts.windows(2).position(|c| c[0] <= a && b <= c[1]).map(Some)
                        }
                    })
                    .collect();
                let Some(hosts) = hosts else { continue };
                let target = JObject { seq: seq.clone(), cuts: cuts.clone() };
                let images = hs
                    .iter()
                    .map(|h| {
                        cuts.windows(2)
                            .zip(&hosts)
                            .map(|(w, host)| match host {
                                None => p.act(&vec![0; w[1] - w[0] + 1], &[o.seq[f[w[0]]]], 0).1,
                                Some(j) => {
                                    let lo = o.cuts[*j];
                                    let g: Vec<usize> = f[w[0]..=w[1]].iter().map(|&v| v - lo).collect();
                                    p.act(&g, &o.seq[lo..=o.cuts[j + 1]], h[*j]).1
                                }
                            })
                            .collect()
                    })
                    .collect();
                out.push((target, images));
            }
        }
    }
    out
}

struct Colimit {
    elements: Vec<Element>,
    /// Class index (among classes at the smaller bound) of every element
    /// of length at most `bound`.
    class_of: HashMap<Element, usize>,
    members: Vec<Vec<usize>>,
    stabilized: bool,
}

/// The colimit of `H_{x,y}` over objects of length `≤ bound`, compared with
/// the colimit over length `≤ bound + 1`.
fn colimit(p: &PreSegalSet, x: usize, y: usize, bound: usize) -> Result<Colimit> {
    if bound + 1 > p.bound() {
        return Err(Error::Precondition(format!("length bound {bound} needs values through length {}, stored bound is {}", bound + 1, p.bound())));
    }
    let objects = j_objects(p, x, y, bound + 1);
    let mut elements: Vec<Element> = Vec::new();
    let mut index: HashMap<Element, usize> = HashMap::new();
    for o in &objects {
        for h in h_elements(p, o) {
            index.insert((o.clone(), h.clone()), elements.len());
            elements.push((o.clone(), h));
        }
    }
    let mut uf = UnionFind::new(elements.len());
    let mut late = Vec::new();
    for o in &objects {
        let hs = h_elements(p, o);
        for (t, images) in morphisms_out(p, o, bound + 1) {
            for (h, h2) in hs.iter().zip(images) {
                let a = index[&(o.clone(), h.clone())];
                let b = index[&(t.clone(), h2)];
                if o.len() <= bound && t.len() <= bound {
                    uf.union(a, b);
                } else {
                    late.push((a, b));
                }
            }
        }
    }
    let small: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].0.len() <= bound).collect();
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class_of = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &i in &small {
        let r = uf.find(i);
        let next = roots.len();
        let c = *roots.entry(r).or_insert(next);
        if c == members.len() {
            members.push(Vec::new());
        }
        members[c].push(i);
        class_of.insert(elements[i].clone(), c);
    }
    for (a, b) in late {
        uf.union(a, b);
    }
    let big_roots: BTreeSet<usize> = (0..elements.len()).map(|i| uf.find(i)).collect();
    let small_roots: BTreeSet<usize> = small.iter().map(|&i| uf.find(i)).collect();
    let stabilized = small_roots.len() == members.len() && small_roots == big_roots;
    Ok(Colimit { elements, class_of, members, stabilized })
}

fn element_label(p: &PreSegalSet, e: &Element) -> String {
    let (o, h) = e;
    if o.is_empty() {
        return format!("id_{}", p.objects()[o.seq[0]]);
    }
    o.segments().zip(h).map(|(g, &v)| if g.len() == 2 { p.value(g)[v].clone() } else { p.element_label(g, v) }).join("|")
}

fn representative(p: &PreSegalSet, c: &Colimit, class: usize) -> String {
    c.members[class]
        .iter()
        .map(|&i| &c.elements[i])
        .min_by_key(|e| (e.0.len(), e.0.cuts.len(), element_label(p, e)))
        .map(|e| element_label(p, e))
        .expect("classes are nonempty")
}

/// `Hom_{F(S,X)}(x, y)` truncated at sequences of length `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeHom {
    pub from: String,
    pub to: String,
    pub bound: usize,
    pub elements: Vec<String>,
    /// Whether the colimits at `bound` and `bound + 1` agree.
    pub stabilized: bool,
}

pub fn free_hom(p: &PreSegalSet, x: &str, y: &str, bound: usize) -> Result<FreeHom> {
    let (xi, yi) = (p.object_index(x)?, p.object_index(y)?);
    let c = colimit(p, xi, yi, bound)?;
    let elements = (0..c.members.len()).map(|k| representative(p, &c, k)).collect();
    Ok(FreeHom { from: x.to_string(), to: y.to_string(), bound, elements, stabilized: c.stabilized })
}

/// `F(S,X)` with its unit `u : X[x,y] -> Hom(x,y)`.
#[derive(Clone, Debug)]
pub struct FreeCategory {
    pub category: FinCategory,
    pub bound: usize,
    pub stabilized: bool,
    /// `(x, y, e)` for `e ∈ X[x,y]` to the morphism it names.
    pub unit: HashMap<(usize, usize, usize), usize>,
}

/// Builds `F(S,X)` from the truncated colimits; composition concatenates
/// representatives whose total length fits in `bound`.
pub fn free_category(p: &PreSegalSet, bound: usize) -> Result<FreeCategory> {
    let n = p.objects().len();
    let mut cols: HashMap<(usize, usize), Colimit> = HashMap::new();
    for (x, y) in (0..n).cartesian_product(0..n) {
        cols.insert((x, y), colimit(p, x, y, bound)?);
    }
    let mut offset: HashMap<(usize, usize), usize> = HashMap::new();
    let mut morphisms = Vec::new();
    for (x, y) in (0..n).cartesian_product(0..n) {
        let c = &cols[&(x, y)];
        offset.insert((x, y), morphisms.len());
        for k in 0..c.members.len() {
            morphisms.push(Morphism { name: representative(p, c, k), src: x, tgt: y });
        }
    }
    let mut names = vec![morphisms.iter().map(|m| format!("{}>{}:{}", p.objects()[m.src], p.objects()[m.tgt], m.name)).collect::<Vec<_>>()];
    if morphisms.iter().map(|m| &m.name).duplicates().next().is_some() {
        uniquify(&mut names);
        for (m, l) in morphisms.iter_mut().zip(names.remove(0)) {
            m.name = l;
        }
    }
    let global = |x: usize, y: usize, e: &Element| -> Option<usize> { cols[&(x, y)].class_of.get(e).map(|c| offset[&(x, y)] + c) };
    let identities = (0..n).map(|x| global(x, x, &(JObject { seq: vec![x], cuts: vec![0] }, vec![])).expect("identity element")).collect();
    let mut table = HashMap::new();
    for (x, y, z) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
        let (c1, c2) = (&cols[&(x, y)], &cols[&(y, z)]);
        for (k1, m1) in c1.members.iter().enumerate() {
            for (k2, m2) in c2.members.iter().enumerate() {
                let mut results = BTreeSet::new();
                for &i in m1 {
                    for &j in m2 {
                        let (a, b) = (&c1.elements[i], &c2.elements[j]);
                        if a.0.len() + b.0.len() > bound {
                            continue;
                        }
                        let mut h = a.1.clone();
                        h.extend_from_slice(&b.1);
                        results.insert(global(x, z, &(a.0.concat(&b.0), h)).expect("concatenation stays in J"));
                    }
                }
                let f = offset[&(x, y)] + k1;
                let g = offset[&(y, z)] + k2;
                match results.len() {
                    1 => {
                        table.insert((f, g), *results.iter().next().unwrap());
                    }
                    0 => return Err(Error::NotStabilized(format!("composite of {} and {} exceeds length {bound}", morphisms[f].name, morphisms[g].name))),
                    _ => {
                        return Err(Error::NotStabilized(format!(
                            "composite of {} and {} is not well defined at length {bound}",
                            morphisms[f].name, morphisms[g].name
                        )))
                    }
                }
            }
        }
    }
    let mut unit = HashMap::new();
    for (x, y) in (0..n).cartesian_product(0..n) {
        for e in 0..p.value(&[x, y]).len() {
            let el = (JObject { seq: vec![x, y], cuts: vec![0, 1] }, vec![e]);
            unit.insert((x, y, e), global(x, y, &el).expect("length-one elements are present"));
        }
    }
    let stabilized = cols.values().all(|c| c.stabilized);
    let category = FinCategory::new(p.objects().to_vec(), morphisms, identities, table)?;
    Ok(FreeCategory { category, bound, stabilized, unit })
}

/// A functor given by its object and morphism functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// All functors `a -> b`.
pub fn functors(a: &FinCategory, b: &FinCategory) -> Vec<Functor> {
    let mut out = Vec::new();
    let na = a.morphisms().len();
    for objects in (0..a.num_objects()).map(|_| 0..b.num_objects()).multi_cartesian_product() {
        let mut assign: Vec<Option<usize>> = vec![None; na];
        for o in 0..a.num_objects() {
            assign[a.identity(o)] = Some(b.identity(objects[o]));
        }
        let free: Vec<usize> = (0..na).filter(|&f| !a.is_identity(f)).collect();
        extend_functor(a, b, &objects, &free, 0, &mut assign, &mut out);
    }
    out
}

fn extend_functor(a: &FinCategory, b: &FinCategory, objects: &[usize], free: &[usize], k: usize, assign: &mut Vec<Option<usize>>, out: &mut Vec<Functor>) {
    let consistent = |assign: &[Option<usize>]| {
        (0..assign.len()).all(|f| {
            (0..assign.len()).all(|g| match (assign[f], assign[g], a.try_compose(f, g)) {
                (Some(x), Some(y), Some(h)) => assign[h].is_none_or(|z| b.compose(x, y) == z),
                _ => true,
            })
        })
    };
    if k == free.len() {
        if consistent(assign) {
            out.push(Functor { objects: objects.to_vec(), morphisms: assign.iter().map(|v| v.unwrap()).collect() });
        }
        return;
    }
    let f = free[k];
    let m = a.morphism(f);
    for y in b.hom(objects[m.src], objects[m.tgt]) {
        assign[f] = Some(y);
        if consistent(assign) {
            extend_functor(a, b, objects, free, k + 1, assign, out);
        }
    }
    assign[f] = None;
}

/// A map `(S,X) -> G(C)` as its object function and its values on the
/// elements `e ∈ X[x,y]`, keyed by `(x, y, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PreSegalMap {
    pub alpha: Vec<usize>,
    pub beta: BTreeMap<(usize, usize, usize), usize>,
}

/// `β(e|[i,j])` must be the composite of `β(e|[i,i+1]), …, β(e|[j-1,j])`;
/// an empty composite is an identity of `α(x)`.
struct Constraint {
    lhs: usize,
    rhs: Vec<usize>,
    object: usize,
}

/// All maps of preSegal categories `(S,X) -> G(C)` on the stored
/// truncation, enumerated through their edge data.
pub fn presegal_maps(p: &PreSegalSet, c: &FinCategory) -> Vec<PreSegalMap> {
    let n = p.objects().len();
    let vars: Vec<(usize, usize, usize)> = (0..n).cartesian_product(0..n).flat_map(|(x, y)| (0..p.value(&[x, y]).len()).map(move |e| (x, y, e))).collect();
    let var_of: HashMap<(usize, usize, usize), usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut seen = HashSet::new();
    if p.bound() >= 1 {
        for x in 0..n {
            let d = p.degeneracy(&[x], 0, 0);
            constraints.push(Constraint { lhs: var_of[&(x, x, d)], rhs: vec![], object: x });
        }
    }
    for (seq, v) in p.supported().filter(|(s, _)| s.len() >= 3) {
        let len = seq.len() - 1;
        for e in 0..v.len() {
            let edge = |i: usize, j: usize| var_of[&(seq[i], seq[j], p.act(&[i, j], seq, e).1)];
            for (i, j) in (0..=len).tuple_combinations().filter(|(i, j)| j - i >= 2) {
                let lhs = edge(i, j);
                let rhs: Vec<usize> = (i..j).map(|k| edge(k, k + 1)).collect();
                if seen.insert((lhs, rhs.clone())) {
                    constraints.push(Constraint { lhs, rhs, object: seq[i] });
                }
            }
        }
    }
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); vars.len()];
    for (k, con) in constraints.iter().enumerate() {
        let last = con.rhs.iter().copied().chain([con.lhs]).max().unwrap();
        by_last[last].push(k);
    }
    let mut out = Vec::new();
    for alpha in (0..n).map(|_| 0..c.num_objects()).multi_cartesian_product() {
        let mut beta = vec![0; vars.len()];
        search_beta(c, &alpha, &vars, &constraints, &by_last, 0, &mut beta, &mut |b| {
            out.push(PreSegalMap { alpha: alpha.clone(), beta: vars.iter().copied().zip(b.iter().copied()).collect() });
        });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search_beta(
    c: &FinCategory,
    alpha: &[usize],
    vars: &[(usize, usize, usize)],
    constraints: &[Constraint],
    by_last: &[Vec<usize>],
    k: usize,
    beta: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if k == vars.len() {
        emit(beta);
        return;
    }
    let (x, y, _) = vars[k];
    for f in c.hom(alpha[x], alpha[y]) {
        beta[k] = f;
        let ok = by_last[k].iter().all(|&i| {
            let con = &constraints[i];
            let comp = con.rhs.iter().fold(c.identity(alpha[con.object]), |acc, &v| c.compose(acc, beta[v]));
            comp == beta[con.lhs]
        });
        if ok {
            search_beta(c, alpha, vars, constraints, by_last, k + 1, beta, emit);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionWitness {
    pub functors: usize,
    pub presegal_maps: usize,
    pub detail: String,
}

/// Checks that `F ↦ G(F) ∘ u` is a bijection from functors `F(S,X) -> C`
/// to maps `(S,X) -> G(C)`, enumerating both sides.
pub fn adjunction_check(p: &PreSegalSet, c: &FinCategory, bound: usize) -> Result<Verdict<AdjunctionWitness>> {
    let fc = free_category(p, bound)?;
    if !fc.stabilized {
        return Err(Error::NotStabilized(format!("hom colimits differ between lengths {bound} and {}", bound + 1)));
    }
    let left = functors(&fc.category, c);
    let right: HashSet<PreSegalMap> = presegal_maps(p, c).into_iter().collect();
    let witness = |detail: String| Verdict::No { witness: AdjunctionWitness { functors: left.len(), presegal_maps: right.len(), detail } };
    let mut images = HashSet::new();
    for f in &left {
        let m = PreSegalMap { alpha: f.objects.clone(), beta: fc.unit.iter().map(|(&k, &u)| (k, f.morphisms[u])).collect() };
        if !right.contains(&m) {
            return Ok(witness(format!("the image of functor {:?} is not a preSegal map", f.morphisms)));
        }
        if !images.insert(m) {
            return Ok(witness(format!("two functors agree after restriction along the unit, one of them {:?}", f.morphisms)));
        }
    }
    if images.len() != right.len() {
        return Ok(witness(format!("{} preSegal maps are not restrictions of functors", right.len() - images.len())));
    }
    Ok(Verdict::Yes)
}
