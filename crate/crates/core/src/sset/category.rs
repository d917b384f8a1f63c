use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::complex::FiniteSimplicialSet;
use super::simplex::{GenId, SimplexRef};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with an explicit composition table.
///
/// `compose(f, g)` is the composite "f then g", defined when `tgt f = src g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
}

impl FinCategory {
    /// Validates units, closure and associativity exhaustively.
    pub fn new(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<usize>, table: HashMap<(usize, usize), usize>) -> Result<Self> {
        let c = FinCategory { objects, morphisms, identities, table };
        c.validate()?;
        Ok(c)
    }

    /// For categories generated by construction; skips the cubic validation.
    pub(crate) fn new_unchecked(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<usize>, table: HashMap<(usize, usize), usize>) -> Self {
        debug_assert_eq!(identities.len(), objects.len());
        FinCategory { objects, morphisms, identities, table }
    }

    fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        let mut names = std::collections::HashSet::new();
        for m in &self.morphisms {
            if m.src >= n || m.tgt >= n {
                return Err(Error::Malformed(format!("morphism `{}` has an unknown endpoint", m.name)));
            }
            if !names.insert(&m.name) {
                return Err(Error::Malformed(format!("duplicate morphism `{}`", m.name)));
            }
        }
        if self.identities.len() != n {
            return Err(Error::Malformed("one identity per object required".into()));
        }
        for (o, &i) in self.identities.iter().enumerate() {
            let m = self.morphisms.get(i).ok_or_else(|| Error::Malformed("identity out of range".into()))?;
            if m.src != o || m.tgt != o {
                return Err(Error::Malformed(format!("identity of `{}` is not an endomorphism of it", self.objects[o])));
            }
        }
        for f in 0..self.morphisms.len() {
            for g in 0..self.morphisms.len() {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                match self.table.get(&(f, g)) {
                    Some(&h) if composable => {
                        let mh = self.morphisms.get(h).ok_or_else(|| Error::Malformed("composite out of range".into()))?;
                        if mh.src != self.morphisms[f].src || mh.tgt != self.morphisms[g].tgt {
                            return Err(Error::Malformed(format!(
                                "composite of `{}` and `{}` has wrong endpoints",
                                self.morphisms[f].name, self.morphisms[g].name
                            )));
                        }
                    }
                    Some(_) => return Err(Error::Malformed("composite given for a non-composable pair".into())),
                    None if composable => {
                        return Err(Error::Malformed(format!("missing composite of `{}` and `{}`", self.morphisms[f].name, self.morphisms[g].name)))
                    }
                    None => {}
                }
            }
        }
        for f in 0..self.morphisms.len() {
            let m = &self.morphisms[f];
            if self.compose(self.identities[m.src], f) != f || self.compose(f, self.identities[m.tgt]) != f {
                return Err(Error::Malformed(format!("unit law fails at `{}`", m.name)));
            }
        }
        for f in 0..self.morphisms.len() {
            for g in self.out_of(self.morphisms[f].tgt) {
                let fg = self.compose(f, g);
                for h in self.out_of(self.morphisms[g].tgt) {
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                        return Err(Error::Malformed("associativity fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// "f then g".
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.table[&(f, g)]
    }

    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table.get(&(f, g)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src == a && self.morphisms[f].tgt == b).collect()
    }

    pub fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src == a).collect()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.tgt, m.src).into_iter().find(|&g| self.compose(f, g) == self.identities[m.src] && self.compose(g, f) == self.identities[m.tgt])
    }

    pub fn is_invertible(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// The opposite category (same names).
    pub fn op(&self) -> FinCategory {
        let morphisms = self.morphisms.iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
        let table = self.table.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
        FinCategory { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), table }
    }

    /// The poset on `names` with order `leq`; morphisms are named `a<=b`.
    pub fn from_poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut idx = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    if a != b && leq(b, a) {
                        return Err(Error::Malformed("order is not antisymmetric".into()));
                    }
                    idx.insert((a, b), morphisms.len());
                    let name = if a == b { format!("id_{}", names[a]) } else { format!("{}<={}", names[a], names[b]) };
                    morphisms.push(Morphism { name, src: a, tgt: b });
                }
            }
        }
        let identities = (0..n).map(|a| idx.get(&(a, a)).copied().ok_or_else(|| Error::Malformed("order not reflexive".into()))).collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for (&(a, b), &f) in &idx {
            for (&(b2, c), &g) in &idx {
                if b == b2 {
                    let h = *idx.get(&(a, c)).ok_or_else(|| Error::Malformed("order not transitive".into()))?;
                    table.insert((f, g), h);
                }
            }
        }
        FinCategory::new(names.to_vec(), morphisms, identities, table)
    }

    /// The total order `[n]` with objects `0..n`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        FinCategory::from_poset(&names, |a, b| a <= b).unwrap()
    }

    /// Two objects `a`, `b` with inverse isomorphisms `f : a -> b`, `g : b -> a`.
    pub fn walking_iso() -> Self {
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            Morphism { name: "id_a".into(), src: 0, tgt: 0 },
            Morphism { name: "id_b".into(), src: 1, tgt: 1 },
            Morphism { name: "f".into(), src: 0, tgt: 1 },
            Morphism { name: "g".into(), src: 1, tgt: 0 },
        ];
        let mut table = HashMap::new();
        for (f, m) in morphisms.iter().enumerate() {
            table.insert((morphisms.iter().position(|i| i.name == format!("id_{}", objects[m.src])).unwrap(), f), f);
            table.insert((f, morphisms.iter().position(|i| i.name == format!("id_{}", objects[m.tgt])).unwrap()), f);
        }
        table.insert((2, 3), 0);
        table.insert((3, 2), 1);
        FinCategory::new(objects, morphisms, vec![0, 1], table).unwrap()
    }

    /// A one-object category from a monoid multiplication table; element 0 is the unit.
    pub fn monoid(names: &[String], mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let morphisms = names.iter().map(|n| Morphism { name: n.clone(), src: 0, tgt: 0 }).collect();
        let mut table = HashMap::new();
        for a in 0..names.len() {
            for b in 0..names.len() {
                // "a then b" is the product b·a
                table.insert((a, b), mul(b, a));
            }
        }
        FinCategory::new(vec!["*".into()], morphisms, vec![0], table)
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("r{i}") }).collect();
        FinCategory::monoid(&names, |a, b| (a + b) % n).unwrap()
    }

    /// A category given by two parallel arrows `a -> b` named `f1`, `f2`.
    pub fn parallel_pair() -> Self {
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            Morphism { name: "id_a".into(), src: 0, tgt: 0 },
            Morphism { name: "id_b".into(), src: 1, tgt: 1 },
            Morphism { name: "f1".into(), src: 0, tgt: 1 },
            Morphism { name: "f2".into(), src: 0, tgt: 1 },
        ];
        let mut table = HashMap::new();
        for (f, m) in morphisms.iter().enumerate() {
            table.insert((m.src, f), f);
            table.insert((f, m.tgt), f);
        }
        FinCategory::new(objects, morphisms, vec![0, 1], table).unwrap()
    }

    /// A random concrete category: objects are small finite sets, morphisms
    /// are the composites of a few random functions between them.
    ///
    /// Retries until the closure has at most `max_morphisms` arrows.
    pub fn random(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> Self {
        loop {
            let n = rng.gen_range(1..=max_objects.max(1));
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
            // morphism = (src, tgt, function table)
            let mut arrows: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|o| (o, o, (0..sizes[o]).collect())).collect();
            let gens = rng.gen_range(0..=4);
            for _ in 0..gens {
                let s = rng.gen_range(0..n);
                let t = rng.gen_range(0..n);
                let f: Vec<usize> = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
                if !arrows.contains(&(s, t, f.clone())) {
                    arrows.push((s, t, f));
                }
            }
            let mut changed = true;
            while changed && arrows.len() <= max_morphisms {
                changed = false;
                let snapshot = arrows.clone();
                for a in &snapshot {
                    for b in &snapshot {
                        if a.1 == b.0 {
                            let c = (a.0, b.1, a.2.iter().map(|&v| b.2[v]).collect::<Vec<_>>());
                            if !arrows.contains(&c) {
                                arrows.push(c);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if arrows.len() > max_morphisms {
                continue;
            }
            let objects: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let morphisms: Vec<Morphism> = arrows
                .iter()
                .enumerate()
                .map(|(i, a)| Morphism { name: if i < n { format!("id_{}", objects[i]) } else { format!("m{}", i - n) }, src: a.0, tgt: a.1 })
                .collect();
            let mut table = HashMap::new();
            for (i, a) in arrows.iter().enumerate() {
                for (j, b) in arrows.iter().enumerate() {
                    if a.1 == b.0 {
                        let c = (a.0, b.1, a.2.iter().map(|&v| b.2[v]).collect::<Vec<_>>());
                        table.insert((i, j), arrows.iter().position(|x| *x == c).unwrap());
                    }
                }
            }
            return FinCategory::new(objects, morphisms, (0..n).collect(), table).expect("concrete categories are categories");
        }
    }

    pub fn to_json(&self) -> CategoryJson {
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismJson { name: m.name.clone(), src: self.objects[m.src].clone(), tgt: self.objects[m.tgt].clone() })
                .collect(),
            identities: self.identities.iter().enumerate().map(|(o, &i)| (self.objects[o].clone(), self.morphisms[i].name.clone())).collect(),
            compose: {
                let mut v: Vec<[String; 3]> = self
                    .table
                    .iter()
                    .map(|(&(f, g), &h)| [self.morphisms[f].name.clone(), self.morphisms[g].name.clone(), self.morphisms[h].name.clone()])
                    .collect();
                v.sort();
                v
            },
        }
    }

    pub fn from_json(j: &CategoryJson) -> Result<Self> {
        let obj = |n: &str| j.objects.iter().position(|o| o == n).ok_or_else(|| Error::UnknownLabel(n.to_string()));
        let morphisms = j.morphisms.iter().map(|m| Ok(Morphism { name: m.name.clone(), src: obj(&m.src)?, tgt: obj(&m.tgt)? })).collect::<Result<Vec<_>>>()?;
        let mor = |n: &str| morphisms.iter().position(|m| m.name == n).ok_or_else(|| Error::UnknownLabel(n.to_string()));
        let identities = j
            .objects
            .iter()
            .map(|o| mor(j.identities.get(o).ok_or_else(|| Error::Malformed(format!("no identity for `{o}`")))?))
            .collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for [f, g, h] in &j.compose {
            table.insert((mor(f)?, mor(g)?), mor(h)?);
        }
        FinCategory::new(j.objects.clone(), morphisms, identities, table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// Interchange form of a finite category; `compose` lists `[f, g, f then g]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

/// The nerve of a finite category together with its chain lookup.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: FiniteSimplicialSet,
    pub dim_bound: usize,
    chains: HashMap<Vec<usize>, GenId>,
    objects: Vec<GenId>,
}

impl Nerve {
    pub fn new(c: &FinCategory, dim_bound: usize) -> Self {
        let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_bound + 1];
        if dim_bound >= 1 {
            levels[1] = (0..c.morphisms.len()).filter(|&f| !c.is_identity(f)).map(|f| vec![f]).collect();
        }
        for k in 2..=dim_bound {
            let prev = std::mem::take(&mut levels[k - 1]);
            let mut next = Vec::new();
            for ch in &prev {
                let last = *ch.last().unwrap();
                for g in c.out_of(c.morphisms[last].tgt) {
                    if !c.is_identity(g) {
                        let mut n = ch.clone();
                        n.push(g);
                        next.push(n);
                    }
                }
            }
            levels[k - 1] = prev;
            levels[k] = next;
        }
        let pre_obj: Vec<GenId> = (0..c.num_objects()).map(|o| GenId::new(0, o)).collect();
        let pre: HashMap<Vec<usize>, GenId> =
            levels.iter().enumerate().flat_map(|(d, v)| v.iter().enumerate().map(move |(i, ch)| (ch.clone(), GenId::new(d, i)))).collect();
        let mut labels: Vec<Vec<String>> = vec![c.objects.clone()];
        for v in levels.iter().skip(1) {
            labels.push(v.iter().map(|ch| ch.iter().map(|&f| c.morphisms[f].name.as_str()).collect::<Vec<_>>().join("|")).collect());
        }
        let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![vec![Vec::new(); c.num_objects()]];
        for (k, v) in levels.iter().enumerate().skip(1) {
            faces.push(v.iter().map(|ch| (0..=k).map(|i| chain_ref(c, &pre, &pre_obj, &chain_face(c, ch, i), chain_src(c, ch, i))).collect()).collect());
        }
        let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("nerve is well formed");
        let chains = pre.into_iter().map(|(ch, g)| (ch, GenId::new(g.dim, perm[g.dim][g.idx]))).collect();
        let objects = (0..c.num_objects()).map(|o| GenId::new(0, perm[0][o])).collect();
        Nerve { set, dim_bound, chains, objects }
    }

    /// Normal form of an arbitrary composable chain (identities allowed);
    /// `start` is the source object, needed when the chain is empty.
    pub fn chain_ref(&self, c: &FinCategory, chain: &[usize], start: usize) -> SimplexRef {
        chain_ref(c, &self.chains, &self.objects, chain, start)
    }

    pub fn object_gen(&self, o: usize) -> GenId {
        self.objects[o]
    }

    pub fn chain_of(&self, g: GenId) -> Option<&Vec<usize>> {
        self.chains.iter().find(|(_, &v)| v == g).map(|(k, _)| k)
    }
}

fn chain_src(c: &FinCategory, ch: &[usize], i: usize) -> usize {
    // source object of the face chain
    if i == 0 {
        c.morphisms[ch[0]].tgt
    } else {
        c.morphisms[ch[0]].src
    }
}

fn chain_face(c: &FinCategory, ch: &[usize], i: usize) -> Vec<usize> {
    let k = ch.len();
    let mut out = Vec::with_capacity(k.saturating_sub(1));
    if i == 0 {
        out.extend_from_slice(&ch[1..]);
    } else if i == k {
        out.extend_from_slice(&ch[..k - 1]);
    } else {
        out.extend_from_slice(&ch[..i - 1]);
        out.push(c.compose(ch[i - 1], ch[i]));
        out.extend_from_slice(&ch[i + 1..]);
    }
    out
}

fn chain_ref(c: &FinCategory, chains: &HashMap<Vec<usize>, GenId>, objects: &[GenId], ch: &[usize], start: usize) -> SimplexRef {
    let mut word = Vec::new();
    let mut core = Vec::new();
    for (j, &f) in ch.iter().enumerate() {
        if c.is_identity(f) {
            word.push(j);
        } else {
            core.push(f);
        }
    }
    word.reverse();
    let gen = if core.is_empty() {
        let o = if ch.is_empty() { start } else { c.morphisms[ch[0]].src };
        objects[o]
    } else {
        *chains.get(&core).expect("chain within the nerve bound")
    };
    SimplexRef { gen, word }
}

pub fn nerve(c: &FinCategory, dim_bound: usize) -> FiniteSimplicialSet {
    Nerve::new(c, dim_bound).set
}
