use std::collections::{BTreeMap, HashMap, HashSet};

use super::complex::FiniteSimplicialSet;
use super::simplex::{GenId, SimplexRef};
use crate::{Error, Result};

/// A simplicial map, recorded by the image of every generator of its source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialMap {
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Trailing empty levels are dropped, so equal maps compare equal.
    pub fn new(mut images: Vec<Vec<SimplexRef>>) -> Self {
        while images.len() > 1 && images.last().is_some_and(|l| l.is_empty()) {
            images.pop();
        }
        SimplicialMap { images }
    }

    pub fn identity(x: &FiniteSimplicialSet) -> Self {
        SimplicialMap::new((0..=x.top_dim()).map(|d| x.gens(d).map(SimplexRef::nondeg).collect()).collect())
    }

    pub fn image_of_gen(&self, g: GenId) -> &SimplexRef {
        &self.images[g.dim][g.idx]
    }

    pub fn images(&self) -> &[Vec<SimplexRef>] {
        &self.images
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, target: &FiniteSimplicialSet, x: &SimplexRef) -> SimplexRef {
        target.restrict(self.image_of_gen(x.gen), &x.surjection())
    }

    /// Checks shape, dimensions and compatibility with every face.
    pub fn validate(&self, source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> Result<()> {
        for d in 0..=source.top_dim() {
            let imgs = self.images.get(d).map_or(&[][..], |v| &v[..]);
            if imgs.len() != source.num_gens(d) {
                return Err(Error::Malformed(format!("map has {} images in dimension {d}", imgs.len())));
            }
            for (i, img) in imgs.iter().enumerate() {
                target.check_ref(img)?;
                if img.dim() != d {
                    return Err(Error::Malformed(format!("image of `{}` has wrong dimension", source.labels(d)[i])));
                }
                let g = SimplexRef::nondeg(GenId::new(d, i));
                for k in 0..(if d == 0 { 0 } else { d + 1 }) {
                    let lhs = self.apply(target, &source.face(&g, k));
                    let rhs = target.face(img, k);
                    if lhs != rhs {
                        return Err(Error::Malformed(format!("map does not commute with d{k} on `{}`", source.labels(d)[i])));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &SimplicialMap, z: &FiniteSimplicialSet) -> SimplicialMap {
        SimplicialMap::new(self.images.iter().map(|v| v.iter().map(|y| g.apply(z, y)).collect()).collect())
    }

    /// Injective on simplices: generator images are nondegenerate and distinct.
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().flatten().all(|y| !y.is_degenerate() && seen.insert(y.gen))
    }

    /// Labelled rendering, used for JSON and witness payloads.
    pub fn to_labels(&self, source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> BTreeMap<String, String> {
        source.all_gens().map(|g| (source.label(g).to_string(), target.ref_label(self.image_of_gen(g)))).collect()
    }
}

/// All simplices of a target up to a dimension, indexed by their face tuples.
pub struct SimplexIndex {
    vertices: Vec<SimplexRef>,
    by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
}

impl SimplexIndex {
    pub fn new(target: &FiniteSimplicialSet, max_dim: usize) -> Self {
        let vertices = target.simplices(0);
        let mut by_faces = vec![HashMap::new()];
        for m in 1..=max_dim {
            let mut map: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for y in target.simplices(m) {
                let fs: Vec<SimplexRef> = (0..=m).map(|k| target.face(&y, k)).collect();
                map.entry(fs).or_default().push(y);
            }
            by_faces.push(map);
        }
        SimplexIndex { vertices, by_faces }
    }

    fn max_dim(&self) -> usize {
        self.by_faces.len() - 1
    }

    pub fn candidates(&self, d: usize, faces: &[SimplexRef]) -> &[SimplexRef] {
        if d == 0 {
            &self.vertices
        } else {
            self.by_faces[d].get(faces).map_or(&[], |v| &v[..])
        }
    }
}

type Filter<'a> = Box<dyn Fn(GenId, &SimplexRef) -> bool + 'a>;

/// Generator-by-generator backtracking over simplicial maps, in order of
/// increasing dimension and then label.
pub struct MapSearch<'a> {
    source: &'a FiniteSimplicialSet,
    target: &'a FiniteSimplicialSet,
    index: Option<&'a SimplexIndex>,
    fixed: HashMap<GenId, SimplexRef>,
    filters: Vec<Filter<'a>>,
    injective: bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a FiniteSimplicialSet, target: &'a FiniteSimplicialSet) -> Self {
        MapSearch { source, target, index: None, fixed: HashMap::new(), filters: Vec::new(), injective: false }
    }

    pub fn with_index(mut self, index: &'a SimplexIndex) -> Self {
        self.index = Some(index);
        self
    }

    pub fn fix(mut self, g: GenId, y: SimplexRef) -> Self {
        self.fixed.insert(g, y);
        self
    }

    pub fn fix_all(mut self, pairs: impl IntoIterator<Item = (GenId, SimplexRef)>) -> Self {
        self.fixed.extend(pairs);
        self
    }

    /// Restricts the admissible image of each generator.
    pub fn filter(mut self, f: impl Fn(GenId, &SimplexRef) -> bool + 'a) -> Self {
        self.filters.push(Box::new(f));
        self
    }

    /// Only maps sending generators injectively to generators.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn run(&self) -> Vec<SimplicialMap> {
        self.run_limited(usize::MAX)
    }

    pub fn first(&self) -> Option<SimplicialMap> {
        self.run_limited(1).pop()
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }

    pub fn run_limited(&self, limit: usize) -> Vec<SimplicialMap> {
        let owned;
        let index = match self.index {
            Some(i) if i.max_dim() >= self.source.top_dim() => i,
            _ => {
                owned = SimplexIndex::new(self.target, self.source.top_dim());
                &owned
            }
        };
        let order: Vec<GenId> = self.source.all_gens().collect();
        let mut images: Vec<Vec<Option<SimplexRef>>> = (0..=self.source.top_dim()).map(|d| vec![None; self.source.num_gens(d)]).collect();
        let mut used = HashSet::new();
        let mut out = Vec::new();
        self.dfs(index, &order, 0, &mut images, &mut used, &mut out, limit);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        index: &SimplexIndex,
        order: &[GenId],
        pos: usize,
        images: &mut Vec<Vec<Option<SimplexRef>>>,
        used: &mut HashSet<GenId>,
        out: &mut Vec<SimplicialMap>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pos == order.len() {
            let imgs = images.iter().map(|v| v.iter().map(|y| y.clone().unwrap()).collect()).collect();
            out.push(SimplicialMap::new(imgs));
            return;
        }
        let g = order[pos];
        let faces: Vec<SimplexRef> = if g.dim == 0 {
            Vec::new()
        } else {
            self.source
                .gen_faces(g)
                .iter()
                .map(|f| {
                    let img = images[f.gen.dim][f.gen.idx].as_ref().expect("faces precede generator");
                    self.target.restrict(img, &f.surjection())
                })
                .collect()
        };
        let fixed_one;
        let cands: &[SimplexRef] = match self.fixed.get(&g) {
            Some(y) => {
                if y.dim() != g.dim {
                    return;
                }
                if g.dim > 0 && (0..=g.dim).any(|k| self.target.face(y, k) != faces[k]) {
                    return;
                }
                fixed_one = [y.clone()];
                &fixed_one
            }
            None => index.candidates(g.dim, &faces),
        };
        for y in cands {
            if !self.filters.iter().all(|f| f(g, y)) {
                continue;
            }
            if self.injective && (y.is_degenerate() || used.contains(&y.gen)) {
                continue;
            }
            if self.injective {
                used.insert(y.gen);
            }
            images[g.dim][g.idx] = Some(y.clone());
            self.dfs(index, order, pos + 1, images, used, out, limit);
            images[g.dim][g.idx] = None;
            if self.injective {
                used.remove(&y.gen);
            }
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Every simplicial map `X -> Y`.
pub fn sset_hom(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Vec<SimplicialMap> {
    MapSearch::new(x, y).run()
}

/// An isomorphism `X -> Y`, if one exists.
pub fn find_isomorphism(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Option<SimplicialMap> {
    if x.f_vector() != y.f_vector() {
        return None;
    }
    MapSearch::new(x, y).injective().first()
}

pub fn is_isomorphic(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> bool {
    find_isomorphism(x, y).is_some()
}
