use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::poset::{bits, interval, mask_of, CubeNerve, Subset};
use crate::decorations::{Decorated, MarkedSSet, ScaledSSet};
use crate::sset::{coface, uniquify, FinCategory, FiniteSimplicialSet, GenId, MapSearch, Product, SimplexRef, SimplicialMap};
use crate::{Error, Result};

/// A category enriched in marked simplicial sets, with finite homs.
#[derive(Clone, Debug)]
pub struct MarkedSimpCategory {
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), MarkedSSet>,
    identities: Vec<GenId>,
    /// `Hom(a, b) × Hom(b, c) -> Hom(a, c)`, "first then second".
    composition: BTreeMap<(usize, usize, usize), (Product, SimplicialMap)>,
}

fn degenerate_vertex(v: GenId, m: usize) -> SimplexRef {
    SimplexRef { gen: v, word: (0..m).rev().collect() }
}

impl MarkedSimpCategory {
    /// `homs` must cover every ordered pair; `composition` every triple, as a
    /// map out of the product `Hom(a, b) × Hom(b, c)` built by [`Product::new`].
    pub fn new(
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), MarkedSSet>,
        identities: Vec<GenId>,
        composition: BTreeMap<(usize, usize, usize), SimplicialMap>,
    ) -> Result<Self> {
        let n = objects.len();
        if identities.len() != n {
            return Err(Error::Malformed("one identity per object required".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if !homs.contains_key(&(a, b)) {
                    return Err(Error::Malformed(format!("missing hom ({}, {})", objects[a], objects[b])));
                }
            }
        }
        let mut comp = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let f = composition.get(&(a, b, c)).ok_or_else(|| Error::Malformed("missing composition map".into()))?;
                    let p = Product::new(&homs[&(a, b)].base, &homs[&(b, c)].base);
                    f.validate(&p.set, &homs[&(a, c)].base)?;
                    comp.insert((a, b, c), (p, f.clone()));
                }
            }
        }
        let cat = MarkedSimpCategory { objects, homs, identities, composition: comp };
        cat.check_laws()?;
        Ok(cat)
    }

    /// Discrete homs: the simplicial nerve of the result is the ordinary nerve.
    pub fn discrete(c: &FinCategory) -> Self {
        let n = c.num_objects();
        let mut homs = BTreeMap::new();
        let mut where_: HashMap<usize, GenId> = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                let ms = c.hom(a, b);
                let labels = vec![ms.iter().map(|&f| c.morphism(f).name.clone()).collect()];
                let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, vec![vec![Vec::new(); ms.len()]]).expect("discrete hom");
                for (i, &f) in ms.iter().enumerate() {
                    where_.insert(f, GenId::new(0, perm[0][i]));
                }
                homs.insert((a, b), MarkedSSet::flat(&set));
            }
        }
        let identities = (0..n).map(|a| where_[&c.identity(a)]).collect();
        let mut composition = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let p = Product::new(&homs[&(a, b)].base, &homs[&(b, d)].base);
                    let images = vec![p
                        .set
                        .gens(0)
                        .map(|g| {
                            let (x, y) = p.components(g);
                            let f = c.hom(a, b).into_iter().find(|&f| where_[&f] == x.gen).unwrap();
                            let h = c.hom(b, d).into_iter().find(|&h| where_[&h] == y.gen).unwrap();
                            SimplexRef::nondeg(where_[&c.compose(f, h)])
                        })
                        .collect()];
                    composition.insert((a, b, d), (p, SimplicialMap::new(images)));
                }
            }
        }
        MarkedSimpCategory { objects: c.objects().to_vec(), homs, identities, composition }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn hom(&self, a: usize, b: usize) -> &MarkedSSet {
        &self.homs[&(a, b)]
    }

    pub fn identity(&self, a: usize) -> GenId {
        self.identities[a]
    }

    /// `f` then `g`, for simplices of equal dimension.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: &SimplexRef, g: &SimplexRef) -> SimplexRef {
        let (p, m) = &self.composition[&(a, b, c)];
        let pair = p.pair(&self.homs[&(a, b)].base, &self.homs[&(b, c)].base, f, g).expect("composable simplices");
        m.apply(&self.homs[&(a, c)].base, &pair)
    }

    fn max_hom_dim(&self) -> usize {
        self.homs.values().map(|h| h.base.dim()).max().unwrap_or(0)
    }

    /// Unit and associativity on all simplices through the largest hom
    /// dimension, and preservation of marked edges.
    fn check_laws(&self) -> Result<()> {
        let n = self.objects.len();
        let top = self.max_hom_dim();
        for m in 0..=top {
            for a in 0..n {
                for b in 0..n {
                    let hab = &self.homs[&(a, b)].base;
                    for f in hab.simplices(m) {
                        let ida = degenerate_vertex(self.identities[a], m);
                        let idb = degenerate_vertex(self.identities[b], m);
                        if self.compose(a, a, b, &ida, &f) != f || self.compose(a, b, b, &f, &idb) != f {
                            return Err(Error::Precondition(format!("unit law fails at {}", hab.ref_label(&f))));
                        }
                        for c in 0..n {
                            for g in self.homs[&(b, c)].base.simplices(m) {
                                let fg = self.compose(a, b, c, &f, &g);
                                for d in 0..n {
                                    for h in self.homs[&(c, d)].base.simplices(m) {
                                        let l = self.compose(a, c, d, &fg, &h);
                                        let r = self.compose(a, b, d, &f, &self.compose(b, c, d, &g, &h));
                                        if l != r {
                                            return Err(Error::Precondition("associativity fails".into()));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (hab, hbc) = (&self.homs[&(a, b)], &self.homs[&(b, c)]);
                    for e1 in hab.base.simplices(1).into_iter().filter(|e| hab.is_marked(e)) {
                        for e2 in hbc.base.simplices(1).into_iter().filter(|e| hbc.is_marked(e)) {
                            if !self.homs[&(a, c)].is_marked(&self.compose(a, b, c, &e1, &e2)) {
                                return Err(Error::Precondition("composition does not preserve marked edges".into()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A simplex of the simplicial nerve: objects `X_0 … X_n` and, for each
/// `i < j`, the map `N(P_{ij}) -> Hom(X_i, X_j)` in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub objects: Vec<usize>,
    pub maps: Vec<SimplicialMap>,
}

fn pair_index(i: usize, j: usize, n: usize) -> usize {
    // pairs ordered (0,1), (0,2), …, (0,n), (1,2), …
    (0..i).map(|r| n - r).sum::<usize>() + (j - i - 1)
}

impl NerveSimplex {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn map(&self, i: usize, j: usize) -> &SimplicialMap {
        &self.maps[pair_index(i, j, self.dim())]
    }
}

/// The scaled nerve with the simplex data behind each generator.
#[derive(Clone, Debug)]
pub struct ScaledNerve {
    pub scaled: ScaledSSet,
    pub simplices: Vec<Vec<NerveSimplex>>,
}

struct NerveBuilder<'a> {
    c: &'a MarkedSimpCategory,
    cubes: Vec<CubeNerve>,
}

impl NerveBuilder<'_> {
    /// `z ∘ θ` for a monotone `θ : [m] -> [n]`.
    fn restrict(&self, z: &NerveSimplex, theta: &[usize]) -> NerveSimplex {
        let m = theta.len() - 1;
        let objects: Vec<usize> = theta.iter().map(|&t| z.objects[t]).collect();
        let mut maps = Vec::new();
        for a in 0..=m {
            for b in a + 1..=m {
                let cube = &self.cubes[b - a];
                let (ta, tb) = (theta[a], theta[b]);
                if ta == tb {
                    let id = self.c.identities[objects[a]];
                    let images = (0..=cube.set.top_dim()).map(|d| cube.set.gens(d).map(|_| degenerate_vertex(id, d)).collect()).collect();
                    maps.push(SimplicialMap::new(images));
                    continue;
                }
                let target = &self.cubes[tb - ta];
                let f = z.map(ta, tb);
                let hom = &self.c.homs[&(z.objects[ta], z.objects[tb])].base;
                let images = (0..=cube.set.top_dim())
                    .map(|d| {
                        cube.set
                            .gens(d)
                            .map(|g| {
                                let chain: Vec<Subset> = cube.chain_of(g).iter().map(|&u| mask_of(bits(u).map(|v| theta[a + v] - ta))).collect();
                                f.apply(hom, &target.chain_ref(&chain))
                            })
                            .collect()
                    })
                    .collect();
                maps.push(SimplicialMap::new(images));
            }
        }
        NerveSimplex { objects, maps }
    }

    fn level(&self, prev: &[NerveSimplex], n: usize) -> Vec<NerveSimplex> {
        let c = self.c;
        let nobj = c.objects.len();
        if n == 0 {
            return (0..nobj).map(|a| NerveSimplex { objects: vec![a], maps: Vec::new() }).collect();
        }
        if n == 1 {
            let mut out = Vec::new();
            for a in 0..nobj {
                for b in 0..nobj {
                    for v in c.homs[&(a, b)].base.gens(0) {
                        out.push(NerveSimplex { objects: vec![a, b], maps: vec![SimplicialMap::new(vec![vec![SimplexRef::nondeg(v)]])] });
                    }
                }
            }
            return out;
        }
        let mut by_last: HashMap<NerveSimplex, Vec<&NerveSimplex>> = HashMap::new();
        for b in prev {
            by_last.entry(self.restrict(b, &coface(n - 1, n - 1))).or_default().push(b);
        }
        let cube = &self.cubes[n];
        let mut out = Vec::new();
        for a in prev {
            let Some(bs) = by_last.get(&self.restrict(a, &coface(n - 1, 0))) else { continue };
            for b in bs {
                let mut objects = a.objects.clone();
                objects.push(*b.objects.last().unwrap());
                let (x0, xn) = (objects[0], objects[n]);
                let hom = &c.homs[&(x0, xn)].base;
                let mut fixed = Vec::new();
                for g in cube.set.all_gens() {
                    let chain = cube.chain_of(g);
                    let Some(k) = bits(chain[0]).find(|&k| k > 0 && k < n) else { continue };
                    let left: Vec<Subset> = chain.iter().map(|&u| u & interval(0, k)).collect();
                    let right: Vec<Subset> = chain.iter().map(|&u| (u & interval(k, n)) >> k).collect();
                    let f = a.map(0, k).apply(&c.homs[&(x0, objects[k])].base, &self.cubes[k].chain_ref(&left));
                    let h = b.map(k - 1, n - 1).apply(&c.homs[&(objects[k], xn)].base, &self.cubes[n - k].chain_ref(&right));
                    fixed.push((g, c.compose(x0, objects[k], xn, &f, &h)));
                }
                for top in MapSearch::new(&cube.set, hom).fix_all(fixed).run() {
                    let mut maps = Vec::new();
                    for i in 0..=n {
                        for j in i + 1..=n {
                            maps.push(match (i, j) {
                                (0, j) if j == n => top.clone(),
                                (i, j) if j < n => a.map(i, j).clone(),
                                (i, j) => b.map(i - 1, j - 1).clone(),
                            });
                        }
                    }
                    out.push(NerveSimplex { objects: objects.clone(), maps });
                }
            }
        }
        out.sort();
        out
    }
}

impl ScaledNerve {
    pub fn new(c: &MarkedSimpCategory, dim_bound: usize) -> Self {
        let builder = NerveBuilder { c, cubes: (0..=dim_bound.max(1)).map(CubeNerve::new).collect() };
        let mut levels: Vec<Vec<NerveSimplex>> = Vec::new();
        for n in 0..=dim_bound {
            let prev = if n == 0 { &[][..] } else { &levels[n - 1][..] };
            let l = builder.level(prev, n);
            levels.push(l);
        }
        // normal forms, level by level
        let mut nf: Vec<HashMap<NerveSimplex, SimplexRef>> = Vec::new();
        let mut labels: Vec<Vec<String>> = Vec::new();
        let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
        let mut gens: Vec<Vec<NerveSimplex>> = Vec::new();
        for (n, level) in levels.iter().enumerate() {
            let mut map = HashMap::new();
            let (mut ls, mut fs, mut gs) = (Vec::new(), Vec::new(), Vec::new());
            for z in level {
                let degenerate = (0..n).find(|&p| {
                    let theta: Vec<usize> = (0..=n).map(|t| if t == p + 1 { p } else { t }).collect();
                    &builder.restrict(z, &theta) == z
                });
                let r = match degenerate {
                    Some(p) => {
                        let w = builder.restrict(z, &coface(n, p + 1));
                        let lower: &SimplexRef = &nf[n - 1][&w];
                        let surj = lower.surjection();
                        let comp: Vec<usize> = (0..=n).map(|t| surj[if t <= p { t } else { t - 1 }]).collect();
                        SimplexRef::from_surjection(lower.gen, &comp)
                    }
                    None => {
                        let g = GenId::new(n, ls.len());
                        ls.push(spine_label(c, z));
                        fs.push(if n == 0 { Vec::new() } else { (0..=n).map(|k| nf[n - 1][&builder.restrict(z, &coface(n, k))].clone()).collect() });
                        gs.push(z.clone());
                        SimplexRef::nondeg(g)
                    }
                };
                map.insert(z.clone(), r);
            }
            nf.push(map);
            labels.push(ls);
            faces.push(fs);
            gens.push(gs);
        }
        uniquify(&mut labels);
        let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("nerve is a simplicial set");
        let mut simplices: Vec<Vec<NerveSimplex>> = gens.iter().map(|l| Vec::with_capacity(l.len())).collect();
        for (d, l) in gens.into_iter().enumerate() {
            let mut slots: Vec<Option<NerveSimplex>> = vec![None; l.len()];
            for (i, z) in l.into_iter().enumerate() {
                slots[perm[d][i]] = Some(z);
            }
            simplices[d] = slots.into_iter().map(|z| z.unwrap()).collect();
        }
        let thin: BTreeSet<GenId> = set
            .gens(2)
            .filter(|g| {
                let z = &simplices[2][g.idx];
                let alpha = z.map(0, 2).apply(&c.homs[&(z.objects[0], z.objects[2])].base, &builder.cubes[2].long_edge());
                c.homs[&(z.objects[0], z.objects[2])].is_marked(&alpha)
            })
            .collect();
        let scaled = ScaledSSet::from_parts(set, thin).expect("thin triangles are generators");
        ScaledNerve { scaled, simplices }
    }

    /// The generator whose data is `z`, if nondegenerate.
    pub fn find(&self, z: &NerveSimplex) -> Option<GenId> {
        self.simplices.get(z.dim())?.iter().position(|w| w == z).map(|i| GenId::new(z.dim(), i))
    }
}

fn spine_label(c: &MarkedSimpCategory, z: &NerveSimplex) -> String {
    let n = z.dim();
    if n == 0 {
        return c.objects[z.objects[0]].clone();
    }
    (0..n)
        .map(|i| {
            let v = z.map(i, i + 1).image_of_gen(GenId::new(0, 0));
            c.homs[&(z.objects[i], z.objects[i + 1])].base.label(v.gen).to_string()
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// The scaled nerve through `dim_bound`: a triangle is thin iff its
/// comparison edge is marked.
pub fn scaled_nerve(c: &MarkedSimpCategory, dim_bound: usize) -> ScaledSSet {
    ScaledNerve::new(c, dim_bound).scaled
}
