//! Subdivisions over `N(Δ)^op`: `sd₀`, `sd⁺₀`, the levelwise objects `Q` and
//! `F`, and the comparison `β : F -> Q` with its fibers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::decorations::{MarkedSSet, ScaledSSet};
use crate::homology::{contractibility_certificate, HomologyCertificate};
use crate::sset::{monotone_maps, FinCategory, FiniteSimplicialSet, GenId, Morphism, Nerve, SSetJson, SimplexRef};
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// A subdivision together with its projection to `N(Δ)^op`.
///
/// Edges run from a simplex to one of its faces, so dimensions never increase
/// along an edge.
#[derive(Clone, Debug)]
pub struct SubdividedComplex {
    pub base: FiniteSimplicialSet,
    /// Vertex index to the source simplex it names.
    pub sources: Vec<GenId>,
    /// Vertex index to the dimension of its source simplex.
    pub dim_labels: Vec<usize>,
    /// Edge index to `(σ, τ, θ)` with `τ = σ ∘ θ`.
    pub edges: Vec<(GenId, GenId, Vec<usize>)>,
    pub marking: Option<BTreeSet<GenId>>,
}

impl SubdividedComplex {
    pub fn dim_label(&self, v: GenId) -> usize {
        self.dim_labels[v.idx]
    }

    pub fn edge(&self, e: GenId) -> &(GenId, GenId, Vec<usize>) {
        &self.edges[e.idx]
    }

    /// Looks up the edge `σ -> τ` along `θ` by source labels.
    pub fn find_edge(&self, x: &FiniteSimplicialSet, sigma: &str, tau: &str) -> Vec<GenId> {
        self.base
            .gens(1)
            .filter(|e| {
                let (s, t, _) = &self.edges[e.idx];
                x.label(*s) == sigma && x.label(*t) == tau
            })
            .collect()
    }

    /// Degenerate edges are always marked; without a marking nothing else is.
    pub fn is_marked(&self, e: &SimplexRef) -> bool {
        e.is_degenerate() || self.marking.as_ref().is_some_and(|m| m.contains(&e.gen))
    }

    pub fn to_marked(&self) -> MarkedSSet {
        MarkedSSet { base: self.base.clone(), marked: self.marking.clone().unwrap_or_default() }
    }

    pub fn to_json(&self) -> SubdivisionJson {
        SubdivisionJson {
            base: self.base.to_json(),
            dim_labels: self.base.gens(0).map(|v| (self.base.label(v).to_string(), self.dim_labels[v.idx])).collect(),
            marked: self.marking.as_ref().map(|m| m.iter().map(|&e| self.base.label(e).to_string()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub base: SSetJson,
    pub dim_labels: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub marked: Option<Vec<String>>,
}

/// Every face of a nondegenerate simplex is nondegenerate.
pub fn check_star(x: &FiniteSimplicialSet) -> Result<()> {
    for d in 1..=x.top_dim() {
        for g in x.gens(d) {
            if let Some((k, f)) = x.gen_faces(g).iter().enumerate().find(|(_, f)| f.is_degenerate()) {
                return Err(Error::Precondition(format!("face d{k} of `{}` is degenerate ({})", x.label(g), x.ref_label(f))));
            }
        }
    }
    Ok(())
}

fn digits(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// `(Δ_X^{nd})^op`: objects are nondegenerate simplices, arrows go from a
/// simplex to its faces. Returns the category and `(σ, τ, θ)` per arrow.
/// `(source, target, θ)` for each morphism of the face category.
type FaceArrow = (usize, usize, Vec<usize>);

fn face_category(x: &FiniteSimplicialSet) -> (FinCategory, Vec<GenId>, Vec<FaceArrow>) {
    let objects: Vec<GenId> = x.all_gens().collect();
    let position: HashMap<GenId, usize> = objects.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut data = Vec::new();
    let mut key: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for (i, &g) in objects.iter().enumerate() {
        let s = SimplexRef::nondeg(g);
        for k in 0..=g.dim {
            for theta in itertools::Itertools::combinations(0..=g.dim, k + 1) {
                let t = x.restrict(&s, &theta);
                key.insert((i, theta.clone()), data.len());
                data.push((i, position[&t.gen], theta));
            }
        }
    }
    let mut hom_size: HashMap<(usize, usize), usize> = HashMap::new();
    for (a, b, _) in &data {
        *hom_size.entry((*a, *b)).or_default() += 1;
    }
    let morphisms: Vec<Morphism> = data
        .iter()
        .map(|(a, b, theta)| {
            let (sa, sb) = (x.label(objects[*a]), x.label(objects[*b]));
            let name = if a == b {
                format!("id_{sa}")
            } else if hom_size[&(*a, *b)] > 1 {
                format!("{sa}>{sb}@{}", digits(theta))
            } else {
                format!("{sa}>{sb}")
            };
            Morphism { name, src: *a, tgt: *b }
        })
        .collect();
    let identities = objects.iter().enumerate().map(|(i, g)| key[&(i, (0..=g.dim).collect())]).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (f, (a, _, _)) in data.iter().enumerate() {
        out[*a].push(f);
    }
    let mut table = HashMap::new();
    for (f, (a, b, t1)) in data.iter().enumerate() {
        for &g in &out[*b] {
            let theta: Vec<usize> = data[g].2.iter().map(|&i| t1[i]).collect();
            table.insert((f, g), key[&(*a, theta)]);
        }
    }
    let names = objects.iter().map(|&g| x.label(g).to_string()).collect();
    (FinCategory::new_unchecked(names, morphisms, identities, table), objects, data)
}

/// `sd₀(X)`, the nerve of the opposite of the category of nondegenerate
/// simplices.
pub fn sd0(x: &FiniteSimplicialSet) -> Result<SubdividedComplex> {
    check_star(x)?;
    let (c, objects, data) = face_category(x);
    let nerve = Nerve::new(&c, x.top_dim());
    let base = nerve.set.clone();
    let mut sources = vec![GenId::new(0, 0); base.num_gens(0)];
    for (o, &g) in objects.iter().enumerate() {
        sources[nerve.object_gen(o).idx] = g;
    }
    let dim_labels = sources.iter().map(|g| g.dim).collect();
    let mut edges = vec![(GenId::new(0, 0), GenId::new(0, 0), Vec::new()); base.num_gens(1)];
    for (f, (a, b, theta)) in data.iter().enumerate() {
        if a != b {
            let e = nerve.chain_ref(&c, &[f], *a).gen;
            edges[e.idx] = (objects[*a], objects[*b], theta.clone());
        }
    }
    Ok(SubdividedComplex { base, sources, dim_labels, edges, marking: None })
}

/// Rule (a): the image of `θ` is an interval.
fn is_convex(theta: &[usize]) -> bool {
    theta.windows(2).all(|w| w[1] == w[0] + 1)
}

/// `sd⁺₀(X, T)`: marks edges with convex image, and the long edge `{0,2}` of
/// each thin triangle.
pub fn sd_plus0(s: &ScaledSSet) -> Result<SubdividedComplex> {
    let mut sd = sd0(&s.base)?;
    let marking = sd
        .base
        .gens(1)
        .filter(|e| {
            let (sigma, _, theta) = &sd.edges[e.idx];
            is_convex(theta) || (sigma.dim == 2 && theta == &[0, 2] && s.is_thin(&SimplexRef::nondeg(*sigma)))
        })
        .collect();
    sd.marking = Some(marking);
    Ok(sd)
}

/// `Q(X)_n` for `n ≤ n_max`: all `n`-simplices, degenerate ones included.
pub fn q_levels(x: &FiniteSimplicialSet, n_max: usize) -> Vec<Vec<SimplexRef>> {
    (0..=n_max).map(|n| x.simplices(n)).collect()
}

/// An object `Δⁿ -f-> Δᵐ -g-> X` of the category of factorizations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub f: Vec<usize>,
    pub g: SimplexRef,
}

/// The category of factorizations `Δⁿ -> Δᵐ -> X` with `m ≤ dim_bound`,
/// optionally restricted to those composing to `sigma`.
fn factorization_category(x: &FiniteSimplicialSet, n: usize, dim_bound: usize, sigma: Option<&SimplexRef>) -> (FinCategory, Vec<Factorization>) {
    let mut objects = Vec::new();
    let mut by_f: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for m in 0..=dim_bound {
        let gs = x.simplices(m);
        for f in monotone_maps(n, m) {
            for g in &gs {
                if sigma.is_none_or(|s| &x.restrict(g, &f) == s) {
                    by_f.entry(f.clone()).or_default().push(objects.len());
                    objects.push(Factorization { f: f.clone(), g: g.clone() });
                }
            }
        }
    }
    let mut data: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut key: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (a, oa) in objects.iter().enumerate() {
        let m = oa.g.dim();
        for m2 in 0..=dim_bound {
            for h in monotone_maps(m, m2) {
                let f2: Vec<usize> = oa.f.iter().map(|&i| h[i]).collect();
                for &b in by_f.get(&f2).into_iter().flatten() {
                    if objects[b].g.dim() == m2 && x.restrict(&objects[b].g, &h) == oa.g {
                        key.insert((a, b, h.clone()), data.len());
                        out[a].push(data.len());
                        data.push((a, b, h.clone()));
                    }
                }
            }
        }
    }
    let names: Vec<String> = objects.iter().map(|o| format!("{}:{}", digits(&o.f), x.ref_label(&o.g))).collect();
    let morphisms = data.iter().map(|(a, b, h)| Morphism { name: format!("{}=>{}@{}", names[*a], names[*b], digits(h)), src: *a, tgt: *b }).collect();
    let identities = objects.iter().enumerate().map(|(a, o)| key[&(a, a, (0..=o.g.dim()).collect())]).collect();
    let mut table = HashMap::new();
    for (f, (a, b, h1)) in data.iter().enumerate() {
        for &g in &out[*b] {
            let (_, c, h2) = &data[g];
            let h: Vec<usize> = h1.iter().map(|&i| h2[i]).collect();
            table.insert((f, g), key[&(*a, *c, h)]);
        }
    }
    (FinCategory::new_unchecked(names, morphisms, identities, table), objects)
}

/// `F(X)_n = N(Δ_X ×_Δ Δ_{[n]/})^op`, truncated to factorizations through
/// `Δᵐ` with `m ≤ dim_bound`, with its decomposition over `Q(X)_n`.
#[derive(Clone, Debug)]
pub struct FLevel {
    pub n: usize,
    pub dim_bound: usize,
    /// `Q(X)_n`.
    pub simplices: Vec<SimplexRef>,
    pub objects: Vec<Factorization>,
    /// `β` on objects: the index in `simplices` of `g ∘ f`.
    pub beta: Vec<usize>,
    /// Opposite of the factorization category, so its nerve is the level.
    pub category: FinCategory,
}

impl FLevel {
    /// The level's simplicial set up to dimension `bound`.
    pub fn nerve(&self, bound: usize) -> Nerve {
        Nerve::new(&self.category, bound)
    }

    pub fn num_vertices(&self) -> usize {
        self.objects.len()
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.objects.len());
        for m in self.category.morphisms() {
            uf.union(m.src, m.tgt);
        }
        uf.count_classes()
    }

    /// Each edge stays inside one fiber of `β`.
    pub fn beta_is_simplicial(&self) -> bool {
        self.category.morphisms().iter().all(|m| self.beta[m.src] == self.beta[m.tgt])
    }
}

pub fn f_level(x: &FiniteSimplicialSet, n: usize, dim_bound: usize) -> FLevel {
    let simplices = x.simplices(n);
    let (c, objects) = factorization_category(x, n, dim_bound, None);
    let position: HashMap<&SimplexRef, usize> = simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let beta = objects.iter().map(|o| position[&x.restrict(&o.g, &o.f)]).collect();
    FLevel { n, dim_bound, simplices, objects, beta, category: c.op() }
}

/// The fiber `C_σ` of `β` over an `n`-simplex `σ`, truncated at `dim_bound ≥ n`.
pub fn beta_fiber(x: &FiniteSimplicialSet, sigma: &SimplexRef, dim_bound: usize) -> Result<(FinCategory, Vec<Factorization>)> {
    x.check_ref(sigma)?;
    let n = sigma.dim();
    if dim_bound < n {
        return Err(Error::Precondition(format!("dimension bound {dim_bound} below the simplex dimension {n}")));
    }
    Ok(factorization_category(x, n, dim_bound, Some(sigma)))
}

/// Certifies that `N(C_σ)` is weakly contractible; the witness is the
/// initial object `(id, σ)`.
pub fn beta_fiber_certificate(x: &FiniteSimplicialSet, sigma: &SimplexRef, dim_bound: usize, homology_bound: usize) -> Result<HomologyCertificate> {
    let (c, _) = beta_fiber(x, sigma, dim_bound)?;
    Ok(contractibility_certificate(&c, homology_bound))
}

/// Name of the object `(id, σ)` as it appears in a fiber witness.
pub fn identity_factorization_label(x: &FiniteSimplicialSet, sigma: &SimplexRef) -> String {
    format!("{}:{}", digits(&(0..=sigma.dim()).collect::<Vec<_>>()), x.ref_label(sigma))
}

/// Certificates for every fiber of `β` at level `n`.
pub fn jt_check(x: &FiniteSimplicialSet, n: usize, dim_bound: usize, homology_bound: usize) -> Result<Vec<(SimplexRef, HomologyCertificate)>> {
    x.simplices(n).into_iter().map(|s| beta_fiber_certificate(x, &s, dim_bound, homology_bound).map(|c| (s, c))).collect()
}
