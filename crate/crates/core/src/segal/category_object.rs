use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::sset::{collapsed_k, collapsed_k_core_edge, sset_hom, FinCategory, FiniteSimplicialSet, GenId, Morphism, SimplexRef};
use crate::{Error, Result, Verdict};

/// Why a simplicial set fails to be a category (or groupoid) object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegalWitness {
    /// A composable chain of `n` edges with no filler, or with several.
    Spine {
        n: usize,
        spine: Vec<String>,
        fillers: Vec<String>,
    },
    NotInvertible {
        edge: String,
    },
}

/// Composable chains of `n` edges, each a list of 1-simplices.
fn composable_chains(x: &FiniteSimplicialSet, n: usize) -> Vec<Vec<SimplexRef>> {
    let edges = x.simplices(1);
    let mut out: Vec<Vec<SimplexRef>> = edges.iter().map(|e| vec![e.clone()]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for ch in &out {
            let end = x.vertex(ch.last().unwrap(), 1);
            for e in edges.iter().filter(|e| x.vertex(e, 0) == end) {
                let mut c = ch.clone();
                c.push(e.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out
}

fn spine(x: &FiniteSimplicialSet, s: &SimplexRef) -> Vec<SimplexRef> {
    (0..s.dim()).map(|i| x.edge(s, i, i + 1)).collect()
}

/// Bijectivity of the Segal maps `X_n -> X_1 ×_{X_0} … ×_{X_0} X_1` for
/// `2 ≤ n ≤ n_max`.
pub fn is_category_object(x: &FiniteSimplicialSet, n_max: usize) -> Verdict<SegalWitness> {
    for n in 2..=n_max {
        let mut fillers: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
        for s in x.simplices(n) {
            fillers.entry(spine(x, &s)).or_default().push(s);
        }
        for ch in composable_chains(x, n) {
            let found = fillers.get(&ch).map(Vec::as_slice).unwrap_or(&[]);
            if found.len() != 1 {
                return Verdict::No {
                    witness: SegalWitness::Spine {
                        n,
                        spine: ch.iter().map(|e| x.ref_label(e)).collect(),
                        fillers: found.iter().map(|s| x.ref_label(s)).collect(),
                    },
                };
            }
        }
    }
    Verdict::SemiDecidedYes { bound: n_max }
}

struct EdgeCategory {
    category: FinCategory,
    index: HashMap<SimplexRef, usize>,
    edges: Vec<SimplexRef>,
}

fn edge_category(x: &FiniteSimplicialSet) -> Result<EdgeCategory> {
    let n_max = x.dim().max(3);
    if let Verdict::No { witness } = is_category_object(x, n_max) {
        return Err(Error::Segal(format!("{witness:?}")));
    }
    let objects: Vec<String> = x.gens(0).map(|v| x.label(v).to_string()).collect();
    let edges = x.simplices(1);
    let index: HashMap<SimplexRef, usize> = edges.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let morphisms = edges
        .iter()
        .map(|e| Morphism {
            name: if e.is_degenerate() { format!("id_{}", x.label(e.gen)) } else { x.label(e.gen).to_string() },
            src: x.vertex(e, 0).idx,
            tgt: x.vertex(e, 1).idx,
        })
        .collect();
    let identities = x.gens(0).map(|v| index[&SimplexRef { gen: v, word: vec![0] }]).collect();
    let mut table = HashMap::new();
    for s in x.simplices(2) {
        let sp = spine(x, &s);
        table.insert((index[&sp[0]], index[&sp[1]]), index[&x.face(&s, 1)]);
    }
    let category = FinCategory::new(objects, morphisms, identities, table)?;
    Ok(EdgeCategory { category, index, edges })
}

/// The category whose nerve is `x`: objects are vertices, morphisms are all
/// edges (degenerate ones as identities), composition read off 2-simplices.
/// Segal maps are checked through `max(3, dim x)`.
pub fn to_category(x: &FiniteSimplicialSet) -> Result<FinCategory> {
    Ok(edge_category(x)?.category)
}

/// Edges that are invertible in the category `x` presents.
pub fn invertible_edges(x: &FiniteSimplicialSet) -> Result<BTreeSet<SimplexRef>> {
    let ec = edge_category(x)?;
    Ok(ec.edges.iter().filter(|e| ec.category.is_invertible(ec.index[*e])).cloned().collect())
}

/// The simplicial subset of simplices all of whose edges are invertible.
pub fn invertible_core(x: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
    let inv = invertible_edges(x)?;
    let keep: BTreeSet<GenId> = x
        .all_gens()
        .filter(|&g| {
            let s = SimplexRef::nondeg(g);
            (0..=g.dim).all(|a| (a + 1..=g.dim).all(|b| inv.contains(&x.edge(&s, a, b))))
        })
        .collect();
    Ok(x.subcomplex(&keep)?.0)
}

/// A category object all of whose edges are invertible.
pub fn is_groupoid_object(x: &FiniteSimplicialSet, n_max: usize) -> Result<Verdict<SegalWitness>> {
    let v = is_category_object(x, n_max);
    if !v.is_yes() {
        return Ok(v);
    }
    let inv = invertible_edges(x)?;
    if let Some(e) = x.simplices(1).into_iter().find(|e| !inv.contains(e)) {
        return Ok(Verdict::No { witness: SegalWitness::NotInvertible { edge: x.ref_label(&e) } });
    }
    Ok(v)
}

/// Edges hit by the middle edge of some map from `Δ³` with `Δ^{0,2}` and
/// `Δ^{1,3}` collapsed.
pub fn detect_invertibles_via_k(x: &FiniteSimplicialSet) -> BTreeSet<SimplexRef> {
    let k = collapsed_k();
    let core = collapsed_k_core_edge(&k);
    sset_hom(&k, x).into_iter().map(|m| m.image_of_gen(core).clone()).collect()
}
