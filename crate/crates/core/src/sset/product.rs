use std::collections::HashMap;

use itertools::Itertools;

use super::complex::{uniquify, FiniteSimplicialSet};
use super::maps::SimplicialMap;
use super::simplex::{collapses, GenId, SimplexRef};

/// A product (or fibre product) together with the component data of each
/// nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: FiniteSimplicialSet,
    pairs: Vec<Vec<(SimplexRef, SimplexRef)>>,
    lookup: HashMap<(SimplexRef, SimplexRef), GenId>,
    pub proj1: SimplicialMap,
    pub proj2: SimplicialMap,
}

impl Product {
    /// `X × Y`: nondegenerate simplices are pairs with no common collapse.
    pub fn new(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Self {
        Self::filtered(x, y, |_, _| true)
    }

    /// The fibre product of `p : X -> S` and `q : Y -> S`.
    pub fn pullback(x: &FiniteSimplicialSet, p: &SimplicialMap, y: &FiniteSimplicialSet, q: &SimplicialMap, s: &FiniteSimplicialSet) -> Self {
        Self::filtered(x, y, |a, b| p.apply(s, a) == q.apply(s, b))
    }

    /// Pairs satisfying a face-stable predicate.
    pub fn filtered(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, keep: impl Fn(&SimplexRef, &SimplexRef) -> bool) -> Self {
        let top = x.top_dim() + y.top_dim();
        let mut raw: Vec<Vec<(SimplexRef, SimplexRef)>> = vec![Vec::new(); top + 1];
        for (m, slot) in raw.iter_mut().enumerate() {
            for p in 0..=m.min(x.top_dim()) {
                for q in 0..=m.min(y.top_dim()) {
                    if p + q < m {
                        continue;
                    }
                    let a_sets: Vec<Vec<usize>> = (0..m).combinations(m - p).collect();
                    let b_sets: Vec<Vec<usize>> = (0..m).combinations(m - q).collect();
                    for a in &a_sets {
                        for b in &b_sets {
                            if a.iter().any(|i| b.contains(i)) {
                                continue;
                            }
                            let wa: Vec<usize> = a.iter().rev().copied().collect();
                            let wb: Vec<usize> = b.iter().rev().copied().collect();
                            for g in x.gens(p) {
                                for h in y.gens(q) {
                                    let xs = SimplexRef { gen: g, word: wa.clone() };
                                    let ys = SimplexRef { gen: h, word: wb.clone() };
                                    if keep(&xs, &ys) {
                                        slot.push((xs, ys));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut top_used = top;
        while top_used > 0 && raw[top_used].is_empty() {
            top_used -= 1;
        }
        raw.truncate(top_used + 1);
        let pre: HashMap<(SimplexRef, SimplexRef), GenId> =
            raw.iter().enumerate().flat_map(|(d, v)| v.iter().enumerate().map(move |(i, pr)| (pr.clone(), GenId::new(d, i)))).collect();
        let mut labels: Vec<Vec<String>> = raw.iter().map(|v| v.iter().map(|(a, b)| format!("({},{})", x.ref_label(a), y.ref_label(b))).collect()).collect();
        uniquify(&mut labels);
        let faces = raw
            .iter()
            .enumerate()
            .map(|(m, v)| {
                v.iter()
                    .map(|(a, b)| {
                        if m == 0 {
                            return Vec::new();
                        }
                        (0..=m).map(|k| normalize_pair(x, y, &x.face(a, k), &y.face(b, k), |pr| pre[pr])).collect()
                    })
                    .collect()
            })
            .collect();
        let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("product is well formed");
        let mut pairs: Vec<Vec<(SimplexRef, SimplexRef)>> =
            raw.iter().map(|v| vec![(SimplexRef::nondeg(GenId::new(0, 0)), SimplexRef::nondeg(GenId::new(0, 0))); v.len()]).collect();
        let mut lookup = HashMap::new();
        for (d, v) in raw.into_iter().enumerate() {
            for (i, pr) in v.into_iter().enumerate() {
                let j = perm[d][i];
                lookup.insert(pr.clone(), GenId::new(d, j));
                pairs[d][j] = pr;
            }
        }
        let proj1 = SimplicialMap::new(pairs.iter().map(|v| v.iter().map(|p| p.0.clone()).collect()).collect());
        let proj2 = SimplicialMap::new(pairs.iter().map(|v| v.iter().map(|p| p.1.clone()).collect()).collect());
        Product { set, pairs, lookup, proj1, proj2 }
    }

    pub fn components(&self, g: GenId) -> &(SimplexRef, SimplexRef) {
        &self.pairs[g.dim][g.idx]
    }

    /// Components of an arbitrary simplex of the product.
    pub fn split(&self, x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, s: &SimplexRef) -> (SimplexRef, SimplexRef) {
        (self.proj1.apply(x, s), self.proj2.apply(y, s))
    }

    /// The simplex with the given components, if present.
    pub fn pair(&self, x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, a: &SimplexRef, b: &SimplexRef) -> Option<SimplexRef> {
        if a.dim() != b.dim() {
            return None;
        }
        let mut missing = false;
        let r = normalize_pair(x, y, a, b, |pr| match self.lookup.get(pr) {
            Some(g) => *g,
            None => {
                missing = true;
                GenId::new(0, 0)
            }
        });
        if missing {
            None
        } else {
            Some(r)
        }
    }
}

/// Splits off the common degeneracies of a pair and looks up the base pair.
fn normalize_pair(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    a: &SimplexRef,
    b: &SimplexRef,
    mut find: impl FnMut(&(SimplexRef, SimplexRef)) -> GenId,
) -> SimplexRef {
    let ca = collapses(&a.surjection());
    let cb = collapses(&b.surjection());
    let common: Vec<usize> = ca.iter().copied().filter(|p| cb.contains(p)).collect();
    let m = a.dim();
    let section: Vec<usize> = (0..=m).filter(|&j| j == 0 || !common.contains(&(j - 1))).collect();
    let a0 = x.restrict(a, &section);
    let b0 = y.restrict(b, &section);
    let gen = find(&(a0, b0));
    SimplexRef { gen, word: common }
}

pub fn product(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    Product::new(x, y).set
}
