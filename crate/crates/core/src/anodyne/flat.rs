use std::collections::HashMap;

use crate::homology::{contractibility_certificate, HomologyCertificate};
use crate::sset::{simplex, FiniteSimplicialSet, GenId, SimplexRef, SimplicialMap};
use crate::{Error, Result};

/// `D_{C//E}` for an edge `f : C -> E` of `M` over `Δ^{0,2}`: its
/// `k`-simplices are the `(k+2)`-simplices of `M` from `C` to `E` with long
/// edge `f` and all interior vertices over `1`.
pub fn double_slice_fiber(m: &FiniteSimplicialSet, p: &SimplicialMap, f: &SimplexRef) -> Result<FiniteSimplicialSet> {
    let base = simplex(2);
    p.validate(m, &base)?;
    m.check_ref(f)?;
    let long = SimplexRef::nondeg(base.gen_by_label("02").unwrap());
    if f.dim() != 1 || p.apply(&base, f) != long {
        return Err(Error::Precondition(format!("edge {} does not lie over Δ^{{0,2}}", m.ref_label(f))));
    }
    let (c, e) = (m.vertex(f, 0), m.vertex(f, 1));
    let over_one = |v: GenId| base.label(p.image_of_gen(v).gen) == "1";
    let mut index: HashMap<GenId, GenId> = HashMap::new();
    let mut cells: Vec<Vec<GenId>> = Vec::new();
    for d in 2..=m.top_dim() {
        let mut level = Vec::new();
        for t in m.gens(d) {
            let tau = SimplexRef::nondeg(t);
            let vs = m.vertices(&tau);
            if vs[0] == c && vs[d] == e && vs[1..d].iter().all(|&v| over_one(v)) && m.edge(&tau, 0, d) == *f {
                index.insert(t, GenId::new(d - 2, level.len()));
                level.push(t);
            }
        }
        cells.push(level);
    }
    while cells.last().is_some_and(|l| l.is_empty()) {
        cells.pop();
    }
    if cells.is_empty() {
        return Ok(FiniteSimplicialSet::empty());
    }
    let labels = cells.iter().map(|l| l.iter().map(|&t| m.label(t).to_string()).collect()).collect();
    let faces = cells
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.iter()
                .map(|&t| {
                    if k == 0 {
                        return Vec::new();
                    }
                    (0..=k)
                        .map(|j| {
                            let r = m.face(&SimplexRef::nondeg(t), j + 1);
                            SimplexRef { gen: index[&r.gen], word: r.word.iter().map(|&w| w - 1).collect() }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FiniteSimplicialSet::from_indexed(labels, faces)
}

/// Certifies `D_{C//E}` weakly contractible, the flatness criterion for an
/// inner fibration over `Δ²` at the edge `f`.
pub fn is_flat_over_triangle(m: &FiniteSimplicialSet, p: &SimplicialMap, f: &SimplexRef, bound: usize) -> Result<HomologyCertificate> {
    let d = double_slice_fiber(m, p, f)?;
    Ok(contractibility_certificate(&d, bound))
}
