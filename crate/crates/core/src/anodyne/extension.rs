use std::collections::BTreeMap;

use serde::Serialize;

use super::generators::{scaled_generator, DecoratedMap, GeneratorKind};
use crate::decorations::{Decorated, ScaledSSet};
use crate::sset::{MapSearch, SimplicialMap};
use crate::{Error, Result, Verdict};

fn search<'a, D: Decorated>(f: &'a DecoratedMap<D>, u: &'a SimplicialMap, z: &'a D) -> Result<MapSearch<'a>> {
    u.validate(f.source.base(), z.base())?;
    if !f.is_mono() {
        return Err(Error::Precondition(format!("generator {} is not a monomorphism", f.kind)));
    }
    if !f.source.preserved_by(u, z) {
        return Err(Error::Precondition("the map to extend does not preserve decorations".into()));
    }
    let fixed = f.source.base().all_gens().map(|g| (f.map.image_of_gen(g).gen, u.image_of_gen(g).clone()));
    let target = &f.target;
    Ok(MapSearch::new(target.base(), z.base()).fix_all(fixed).filter(move |g, y| g.dim != D::DIM || !target.cells().contains(&g) || z.is_decorated(y)))
}

/// Every decoration-preserving `v : target -> Z` with `v ∘ f = u`.
pub fn extensions<D: Decorated>(f: &DecoratedMap<D>, u: &SimplicialMap, z: &D) -> Result<Vec<SimplicialMap>> {
    Ok(search(f, u, z)?.run())
}

pub fn extension_exists<D: Decorated>(f: &DecoratedMap<D>, u: &SimplicialMap, z: &D) -> Result<bool> {
    Ok(search(f, u, z)?.exists())
}

/// A generator instance with a map out of its source that admits no extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicatWitness {
    pub generator: String,
    pub map: BTreeMap<String, String>,
}

/// Scaled-anodyne generators whose source has dimension at most `dim_bound`.
pub fn bicategory_instances(dim_bound: usize) -> Vec<DecoratedMap<ScaledSSet>> {
    let mut kinds = Vec::new();
    for n in 2..=dim_bound + 1 {
        for i in 1..n {
            kinds.push(GeneratorKind::A { n, i });
        }
    }
    if dim_bound >= 4 {
        kinds.push(GeneratorKind::B);
    }
    for n in 3..=dim_bound + 1 {
        kinds.push(GeneratorKind::C { n });
    }
    kinds.into_iter().map(|k| scaled_generator(k).expect("generator parameters in range")).collect()
}

/// Checks the extension property against every generator instance up to the
/// bound. A `No` names the instance and the unextendable map.
pub fn is_weak_bicategory(z: &ScaledSSet, dim_bound: usize) -> Result<Verdict<BicatWitness>> {
    if dim_bound < 2 {
        return Err(Error::Precondition(format!("dimension bound {dim_bound} is below 2")));
    }
    for f in bicategory_instances(dim_bound) {
        let src = &f.source;
        let maps = MapSearch::new(&src.base, &z.base).filter(|g, y| g.dim != 2 || !src.thin.contains(&g) || z.is_thin(y)).run();
        for u in maps {
            if !extension_exists(&f, &u, z)? {
                return Ok(Verdict::No { witness: BicatWitness { generator: f.kind.to_string(), map: u.to_labels(&src.base, &z.base) } });
            }
        }
    }
    Ok(Verdict::SemiDecidedYes { bound: dim_bound })
}
