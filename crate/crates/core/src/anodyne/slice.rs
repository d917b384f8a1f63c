use std::collections::{BTreeSet, HashMap};

use super::grid::Grid;
use crate::decorations::{Decorated, MarkedSSet, ScaledSSet};
use crate::sset::{codegeneracy, coface, FiniteSimplicialSet, GenId, MapSearch, SimplexRef, SimplicialMap};
use crate::{Error, Result};

/// The fat scaled slice `C^{x/}` truncated at `dim_bound`: an `n`-simplex is
/// a map `Δⁿ × Δ¹ -> C` constant at `x` on `Δⁿ × {0}` whose upper-right
/// triangles are all thin. Edges are marked when both triangles of their
/// square are thin.
#[derive(Clone, Debug)]
pub struct ScaledSlice {
    pub set: MarkedSSet,
    /// Restriction to `Δⁿ × {1}`.
    pub projection: SimplicialMap,
    pub dim_bound: usize,
    squares: Vec<Vec<SimplicialMap>>,
}

impl ScaledSlice {
    /// The map `Δⁿ × Δ¹ -> C` represented by a generator.
    pub fn square(&self, g: GenId) -> &SimplicialMap {
        &self.squares[g.dim][g.idx]
    }
}

fn vertex(c: &FiniteSimplicialSet, l: &str) -> Result<GenId> {
    c.gen_by_label(l).filter(|g| g.dim == 0).ok_or_else(|| Error::UnknownLabel(l.to_string()))
}

fn constant(v: GenId, d: usize) -> SimplexRef {
    SimplexRef::from_surjection(v, &vec![0; d + 1])
}

/// `φ ∘ (θ × id)` for monotone `θ : [m] -> [n]`.
fn pull(c: &FiniteSimplicialSet, from: &Grid, to: &Grid, theta: &[usize], phi: &SimplicialMap) -> SimplicialMap {
    SimplicialMap::new(
        (0..=from.set.top_dim())
            .map(|d| {
                from.set
                    .gens(d)
                    .map(|g| {
                        let chain: Vec<(usize, usize)> = from.chain(g).iter().map(|&(i, t)| (theta[i], t)).collect();
                        phi.apply(c, &to.chain_ref(&chain).expect("monotone image of a chain"))
                    })
                    .collect()
            })
            .collect(),
    )
}

fn build(c: &ScaledSSet, x: GenId, y: Option<GenId>, dim_bound: usize) -> ScaledSlice {
    let cb = &c.base;
    let grids: Vec<Grid> = (0..=dim_bound).map(|n| Grid::new(n, 1)).collect();
    let mut all: Vec<Vec<SimplicialMap>> = Vec::new();
    for grid in &grids {
        let mut fixed = Vec::new();
        for g in grid.set.all_gens() {
            let ch = grid.chain(g);
            if ch.iter().all(|p| p.1 == 0) {
                fixed.push((g, constant(x, g.dim)));
            } else if let Some(y) = y.filter(|_| ch.iter().all(|p| p.1 == 1)) {
                fixed.push((g, constant(y, g.dim)));
            }
        }
        let upper: BTreeSet<GenId> = grid.gens_where(|ch| ch.len() == 3 && ch[0].1 == 0 && ch[1].1 == 1 && ch[0].0 == ch[1].0 && ch[2].1 == 1);
        let maps = MapSearch::new(&grid.set, cb).fix_all(fixed).filter(move |g, s| !upper.contains(&g) || c.is_thin(s)).run();
        all.push(maps);
    }
    let keys: Vec<HashMap<&SimplicialMap, usize>> = all.iter().map(|v| v.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let face = |n: usize, phi: &SimplicialMap, k: usize| pull(cb, &grids[n - 1], &grids[n], &coface(n, k), phi);
    let degen = |n: usize, phi: &SimplicialMap, k: usize| pull(cb, &grids[n + 1], &grids[n], &codegeneracy(n, k), phi);
    // nondegenerate squares per level and their generator index
    let mut nondeg: Vec<Vec<usize>> = Vec::new();
    let mut gen_of: Vec<HashMap<usize, usize>> = Vec::new();
    for (n, maps) in all.iter().enumerate() {
        let mut ids = Vec::new();
        let mut pos = HashMap::new();
        for (i, phi) in maps.iter().enumerate() {
            let degenerate = (0..n).any(|k| degen(n - 1, &face(n, phi, k), k) == *phi);
            if !degenerate {
                pos.insert(i, ids.len());
                ids.push(i);
            }
        }
        nondeg.push(ids);
        gen_of.push(pos);
    }
    fn normal(
        n: usize,
        phi: &SimplicialMap,
        keys: &[HashMap<&SimplicialMap, usize>],
        gen_of: &[HashMap<usize, usize>],
        face: &dyn Fn(usize, &SimplicialMap, usize) -> SimplicialMap,
        degen: &dyn Fn(usize, &SimplicialMap, usize) -> SimplicialMap,
    ) -> SimplexRef {
        let i = keys[n][phi];
        if let Some(&g) = gen_of[n].get(&i) {
            return SimplexRef::nondeg(GenId::new(n, g));
        }
        for k in 0..n {
            let f = face(n, phi, k);
            if degen(n - 1, &f, k) == *phi {
                let r = normal(n - 1, &f, keys, gen_of, face, degen);
                let s = r.surjection();
                let surj: Vec<usize> = codegeneracy(n - 1, k).iter().map(|&j| s[j]).collect();
                return SimplexRef::from_surjection(r.gen, &surj);
            }
        }
        unreachable!("a square outside the nondegenerate list is degenerate")
    }
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    let mut squares = Vec::new();
    for (n, ids) in nondeg.iter().enumerate() {
        let grid = &grids[n];
        let top: Vec<GenId> = grid.set.gens(grid.set.top_dim()).collect();
        labels.push(
            ids.iter()
                .map(|&i| {
                    let phi = &all[n][i];
                    let parts: Vec<String> = top.iter().map(|&g| cb.ref_label(phi.image_of_gen(g))).collect();
                    if n == 0 {
                        parts[0].clone()
                    } else {
                        format!("[{}]", parts.join("|"))
                    }
                })
                .collect::<Vec<_>>(),
        );
        faces.push(
            ids.iter()
                .map(|&i| {
                    if n == 0 {
                        return Vec::new();
                    }
                    (0..=n).map(|k| normal(n - 1, &face(n, &all[n][i], k), &keys, &gen_of, &face, &degen)).collect()
                })
                .collect::<Vec<_>>(),
        );
        squares.push(ids.iter().map(|&i| all[n][i].clone()).collect::<Vec<_>>());
    }
    while labels.len() > 1 && labels.last().is_some_and(|l| l.is_empty()) {
        labels.pop();
        faces.pop();
        squares.pop();
    }
    let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("slice is well formed");
    let squares: Vec<Vec<SimplicialMap>> = squares
        .into_iter()
        .zip(&perm)
        .map(|(v, pd)| {
            let mut out = v.clone();
            for (i, sq) in v.into_iter().enumerate() {
                out[pd[i]] = sq;
            }
            out
        })
        .collect();
    let marked: BTreeSet<GenId> = set
        .gens(1)
        .filter(|&e| {
            let g1 = &grids[1];
            let lower = g1.gen_of(&[(0, 0), (1, 0), (1, 1)]).unwrap();
            c.is_thin(squares[1][e.idx].image_of_gen(lower))
        })
        .collect();
    let projection = SimplicialMap::new(
        squares
            .iter()
            .enumerate()
            .map(|(n, v)| {
                let top_row: Vec<(usize, usize)> = (0..=n).map(|i| (i, 1)).collect();
                let r = grids[n].chain_ref(&top_row).unwrap();
                v.iter().map(|phi| phi.apply(cb, &r)).collect()
            })
            .collect(),
    );
    ScaledSlice { set: MarkedSSet::from_parts(set, marked).expect("marked edges"), projection, dim_bound, squares }
}

/// `C^{x/}` through dimension `dim_bound`.
pub fn scaled_slice(c: &ScaledSSet, x: &str, dim_bound: usize) -> Result<ScaledSlice> {
    Ok(build(c, vertex(&c.base, x)?, None, dim_bound))
}

/// The fibre of `C^{x/}` over `y`, through dimension `dim_bound`.
pub fn hom_via_slice(c: &ScaledSSet, x: &str, y: &str, dim_bound: usize) -> Result<MarkedSSet> {
    let (xv, yv) = (vertex(&c.base, x)?, vertex(&c.base, y)?);
    Ok(build(c, xv, Some(yv), dim_bound).set)
}
