use std::collections::BTreeMap;

use super::hom::{concat, hom_complex_with, push_atom, AtomString, HomComplex, Paths};
use super::poset::mask_of;
use crate::decorations::{MarkedSSet, ScaledSSet};
use crate::sset::{GenId, SimplexRef};
use crate::{Error, Result};

/// Hom complexes of `C[S]` between the vertices on paths from `x` to `y`,
/// with the marked edges generated by thin triangles.
#[derive(Clone, Debug)]
pub struct CoherentMarking {
    pub x: GenId,
    pub y: GenId,
    homs: BTreeMap<(usize, usize), HomComplex>,
    /// Marked edge classes per pair, each with a representing string.
    marked: BTreeMap<(usize, usize), BTreeMap<SimplexRef, AtomString>>,
}

impl CoherentMarking {
    /// Builds the hom complexes (`Hom(x, y)` through `dim_bound`, the others
    /// through dimension 1), seeds the thin-witnessed edges, and closes.
    pub fn new(s: &ScaledSSet, x: &str, y: &str, dim_bound: usize) -> Result<Self> {
        let base = &s.base;
        let gx = base.gen_by_label(x).filter(|g| g.dim == 0).ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
        let gy = base.gen_by_label(y).filter(|g| g.dim == 0).ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
        let paths = Paths::new(base);
        let on = paths.between(gx.idx, gy.idx)?;
        let verts: Vec<usize> = (0..on.len()).filter(|&v| on[v]).collect();
        let mut homs = BTreeMap::new();
        for &a in &verts {
            for &b in &verts {
                let reach = paths.between(a, b)?;
                if a != b && reach[a] {
                    let bound = if (a, b) == (gx.idx, gy.idx) { dim_bound.max(1) } else { 1 };
                    homs.insert((a, b), hom_complex_with(base, &paths, GenId::new(0, a), GenId::new(0, b), bound)?);
                }
            }
        }
        let mut marked: BTreeMap<(usize, usize), BTreeMap<SimplexRef, AtomString>> = BTreeMap::new();
        for t in base.simplices(2) {
            if !s.is_thin(&t) {
                continue;
            }
            let (a, b) = (base.vertex(&t, 0).idx, base.vertex(&t, 2).idx);
            let Some(h) = homs.get(&(a, b)) else { continue };
            let w = push_atom(base, &t, &[mask_of([0, 2]), mask_of([0, 1, 2])]);
            let e = h.simplex_at(1, &w).expect("witness lies in the hom complex").clone();
            marked.entry((a, b)).or_default().entry(e).or_insert(w);
        }
        let mut out = CoherentMarking { x: gx, y: gy, homs, marked };
        out.close();
        Ok(out)
    }

    /// Adds all composites of marked edges until nothing changes; returns
    /// whether anything was added.
    pub fn close(&mut self) -> bool {
        let mut changed_any = false;
        loop {
            let mut added: Vec<((usize, usize), SimplexRef, AtomString)> = Vec::new();
            for (&(a, b), m1) in &self.marked {
                for (&(b2, c), m2) in self.marked.range((b, 0)..) {
                    if b2 != b {
                        break;
                    }
                    let Some(h) = self.homs.get(&(a, c)) else { continue };
                    for w1 in m1.values() {
                        for w2 in m2.values() {
                            let w = concat(w1, w2);
                            let e = h.simplex_at(1, &w).expect("composite lies in the hom complex");
                            let known = self.marked.get(&(a, c)).is_some_and(|m| m.contains_key(e));
                            if !known {
                                added.push(((a, c), e.clone(), w));
                            }
                        }
                    }
                }
            }
            let mut changed = false;
            for (k, e, w) in added {
                changed |= self.marked.entry(k).or_default().insert(e, w).is_none();
            }
            if !changed {
                return changed_any;
            }
            changed_any = true;
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> Option<&HomComplex> {
        self.homs.get(&(a, b))
    }

    /// `Hom(x, y)` with its marked edges.
    pub fn marked_hom(&self) -> MarkedSSet {
        let h = &self.homs[&(self.x.idx, self.y.idx)];
        let marked = self.marked.get(&(self.x.idx, self.y.idx)).map(|m| m.keys().filter(|e| !e.is_degenerate()).map(|e| e.gen).collect()).unwrap_or_default();
        MarkedSSet { base: h.set.clone(), marked }
    }
}

/// `Hom_{C[S]}(x, y)` marked by composites of thin-triangle witnesses.
pub fn marked_closure(s: &ScaledSSet, x: &str, y: &str, dim_bound: usize) -> Result<MarkedSSet> {
    if x == y {
        let h = super::hom::hom_complex(&s.base, x, y, dim_bound)?;
        return Ok(MarkedSSet { base: h.set, marked: Default::default() });
    }
    Ok(CoherentMarking::new(s, x, y, dim_bound)?.marked_hom())
}
