use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use super::grid::Grid;
use crate::sset::{FiniteSimplicialSet, GenId, SimplexRef};
use crate::{Error, Result};

/// The expected intersection of an attached simplex with the prior stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Region {
    /// The horn missing the top cell and the face opposite `missing`.
    Horn {
        missing: usize,
    },
    Boundary,
}

impl Region {
    fn describe(&self, m: usize) -> String {
        match self {
            Region::Horn { missing } => format!("Λ^{m}_{missing}"),
            Region::Boundary => format!("∂Δ^{m}"),
        }
    }
}

/// One attachment: the simplex, the region it is glued along, and the edges
/// and triangles (as vertex positions of the simplex) the generator needs
/// marked or thin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub simplex: GenId,
    pub region: Region,
    pub marked: Vec<[usize; 2]>,
    pub thin: Vec<[usize; 3]>,
}

/// A claimed cell-by-cell construction of `ambient` from `start`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub name: String,
    pub ambient: FiniteSimplicialSet,
    pub start: BTreeSet<GenId>,
    pub marked: BTreeSet<GenId>,
    pub thin: BTreeSet<GenId>,
    pub steps: Vec<FiltrationStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub simplex: String,
    pub region: String,
    pub faces_present: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationCertificate {
    pub name: String,
    pub start_cells: usize,
    pub steps: Vec<StepRecord>,
    pub f_vector: Vec<usize>,
}

impl fmt::Display for FiltrationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} steps from {} cells", self.name, self.steps.len(), self.start_cells)?;
        for s in &self.steps {
            writeln!(f, "  {} along {}", s.simplex, s.region)?;
        }
        Ok(())
    }
}

/// Checks every attaching intersection exactly, the decorations each step
/// relies on, and that the last stage is the whole ambient complex.
pub fn verify_filtration(filt: &Filtration) -> Result<FiltrationCertificate> {
    let x = &filt.ambient;
    if !x.is_closed(&filt.start) {
        return Err(Error::Precondition(format!("{}: initial stage is not a simplicial subset", filt.name)));
    }
    let mut stage = filt.start.clone();
    let mut records = Vec::new();
    for (k, step) in filt.steps.iter().enumerate() {
        let sigma = SimplexRef::nondeg(step.simplex);
        let m = step.simplex.dim;
        let label = x.label(step.simplex).to_string();
        let fail = |msg: String| Error::Precondition(format!("{} step {k} ({label}): {msg}", filt.name));
        if stage.contains(&step.simplex) {
            return Err(fail("simplex already present".into()));
        }
        let mut unexpected = Vec::new();
        let mut missing = Vec::new();
        let mut present = 0;
        for size in 1..=m {
            for s in (0..=m).combinations(size) {
                let face = x.restrict(&sigma, &s);
                let here = !face.is_degenerate() && stage.contains(&face.gen);
                let want = match step.region {
                    Region::Boundary => true,
                    Region::Horn { missing: j } => !(size == m && !s.contains(&j)),
                };
                present += usize::from(here);
                if here && !want {
                    unexpected.push(s);
                } else if want && !here {
                    missing.push(s);
                }
            }
        }
        if !unexpected.is_empty() || !missing.is_empty() {
            return Err(fail(format!("intersection differs from {}: unexpected faces {unexpected:?}, missing faces {missing:?}", step.region.describe(m))));
        }
        for e in &step.marked {
            let r = x.restrict(&sigma, e);
            if !r.is_degenerate() && !filt.marked.contains(&r.gen) {
                return Err(fail(format!("edge {e:?} ({}) is not marked", x.ref_label(&r))));
            }
        }
        for t in &step.thin {
            let r = x.restrict(&sigma, t);
            if !r.is_degenerate() && !filt.thin.contains(&r.gen) {
                return Err(fail(format!("triangle {t:?} ({}) is not thin", x.ref_label(&r))));
            }
        }
        stage.extend(x.closure([step.simplex]));
        records.push(StepRecord { simplex: label, region: step.region.describe(m), faces_present: present });
    }
    let left: Vec<String> = x.all_gens().filter(|g| !stage.contains(g)).map(|g| x.label(g).to_string()).collect();
    if !left.is_empty() {
        return Err(Error::Precondition(format!("{}: final stage misses {left:?}", filt.name)));
    }
    Ok(FiltrationCertificate { name: filt.name.clone(), start_cells: filt.start.len(), steps: records, f_vector: x.f_vector() })
}

fn step(grid: &Grid, chain: &[(usize, usize)], region: Region, marked: Vec<[usize; 2]>, thin: Vec<[usize; 3]>) -> FiltrationStep {
    FiltrationStep { simplex: grid.gen_of(chain).expect("prism simplex is a chain"), region, marked, thin }
}

fn coords(chain: &[(usize, usize)], first: bool) -> BTreeSet<usize> {
    chain.iter().map(|p| if first { p.0 } else { p.1 }).collect()
}

/// `Δⁿ × {1} ∪ ∂Δⁿ × Δ¹ ⊆ Δⁿ × Δ¹` with `{n} × Δ¹` marked, built from the
/// simplices `σ_i(j) = (j,0)` for `j ≤ i` and `(j-1,1)` otherwise.
pub fn preperc(n: usize) -> Result<Filtration> {
    if n == 0 {
        return Err(Error::Precondition("preperc needs n > 0".into()));
    }
    let grid = Grid::new(n, 1);
    let start = grid.gens_where(|c| c.iter().all(|p| p.1 == 1) || coords(c, true).len() < n + 1);
    let marked = grid.gens_where(|c| c == [(n, 0), (n, 1)]);
    let steps = (0..=n)
        .map(|i| {
            let chain: Vec<(usize, usize)> = (0..=n + 1).map(|j| if j <= i { (j, 0) } else { (j - 1, 1) }).collect();
            if i < n {
                step(&grid, &chain, Region::Horn { missing: i + 1 }, vec![], vec![])
            } else {
                step(&grid, &chain, Region::Horn { missing: n + 1 }, vec![[n, n + 1]], vec![])
            }
        })
        .collect();
    Ok(Filtration { name: format!("preperc(n={n})"), ambient: grid.set, start, marked, thin: BTreeSet::new(), steps })
}

/// `{0} × Δⁿ ∪ Δ¹ × ∂Δⁿ ⊆ Δ¹ × Δⁿ` with every `Δ¹ × {b}` marked and the
/// triangle `(0,0),(1,0),(1,n)` thin.
pub fn carpal(n: usize) -> Result<Filtration> {
    let grid = Grid::new(1, n);
    let start = grid.gens_where(|c| c.iter().all(|p| p.0 == 0) || coords(c, false).len() < n + 1);
    let marked = grid.gens_where(|c| c.len() == 2 && c[0].1 == c[1].1);
    let thin = if n >= 1 { grid.gens_where(|c| c == [(0, 0), (1, 0), (1, n)]) } else { BTreeSet::new() };
    let steps = (0..=n)
        .map(|i| {
            let chain: Vec<(usize, usize)> = (0..=n + 1).map(|j| if j <= n - i { (0, j) } else { (1, j - 1) }).collect();
            if i < n {
                step(&grid, &chain, Region::Horn { missing: n - i }, vec![], vec![])
            } else {
                let thin = if n >= 1 { vec![[0, 1, n + 1]] } else { vec![] };
                step(&grid, &chain, Region::Horn { missing: 0 }, vec![[0, 1]], thin)
            }
        })
        .collect();
    Ok(Filtration { name: format!("carpal(n={n})"), ambient: grid.set, start, marked, thin, steps })
}

/// `(Λⁿᵢ × Δ¹) ∪ (Δⁿ × ∂Δ¹) ⊆ Δⁿ × Δ¹` for the scaled cone on a flat inner
/// horn: first the `n`-simplices `τ_k` of the prism over the face opposite
/// `i`, then the `(n+1)`-simplices `σ_k`.
pub fn swww(n: usize, i: usize) -> Result<Filtration> {
    if i == 0 || i >= n {
        return Err(Error::Precondition(format!("swww needs 0 < i < n, got ({n},{i})")));
    }
    let grid = Grid::new(n, 1);
    let in_horn = |c: &[(usize, usize)]| {
        let s = coords(c, true);
        s.len() < n + 1 && !(s.len() == n && !s.contains(&i))
    };
    let start = grid.gens_where(|c| in_horn(c) || c.iter().all(|p| p.1 == 0) || c.iter().all(|p| p.1 == 1));
    // degenerate image in Δⁿ, and a vanishing first edge when it lies over 0
    let thin = grid.gens_where(|c| {
        c.len() == 3 && {
            let xs = coords(c, true);
            let flat = xs.len() < 3 && !(c[0].1 == 0 && c[1].1 == 0 && c[2].1 == 1 && c[0].0 != c[1].0);
            flat || c.iter().all(|p| p.1 == 0)
        }
    });
    let delta_i = |j: usize| if j < i { j } else { j + 1 };
    let mut steps = Vec::new();
    for k in 1..n {
        let chain: Vec<(usize, usize)> = (0..=n).map(|j| if j < k { (delta_i(j), 0) } else { (delta_i(j - 1), 1) }).collect();
        steps.push(step(&grid, &chain, Region::Horn { missing: k }, vec![], vec![[k - 1, k, k + 1]]));
    }
    for k in 0..=n {
        let chain: Vec<(usize, usize)> = (0..=n + 1).map(|j| if j <= k { (j, 0) } else { (j - 1, 1) }).collect();
        if k < n {
            steps.push(step(&grid, &chain, Region::Horn { missing: k + 1 }, vec![], vec![[k, k + 1, k + 2]]));
        } else {
            steps.push(step(&grid, &chain, Region::Horn { missing: i }, vec![], vec![[i - 1, i, i + 1]]));
        }
    }
    Ok(Filtration { name: format!("swww(n={n},i={i})"), ambient: grid.set, start, marked: BTreeSet::new(), thin, steps })
}
