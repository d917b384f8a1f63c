use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::complex::FiniteSimplicialSet;
use super::maps::SimplicialMap;
use super::simplex::{GenId, SimplexRef};
use crate::{Error, Result};

/// The named standard complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standard {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
    CollapsedK,
}

pub fn standard(kind: Standard) -> Result<FiniteSimplicialSet> {
    match kind {
        Standard::Simplex(n) => Ok(simplex(n)),
        Standard::Boundary(n) => boundary(n),
        Standard::Horn(n, i) => horn(n, i),
        Standard::CollapsedK => Ok(collapsed_k()),
    }
}

/// Label of a vertex sequence: digits concatenated when all fit in one digit.
pub fn seq_label(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        vs.iter().map(|v| v.to_string()).join(".")
    }
}

/// An ordered simplicial complex: every listed vertex set is a nondegenerate
/// simplex, faces are obtained by deleting vertices. The family must be
/// closed under nonempty subsets.
pub fn from_vertex_sets(sets: &BTreeSet<Vec<usize>>, label: impl Fn(&[usize]) -> String) -> Result<FiniteSimplicialSet> {
    let top = sets.iter().map(|s| s.len()).max().unwrap_or(1).saturating_sub(1);
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); top + 1];
    for s in sets {
        if s.is_empty() || !s.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Malformed(format!("bad vertex set {s:?}")));
        }
        by_dim[s.len() - 1].push(s);
    }
    let index: HashMap<&Vec<usize>, GenId> =
        by_dim.iter().enumerate().flat_map(|(d, v)| v.iter().enumerate().map(move |(i, s)| (*s, GenId::new(d, i)))).collect();
    let labels = by_dim.iter().map(|v| v.iter().map(|s| label(s)).collect()).collect();
    let mut faces = vec![Vec::new(); top + 1];
    for (d, v) in by_dim.iter().enumerate() {
        for s in v {
            let mut fs = Vec::new();
            if d > 0 {
                for k in 0..=d {
                    let mut t = (*s).clone();
                    t.remove(k);
                    let g = index.get(&t).ok_or_else(|| Error::Malformed(format!("face {t:?} missing")))?;
                    fs.push(SimplexRef::nondeg(*g));
                }
            }
            faces[d].push(fs);
        }
    }
    FiniteSimplicialSet::from_indexed(labels, faces)
}

fn subsets_of(n: usize, keep: impl Fn(&[usize]) -> bool) -> BTreeSet<Vec<usize>> {
    (1..=n + 1).flat_map(|k| (0..=n).combinations(k)).filter(|s| keep(s)).collect()
}

/// The standard simplex `Δⁿ`.
pub fn simplex(n: usize) -> FiniteSimplicialSet {
    from_vertex_sets(&subsets_of(n, |_| true), seq_label).expect("standard simplex")
}

/// The boundary `∂Δⁿ` (empty for n = 0).
pub fn boundary(n: usize) -> Result<FiniteSimplicialSet> {
    if n == 0 {
        return Ok(FiniteSimplicialSet::empty());
    }
    from_vertex_sets(&subsets_of(n, |s| s.len() <= n), seq_label)
}

/// The horn `Λⁿᵢ`: all faces except the top cell and the face opposite `i`.
pub fn horn(n: usize, i: usize) -> Result<FiniteSimplicialSet> {
    if i > n || n == 0 {
        return Err(Error::IndexOutOfRange { index: i, limit: n });
    }
    from_vertex_sets(&subsets_of(n, |s| s.len() <= n && !(s.len() == n && !s.contains(&i))), seq_label)
}

/// The subcomplex of `Δⁿ` spanned by the given vertex sets (and their faces).
pub fn simplex_subcomplex(n: usize, spans: &[Vec<usize>]) -> Result<FiniteSimplicialSet> {
    let mut sets = BTreeSet::new();
    for s in spans {
        for k in 1..=s.len() {
            for c in s.iter().copied().combinations(k) {
                if c.iter().any(|&v| v > n) {
                    return Err(Error::IndexOutOfRange { index: *c.iter().max().unwrap(), limit: n });
                }
                sets.insert(c);
            }
        }
    }
    from_vertex_sets(&sets, seq_label)
}

/// `Δ³` with the edges `Δ^{0,2}` and `Δ^{1,3}` collapsed to points.
///
/// Vertices are named by the representatives `0` and `1`; a face of the
/// three-simplex that lands inside a collapsed edge becomes degenerate.
pub fn collapsed_k() -> FiniteSimplicialSet {
    let class = |v: usize| v % 2;
    let collapsed = |s: &[usize]| s.iter().all(|&v| v % 2 == 0) || s.iter().all(|&v| v % 2 == 1);
    let cells: Vec<Vec<Vec<usize>>> =
        (0..4).map(|d| if d == 0 { vec![vec![0], vec![1]] } else { (0..4usize).combinations(d + 1).filter(|s| !collapsed(s)).collect() }).collect();
    let index: HashMap<Vec<usize>, GenId> =
        cells.iter().enumerate().flat_map(|(d, v)| v.iter().enumerate().map(move |(i, s)| (s.clone(), GenId::new(d, i)))).collect();
    let labels = cells.iter().map(|v| v.iter().map(|s| seq_label(s)).collect()).collect();
    let faces = cells
        .iter()
        .enumerate()
        .map(|(d, v)| {
            v.iter()
                .map(|s| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..=d)
                        .map(|k| {
                            let mut t = s.clone();
                            t.remove(k);
                            if t.len() == 1 {
                                SimplexRef::nondeg(GenId::new(0, class(t[0])))
                            } else if collapsed(&t) {
                                SimplexRef { gen: GenId::new(0, class(t[0])), word: vec![0] }
                            } else {
                                SimplexRef::nondeg(index[&t])
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FiniteSimplicialSet::from_indexed(labels, faces).expect("collapsed K")
}

/// The image of the edge `Δ^{1,2}` in the collapsed three-simplex.
pub fn collapsed_k_core_edge(k: &FiniteSimplicialSet) -> GenId {
    k.gen_by_label("12").expect("edge 12")
}

/// Prefix labels on both sides when they would collide.
fn side_labels(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> (impl Fn(&str) -> String, impl Fn(&str) -> String) {
    let clash = x.all_gens().any(|g| y.gen_by_label(x.label(g)).is_some());
    (move |l: &str| if clash { format!("L:{l}") } else { l.to_string() }, move |l: &str| if clash { format!("R:{l}") } else { l.to_string() })
}

/// The disjoint union with its two inclusions.
pub fn coproduct(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> (FiniteSimplicialSet, SimplicialMap, SimplicialMap) {
    let (lx, ly) = side_labels(x, y);
    let top = x.top_dim().max(y.top_dim());
    let mut labels = vec![Vec::new(); top + 1];
    let mut faces = vec![Vec::new(); top + 1];
    for d in 0..=top {
        let nx = x.num_gens(d);
        for g in x.gens(d) {
            labels[d].push(lx(x.label(g)));
            faces[d].push(x.gen_faces(g).to_vec());
        }
        for g in y.gens(d) {
            labels[d].push(ly(y.label(g)));
            let _ = nx;
            faces[d].push(
                y.gen_faces(g).iter().map(|f| SimplexRef { gen: GenId::new(f.gen.dim, f.gen.idx + x.num_gens(f.gen.dim)), word: f.word.clone() }).collect(),
            );
        }
    }
    let z = FiniteSimplicialSet::from_indexed(labels, faces).expect("coproduct");
    let leg = |s: &FiniteSimplicialSet, name: &dyn Fn(&str) -> String| {
        SimplicialMap::new((0..=s.top_dim()).map(|d| s.gens(d).map(|g| SimplexRef::nondeg(z.gen_by_label(&name(s.label(g))).unwrap())).collect()).collect())
    };
    let ix = leg(x, &lx);
    let iy = leg(y, &ly);
    (z, ix, iy)
}

/// The join `X ⋆ Y`.
pub fn join(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    let (lx, ly) = side_labels(x, y);
    let top = x.top_dim() + y.top_dim() + 1;
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<(Option<GenId>, Option<GenId>), GenId> = HashMap::new();
    let mut cells: Vec<Vec<(Option<GenId>, Option<GenId>)>> = vec![Vec::new(); top + 1];
    let mut add = |key: (Option<GenId>, Option<GenId>), d: usize, l: String| {
        index.insert(key, GenId::new(d, labels[d].len()));
        labels[d].push(l);
        cells[d].push(key);
    };
    for g in x.all_gens() {
        add((Some(g), None), g.dim, lx(x.label(g)));
    }
    for h in y.all_gens() {
        add((None, Some(h)), h.dim, ly(y.label(h)));
    }
    for g in x.all_gens() {
        for h in y.all_gens() {
            add((Some(g), Some(h)), g.dim + h.dim + 1, format!("{}*{}", lx(x.label(g)), ly(y.label(h))));
        }
    }
    let pair_ref = |a: &SimplexRef, b: &SimplexRef| -> SimplexRef {
        let gen = index[&(Some(a.gen), Some(b.gen))];
        let mut s = a.surjection();
        let shift = a.gen.dim + 1;
        s.extend(b.surjection().iter().map(|v| v + shift));
        SimplexRef::from_surjection(gen, &s)
    };
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); top + 1];
    for (d, cs) in cells.iter().enumerate() {
        for &(a, b) in cs {
            let fs = match (a, b) {
                (Some(g), None) => x.gen_faces(g).iter().map(|f| SimplexRef { gen: index[&(Some(f.gen), None)], word: f.word.clone() }).collect(),
                (None, Some(h)) => y.gen_faces(h).iter().map(|f| SimplexRef { gen: index[&(None, Some(f.gen))], word: f.word.clone() }).collect(),
                (Some(g), Some(h)) => {
                    let p = g.dim;
                    (0..=d)
                        .map(|k| {
                            if k <= p {
                                if p == 0 {
                                    SimplexRef::nondeg(index[&(None, Some(h))])
                                } else {
                                    pair_ref(x.gen_face(g, k), &SimplexRef::nondeg(h))
                                }
                            } else if h.dim == 0 {
                                SimplexRef::nondeg(index[&(Some(g), None)])
                            } else {
                                pair_ref(&SimplexRef::nondeg(g), y.gen_face(h, k - p - 1))
                            }
                        })
                        .collect()
                }
                (None, None) => unreachable!(),
            };
            faces[d].push(fs);
        }
    }
    FiniteSimplicialSet::from_indexed(labels, faces).expect("join")
}

/// The left cone `K^◁ = Δ⁰ ⋆ K`; the cone point is labelled `*`.
pub fn left_cone(k: &FiniteSimplicialSet) -> FiniteSimplicialSet {
    let pt = FiniteSimplicialSet::from_indexed(vec![vec!["*".to_string()]], vec![vec![Vec::new()]]).unwrap();
    join(&pt, k)
}

/// A single point with the given label.
pub fn point(label: &str) -> FiniteSimplicialSet {
    FiniteSimplicialSet::from_indexed(vec![vec![label.to_string()]], vec![vec![Vec::new()]]).unwrap()
}
