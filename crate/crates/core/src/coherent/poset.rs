use std::collections::{BTreeSet, HashMap};

use crate::sset::{seq_label, FinCategory, FiniteSimplicialSet, GenId, SimplexRef};
use crate::{Error, Result};

/// A subset of `[0, n]` as a bit mask.
pub type Subset = u32;

pub fn bits(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&b| s & (1 << b) != 0)
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> Subset {
    vs.into_iter().fold(0, |m, v| m | (1 << v))
}

/// Mask of the interval `[a, b]`.
pub fn interval(a: usize, b: usize) -> Subset {
    mask_of(a..=b)
}

fn subset_label(s: Subset, offset: usize) -> String {
    seq_label(&bits(s).map(|b| b + offset).collect::<Vec<_>>())
}

/// The poset of subsets `S ⊆ {i, …, j}` with `i, j ∈ S`, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingPoset {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    /// Ordered by size, then lexicographically.
    pub elements: Vec<BTreeSet<usize>>,
}

pub fn mapping_poset(n: usize, i: usize, j: usize) -> Result<MappingPoset> {
    if i > j || j > n {
        return Err(Error::Precondition(format!("need 0 ≤ i ≤ j ≤ n, got ({n}, {i}, {j})")));
    }
    let cube = CubeNerve::elements_of(j - i);
    let elements = cube.iter().map(|&s| bits(s).map(|b| b + i).collect()).collect();
    Ok(MappingPoset { n, i, j, elements })
}

impl MappingPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(&self.elements[b])
    }

    pub fn category(&self) -> FinCategory {
        let names: Vec<String> = self.elements.iter().map(|s| seq_label(&s.iter().copied().collect::<Vec<_>>())).collect();
        FinCategory::from_poset(&names, |a, b| self.leq(a, b)).expect("inclusion is a partial order")
    }

    /// The nerve; its f-vector is that of the cube `(Δ¹)^{j-i-1}`.
    pub fn nerve(&self) -> FiniteSimplicialSet {
        CubeNerve::with_offset(self.j - self.i, self.i).set
    }
}

/// `S ∪ S'`, defined when `max S = min S'`.
pub fn compose_union(s: &BTreeSet<usize>, t: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    match (s.last(), t.first()) {
        (Some(a), Some(b)) if a == b => Ok(s.union(t).copied().collect()),
        _ => Err(Error::Precondition(format!("cannot compose {s:?} with {t:?}: endpoints differ"))),
    }
}

/// Nerve of the subsets of `[0, len]` containing both ends; simplices are
/// strict chains, recorded by their masks.
#[derive(Clone, Debug)]
pub struct CubeNerve {
    pub len: usize,
    pub set: FiniteSimplicialSet,
    chains: Vec<Vec<Vec<Subset>>>,
    index: HashMap<Vec<Subset>, GenId>,
}

impl CubeNerve {
    pub fn elements_of(len: usize) -> Vec<Subset> {
        let ends = mask_of([0, len]);
        let interior = if len >= 2 { len - 1 } else { 0 };
        let mut out: Vec<Subset> = (0..(1u32 << interior)).map(|m| ends | (m << 1)).collect();
        out.sort_by_key(|&s| (s.count_ones(), bits(s).collect::<Vec<_>>()));
        out
    }

    pub fn new(len: usize) -> Self {
        Self::with_offset(len, 0)
    }

    /// Labels shift every vertex by `offset`.
    pub fn with_offset(len: usize, offset: usize) -> Self {
        let elems = Self::elements_of(len);
        let mut all: Vec<Vec<Subset>> = Vec::new();
        fn extend(elems: &[Subset], chain: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
            out.push(chain.clone());
            let last = *chain.last().unwrap();
            for &e in elems {
                if e != last && e & last == last {
                    chain.push(e);
                    extend(elems, chain, out);
                    chain.pop();
                }
            }
        }
        for &e in &elems {
            extend(&elems, &mut vec![e], &mut all);
        }
        let top = all.iter().map(|c| c.len() - 1).max().unwrap_or(0);
        let mut chains: Vec<Vec<Vec<Subset>>> = vec![Vec::new(); top + 1];
        for c in all {
            chains[c.len() - 1].push(c);
        }
        for level in chains.iter_mut() {
            level.sort();
        }
        let pos: HashMap<Vec<Subset>, usize> = chains.iter().flat_map(|l| l.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
        let labels = chains.iter().map(|l| l.iter().map(|c| c.iter().map(|&s| subset_label(s, offset)).collect::<Vec<_>>().join("<")).collect()).collect();
        let faces = chains
            .iter()
            .enumerate()
            .map(|(d, l)| {
                l.iter()
                    .map(|c| {
                        if d == 0 {
                            return Vec::new();
                        }
                        (0..=d)
                            .map(|k| {
                                let mut f = c.clone();
                                f.remove(k);
                                SimplexRef::nondeg(GenId::new(d - 1, pos[&f]))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("cube nerve is well formed");
        let mut sorted: Vec<Vec<Vec<Subset>>> = chains.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        let mut index = HashMap::new();
        for (d, l) in chains.into_iter().enumerate() {
            for (i, c) in l.into_iter().enumerate() {
                let g = GenId::new(d, perm[d][i]);
                index.insert(c.clone(), g);
                sorted[d][g.idx] = c;
            }
        }
        CubeNerve { len, set, chains: sorted, index }
    }

    pub fn chain_of(&self, g: GenId) -> &[Subset] {
        &self.chains[g.dim][g.idx]
    }

    /// The simplex named by a weakly increasing chain.
    pub fn chain_ref(&self, chain: &[Subset]) -> SimplexRef {
        let mut strict: Vec<Subset> = Vec::new();
        let mut surj = Vec::with_capacity(chain.len());
        for &s in chain {
            if strict.last() != Some(&s) {
                strict.push(s);
            }
            surj.push(strict.len() - 1);
        }
        SimplexRef::from_surjection(self.index[&strict], &surj)
    }

    /// The edge `{0, len} ⊂ [0, len]`.
    pub fn long_edge(&self) -> SimplexRef {
        self.chain_ref(&[mask_of([0, self.len]), interval(0, self.len)])
    }
}
