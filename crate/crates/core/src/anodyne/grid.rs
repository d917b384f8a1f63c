use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::sset::{from_vertex_sets, FiniteSimplicialSet, GenId, SimplexRef};

/// The nerve of the product poset `[a] × [b]`, i.e. `Δᵃ × Δᵇ`, with each
/// nondegenerate simplex remembered as its chain of lattice points.
#[derive(Clone, Debug)]
pub struct Grid {
    pub a: usize,
    pub b: usize,
    pub set: FiniteSimplicialSet,
    index: HashMap<Vec<(usize, usize)>, GenId>,
    chains: Vec<Vec<Vec<(usize, usize)>>>,
}

fn point_label(p: (usize, usize)) -> String {
    format!("({},{})", p.0, p.1)
}

impl Grid {
    pub fn new(a: usize, b: usize) -> Self {
        let w = b + 1;
        let pt = move |v: usize| (v / w, v % w);
        let n = (a + 1) * w;
        // the numbering i*(b+1)+j is a linear extension, so chains are increasing sequences
        let mut sets = BTreeSet::new();
        for k in 1..=a + b + 1 {
            for c in (0..n).combinations(k) {
                if c.windows(2).all(|p| {
                    let (x, y) = (pt(p[0]), pt(p[1]));
                    x.0 <= y.0 && x.1 <= y.1
                }) {
                    sets.insert(c);
                }
            }
        }
        let set = from_vertex_sets(&sets, |s| s.iter().map(|&v| point_label(pt(v))).collect()).expect("grid nerve");
        let mut index = HashMap::new();
        let mut chains: Vec<Vec<Vec<(usize, usize)>>> = (0..=set.top_dim()).map(|d| vec![Vec::new(); set.num_gens(d)]).collect();
        for g in set.all_gens() {
            let c: Vec<(usize, usize)> = set.vertices(&SimplexRef::nondeg(g)).iter().map(|v| pt(v.idx)).collect();
            index.insert(c.clone(), g);
            chains[g.dim][g.idx] = c;
        }
        Grid { a, b, set, index, chains }
    }

    pub fn chain(&self, g: GenId) -> &[(usize, usize)] {
        &self.chains[g.dim][g.idx]
    }

    /// The generator spanned by a strictly increasing chain.
    pub fn gen_of(&self, chain: &[(usize, usize)]) -> Option<GenId> {
        self.index.get(chain).copied()
    }

    /// The (possibly degenerate) simplex spanned by a weakly increasing chain.
    pub fn chain_ref(&self, chain: &[(usize, usize)]) -> Option<SimplexRef> {
        let distinct: Vec<(usize, usize)> = chain.iter().copied().dedup().collect();
        let gen = self.gen_of(&distinct)?;
        let mut surj = Vec::with_capacity(chain.len());
        let mut k = 0;
        for (r, p) in chain.iter().enumerate() {
            if r > 0 && *p != chain[r - 1] {
                k += 1;
            }
            surj.push(k);
        }
        Some(SimplexRef::from_surjection(gen, &surj))
    }

    /// Generators satisfying a predicate on their chain.
    pub fn gens_where(&self, keep: impl Fn(&[(usize, usize)]) -> bool) -> BTreeSet<GenId> {
        self.set.all_gens().filter(|&g| keep(self.chain(g))).collect()
    }
}
