use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Position of a nondegenerate generator inside a complex: its dimension and
/// its index in the (sorted) label list of that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub dim: usize,
    pub idx: usize,
}

impl GenId {
    pub fn new(dim: usize, idx: usize) -> Self {
        GenId { dim, idx }
    }
}

/// A simplex in Eilenberg–Zilber normal form: a generator followed by a
/// strictly decreasing degeneracy word `s_{i1} … s_{ik}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub gen: GenId,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn nondeg(gen: GenId) -> Self {
        SimplexRef { gen, word: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.gen.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The degeneracy as a monotone surjection `[dim] -> [gen.dim]`.
    pub fn surjection(&self) -> Vec<usize> {
        surjection_from_collapses(self.dim(), &self.word)
    }

    /// Builds the normal form of `gen ∘ surj` for a monotone surjection.
    pub fn from_surjection(gen: GenId, surj: &[usize]) -> Self {
        debug_assert_eq!(surj.last().copied().unwrap_or(0), gen.dim);
        SimplexRef { gen, word: collapses(surj) }
    }

    /// Checks the word is strictly decreasing and indices fit the dimension.
    pub fn is_normal(&self) -> bool {
        self.word.windows(2).all(|w| w[0] > w[1])
            && self.word.iter().enumerate().all(|(pos, &i)| {
                // s_i applied to a simplex of dimension gen.dim + (len - pos - 1)
                i <= self.gen.dim + (self.word.len() - pos - 1)
            })
    }
}

/// Collapse positions `p` with `f(p) = f(p+1)`, listed in decreasing order.
pub fn collapses(f: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..f.len().saturating_sub(1)).filter(|&p| f[p] == f[p + 1]).collect();
    out.reverse();
    out
}

/// The monotone surjection `[m] -> [m - |c|]` collapsing exactly the positions in `c`.
pub fn surjection_from_collapses(m: usize, c: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(m + 1);
    let mut v = 0;
    out.push(0);
    for p in 0..m {
        if !c.contains(&p) {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Coface `δ_k : [m-1] -> [m]`.
pub fn coface(m: usize, k: usize) -> Vec<usize> {
    (0..=m).filter(|&j| j != k).collect()
}

/// Codegeneracy `σ_k : [m+1] -> [m]`.
pub fn codegeneracy(m: usize, k: usize) -> Vec<usize> {
    (0..=m + 1).map(|j| if j <= k { j } else { j - 1 }).collect()
}

pub fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

/// Epi–mono factorization of a monotone map: returns the sorted image and the
/// surjection onto it.
pub fn epi_mono(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = f.to_vec();
    image.dedup();
    let mut surj = Vec::with_capacity(f.len());
    let mut k = 0;
    for &v in f {
        while image[k] != v {
            k += 1;
        }
        surj.push(k);
    }
    (image, surj)
}

/// Simplicial operators acting on simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

/// All monotone maps `[n] -> [m]`, lexicographically.
pub fn monotone_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..=m).combinations_with_replacement(n + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        let f = vec![0, 0, 1, 2, 2, 2];
        let c = collapses(&f);
        assert_eq!(c, vec![4, 3, 0]);
        assert_eq!(surjection_from_collapses(5, &c), f);
    }

    #[test]
    fn epi_mono_factors() {
        let (img, s) = epi_mono(&[1, 1, 3, 4, 4]);
        assert_eq!(img, vec![1, 3, 4]);
        assert_eq!(s, vec![0, 0, 1, 2, 2]);
    }

    #[test]
    fn normal_word_checks() {
        let r = SimplexRef { gen: GenId::new(0, 0), word: vec![1, 0] };
        assert!(r.is_normal());
        let bad = SimplexRef { gen: GenId::new(0, 0), word: vec![0, 1] };
        assert!(!bad.is_normal());
    }
}
