use std::collections::HashMap;

use super::complex::{uniquify, FiniteSimplicialSet};
use super::maps::SimplicialMap;
use super::simplex::{GenId, SimplexRef};
use crate::unionfind::UnionFind;

/// A pushout with its two legs `X -> P` and `Y -> P`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub set: FiniteSimplicialSet,
    pub leg_x: SimplicialMap,
    pub leg_y: SimplicialMap,
}

/// `X ⨿_A Y`, computed levelwise as a quotient of `X_m ⊔ Y_m`.
///
/// A class is degenerate exactly when it contains a degenerate simplex, so
/// nondegenerate classes consist of generators of `X` and `Y`; each is named
/// by the lexicographically least label among its members.
pub fn pushout(a: &FiniteSimplicialSet, x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, f: &SimplicialMap, g: &SimplicialMap) -> Pushout {
    let top = x.top_dim().max(y.top_dim());
    // (side, simplex) -> normal form in P, with P's generators indexed per level in creation order
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); top + 1];
    let mut gen_nf: Vec<HashMap<GenId, SimplexRef>> = vec![HashMap::new(), HashMap::new()];
    for m in 0..=top {
        let xs = x.simplices(m);
        let ys = y.simplices(m);
        let idx: HashMap<(usize, &SimplexRef), usize> =
            xs.iter().map(|s| (0usize, s)).chain(ys.iter().map(|s| (1usize, s))).enumerate().map(|(i, k)| (k, i)).collect();
        let mut uf = UnionFind::new(xs.len() + ys.len());
        for s in a.simplices(m) {
            let l = f.apply(x, &s);
            let r = g.apply(y, &s);
            uf.union(idx[&(0, &l)], idx[&(1, &r)]);
        }
        let members: Vec<(usize, &SimplexRef)> = xs.iter().map(|s| (0, s)).chain(ys.iter().map(|s| (1, s))).collect();
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..members.len() {
            classes.entry(uf.find(i)).or_default().push(i);
        }
        let src = |side: usize| if side == 0 { x } else { y };
        let mut nondeg: Vec<(String, Vec<usize>)> = Vec::new();
        let mut class_nf: HashMap<usize, SimplexRef> = HashMap::new();
        for (root, ms) in &classes {
            if let Some(&i) = ms.iter().find(|&&i| members[i].1.is_degenerate()) {
                let (side, z) = members[i];
                class_nf.insert(*root, nf_of(&gen_nf[side], z));
            } else {
                let name = ms.iter().map(|&i| src(members[i].0).label(members[i].1.gen).to_string()).min().unwrap();
                nondeg.push((name, ms.clone()));
            }
        }
        nondeg.sort();
        let mut reps = Vec::new();
        for (name, ms) in nondeg {
            let gid = GenId::new(m, labels[m].len());
            labels[m].push(name);
            class_nf.insert(uf.find(ms[0]), SimplexRef::nondeg(gid));
            reps.push(members[ms[0]]);
        }
        for (i, (side, z)) in members.iter().enumerate() {
            if !z.is_degenerate() {
                let r = class_nf[&uf.find(i)].clone();
                gen_nf[*side].insert(z.gen, r);
            }
        }
        for (side, z) in reps {
            let fs = if m == 0 { Vec::new() } else { (0..=m).map(|k| nf_of(&gen_nf[side], &src(side).face(z, k))).collect() };
            faces[m].push(fs);
        }
    }
    uniquify(&mut labels);
    let (set, perm) = FiniteSimplicialSet::from_indexed_perm(labels, faces).expect("pushout is well formed");
    let remap = |r: &SimplexRef| SimplexRef { gen: GenId::new(r.gen.dim, perm[r.gen.dim][r.gen.idx]), word: r.word.clone() };
    let leg =
        |s: &FiniteSimplicialSet, side: usize| SimplicialMap::new((0..=s.top_dim()).map(|d| s.gens(d).map(|h| remap(&gen_nf[side][&h])).collect()).collect());
    let leg_x = leg(x, 0);
    let leg_y = leg(y, 1);
    Pushout { set, leg_x, leg_y }
}

fn nf_of(gen_nf: &HashMap<GenId, SimplexRef>, z: &SimplexRef) -> SimplexRef {
    let base = &gen_nf[&z.gen];
    let eps = base.surjection();
    let comp: Vec<usize> = z.surjection().iter().map(|&v| eps[v]).collect();
    SimplexRef::from_surjection(base.gen, &comp)
}
