use serde::Serialize;

use super::generators::{delta_map, inclusion_by_labels};
use crate::decorations::{CategoricalPattern, MarkedSSet};
use crate::homology::homology;
use crate::sset::{horn, left_cone, simplex, FiniteSimplicialSet, MapSearch, Product, SimplexRef, SimplicialMap};
use crate::{Error, Result, Verdict};

/// The violated condition and a description of the offending cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberWitness {
    pub condition: u8,
    pub detail: String,
}

fn no(condition: u8, detail: String) -> Result<Verdict<FiberWitness>> {
    Ok(Verdict::No { witness: FiberWitness { condition, detail } })
}

/// Searches for a horn `Λⁿ_i -> X` over some `Δⁿ -> S` without a filler over
/// that simplex; `fix` pins generators of the horn.
fn unfillable_horn(x: &FiniteSimplicialSet, p: &SimplicialMap, s: &FiniteSimplicialSet, n: usize, i: usize, fix: &[(String, SimplexRef)]) -> Option<String> {
    let h = horn(n, i).expect("horn parameters in range");
    let d = simplex(n);
    let incl = inclusion_by_labels(&h, &d).expect("horn sits in the simplex");
    let pins = fix.iter().map(|(l, y)| (h.gen_by_label(l).expect("pinned horn cell"), y.clone()));
    for u in MapSearch::new(&h, x).fix_all(pins).run() {
        let pu = u.then(p, s);
        let incl = &incl;
        let lift_pins = |m: &SimplicialMap| h.all_gens().map(|g| (incl.image_of_gen(g).gen, m.image_of_gen(g).clone())).collect::<Vec<_>>();
        for base in MapSearch::new(&d, s).fix_all(lift_pins(&pu)).run() {
            let filled = MapSearch::new(&d, x).fix_all(lift_pins(&u)).filter(|g, y| p.apply(s, y) == *base.image_of_gen(g)).exists();
            if !filled {
                let shown: Vec<String> = u.to_labels(&h, x).into_iter().map(|(a, b)| format!("{a}->{b}")).collect();
                return Some(format!("Λ^{n}_{i} map {{{}}} has no filler", shown.join(", ")));
            }
        }
    }
    None
}

/// Whether `edge` is `q`-coCartesian, tested on horns `Λⁿ₀` with `n ≤ bound`.
/// `None` means every tested horn fills.
pub fn is_cocartesian(y: &FiniteSimplicialSet, q: &SimplicialMap, b: &FiniteSimplicialSet, edge: &SimplexRef, bound: usize) -> Option<String> {
    (2..=bound).find_map(|n| unfillable_horn(y, q, b, n, 0, &[("01".to_string(), edge.clone())]))
}

/// Bounded check of the fibered conditions (1)–(4) for `p : X -> S`;
/// (5) and (6) hold automatically for constant cones on weakly contractible
/// diagrams, and any other cone is rejected.
pub fn is_pattern_fibered(x: &MarkedSSet, p: &SimplicialMap, pattern: &CategoricalPattern, dim_bound: usize) -> Result<Verdict<FiberWitness>> {
    let s = &pattern.base;
    let xb = &x.base;
    p.validate(xb, s)?;
    for (a, c) in pattern.cones.iter().enumerate() {
        let lc = left_cone(&c.k);
        let v = c.map.image_of_gen(lc.gens(0).next().expect("cone point")).gen;
        let constant = lc.all_gens().all(|g| c.map.image_of_gen(g).gen == v);
        let top = c.k.dim() + 1;
        if !constant || !homology(&c.k, top).is_acyclic() {
            return Err(Error::Precondition(format!("cone {a} is not a constant diagram on a weakly contractible set")));
        }
    }
    for &e in &x.marked {
        let pe = p.image_of_gen(e);
        if !pattern.is_marked(pe) {
            return no(3, format!("marked edge {} lies over {}, which is not in M_S", xb.label(e), s.ref_label(pe)));
        }
    }
    for n in 2..=dim_bound {
        for i in 1..n {
            if let Some(d) = unfillable_horn(xb, p, s, n, i, &[]) {
                return no(1, d);
            }
        }
    }
    let d1 = simplex(1);
    let e01 = SimplexRef::nondeg(d1.gen_by_label("01").unwrap());
    for f in xb.gens(1) {
        let pf = p.image_of_gen(f).clone();
        if !pattern.is_marked(&pf) {
            continue;
        }
        let y = Product::pullback(xb, p, &d1, &delta_map(&d1, s, &pf), s);
        let lift = y.pair(xb, &d1, &SimplexRef::nondeg(f), &e01).expect("edge lies over its image");
        let cocart = is_cocartesian(&y.set, &y.proj2, &d1, &lift, dim_bound);
        match (x.marked.contains(&f), cocart) {
            (true, Some(d)) => return no(3, format!("marked edge {} is not coCartesian: {d}", xb.label(f))),
            (false, None) => return no(3, format!("edge {} is coCartesian through dimension {dim_bound} but not marked", xb.label(f))),
            _ => {}
        }
    }
    for e in s.gens(1).filter(|&e| pattern.marked.contains(&e)) {
        let src = s.vertex(&SimplexRef::nondeg(e), 0);
        for v in xb.gens(0).filter(|&v| p.image_of_gen(v).gen == src) {
            let lifted =
                x.marked.iter().any(|&f| p.image_of_gen(f).gen == e && !p.image_of_gen(f).is_degenerate() && xb.vertex(&SimplexRef::nondeg(f), 0) == v);
            if !lifted {
                return no(2, format!("no marked lift of {} starting at {}", s.label(e), xb.label(v)));
            }
        }
    }
    let d2 = simplex(2);
    let t01 = SimplexRef::nondeg(d2.gen_by_label("01").unwrap());
    for &t in &pattern.thin {
        let sigma = SimplexRef::nondeg(t);
        let base01 = s.edge(&sigma, 0, 1);
        let y = Product::pullback(xb, p, &d2, &delta_map(&d2, s, &sigma), s);
        for &f in x.marked.iter().filter(|&&f| *p.image_of_gen(f) == base01) {
            let lift = y.pair(xb, &d2, &SimplexRef::nondeg(f), &t01).expect("edge lies over the triangle");
            if let Some(d) = is_cocartesian(&y.set, &y.proj2, &d2, &lift, dim_bound) {
                return no(4, format!("marked edge {} is not coCartesian over thin {}: {d}", xb.label(f), s.label(t)));
            }
        }
    }
    Ok(Verdict::SemiDecidedYes { bound: dim_bound })
}
