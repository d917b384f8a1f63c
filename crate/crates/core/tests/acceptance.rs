//! Acceptance properties. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scx_core::anodyne::{carpal, hom_via_slice, is_flat_over_triangle, is_weak_bicategory, preperc, swww, verify_filtration, Filtration};
use scx_core::coherent::{compose_union, hom_complex, mapping_poset, scaled_nerve, MarkedSimpCategory};
use scx_core::decorations::{Decorated, ScaledSSet};
use scx_core::homology::{homology, span_category_certificate, Grade, WitnessKind};
use scx_core::segal::{adjunction_check, detect_invertibles_via_k, free_hom, invertible_core, is_category_object, to_category, PreSegalSet};
use scx_core::sset::*;
use scx_core::subdivision::{identity_factorization_label, jt_check, sd0, sd_plus0};
use scx_core::Verdict;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: scx_core::Error) -> String {
    e.to_string()
}

fn cube(k: usize) -> FiniteSimplicialSet {
    (0..k).fold(simplex(0), |x, _| product(&x, &simplex(1)))
}

fn coherent_cubes() -> Check {
    for n in 0..=5usize {
        for i in 0..=n {
            for j in i..=n {
                let k = (j - i).saturating_sub(1);
                let h = hom_complex(&simplex(n), &i.to_string(), &j.to_string(), k + 1).map_err(err)?;
                ensure!(h.set.f_vector() == cube(k).f_vector(), "Δ{n} ({i},{j}): {:?} vs {:?}", h.set.f_vector(), cube(k).f_vector());
            }
        }
    }
    let n = 5;
    let p = |i, j| mapping_poset(n, i, j).map(|m| m.elements).unwrap_or_default();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                for l in k..=n {
                    let (a, b, c) = (p(i, j), p(j, k), p(k, l));
                    for s in &a {
                        for t in &b {
                            for u in &c {
                                let left = compose_union(&compose_union(s, t).map_err(err)?, u).map_err(err)?;
                                let right = compose_union(s, &compose_union(t, u).map_err(err)?).map_err(err)?;
                                ensure!(left == right, "union not associative on {s:?} {t:?} {u:?}");
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Positions of `tau`'s vertices inside `sigma`, read from the vertex labels.
fn positions(sigma: &str, tau: &str) -> Vec<usize> {
    tau.chars().map(|c| sigma.find(c).expect("vertex of a face")).collect()
}

fn subdivision_spheres() -> Check {
    for n in 2..=4 {
        let h = homology(&sd0(&boundary(n).map_err(err)?).map_err(err)?.base, n);
        let mut want = vec![0; n + 1];
        want[0] += 1;
        want[n - 1] += 1;
        ensure!(h.betti() == want && !h.has_torsion(), "sd0 ∂Δ{n}: betti {:?}", h.betti());
    }
    let d2 = simplex(2);
    for s in [ScaledSSet::flat(&d2), ScaledSSet::sharp(&d2)] {
        let sd = sd_plus0(&s).map_err(err)?;
        for e in sd.base.gens(1) {
            let (sigma, tau, _) = sd.edge(e);
            let (ls, lt) = (d2.label(*sigma), d2.label(*tau));
            let pos = positions(ls, lt);
            let convex = pos.windows(2).all(|w| w[1] == w[0] + 1);
            let thin_long = sigma.dim == 2 && s.is_thin(&SimplexRef::nondeg(*sigma)) && pos == [0, 2];
            ensure!(sd.is_marked(&SimplexRef::nondeg(e)) == (convex || thin_long), "edge {ls} -> {lt}");
        }
    }
    Ok(())
}

fn jt_fibers() -> Check {
    for x in [simplex(0), simplex(1), simplex(2), boundary(2).map_err(err)?] {
        for n in 0..=2 {
            for (s, c) in jt_check(&x, n, n, n.max(1)).map_err(err)? {
                let w = c.witness.as_ref().ok_or_else(|| format!("no witness over {}", x.label(s.gen)))?;
                ensure!(w.kind == WitnessKind::Initial && w.object == identity_factorization_label(&x, &s), "witness {w:?}");
                ensure!(c.grade == Grade::Witness && c.is_acyclic(), "certificate over {} {:?}", x.label(s.gen), s.word);
            }
        }
    }
    Ok(())
}

fn span_categories() -> Check {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let c = span_category_certificate(m, n);
        ensure!(c.is_contractible_grade() && c.is_acyclic(), "({m},{n}): {c:?}");
    }
    Ok(())
}

fn filtrations() -> Check {
    let check = |f: scx_core::Result<Filtration>, region: String| -> Check {
        let c = verify_filtration(&f.map_err(err)?).map_err(err)?;
        let last = c.steps.last().map(|s| s.region.clone()).unwrap_or_default();
        ensure!(last == region, "{}: ends along {last}, expected {region}", c.name);
        Ok(())
    };
    for n in 1..=4 {
        check(preperc(n), format!("Λ^{}_{}", n + 1, n + 1))?;
    }
    for n in 2..=3 {
        for i in 1..n {
            check(swww(n, i), format!("Λ^{}_{i}", n + 1))?;
        }
    }
    for n in 0..=2 {
        check(carpal(n), format!("Λ^{}_0", n + 1))?;
    }
    Ok(())
}

fn slice_hom() -> Check {
    let c = MarkedSimpCategory::discrete(&FinCategory::parallel_pair());
    let z = scaled_nerve(&c, 3);
    let h = hom_via_slice(&z, "a", "b", 3).map_err(err)?;
    let hs = homology(&h.base, 2);
    let enriched = homology(&c.hom(0, 1).base, 2);
    ensure!(hs.betti() == [2, 0, 0] && !hs.has_torsion(), "slice hom betti {:?}", hs.betti());
    ensure!(hs.degrees == enriched.degrees, "enriched hom betti {:?}", enriched.betti());
    for n in 1..=3 {
        let h = hom_via_slice(&ScaledSSet::sharp(&simplex(n)), "0", &n.to_string(), 3).map_err(err)?;
        let c = homology(&h.base, 2);
        ensure!(c.is_acyclic() && c.connected, "Δ{n} sharp: betti {:?}", c.betti());
    }
    Ok(())
}

fn edge_keys<'a>(x: &FiniteSimplicialSet, edges: impl IntoIterator<Item = &'a SimplexRef>) -> BTreeSet<(String, Vec<usize>)> {
    edges.into_iter().map(|e| (x.label(e.gen).to_string(), e.word.clone())).collect()
}

fn segal_round_trips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for t in 0..20 {
        let c = FinCategory::random(&mut rng, 4, 10);
        ensure!(c.num_objects() <= 4 && c.morphisms().len() <= 10, "category {t} too large");
        let x = nerve(&c, 3);
        ensure!(is_category_object(&x, 3).is_yes(), "category {t}: nerve fails Segal");
        let d = to_category(&x).map_err(err)?;
        ensure!(is_isomorphic(&nerve(&d, 3), &x), "category {t}: round trip differs");
        let core = invertible_core(&x).map_err(err)?;
        let via_k = detect_invertibles_via_k(&x);
        ensure!(edge_keys(&core, &core.simplices(1)) == edge_keys(&x, &via_k), "category {t}: core and K disagree");
        let invertible = c.morphisms().iter().enumerate().filter(|(f, _)| c.is_invertible(*f)).count();
        ensure!(via_k.len() == invertible, "category {t}: {} detected, {invertible} invertible", via_k.len());
    }
    Ok(())
}

fn generators(a: usize) -> Vec<String> {
    ["a", "b", "c"][..a].iter().map(|s| s.to_string()).collect()
}

fn free_categories() -> Check {
    for n in 0..=3 {
        for a in 1..=3 {
            let p = PreSegalSet::free_cell(n, &generators(a), n.max(1) + 1).map_err(err)?;
            for i in 0..=n {
                for j in i..=n {
                    let h = free_hom(&p, &i.to_string(), &j.to_string(), n.max(1)).map_err(err)?;
                    ensure!(h.stabilized, "Fr{n} |A|={a} ({i},{j}) not stabilized");
                    ensure!(h.elements.len() == a.pow((j - i) as u32), "Fr{n} |A|={a} ({i},{j}): {}", h.elements.len());
                }
            }
        }
    }
    let targets = [
        FinCategory::chain(0),
        FinCategory::chain(1),
        FinCategory::chain(2),
        FinCategory::walking_iso(),
        FinCategory::parallel_pair(),
        FinCategory::cyclic_group(2),
        FinCategory::cyclic_group(3),
    ];
    for n in 0..=2 {
        for a in 1..=2 {
            let p = PreSegalSet::free_cell(n, &generators(a), n.max(1) + 1).map_err(err)?;
            for c in &targets {
                let v = adjunction_check(&p, c, n.max(1)).map_err(err)?;
                ensure!(v == Verdict::Yes, "Fr{n} |A|={a} into {:?}: {v:?}", c.objects());
            }
        }
    }
    Ok(())
}

fn bicategories() -> Check {
    let v = is_weak_bicategory(&ScaledSSet::flat(&simplex(2)), 3).map_err(err)?;
    ensure!(v.witness().is_some_and(|w| w.generator == "A(2,1)"), "flat Δ2: {v:?}");
    let pt = ScaledSSet::sharp(&simplex(0));
    let v = is_weak_bicategory(&pt, pt.base.dim() + 2).map_err(err)?;
    ensure!(v.is_semi_decided(), "Δ0: {v:?}");
    // categories whose nerves are finite-dimensional, so `dim` is meaningful
    for c in [FinCategory::parallel_pair(), FinCategory::chain(1), FinCategory::chain(2)] {
        let z = scaled_nerve(&MarkedSimpCategory::discrete(&c), 3);
        let v = is_weak_bicategory(&z, z.base.dim() + 2).map_err(err)?;
        ensure!(v.is_semi_decided(), "discrete nerve of {:?}: {v:?}", c.objects());
    }
    Ok(())
}

fn inclusion(src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> SimplicialMap {
    SimplicialMap::new((0..=src.top_dim()).map(|d| src.gens(d).map(|g| SimplexRef::nondeg(tgt.gen_by_label(src.label(g)).unwrap())).collect()).collect())
}

fn flatness() -> Check {
    let d2 = simplex(2);
    let long = SimplexRef::nondeg(d2.gen_by_label("02").unwrap());
    let c = is_flat_over_triangle(&d2, &SimplicialMap::identity(&d2), &long, 2).map_err(err)?;
    ensure!(c.is_contractible_grade(), "identity: {c:?}");
    let pr = Product::new(&d2, &simplex(1));
    let mut lifts = 0;
    for e in pr.set.gens(1).filter(|&e| pr.proj1.image_of_gen(e) == &long) {
        let c = is_flat_over_triangle(&pr.set, &pr.proj1, &SimplexRef::nondeg(e), 3).map_err(err)?;
        ensure!(c.is_contractible_grade(), "product over {}: {c:?}", pr.set.label(e));
        lifts += 1;
    }
    ensure!(lifts == 3, "{lifts} lifts of the long edge");
    let m = simplex_subcomplex(2, &[vec![0, 2], vec![1]]).map_err(err)?;
    let f = SimplexRef::nondeg(m.gen_by_label("02").unwrap());
    let c = is_flat_over_triangle(&m, &inclusion(&m, &d2), &f, 2).map_err(err)?;
    ensure!(c.grade == Grade::NotAcyclic && !c.connected, "counterexample certified: {c:?}");
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("coherent-nerve cubes and union associativity", coherent_cubes),
        ("subdivision spheres and sd+0 markings", subdivision_spheres),
        ("β fibers carry initial objects", jt_fibers),
        ("surjective chain posets are contractible", span_categories),
        ("prism filtration certificates", filtrations),
        ("slice homs match enriched homs in homology", slice_hom),
        ("Segal round trips and K-detection", segal_round_trips),
        ("free-category counts and adjunction", free_categories),
        ("weak-bicategory discrimination", bicategories),
        ("flatness and its counterexample", flatness),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {:>2} PASS: {name}", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL: {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
