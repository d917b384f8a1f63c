//! Verification suites, one per acceptance property.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use scx_core::anodyne::{carpal, hom_via_slice, is_flat_over_triangle, is_weak_bicategory, preperc, swww, verify_filtration, Filtration};
use scx_core::coherent::{compose_union, hom_complex, mapping_poset, scaled_nerve, MarkedSimpCategory};
use scx_core::decorations::{Decorated, ScaledSSet};
use scx_core::homology::{homology, span_category_certificate, Grade, WitnessKind};
use scx_core::segal::{adjunction_check, detect_invertibles_via_k, free_hom, invertible_core, invertible_edges, is_category_object, to_category, PreSegalSet};
use scx_core::sset::{
    boundary, is_isomorphic, nerve, product, simplex, simplex_subcomplex, FinCategory, FiniteSimplicialSet, Product, SimplexRef, SimplicialMap,
};
use scx_core::subdivision::{identity_factorization_label, jt_check, sd0, sd_plus0};
use scx_core::Verdict;

use crate::report::{Outcome, SuiteBuilder, SuiteReport};

pub const SUITES: &[&str] = &[
    "coherent-cubes",
    "subdivision-spheres",
    "jt-fibers",
    "span-categories",
    "filtrations",
    "slice-hom",
    "segal-round-trips",
    "free-categories",
    "bicategories",
    "flatness",
];

pub fn run_suite(name: &str, seed: u64, timings: bool) -> Option<SuiteReport> {
    let mut b = SuiteBuilder::new(name, seed, timings);
    match name {
        "coherent-cubes" => coherent_cubes(&mut b),
        "subdivision-spheres" => subdivision_spheres(&mut b),
        "jt-fibers" => jt_fibers(&mut b),
        "span-categories" => span_categories(&mut b),
        "filtrations" => filtrations(&mut b),
        "slice-hom" => slice_hom(&mut b),
        "segal-round-trips" => segal_round_trips(&mut b),
        "free-categories" => free_categories(&mut b),
        "bicategories" => bicategories(&mut b),
        "flatness" => flatness(&mut b),
        _ => return None,
    }
    Some(b.finish())
}

/// `(Δ¹)^k`, built by iterated products.
pub fn cube(k: usize) -> FiniteSimplicialSet {
    (0..k).fold(simplex(0), |x, _| product(&x, &simplex(1)))
}

fn coherent_cubes(b: &mut SuiteBuilder) {
    for n in 0..=5_usize {
        for i in 0..=n {
            for j in i..=n {
                b.run(format!("hom Δ{n} ({i},{j})"), || {
                    let k = (j - i).saturating_sub(1);
                    let h = hom_complex(&simplex(n), &i.to_string(), &j.to_string(), k + 1)?;
                    let (got, want) = (h.set.f_vector(), cube(k).f_vector());
                    Ok(Outcome::check(got == want, json!({ "f_vector": got, "expected": want })))
                });
            }
        }
    }
    b.run("union associativity Δ5", || {
        let n = 5;
        let posets: Vec<Vec<_>> =
            (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|(i, j)| mapping_poset(n, i, j).map(|p| p.elements).unwrap_or_default()).collect();
        let at = |i: usize, j: usize| &posets[i * (n + 1) + j];
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    for l in k..=n {
                        for a in at(i, j) {
                            for c in at(j, k) {
                                for d in at(k, l) {
                                    let left = compose_union(&compose_union(a, c)?, d)?;
                                    let right = compose_union(a, &compose_union(c, d)?)?;
                                    if left != right {
                                        return Ok(Outcome::fail(json!({ "a": a, "b": c, "c": d })));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    });
}

fn sphere_betti(n: usize) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    v[0] += 1;
    v[n - 1] += 1;
    v
}

fn subdivision_spheres(b: &mut SuiteBuilder) {
    for n in 2..=4 {
        b.run(format!("sd0 ∂Δ{n}"), || {
            let h = homology(&sd0(&boundary(n)?)?.base, n);
            Ok(Outcome::check(h.betti() == sphere_betti(n) && !h.has_torsion(), &h))
        });
    }
    let d2 = simplex(2);
    for (name, s) in [("flat", ScaledSSet::flat(&d2)), ("sharp", ScaledSSet::sharp(&d2))] {
        b.run(format!("sd+0 Δ2 {name}"), || {
            let sd = sd_plus0(&s)?;
            for e in sd.base.gens(1) {
                let (sigma, tau, theta) = sd.edge(e);
                // τ is a convex window of σ exactly when its vertices are consecutive
                let convex = theta.last().is_none_or(|&l| l - theta[0] + 1 == theta.len());
                let long_thin = sigma.dim == 2 && theta == &[0, 2] && s.is_thin(&SimplexRef::nondeg(*sigma));
                if sd.is_marked(&SimplexRef::nondeg(e)) != (convex || long_thin) {
                    return Ok(Outcome::fail(json!({ "sigma": d2.label(*sigma), "tau": d2.label(*tau), "theta": theta })));
                }
            }
            Ok(Outcome::pass())
        });
    }
}

fn jt_fibers(b: &mut SuiteBuilder) {
    let complexes = [("Δ0", simplex(0)), ("Δ1", simplex(1)), ("Δ2", simplex(2)), ("∂Δ2", boundary(2).expect("∂Δ²"))];
    for (name, x) in &complexes {
        for n in 0..=2 {
            b.run(format!("β fibers {name} n={n}"), || {
                for (s, c) in jt_check(x, n, n, n.max(1))? {
                    let expected = identity_factorization_label(x, &s);
                    let w = c.witness.as_ref();
                    let ok = w.is_some_and(|w| w.kind == WitnessKind::Initial && w.object == expected) && c.grade == Grade::Witness && c.is_acyclic();
                    if !ok {
                        return Ok(Outcome::fail(json!({ "simplex": x.label(s.gen), "word": s.word, "certificate": c })));
                    }
                }
                Ok(Outcome::pass())
            });
        }
    }
}

fn span_categories(b: &mut SuiteBuilder) {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        b.run(format!("chains ({m},{n})"), || {
            let c = span_category_certificate(m, n);
            Ok(Outcome::check(c.is_contractible_grade() && c.is_acyclic(), &c))
        });
    }
}

fn filtration_check(f: scx_core::Result<Filtration>, region: String) -> scx_core::Result<Outcome> {
    let c = verify_filtration(&f?)?;
    let last = c.steps.last().map(|s| s.region.clone()).unwrap_or_default();
    Ok(Outcome::check(last == region, &c))
}

fn filtrations(b: &mut SuiteBuilder) {
    for n in 1..=4 {
        b.run(format!("preperc n={n}"), || filtration_check(preperc(n), format!("Λ^{}_{}", n + 1, n + 1)));
    }
    for n in 2..=3 {
        for i in 1..n {
            b.run(format!("swww n={n} i={i}"), || filtration_check(swww(n, i), format!("Λ^{}_{i}", n + 1)));
        }
    }
    for n in 0..=2 {
        b.run(format!("carpal n={n}"), || filtration_check(carpal(n), format!("Λ^{}_0", n + 1)));
    }
}

pub fn parallel_nerve() -> ScaledSSet {
    scaled_nerve(&MarkedSimpCategory::discrete(&FinCategory::parallel_pair()), 3)
}

fn slice_hom(b: &mut SuiteBuilder) {
    b.run("parallel pair hom(a,b)", || {
        let h = hom_via_slice(&parallel_nerve(), "a", "b", 3)?;
        let c = homology(&h.base, 2);
        Ok(Outcome::check(c.betti() == [2, 0, 0] && !c.has_torsion(), &c))
    });
    for n in 1..=3 {
        b.run(format!("sharp Δ{n} hom(0,{n})"), || {
            let h = hom_via_slice(&ScaledSSet::sharp(&simplex(n)), "0", &n.to_string(), 3)?;
            let c = homology(&h.base, 2);
            Ok(Outcome::check(c.is_acyclic() && c.connected, &c))
        });
    }
}

/// Edge labels with their degeneracy words, for comparing edge sets across complexes.
fn edge_keys<'a>(x: &FiniteSimplicialSet, edges: impl IntoIterator<Item = &'a SimplexRef>) -> BTreeSet<(String, Vec<usize>)> {
    edges.into_iter().map(|e| (x.label(e.gen).to_string(), e.word.clone())).collect()
}

fn segal_round_trips(b: &mut SuiteBuilder) {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed());
    for t in 0..20 {
        let c = FinCategory::random(&mut rng, 4, 10);
        b.run(format!("random category {t:02}"), || {
            let x = nerve(&c, 3);
            let info = json!({ "objects": c.num_objects(), "morphisms": c.morphisms().len() });
            if !is_category_object(&x, 3).is_yes() {
                return Ok(Outcome::fail(json!({ "category": info, "reason": "nerve is not a category object" })));
            }
            let d = to_category(&x)?;
            if !is_isomorphic(&nerve(&d, 3), &x) {
                return Ok(Outcome::fail(json!({ "category": info, "reason": "nerve of to_category differs" })));
            }
            let core = invertible_core(&x)?;
            let via_core = edge_keys(&core, &core.simplices(1));
            let via_k = detect_invertibles_via_k(&x);
            let ok = via_core == edge_keys(&x, &via_k) && via_k == invertible_edges(&x)?;
            Ok(Outcome::check(ok, json!({ "category": info, "core_edges": via_core, "k_edges": edge_keys(&x, &via_k) })))
        });
    }
}

fn generator_names(a: usize) -> Vec<String> {
    ["a", "b", "c"][..a].iter().map(|s| s.to_string()).collect()
}

fn small_categories() -> Vec<(&'static str, FinCategory)> {
    vec![
        ("[0]", FinCategory::chain(0)),
        ("[1]", FinCategory::chain(1)),
        ("[2]", FinCategory::chain(2)),
        ("iso", FinCategory::walking_iso()),
        ("pair", FinCategory::parallel_pair()),
        ("Z/2", FinCategory::cyclic_group(2)),
    ]
}

fn free_categories(b: &mut SuiteBuilder) {
    for n in 0..=3 {
        for a in 1..=3 {
            b.run(format!("Fr{n} |A|={a} counts"), || {
                let p = PreSegalSet::free_cell(n, &generator_names(a), n.max(1) + 1)?;
                for i in 0..=n {
                    for j in i..=n {
                        let h = free_hom(&p, &i.to_string(), &j.to_string(), n.max(1))?;
                        if !h.stabilized || h.elements.len() != a.pow((j - i) as u32) {
                            return Ok(Outcome::fail(&h));
                        }
                    }
                }
                Ok(Outcome::pass())
            });
        }
    }
    for n in 0..=2 {
        for a in 1..=2 {
            for (name, c) in small_categories() {
                b.run(format!("Fr{n} |A|={a} adjunction {name}"), || {
                    let p = PreSegalSet::free_cell(n, &generator_names(a), n.max(1) + 1)?;
                    Ok(match adjunction_check(&p, &c, n.max(1))? {
                        Verdict::No { witness } => Outcome::fail(witness),
                        _ => Outcome::pass(),
                    })
                });
            }
        }
    }
}

fn verdict_outcome<W: serde::Serialize>(v: Verdict<W>) -> Outcome {
    match v {
        Verdict::Yes => Outcome::pass(),
        Verdict::SemiDecidedYes { bound } => Outcome::semi(bound),
        Verdict::No { witness } => Outcome::fail(witness),
    }
}

fn bicategories(b: &mut SuiteBuilder) {
    b.run("flat Δ2 rejected", || {
        let v = is_weak_bicategory(&ScaledSSet::flat(&simplex(2)), 3)?;
        Ok(match v.witness() {
            Some(w) if w.generator == "A(2,1)" => Outcome::pass(),
            _ => Outcome::fail(json!({ "verdict": v })),
        })
    });
    b.run("Δ0 accepted", || Ok(verdict_outcome(is_weak_bicategory(&ScaledSSet::sharp(&simplex(0)), 2)?)));
    b.run("discrete-hom nerve accepted", || {
        let z = parallel_nerve();
        Ok(verdict_outcome(is_weak_bicategory(&z, z.base.dim() + 2)?))
    });
}

/// The inclusion of a subcomplex whose generators keep their labels.
fn inclusion(src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> SimplicialMap {
    SimplicialMap::new(
        (0..=src.top_dim()).map(|d| src.gens(d).map(|g| SimplexRef::nondeg(tgt.gen_by_label(src.label(g)).expect("label present"))).collect()).collect(),
    )
}

fn flatness(b: &mut SuiteBuilder) {
    let d2 = simplex(2);
    let long = SimplexRef::nondeg(d2.gen_by_label("02").expect("long edge"));
    b.run("identity of Δ2", || {
        let c = is_flat_over_triangle(&d2, &SimplicialMap::identity(&d2), &long, 2)?;
        Ok(Outcome::check(c.is_contractible_grade(), &c))
    });
    b.run("Δ2 × Δ1 over Δ2", || {
        let pr = Product::new(&d2, &simplex(1));
        for e in pr.set.gens(1).filter(|&e| pr.proj1.image_of_gen(e) == &long) {
            let c = is_flat_over_triangle(&pr.set, &pr.proj1, &SimplexRef::nondeg(e), 3)?;
            if !c.is_contractible_grade() {
                return Ok(Outcome::fail(json!({ "edge": pr.set.label(e), "certificate": c })));
            }
        }
        Ok(Outcome::pass())
    });
    b.run("disconnected fiber is not flat", || {
        let m = simplex_subcomplex(2, &[vec![0, 2], vec![1]])?;
        let f = SimplexRef::nondeg(m.gen_by_label("02").expect("edge 02"));
        let c = is_flat_over_triangle(&m, &inclusion(&m, &d2), &f, 2)?;
        Ok(Outcome::check(c.grade == Grade::NotAcyclic && !c.connected, &c))
    });
}
