use std::collections::BTreeSet;

use scx_core::anodyne::*;
use scx_core::coherent::{scaled_nerve, MarkedSimpCategory};
use scx_core::decorations::{pushout_decorated, CategoricalPattern, Decorated, MarkedSSet, ScaledSSet};
use scx_core::homology::{homology, Grade};
use scx_core::sset::*;

fn labels<D: Decorated>(d: &D) -> BTreeSet<String> {
    d.cells().iter().map(|&g| d.base().label(g).to_string()).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn top(x: &FiniteSimplicialSet) -> SimplexRef {
    SimplexRef::nondeg(x.gens(x.top_dim()).next().unwrap())
}

#[test]
fn inner_horn_generator() {
    let g = scaled_generator(GeneratorKind::A { n: 2, i: 1 }).unwrap();
    assert!(is_isomorphic(&g.source.base, &horn(2, 1).unwrap()));
    assert!(g.source.thin.is_empty());
    assert_eq!(labels(&g.target), set(&["012"]));
    let g = scaled_generator(GeneratorKind::A { n: 4, i: 2 }).unwrap();
    assert_eq!(labels(&g.source), set(&["123"]));
    assert!(scaled_generator(GeneratorKind::A { n: 3, i: 3 }).is_err());
    assert!(scaled_generator(GeneratorKind::C { n: 2 }).is_err());
}

#[test]
fn every_generator_is_a_decorated_monomorphism() {
    let mut kinds = vec![GeneratorKind::B];
    for n in 2..=5 {
        kinds.extend((1..n).map(|i| GeneratorKind::A { n, i }));
    }
    kinds.extend((3..=5).map(|n| GeneratorKind::C { n }));
    for k in kinds {
        let g = scaled_generator(k).unwrap();
        g.validate().unwrap();
        assert!(g.is_mono(), "{k}");
        assert!(g.preserves_decorations(), "{k}");
    }
    let s = simplex(5);
    let sharp = CategoricalPattern::sharp(&s);
    let mut specs = vec![PatternSpec::A0(s.restrict(&top(&s), &[0, 2, 3])), PatternSpec::B0(s.restrict(&top(&s), &[1, 4]))];
    for n in 2..=5 {
        let x = s.restrict(&top(&s), &(0..=n).collect::<Vec<_>>());
        specs.push(PatternSpec::C0(x.clone()));
        specs.extend((1..n).map(|i| PatternSpec::C1(x.clone(), i)));
    }
    for spec in specs {
        let g = pattern_generator(&spec, &sharp).unwrap();
        g.validate().unwrap();
        assert!(g.is_mono() && g.preserves_decorations(), "{}", g.kind);
        g.over.as_ref().unwrap().validate(&g.target.base, &s).unwrap();
    }
}

#[test]
fn enlargement_generator_adds_two_triangles() {
    let g = scaled_generator(GeneratorKind::B).unwrap();
    assert_eq!(labels(&g.source), set(&["012", "013", "024", "123", "134"]));
    let added: BTreeSet<String> = labels(&g.target).difference(&labels(&g.source)).cloned().collect();
    assert_eq!(added, set(&["014", "034"]));
}

/// Pushing the enlargement forward along a surjection `Δ⁴ -> Δ³` must turn
/// "every triangle but `0i3`" into "every triangle".
fn push_enlargement(g: &DecoratedMap<ScaledSSet>, surj: &[usize]) -> (BTreeSet<String>, BTreeSet<String>) {
    let d3 = simplex(3);
    let p = delta_map(&g.source.base, &d3, &SimplexRef::from_surjection(top(&d3).gen, surj));
    let image: Vec<SimplexRef> = g.source.thin.iter().map(|&t| p.image_of_gen(t).clone()).collect();
    let y = ScaledSSet::from_refs(d3, image).unwrap();
    let (po, _) = pushout_decorated(&g.source, &g.target, &y, &g.map, &p).unwrap();
    (labels(&y), labels(&po))
}

#[test]
fn enlargement_pushouts_saturate_the_three_simplex() {
    let g = scaled_generator(GeneratorKind::B).unwrap();
    let all = set(&["012", "013", "023", "123"]);
    for (surj, missing) in [([0, 1, 2, 2, 3], "013"), ([0, 1, 1, 2, 3], "023")] {
        let (before, after) = push_enlargement(&g, &surj);
        let expect: BTreeSet<String> = all.iter().filter(|t| *t != missing).cloned().collect();
        assert_eq!(before, expect);
        assert_eq!(after, all);
    }
}

#[test]
fn literal_enlargement_misses_the_first_decomposition() {
    let mut g = scaled_generator(GeneratorKind::B).unwrap();
    g.target = ScaledSSet::with_thin_labels(g.target.base.clone(), &["012", "013", "024", "123", "134", "034"]).unwrap();
    let (_, after) = push_enlargement(&g, &[0, 1, 2, 2, 3]);
    assert!(!after.contains("013"));
}

#[test]
fn collapsed_horn_generator() {
    let g = scaled_generator(GeneratorKind::C { n: 3 }).unwrap();
    assert_eq!(g.source.base.f_vector(), vec![3, 5, 3]);
    assert_eq!(g.target.base.f_vector(), vec![3, 5, 4, 1]);
    assert_eq!(labels(&g.source), set(&["013"]));
    assert_eq!(labels(&g.target), set(&["013"]));
    let e = g.target.base.edge(&SimplexRef::nondeg(g.target.base.gen_by_label("013").unwrap()), 0, 1);
    assert!(e.is_degenerate());
}

#[test]
fn pattern_generator_examples() {
    let d2 = simplex(2);
    let sharp = CategoricalPattern::sharp(&d2);
    let a0 = pattern_generator(&PatternSpec::A0(top(&d2)), &sharp).unwrap();
    assert_eq!(labels(&a0.source), set(&["01", "12"]));
    assert_eq!(labels(&a0.target), set(&["01", "02", "12"]));
    let b0 = pattern_generator(&PatternSpec::B0(d2.restrict(&top(&d2), &[0, 1])), &sharp).unwrap();
    assert_eq!(b0.source.base.f_vector(), vec![1]);
    assert_eq!(labels(&b0.target), set(&["01"]));
    let c1 = pattern_generator(&PatternSpec::C1(top(&d2), 1), &sharp).unwrap();
    assert!(is_isomorphic(&c1.source.base, &horn(2, 1).unwrap()));
    assert!(c1.source.marked.is_empty() && c1.target.marked.is_empty());
    let c0 = pattern_generator(&PatternSpec::C0(top(&d2)), &sharp).unwrap();
    assert_eq!(labels(&c0.source), set(&["01"]));

    let flat = CategoricalPattern::new(d2.clone(), d2.gens(1).collect(), BTreeSet::new(), vec![]).unwrap();
    let err = pattern_generator(&PatternSpec::A0(top(&d2)), &flat).unwrap_err().to_string();
    assert!(err.contains("not in T"), "{err}");
    let unmarked = CategoricalPattern::new(d2.clone(), BTreeSet::new(), d2.gens(2).collect(), vec![]).unwrap();
    assert!(pattern_generator(&PatternSpec::B0(d2.restrict(&top(&d2), &[0, 1])), &unmarked).is_err());
}

#[test]
fn cone_generators() {
    let pt = point("k");
    let d1 = simplex(1);
    let cone = Cone {
        k: pt.clone(),
        map: SimplicialMap::new(vec![vec![SimplexRef::nondeg(GenId::new(0, 0)); 2], vec![SimplexRef { gen: GenId::new(0, 0), word: vec![0] }]]),
    };
    let pattern = CategoricalPattern::new(d1.clone(), d1.gens(1).collect(), BTreeSet::new(), vec![cone]).unwrap();
    let b1 = pattern_generator(&PatternSpec::B1(0), &pattern).unwrap();
    assert_eq!(b1.target.base.f_vector(), vec![2, 1]);
    assert!(b1.is_mono());
    // Δ¹ ⋆ {k} is a triangle; the source drops its top cell and the edge 01
    let j = join(&d1, &pt);
    let v0 = SimplexRef::nondeg(GenId::new(0, 0));
    let images: Vec<Vec<SimplexRef>> = (0..=j.top_dim()).map(|d| j.gens(d).map(|_| SimplexRef::from_surjection(v0.gen, &vec![0; d + 1])).collect()).collect();
    let f = SimplicialMap::new(images);
    let c2 = pattern_generator(&PatternSpec::C2 { cone: 0, n: 1, map: f }, &pattern).unwrap();
    assert_eq!(c2.source.base.f_vector(), vec![3, 2]);
    assert_eq!(c2.target.base.f_vector(), vec![3, 3, 1]);
    assert_eq!(labels(&c2.source).len(), 1);
    assert!(c2.is_mono() && c2.preserves_decorations());
}

use scx_core::decorations::Cone;

fn inclusion(src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> SimplicialMap {
    SimplicialMap::new((0..=src.top_dim()).map(|d| src.gens(d).map(|g| SimplexRef::nondeg(tgt.gen_by_label(src.label(g)).unwrap())).collect()).collect())
}

#[test]
fn extension_examples() {
    let d2 = simplex(2);
    let sharp = CategoricalPattern::sharp(&d2);
    let c1 = pattern_generator(&PatternSpec::C1(top(&d2), 1), &sharp).unwrap();
    let u = inclusion(&c1.source.base, &d2);
    assert_eq!(extensions(&c1, &u, &MarkedSSet::flat(&d2)).unwrap().len(), 1);
    let b = boundary(2).unwrap();
    let u = inclusion(&c1.source.base, &b);
    assert!(extensions(&c1, &u, &MarkedSSet::flat(&b)).unwrap().is_empty());

    let a21 = scaled_generator(GeneratorKind::A { n: 2, i: 1 }).unwrap();
    let u = inclusion(&a21.source.base, &d2);
    assert!(extensions(&a21, &u, &ScaledSSet::flat(&d2)).unwrap().is_empty());
    assert_eq!(extensions(&a21, &u, &ScaledSSet::sharp(&d2)).unwrap().len(), 1);

    // the map to extend must itself preserve decorations
    let a0 = pattern_generator(&PatternSpec::A0(top(&d2)), &sharp).unwrap();
    let u = SimplicialMap::identity(&d2);
    assert!(extensions(&a0, &u, &MarkedSSet::flat(&d2)).is_err());
}

fn small_scaled_targets() -> Vec<ScaledSSet> {
    let sq = product(&simplex(1), &simplex(1));
    let one_thin = ScaledSSet::from_parts(sq.clone(), sq.gens(2).take(1).collect()).unwrap();
    let c = collapsed_k();
    vec![
        ScaledSSet::flat(&simplex(2)),
        ScaledSSet::sharp(&simplex(2)),
        ScaledSSet::flat(&boundary(2).unwrap()),
        one_thin,
        ScaledSSet::sharp(&sq),
        ScaledSSet::sharp(&c),
        ScaledSSet::flat(&c),
    ]
}

#[test]
fn extensions_are_complete() {
    for z in small_scaled_targets() {
        assert!(z.base.total_gens() <= 20);
        for kind in [GeneratorKind::A { n: 2, i: 1 }, GeneratorKind::A { n: 3, i: 1 }, GeneratorKind::A { n: 3, i: 2 }, GeneratorKind::C { n: 3 }] {
            let f = scaled_generator(kind).unwrap();
            let us: Vec<SimplicialMap> = sset_hom(&f.source.base, &z.base).into_iter().filter(|u| f.source.preserved_by(u, &z)).collect();
            let all = sset_hom(&f.target.base, &z.base);
            for u in us {
                let mut got = extensions(&f, &u, &z).unwrap();
                let mut want: Vec<SimplicialMap> = all.iter().filter(|v| f.map.then(v, &z.base) == u && f.target.preserved_by(v, &z)).cloned().collect();
                got.sort_by_key(|m| format!("{m:?}"));
                want.sort_by_key(|m| format!("{m:?}"));
                assert_eq!(got, want, "{kind}");
            }
        }
    }
}

fn parallel_nerve() -> ScaledSSet {
    scaled_nerve(&MarkedSimpCategory::discrete(&FinCategory::parallel_pair()), 3)
}

#[test]
fn weak_bicategory_verdicts() {
    let pt = ScaledSSet::sharp(&simplex(0));
    for b in 2..=4 {
        assert!(is_weak_bicategory(&pt, b).unwrap().is_semi_decided());
    }
    let v = is_weak_bicategory(&ScaledSSet::flat(&simplex(2)), 3).unwrap();
    assert_eq!(v.witness().unwrap().generator, "A(2,1)");
    assert!(is_weak_bicategory(&ScaledSSet::sharp(&simplex(2)), 3).unwrap().is_semi_decided());
    let z = parallel_nerve();
    assert!(is_weak_bicategory(&z, z.base.dim() + 2).unwrap().is_semi_decided());
    // a bare horn has no filler at all
    let h = ScaledSSet::sharp(&horn(2, 1).unwrap());
    assert_eq!(is_weak_bicategory(&h, 2).unwrap().witness().unwrap().generator, "A(2,1)");
    assert!(is_weak_bicategory(&pt, 1).is_err());
}

#[test]
fn grid_is_the_product_of_simplices() {
    for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        assert!(is_isomorphic(&Grid::new(a, b).set, &product(&simplex(a), &simplex(b))));
    }
}

#[test]
fn prism_filtrations_certify() {
    for n in 1..=4 {
        let c = verify_filtration(&preperc(n).unwrap()).unwrap();
        assert_eq!(c.steps.len(), n + 1);
        assert_eq!(c.steps.last().unwrap().region, format!("Λ^{}_{}", n + 1, n + 1));
    }
    for n in 2..=3 {
        for i in 1..n {
            let c = verify_filtration(&swww(n, i).unwrap()).unwrap();
            assert_eq!(c.steps.len(), 2 * n);
            assert_eq!(c.steps.last().unwrap().region, format!("Λ^{}_{i}", n + 1));
        }
    }
    for n in 0..=2 {
        let c = verify_filtration(&carpal(n).unwrap()).unwrap();
        assert_eq!(c.steps.last().unwrap().region, format!("Λ^{}_0", n + 1));
    }
}

#[test]
fn preperc_small_case() {
    let f = preperc(2).unwrap();
    let c = verify_filtration(&f).unwrap();
    assert_eq!(c.steps.iter().map(|s| s.region.as_str()).collect::<Vec<_>>(), ["Λ^3_1", "Λ^3_2", "Λ^3_3"]);
    assert_eq!(c.f_vector, product(&simplex(2), &simplex(1)).f_vector());
}

#[test]
fn filtration_mismatches_are_reported() {
    let mut f = preperc(2).unwrap();
    f.steps[1].region = Region::Horn { missing: 1 };
    let err = verify_filtration(&f).unwrap_err().to_string();
    assert!(err.contains("intersection") && err.contains("missing"), "{err}");
    let mut f = preperc(2).unwrap();
    f.steps.swap(0, 1);
    assert!(verify_filtration(&f).is_err());
    let mut f = preperc(2).unwrap();
    f.marked.clear();
    assert!(verify_filtration(&f).unwrap_err().to_string().contains("not marked"));
    let mut f = carpal(1).unwrap();
    f.thin.clear();
    assert!(verify_filtration(&f).unwrap_err().to_string().contains("not thin"));
    let mut f = swww(3, 1).unwrap();
    f.steps.pop();
    assert!(verify_filtration(&f).unwrap_err().to_string().contains("final stage"));
}

#[test]
fn slice_examples() {
    let d1 = ScaledSSet::flat(&simplex(1));
    let s = scaled_slice(&d1, "0", 3).unwrap();
    assert_eq!(s.set.base.f_vector(), vec![2, 1]);
    s.projection.validate(&s.set.base, &d1.base).unwrap();
    let from1 = scaled_slice(&d1, "1", 3).unwrap();
    assert_eq!(from1.set.base.f_vector(), vec![1]);
    assert_eq!(hom_via_slice(&d1, "1", "0", 3).unwrap().base.f_vector(), vec![0]);

    let z = parallel_nerve();
    let h = hom_via_slice(&z, "a", "b", 3).unwrap();
    assert_eq!(h.base.f_vector(), vec![2]);
    for n in 1..=3 {
        let d = ScaledSSet::sharp(&simplex(n));
        let h = hom_via_slice(&d, "0", &n.to_string(), 3).unwrap();
        assert_eq!(h.base.f_vector(), vec![1]);
    }
}

#[test]
fn slice_marking_needs_both_triangles() {
    let d2 = simplex(2);
    let flat = scaled_slice(&ScaledSSet::flat(&d2), "0", 2).unwrap();
    let sharp = scaled_slice(&ScaledSSet::sharp(&d2), "0", 2).unwrap();
    assert!(flat.set.base.f_vector().len() >= 2);
    // every simplex of the flat slice has degenerate upper-right triangles
    assert!(flat.set.base.f_vector() <= sharp.set.base.f_vector());
    assert!(sharp.set.count() >= flat.set.count());
    assert_eq!(sharp.set.count(), sharp.set.base.num_gens(1));
}

fn two_fibres() -> (FiniteSimplicialSet, SimplicialMap) {
    let (x, _, _) = coproduct(&simplex(1), &simplex(1));
    let p = SimplicialMap::new(vec![
        x.gens(0).map(|v| SimplexRef::nondeg(GenId::new(0, x.label(v).ends_with('1') as usize))).collect(),
        x.gens(1).map(|_| SimplexRef::nondeg(GenId::new(1, 0))).collect(),
    ]);
    (x, p)
}

#[test]
fn pattern_fibered_examples() {
    let d2 = simplex(2);
    let id = SimplicialMap::identity(&d2);
    assert!(is_pattern_fibered(&MarkedSSet::sharp(&d2), &id, &CategoricalPattern::sharp(&d2), 3).unwrap().is_semi_decided());

    let d1 = simplex(1);
    let (x, p) = two_fibres();
    p.validate(&x, &d1).unwrap();
    let sharp = CategoricalPattern::sharp(&d1);
    assert!(is_pattern_fibered(&MarkedSSet::sharp(&x), &p, &sharp, 3).unwrap().is_semi_decided());

    let degenerate_only = CategoricalPattern::new(d1.clone(), BTreeSet::new(), BTreeSet::new(), vec![]).unwrap();
    let v = is_pattern_fibered(&MarkedSSet::sharp(&x), &p, &degenerate_only, 3).unwrap();
    assert_eq!(v.witness().unwrap().condition, 3);

    let one = MarkedSSet::from_parts(x.clone(), x.gens(1).take(1).collect()).unwrap();
    let v = is_pattern_fibered(&one, &p, &sharp, 3).unwrap();
    assert_eq!(v.witness().unwrap().condition, 3);

    // no lift at all over the marked edge
    let lonely = simplex_subcomplex(1, &[vec![0]]).unwrap();
    let q = SimplicialMap::new(vec![vec![SimplexRef::nondeg(GenId::new(0, 0))]]);
    let v = is_pattern_fibered(&MarkedSSet::sharp(&lonely), &q, &sharp, 2).unwrap();
    assert_eq!(v.witness().unwrap().condition, 2);

    // a horn over Δ² without its filler is not an inner fibration
    let h = horn(2, 1).unwrap();
    let incl = inclusion(&h, &d2);
    let v =
        is_pattern_fibered(&MarkedSSet::flat(&h), &incl, &CategoricalPattern::new(d2.clone(), BTreeSet::new(), BTreeSet::new(), vec![]).unwrap(), 2).unwrap();
    assert_eq!(v.witness().unwrap().condition, 1);
}

#[test]
fn flatness_examples() {
    let d2 = simplex(2);
    let id = SimplicialMap::identity(&d2);
    let long = SimplexRef::nondeg(d2.gen_by_label("02").unwrap());
    let c = is_flat_over_triangle(&d2, &id, &long, 2).unwrap();
    assert_eq!(c.grade, Grade::Witness);
    assert_eq!(double_slice_fiber(&d2, &id, &long).unwrap().f_vector(), vec![1]);

    let pr = Product::new(&d2, &simplex(1));
    let mut checked = 0;
    for e in pr.set.gens(1) {
        if pr.proj1.image_of_gen(e) == &long {
            let c = is_flat_over_triangle(&pr.set, &pr.proj1, &SimplexRef::nondeg(e), 3).unwrap();
            assert!(c.is_contractible_grade());
            checked += 1;
        }
    }
    assert_eq!(checked, 3);

    let m = simplex_subcomplex(2, &[vec![0, 2], vec![1]]).unwrap();
    let incl = inclusion(&m, &d2);
    let f = SimplexRef::nondeg(m.gen_by_label("02").unwrap());
    let c = is_flat_over_triangle(&m, &incl, &f, 2).unwrap();
    assert_eq!(c.grade, Grade::NotAcyclic);
    assert!(!c.connected);

    let short = SimplexRef::nondeg(d2.gen_by_label("01").unwrap());
    assert!(is_flat_over_triangle(&d2, &id, &short, 2).is_err());
}

#[test]
fn discrete_hom_matches_enriched_hom_in_homology() {
    let h = hom_via_slice(&parallel_nerve(), "a", "b", 3).unwrap();
    let c = homology(&h.base, 2);
    assert_eq!(c.betti(), vec![2, 0, 0]);
    assert!(!c.has_torsion());
}
