use proptest::prelude::*;
use scx_core::decorations::*;
use scx_core::sset::*;

fn inclusion(sub: &FiniteSimplicialSet, ambient: &FiniteSimplicialSet) -> SimplicialMap {
    let images = (0..=sub.top_dim()).map(|d| sub.gens(d).map(|g| SimplexRef::nondeg(ambient.gen_by_label(sub.label(g)).unwrap())).collect()).collect();
    let m = SimplicialMap::new(images);
    m.validate(sub, ambient).unwrap();
    m
}

#[test]
fn flat_and_sharp() {
    let d2 = simplex(2);
    match decorate(&d2, Style::Flat, Kind::Scaled) {
        Decoration::Scaled(s) => assert_eq!(s.count(), 0),
        _ => unreachable!(),
    }
    match decorate(&d2, Style::Sharp, Kind::Scaled) {
        Decoration::Scaled(s) => assert_eq!(s.count(), 1),
        _ => unreachable!(),
    }
    match decorate(&simplex(1), Style::Sharp, Kind::Marked) {
        Decoration::Marked(m) => assert_eq!(m.count(), 1),
        _ => unreachable!(),
    }
    let flat = ScaledSSet::flat(&d2);
    assert!(flat.is_thin(&d2.degeneracy(&SimplexRef::nondeg(d2.gen_by_label("01").unwrap()), 0)));
}

#[test]
fn product_marking_examples() {
    let d1 = simplex(1);
    let (p, pr) = product_decorated(&MarkedSSet::sharp(&d1), &MarkedSSet::flat(&d1));
    assert_eq!(p.base.f_vector(), vec![4, 5, 2]);
    assert_eq!(p.count(), 2);
    for e in p.marked.iter() {
        let (_, y) = pr.components(*e);
        assert!(y.is_degenerate());
    }
    assert!(p.preserved_by(&pr.proj1, &MarkedSSet::sharp(&d1)));
    assert!(p.preserved_by(&pr.proj2, &MarkedSSet::flat(&d1)));
    // sharp absorbs
    let x = boundary(2).unwrap();
    let (s, _) = product_decorated(&ScaledSSet::sharp(&x), &ScaledSSet::sharp(&simplex(2)));
    assert_eq!(s.count(), s.base.num_gens(2));
    // unit
    let (u, _) = product_decorated(&ScaledSSet::flat(&simplex(2)), &ScaledSSet::sharp(&simplex(0)));
    assert_eq!(u.count(), 0);
    assert!(is_isomorphic(&u.base, &simplex(2)));
}

#[test]
fn pushout_examples() {
    let h = horn(2, 1).unwrap();
    let d2 = simplex(2);
    let inc = inclusion(&h, &d2);
    let id = SimplicialMap::identity(&h);
    let (m, _) = pushout_decorated(&MarkedSSet::flat(&h), &MarkedSSet::sharp(&h), &MarkedSSet::flat(&d2), &id, &inc).unwrap();
    assert!(is_isomorphic(&m.base, &d2));
    let labels: Vec<&str> = m.marked.iter().map(|&g| m.base.label(g)).collect();
    assert_eq!(labels, vec!["01", "12"]);
    let (s, _) = pushout_decorated(&ScaledSSet::flat(&h), &ScaledSSet::sharp(&h), &ScaledSSet::flat(&d2), &id, &inc).unwrap();
    assert_eq!(s.count(), 0);
    // union of scalings
    let idd = SimplicialMap::identity(&d2);
    let (t, _) = pushout_decorated(&ScaledSSet::flat(&d2), &ScaledSSet::flat(&d2), &ScaledSSet::sharp(&d2), &idd, &idd).unwrap();
    assert_eq!(t, ScaledSSet::sharp(&d2));
    // along identities returns the left input
    let k = ScaledSSet::sharp(&collapsed_k());
    let idk = SimplicialMap::identity(&k.base);
    let (l, _) = pushout_decorated(&k, &k, &k, &idk, &idk).unwrap();
    assert_eq!(l, k);
    // legs must preserve decorations
    assert!(pushout_decorated(&ScaledSSet::sharp(&d2), &ScaledSSet::flat(&d2), &ScaledSSet::sharp(&d2), &idd, &idd).is_err());
}

#[test]
fn json_round_trips() {
    let s = ScaledSSet::with_thin_labels(simplex(3), &["012", "123"]).unwrap();
    let j = serde_json::to_string(&s.to_json()).unwrap();
    assert_eq!(ScaledSSet::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), s);
    let m = MarkedSSet::from_refs(simplex(2), [SimplexRef::nondeg(GenId::new(1, 0))]).unwrap();
    assert_eq!(MarkedSSet::from_json(&m.to_json()).unwrap(), m);
    let mut pat = CategoricalPattern::sharp(&simplex(1));
    pat.marked.clear();
    let cone = Cone { k: FiniteSimplicialSet::empty(), map: SimplicialMap::new(vec![vec![SimplexRef::nondeg(GenId::new(0, 0))]]) };
    pat.cones.push(cone);
    let back = CategoricalPattern::from_json(&pat.to_json()).unwrap();
    assert_eq!(back, pat);
}

#[test]
fn pattern_rejects_unmarked_cone_edges() {
    let base = simplex(1);
    let k = simplex(0);
    let src = left_cone(&k);
    let map = MapSearch::new(&src, &base).filter(|g, y| g.dim != 1 || !y.is_degenerate()).first().unwrap();
    let pat = CategoricalPattern::new(base.clone(), Default::default(), Default::default(), vec![Cone { k: k.clone(), map: map.clone() }]);
    assert!(pat.is_err());
    let pat = CategoricalPattern::new(base.clone(), base.gens(1).collect(), Default::default(), vec![Cone { k, map }]);
    assert!(pat.is_ok());
}

fn choices() -> Vec<ScaledSSet> {
    vec![
        ScaledSSet::flat(&simplex(1)),
        ScaledSSet::sharp(&simplex(1)),
        ScaledSSet::with_thin_labels(simplex(2), &["012"]).unwrap(),
        ScaledSSet::flat(&simplex(2)),
        ScaledSSet::sharp(&boundary(2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn product_is_associative_up_to_iso(a in 0usize..5, b in 0usize..3, c in 0usize..2) {
        let cs = choices();
        let (ab, _) = product_decorated(&cs[a], &cs[b]);
        let (l, _) = product_decorated(&ab, &cs[c]);
        let (bc, _) = product_decorated(&cs[b], &cs[c]);
        let (r, _) = product_decorated(&cs[a], &bc);
        prop_assert_eq!(l.count(), r.count());
        // some isomorphism of bases preserves thinness in both directions
        let found = MapSearch::new(&l.base, &r.base)
            .injective()
            .filter(|g, y| g.dim != 2 || l.is_thin(&SimplexRef::nondeg(g)) == r.is_thin(y))
            .first();
        prop_assert!(found.is_some());
    }
}
