use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scx_core::segal::*;
use scx_core::sset::*;
use scx_core::{Error, Verdict};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn poset_square() -> FinCategory {
    let n = names(&["00", "01", "10", "11"]);
    FinCategory::from_poset(&n, |a, b| (a >> 1) <= (b >> 1) && (a & 1) <= (b & 1)).unwrap()
}

#[test]
fn category_object_examples() {
    for c in [FinCategory::chain(2), FinCategory::walking_iso(), FinCategory::parallel_pair(), poset_square()] {
        assert!(is_category_object(&nerve(&c, 3), 3).is_yes());
    }
    assert!(is_category_object(&simplex(1), 4).is_yes());
    match is_category_object(&boundary(2).unwrap(), 3) {
        Verdict::No { witness: SegalWitness::Spine { n, spine, fillers } } => {
            assert_eq!(n, 2);
            assert_eq!(spine, vec!["01", "12"]);
            assert!(fillers.is_empty());
        }
        v => panic!("unexpected {v:?}"),
    }
    // two triangles glued along their spine: a composable pair with two fillers
    let (h, d) = (horn(2, 1).unwrap(), simplex(2));
    let incl = MapSearch::new(&h, &d).injective().run().into_iter().find(|m| m.to_labels(&h, &d).iter().all(|(a, b)| a == b)).unwrap();
    let two = pushout(&h, &d, &d, &incl, &incl);
    match is_category_object(&two.set, 2) {
        Verdict::No { witness: SegalWitness::Spine { fillers, .. } } => assert!(fillers.len() != 1),
        v => panic!("unexpected {v:?}"),
    }
}

#[test]
fn category_round_trips() {
    for c in [FinCategory::chain(2), FinCategory::walking_iso(), FinCategory::parallel_pair(), poset_square(), FinCategory::cyclic_group(2)] {
        let x = nerve(&c, 3);
        let d = to_category(&x).unwrap();
        assert_eq!(d.num_objects(), c.num_objects());
        assert_eq!(d.morphisms().len(), c.morphisms().len());
        assert!(is_isomorphic(&nerve(&d, 3), &x));
    }
    let d = to_category(&simplex(1)).unwrap();
    assert_eq!(d.morphisms().len(), 3);
    assert!(matches!(to_category(&boundary(2).unwrap()), Err(Error::Segal(_))));
}

#[test]
fn invertible_core_examples() {
    let iso = nerve(&FinCategory::walking_iso(), 3);
    assert!(is_isomorphic(&invertible_core(&iso).unwrap(), &iso));
    let core = invertible_core(&simplex(1)).unwrap();
    assert_eq!(core.f_vector(), vec![2]);
    let g = nerve(&FinCategory::cyclic_group(2), 3);
    assert!(is_isomorphic(&invertible_core(&g).unwrap(), &g));
    assert!(is_groupoid_object(&g, 3).unwrap().is_yes());
    assert!(matches!(is_groupoid_object(&simplex(1), 3).unwrap(), Verdict::No { witness: SegalWitness::NotInvertible { .. } }));
}

#[test]
fn collapsed_k_detection_examples() {
    let iso = nerve(&FinCategory::walking_iso(), 3);
    let k = collapsed_k();
    assert_eq!(sset_hom(&k, &iso).len(), 4);
    let found = detect_invertibles_via_k(&iso);
    assert_eq!(found.iter().filter(|e| !e.is_degenerate()).count(), 2);
    assert!(detect_invertibles_via_k(&simplex(1)).iter().all(|e| e.is_degenerate()));
    assert!(detect_invertibles_via_k(&nerve(&poset_square(), 3)).iter().all(|e| e.is_degenerate()));
}

fn random_category(seed: u64) -> FinCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = FinCategory::random(&mut rng, 5, 17);
        let nondeg = c.morphisms().len() - c.num_objects();
        if nondeg <= 12 {
            return c;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn core_is_groupoid_and_k_detects_invertibles(seed in any::<u64>()) {
        let c = random_category(seed);
        let x = nerve(&c, 3);
        let core = invertible_core(&x).unwrap();
        prop_assert!(is_groupoid_object(&core, 3).unwrap().is_yes());
        let inv = invertible_edges(&x).unwrap();
        prop_assert_eq!(detect_invertibles_via_k(&x), inv.clone());
        let expected = c.morphisms().iter().enumerate().filter(|(f, _)| c.is_invertible(*f)).count();
        prop_assert_eq!(inv.len(), expected);
    }

    #[test]
    fn nerves_are_category_objects(seed in any::<u64>()) {
        let c = random_category(seed);
        prop_assert!(is_category_object(&nerve(&c, 3), 3).is_yes());
        let d = to_category(&nerve(&c, 3)).unwrap();
        prop_assert!(is_isomorphic(&nerve(&d, 3), &nerve(&c, 3)));
    }
}

fn gens(n: usize) -> Vec<String> {
    ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect()
}

#[test]
fn free_cell_values() {
    let p = PreSegalSet::free_cell(2, &gens(2), 3).unwrap();
    assert_eq!(p.value(&[0, 1, 2]).len(), 2);
    assert_eq!(p.value(&[1, 1]).len(), 1);
    assert!(p.value(&[1, 0]).is_empty());
    let (seq, _) = p.act(&[0, 0, 1], &[0, 2], 1);
    assert_eq!(seq, vec![0, 0, 2]);
}

#[test]
fn free_hom_examples() {
    let p = PreSegalSet::free_cell(1, &gens(3), 4).unwrap();
    let h = free_hom(&p, "0", "1", 3).unwrap();
    assert_eq!(h.elements.len(), 3);
    assert!(h.stabilized);
    let p = PreSegalSet::free_cell(2, &gens(2), 4).unwrap();
    let h = free_hom(&p, "0", "2", 3).unwrap();
    assert_eq!(h.elements.len(), 4);
    assert!(h.stabilized);
    for x in ["0", "1", "2"] {
        assert_eq!(free_hom(&p, x, x, 3).unwrap().elements, vec![format!("id_{x}")]);
    }
    assert!(free_hom(&p, "2", "0", 3).unwrap().elements.is_empty());
    assert!(matches!(free_hom(&p, "0", "2", 4), Err(Error::Precondition(_))));
}

#[test]
fn free_hom_matches_path_counts() {
    for n in 0..=3 {
        for a in 1..=3 {
            let p = PreSegalSet::free_cell(n, &gens(a), n.max(1) + 1).unwrap();
            for i in 0..=n {
                for j in i..=n {
                    let h = free_hom(&p, &i.to_string(), &j.to_string(), n.max(1)).unwrap();
                    assert!(h.stabilized, "n={n} a={a} ({i},{j})");
                    assert_eq!(h.elements.len(), a.pow((j - i) as u32), "n={n} a={a} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn adjunction_examples() {
    let p = PreSegalSet::free_cell(1, &gens(1), 3).unwrap();
    assert_eq!(adjunction_check(&p, &FinCategory::chain(1), 2).unwrap(), Verdict::Yes);
    assert_eq!(presegal_maps(&p, &FinCategory::chain(1)).len(), 3);

    let d = PreSegalSet::discrete(names(&["x", "y"]), 3).unwrap();
    for c in [FinCategory::chain(2), FinCategory::walking_iso()] {
        let maps = presegal_maps(&d, &c);
        assert_eq!(maps.len(), c.num_objects().pow(2));
        assert_eq!(adjunction_check(&d, &c, 2).unwrap(), Verdict::Yes);
    }

    let p = PreSegalSet::free_cell(2, &gens(2), 3).unwrap();
    let c = FinCategory::chain(2);
    let fc = free_category(&p, 2).unwrap();
    assert_eq!(functors(&fc.category, &c).len(), presegal_maps(&p, &c).len());
    assert_eq!(adjunction_check(&p, &c, 2).unwrap(), Verdict::Yes);
}

fn small_categories() -> Vec<FinCategory> {
    vec![
        FinCategory::chain(0),
        FinCategory::chain(1),
        FinCategory::chain(2),
        FinCategory::walking_iso(),
        FinCategory::parallel_pair(),
        FinCategory::cyclic_group(2),
    ]
}

#[test]
fn adjunction_on_free_cells() {
    for n in 0..=2 {
        for a in 1..=2 {
            let p = PreSegalSet::free_cell(n, &gens(a), n.max(1) + 1).unwrap();
            for c in small_categories() {
                let v = adjunction_check(&p, &c, n.max(1)).unwrap();
                assert_eq!(v, Verdict::Yes, "n={n} a={a} C={:?}", c.objects());
            }
        }
    }
}

#[test]
fn embedding_is_fully_faithful() {
    let cats = small_categories();
    for c in &cats {
        let p = PreSegalSet::from_category(c, 3).unwrap();
        for d in &cats {
            let fs = functors(c, d);
            let maps: BTreeSet<_> = presegal_maps(&p, d).into_iter().map(|m| format!("{m:?}")).collect();
            assert_eq!(fs.len(), maps.len());
            for f in &fs {
                let beta = (0..c.num_objects())
                    .flat_map(|x| (0..c.num_objects()).map(move |y| (x, y)))
                    .flat_map(|(x, y)| c.hom(x, y).into_iter().enumerate().map(move |(e, m)| ((x, y, e), m)))
                    .map(|(k, m)| (k, f.morphisms[m]))
                    .collect();
                let m = PreSegalMap { alpha: f.objects.clone(), beta };
                assert!(maps.contains(&format!("{m:?}")));
            }
        }
    }
}

#[test]
fn free_category_of_a_category_is_itself() {
    for c in small_categories() {
        let p = PreSegalSet::from_category(&c, 3).unwrap();
        let fc = free_category(&p, 2).unwrap();
        assert!(fc.stabilized);
        assert_eq!(fc.category.morphisms().len(), c.morphisms().len());
        assert!(is_isomorphic(&nerve(&fc.category, 3), &nerve(&c, 3)));
    }
}

#[test]
fn unpre_examples() {
    let p = PreSegalSet::free_cell(1, &gens(3), 3).unwrap();
    let x = unpre(&p, 3).unwrap();
    assert_eq!(x.labels(0), &["0".to_string(), "1".to_string()]);
    assert_eq!(x.count_simplices(1), 3 + 2);
    let d = PreSegalSet::discrete(names(&["x", "y", "z"]), 3).unwrap();
    assert_eq!(unpre(&d, 3).unwrap().f_vector(), vec![3]);
    for p in [p, d, PreSegalSet::from_category(&FinCategory::parallel_pair(), 3).unwrap()] {
        let x = unpre(&p, 3).unwrap();
        for n in 0..=3 {
            let total: usize = p.supported().filter(|(s, _)| s.len() == n + 1).map(|(_, v)| v.len()).sum();
            assert_eq!(x.count_simplices(n), total);
        }
    }
    assert!(unpre(&PreSegalSet::discrete(names(&["x"]), 2).unwrap(), 3).is_err());
}

#[test]
fn unpre_of_a_category_is_its_nerve() {
    for c in small_categories() {
        let p = PreSegalSet::from_category(&c, 3).unwrap();
        assert!(is_isomorphic(&unpre(&p, 3).unwrap(), &nerve(&c, 3)));
    }
}

#[test]
fn homotopy_category_examples() {
    for c in small_categories() {
        let p = PreSegalSet::from_category(&c, 3).unwrap();
        let h = homotopy_category_presegal(&p).unwrap();
        assert!(is_isomorphic(&nerve(&h, 3), &nerve(&c, 3)));
    }
    // the Segal completion of Fr¹(A) is the datum of the free category on A
    let p = PreSegalSet::free_cell(1, &gens(3), 3).unwrap();
    let free = free_category(&p, 2).unwrap().category;
    let h = homotopy_category_presegal(&PreSegalSet::from_category(&free, 3).unwrap()).unwrap();
    assert_eq!(h.hom(0, 1).len(), 3);
    // a monoid table
    let m = FinCategory::monoid(&names(&["1", "t"]), |a, b| if a == 1 && b == 1 { 1 } else { a.max(b) }).unwrap();
    let h = homotopy_category_presegal(&PreSegalSet::from_category(&m, 3).unwrap()).unwrap();
    assert_eq!(h.num_objects(), 1);
    let t = h.morphism_index("t").unwrap();
    assert_eq!(h.compose(t, t), t);
    // Fr²(A) is not Segal: X[0,1,2] = A but X[0,1] × X[1,2] = A × A
    let fr2 = PreSegalSet::free_cell(2, &gens(2), 3).unwrap();
    assert!(matches!(homotopy_category_presegal(&fr2), Err(Error::Segal(_))));
}

#[test]
fn json_round_trip() {
    let p = PreSegalSet::free_cell(2, &gens(2), 3).unwrap();
    let j = serde_json::to_string(&p.to_json()).unwrap();
    let q = PreSegalSet::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(p, q);
    let free: PreSegalJson = serde_json::from_str(r#"{"kind":"free","n":1,"generators":["a"],"bound":2}"#).unwrap();
    assert_eq!(PreSegalSet::from_json(&free).unwrap().value(&[0, 1]), &["a".to_string()]);
    let bad: PreSegalJson =
        serde_json::from_str(r#"{"kind":"table","objects":["x"],"bound":1,"values":[{"seq":["x"],"elements":["p","q"]}],"faces":[],"degeneracies":[]}"#)
            .unwrap();
    assert!(matches!(PreSegalSet::from_json(&bad), Err(Error::Malformed(_))));
}
