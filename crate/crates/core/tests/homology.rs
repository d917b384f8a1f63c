use num_bigint::BigInt;
use proptest::prelude::*;
use scx_core::homology::*;
use scx_core::sset::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn snf_examples() {
    assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2]], 1)).factors, big(&[2]));
    let s = smith_normal_form(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 2));
    assert_eq!((s.rank, s.factors), (1, big(&[1])));
    assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 2)).factors, big(&[2, 4]));
    assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 3)).rank, 0);
}

#[test]
fn chain_complex_examples() {
    let d1 = chain_complex(&simplex(1));
    assert_eq!(d1.boundaries[1].to_dense(), IntMatrix::from_rows(&[vec![-1], vec![1]], 1));
    let c = chain_complex(&boundary(2).unwrap());
    let m = c.boundaries[1].to_dense();
    assert_eq!((m.rows(), m.cols()), (3, 3));
    assert_eq!(smith_normal_form(&m).rank, 2);
    let p = chain_complex(&simplex(0));
    assert!(p.boundaries.iter().all(|b| b.entries.is_empty()));
}

#[test]
fn sphere_and_simplex() {
    let h = homology(&boundary(3).unwrap(), 3);
    assert_eq!(h.betti(), vec![1, 0, 1, 0]);
    assert!(!h.has_torsion());
    assert_eq!(homology(&simplex(3), 3).grade, Grade::Acyclic);
    assert_eq!(homology(&collapsed_k(), 3).betti(), vec![1, 0, 0, 0]);
    assert_eq!(homology(&FiniteSimplicialSet::empty(), 1).betti(), vec![0, 0]);
}

#[test]
fn detects_two_torsion() {
    // a disk glued to a loop along a·a
    let labels = vec![vec!["v".to_string()], vec!["a".to_string()], vec!["D".to_string()]];
    let v = SimplexRef::nondeg(GenId::new(0, 0));
    let a = SimplexRef::nondeg(GenId::new(1, 0));
    let sv = SimplexRef { gen: GenId::new(0, 0), word: vec![0] };
    let faces = vec![vec![vec![]], vec![vec![v.clone(), v]], vec![vec![a.clone(), sv, a]]];
    let x = FiniteSimplicialSet::from_indexed(labels, faces).unwrap();
    let h = homology(&x, 2);
    assert_eq!(h.betti(), vec![1, 0, 0]);
    assert_eq!(h.degrees[1].torsion, big(&[2]));
    assert_eq!(h.grade, Grade::NotAcyclic);
}

#[test]
fn poset_with_least_element_has_witness() {
    let names: Vec<String> = (0..4).map(|i| format!("p{i}")).collect();
    // 0 below everything, 1 and 2 incomparable, 3 above 1 and 2
    let c = FinCategory::from_poset(&names, |a, b| a == b || a == 0 || (b == 3 && a != 3)).unwrap();
    let cert = contractibility_certificate(&c, 3);
    assert_eq!(cert.grade, Grade::Witness);
    assert!(cert.is_acyclic());
    let w = cert.witness.unwrap();
    assert_eq!((w.kind, w.object.as_str()), (WitnessKind::Initial, "p0"));
    // the same through the nerve: a cone point exists
    let cert = contractibility_certificate(&nerve(&c, 4), 3);
    assert_eq!(cert.grade, Grade::Witness);
}

#[test]
fn top_element_gives_final_witness() {
    let names: Vec<String> = (0..3).map(|i| format!("q{i}")).collect();
    let c = FinCategory::from_poset(&names, |a, b| a == b || b == 2).unwrap();
    let w = contractibility_certificate(&c, 2).witness.unwrap();
    assert_eq!((w.kind, w.object.as_str()), (WitnessKind::Final, "q2"));
    let w = contractibility_certificate(&nerve(&c, 3), 2).witness.unwrap();
    assert_eq!(w.kind, WitnessKind::Final);
}

#[test]
fn no_witness_for_circle() {
    let cert = contractibility_certificate(&boundary(2).unwrap(), 2);
    assert_eq!(cert.grade, Grade::NotAcyclic);
    assert_eq!(cert.witness, None);
    // acyclic, but no object witness: walking isomorphism
    let cert = contractibility_certificate(&FinCategory::walking_iso(), 3);
    assert_eq!(cert.grade, Grade::Witness);
    let cert = contractibility_certificate(&FinCategory::parallel_pair(), 3);
    assert_eq!(cert.betti(), vec![1, 1, 0, 0]);
}

#[test]
fn euler_characteristic_matches_betti() {
    for x in [
        boundary(3).unwrap(),
        product(&boundary(2).unwrap(), &boundary(2).unwrap()),
        collapsed_k(),
        horn(3, 1).unwrap(),
        nerve(&FinCategory::cyclic_group(2), 4),
    ] {
        let top = x.dim();
        let h = homology(&x, top);
        if h.has_torsion() {
            continue;
        }
        let alt: i64 = h.betti().iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(alt, x.euler_characteristic());
    }
    // torus
    assert_eq!(homology(&product(&boundary(2).unwrap(), &boundary(2).unwrap()), 3).betti(), vec![1, 2, 1, 0]);
}

#[test]
fn group_nerve_has_torsion() {
    // B(Z/2) truncated: H_1 = Z/2
    let h = homology(&nerve(&FinCategory::cyclic_group(2), 4), 2);
    assert_eq!(h.degrees[1].torsion, big(&[2]));
    assert_eq!(h.degrees[2].betti, 0);
}

#[test]
fn certificate_serializes() {
    let s = serde_json::to_string(&homology(&boundary(2).unwrap(), 1)).unwrap();
    assert!(s.contains("\"grade\":\"not_acyclic\""));
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

proptest! {
    #[test]
    fn snf_is_a_valid_factorization(rows in matrix_strategy()) {
        let m = IntMatrix::from_rows(&rows, rows[0].len());
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().magnitude() == &1u32.into());
        prop_assert!(s.v.determinant().magnitude() == &1u32.into());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j) == &BigInt::from(0));
                }
            }
        }
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert!(s.factors.iter().all(|f| f > &BigInt::from(0)));
    }

    #[test]
    fn snf_invariant_under_permutation(rows in matrix_strategy(), seed in any::<u64>()) {
        let cols = rows[0].len();
        let mut p = rows.clone();
        let k = (seed as usize) % p.len();
        p.rotate_left(k);
        let q: Vec<Vec<i64>> = p.iter().map(|r| { let mut r = r.clone(); r.rotate_right((seed as usize / 7) % cols); r }).collect();
        prop_assert_eq!(invariant_factors(&IntMatrix::from_rows(&rows, cols)), invariant_factors(&IntMatrix::from_rows(&q, cols)));
    }

    #[test]
    fn sparse_elimination_agrees_with_dense(rows in matrix_strategy()) {
        let cols = rows[0].len();
        let entries = rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(j, &x)| (i, j, x))).collect();
        let sp = SparseMatrix { rows: rows.len(), cols, entries };
        let dense = invariant_factors(&sp.to_dense());
        let (rank, torsion) = sp.rank_and_torsion();
        prop_assert_eq!(rank, dense.len());
        let one = BigInt::from(1);
        let want: Vec<BigInt> = dense.into_iter().filter(|f| f != &one).collect();
        prop_assert_eq!(torsion, want);
    }

    #[test]
    fn boundary_squares_to_zero_on_products(p in 0usize..3, q in 0usize..3, hollow in any::<bool>()) {
        let a = if hollow && p > 0 { boundary(p + 1).unwrap() } else { simplex(p) };
        let x = product(&a, &simplex(q));
        prop_assert!(chain_complex(&x).boundary_squares_to_zero());
        let h = homology(&x, x.dim());
        let alt: i64 = h.betti().iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, x.euler_characteristic());
    }
}

#[test]
fn span_category_posets_are_acyclic() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let c = span_category_certificate(m, n);
        assert!(c.is_contractible_grade(), "({m},{n}): {:?}", c.betti());
        assert!(c.is_acyclic() && c.connected);
    }
    // n = 0 has a single object
    assert_eq!(surjective_chain_poset(3, 0).num_objects(), 1);
    // (1,1): {00,10}, {00,11}, {01,11}, {00,01,11}, {00,10,11}
    assert_eq!(surjective_chain_poset(1, 1).num_objects(), 5);
}

#[test]
fn span_category_posets_have_unit_euler_characteristic() {
    for m in 0..=3 {
        for n in 0..=2 {
            let c = surjective_chain_poset(m, n);
            let x = nerve(&c, n + 1);
            assert_eq!(x.euler_characteristic(), 1, "({m},{n})");
        }
    }
}
