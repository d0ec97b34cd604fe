use f4core::chevalley::{commutator_at, commutator_formula, normal_form, product};
use f4core::exchange::{apply_exchange, fixture, validate_exchange, FIXTURES};
use f4core::linalg::{q, Q};
use f4core::orbits::{closure_leq, OrbitLabel};
use f4core::rootsys::{all_roots, enumerate_positive_roots, weyl_enumerate, CocharWeight, Root};
use f4core::stabilizers::{
    f4a2_act, f4a2_stab_dim, f4a3_equations, f4a3_stab, trivial_solution, F4a2Char, F4a2Element, Mat3J,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn root() -> impl Strategy<Value = Root> {
    (0..all_roots().len()).prop_map(|i| all_roots()[i])
}

fn small() -> impl Strategy<Value = Q> {
    (-4i64..=4).prop_map(q)
}

fn nonzero() -> impl Strategy<Value = Q> {
    prop_oneof![-4i64..=-1, 1i64..=4].prop_map(q)
}

fn mat3j() -> impl Strategy<Value = Mat3J> {
    proptest::array::uniform6(small()).prop_map(|p| Mat3J::from_params(&p))
}

fn canonical_order() -> Vec<Root> {
    let pos = enumerate_positive_roots();
    let max_h = pos.iter().map(Root::height).max().unwrap();
    (1..=max_h).flat_map(|h| pos.iter().copied().filter(move |r| r.height() == h)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normal_form_round_trip(picks in proptest::collection::btree_map(0usize..24, nonzero(), 1..4)) {
        let order = canonical_order();
        let factors: Vec<(Root, Q)> = order
            .iter()
            .enumerate()
            .map(|(k, r)| (*r, picks.get(&k).cloned().unwrap_or_else(Q::zero)))
            .collect();
        let present: Vec<(Root, Q)> = factors.iter().filter(|(_, t)| !t.is_zero()).cloned().collect();
        prop_assert_eq!(normal_form(&product(&present)).unwrap(), factors);
    }

    #[test]
    fn commutator_coefficients_scale(a in root(), b in root(), r in nonzero(), s in nonzero()) {
        prop_assume!(a != b && a != -b);
        let unit = commutator_formula(&a, &b).unwrap();
        let got = commutator_at(&a, &b, &r, &s).unwrap();
        prop_assert_eq!(got.len(), unit.len());
        for (t, (root, (i, j), c)) in unit.iter().zip(&got) {
            let mut want = q(t.coeff);
            for _ in 0..*i { want *= &r; }
            for _ in 0..*j { want *= &s; }
            prop_assert_eq!((t.root, t.degree), (*root, (*i, *j)));
            prop_assert_eq!(&want, c);
        }
        prop_assert!(unit.iter().all(|t| a.combine(t.degree.0, &b, t.degree.1) == Some(t.root)));
    }

    #[test]
    fn stabilizer_invariant_under_conjugation(
        a in mat3j(),
        b in mat3j(),
        g in proptest::array::uniform3(proptest::array::uniform3(-2i64..=2)),
    ) {
        let g = g.map(|row| row.map(q));
        let det = &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1])
            - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
            + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0]);
        prop_assume!(!det.is_zero());
        prop_assert_eq!(f4a3_stab(&a, &b).dim, f4a3_stab(&a.conjugate(&g), &b.conjugate(&g)).dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_preserves_pairing(k in 0usize..1152, a in root(), r in proptest::array::uniform4(-5i64..=5)) {
        let w = &weyl_enumerate()[k];
        let r = CocharWeight(r);
        prop_assert_eq!(w.apply_cochar(&r).pair(&w.apply(&a)), r.pair(&a));
        prop_assert_eq!(w.compose(&w.inverse()).length(), 0);
    }

    #[test]
    fn trivial_line_is_in_every_stabilizer(a in mat3j(), b in mat3j(), t in nonzero()) {
        prop_assert!(f4a3_equations(&a, &b, &trivial_solution(&t)).iter().all(Zero::is_zero));
        let stab = f4a3_stab(&a, &b);
        prop_assert!(stab.dim >= 1);
        for s in &stab.basis {
            prop_assert!(f4a3_equations(&a, &b, s).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn f4a2_action_preserves_shape_and_stabilizer(
        a in proptest::array::uniform6(small()),
        gamma in proptest::array::uniform2(small()),
        s in nonzero(),
        t in proptest::array::uniform4(nonzero()),
        which in 0usize..4,
    ) {
        let chi = F4a2Char::new(a, gamma);
        let el = match which {
            0 => F4a2Element::Long([[Q::one(), s], [Q::zero(), Q::one()]]),
            1 => F4a2Element::X0010(s),
            2 => F4a2Element::XMinus0010(s),
            _ => F4a2Element::Torus(t),
        };
        let moved = f4a2_act(&el, &chi).unwrap();
        prop_assert_eq!(moved.coords().len(), chi.coords().len());
        prop_assert_eq!(f4a2_stab_dim(&moved), f4a2_stab_dim(&chi));
    }

    #[test]
    fn closure_is_a_partial_order(i in 0usize..16, j in 0usize..16, k in 0usize..16) {
        let [a, b, c] = [i, j, k].map(|n| OrbitLabel::ALL[n]);
        prop_assert!(closure_leq(a, a));
        if closure_leq(a, b) && closure_leq(b, a) {
            prop_assert_eq!(a, b);
        }
        if closure_leq(a, b) && closure_leq(b, c) {
            prop_assert!(closure_leq(a, c));
        }
        if closure_leq(a, b) && a != b {
            prop_assert!(a.record().half_dim < b.record().half_dim);
        }
    }

    #[test]
    fn exchange_validation_is_total(f in 0usize..FIXTURES.len(), a in root(), b in root(), g in root()) {
        let s = fixture(FIXTURES[f].0).unwrap();
        let report = validate_exchange(&s.datum, &a, &b, &g);
        match apply_exchange(&s.datum, &a, &b, &g) {
            Ok(after) => {
                prop_assert!(report.passed());
                prop_assert_eq!(after.compact_count(), s.datum.compact_count());
            }
            Err(_) => prop_assert!(!report.passed()),
        }
    }
}

#[test]
fn generic_f4a2_characters_have_finite_stabilizer() {
    let mut rng = StdRng::seed_from_u64(7);
    let trials = 200;
    let finite = (0..trials)
        .filter(|_| {
            let a: [Q; 6] = std::array::from_fn(|_| q(rng.random_range(-20..=20)));
            let gamma: [Q; 2] = std::array::from_fn(|_| q(rng.random_range(-20..=20)));
            f4a2_stab_dim(&F4a2Char::new(a, gamma)) == 0
        })
        .count();
    assert!(finite * 100 >= 95 * trials, "{finite}/{trials} generic characters have dim 0");
}
