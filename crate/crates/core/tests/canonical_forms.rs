use ktweb_core::exact_kernel::{int, rat, Rational};
use ktweb_core::frames_canonical::{
    canonical_form, ec6_ec8_witness, equivalence_witnesses, moving_frame, moving_frame_float,
    EquivalenceClass, FRAME_TOLERANCE,
};
use ktweb_core::invariant_engine::{auxiliary_invariants, fundamental_invariants, istar_with_k2};
use ktweb_core::isometry_actions::{discrete_act_params, DiscreteReflection};
use ktweb_core::killing_spaces::{embed_nontrivial, Space};
use ktweb_core::web_classifier::{classify_full, representative, WebClass};
use ktweb_core::Error;
use proptest::prelude::*;

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=13).prop_map(|(n, d)| rat(n, d))
}

fn in_frame_domain(space: Space) -> impl Strategy<Value = [f64; 6]> {
    proptest::array::uniform6(-2.0f64..2.0).prop_filter("frame domain", move |p| {
        if p[5].abs() < 0.1 {
            return false;
        }
        match space {
            Space::Euclidean => true,
            Space::Minkowski => {
                let d = p[3] * p[3] + p[4] * p[4] - p[5] * (p[0] + p[1]);
                (2.0 * (p[2] * p[5] - p[3] * p[4]) / d).abs() < 0.99
            }
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn ec8_invariants_follow_k2(k2 in positive()) {
        let nt = canonical_form(Space::Minkowski, EquivalenceClass::EC8, Some(&k2)).unwrap();
        let p = embed_nontrivial(&nt);
        let [i1, _, i3] = fundamental_invariants(&p);
        let k4 = &k2 * &k2;
        prop_assert_eq!(&i1, &(-&k4 / int(4)));
        prop_assert_eq!(&i3, &rat(1, 4));
        // With the canonical k the auxiliary invariant vanishes.
        prop_assert_eq!(istar_with_k2(&i1, &i3, &k2), int(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euclidean_frames_land_on_the_section(p in in_frame_domain(Space::Euclidean)) {
        let f = moving_frame_float(Space::Euclidean, &p).unwrap();
        prop_assert!(f.residual <= FRAME_TOLERANCE);
    }

    #[test]
    fn minkowski_frames_land_on_the_section(p in in_frame_domain(Space::Minkowski)) {
        let f = moving_frame_float(Space::Minkowski, &p).unwrap();
        prop_assert!(f.residual <= FRAME_TOLERANCE);
    }
}

#[test]
fn canonical_values() {
    let m = |ec| embed_nontrivial(&canonical_form(Space::Minkowski, ec, None).unwrap());
    assert_eq!(auxiliary_invariants(&m(EquivalenceClass::EC3)).unwrap().i2p, Some(rat(-1, 4)));
    let ec6 = auxiliary_invariants(&m(EquivalenceClass::EC6)).unwrap();
    assert_eq!(fundamental_invariants(&m(EquivalenceClass::EC6))[0], rat(-3, 256));
    assert_eq!(ec6.istar, Some(rat(9, 256)));
    assert_eq!(
        moving_frame(&m(EquivalenceClass::EC6)),
        Err(Error::OutsideArctanhDomain { argument: Some(int(-2)) })
    );
}

#[test]
fn canonical_forms_are_fixed_by_their_rows_under_reflections() {
    for &ec in EquivalenceClass::of_space(Space::Minkowski) {
        let p = representative(Space::Minkowski, ec).unwrap();
        let expected = Some(WebClass::expected_for(Space::Minkowski, ec));
        for word in DiscreteReflection::elements() {
            let q = discrete_act_params(&word, &p).unwrap();
            assert_eq!(classify_full(&q).unwrap().class(), expected, "{ec} under {:?}", word.word);
        }
    }
}

#[test]
fn alternative_pairs_and_degeneracy_witness() {
    let witnesses = equivalence_witnesses().unwrap();
    assert!(witnesses.iter().all(|w| w.holds()));
    let w = ec6_ec8_witness().unwrap();
    assert!(w.holds());
    let sqrt3_8 = 3f64.sqrt() / 8.0;
    assert!((w.boosted[0] - 0.125).abs() < 1e-12 && (w.boosted[1] + 0.125).abs() < 1e-12);
    assert!((w.boosted[2] - sqrt3_8).abs() < 1e-12);
    assert!((w.nontrivial[1] + sqrt3_8).abs() < 1e-12);
    assert_eq!(w.after, [rat(-3, 256), rat(1, 4)]);
}

#[test]
fn sign_normalization_keeps_ec9_apart() {
    let p = representative(Space::Minkowski, EquivalenceClass::EC9).unwrap();
    let negated = classify_full(&p.scale(&int(-1))).unwrap();
    assert_eq!(negated.class(), Some(WebClass::EC9));
    assert!(negated.caveats.iter().any(|c| c.contains("sign normalization")));
}
