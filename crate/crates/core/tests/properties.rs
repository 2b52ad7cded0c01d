use std::sync::OnceLock;

use proptest::prelude::*;

use k4hol::chevalley::{self, AlgebraMap, GaussRat, StructureConstants};
use k4hol::realform;
use k4hol::rootsys::{CartanType, RootSystem, TypeDecomposition};
use k4hol::toral::{self, SignCharacter};
use k4hol::weylorbit::{same_orbit, F2Action};

fn e7() -> &'static RootSystem {
    static RS: OnceLock<RootSystem> = OnceLock::new();
    RS.get_or_init(|| RootSystem::new(CartanType::E7))
}

fn e6_algebra() -> &'static StructureConstants {
    static SC: OnceLock<StructureConstants> = OnceLock::new();
    SC.get_or_init(|| chevalley::build_chevalley(CartanType::E6).unwrap())
}

fn simple_type() -> impl Strategy<Value = CartanType> {
    prop_oneof![
        (1usize..8).prop_map(CartanType::a),
        (4usize..7).prop_map(CartanType::d),
        Just(CartanType::E6),
        Just(CartanType::E7),
    ]
}

fn small_vector(dim: usize) -> impl Strategy<Value = Vec<GaussRat>> {
    proptest::collection::vec((0..dim, -3i64..4), 1..5).prop_map(move |entries| {
        let mut v = vec![chevalley::linalg::gauss(0); dim];
        for (k, c) in entries {
            v[k] = chevalley::linalg::gauss(c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_text_round_trips(parts in proptest::collection::vec(simple_type(), 0..4), center in 0usize..4) {
        let d = TypeDecomposition::new(parts, center);
        let back: TypeDecomposition = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn weyl_words_preserve_class_and_signature(mask in 1u8..128, word in proptest::collection::vec(0usize..7, 0..24)) {
        let rs = e7();
        let w = F2Action::weyl(rs);
        let f = SignCharacter::from_mask(7, mask);
        let g = word.iter().fold(f, |acc, &s| w.apply_char(s, &acc));
        prop_assert_eq!(toral::classify_involution(rs, &f).unwrap(), toral::classify_involution(rs, &g).unwrap());
        prop_assert_eq!(
            toral::subalgebra_signature(rs, &[f], None).unwrap(),
            toral::subalgebra_signature(rs, &[g], None).unwrap()
        );
        prop_assert!(same_orbit(&w, &f, &g));
    }

    #[test]
    fn m_value_is_symmetric(x in 1u8..128, y in 1u8..128) {
        let rs = e7();
        let (a, b) = (SignCharacter::from_mask(7, x), SignCharacter::from_mask(7, y));
        match (toral::m_value(rs, &a, &b), toral::m_value(rs, &b, &a)) {
            (Ok(u), Ok(v)) => prop_assert_eq!(u, v),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "m defined in one order only"),
        }
    }

    #[test]
    fn real_form_lookup_round_trips(ctype in simple_type().prop_filter("table covers A and D", |t| t.letter() != k4hol::rootsys::Letter::E)) {
        for form in realform::real_forms_of(ctype).unwrap() {
            let found = realform::real_form_of(ctype, form.compact_dim).unwrap();
            prop_assert_eq!(found.compact_dim, form.compact_dim);
            prop_assert_eq!(found.compact.dim(), form.compact_dim);
            prop_assert_eq!(realform::canonicalize(&found.name).unwrap(), found.name.clone());
        }
    }

    #[test]
    fn e6_maps_preserve_random_brackets(x in small_vector(78), y in small_vector(78)) {
        static MAPS: OnceLock<Vec<AlgebraMap>> = OnceLock::new();
        let sc = e6_algebra();
        let maps = MAPS.get_or_init(|| {
            let f = toral::involution_from_coroot(sc.root_system(), &[1]).unwrap();
            vec![
                chevalley::diagram_automorphism_omega(sc).unwrap(),
                chevalley::toral_automorphism(sc, &f).unwrap(),
            ]
        });
        for m in maps {
            prop_assert_eq!(m.apply(&sc.bracket(&x, &y)), sc.bracket(&m.apply(&x), &m.apply(&y)));
        }
        // antisymmetry
        let xy = sc.bracket(&x, &y);
        let yx = sc.bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| a.clone() + b.clone() == chevalley::linalg::gauss(0)));
    }

    #[test]
    fn killing_form_is_invariant(x in small_vector(78), y in small_vector(78), z in small_vector(78)) {
        static K: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
        let sc = e6_algebra();
        let k = K.get_or_init(|| sc.killing_matrix());
        // K([x, y], z) = K(x, [y, z])
        prop_assert_eq!(
            chevalley::killing(k, &sc.bracket(&x, &y), &z),
            chevalley::killing(k, &x, &sc.bracket(&y, &z))
        );
    }
}
