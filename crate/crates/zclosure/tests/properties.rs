//! Property tests for the arithmetic and algebraic invariants.

use proptest::prelude::*;

use zclosure::cube::{e_oplus, SymmetricSet};
use zclosure::field::{binom_mod_p, p_ary_digits, PrimeField};
use zclosure::poly::{
    f_minus, f_plus, sym_to_multilinear, weights_to_sigma_coeffs, MultilinearPoly, SymmetricPoly,
};
use zclosure::CubePoint;

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(11)]
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn digits_reconstruct(p in small_prime(), n in 0u64..1_000_000) {
        let field = PrimeField::new(p).unwrap();
        let digits = p_ary_digits(n, &field);
        prop_assert_eq!(digits.recompose(&field), n);
        prop_assert!(digits.digits.iter().all(|&d| d < p));
        prop_assert_ne!(digits.digits.last(), Some(&0));
    }

    #[test]
    fn lucas_support(p in small_prime(), n in 0u64..5000, m in 0u64..5000) {
        let field = PrimeField::new(p).unwrap();
        let nonzero = binom_mod_p(n, m, &field) != 0;
        let nd = p_ary_digits(n, &field).digits;
        let md = p_ary_digits(m, &field).digits;
        let dominated = md
            .iter()
            .enumerate()
            .all(|(t, &d)| d <= nd.get(t).copied().unwrap_or(0));
        prop_assert_eq!(nonzero, dominated);
    }

    #[test]
    fn oplus_laws(n in 1usize..14, ebits in 0u32.., m in 1u64..8) {
        let e = SymmetricSet::new(n, (0..=n).filter(|&w| ebits >> w & 1 == 1)).unwrap();
        let once = e_oplus(&e, m);
        prop_assert!(e.is_subset_of(&once));
        prop_assert_eq!(e_oplus(&once, m), once);
    }

    #[test]
    fn sigma_roundtrip_and_translates(
        p in small_prime(),
        raw in prop::collection::vec(0u64..121, 1..14),
    ) {
        let field = PrimeField::new(p).unwrap();
        let n = raw.len() - 1;
        let coeffs: Vec<u64> = raw.iter().map(|&c| c % p).collect();
        let g = SymmetricPoly::new(field, n, coeffs).unwrap();
        prop_assert_eq!(weights_to_sigma_coeffs(field, &g.weight_values()), g.clone());
        prop_assert_eq!(f_minus(&f_plus(&g)), g.clone());
        prop_assert_eq!(f_plus(&f_minus(&g)), g);
    }

    #[test]
    fn sym_expansion_matches_weights(
        p in prop_oneof![Just(2u64), Just(3)],
        raw in prop::collection::vec(0u64..121, 1..9),
    ) {
        let field = PrimeField::new(p).unwrap();
        let n = raw.len() - 1;
        let coeffs: Vec<u64> = raw.iter().map(|&c| c % p).collect();
        let g = SymmetricPoly::new(field, n, coeffs).unwrap();
        let ml = sym_to_multilinear(&g).unwrap();
        prop_assert_eq!(ml.degree(), g.degree());
        for bits in 0u32..(1 << n) {
            let x = CubePoint::new(n, bits);
            prop_assert_eq!(ml.eval(&x).unwrap(), g.eval_at_weight(x.weight()).unwrap());
        }
    }

    #[test]
    fn product_evaluates_pointwise(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        terms_a in prop::collection::vec((0u32..32, 1u64..11), 0..6),
        terms_b in prop::collection::vec((0u32..32, 1u64..11), 0..6),
    ) {
        let field = PrimeField::new(p).unwrap();
        let a = MultilinearPoly::from_terms(field, 5, terms_a);
        let b = MultilinearPoly::from_terms(field, 5, terms_b);
        let ab = a.mul(&b);
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            if let Some(dab) = ab.degree() {
                prop_assert!(dab <= da + db);
            }
        }
        for bits in 0u32..32 {
            let x = CubePoint::new(5, bits);
            prop_assert_eq!(
                ab.eval(&x).unwrap(),
                field.mul(a.eval(&x).unwrap(), b.eval(&x).unwrap())
            );
        }
    }
}
