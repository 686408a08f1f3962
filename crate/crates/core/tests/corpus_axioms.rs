use lhott_core::base_change::{
    beck_chevalley, check_triangle_identities, de_morgan_iso, frobenius_iso, Square,
};
use lhott_core::corpus::{random_functor, random_functor_into, random_map, random_system};
use lhott_core::linear::{pullback_map, tensor_maps};
use lhott_core::quantize::{counit_dagger, fundamental_class_map, norm_map, FundamentalClass};
use lhott_core::{compose, identity_map, InnerProduct};
use lhott_core::base_change::sum_map;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn six_operation_axioms_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let f = random_functor(&mut rng);
        let a = random_system(&mut rng, f.domain(), false);
        let b = random_system(&mut rng, f.codomain(), false);
        check_triangle_identities(&f, &a, &b).unwrap();
        assert!(frobenius_iso(&f, &a, &b).unwrap().is_equivalence());
        assert!(de_morgan_iso(&f, &a).unwrap().is_equivalence());
        let g = random_functor_into(&mut rng, f.codomain());
        let sq = Square::pullback(&f, &g).unwrap();
        assert!(beck_chevalley(&sq, &a).unwrap().is_equivalence());
    }
}

#[test]
fn fundamental_class_identities_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let f = random_functor(&mut rng);
        let b = random_system(&mut rng, f.codomain(), true);
        let b2 = random_system(&mut rng, f.codomain(), true);
        let fc = FundamentalClass::canonical(&f).unwrap();
        assert!(norm_map(&f, &b).unwrap().is_equivalence());
        let ip = InnerProduct::standard(&b).unwrap();
        assert_eq!(counit_dagger(&fc, &ip).unwrap(), fundamental_class_map(&fc, &b).unwrap());
        let h = random_map(&mut rng, &b, &b2);
        let lhs = compose(
            &fundamental_class_map(&fc, &b2).unwrap(),
            &tensor_maps(&h, &identity_map(fc.twist())).unwrap(),
        )
        .unwrap();
        let rhs = compose(
            &sum_map(&f, &pullback_map(&f, &h).unwrap()).unwrap(),
            &fundamental_class_map(&fc, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}
