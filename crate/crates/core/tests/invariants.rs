use proptest::prelude::*;

use sbdw_core::absolute::enumerate_twords;
use sbdw_core::coxeter::CoxeterSystem;
use sbdw_core::numfield::{Scalar, Vector};
use sbdw_core::sbdw::{build_and_verify, enumerate_omega, jv_polynomial, omega_oracle, Context};

fn point(parts: &[(i64, i64)]) -> Vector {
    parts.iter().map(|&(n, d)| Scalar::from_ratio(n, d)).collect()
}

fn positive_ratio() -> impl Strategy<Value = (i64, i64)> {
    (1i64..40, 1i64..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_chamber_point_gives_the_same_certified_triangulation(
        label in prop::sample::select(vec!["A3", "B3", "H3"]),
        pick in 0usize..8,
        parts in prop::collection::vec(positive_ratio(), 3),
    ) {
        let w = CoxeterSystem::from_label(label).unwrap();
        let cs = w.standard_coxeter_elements();
        let c = &cs[pick % cs.len()];
        let ctx = Context::new(&w, c).unwrap();
        let reference = build_and_verify(&ctx, &w.rho()).unwrap();
        let tri = build_and_verify(&ctx, &point(&parts)).unwrap();
        prop_assert!(tri.certificates.passed(), "{:?}", tri.certificates.failures);
        prop_assert_eq!(tri.cell_elements(), reference.cell_elements());
        prop_assert_eq!(tri.facet_signature(), reference.facet_signature());
    }

    #[test]
    fn dihedral_triangulations_match_the_oracle(
        m in 3u32..13,
        second in any::<bool>(),
        parts in prop::collection::vec(positive_ratio(), 2),
    ) {
        let w = CoxeterSystem::from_label(&format!("I2({m})")).unwrap();
        let cs = w.standard_coxeter_elements();
        let c = &cs[usize::from(second) % cs.len()];
        let chains = enumerate_twords(&w, c.element);
        prop_assert_eq!(enumerate_omega(&w, c), omega_oracle(&w, c, &chains));
        let ctx = Context::new(&w, c).unwrap();
        let tri = build_and_verify(&ctx, &point(&parts)).unwrap();
        prop_assert!(tri.certificates.passed(), "{:?}", tri.certificates.failures);
        let jv = jv_polynomial(&w, &chains);
        prop_assert!(jv.equal);
    }

    #[test]
    fn chain_identity_holds_for_reducible_groups(
        label in prop::sample::select(vec!["A1xA1", "A1xA2", "A1xB2", "A2xG2", "A1xI2(5)", "A1xA1xA1"]),
        pick in 0usize..8,
    ) {
        let w = CoxeterSystem::from_label(label).unwrap();
        let cs = w.standard_coxeter_elements();
        let c = &cs[pick % cs.len()];
        let chains = enumerate_twords(&w, c.element);
        prop_assert!(jv_polynomial(&w, &chains).equal);
        let ctx = Context::new(&w, c).unwrap();
        let tri = build_and_verify(&ctx, &w.rho()).unwrap();
        prop_assert!(tri.certificates.passed(), "{:?}", tri.certificates.failures);
    }
}
