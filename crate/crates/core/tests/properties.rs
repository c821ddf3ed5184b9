use opcat_core::fibration::{roundtrip_fibration, roundtrip_operad, SplitFibration};
use opcat_core::fixtures;
use opcat_core::freemon::psi;
use opcat_core::grothendieck::grothendieck;
use opcat_core::io::{load, save};
use opcat_core::operad::CategoricalOperad;
use opcat_core::simplicial::coskeleton_extend;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_operad(seed: u64) -> CategoricalOperad {
    fixtures::random_discrete_bq2_operad(&mut ChaCha8Rng::seed_from_u64(seed), 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_operads_round_trip(seed in any::<u64>()) {
        let p = random_operad(seed);
        prop_assert!(roundtrip_operad(&p.base, &p).is_ok());
        let f = SplitFibration::from_grothendieck(&grothendieck(&p.base, &p).unwrap());
        prop_assert!(roundtrip_fibration(&f).is_ok());
    }

    #[test]
    fn random_operads_survive_json(seed in any::<u64>()) {
        let p = random_operad(seed);
        let text = save(&p).unwrap();
        prop_assert_eq!(load::<CategoricalOperad>(&text).unwrap(), p);
    }
}

#[test]
fn psi_is_stable_under_coskeleton_then_truncate() {
    for name in fixtures::MONCATS {
        let x = psi(&fixtures::moncat(name).unwrap()).unwrap();
        let y = coskeleton_extend(&x, 3).unwrap().truncate(3).unwrap();
        assert_eq!(x, y, "{name}");
    }
}
