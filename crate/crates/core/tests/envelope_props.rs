mod common;

use common::oracle;
use hahnval::envelope::{eventual_argmin, eventual_order, AffineFamily};
use hahnval::error::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn order_matches_sampling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let items = common::family(&mut rng);
        let cut = common::cut(&mut rng);
        let fam = AffineFamily::new(items.clone(), cut.clone()).unwrap();
        match (eventual_order(&fam), oracle::sampled_order(&items, &cut)) {
            (Ok(ord), Some(sampled)) => {
                prop_assert_eq!(&ord.order, &sampled);
                prop_assert!(cut.contains(&ord.threshold), "threshold {} outside {}", ord.threshold, cut);
                if let Some(m) = &ord.max_crossing {
                    prop_assert!(&ord.threshold > m);
                }
            }
            (Err(Error::NoAdmissibleGamma), None) => {}
            (got, want) => prop_assert!(false, "library {:?}, sampling {:?}", got, want),
        }
    }

    #[test]
    fn argmin_is_last(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = AffineFamily::new(common::family(&mut rng), common::cut(&mut rng)).unwrap();
        if let (Ok(ord), Ok(m)) = (eventual_order(&fam), eventual_argmin(&fam)) {
            prop_assert_eq!(ord.order.last(), Some(&m));
        }
    }
}
