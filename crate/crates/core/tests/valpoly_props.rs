mod common;

use common::{laws, oracle};
use hahnval::ordval::{q, GroupValue};
use hahnval::valpoly::{binom_mod, binom_val};
use hahnval::{Series, ValPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #[test]
    fn taylor_identity(p in prime(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::dense_poly(&mut rng, p, 5, 3);
        let c = common::series(&mut rng, p, 3, true);
        let x = common::series(&mut rng, p, 3, true);
        laws::taylor(&f, &c, &x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn capped_evaluation(p in prime(), seed in any::<u64>(), cap in -8i64..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::dense_poly(&mut rng, p, 6, 3);
        let x = common::series(&mut rng, p, 3, false);
        laws::capped_eval(&f, &x, &GroupValue::Finite(q(cap, 2))).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn f_adic_round_trip(p in prime(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::dense_poly(&mut rng, p, 9, 2);
        let d = rng.gen_range(1..=3);
        let mut cs: Vec<Series> = (0..d).map(|_| common::series(&mut rng, p, 2, true)).collect();
        cs.push(Series::monomial(p, rng.gen_range(1..p) as i64, common::rational(&mut rng, 4, &[1, 2])));
        laws::f_adic(&g, &ValPoly::new(p, cs)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn binomials_against_pascal(p in prime(), n in 0u64..40, k in 0u64..40) {
        let tri = oracle::pascal(40, p);
        let expected = if k <= n { tri[n as usize][k as usize] } else { 0 };
        prop_assert_eq!(binom_mod(n, k, p), expected);
    }

    #[test]
    fn prime_power_binomials_are_units(p in prime(), t in 1u32..5, r in 2u64..10) {
        prop_assume!(r % p != 0);
        prop_assert_eq!(oracle::kummer(p, t, r), 0);
        prop_assert_eq!(binom_val(p, t, r).unwrap(), GroupValue::zero());
    }
}
