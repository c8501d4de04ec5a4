mod common;

use common::laws;
use hahnval::ordval::{q, Cut, GroupValue};
use proptest::prelude::*;

fn value() -> impl Strategy<Value = GroupValue> {
    prop_oneof![
        9 => (-60i64..60, 1i64..13).prop_map(|(n, d)| GroupValue::Finite(q(n, d))),
        1 => Just(GroupValue::Infinity),
    ]
}

fn cut() -> impl Strategy<Value = Cut> {
    prop_oneof![
        (-40i64..40, 1i64..7).prop_map(|(n, d)| Cut::below(q(n, d))),
        (-40i64..40, 1i64..7).prop_map(|(n, d)| Cut::at_most(q(n, d))),
        Just(Cut::PlusInfinity),
    ]
}

proptest! {
    #[test]
    fn value_cut_relations(alpha in value(), c in cut(), bn in -20i64..20, bd in 1i64..5, n in 1u64..9) {
        laws::value_cut(&alpha, &c, &q(bn, bd), n).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn group_laws(a in value(), b in value(), c in value()) {
        laws::value_order(&a, &b, &c).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn text_round_trip(v in value(), c in cut()) {
        laws::value_text(&v, &c).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn cut_order_matches_lower_sets(a in cut(), b in cut(), n in -50i64..50, d in 1i64..9) {
        // a ≤ b as cuts means the lower set of a is contained in that of b.
        let x = q(n, d);
        if a <= b && a.contains(&x) {
            prop_assert!(b.contains(&x), "{a} ≤ {b} but {x} only in the first");
        }
    }
}
