mod common;

use common::{horizon, RawSet};
use inferlab::upset::{Relation, UpSet};
use proptest::prelude::*;

fn raw_set() -> impl Strategy<Value = RawSet> {
    (prop::collection::vec(any::<bool>(), 0..8), prop::collection::vec(any::<bool>(), 1..7))
        .prop_map(|(prefix, period)| RawSet { prefix, period })
}

proptest! {
    #[test]
    fn membership_matches_the_raw_bits(r in raw_set()) {
        let s = r.build();
        for x in 0..60 {
            prop_assert_eq!(s.contains(x), r.contains(x));
        }
    }

    #[test]
    fn text_form_roundtrips(r in raw_set()) {
        let s = r.build();
        prop_assert_eq!(s.to_string().parse::<UpSet>().unwrap(), s);
    }

    #[test]
    fn equal_sets_have_equal_forms(a in raw_set(), b in raw_set()) {
        let n = horizon(&a, &b);
        let same = (0..n).all(|x| a.contains(x) == b.contains(x));
        prop_assert_eq!(same, a.build() == b.build());
    }

    #[test]
    fn boolean_laws(a in raw_set(), b in raw_set(), c in raw_set()) {
        let (a, b, c) = (a.build(), b.build(), c.build());
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersection(&b.union(&c)), a.intersection(&b).union(&a.intersection(&c)));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert_eq!(a.is_subset(&a.union(&b)), true);
    }

    #[test]
    fn relate_is_antisymmetric(a in raw_set(), b in raw_set()) {
        let (a, b) = (a.build(), b.build());
        let flipped = match a.relate(&b) {
            Relation::ProperSubset => Relation::ProperSuperset,
            Relation::ProperSuperset => Relation::ProperSubset,
            r => r,
        };
        prop_assert_eq!(b.relate(&a), flipped);
    }

    #[test]
    fn first_difference_is_the_least_element_of_the_difference(a in raw_set(), b in raw_set()) {
        let n = horizon(&a, &b);
        let expected = (0..n).find(|&x| a.contains(x) && !b.contains(x));
        prop_assert_eq!(a.build().first_difference(&b.build()), expected);
    }
}
