use proptest::prelude::*;
use wlab_encodings::*;

#[test]
fn pair_unpair_bijective_below_a_million() {
    for c in 0..1_000_000u64 {
        let (n, k) = unpair(c);
        assert_eq!(pair(n, k).unwrap(), c);
    }
    for n in 0..1000u64 {
        for k in 0..1000u64 {
            assert_eq!(unpair(pair(n, k).unwrap()), (n, k));
        }
    }
}

#[test]
fn theta_round_trip_small_ranks() {
    for n in 1..=4usize {
        for r in 0..100_000u64 {
            let s = theta_decode(r, n).unwrap();
            assert_eq!(s.len(), n);
            assert!(is_strictly_increasing(&s));
            assert_eq!(theta_encode(&s).unwrap(), r);
        }
    }
}

proptest! {
    #[test]
    fn tuple_untuple(values in prop::collection::vec(0u64..50, 1..5)) {
        let code = tuple(&values).unwrap();
        prop_assert_eq!(untuple(code, values.len()).unwrap(), values);
    }

    #[test]
    fn theta_encode_decode(mut set in prop::collection::btree_set(0u64..40, 1..5)) {
        let v: Vec<u64> = std::mem::take(&mut set).into_iter().collect();
        let r = theta_encode(&v).unwrap();
        prop_assert_eq!(theta_decode(r, v.len()).unwrap(), v);
    }

    #[test]
    fn char_subset_is_increasing_subset(e in prop::collection::vec(0u64..30, 0..20)) {
        let bits = enumeration_to_char_subset(&e, 30);
        let kept: Vec<u64> = (0..30u64).filter(|&i| bits[i as usize]).collect();
        for v in &kept {
            prop_assert!(e.contains(v));
        }
        // Acceptance order equals numeric order: replay the rule.
        let mut replay = Vec::new();
        for &v in &e {
            if replay.last().map_or(true, |l| v > *l) {
                replay.push(v);
            }
        }
        prop_assert_eq!(kept, replay);
    }
}
