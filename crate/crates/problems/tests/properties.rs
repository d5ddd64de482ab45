use proptest::prelude::*;
use wlab_problems::*;

fn coloring_from_bits(n: usize, w: u64, bits: &[u32]) -> Coloring {
    let mut i = 0;
    Coloring::from_fn(n, Colors::Finite(2), w, |_| {
        let v = bits[i % bits.len()];
        i += 1;
        v
    })
    .unwrap()
}

proptest! {
    #[test]
    fn homogeneity_is_monotone_under_subsets(bits in prop::collection::vec(0u32..2, 1..40), mask in 0u32..(1 << 8)) {
        let c = coloring_from_bits(2, 8, &bits);
        let all: Vec<u64> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(all.len() >= 2);
        if let Some(col) = homogeneous_color(&c, &all) {
            for drop in 0..all.len() {
                let mut sub = all.clone();
                sub.remove(drop);
                if sub.len() >= 2 {
                    prop_assert!(check_homogeneous(&c, &HomSet::new(sub, col)).unwrap());
                }
            }
        }
    }

    #[test]
    fn annotated_stable_colorings_probe_stable(limit_bits in prop::collection::vec(0u32..3, 10), head in prop::collection::vec(0u32..3, 1..30), horizon in 1u64..6) {
        let w = 10u64;
        let limit = Coloring::from_fn(1, Colors::Finite(3), w, |s| limit_bits[s[0] as usize]).unwrap();
        let mut k = 0;
        let c = Coloring::from_fn(2, Colors::Finite(3), w, |s| {
            k += 1;
            if s[1] >= horizon { limit_bits[s[0] as usize] } else { head[k % head.len()] }
        }).unwrap();
        let c = c.with_annotation(StableAnnotation { limit: Box::new(limit.clone()), horizon }).unwrap();
        match is_stable_up_to(&c, horizon) {
            Stability::Stable(l) => prop_assert_eq!(l, limit.restrict(horizon).unwrap()),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

#[test]
fn coloring_json_matches_documented_format() {
    let c = Coloring::from_fn(2, Colors::Finite(2), 4, |s| (s[1] % 2) as u32).unwrap();
    let v: serde_json::Value = serde_json::to_value(&c).unwrap();
    assert_eq!(v["arity"], 2);
    assert_eq!(v["colors"], 2);
    assert_eq!(v["window"], 4);
    // ϑ_2 order over [4]^2: {0,1},{1,2},{0,2},{2,3},{1,3},{0,3}.
    assert_eq!(v["table"], serde_json::json!([1, 0, 0, 1, 1, 1]));
}
