use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wlab_encodings::Subsets;
use wlab_problems::{check_homogeneous, homogeneous_color, Colors, Coloring, HomSet};
use wlab_ramsey::*;

fn from_mask(w: u64, mask: u32) -> Coloring {
    let mut i = 0;
    Coloring::from_fn(2, Colors::Finite(2), w, |_| {
        let v = mask >> i & 1;
        i += 1;
        v
    })
    .unwrap()
}

/// Independent oracle: test every triple directly.
fn has_mono_triangle(c: &Coloring) -> bool {
    Subsets::new(c.window(), 3).any(|t| {
        let a = c.color(&[t[0], t[1]]).unwrap();
        a == c.color(&[t[0], t[2]]).unwrap() && a == c.color(&[t[1], t[2]]).unwrap()
    })
}

#[test]
fn every_two_coloring_of_k6_has_a_monochromatic_triangle() {
    for mask in 0..(1u32 << 15) {
        let c = from_mask(6, mask);
        assert!(has_mono_triangle(&c), "mask {mask}");
        let m = solve_homogeneous(&c, 3).unwrap();
        assert!(check_homogeneous(&c, &m).unwrap());
    }
}

#[test]
fn k5_admits_triangle_free_colorings() {
    let mut free = 0;
    for mask in 0..(1u32 << 10) {
        let c = from_mask(5, mask);
        let oracle = has_mono_triangle(&c);
        assert_eq!(solve_homogeneous(&c, 3).is_ok(), oracle);
        if !oracle {
            free += 1;
        }
    }
    // The pentagon and its complement, under the 12 labelled pentagons.
    assert_eq!(free, 12);
    assert_eq!(ramsey_window_bound(2, 2, 3).unwrap(), 6);
}

#[test]
fn window_bound_suffices_on_random_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = ramsey_window_bound(2, 2, 3).unwrap();
    for _ in 0..500 {
        let c = Coloring::from_fn(2, Colors::Finite(2), w, |_| rng.gen_range(0..2)).unwrap();
        assert!(solve_homogeneous(&c, 3).is_ok());
    }
}

#[test]
fn product_homogeneity_transports_to_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=3usize {
        for _ in 0..4 {
            let cs: Vec<Coloring> = (0..m)
                .map(|_| Coloring::from_fn(2, Colors::Finite(2), 12, |_| rng.gen_range(0..2)).unwrap())
                .collect();
            let p = build_product_coloring(&cs).unwrap();
            for size in 2..=5 {
                for hs in all_homogeneous(&p, size, 1 << 20).unwrap() {
                    let digits = product_digits(&cs, hs.color);
                    for (c, d) in cs.iter().zip(digits) {
                        assert!(check_homogeneous(c, &HomSet::new(hs.elements.clone(), d)).unwrap());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_returns_first_oracle_answer(seed in any::<u64>(), n in 1usize..=3, k in 1u32..=3, size in 3usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Coloring::from_fn(n, Colors::Finite(k), 9, |_| rng.gen_range(0..k)).unwrap();
        let naive: Vec<HomSet> = Subsets::new(9, size)
            .filter_map(|s| homogeneous_color(&c, &s).map(|col| HomSet::new(s, col)))
            .collect();
        let all = all_homogeneous(&c, size, 1 << 20).unwrap();
        prop_assert_eq!(&all, &naive);
        match solve_homogeneous(&c, size) {
            Ok(m) => {
                prop_assert!(check_homogeneous(&c, &m).unwrap());
                prop_assert_eq!(Some(&m), naive.first());
                prop_assert_eq!(solve_homogeneous_parallel(&c, size).unwrap(), m);
            }
            Err(RamseyError::NoneExists { .. }) => prop_assert!(naive.is_empty()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
