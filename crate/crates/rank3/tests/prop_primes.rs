use proptest::prelude::*;
use rank3::primes::{first_failing_pair, verify_windows, window_has_prime, WindowConfig};
use rank3::rat::{q, Q};

#[test]
fn bertrand_up_to_a_million() {
    let cfg = WindowConfig { modulus: 1, ratio: q(2, 1), x_min: 2, x_max: 1_000_000, c_pi: None, x_pi: None };
    let r = verify_windows(&cfg).unwrap();
    assert!(r.pass, "{:?}", r.counterexample);
}

fn synthetic() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..40, 5..60).prop_map(|gaps| {
        gaps.iter()
            .scan(7u64, |x, g| {
                *x += g;
                Some(*x)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// A failing consecutive pair exists exactly when some window just above a listed element is empty.
    #[test]
    fn pair_criterion_matches_windows(list in synthetic(), modulus in prop::sample::select(vec![1u64, 2, 6, 10]), num in 11i64..40, x_min in 8u64..200) {
        let ratio = q(num, 10);
        let pair = first_failing_pair(&list, modulus, &ratio, x_min);
        let eps = q(1, 1000 * 10);
        let mut empty = None;
        for a in (0..modulus).filter(|a| num_integer::gcd(*a, modulus) == 1) {
            let class: Vec<u64> = list.iter().copied().filter(|p| p % modulus == a).collect();
            for w in class.windows(2) {
                if w[0] >= x_min {
                    let x = Q::from_integer(w[0].into()) + &eps;
                    if !window_has_prime(&list, modulus, a, &x, &ratio) {
                        empty = empty.min(Some(w[1])).or(Some(w[1]));
                    }
                }
            }
        }
        prop_assert_eq!(pair.is_some(), empty.is_some());
        if let Some((a, q0, q1)) = pair {
            let x = Q::from_integer(q0.into()) + eps;
            prop_assert!(!window_has_prime(&list, modulus, a, &x, &ratio));
            prop_assert!(q1 > q0);
        }
    }
}
