use proptest::prelude::*;
use rank3::rat::{q, qi, Q};
use rank3::surface::{am_count, eval_eq1, fiber_enumerate, m_of, quotient_v, weierstrass_verify};
use std::collections::BTreeSet;

fn fiber_m() -> impl Strategy<Value = Q> {
    prop_oneof![(0i64..2000).prop_map(qi), (-300i64..3000, 1i64..6).prop_map(|(a, b)| q(a, b))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fibers_are_closed_under_swap(m in fiber_m(), n in prop::sample::select(vec![1u64, 5, 7, 16])) {
        let pts = fiber_enumerate(&m, n);
        let set: BTreeSet<(Q, Q)> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        for p in &pts {
            prop_assert!(set.contains(&(p.y.clone(), p.x.clone())));
            prop_assert_eq!(eval_eq1(&m, &p.x, &p.y), qi(0));
        }
    }

    #[test]
    fn quotient_round_trip(m in fiber_m()) {
        for p in fiber_enumerate(&m, 16) {
            let u = &p.x + &p.y;
            if let Ok(v) = quotient_v(&u, &m) {
                prop_assert_eq!(v, &p.x * &p.y);
            }
        }
    }

    #[test]
    fn m_of_lands_on_the_surface(a in -80i64..80, b in -80i64..80, d in prop::sample::select(vec![5i64, 7, 16])) {
        let (x, y) = (q(a, d), q(b, d));
        if let Ok(m) = m_of(&x, &y) {
            prop_assert_eq!(eval_eq1(&m, &x, &y), qi(0));
        }
    }

    #[test]
    fn weierstrass_image_on_curve(m in (1i64..1500).prop_filter("line fibers", |m| ![248, 496].contains(m))) {
        let m = qi(m);
        for p in fiber_enumerate(&m, 16) {
            prop_assert!(weierstrass_verify(&m, &p));
        }
    }
}

/// The standard sections give eight points with denominator dividing 16 on every integer fiber.
#[test]
fn sixteen_fibers_have_eight_points() {
    for m in (0..=2000).step_by(37).chain([0, 1, 2, 247, 248, 249, 496, 2000]) {
        let c = am_count(&qi(m), 16);
        assert!(c.count >= 8, "m = {m}: {}", c.count);
        assert!(c.within_bound);
    }
}
