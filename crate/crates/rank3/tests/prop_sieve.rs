use proptest::prelude::*;
use rank3::characters::{character_vector, character_vector_frobenius, CharacterSpec};
use rank3::monodromy::{imprimitive_triples, primitive_triples, DenominatorClass};
use rank3::rat::{q, qi, vp, Q};
use rank3::sieve::{candidates, in_box, positivity_region, scan_candidate, Region, SieveStatus};
use std::sync::OnceLock;

const ORDER: usize = 40;

fn pool() -> &'static Vec<(Q, Q)> {
    static P: OnceLock<Vec<(Q, Q)>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v = candidates(DenominatorClass::Den5).0;
        v.extend(candidates(DenominatorClass::Den7).0);
        v
    })
}

fn grid_point() -> impl Strategy<Value = (Q, Q)> {
    (-400i64..400, -400i64..400).prop_map(|(a, b)| (q(a, 20), q(b, 20)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn regions_are_exclusive_off_the_box((x, y) in grid_point()) {
        prop_assume!(!in_box(&x, &y));
        let hy = y >= qi(-2) && y <= qi(0);
        let hx = x >= qi(-2) && x <= qi(0);
        let dg = rank3::rat::abs(&(&x - &y)) <= qi(1);
        let held = [hy, hx, dg].iter().filter(|&&b| b).count();
        prop_assert!(held <= 1);
        let want = if hy { Region::HorizontalY } else if hx { Region::HorizontalX } else if dg { Region::Diagonal } else { Region::Excluded };
        prop_assert_eq!(positivity_region(&x, &y), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Verdicts are confirmed on the hypergeometric side, which the scan does not use.
    #[test]
    fn verdicts_are_reproducible(i in 0usize..10_000) {
        let (h1, h2) = pool()[i % pool().len()].clone();
        let spec = CharacterSpec::new(h1, h2).unwrap();
        let v = scan_candidate(&spec, ORDER).unwrap();
        let cv = character_vector(&spec, ORDER).unwrap();
        match v.status {
            SieveStatus::Survives => {
                prop_assert!(cv.f0.coeffs().iter().all(|c| c.is_integer() && *c >= qi(0)));
                prop_assert!(cv.f1.coeffs().iter().chain(cv.f2.coeffs()).all(|c| *c >= qi(0)));
            }
            SieveStatus::FailsIntegrality { prime, index } => {
                prop_assert!(vp(&cv.f0.coeffs()[index], prime) < 0);
                prop_assert!(cv.f0.coeffs()[..index].iter().all(|c| c.is_integer()));
            }
            SieveStatus::FailsPositivity { coordinate, index } => {
                prop_assert!(cv.component(coordinate).coeffs()[index] < qi(0));
            }
            _ => {}
        }
    }
}

#[test]
fn scan_matches_rational_recursion_on_one_candidate() {
    let spec = CharacterSpec::new(q(-1, 5), q(-2, 5)).unwrap();
    let cv = character_vector_frobenius(&spec, 200).unwrap();
    let integral = cv.f0.coeffs().iter().all(|c| c.is_integer());
    assert_eq!(scan_candidate(&spec, 200).unwrap().survives(), integral && cv.f1.coeffs().iter().all(|c| *c >= qi(0)));
}

#[test]
fn triples_are_distinct_with_half_sum() {
    for t in imprimitive_triples().into_iter().chain(primitive_triples()) {
        assert!(t.is_distinct(), "{:?}", t.tag);
        assert_eq!(t.sum_mod_one(), q(1, 2), "{:?}", t.tag);
    }
}

/// `r0 = -c/24 (mod 1)` is solvable: shifting `h1` by an integer moves `-c/24` by `1/3`,
/// so the vacuum phase must agree with `-c/24` modulo `1/3`.
#[test]
fn exponents_to_weights() {
    for t in imprimitive_triples().into_iter().chain(primitive_triples()) {
        for (i, (a, b)) in t.residue_pairs().into_iter().enumerate() {
            let c = qi(8) * (&a + &b - q(1, 2));
            let gap = &t.r[i] + &c / qi(24);
            assert!((qi(3) * gap).is_integer(), "{:?} pair {i}", t.tag);
        }
    }
}
