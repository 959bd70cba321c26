use proptest::prelude::*;
use rank3::lie::{
    dim_weight2, levi_count_oracle, levi_search, simple_types_up_to, theta_count, theta_count_halfform, Family,
    LeviConstraints, RankConstraint, RootSystem,
};
use std::collections::BTreeSet;

fn constraints() -> impl Strategy<Value = LeviConstraints> {
    let types = simple_types_up_to(300, 10);
    (
        prop::bool::ANY,
        1usize..=10,
        prop::bool::ANY,
        prop::collection::vec(prop::sample::select(types), 0..3),
    )
        .prop_map(|(exact, r, allow_abelian, forbid)| LeviConstraints {
            rank: Some(if exact { RankConstraint::Exactly(r) } else { RankConstraint::AtMost(r) }),
            allow_abelian,
            forbidden: forbid.into_iter().collect::<BTreeSet<_>>(),
            ..Default::default()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn levi_search_is_exhaustive(target in 1usize..=300, c in constraints()) {
        let found = levi_search(target, &c).unwrap();
        prop_assert_eq!(found.len() as u128, levi_count_oracle(target, &c));
        let distinct: BTreeSet<_> = found.iter().collect();
        prop_assert_eq!(distinct.len(), found.len());
        for d in &found {
            prop_assert_eq!(d.dim(), target);
            prop_assert!(c.allow_abelian || d.abelian == 0);
            prop_assert!(d.components.iter().all(|t| !c.forbidden.contains(t)));
        }
    }
}

#[test]
fn weight2_dimension_is_monotone_in_level() {
    for t in simple_types_up_to(usize::MAX, 10) {
        let dims: Vec<usize> = (1..=6).map(|k| dim_weight2(t, k).unwrap()).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{t}: {dims:?}");
    }
}

#[test]
fn root_systems_match_closed_forms() {
    for t in simple_types_up_to(usize::MAX, 10) {
        let rs = RootSystem::new(t);
        assert_eq!(rs.dim(), t.dim(), "{t}");
        assert_eq!(rs.positive.len(), (t.dim() - t.rank) / 2, "{t}");
        assert!(rs.theta_is_highest(), "{t}");
        let direct = rs.theta_count();
        assert_eq!(direct, theta_count_halfform(rs.dim(), rs.centralizer_dim()), "{t}");
        assert_eq!(theta_count(t).unwrap(), direct, "{t}");
    }
}

#[test]
fn b_minus_c_counts() {
    for l in 2..=10 {
        let b = rank3::lie::theta_count_unchecked(Family::B, l).unwrap();
        let c = rank3::lie::theta_count_unchecked(Family::C, l).unwrap();
        assert_eq!(b as i64 - c as i64, 2 * l as i64 - 4, "rank {l}");
    }
}
