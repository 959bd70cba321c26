use proptest::prelude::*;
use rank3::characters::CharacterSpec;
use rank3::golden;
use rank3::rat::{q, Q};
use rank3::smatrix::{extract_s, extract_s_with, symmetrize, symmetrizing_scalars, Evaluator, Symmetrized, Tau};

const PREC: u32 = 256;
const TERMS: usize = 120;

fn specs() -> Vec<CharacterSpec> {
    let mut v: Vec<CharacterSpec> = golden::useries().into_iter().map(|u| CharacterSpec::new(u.h1, u.h2).unwrap()).collect();
    v.extend(golden::den5_rows().into_iter().take(6).map(|r| CharacterSpec::new(r.h1, r.h2).unwrap()));
    v.extend(golden::den7_rows().into_iter().take(4).map(|r| CharacterSpec::new(r.h1, r.h2).unwrap()));
    v
}

fn spec() -> impl Strategy<Value = CharacterSpec> {
    prop::sample::select(specs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `F(tau + 1) = diag(e^(2 pi i r_j)) F(tau)`.
    #[test]
    fn t_phases_match_shift(s in spec(), a in -20i64..20, b in 60i64..200) {
        let ev = Evaluator::new(&s, PREC, TERMS).unwrap();
        let tau = Tau::new(q(a, 40), q(b, 100));
        let shifted = Tau::new(q(a, 40) + Q::from_integer(1.into()), q(b, 100));
        let f = ev.eval(&tau.to_ball(PREC)).unwrap();
        let g = ev.eval(&shifted.to_ball(PREC)).unwrap();
        let t = ev.t_phases();
        for j in 0..3 {
            let d = g[j].sub(&t[j].mul(&f[j]));
            prop_assert!(d.mag() < 1e-30 * (1.0 + f[j].mag()), "coordinate {} off by {}", j, d.mag());
        }
    }

    /// Resampling at other points reproduces the same matrix.
    #[test]
    fn extraction_is_sample_independent(s in spec(), round in 1usize..4) {
        let ev = Evaluator::new(&s, PREC, TERMS).unwrap();
        let a = extract_s_with(&ev, 0).unwrap();
        let b = extract_s_with(&ev, round).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = a.entry(i, j).sub(b.entry(i, j)).mag();
                prop_assert!(d < 1e-20, "entry ({}, {}) differs by {}", i, j, d);
            }
        }
    }

    /// After conjugating by the recovered scalars the matrix is symmetric: both scalars become 1.
    #[test]
    fn symmetrize_is_scale_consistent(s in spec()) {
        let sm = extract_s(&s, PREC, TERMS).unwrap();
        prop_assert!(sm.square_defect() < 1e-20);
        for j in 0..3 {
            let e = sm.entry(0, j);
            prop_assert!(!(e.re.contains_zero() && e.im.contains_zero()));
        }
        if let Ok([a1, a2]) = symmetrizing_scalars(&sm) {
            let sym = sm.conjugate_diagonal(&a1, &a2).unwrap();
            match symmetrize(&sym) {
                Symmetrized::Integers { a1, a2, .. } => prop_assert_eq!((a1.as_str(), a2.as_str()), ("1", "1")),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
