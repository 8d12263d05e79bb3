mod common;

use pfhodge::arith::RatFunc;
use pfhodge::datasets::{builtin_families, family};
use pfhodge::enumerate::CyFamily;
use pfhodge::hodge::{elliptic_degree_formula, k3_degree_formula};
use pfhodge::ode::riemann_scheme_uncoalesced;
use pfhodge::{analyze, pullback_profile, solve_degrees, CoverSpec, PointId, VHSProfile};
use proptest::prelude::*;

fn base_profiles() -> Vec<VHSProfile> {
    builtin_families()
        .iter()
        .map(|f| f.profile().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integer_shift_at_a_point_is_invisible(fam in 0usize..18, d in 1u32..7, idx in 0usize..8, k in -3i64..4) {
        let v = pullback_profile(&base_profiles()[fam], &CoverSpec::monomial(d)).unwrap();
        let Ok(r) = analyze(&v) else { return Ok(()) };
        let s = analyze(&common::shift_point(&v, idx % v.points.len(), k)).unwrap();
        prop_assert_eq!(s.degrees, r.degrees);
        prop_assert_eq!(s.hodge, r.hodge);
    }

    #[test]
    fn operator_twist_by_monomial_keeps_hodge_output(fam in 0usize..18, m in -2i64..3) {
        let f = &builtin_families()[fam];
        let op = f.parse().unwrap();
        let twisted = op.twist(&RatFunc::t().pow(m));
        let s = riemann_scheme_uncoalesced(&twisted).unwrap().coalesced();
        let v = VHSProfile::from_scheme(&s, &f.annotation_map()).unwrap();
        let r0 = analyze(&f.profile().unwrap()).unwrap();
        let r1 = analyze(&v).unwrap();
        prop_assert_eq!(r0.degrees, r1.degrees);
        prop_assert_eq!(r0.hodge, r1.hodge);
    }

    #[test]
    fn retagging_apparent_points_is_invisible(fam in 0usize..18, d in 1u32..9) {
        let v = pullback_profile(&base_profiles()[fam], &CoverSpec::monomial(d)).unwrap();
        let Ok(r) = analyze(&v) else { return Ok(()) };
        let t = analyze(&v.with_apparent_as_actual(|_| true)).unwrap();
        prop_assert_eq!(t.degrees, r.degrees);
        prop_assert_eq!(t.hodge, r.hodge);
    }

    #[test]
    fn hodge_vector_is_palindromic_with_total_rank(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let v = pullback_profile(
            &family("quintic").unwrap().profile().unwrap(),
            &common::random_cover(&mut rng, CyFamily::Quintic, 16),
        )
        .unwrap();
        let r = analyze(&v).unwrap();
        prop_assert!(r.hodge.is_palindromic());
        prop_assert_eq!(r.hodge.numbers.iter().sum::<i64>(), r.hodge.total_rank);
    }

    #[test]
    fn monomial_pullbacks_compose(fam in 0usize..18, d1 in 1u32..5, d2 in 1u32..5) {
        let v = &base_profiles()[fam];
        let once = pullback_profile(v, &CoverSpec::monomial(d1 * d2)).unwrap();
        let first = pullback_profile(v, &CoverSpec::monomial(d1)).unwrap();
        let relabel = |p: PointId| if d1 == 1 { p.clone() } else { PointId::over(&p, d1) };
        let zero = PointId::Finite(pfhodge::arith::qi(0));
        let second = CoverSpec {
            degree: d2,
            branch: [(relabel(zero), vec![d2]), (relabel(PointId::Infinity), vec![d2])].into(),
            free_ramification: vec![],
        };
        let twice = pullback_profile(&first, &second).unwrap();
        prop_assert_eq!(once.rank(), twice.rank());
        match (analyze(&once), analyze(&twice)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.degrees, b.degrees);
                prop_assert_eq!(a.hodge, b.hodge);
            }
            (a, b) => prop_assert_eq!(a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn profile_scaling_matches_operator_pullback(fam in 0usize..18, k in 2u32..7) {
        let f = &builtin_families()[fam];
        let s = riemann_scheme_uncoalesced(&f.parse().unwrap().pullback_monomial(k as usize)).unwrap();
        let p = pullback_profile(&f.profile().unwrap(), &CoverSpec::monomial(k)).unwrap();
        for base in [PointId::Finite(pfhodge::arith::qi(0)), PointId::Infinity] {
            let from_op = &s.row(&base).unwrap().exponents;
            let from_profile = &p.point(&PointId::over(&base, k)).unwrap().exponents;
            prop_assert_eq!(from_op, from_profile);
        }
    }

    #[test]
    fn elliptic_closed_form_matches_engine(seed in any::<u64>()) {
        let v = common::random_elliptic_profile(&mut common::rng(seed));
        if let Ok(d) = solve_degrees(&v) {
            prop_assert_eq!(elliptic_degree_formula(&v).unwrap(), d.degrees[1]);
        }
    }

    #[test]
    fn k3_closed_form_matches_engine(seed in any::<u64>()) {
        let v = common::random_k3_profile(&mut common::rng(seed));
        if let Ok(d) = solve_degrees(&v) {
            prop_assert_eq!(k3_degree_formula(&v).unwrap(), d.degrees[2]);
        }
    }
}
