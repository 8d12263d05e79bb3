use std::collections::BTreeMap;

use pfhodge::arith::{q, qi};
use pfhodge::cover::validate_cover_for;
use pfhodge::datasets::{builtin_families, compute_table3_cell, family};
use pfhodge::enumerate::{
    enumerate_cy_infinity_profiles, pipeline_top, standard_cover, verify_independence, CyFamily,
    SearchConfig,
};
use pfhodge::hodge::{analyze, cokernel_lengths, hodge_numbers, solve_degrees};
use pfhodge::json::{profile_to_json, report_to_json, scheme_to_json, to_canonical_string};
use pfhodge::local::{count_strictly_quasi_unipotent, counts_k3, K3Class};
use pfhodge::ode::riemann_scheme;
use pfhodge::{pullback_profile, CoverSpec, Error, JordanType, Kind, PointId};

#[test]
fn quintic_scheme() {
    let s = riemann_scheme(&family("quintic").unwrap().parse().unwrap()).unwrap();
    let pts: Vec<String> = s.rows.iter().map(|r| r.point.to_string()).collect();
    assert_eq!(pts, ["0", "1", "inf"]);
    assert_eq!(s.rows[2].exponents, vec![q(1, 5), q(2, 5), q(3, 5), q(4, 5)]);
}

#[test]
fn case2_scheme() {
    let s = riemann_scheme(&family("dm2").unwrap().parse().unwrap()).unwrap();
    assert_eq!(s.rows[0].exponents, vec![qi(0); 4]);
    assert_eq!(s.rows[1].exponents, vec![qi(0), qi(1), qi(1), qi(2)]);
    assert_eq!(s.rows[2].exponents, vec![q(1, 10), q(3, 10), q(7, 10), q(9, 10)]);
}

#[test]
fn unramified_hypergeometric_rows_vanish() {
    for row in 1..=14 {
        let r = compute_table3_cell(row, 1).unwrap();
        assert_eq!(r.degrees.degrees[..2], [0, 0], "row {row}");
        assert_eq!(r.hodge.numbers, vec![0; 5], "row {row}");
    }
}

#[test]
fn case2_total_rank() {
    let p = pullback_profile(
        &family("dm2").unwrap().profile().unwrap(),
        &CoverSpec::monomial(5),
    )
    .unwrap();
    let r = analyze(&p).unwrap();
    assert_eq!(r.hodge.total_rank, 4);
    assert_eq!(r.hodge.numbers.iter().sum::<i64>(), 4);
    assert_eq!(cokernel_lengths(&p, 1).unwrap().total, 2);
}

#[test]
fn quartic_counts_identity_cover() {
    let v = family("quartic").unwrap().profile().unwrap();
    let c = counts_k3(&v).unwrap();
    assert_eq!((c.a_half, c.a_f), (2, 1));
    assert_eq!(hodge_numbers(&v).unwrap().numbers[3], 0);
}

#[test]
fn quintic_l0_counts_strictly_quasi_unipotent_points() {
    let v = family("quintic").unwrap().profile().unwrap();
    let p = pullback_profile(&v, &CoverSpec::monomial(7)).unwrap();
    assert_eq!(count_strictly_quasi_unipotent(&p), 1);
    let p = pullback_profile(&v, &CoverSpec::monomial(5)).unwrap();
    assert_eq!(count_strictly_quasi_unipotent(&p), 0);
}

#[test]
fn hesse_family_degree_sum_counts_non_unipotent_fibres() {
    let v = family("hesse").unwrap().profile().unwrap();
    assert_eq!(count_strictly_quasi_unipotent(&v), 1);
    let d = solve_degrees(&v).unwrap();
    assert_eq!(-d.degrees[0] - d.degrees[1], 1);
}

#[test]
fn cover_rejects_bad_riemann_hurwitz() {
    let v = family("dm2").unwrap().profile().unwrap();
    let mut branch = BTreeMap::new();
    branch.insert(PointId::Finite(qi(0)), vec![2]);
    let c = CoverSpec {
        degree: 2,
        branch,
        free_ramification: vec![],
    };
    assert!(matches!(
        pullback_profile(&v, &c),
        Err(Error::RiemannHurwitz(1))
    ));
    assert!(validate_cover_for(&CoverSpec::monomial(3), Some(&v)).is_ok());
}

#[test]
fn free_ramification_defect() {
    let v = family("legendre").unwrap().profile().unwrap();
    let mut branch = BTreeMap::new();
    branch.insert(PointId::Infinity, vec![3]);
    let c = CoverSpec::completed(3, branch).unwrap();
    assert_eq!(c.free_ramification, vec![2, 2]);
    let p = pullback_profile(&v, &c).unwrap();
    let free = p.point(&PointId::Free { e: 2 }).unwrap();
    assert_eq!(free.kind, Kind::Apparent);
    assert_eq!(free.orbit_size, 2);
    assert_eq!(free.exponents, vec![qi(0), qi(2)]);
    let coker = cokernel_lengths(&p, 0).unwrap();
    let at_free = coker
        .per_point
        .iter()
        .find(|(pt, _)| pt == &PointId::Free { e: 2 })
        .unwrap()
        .1;
    assert_eq!(at_free, 1);
}

#[test]
fn quintic_enumeration_stable_beyond_caps() {
    let small = enumerate_cy_infinity_profiles(&SearchConfig {
        max_part: 20,
        max_parts: 5,
        ..SearchConfig::new(CyFamily::Quintic)
    })
    .unwrap();
    let large = enumerate_cy_infinity_profiles(&SearchConfig::new(CyFamily::Quintic)).unwrap();
    assert!(small.certified);
    assert_eq!(small.partitions, large.partitions);
    assert_eq!(large.partitions.len(), 20);
}

#[test]
fn enumerated_profiles_are_calabi_yau_through_the_pipeline() {
    for fam in [CyFamily::Quintic, CyFamily::Quartic] {
        let e = enumerate_cy_infinity_profiles(&SearchConfig::new(fam)).unwrap();
        for ys in &e.partitions {
            let c = standard_cover(fam, ys).unwrap();
            assert_eq!(pipeline_top(fam, &c).unwrap(), 1, "{fam:?} {ys:?}");
        }
    }
}

#[test]
fn top_hodge_number_depends_only_on_infinity() {
    let fam = CyFamily::Quintic;
    let mut a = BTreeMap::new();
    a.insert(PointId::Finite(qi(0)), vec![5]);
    a.insert(PointId::Infinity, vec![5]);
    let mut b = BTreeMap::new();
    b.insert(PointId::Finite(qi(0)), vec![1, 4]);
    b.insert(PointId::Infinity, vec![5]);
    let ca = CoverSpec::completed(5, a).unwrap();
    let cb = CoverSpec::completed(5, b).unwrap();
    assert_eq!(cb.free_ramification, vec![2]);
    assert_eq!(pipeline_top(fam, &ca).unwrap(), pipeline_top(fam, &cb).unwrap());

    let report = verify_independence(fam, 100, 17).unwrap();
    assert_eq!(report.samples, 100);
    assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
}

#[test]
fn quartic_independence() {
    let report = verify_independence(CyFamily::Quartic, 100, 23).unwrap();
    assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
}

#[test]
fn contribution_equality_for_identity_monodromy() {
    let v = family("quartic").unwrap().profile().unwrap();
    for d in [2u32, 4, 8] {
        let p = pullback_profile(&v, &CoverSpec::monomial(d)).unwrap();
        let retag = p.with_apparent_as_actual(|_| true);
        assert_eq!(solve_degrees(&p).unwrap(), solve_degrees(&retag).unwrap());
        assert_eq!(hodge_numbers(&p).unwrap(), hodge_numbers(&retag).unwrap());
    }
}

#[test]
fn quartic_pullback_classes() {
    let v = family("quartic").unwrap().profile().unwrap();
    let p = pullback_profile(&v, &CoverSpec::monomial(2)).unwrap();
    let inf = p.point(&PointId::over(&PointId::Infinity, 2)).unwrap();
    assert_eq!(inf.monodromy.as_ref().unwrap(), &K3Class::Ti2.jordan());
    let over_minus_one = p.point(&PointId::over(&PointId::Finite(qi(-1)), 1)).unwrap();
    assert_eq!(over_minus_one.orbit_size, 2);
    assert_eq!(over_minus_one.monodromy.as_ref().unwrap(), &K3Class::Tnod.jordan());
    let p4 = pullback_profile(&v, &CoverSpec::monomial(4)).unwrap();
    let inf4 = p4.point(&PointId::over(&PointId::Infinity, 4)).unwrap();
    assert_eq!(inf4.kind, Kind::Apparent);
}

#[test]
fn json_output_is_deterministic() {
    for f in builtin_families() {
        let v = f.profile().unwrap();
        let a = to_canonical_string(&profile_to_json(&v));
        let b = to_canonical_string(&profile_to_json(&f.profile().unwrap()));
        assert_eq!(a, b);
        let s = to_canonical_string(&scheme_to_json(&f.scheme().unwrap()));
        assert!(s.contains("\"exponents\""));
    }
    let r = compute_table3_cell(9, 12).unwrap();
    let j = report_to_json(&r);
    assert_eq!(j["degrees"][0], 1);
    assert_eq!(j["degrees"][1], 5);
}

#[test]
fn jordan_square_of_nodal_type_is_identity() {
    let t = JordanType::diagonal([q(1, 2), qi(0), qi(0)]);
    assert!(t.power(2).is_identity());
}

#[test]
fn second_cover_must_name_points_of_the_pulled_back_profile() {
    let v = family("dm1").unwrap().profile().unwrap();
    let once = pullback_profile(&v, &CoverSpec::monomial(2)).unwrap();
    assert!(matches!(
        pullback_profile(&once, &CoverSpec::monomial(2)),
        Err(Error::InvalidProfile(_))
    ));
}
