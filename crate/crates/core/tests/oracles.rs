//! Independent recomputations checked against the library.

use num_rational::BigRational;
use num_traits::{One, Zero};
use pfhodge::arith::{q, qi};
use pfhodge::datasets::builtin_families;
use pfhodge::enumerate::{
    enumerate_cy_infinity_profiles, pipeline_top, standard_cover, CyFamily, SearchConfig,
};
use pfhodge::ode::{riemann_scheme_uncoalesced, RiemannScheme};
use pfhodge::{CoverSpec, JordanType};

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn minus_identity(t: &[[i64; 4]; 4]) -> Vec<Vec<BigRational>> {
    (0..4)
        .map(|i| (0..4).map(|j| qi(t[i][j] - (i == j) as i64)).collect())
        .collect()
}

#[test]
fn fixed_space_defect_matches_matrix_rank() {
    let t0 = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]];
    let t1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]];
    let minus_id = [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]];
    assert_eq!(rank(minus_identity(&t0)), 3);
    assert_eq!(JordanType::unipotent_block(4).fixed_space_defect(), 3);
    assert_eq!(rank(minus_identity(&t1)), 1);
    assert_eq!(
        JordanType::new([(qi(0), 2), (qi(0), 1), (qi(0), 1)]).fixed_space_defect(),
        1
    );
    assert_eq!(rank(minus_identity(&minus_id)), 4);
    assert_eq!(JordanType::diagonal(vec![q(1, 2); 4]).fixed_space_defect(), 4);
}

/// Sum of all exponents of a Fuchsian operator of order n with m singular
/// points (counted with ∞) is `n(n−1)(m−2)/2`.
fn fuchs_holds(s: &RiemannScheme) -> bool {
    let n = s.order as i64;
    let m: i64 = s.rows.iter().map(|r| r.orbit_size as i64).sum();
    let total = s.rows.iter().fold(BigRational::zero(), |acc, r| {
        let row: BigRational = r.exponents.iter().cloned().sum();
        acc + row * qi(r.orbit_size as i64)
    });
    total == BigRational::new((n * (n - 1) * (m - 2)).into(), 2.into())
}

#[test]
fn fuchs_relation_on_builtin_operators_and_pullbacks() {
    for f in builtin_families() {
        let op = f.parse().unwrap();
        assert!(fuchs_holds(&riemann_scheme_uncoalesced(&op).unwrap()), "{}", f.id);
        for k in [2usize, 3] {
            let s = riemann_scheme_uncoalesced(&op.pullback_monomial(k)).unwrap();
            assert!(fuchs_holds(&s), "{} k={k}", f.id);
            let r = riemann_scheme_uncoalesced(&op.pullback_ramified_at(&qi(2), k)).unwrap();
            assert!(fuchs_holds(&r), "{} ramified k={k}", f.id);
        }
    }
}

fn partitions(d: u32, max: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for y in 1..=d.min(max) {
        for mut rest in partitions(d - y, y) {
            rest.push(y);
            out.push(rest);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_pipeline() {
    for fam in [CyFamily::Quintic, CyFamily::Quartic] {
        let listed = enumerate_cy_infinity_profiles(&SearchConfig::new(fam))
            .unwrap()
            .partitions;
        for d in 1..=12 {
            for ys in partitions(d, d) {
                let top = pipeline_top(fam, &standard_cover(fam, &ys).unwrap()).unwrap();
                assert_eq!(top == 1, listed.contains(&ys), "{fam:?} {ys:?}: h = {top}");
            }
        }
    }
}

#[test]
fn jordan_power_agrees_with_matrix_power_on_rank() {
    // T_∞ of the second family to the fifth power is −Id: no fixed vectors
    let t = JordanType::diagonal([q(1, 10), q(3, 10), q(7, 10), q(9, 10)]).power(5);
    assert_eq!(t.fixed_space_defect(), 4);
    assert!(t.blocks().iter().all(|b| b.alpha == q(1, 2)));
    assert!(JordanType::unipotent_block(4).power(7).fixed_space_defect() == 3);
    let one: BigRational = One::one();
    assert_eq!(JordanType::diagonal([one]).power(3), JordanType::diagonal([qi(0)]));
}

#[test]
fn monomial_cover_riemann_hurwitz() {
    for k in 1..=12 {
        assert!(pfhodge::validate_cover(&CoverSpec::monomial(k)).is_ok());
    }
}
