//! Base change of a profile along a cover of the line described by its
//! ramification profiles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::local::{Kind, LocalData, VHSProfile};
use crate::ode::PointId;

pub use crate::local::jordan_power;

/// A cover `P¹ → P¹` of degree `degree`. Points missing from `branch` are
/// unramified; `free_ramification` lists the indices of ramification
/// points lying over points where the profile is nonsingular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverSpec {
    pub degree: u32,
    pub branch: BTreeMap<PointId, Vec<u32>>,
    pub free_ramification: Vec<u32>,
}

impl CoverSpec {
    pub fn identity() -> Self {
        CoverSpec {
            degree: 1,
            branch: BTreeMap::new(),
            free_ramification: Vec::new(),
        }
    }

    /// `t = s^k`, totally ramified over 0 and ∞.
    pub fn monomial(k: u32) -> Self {
        let mut branch = BTreeMap::new();
        if k > 1 {
            branch.insert(PointId::Finite(BigRational::from_integer(BigInt::from(0))), vec![k]);
            branch.insert(PointId::Infinity, vec![k]);
        }
        CoverSpec {
            degree: k,
            branch,
            free_ramification: Vec::new(),
        }
    }

    /// Fills the Riemann–Hurwitz deficit with simple free ramification.
    pub fn completed(degree: u32, branch: BTreeMap<PointId, Vec<u32>>) -> Result<Self> {
        let mut c = CoverSpec {
            degree,
            branch,
            free_ramification: Vec::new(),
        };
        let delta = rh_defect(&c, None);
        if delta < 0 {
            return Err(Error::RiemannHurwitz(delta));
        }
        c.free_ramification = vec![2; delta as usize];
        Ok(c)
    }

    pub fn partition(&self, p: &PointId) -> Vec<u32> {
        self.branch
            .get(p)
            .cloned()
            .unwrap_or_else(|| vec![1; self.degree as usize])
    }
}

fn orbit_of(v: Option<&VHSProfile>, p: &PointId) -> usize {
    v.and_then(|v| v.point(p))
        .map(|d| d.orbit_size)
        .unwrap_or_else(|| p.inherent_orbit())
}

/// `(2d − 2) − Σ orbit·Σ(y − 1) − Σ(e − 1)`.
fn rh_defect(c: &CoverSpec, v: Option<&VHSProfile>) -> i64 {
    let named: i64 = c
        .branch
        .iter()
        .map(|(p, ys)| {
            orbit_of(v, p) as i64 * ys.iter().map(|&y| y as i64 - 1).sum::<i64>()
        })
        .sum();
    let free: i64 = c.free_ramification.iter().map(|&e| e as i64 - 1).sum();
    2 * c.degree as i64 - 2 - named - free
}

fn check_partitions(c: &CoverSpec) -> Result<()> {
    if c.degree == 0 {
        return Err(Error::InvalidProfile("cover degree must be positive".into()));
    }
    for (p, ys) in &c.branch {
        let sum: i64 = ys.iter().map(|&y| y as i64).sum();
        if sum != c.degree as i64 || ys.contains(&0) {
            return Err(Error::PartitionSum {
                point: p.to_string(),
                sum,
                degree: c.degree as i64,
            });
        }
    }
    if c.free_ramification.contains(&0) {
        return Err(Error::InvalidProfile("free ramification index 0".into()));
    }
    Ok(())
}

/// Partition sums and genus-0 Riemann–Hurwitz, with orbits read from the
/// labels alone.
pub fn validate_cover(c: &CoverSpec) -> Result<()> {
    validate_cover_for(c, None)
}

/// As [`validate_cover`], but orbit sizes of points of `v` come from `v`.
pub fn validate_cover_for(c: &CoverSpec, v: Option<&VHSProfile>) -> Result<()> {
    check_partitions(c)?;
    match rh_defect(c, v) {
        0 => Ok(()),
        delta => Err(Error::RiemannHurwitz(delta)),
    }
}

fn scaled_exponents(d: &LocalData, e: u32) -> Vec<BigRational> {
    let k = BigRational::from_integer(BigInt::from(e));
    d.exponents.iter().map(|x| x * &k).collect()
}

fn trivial_exponents(rank: usize, e: u32) -> Vec<BigRational> {
    (0..rank)
        .map(|i| BigRational::from_integer(BigInt::from(i as u64 * e as u64)))
        .collect()
}

/// Pulls `v` back along `c`. Every part `e` over a profile point yields a
/// point `over(p, e)` with exponents `e·μ` and monodromy `T^e`; ramification
/// over nonsingular points yields apparent points with exponents
/// `(0, e, …, ℓe)`.
pub fn pullback_profile(v: &VHSProfile, c: &CoverSpec) -> Result<VHSProfile> {
    validate_cover_for(c, Some(v))?;
    if c.degree == 1 {
        return Ok(v.clone());
    }
    let rank = v.rank();
    let mut out: BTreeMap<PointId, LocalData> = BTreeMap::new();
    let mut push = |d: LocalData| -> Result<()> {
        match out.get_mut(&d.point) {
            Some(x) if x.exponents == d.exponents && x.kind == d.kind && x.monodromy == d.monodromy => {
                x.orbit_size += d.orbit_size;
            }
            Some(_) => {
                return Err(Error::InvalidProfile(format!(
                    "distinct points share the label {}; branch keys must name points of the profile",
                    d.point
                )))
            }
            None => {
                out.insert(d.point.clone(), d);
            }
        }
        Ok(())
    };

    for p in &v.points {
        for e in c.partition(&p.point) {
            if p.kind == Kind::Nonsingular && e == 1 {
                continue;
            }
            let monodromy = p.monodromy.as_ref().map(|j| j.power(e));
            let identity = monodromy.as_ref().is_none_or(|j| j.is_identity());
            let kind = if identity || p.kind != Kind::Actual {
                Kind::Apparent
            } else {
                Kind::Actual
            };
            push(LocalData::new(
                PointId::over(&p.point, e),
                p.orbit_size,
                scaled_exponents(p, e),
                kind,
                if kind == Kind::Actual { monodromy } else { None },
            )?)?;
        }
    }
    for (b, ys) in &c.branch {
        if v.point(b).is_some() {
            continue;
        }
        for &e in ys.iter().filter(|&&e| e > 1) {
            push(LocalData::new(
                PointId::over(b, e),
                b.inherent_orbit(),
                trivial_exponents(rank, e),
                Kind::Apparent,
                None,
            )?)?;
        }
    }
    for &e in c.free_ramification.iter().filter(|&&e| e > 1) {
        push(LocalData::new(
            PointId::Free { e },
            1,
            trivial_exponents(rank, e),
            Kind::Apparent,
            None,
        )?)?;
    }
    VHSProfile::new(v.weight, out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};
    use crate::local::JordanType;

    fn branch(items: &[(PointId, Vec<u32>)]) -> BTreeMap<PointId, Vec<u32>> {
        items.iter().cloned().collect()
    }

    fn case2() -> VHSProfile {
        let t_inf = JordanType::diagonal([q(1, 10), q(3, 10), q(7, 10), q(9, 10)]);
        VHSProfile::new(
            3,
            vec![
                LocalData::new(
                    PointId::Finite(qi(0)),
                    1,
                    vec![qi(0); 4],
                    Kind::Actual,
                    Some(JordanType::unipotent_block(4)),
                )
                .unwrap(),
                LocalData::new(
                    PointId::Finite(qi(1)),
                    1,
                    vec![qi(0), qi(1), qi(1), qi(2)],
                    Kind::Actual,
                    Some(JordanType::new([(qi(0), 2), (qi(0), 1), (qi(0), 1)])),
                )
                .unwrap(),
                LocalData::new(
                    PointId::Infinity,
                    1,
                    vec![q(1, 10), q(3, 10), q(7, 10), q(9, 10)],
                    Kind::Actual,
                    Some(t_inf),
                )
                .unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let five = CoverSpec {
            degree: 5,
            branch: branch(&[
                (PointId::Finite(qi(0)), vec![5]),
                (PointId::Infinity, vec![5]),
                (PointId::Finite(qi(1)), vec![1; 5]),
            ]),
            free_ramification: vec![],
        };
        assert!(validate_cover(&five).is_ok());
        assert!(validate_cover(&CoverSpec::identity()).is_ok());
        let bad = CoverSpec {
            degree: 2,
            branch: branch(&[(PointId::Finite(qi(0)), vec![2])]),
            free_ramification: vec![],
        };
        assert!(matches!(validate_cover(&bad), Err(Error::RiemannHurwitz(1))));
        let sum = CoverSpec {
            degree: 3,
            branch: branch(&[(PointId::Infinity, vec![2, 2])]),
            free_ramification: vec![],
        };
        assert!(matches!(validate_cover(&sum), Err(Error::PartitionSum { .. })));
    }

    #[test]
    fn case2_degree_five() {
        let p = pullback_profile(&case2(), &CoverSpec::monomial(5)).unwrap();
        let inf = p.point(&PointId::over(&PointId::Infinity, 5)).unwrap();
        assert_eq!(inf.exponents, vec![q(1, 2), q(3, 2), q(7, 2), q(9, 2)]);
        assert_eq!(
            inf.monodromy.as_ref().unwrap(),
            &JordanType::diagonal(vec![q(1, 2); 4])
        );
        let one = p.point(&PointId::over(&PointId::Finite(qi(1)), 1)).unwrap();
        assert_eq!(one.orbit_size, 5);
        assert_eq!(p.actual_count(), 7);
    }

    #[test]
    fn identity_cover_is_identity() {
        assert_eq!(pullback_profile(&case2(), &CoverSpec::identity()).unwrap(), case2());
    }

    #[test]
    fn free_ramification_is_apparent() {
        let c = CoverSpec::completed(
            3,
            branch(&[(PointId::Finite(qi(0)), vec![3]), (PointId::Infinity, vec![2, 1])]),
        )
        .unwrap();
        assert_eq!(c.free_ramification, vec![2]);
        let p = pullback_profile(&case2(), &c).unwrap();
        let free = p.point(&PointId::Free { e: 2 }).unwrap();
        assert_eq!(free.kind, Kind::Apparent);
        assert_eq!(free.exponents, vec![qi(0), qi(2), qi(4), qi(6)]);
    }

    #[test]
    fn branch_over_nonsingular_point() {
        let c = CoverSpec {
            degree: 2,
            branch: branch(&[(PointId::Finite(qi(0)), vec![2]), (PointId::Finite(qi(5)), vec![2])]),
            free_ramification: vec![],
        };
        let p = pullback_profile(&case2(), &c).unwrap();
        let d = p.point(&PointId::over(&PointId::Finite(qi(5)), 2)).unwrap();
        assert_eq!(d.kind, Kind::Apparent);
        assert_eq!(d.exponents, vec![qi(0), qi(2), qi(4), qi(6)]);
    }

    #[test]
    fn composition_of_monomial_covers() {
        let v = case2();
        let direct = pullback_profile(&v, &CoverSpec::monomial(6)).unwrap();
        let first = pullback_profile(&v, &CoverSpec::monomial(2)).unwrap();
        let second = CoverSpec {
            degree: 3,
            branch: branch(&[
                (PointId::over(&PointId::Finite(qi(0)), 2), vec![3]),
                (PointId::over(&PointId::Infinity, 2), vec![3]),
            ]),
            free_ramification: vec![],
        };
        assert_eq!(pullback_profile(&first, &second).unwrap(), direct);
    }
}
