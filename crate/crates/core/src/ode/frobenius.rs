use num_rational::BigRational;
use num_traits::{One, Zero};

use super::indicial::characteristic_exponents;
use super::operator::DifferentialOperator;
use super::points::PointId;
use crate::arith::{floor_i64, is_integer, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FrobeniusOutcome {
    Apparent,
    HasLog,
    Inconclusive,
}

/// `μ_max − μ_min + n + 4` for the given exponents.
pub fn default_truncation(exponents: &[BigRational], order: usize) -> usize {
    let span = floor_i64(&(exponents.last().unwrap() - exponents.first().unwrap()));
    span as usize + order + 4
}

/// Tries to build a basis of log-free series `t^μ (1 + …)` at the rational
/// point `a`, up to `truncation` terms beyond each exponent.
///
/// The local δ-form is cleared of denominators to `Σ_j t^j P_j(δ)`; each
/// exponent runs the recursion `P_0(μ+m) a_m = −Σ_{j≥1} P_j(μ+m−j) a_{m−j}`
/// and a nonzero right-hand side at a resonance is a logarithm.
pub fn frobenius_apparent_check(
    l: &DifferentialOperator,
    a: &BigRational,
    truncation: Option<usize>,
) -> Result<FrobeniusOutcome> {
    let point = PointId::Finite(a.clone());
    let exps = characteristic_exponents(l, &point)?;
    if !exps.iter().all(is_integer) {
        return Err(Error::NotCandidateApparent(format!(
            "non-integer exponents at {point}"
        )));
    }
    if exps.windows(2).any(|w| w[0] == w[1]) {
        return Ok(FrobeniusOutcome::HasLog);
    }
    let n = l.order();
    let span = floor_i64(&(exps[n - 1].clone() - &exps[0])) as usize;
    let trunc = truncation.unwrap_or_else(|| default_truncation(&exps, n));

    let local = l.recentered(a).to_delta_form();
    let lcm = local
        .coeffs()
        .iter()
        .fold(UniPoly::one(), |acc, g| {
            let d = g.den();
            &acc * &d.exact_div(&acc.gcd(d))
        });
    // numerators N_i with N_0 = lcm, each multiplying δ^{n-i}
    let nums: Vec<UniPoly> = (0..=n)
        .map(|i| {
            let g = local.coeff(i);
            &g.num().clone() * &lcm.exact_div(g.den())
        })
        .collect();
    let max_j = nums.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let p_j: Vec<UniPoly> = (0..=max_j)
        .map(|j| {
            let mut c = vec![BigRational::zero(); n + 1];
            for (i, num) in nums.iter().enumerate() {
                c[n - i] = num.coeff(j);
            }
            UniPoly::new(c)
        })
        .collect();

    for mu in &exps {
        let mut series = vec![BigRational::one()];
        for m in 1..=trunc {
            let x = mu + BigRational::from_integer(m.into());
            let mut rhs = BigRational::zero();
            for (j, pj) in p_j.iter().enumerate().skip(1) {
                if j > m {
                    break;
                }
                let prev = &series[m - j];
                if prev.is_zero() {
                    continue;
                }
                let arg = &x - BigRational::from_integer(j.into());
                rhs -= pj.eval(&arg) * prev;
            }
            let lead = p_j[0].eval(&x);
            if lead.is_zero() {
                if !rhs.is_zero() {
                    return Ok(FrobeniusOutcome::HasLog);
                }
                series.push(BigRational::zero());
            } else {
                series.push(rhs / lead);
            }
        }
    }
    if trunc < span {
        Ok(FrobeniusOutcome::Inconclusive)
    } else {
        Ok(FrobeniusOutcome::Apparent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use crate::ode::parse::parse_operator;

    #[test]
    fn nonsingular_point_is_apparent() {
        let l = parse_operator("del^4 - t*(del+1/5)*(del+2/5)*(del+3/5)*(del+4/5)").unwrap();
        assert_eq!(
            frobenius_apparent_check(&l, &qi(3), None).unwrap(),
            FrobeniusOutcome::Apparent
        );
    }

    #[test]
    fn ramification_point_of_pullback_is_apparent() {
        let l = parse_operator("del^4 - t*(del+1/5)*(del+2/5)*(del+3/5)*(del+4/5)").unwrap();
        let p = l.pullback_ramified_at(&qi(2), 3);
        assert_eq!(
            characteristic_exponents(&p, &PointId::Finite(qi(0))).unwrap(),
            vec![qi(0), qi(3), qi(6), qi(9)]
        );
        assert_eq!(
            frobenius_apparent_check(&p, &qi(0), None).unwrap(),
            FrobeniusOutcome::Apparent
        );
        assert_eq!(
            frobenius_apparent_check(&p, &qi(0), Some(2)).unwrap(),
            FrobeniusOutcome::Inconclusive
        );
    }

    #[test]
    fn logarithmic_points() {
        let repeated = parse_operator("del^2 - t*del*(del+1)").unwrap();
        assert_eq!(
            frobenius_apparent_check(&repeated, &qi(0), None).unwrap(),
            FrobeniusOutcome::HasLog
        );
        // exponents 0, 1 with an obstruction at the first resonance
        let resonant = parse_operator("del*(del-1) - t*(del+1)^2").unwrap();
        assert_eq!(
            frobenius_apparent_check(&resonant, &qi(0), None).unwrap(),
            FrobeniusOutcome::HasLog
        );
        let quartic = parse_operator("del^3 + t*(del+1/4)*(del+1/2)*(del+3/4)").unwrap();
        assert!(matches!(
            frobenius_apparent_check(&quartic, &qi(-1), None),
            Err(Error::NotCandidateApparent(_))
        ));
    }
}
