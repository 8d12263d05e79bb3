use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::operator::{falling_factorial, DifferentialOperator};
use super::points::PointId;
use crate::arith::{
    rational_roots_over_quotient, Inversion, QuotientElement, QuotientRoots, RatFunc, UniPoly,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Classification {
    Nonsingular,
    RegularSingular,
    Irregular,
}

/// Indicial polynomial in `T`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndicialPolynomial {
    Rational(UniPoly),
    /// Coefficients in `Q[x]/(q)` for a closed point `q`.
    Quotient(Vec<QuotientElement>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeRow {
    pub point: PointId,
    pub orbit_size: usize,
    pub exponents: Vec<BigRational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiemannScheme {
    pub order: usize,
    pub rows: Vec<SchemeRow>,
}

/// Either a value, or a factorization `q = g * h` of a closed point whose
/// conjugates behave differently.
enum Local<T> {
    Done(T),
    Split(UniPoly, UniPoly),
}

fn unsupported_point(p: &PointId) -> Error {
    Error::Unsupported(format!("point {p} is not a point of the base line"))
}

fn split_error(q: &UniPoly, g: &UniPoly, h: &UniPoly) -> Error {
    Error::Unsupported(format!(
        "closed point {q} splits as ({g})*({h}); query the factors separately"
    ))
}

/// δ-form in a local coordinate vanishing at a rational point or at ∞.
fn local_delta(l: &DifferentialOperator, p: &PointId) -> Result<DifferentialOperator> {
    match p {
        PointId::Finite(a) => Ok(l.recentered(a).to_delta_form()),
        PointId::Infinity => Ok(l.at_infinity()),
        other => Err(unsupported_point(other)),
    }
}

fn classify_local(local: &DifferentialOperator) -> Classification {
    let holo = |f: &RatFunc| f.valuation_at_zero().is_none_or(|v| v >= 0);
    if !local.coeffs().iter().all(holo) {
        return Classification::Irregular;
    }
    if local.to_ddt_form().coeffs().iter().all(holo) {
        Classification::Nonsingular
    } else {
        Classification::RegularSingular
    }
}

/// Per-coefficient pole order along `q` and the cofactor of the denominator.
struct ClosedValuation {
    pole: Vec<usize>,
    rest: Vec<UniPoly>,
}

fn closed_valuations(l: &DifferentialOperator, q: &UniPoly) -> Local<ClosedValuation> {
    let ddt = l.to_ddt_form();
    let mut pole = Vec::new();
    let mut rest = Vec::new();
    for f in ddt.coeffs() {
        let mut d = f.den().clone();
        let mut k = 0;
        loop {
            let g = d.gcd(q);
            if g.is_one() {
                break;
            }
            if &g != q {
                let h = q.exact_div(&g);
                return Local::Split(g, h);
            }
            d = d.exact_div(q);
            k += 1;
        }
        pole.push(k);
        rest.push(d);
    }
    Local::Done(ClosedValuation { pole, rest })
}

fn classify_closed(v: &ClosedValuation) -> Classification {
    if v.pole.iter().enumerate().any(|(i, &k)| k > i + 1) {
        Classification::Irregular
    } else if v.pole.iter().all(|&k| k == 0) {
        Classification::Nonsingular
    } else {
        Classification::RegularSingular
    }
}

fn classify_local_point(l: &DifferentialOperator, p: &PointId) -> Result<Local<Classification>> {
    match p {
        PointId::Closed(q) => Ok(match closed_valuations(l, q) {
            Local::Done(v) => Local::Done(classify_closed(&v)),
            Local::Split(g, h) => Local::Split(g, h),
        }),
        _ => Ok(Local::Done(classify_local(&local_delta(l, p)?))),
    }
}

/// Classifies a point of the line as nonsingular, regular singular or
/// irregular.
pub fn classify_point(l: &DifferentialOperator, p: &PointId) -> Result<Classification> {
    match classify_local_point(l, p)? {
        Local::Done(c) => Ok(c),
        Local::Split(g, h) => match p {
            PointId::Closed(q) => Err(split_error(q, &g, &h)),
            _ => unreachable!("only closed points split"),
        },
    }
}

fn unit_inverse(e: &QuotientElement) -> QuotientElement {
    match e.invert() {
        Ok(Inversion::Unit(inv)) => inv,
        _ => panic!("element coprime to the modulus must be a unit"),
    }
}

/// `Σ_i c_i · T(T-1)…(T-n+i+1)` with `c_i` the value of `(t-α)^i f_i` at
/// the roots α of `q`, computed in `Q[x]/(q)`.
fn closed_indicial(
    l: &DifferentialOperator,
    q: &UniPoly,
    v: &ClosedValuation,
) -> Vec<QuotientElement> {
    let n = l.order();
    let ddt = l.to_ddt_form();
    let zero = QuotientElement::from_rational(BigRational::zero(), q);
    let dq_inv = unit_inverse(&QuotientElement::new(q.derivative(), q.clone()));
    let mut out = vec![zero.clone(); n + 1];
    for i in 0..=n {
        let c = if i == 0 {
            QuotientElement::from_rational(BigRational::one(), q)
        } else if v.pole[i - 1] == i {
            let num = QuotientElement::new(ddt.coeff(i).num().clone(), q.clone());
            let rest_inv = unit_inverse(&QuotientElement::new(v.rest[i - 1].clone(), q.clone()));
            &(&num * &rest_inv) * &dq_inv.pow(i as u32)
        } else {
            continue;
        };
        let ff = falling_factorial(n - i);
        for (k, a) in ff.coeffs().iter().enumerate() {
            let term = &c * &QuotientElement::from_rational(a.clone(), q);
            out[k] = &out[k] + &term;
        }
    }
    out
}

fn rational_indicial(local: &DifferentialOperator) -> UniPoly {
    let n = local.order();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    for i in 1..=n {
        let g = local.coeff(i);
        coeffs[n - i] = if g.is_zero() {
            BigRational::zero()
        } else {
            g.eval(&BigRational::zero())
                .expect("regular singular δ-coefficients are holomorphic")
        };
    }
    UniPoly::new(coeffs)
}

fn indicial_local(l: &DifferentialOperator, p: &PointId) -> Result<Local<IndicialPolynomial>> {
    let irregular = || Error::Irregular {
        point: p.to_string(),
    };
    match p {
        PointId::Closed(q) => match closed_valuations(l, q) {
            Local::Split(g, h) => Ok(Local::Split(g, h)),
            Local::Done(v) => {
                if classify_closed(&v) == Classification::Irregular {
                    return Err(irregular());
                }
                Ok(Local::Done(IndicialPolynomial::Quotient(closed_indicial(
                    l, q, &v,
                ))))
            }
        },
        _ => {
            let local = local_delta(l, p)?;
            if classify_local(&local) == Classification::Irregular {
                return Err(irregular());
            }
            Ok(Local::Done(IndicialPolynomial::Rational(rational_indicial(
                &local,
            ))))
        }
    }
}

/// Indicial polynomial at a rational point, ∞, or a closed point.
pub fn indicial_polynomial(l: &DifferentialOperator, p: &PointId) -> Result<IndicialPolynomial> {
    match indicial_local(l, p)? {
        Local::Done(ip) => Ok(ip),
        Local::Split(g, h) => match p {
            PointId::Closed(q) => Err(split_error(q, &g, &h)),
            _ => unreachable!(),
        },
    }
}

fn flatten_roots(roots: &[(BigRational, usize)]) -> Vec<BigRational> {
    roots
        .iter()
        .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
        .collect()
}

fn exponents_local(l: &DifferentialOperator, p: &PointId) -> Result<Local<Vec<BigRational>>> {
    let ip = match indicial_local(l, p)? {
        Local::Done(ip) => ip,
        Local::Split(g, h) => return Ok(Local::Split(g, h)),
    };
    let exps = match ip {
        IndicialPolynomial::Rational(poly) => {
            let (roots, cof) = poly.rational_roots();
            if !cof.is_constant() {
                return Err(Error::IrrationalExponents {
                    point: p.to_string(),
                    cofactor: cof.display_var("T"),
                });
            }
            flatten_roots(&roots)
        }
        IndicialPolynomial::Quotient(coeffs) => match rational_roots_over_quotient(&coeffs)? {
            QuotientRoots::Split(g, h) => return Ok(Local::Split(g, h)),
            QuotientRoots::Roots { roots, cofactor } => {
                if cofactor.len() > 1 {
                    let shown: Vec<String> = cofactor
                        .iter()
                        .map(|c| format!("({})", c.residue().display_var("x")))
                        .collect();
                    return Err(Error::IrrationalExponents {
                        point: p.to_string(),
                        cofactor: format!("[{}] mod {}", shown.join(", "), p),
                    });
                }
                flatten_roots(&roots)
            }
        },
    };
    debug_assert_eq!(exps.len(), l.order());
    Ok(Local::Done(exps))
}

/// Sorted characteristic exponents with multiplicity.
pub fn characteristic_exponents(l: &DifferentialOperator, p: &PointId) -> Result<Vec<BigRational>> {
    match exponents_local(l, p)? {
        Local::Done(e) => Ok(e),
        Local::Split(g, h) => match p {
            PointId::Closed(q) => Err(split_error(q, &g, &h)),
            _ => unreachable!(),
        },
    }
}

/// Rational roots of the squarefree denominator product, plus the rest as
/// one closed point.
fn finite_candidates(l: &DifferentialOperator) -> Vec<PointId> {
    let ddt = l.to_ddt_form();
    let prod = ddt
        .coeffs()
        .iter()
        .fold(UniPoly::one(), |acc, f| &acc * &f.den().squarefree_part());
    let sqf = prod.squarefree_part();
    if sqf.is_constant() {
        return Vec::new();
    }
    let (roots, rest) = sqf.rational_roots();
    let mut out: Vec<PointId> = roots.into_iter().map(|(r, _)| PointId::Finite(r)).collect();
    if !rest.is_constant() {
        out.push(PointId::Closed(rest));
    }
    out
}

/// Every pole of a coefficient (splitting closed points as needed) and ∞,
/// each classified. Sorted: rationals ascending, closed points, ∞.
pub fn singular_points(l: &DifferentialOperator) -> Result<Vec<(PointId, Classification)>> {
    let mut work = finite_candidates(l);
    work.push(PointId::Infinity);
    let mut out = Vec::new();
    while let Some(p) = work.pop() {
        match classify_local_point(l, &p)? {
            Local::Done(c) => out.push((p, c)),
            Local::Split(g, h) => {
                work.push(PointId::Closed(g));
                work.push(PointId::Closed(h));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Riemann scheme with one row per rational point and per irreducible-as-
/// needed closed point.
pub fn riemann_scheme_uncoalesced(l: &DifferentialOperator) -> Result<RiemannScheme> {
    let mut work: Vec<PointId> = Vec::new();
    for (p, c) in singular_points(l)? {
        match c {
            Classification::Irregular => {
                return Err(Error::Irregular {
                    point: p.to_string(),
                })
            }
            Classification::Nonsingular => {}
            Classification::RegularSingular => work.push(p),
        }
    }
    let mut rows = Vec::new();
    while let Some(p) = work.pop() {
        match exponents_local(l, &p)? {
            Local::Done(exponents) => rows.push(SchemeRow {
                orbit_size: p.inherent_orbit(),
                point: p,
                exponents,
            }),
            Local::Split(g, h) => {
                work.push(PointId::Closed(g));
                work.push(PointId::Closed(h));
            }
        }
    }
    rows.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(RiemannScheme {
        order: l.order(),
        rows,
    })
}

/// Riemann scheme of a Fuchsian operator; finite rows sharing exponents
/// with a closed point are merged into one closed point.
pub fn riemann_scheme(l: &DifferentialOperator) -> Result<RiemannScheme> {
    Ok(riemann_scheme_uncoalesced(l)?.coalesced())
}

impl RiemannScheme {
    pub fn row(&self, p: &PointId) -> Option<&SchemeRow> {
        self.rows.iter().find(|r| &r.point == p)
    }

    /// Merges finite rows with identical exponents whenever the group
    /// contains a closed point; the merged modulus is the product.
    pub fn coalesced(&self) -> RiemannScheme {
        let mut groups: BTreeMap<Vec<BigRational>, Vec<&SchemeRow>> = BTreeMap::new();
        let mut rows = Vec::new();
        for r in &self.rows {
            if r.point == PointId::Infinity {
                rows.push(r.clone());
            } else {
                groups.entry(r.exponents.clone()).or_default().push(r);
            }
        }
        for (exps, members) in groups {
            let has_closed = members
                .iter()
                .any(|r| matches!(r.point, PointId::Closed(_)));
            if members.len() < 2 || !has_closed {
                rows.extend(members.into_iter().cloned());
                continue;
            }
            let modulus = members.iter().fold(UniPoly::one(), |acc, r| match &r.point {
                PointId::Finite(a) => &acc * &UniPoly::linear_root(a),
                PointId::Closed(q) => &acc * q,
                _ => acc,
            });
            rows.push(SchemeRow {
                orbit_size: members.iter().map(|r| r.orbit_size).sum(),
                point: PointId::Closed(modulus),
                exponents: exps,
            });
        }
        rows.sort_by(|a, b| a.point.cmp(&b.point));
        RiemannScheme {
            order: self.order,
            rows,
        }
    }

    fn row_defect(&self, r: &SchemeRow) -> BigRational {
        let n = self.order as i64;
        let base = BigRational::new(BigInt::from(n * (n - 1)), BigInt::from(2));
        let s: BigRational = r.exponents.iter().fold(BigRational::zero(), |a, b| a + b);
        (s - base) * BigRational::from_integer(BigInt::from(r.orbit_size))
    }

    /// `Σ_p orbit·(Σ_i μ_i − n(n−1)/2)` over the rows.
    pub fn fuchs_sum(&self) -> BigRational {
        self.rows.iter().map(|r| self.row_defect(r)).sum()
    }

    /// Checks the exponent sums against the residues of `f_1`: the finite
    /// rows must sum to `−c`, where `c` is the `t^{-1}` coefficient of `f_1`
    /// at ∞ (the sum of all finite residues), and the total must be
    /// `−n(n−1)`.
    pub fn fuchs_consistent(&self, l: &DifferentialOperator) -> bool {
        let n = self.order as i64;
        let f1 = l.to_ddt_form().coeff(1);
        let c = f1.reciprocal_substitution().laurent_coefficient_at_zero(1);
        let finite: BigRational = self
            .rows
            .iter()
            .filter(|r| r.point != PointId::Infinity)
            .map(|r| self.row_defect(r))
            .sum();
        let total = self.fuchs_sum();
        finite == -c && total == BigRational::from_integer(BigInt::from(-n * (n - 1)))
    }
}

impl fmt::Display for RiemannScheme {
    /// Column per point, exponents listed downwards, as in a printed scheme.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                if r.orbit_size > 1 && !matches!(r.point, PointId::Closed(_)) {
                    format!("{} (x{})", r.point, r.orbit_size)
                } else if matches!(r.point, PointId::Closed(_)) {
                    format!("{} = 0", r.point)
                } else {
                    r.point.to_string()
                }
            })
            .collect();
        let cols: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.exponents.iter().map(|e| e.to_string()).collect())
            .collect();
        let widths: Vec<usize> = header
            .iter()
            .zip(&cols)
            .map(|(h, c)| c.iter().map(|s| s.chars().count()).chain([h.chars().count()]).max().unwrap())
            .collect();
        let line = |cells: Vec<&str>| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
        };
        writeln!(f, "{}", line(header.iter().map(|s| s.as_str()).collect()))?;
        let total: usize = widths.iter().sum::<usize>() + 3 * widths.len().saturating_sub(1);
        writeln!(f, "{}", "-".repeat(total))?;
        for i in 0..self.order {
            writeln!(f, "{}", line(cols.iter().map(|c| c[i].as_str()).collect()))?;
        }
        Ok(())
    }
}
