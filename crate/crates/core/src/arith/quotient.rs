use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::UniPoly;
use crate::error::{Error, Result};

/// Residue class in Q[x]/(m) for a squarefree monic modulus `m`.
///
/// The modulus may be reducible; operations that meet a zero divisor report
/// the factorization they discovered instead of failing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElement {
    modulus: UniPoly,
    residue: UniPoly,
}

/// Outcome of an inversion attempt.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Inversion {
    Unit(QuotientElement),
    /// Nontrivial monic factorization `modulus = g * h`, with `g` the gcd of
    /// residue and modulus.
    Split(UniPoly, UniPoly),
}

/// Outcome of root extraction over a quotient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuotientRoots {
    /// Rational roots valid at every root of the modulus, with the cofactor
    /// (coefficients lowest degree first) that has no such root.
    Roots {
        roots: Vec<(BigRational, usize)>,
        cofactor: Vec<QuotientElement>,
    },
    Split(UniPoly, UniPoly),
}

impl QuotientElement {
    /// Panics if the modulus is constant.
    pub fn new(residue: UniPoly, modulus: UniPoly) -> Self {
        assert!(
            !modulus.is_constant(),
            "quotient modulus must be nonconstant"
        );
        let modulus = modulus.monic();
        QuotientElement {
            residue: residue.rem(&modulus),
            modulus,
        }
    }

    pub fn from_rational(c: BigRational, modulus: &UniPoly) -> Self {
        Self::new(UniPoly::constant(c), modulus.clone())
    }

    /// The class of `x`.
    pub fn generator(modulus: &UniPoly) -> Self {
        Self::new(UniPoly::x(), modulus.clone())
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.residue.is_constant().then(|| self.residue.coeff(0))
    }

    fn with(&self, residue: UniPoly) -> Self {
        Self::new(residue, self.modulus.clone())
    }

    /// Splits when the residue is a nonzero zero divisor.
    pub fn invert(&self) -> Result<Inversion> {
        if self.is_zero() {
            return Err(Error::ZeroNotInvertible);
        }
        let (g, s, _) = self.residue.ext_gcd(&self.modulus);
        if g.is_one() {
            Ok(Inversion::Unit(self.with(s)))
        } else {
            let h = self.modulus.exact_div(&g);
            Ok(Inversion::Split(g, h.monic()))
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.with(UniPoly::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates a polynomial with rational coefficients at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> Self {
        let mut acc = self.with(UniPoly::zero());
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.with(UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Determinant of multiplication by this element, i.e. the resultant of
    /// modulus and residue for a monic modulus.
    pub fn norm(&self) -> BigRational {
        let m = self.modulus.degree().unwrap();
        let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut col = self.residue.clone();
        for _ in 0..m {
            mat.push((0..m).map(|i| col.coeff(i)).collect());
            col = (&col * &UniPoly::x()).rem(&self.modulus);
        }
        determinant(mat)
    }
}

fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

fn check_same(a: &QuotientElement, b: &QuotientElement) {
    assert_eq!(a.modulus, b.modulus, "quotient elements over different moduli");
}

impl Add for &QuotientElement {
    type Output = QuotientElement;
    fn add(self, rhs: &QuotientElement) -> QuotientElement {
        check_same(self, rhs);
        self.with(&self.residue + &rhs.residue)
    }
}

impl Sub for &QuotientElement {
    type Output = QuotientElement;
    fn sub(self, rhs: &QuotientElement) -> QuotientElement {
        check_same(self, rhs);
        self.with(&self.residue - &rhs.residue)
    }
}

impl Mul for &QuotientElement {
    type Output = QuotientElement;
    fn mul(self, rhs: &QuotientElement) -> QuotientElement {
        check_same(self, rhs);
        self.with(&self.residue * &rhs.residue)
    }
}

impl Neg for &QuotientElement {
    type Output = QuotientElement;
    fn neg(self) -> QuotientElement {
        self.with(-&self.residue)
    }
}

/// Classification of a single element: zero, unit, or a splitting witness.
enum Status {
    Zero,
    Unit,
    Split(UniPoly, UniPoly),
}

fn status(e: &QuotientElement) -> Status {
    match e.invert() {
        Err(_) => Status::Zero,
        Ok(Inversion::Unit(_)) => Status::Unit,
        Ok(Inversion::Split(g, h)) => Status::Split(g, h),
    }
}

fn eval_at(coeffs: &[QuotientElement], r: &BigRational) -> QuotientElement {
    let m = &coeffs[0].modulus;
    let mut acc = QuotientElement::from_rational(BigRational::zero(), m);
    let rr = QuotientElement::from_rational(r.clone(), m);
    for c in coeffs.iter().rev() {
        acc = &(&acc * &rr) + c;
    }
    acc
}

/// Quotient of `P(T)` by `T - r`, assuming the remainder vanishes.
fn deflate(coeffs: &[QuotientElement], r: &BigRational) -> Vec<QuotientElement> {
    let m = &coeffs[0].modulus;
    let rr = QuotientElement::from_rational(r.clone(), m);
    let n = coeffs.len() - 1;
    let mut out = vec![QuotientElement::from_rational(BigRational::zero(), m); n];
    let mut carry = coeffs[n].clone();
    for k in (0..n).rev() {
        out[k] = carry.clone();
        carry = &coeffs[k] + &(&carry * &rr);
    }
    out
}

/// Rational roots of `P(T) = Σ coeffs[i] T^i` valid at every root of the
/// common modulus.
///
/// Candidates come from the rational roots of the norm
/// `N(T) = Res_x(m(x), P(x, T))`, obtained by evaluating the norm at
/// `deg N + 1` sample points and interpolating; each candidate is then
/// checked in the quotient ring. A candidate that vanishes at some but not
/// all roots of the modulus yields `Split`.
pub fn rational_roots_over_quotient(coeffs: &[QuotientElement]) -> Result<QuotientRoots> {
    let mut p: Vec<QuotientElement> = coeffs.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let Some(lead) = p.last() else {
        return Err(Error::ZeroNotInvertible);
    };
    let modulus = lead.modulus.clone();
    for c in &p {
        check_same(c, lead);
    }
    if let Status::Split(g, h) = status(lead) {
        return Ok(QuotientRoots::Split(g, h));
    }
    let deg_t = p.len() - 1;
    let m = modulus.degree().unwrap();
    let deg_n = m * deg_t;
    let samples: Vec<(BigRational, BigRational)> = (0..=deg_n as i64)
        .map(|k| {
            let x = BigRational::from_integer(k.into());
            let v = eval_at(&p, &x).norm();
            (x, v)
        })
        .collect();
    let norm = interpolate(&samples);
    let (candidates, _) = norm.rational_roots();

    let mut roots = Vec::new();
    for (r, _) in candidates {
        let mut mult = 0;
        loop {
            if p.len() <= 1 {
                break;
            }
            match status(&eval_at(&p, &r)) {
                Status::Zero => {
                    p = deflate(&p, &r);
                    mult += 1;
                }
                Status::Unit => break,
                Status::Split(g, h) => return Ok(QuotientRoots::Split(g, h)),
            }
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    Ok(QuotientRoots::Roots {
        roots,
        cofactor: p,
    })
}

/// Lagrange interpolation through distinct abscissae.
fn interpolate(points: &[(BigRational, BigRational)]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}
