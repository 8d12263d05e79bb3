use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::divisors;

/// Dense univariate polynomial over Q, lowest degree first.
///
/// Canonical form has no trailing zero coefficient, so the zero polynomial is
/// the empty coefficient list and `degree()` returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The variable `t`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `t - a`
    pub fn linear_root(a: &BigRational) -> Self {
        Self::new(vec![-a.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Index of the lowest nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; panics when there is a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(a, 0) = monic(a)`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `p(t + a)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: &BigRational) -> Self {
        if a.is_zero() || self.is_constant() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let add = a * &c[j + 1];
                c[j] += add;
            }
        }
        Self::new(c)
    }

    /// `self(inner(t))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `t^deg * p(1/t)` for a given target degree `deg >= self.degree()`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(deg + 1, BigRational::zero());
        c.reverse();
        Self::new(c)
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Integer coefficient vector of a primitive integer multiple of `self`.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Rational roots with multiplicity, sorted ascending, together with the
    /// monic cofactor that has no rational root (the constant 1 when the
    /// polynomial splits over Q). Panics on the zero polynomial.
    pub fn rational_roots(&self) -> (Vec<(BigRational, usize)>, UniPoly) {
        assert!(!self.is_zero(), "rational_roots of zero polynomial");
        let mut rest = self.monic();
        let mut roots = Vec::new();

        let v = rest.valuation().unwrap_or(0);
        if v > 0 {
            roots.push((BigRational::zero(), v));
            rest = Self::new(rest.coeffs[v..].to_vec());
        }

        if !rest.is_constant() {
            let sqf = rest.squarefree_part();
            let ints = sqf.primitive_integer_coeffs();
            let a0 = ints[0].clone();
            let an = ints.last().unwrap().clone();
            let mut candidates = Vec::new();
            for p in divisors(&a0) {
                for qd in divisors(&an) {
                    let r = BigRational::new(p.clone(), qd);
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                if !sqf.eval(&r).is_zero() {
                    continue;
                }
                let lin = Self::linear_root(&r);
                let mut m = 0;
                loop {
                    let (qt, rm) = rest.div_rem(&lin);
                    if !rm.is_zero() {
                        break;
                    }
                    rest = qt;
                    m += 1;
                }
                roots.push((r, m));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest.monic())
    }

    /// Formats with the given variable name, e.g. `t^5 - 1`.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1])), p(&[1]));
        // t^5 - 1 against its derivative: remainder chain ends in a unit
        assert_eq!(p(&[-1, 0, 0, 0, 0, 1]).gcd(&p(&[0, 0, 0, 0, 5])), p(&[1]));
        assert_eq!(p(&[2, 4]).gcd(&UniPoly::zero()), p(&[1, 2]).monic());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(&qi(1)), p(&[1, 2, 1]));
        let f = p(&[-1, 0, 0, 0, 0, 1]);
        assert_eq!(f.shift(&qi(0)), f);
        assert_eq!(f.shift(&qi(1)), p(&[0, 5, 10, 10, 5, 1]));
    }

    #[test]
    fn rational_roots_examples() {
        let (r, c) = p(&[0, 0, 0, 0, 1]).rational_roots();
        assert_eq!(r, vec![(qi(0), 4)]);
        assert!(c.is_one());

        let quartic = [q(1, 5), q(2, 5), q(3, 5), q(4, 5)]
            .iter()
            .fold(UniPoly::one(), |acc, a| &acc * &UniPoly::linear_root(a));
        let (r, c) = quartic.rational_roots();
        assert_eq!(
            r,
            vec![(q(1, 5), 1), (q(2, 5), 1), (q(3, 5), 1), (q(4, 5), 1)]
        );
        assert!(c.is_one());

        let (r, c) = p(&[-2, 0, 1]).rational_roots();
        assert!(r.is_empty());
        assert_eq!(c, p(&[-2, 0, 1]));
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(p(&[-1, 0, 0, 0, 0, 1]).to_string(), "t^5 - 1");
        assert_eq!(p(&[0, -3, 2]).to_string(), "2*t^2 - 3*t");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(
            UniPoly::new(vec![q(1, 2), qi(0), q(-3, 4)]).to_string(),
            "-3/4*t^2 + 1/2"
        );
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| UniPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_cofactors_coprime(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert!(a.exact_div(&g).gcd(&b.exact_div(&g)).is_one());
        }

        #[test]
        fn shift_inverts(a in arb_poly(), n in -5i64..5, d in 1i64..4) {
            let s = q(n, d);
            prop_assert_eq!(a.shift(&s).shift(&-s.clone()), a);
        }

        #[test]
        fn roots_are_exact(a in arb_poly()) {
            prop_assume!(!a.is_zero());
            let (roots, cof) = a.rational_roots();
            let mut total = 0;
            for (r, m) in &roots {
                prop_assert!(a.eval(r).is_zero());
                total += m;
            }
            prop_assert_eq!(total, a.degree().unwrap() - cof.degree().unwrap());
            let (again, _) = cof.rational_roots();
            prop_assert!(again.is_empty());
        }
    }
}
