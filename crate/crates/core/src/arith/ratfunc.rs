use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::UniPoly;

/// Rational function over Q in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.exact_div(&g), den.exact_div(&g));
        let lc = d.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    /// The coordinate function `t`.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a constant function.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Panics if `self` is zero.
    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .renormalized()
    }

    fn renormalized(self) -> Self {
        Self::new(self.num, self.den)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `f(t + a)`
    pub fn shift(&self, a: &BigRational) -> Self {
        Self::new(self.num.shift(a), self.den.shift(a))
    }

    /// `f(s^k)` for `k >= 1`.
    pub fn compose_power(&self, k: usize) -> Self {
        let xk = UniPoly::monomial(BigRational::one(), k);
        Self::new(self.num.compose(&xk), self.den.compose(&xk))
    }

    /// `f(1/s)`
    pub fn reciprocal_substitution(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let m = dn.max(dd);
        let n = self.num.reversed(dn);
        let d = self.den.reversed(dd);
        // f(1/s) = s^{-dn} n(s) / (s^{-dd} d(s))
        let (n, d) = (
            &n * &UniPoly::monomial(BigRational::one(), m - dn),
            &d * &UniPoly::monomial(BigRational::one(), m - dd),
        );
        Self::new(n, d)
    }

    /// Order of vanishing at `t = 0` (negative for a pole), `None` for zero.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap() as i64;
        Some(vn - vd)
    }

    pub fn valuation_at(&self, a: &BigRational) -> Option<i64> {
        self.shift(a).valuation_at_zero()
    }

    /// Leading Laurent coefficient at `t = 0`, i.e. the value of
    /// `t^{-v} f` at 0 where `v` is the valuation. Zero for the zero function.
    pub fn leading_coefficient_at_zero(&self) -> BigRational {
        match (self.num.valuation(), self.den.valuation()) {
            (Some(vn), Some(vd)) => self.num.coeff(vn) / self.den.coeff(vd),
            _ => BigRational::zero(),
        }
    }

    /// Coefficient of `t^k` in the Laurent expansion at 0.
    pub fn laurent_coefficient_at_zero(&self, k: i64) -> BigRational {
        let Some(v) = self.valuation_at_zero() else {
            return BigRational::zero();
        };
        if k < v {
            return BigRational::zero();
        }
        let vd = self.den.valuation().unwrap();
        let vn = self.num.valuation().unwrap();
        // f = t^v * n'(t) / d'(t) with d'(0) != 0
        let n: Vec<BigRational> = self.num.coeffs()[vn..].to_vec();
        let d: Vec<BigRational> = self.den.coeffs()[vd..].to_vec();
        let steps = (k - v) as usize;
        let d0_inv = d[0].recip();
        let mut series: Vec<BigRational> = Vec::with_capacity(steps + 1);
        for m in 0..=steps {
            let mut acc = n.get(m).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=m.min(d.len() - 1) {
                acc -= &d[j] * &series[m - j];
            }
            series.push(acc * &d0_inv);
        }
        series[steps].clone()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
