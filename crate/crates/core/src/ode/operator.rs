use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{RatFunc, UniPoly};
use crate::error::{Error, Result};

/// Which derivation the stored coefficients multiply.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Form {
    /// `D^n + f_1 D^{n-1} + … + f_n` with `D = d/dt`.
    Ddt,
    /// `δ^n + g_1 δ^{n-1} + … + g_n` with `δ = t d/dt`.
    Delta,
}

/// Monic linear differential operator with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferentialOperator {
    form: Form,
    /// `coeffs[i - 1]` multiplies the `(n - i)`-th power of the derivation.
    coeffs: Vec<RatFunc>,
}

/// Coefficients of `T(T-1)…(T-m+1)`, lowest degree first.
pub(crate) fn falling_factorial(m: usize) -> UniPoly {
    (0..m).fold(UniPoly::one(), |acc, j| {
        &acc * &UniPoly::linear_root(&BigRational::from_integer(BigInt::from(j)))
    })
}

/// Stirling numbers of the second kind `S(m, k)` for `k = 0..=m`.
fn stirling2_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 1..=m {
        let mut next = vec![BigInt::zero(); i + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let carry = row.get(k - 1).cloned().unwrap_or_default();
            let stay = row.get(k).cloned().unwrap_or_default() * BigInt::from(k);
            *slot = carry + stay;
        }
        row = next;
    }
    row
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    BigRational::from_integer(acc)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl DifferentialOperator {
    /// Builds a monic operator from `f_1..f_n` (or `g_1..g_n`).
    pub fn new(form: Form, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroLeading);
        }
        Ok(DifferentialOperator { form, coeffs })
    }

    /// Builds from a full coefficient list indexed by derivative power
    /// (`by_power[k]` multiplies the `k`-th power); divides by the leading one.
    pub fn from_powers(form: Form, by_power: &[RatFunc]) -> Result<Self> {
        let n = by_power
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::ZeroLeading)?;
        if n == 0 {
            return Err(Error::ZeroLeading);
        }
        let lead = &by_power[n];
        let coeffs = (1..=n).map(|i| &by_power[n - i] / lead).collect();
        Self::new(form, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn form(&self) -> Form {
        self.form
    }

    /// `f_i` (or `g_i`) for `i` in `1..=n`; `i = 0` gives the constant 1.
    pub fn coeff(&self, i: usize) -> RatFunc {
        if i == 0 {
            RatFunc::one()
        } else {
            self.coeffs[i - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Multiplies `L` by `t^n` and rewrites `t^k D^k = δ(δ-1)…(δ-k+1)`.
    pub fn to_delta_form(&self) -> Self {
        if self.form == Form::Delta {
            return self.clone();
        }
        let n = self.order();
        let ff: Vec<UniPoly> = (0..=n).map(falling_factorial).collect();
        let t = RatFunc::t();
        let mut g = Vec::with_capacity(n);
        for k in 1..=n {
            let mut acc = RatFunc::zero();
            for i in 0..=k {
                let c = ff[n - i].coeff(n - k);
                if c.is_zero() {
                    continue;
                }
                let term = (&t.pow(i as i64) * &self.coeff(i)).scale(&c);
                acc = &acc + &term;
            }
            g.push(acc);
        }
        DifferentialOperator {
            form: Form::Delta,
            coeffs: g,
        }
    }

    /// Inverse rewrite `δ^m = Σ_k S(m,k) t^k D^k`, then divides by `t^n`.
    pub fn to_ddt_form(&self) -> Self {
        if self.form == Form::Ddt {
            return self.clone();
        }
        let n = self.order();
        let s: Vec<Vec<BigInt>> = (0..=n).map(stirling2_row).collect();
        let t = RatFunc::t();
        let mut f = vec![RatFunc::zero(); n];
        for k in 0..n {
            let mut acc = RatFunc::zero();
            for i in 0..=(n - k) {
                let c = &s[n - i][k];
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &self.coeff(i).scale(&BigRational::from_integer(c.clone()));
            }
            f[n - k - 1] = &acc * &t.pow(k as i64 - n as i64);
        }
        DifferentialOperator {
            form: Form::Ddt,
            coeffs: f,
        }
    }

    /// The same operator written in the coordinate `u = t - a`.
    pub fn recentered(&self, a: &BigRational) -> Self {
        let ddt = self.to_ddt_form();
        if a.is_zero() {
            return ddt;
        }
        DifferentialOperator {
            form: Form::Ddt,
            coeffs: ddt.coeffs.iter().map(|f| f.shift(a)).collect(),
        }
    }

    /// δ-form in the coordinate `s = 1/t`; since `δ_t = -δ_s`,
    /// `g_i(t) ↦ (-1)^i g_i(1/s)`.
    pub fn at_infinity(&self) -> Self {
        let delta = self.to_delta_form();
        let coeffs = delta
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, g)| {
                let r = g.reciprocal_substitution();
                if (idx + 1) % 2 == 1 {
                    -&r
                } else {
                    r
                }
            })
            .collect();
        DifferentialOperator {
            form: Form::Delta,
            coeffs,
        }
    }

    /// Operator annihilating `h·y` for every solution `y` of `L`.
    /// The result keeps the input form. Panics if `h` is zero.
    pub fn twist(&self, h: &RatFunc) -> Self {
        let ddt = self.to_ddt_form();
        let n = ddt.order();
        let u = h.recip();
        let mut derivs = vec![u.clone()];
        for _ in 0..n {
            let next = derivs.last().unwrap().derivative();
            derivs.push(next);
        }
        // coefficient of D^m in L∘u
        let mut by_power = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = RatFunc::zero();
            for k in m..=n {
                let term = (&ddt.coeff(n - k) * &derivs[k - m]).scale(&binomial(k, m));
                acc = &acc + &term;
            }
            by_power.push(acc);
        }
        let twisted = Self::from_powers(Form::Ddt, &by_power).expect("twist keeps the order");
        match self.form {
            Form::Ddt => twisted,
            Form::Delta => twisted.to_delta_form(),
        }
    }

    /// Pullback along `t = s^k`: `g_i ↦ k^i g_i(s^k)` in δ-form.
    pub fn pullback_monomial(&self, k: usize) -> Self {
        assert!(k >= 1, "cover degree must be positive");
        let delta = self.to_delta_form();
        if k == 1 {
            return delta;
        }
        let kk = int(k as i64);
        let mut scale = BigRational::one();
        let coeffs = delta
            .coeffs
            .iter()
            .map(|g| {
                scale *= &kk;
                g.compose_power(k).scale(&scale)
            })
            .collect();
        DifferentialOperator {
            form: Form::Delta,
            coeffs,
        }
    }

    /// Pullback along `t = c + s^k`, giving a ramification point of order
    /// `k` over `c` at `s = 0`.
    pub fn pullback_ramified_at(&self, c: &BigRational, k: usize) -> Self {
        self.recentered(c).to_delta_form().pullback_monomial(k)
    }

    /// The δ-form (or D-form) coefficients with the derivation written out,
    /// in a form the parser accepts.
    pub fn to_text(&self) -> String {
        let n = self.order();
        let sym = match self.form {
            Form::Ddt => "D",
            Form::Delta => "del",
        };
        let power = |k: usize| match k {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{k}"),
        };
        let mut out = power(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = n - i - 1;
            let p = power(k);
            if p.is_empty() {
                out.push_str(&format!(" + ({c})"));
            } else {
                out.push_str(&format!(" + ({c})*{p}"));
            }
        }
        out
    }
}

impl fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
