//! Exact arithmetic: rationals, univariate polynomials over Q, rational
//! functions and squarefree quotient rings.

mod poly;
mod quotient;
mod ratfunc;

pub use num_rational::BigRational;
pub use poly::UniPoly;
pub use quotient::{rational_roots_over_quotient, Inversion, QuotientElement, QuotientRoots};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand constructor for a small rational.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fractional part in [0, 1).
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Floor as a machine integer. Panics on overflow, which cannot happen for
/// exponent data of realistic operators.
pub fn floor_i64(x: &BigRational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("floor does not fit in i64")
}

pub fn is_integer(x: &BigRational) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Canonical string form: `p/q`, or `p` when the denominator is one.
pub fn rat_to_string(x: &BigRational) -> String {
    x.to_string()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// All positive divisors of `n` (n != 0), ascending.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
