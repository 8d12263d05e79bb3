//! Degrees of the Hodge bundles and Hodge numbers of parabolic cohomology
//! for (1,…,1)-type variations of weight 1, 2 and 3, together with the
//! weight-specific closed forms used as cross-checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{floor_i64, frac, is_integer, to_i64};
use crate::error::{Error, Result};
use crate::local::{
    classify_weight3, count_strictly_quasi_unipotent, counts_k3, Kind, VHSProfile,
};
use crate::ode::PointId;

/// `h⁰(P¹, O(m))`.
pub fn h0_line(m: i64) -> i64 {
    (m + 1).max(0)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CokernelReport {
    pub index: usize,
    pub per_point: Vec<(PointId, i64)>,
    pub total: i64,
}

/// `deg 𝓔^{ℓ−i,i}` for `i = 0..=ℓ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeVector {
    pub degrees: Vec<i64>,
}

/// `(h^{ℓ+1,0}, …, h^{0,ℓ+1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeNumbers {
    pub numbers: Vec<i64>,
    pub total_rank: i64,
}

impl HodgeNumbers {
    pub fn is_palindromic(&self) -> bool {
        self.numbers.iter().eq(self.numbers.iter().rev())
    }

    pub fn top(&self) -> i64 {
        self.numbers[0]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeReport {
    pub degrees: DegreeVector,
    pub hodge: HodgeNumbers,
    pub cokernels: Vec<CokernelReport>,
    pub antisym_targets: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Kodaira–Spencer indices used by the engine: `0 ≤ i < (ℓ+1)/2`.
pub fn theta_indices(weight: usize) -> std::ops::Range<usize> {
    0..weight.div_ceil(2)
}

/// Length of the cokernel of `θ_i` at each point and in total.
pub fn cokernel_lengths(v: &VHSProfile, i: usize) -> Result<CokernelReport> {
    if i >= v.weight {
        return Err(Error::InvalidProfile(format!(
            "θ_{i} undefined in weight {}",
            v.weight
        )));
    }
    let mut per_point = Vec::new();
    let mut total = 0;
    for p in &v.points {
        let (lo, hi) = (&p.exponents[i], &p.exponents[i + 1]);
        let len = match p.kind {
            Kind::Nonsingular => 0,
            Kind::Apparent => {
                let len = to_i64(&(hi - lo)).expect("integer exponents") - 1;
                if len < 0 {
                    return Err(Error::NotAdmissible(format!(
                        "{}: μ_{} − μ_{} − 1 = {len}",
                        p.point,
                        i + 2,
                        i + 1
                    )));
                }
                len
            }
            Kind::Actual => floor_i64(hi) - floor_i64(lo),
        };
        total += p.orbit_size as i64 * len;
        per_point.push((p.point.clone(), len));
    }
    Ok(CokernelReport {
        index: i,
        per_point,
        total,
    })
}

/// Required values of `deg 𝓔^{ℓ−i,i} + deg 𝓔^{i,ℓ−i}` for `i ≤ ℓ−i`.
pub fn antisym_targets(v: &VHSProfile) -> Vec<BigRational> {
    let l = v.weight;
    (0..=l / 2)
        .map(|i| {
            -v.points.iter().fold(BigRational::zero(), |acc, p| {
                let w = frac(&p.exponents[i]) + frac(&p.exponents[l - i]);
                acc + w * rat(p.orbit_size as i64)
            })
        })
        .collect()
}

/// Solves `A x = b` exactly; `None` if `A` is singular.
fn solve_linear(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Degrees of the Hodge bundles from the Kodaira–Spencer equations
/// `deg 𝓔^{ℓ−1−i,1+i} + |Δ| − 2 = deg 𝓔^{ℓ−i,i} + C_i` and the
/// antisymmetry of parabolic degrees.
pub fn solve_degrees(v: &VHSProfile) -> Result<DegreeVector> {
    let l = v.weight;
    if !(1..=3).contains(&l) {
        return Err(Error::Unsupported(format!("weight {l}")));
    }
    let n = l + 1;
    let delta = v.actual_count();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in theta_indices(l) {
        let c = cokernel_lengths(v, i)?;
        let mut row = vec![BigRational::zero(); n];
        row[i + 1] = BigRational::one();
        row[i] = -BigRational::one();
        a.push(row);
        b.push(rat(c.total - (delta - 2)));
    }
    for (i, t) in antisym_targets(v).into_iter().enumerate() {
        let mut row = vec![BigRational::zero(); n];
        row[i] += BigRational::one();
        row[l - i] += BigRational::one();
        a.push(row);
        b.push(t);
    }
    let x = solve_linear(a, b)
        .ok_or_else(|| Error::InconsistentProfile("degenerate degree system".into()))?;
    let degrees = x
        .iter()
        .map(|d| {
            to_i64(d).ok_or_else(|| {
                Error::InconsistentProfile(format!("non-integer bundle degree {d}"))
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(DegreeVector { degrees })
}

/// `Σ_q R(q) + (2g − 2)·rank` with `g = 0`, where `R(q)` is the
/// codimension of the monodromy invariants at `q`.
pub fn total_rank(v: &VHSProfile) -> i64 {
    let r: i64 = v
        .points
        .iter()
        .filter(|p| p.is_actual())
        .map(|p| {
            p.orbit_size as i64
                * p.monodromy
                    .as_ref()
                    .map_or(0, |j| j.fixed_space_defect() as i64)
        })
        .sum();
    r - 2 * v.rank() as i64
}

fn not_vhs(msg: String) -> Error {
    Error::NotVhsOrigin(msg)
}

/// Hodge numbers from precomputed degrees.
pub fn hodge_numbers_from(v: &VHSProfile, d: &DegreeVector) -> Result<HodgeNumbers> {
    let l = v.weight;
    let e = &d.degrees;
    let total = total_rank(v);
    let outer = h0_line(-2 - e[l]);
    let numbers = match l {
        1 => vec![outer, total - 2 * outer, outer],
        2 => {
            let rem = total - 2 * outer;
            if rem % 2 != 0 {
                return Err(not_vhs(format!("odd middle sum {rem}")));
            }
            vec![outer, rem / 2, rem / 2, outer]
        }
        3 => {
            let (mut ii, mut iii, mut iv) = (0, 0, 0);
            for p in v.points.iter().filter(|p| p.is_actual()) {
                let c = classify_weight3(p);
                let o = p.orbit_size as i64;
                ii += o * c.in_ii as i64;
                iii += o * c.in_iii as i64;
                iv += o * c.in_iv as i64;
            }
            let h13 = -2 + e[1] - e[0] + ii + iii + iv;
            let h22 = total - 2 * outer - 2 * h13;
            vec![outer, h13, h22, h13, outer]
        }
        _ => return Err(Error::Unsupported(format!("weight {l}"))),
    };
    if numbers.iter().any(|&h| h < 0) {
        return Err(not_vhs(format!("negative Hodge number in {numbers:?}")));
    }
    Ok(HodgeNumbers {
        numbers,
        total_rank: total,
    })
}

pub fn hodge_numbers(v: &VHSProfile) -> Result<HodgeNumbers> {
    hodge_numbers_from(v, &solve_degrees(v)?)
}

/// Degrees, Hodge numbers and the intermediate data in one pass.
pub fn analyze(v: &VHSProfile) -> Result<HodgeReport> {
    let degrees = solve_degrees(v)?;
    let hodge = hodge_numbers_from(v, &degrees)?;
    let cokernels = theta_indices(v.weight)
        .map(|i| cokernel_lengths(v, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeReport {
        degrees,
        hodge,
        cokernels,
        antisym_targets: antisym_targets(v),
    })
}

/// `(Σ_Δ orbit·(⌊μ₂⌋ − ⌊μ₁⌋ − 1), Σ_{Δ_a} orbit·(μ₂ − μ₁ − 1))`.
fn first_gap_sums(v: &VHSProfile) -> (BigRational, BigRational) {
    let mut actual = BigRational::zero();
    let mut apparent = BigRational::zero();
    for p in &v.points {
        let o = rat(p.orbit_size as i64);
        let (lo, hi) = (&p.exponents[0], &p.exponents[1]);
        match p.kind {
            Kind::Actual => actual += o * rat(floor_i64(hi) - floor_i64(lo) - 1),
            Kind::Apparent => apparent += o * (hi - lo - BigRational::one()),
            Kind::Nonsingular => {}
        }
    }
    (actual, apparent)
}

fn integral(x: BigRational, what: &str) -> Result<i64> {
    if is_integer(&x) {
        Ok(to_i64(&x).expect("fits"))
    } else {
        Err(Error::InconsistentProfile(format!("{what} = {x}")))
    }
}

/// `deg 𝓔^{0,1} = ½(2 − a_L + Σ_Δ(⌊μ₂⌋−⌊μ₁⌋−1) + Σ_{Δ_a}(μ₂−μ₁−1))`.
pub fn elliptic_degree_formula(v: &VHSProfile) -> Result<i64> {
    if v.weight != 1 {
        return Err(Error::Unsupported("elliptic formula needs weight 1".into()));
    }
    let a_l = rat(count_strictly_quasi_unipotent(v));
    let (s_act, s_app) = first_gap_sums(v);
    integral((rat(2) - a_l + s_act + s_app) / rat(2), "deg E^{0,1}")
}

/// `deg 𝓔^{0,2} = 2 + ½a_{1/2} − a_f + Σ_Δ(⌊μ₂⌋−⌊μ₁⌋−1) + Σ_{Δ_a}(μ₂−μ₁−1)`.
pub fn k3_degree_formula(v: &VHSProfile) -> Result<i64> {
    if v.weight != 2 {
        return Err(Error::Unsupported("K3 formula needs weight 2".into()));
    }
    let c = counts_k3(v)?;
    let (s_act, s_app) = first_gap_sums(v);
    let x = rat(2) + rat(c.a_half) / rat(2) - rat(c.a_f) + s_act + s_app;
    integral(x, "deg E^{0,2}")
}

/// `D_g = a_f − 4 − ½a_{1/2} − Σ_{Δ_a}(μ₂−μ₁−1) − Σ_Δ(⌊μ₂⌋−⌊μ₁⌋−1)` on a
/// weight-2 profile, so that `h^{0,3} = h⁰(O(D_g))`.
pub fn quartic_dg_from_profile(v: &VHSProfile) -> Result<i64> {
    Ok(-2 - k3_degree_formula(v)?)
}

/// `D_g = a_f − 2 + Σ⌊y_i/4⌋` with `a_f = #{i : 4 ∤ y_i}` for a cover of the
/// mirror quartic family with profile `ys` over ∞.
pub fn quartic_dg(ys: &[u32]) -> i64 {
    let a_f = ys.iter().filter(|&&y| y % 4 != 0).count() as i64;
    a_f - 2 + ys.iter().map(|&y| (y / 4) as i64).sum::<i64>()
}

/// `(deg 𝓔^{3,0}, deg 𝓔^{2,1})` for a degree-`d` cover of the mirror
/// quintic family with profile `ys` over ∞.
pub fn quintic_degree_formulas(ys: &[u32], d: u32) -> Result<(i64, i64)> {
    let l0 = ys.iter().filter(|&&y| y % 5 != 0).count() as i64;
    let f = |y: u32, k: u32| (k * y / 5) as i64;
    let s32: i64 = ys.iter().map(|&y| f(y, 3) - f(y, 2)).sum();
    let s21: i64 = ys.iter().map(|&y| f(y, 2) - f(y, 1)).sum();
    let twice_b = d as i64 - l0 - s32;
    if twice_b % 2 != 0 {
        return Err(Error::InconsistentProfile(format!(
            "deg E^{{2,1}} = {twice_b}/2"
        )));
    }
    let b = twice_b / 2;
    Ok((b - s21, b))
}

/// `−deg 𝓔^{1,0} − deg 𝓔^{0,1}` should be `a_L`.
pub fn elliptic_degree_sum_defect(v: &VHSProfile, d: &DegreeVector) -> i64 {
    -(d.degrees[0] + d.degrees[1]) - count_strictly_quasi_unipotent(v)
}
