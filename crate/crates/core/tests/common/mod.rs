#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use pfhodge::arith::{q, qi};
use pfhodge::enumerate::CyFamily;
use pfhodge::local::{K3Class, KodairaClass};
use pfhodge::{CoverSpec, JordanType, Kind, LocalData, PointId, VHSProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_partition(rng: &mut ChaCha8Rng, d: u32) -> Vec<u32> {
    let mut left = d;
    let mut parts = Vec::new();
    while left > 0 {
        let y = rng.gen_range(1..=left);
        parts.push(y);
        left -= y;
    }
    parts.sort_unstable();
    parts
}

/// A degree `2..=dmax` cover with random profiles over 0, the conifold
/// point and ∞, completed with simple free ramification.
pub fn random_cover(rng: &mut ChaCha8Rng, fam: CyFamily, dmax: u32) -> CoverSpec {
    loop {
        let d = rng.gen_range(2..=dmax);
        let mut branch = BTreeMap::new();
        branch.insert(PointId::Finite(qi(0)), random_partition(rng, d));
        branch.insert(fam.conifold(), random_partition(rng, d));
        branch.insert(PointId::Infinity, random_partition(rng, d));
        if let Ok(c) = CoverSpec::completed(d, branch) {
            return c;
        }
    }
}

/// Exponents `w_i + s_i` with `0 = s_0 ≤ s_1 ≤ …`, keeping the order of `w`.
fn shifted(rng: &mut ChaCha8Rng, w: &[BigRational]) -> Vec<BigRational> {
    let mut s = 0;
    let mut out = Vec::new();
    for (i, x) in w.iter().enumerate() {
        if i > 0 {
            s += rng.gen_range(0..3);
        }
        let mut y = x + qi(s);
        if let Some(prev) = out.last() {
            while &y < prev {
                y += qi(1);
            }
        }
        out.push(y);
    }
    out
}

fn apparent(rng: &mut ChaCha8Rng, at: i64, rank: usize) -> LocalData {
    let mut e = 0;
    let exps = (0..rank)
        .map(|i| {
            if i > 0 {
                e += rng.gen_range(1..5);
            }
            qi(e)
        })
        .collect();
    LocalData::new(PointId::Finite(qi(at)), rng.gen_range(1..=2), exps, Kind::Apparent, None).unwrap()
}

pub fn random_elliptic_profile(rng: &mut ChaCha8Rng) -> VHSProfile {
    let n = rng.gen_range(1..=8);
    let mut points = Vec::new();
    for i in 0..n {
        let class = KodairaClass::ALL[rng.gen_range(0..5)];
        let w = class.table_weights();
        let j = match class {
            KodairaClass::In => JordanType::unipotent_block(2),
            KodairaClass::InStar if rng.gen_bool(0.5) => JordanType::new([(q(1, 2), 2)]),
            _ => JordanType::diagonal(w.clone()),
        };
        let exps = shifted(rng, &w);
        points.push(
            LocalData::new(PointId::Finite(qi(i)), rng.gen_range(1..=2), exps, Kind::Actual, Some(j))
                .unwrap(),
        );
    }
    for i in 0..rng.gen_range(0..=3) {
        points.push(apparent(rng, 100 + i, 2));
    }
    VHSProfile::new(1, points).unwrap()
}

pub fn random_k3_profile(rng: &mut ChaCha8Rng) -> VHSProfile {
    let n = rng.gen_range(1..=8);
    let mut points = Vec::new();
    for i in 0..n {
        let class = K3Class::ALL[rng.gen_range(0..8)];
        let exps = shifted(rng, &class.sample_exponents());
        points.push(
            LocalData::new(
                PointId::Finite(qi(i)),
                rng.gen_range(1..=2),
                exps,
                Kind::Actual,
                Some(class.jordan()),
            )
            .unwrap(),
        );
    }
    for i in 0..rng.gen_range(0..=3) {
        points.push(apparent(rng, 100 + i, 3));
    }
    VHSProfile::new(2, points).unwrap()
}

/// Adds `k` to every exponent at the `idx`-th point.
pub fn shift_point(v: &VHSProfile, idx: usize, k: i64) -> VHSProfile {
    let mut w = v.clone();
    w.points[idx] = w.points[idx].shifted(k);
    w
}
