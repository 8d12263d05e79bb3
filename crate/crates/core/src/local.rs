//! Local data of a (1,…,1)-type variation at each point: exponents,
//! singularity kind, Jordan-type monodromy, parabolic weights, and the
//! classification of elliptic, K3 and weight-3 degenerations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{frac, is_integer, q};
use crate::error::{Error, Result};
use crate::ode::{PointId, RiemannScheme};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    Nonsingular,
    Apparent,
    Actual,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Nonsingular => "NONSINGULAR",
            Kind::Apparent => "APPARENT",
            Kind::Actual => "ACTUAL",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s.to_ascii_uppercase().as_str() {
            "NONSINGULAR" => Some(Kind::Nonsingular),
            "APPARENT" => Some(Kind::Apparent),
            "ACTUAL" => Some(Kind::Actual),
            _ => None,
        }
    }
}

/// One Jordan block with eigenvalue `exp(2πi·alpha)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct JordanBlock {
    pub alpha: BigRational,
    pub size: usize,
}

/// Conjugacy class of a quasi-unipotent matrix as a multiset of blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JordanType {
    blocks: Vec<JordanBlock>,
}

impl JordanType {
    /// Reduces alphas mod 1 and sorts the blocks. Panics on a zero size.
    pub fn new(blocks: impl IntoIterator<Item = (BigRational, usize)>) -> Self {
        let mut blocks: Vec<JordanBlock> = blocks
            .into_iter()
            .map(|(a, s)| {
                assert!(s > 0, "Jordan block of size zero");
                JordanBlock {
                    alpha: frac(&a),
                    size: s,
                }
            })
            .collect();
        blocks.sort();
        JordanType { blocks }
    }

    pub fn diagonal(alphas: impl IntoIterator<Item = BigRational>) -> Self {
        Self::new(alphas.into_iter().map(|a| (a, 1)))
    }

    pub fn unipotent_block(size: usize) -> Self {
        Self::new([(BigRational::zero(), size)])
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.alpha.is_zero() && b.size == 1)
    }

    /// Some eigenvalue differs from 1.
    pub fn is_strictly_quasi_unipotent(&self) -> bool {
        self.blocks.iter().any(|b| !b.alpha.is_zero())
    }

    /// Eigenvalue fractions repeated by block size, sorted.
    pub fn alpha_multiset(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self
            .blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.alpha.clone(), b.size))
            .collect();
        v.sort();
        v
    }

    /// Rank minus the number of blocks with eigenvalue 1.
    pub fn fixed_space_defect(&self) -> usize {
        self.rank() - self.blocks.iter().filter(|b| b.alpha.is_zero()).count()
    }

    /// `T ↦ T^e`: every block keeps its size and its alpha is multiplied.
    pub fn power(&self, e: u32) -> Self {
        let k = BigRational::from_integer(BigInt::from(e));
        Self::new(self.blocks.iter().map(|b| (&b.alpha * &k, b.size)))
    }
}

/// Power of a Jordan type (see [`JordanType::power`]).
pub fn jordan_power(j: &JordanType, e: u32) -> JordanType {
    j.power(e)
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{}^{}", b.alpha, b.size))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalData {
    pub point: PointId,
    pub orbit_size: usize,
    pub exponents: Vec<BigRational>,
    pub kind: Kind,
    pub monodromy: Option<JordanType>,
}

impl LocalData {
    /// Sorts the exponents and checks the kind against them.
    pub fn new(
        point: PointId,
        orbit_size: usize,
        mut exponents: Vec<BigRational>,
        kind: Kind,
        monodromy: Option<JordanType>,
    ) -> Result<Self> {
        exponents.sort();
        let bad = |msg: String| Error::InvalidProfile(format!("{point}: {msg}"));
        if orbit_size == 0 {
            return Err(bad("orbit size must be positive".into()));
        }
        match kind {
            Kind::Apparent | Kind::Nonsingular => {
                if !exponents.iter().all(is_integer) {
                    return Err(bad(format!(
                        "{} point with non-integer exponents",
                        kind.as_str()
                    )));
                }
            }
            Kind::Actual => {}
        }
        if let Some(j) = &monodromy {
            if j.rank() != exponents.len() {
                return Err(bad(format!(
                    "monodromy rank {} ≠ {} exponents",
                    j.rank(),
                    exponents.len()
                )));
            }
            let mut fr: Vec<BigRational> = exponents.iter().map(frac).collect();
            fr.sort();
            if fr != j.alpha_multiset() {
                return Err(bad(format!(
                    "exponent fractions do not match monodromy {j}"
                )));
            }
        }
        Ok(LocalData {
            point,
            orbit_size,
            exponents,
            kind,
            monodromy,
        })
    }

    /// `frac(μ_{i+1})`, the weight of `𝓔^{ℓ−i,i}` here.
    pub fn parabolic_weight(&self, i: usize) -> BigRational {
        frac(&self.exponents[i])
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.exponents.iter().map(frac).collect()
    }

    pub fn is_actual(&self) -> bool {
        self.kind == Kind::Actual
    }

    /// Same data with every exponent shifted by an integer.
    pub fn shifted(&self, k: i64) -> Self {
        let s = BigRational::from_integer(BigInt::from(k));
        LocalData {
            exponents: self.exponents.iter().map(|e| e + &s).collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VHSProfile {
    pub weight: usize,
    pub points: Vec<LocalData>,
}

impl VHSProfile {
    /// Checks lengths, requires an ACTUAL point, and requires a monodromy
    /// annotation at every ACTUAL point.
    pub fn new(weight: usize, points: Vec<LocalData>) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidProfile("weight must be positive".into()));
        }
        for p in &points {
            if p.exponents.len() != weight + 1 {
                return Err(Error::InvalidProfile(format!(
                    "{}: {} exponents for weight {}",
                    p.point,
                    p.exponents.len(),
                    weight
                )));
            }
        }
        let missing: Vec<String> = points
            .iter()
            .filter(|p| p.is_actual() && p.monodromy.is_none())
            .map(|p| p.point.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingAnnotation(missing));
        }
        if !points.iter().any(|p| p.is_actual()) {
            return Err(Error::InvalidProfile("no ACTUAL point".into()));
        }
        Ok(VHSProfile { weight, points })
    }

    pub fn rank(&self) -> usize {
        self.weight + 1
    }

    pub fn point(&self, p: &PointId) -> Option<&LocalData> {
        self.points.iter().find(|d| &d.point == p)
    }

    /// Orbit-weighted number of ACTUAL points.
    pub fn actual_count(&self) -> i64 {
        self.points
            .iter()
            .filter(|p| p.is_actual())
            .map(|p| p.orbit_size as i64)
            .sum()
    }

    /// Retags APPARENT points with integer exponents and identity
    /// monodromy as ACTUAL, keeping them in the singular set.
    pub fn with_apparent_as_actual(&self, which: impl Fn(&PointId) -> bool) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                if p.kind == Kind::Apparent && which(&p.point) {
                    let j = JordanType::diagonal(vec![BigRational::zero(); p.exponents.len()]);
                    LocalData {
                        kind: Kind::Actual,
                        monodromy: Some(j),
                        ..p.clone()
                    }
                } else {
                    p.clone()
                }
            })
            .collect();
        VHSProfile {
            weight: self.weight,
            points,
        }
    }

    /// Builds a profile from a Riemann scheme and per-point annotations.
    /// Every row needs an annotation; unannotated rows are reported.
    pub fn from_scheme(
        scheme: &RiemannScheme,
        annotations: &BTreeMap<PointId, (Kind, Option<JordanType>)>,
    ) -> Result<Self> {
        let mut missing = Vec::new();
        let mut points = Vec::new();
        for row in &scheme.rows {
            match annotations.get(&row.point) {
                Some((kind, j)) => points.push(LocalData::new(
                    row.point.clone(),
                    row.orbit_size,
                    row.exponents.clone(),
                    *kind,
                    j.clone(),
                )?),
                None => missing.push(row.point.to_string()),
            }
        }
        if !missing.is_empty() {
            return Err(Error::MissingAnnotation(missing));
        }
        Self::new(scheme.order - 1, points)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KodairaClass {
    In,
    InStar,
    IIOrIIStar,
    IIIOrIIIStar,
    IVOrIVStar,
}

impl KodairaClass {
    pub const ALL: [KodairaClass; 5] = [
        KodairaClass::In,
        KodairaClass::InStar,
        KodairaClass::IIOrIIStar,
        KodairaClass::IIIOrIIIStar,
        KodairaClass::IVOrIVStar,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            KodairaClass::In => "I_n",
            KodairaClass::InStar => "I_n*",
            KodairaClass::IIOrIIStar => "II or II*",
            KodairaClass::IIIOrIIIStar => "III or III*",
            KodairaClass::IVOrIVStar => "IV or IV*",
        }
    }

    /// Weights of `(𝓔^{1,0}, 𝓔^{0,1})`.
    pub fn table_weights(&self) -> [BigRational; 2] {
        match self {
            KodairaClass::In => [q(0, 1), q(0, 1)],
            KodairaClass::InStar => [q(1, 2), q(1, 2)],
            KodairaClass::IIOrIIStar => [q(1, 6), q(5, 6)],
            KodairaClass::IIIOrIIIStar => [q(1, 4), q(3, 4)],
            KodairaClass::IVOrIVStar => [q(1, 3), q(2, 3)],
        }
    }
}

fn weights_string(w: &[BigRational]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Kodaira class of an ACTUAL point of a weight-1 profile.
pub fn classify_elliptic(d: &LocalData) -> Result<KodairaClass> {
    let w = d.weights();
    let not_elliptic = || Error::NotElliptic(weights_string(&w));
    if w.len() != 2 || d.kind != Kind::Actual {
        return Err(not_elliptic());
    }
    let mut sorted = w.clone();
    sorted.sort();
    let found = KodairaClass::ALL
        .into_iter()
        .find(|c| c.table_weights().to_vec() == sorted)
        .ok_or_else(not_elliptic)?;
    if found == KodairaClass::In && d.monodromy.as_ref().is_some_and(|j| j.is_identity()) {
        return Err(not_elliptic());
    }
    Ok(found)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum K3Class {
    Tun,
    Tun2,
    Ti,
    MinusTi,
    Ti2,
    Tomega,
    Tomega2,
    Tnod,
}

impl K3Class {
    pub const ALL: [K3Class; 8] = [
        K3Class::Tun,
        K3Class::Tun2,
        K3Class::Ti,
        K3Class::MinusTi,
        K3Class::Ti2,
        K3Class::Tomega,
        K3Class::Tomega2,
        K3Class::Tnod,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            K3Class::Tun => "T_un",
            K3Class::Tun2 => "T_un^2",
            K3Class::Ti => "T_i",
            K3Class::MinusTi => "-T_i",
            K3Class::Ti2 => "T_i^2",
            K3Class::Tomega => "T_omega",
            K3Class::Tomega2 => "T_omega^2",
            K3Class::Tnod => "T_nod",
        }
    }

    /// Weights of `(𝓔^{2,0}, 𝓔^{1,1}, 𝓔^{0,2})`.
    pub fn table_weights(&self) -> [BigRational; 3] {
        let h = q(1, 2);
        let z = q(0, 1);
        match self {
            K3Class::Tun => [h.clone(), h.clone(), h],
            K3Class::Tun2 => [z.clone(), z.clone(), z],
            K3Class::Ti => [q(1, 4), h, q(3, 4)],
            K3Class::MinusTi => [q(1, 4), z, q(3, 4)],
            K3Class::Ti2 => [h.clone(), z, h],
            K3Class::Tomega => [q(1, 6), h, q(5, 6)],
            K3Class::Tomega2 => [q(1, 3), z, q(2, 3)],
            K3Class::Tnod => [z.clone(), h, z],
        }
    }

    /// Jordan type of the local monodromy.
    pub fn jordan(&self) -> JordanType {
        match self {
            K3Class::Tun => JordanType::new([(q(1, 2), 3)]),
            K3Class::Tun2 => JordanType::unipotent_block(3),
            other => JordanType::diagonal(other.table_weights()),
        }
    }

    /// Sample sorted exponents realizing the table weights in order.
    pub fn sample_exponents(&self) -> [BigRational; 3] {
        let [a, b, c] = self.table_weights();
        let one = q(1, 1);
        let mut prev = a.clone();
        let next = |w: BigRational, prev: &BigRational| {
            let mut x = w;
            while &x < prev {
                x += &one;
            }
            x
        };
        let b2 = next(b, &prev);
        prev = b2.clone();
        let c2 = next(c, &prev);
        [a, b2, c2]
    }

    pub fn in_a_half(&self) -> bool {
        matches!(
            self,
            K3Class::Tun | K3Class::Ti | K3Class::Tomega | K3Class::Tnod
        )
    }

    pub fn in_a_f(&self) -> bool {
        !matches!(self, K3Class::Tun2 | K3Class::Tnod)
    }
}

/// K3 class of an ACTUAL point of a weight-2 profile, read off the Jordan
/// type (eigenvalue fractions together with block sizes).
pub fn classify_k3(d: &LocalData) -> Result<K3Class> {
    let unmatched = || Error::UnmatchedK3(weights_string(&d.weights()));
    if d.exponents.len() != 3 || d.kind != Kind::Actual {
        return Err(unmatched());
    }
    let j = d.monodromy.as_ref().ok_or_else(unmatched)?;
    K3Class::ALL
        .into_iter()
        .find(|c| &c.jordan() == j)
        .ok_or_else(unmatched)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Weight3Class {
    pub in_ii: bool,
    pub in_iii: bool,
    pub in_iv: bool,
}

/// Weight-3 class of an annotated point; an unannotated point has trivial
/// monodromy and lies in none of the classes.
pub fn classify_weight3(d: &LocalData) -> Weight3Class {
    d.monodromy
        .as_ref()
        .map(weight3_class_of)
        .unwrap_or_default()
}

/// II: one unipotent 4-block. III: two unipotent 2-blocks. IV: some
/// eigenvalue ≠ 1.
pub fn weight3_class_of(j: &JordanType) -> Weight3Class {
    let unipotent_sizes: Vec<usize> = j
        .blocks()
        .iter()
        .filter(|b| b.alpha.is_zero())
        .map(|b| b.size)
        .collect();
    let all_unipotent = unipotent_sizes.len() == j.blocks().len();
    Weight3Class {
        in_ii: all_unipotent && unipotent_sizes == [4],
        in_iii: all_unipotent && unipotent_sizes == [2, 2],
        in_iv: j.is_strictly_quasi_unipotent(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct K3Counts {
    pub a_half: i64,
    pub a_f: i64,
}

/// `(a_{1/2}, a_f)` from the K3 classes of the ACTUAL points.
pub fn counts_k3(v: &VHSProfile) -> Result<K3Counts> {
    let mut c = K3Counts { a_half: 0, a_f: 0 };
    for p in v.points.iter().filter(|p| p.is_actual()) {
        let class = classify_k3(p)?;
        let o = p.orbit_size as i64;
        if class.in_a_half() {
            c.a_half += o;
        }
        if class.in_a_f() {
            c.a_f += o;
        }
    }
    Ok(c)
}

/// `(a_{1/2}, a_f)` read from exponents: `frac(μ_2) = 1/2` and
/// `frac(μ_1) ≠ 0` respectively, over ACTUAL points.
pub fn counts_k3_from_exponents(v: &VHSProfile) -> K3Counts {
    let mut c = K3Counts { a_half: 0, a_f: 0 };
    for p in v.points.iter().filter(|p| p.is_actual()) {
        let o = p.orbit_size as i64;
        if p.parabolic_weight(1) == q(1, 2) {
            c.a_half += o;
        }
        if !p.parabolic_weight(0).is_zero() {
            c.a_f += o;
        }
    }
    c
}

/// Orbit-weighted number of ACTUAL points with an eigenvalue ≠ 1.
pub fn count_strictly_quasi_unipotent(v: &VHSProfile) -> i64 {
    v.points
        .iter()
        .filter(|p| p.is_actual())
        .filter(|p| {
            p.monodromy
                .as_ref()
                .is_some_and(|j| j.is_strictly_quasi_unipotent())
        })
        .map(|p| p.orbit_size as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use proptest::prelude::*;

    fn actual(exps: &[BigRational], j: JordanType) -> LocalData {
        LocalData::new(
            PointId::Finite(qi(0)),
            1,
            exps.to_vec(),
            Kind::Actual,
            Some(j),
        )
        .unwrap()
    }

    #[test]
    fn weights_follow_sorted_exponents() {
        let d = actual(&[q(1, 4), q(1, 2), q(3, 4)], K3Class::Ti.jordan());
        assert_eq!(d.weights(), vec![q(1, 4), q(1, 2), q(3, 4)]);
        let e = actual(&[q(1, 3), q(2, 3)], JordanType::diagonal([q(1, 3), q(2, 3)]));
        assert_eq!(e.parabolic_weight(0), q(1, 3));
        assert_eq!(e.parabolic_weight(1), q(2, 3));
        let ints = LocalData::new(PointId::Infinity, 1, vec![qi(0), qi(3)], Kind::Apparent, None).unwrap();
        assert!(ints.weights().iter().all(|w| w.is_zero()));
    }

    #[test]
    fn defects() {
        assert_eq!(JordanType::unipotent_block(4).fixed_space_defect(), 3);
        let t1 = JordanType::new([(qi(0), 2), (qi(0), 1), (qi(0), 1)]);
        assert_eq!(t1.fixed_space_defect(), 1);
        assert_eq!(JordanType::diagonal(vec![q(1, 2); 4]).fixed_space_defect(), 4);
    }

    #[test]
    fn elliptic_classes() {
        let iv = actual(&[q(1, 3), q(2, 3)], JordanType::diagonal([q(1, 3), q(2, 3)]));
        assert_eq!(classify_elliptic(&iv).unwrap(), KodairaClass::IVOrIVStar);
        let i_n = actual(&[qi(0), qi(0)], JordanType::unipotent_block(2));
        assert_eq!(classify_elliptic(&i_n).unwrap(), KodairaClass::In);
        let bad = actual(&[q(1, 3), q(1, 2)], JordanType::diagonal([q(1, 3), q(1, 2)]));
        assert!(matches!(classify_elliptic(&bad), Err(Error::NotElliptic(_))));
    }

    #[test]
    fn k3_classes() {
        let tun = actual(&vec![q(1, 2); 3], K3Class::Tun.jordan());
        assert_eq!(classify_k3(&tun).unwrap(), K3Class::Tun);
        let mti = actual(&[q(1, 4), qi(1), q(7, 4)], JordanType::diagonal([q(1, 4), qi(0), q(3, 4)]));
        assert_eq!(classify_k3(&mti).unwrap(), K3Class::MinusTi);
        let nod = actual(&[qi(0), q(1, 2), qi(1)], JordanType::diagonal([qi(0), q(1, 2), qi(0)]));
        assert_eq!(classify_k3(&nod).unwrap(), K3Class::Tnod);
        let odd = actual(&[qi(0), qi(0), qi(0)], JordanType::new([(qi(0), 2), (qi(0), 1)]));
        assert!(matches!(classify_k3(&odd), Err(Error::UnmatchedK3(_))));
    }

    #[test]
    fn k3_table_round_trip() {
        for c in K3Class::ALL {
            let d = actual(&c.sample_exponents(), c.jordan());
            assert_eq!(classify_k3(&d).unwrap(), c);
            assert_eq!(d.weights(), c.table_weights().to_vec());
        }
    }

    #[test]
    fn weight3_classes() {
        let t0 = weight3_class_of(&JordanType::unipotent_block(4));
        assert!(t0.in_ii && !t0.in_iii && !t0.in_iv);
        let t1 = weight3_class_of(&JordanType::new([(qi(0), 2), (qi(0), 1), (qi(0), 1)]));
        assert_eq!(t1, Weight3Class::default());
        let minus_id = weight3_class_of(&JordanType::diagonal(vec![q(1, 2); 4]));
        assert!(minus_id.in_iv && !minus_id.in_ii && !minus_id.in_iii);
        let iii = weight3_class_of(&JordanType::new([(qi(0), 2), (qi(0), 2)]));
        assert!(iii.in_iii);
    }

    #[test]
    fn jordan_powers() {
        let t_inf = JordanType::diagonal([q(1, 10), q(3, 10), q(7, 10), q(9, 10)]);
        assert_eq!(t_inf.power(5), JordanType::diagonal(vec![q(1, 2); 4]));
        assert_eq!(t_inf.power(1), t_inf);
        assert!(K3Class::Tnod.jordan().power(2).is_identity());
        assert!(!K3Class::Tun.jordan().power(2).is_identity());
    }

    #[test]
    fn annotation_must_match_exponents() {
        let r = LocalData::new(
            PointId::Infinity,
            1,
            vec![q(1, 3), q(2, 3)],
            Kind::Actual,
            Some(JordanType::diagonal([q(1, 4), q(3, 4)])),
        );
        assert!(matches!(r, Err(Error::InvalidProfile(_))));
        let r = LocalData::new(PointId::Infinity, 1, vec![q(1, 3), qi(1)], Kind::Apparent, None);
        assert!(r.is_err());
    }

    fn arb_jordan() -> impl Strategy<Value = Vec<(i64, usize)>> {
        prop::collection::vec((0i64..12, 1usize..4), 1..5)
    }

    proptest! {
        #[test]
        fn defect_invariant_under_block_permutation(blocks in arb_jordan(), seed in any::<u64>()) {
            let as_blocks: Vec<(BigRational, usize)> =
                blocks.iter().map(|&(a, s)| (q(a, 12), s)).collect();
            let mut shuffled = as_blocks.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.reverse();
            prop_assert_eq!(
                JordanType::new(as_blocks).fixed_space_defect(),
                JordanType::new(shuffled).fixed_space_defect()
            );
        }
    }
}
