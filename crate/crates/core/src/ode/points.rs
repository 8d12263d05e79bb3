use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::arith::{parse_rational, UniPoly};
use crate::error::{Error, Result};

/// A point of the projective line, or a labelled point on a cover of it.
///
/// `Closed` stands for the Galois orbit of roots of a squarefree polynomial
/// without rational roots. `Over` and `Free` label points of a cover: the
/// preimages of a base point with a given ramification index, and the
/// ramification points lying over nonsingular base points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PointId {
    Finite(BigRational),
    Infinity,
    Closed(UniPoly),
    Over { base: Box<PointId>, e: u32 },
    Free { e: u32 },
}

impl PointId {
    pub fn finite(a: BigRational) -> Self {
        PointId::Finite(a)
    }

    /// Points over `base` with index `e`; nested labels flatten with the
    /// indices multiplied.
    pub fn over(base: &PointId, e: u32) -> Self {
        match base {
            PointId::Over { base: b, e: e0 } => PointId::Over {
                base: b.clone(),
                e: e0 * e,
            },
            PointId::Free { e: e0 } => PointId::Free { e: e0 * e },
            other => PointId::Over {
                base: Box::new(other.clone()),
                e,
            },
        }
    }

    /// Number of geometric points this label stands for on its own.
    pub fn inherent_orbit(&self) -> usize {
        match self {
            PointId::Closed(q) => q.degree().unwrap_or(1),
            _ => 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            PointId::Finite(_) => 0,
            PointId::Closed(_) => 1,
            PointId::Infinity => 2,
            PointId::Over { .. } => 3,
            PointId::Free { .. } => 4,
        }
    }
}

impl Ord for PointId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PointId::Finite(a), PointId::Finite(b)) => a.cmp(b),
            (PointId::Closed(a), PointId::Closed(b)) => a.cmp(b),
            (PointId::Over { base: a, e: x }, PointId::Over { base: b, e: y }) => {
                a.cmp(b).then(x.cmp(y))
            }
            (PointId::Free { e: x }, PointId::Free { e: y }) => x.cmp(y),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for PointId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointId::Finite(a) => write!(f, "{a}"),
            PointId::Infinity => f.write_str("inf"),
            PointId::Closed(q) => write!(f, "{q}"),
            PointId::Over { base, e } => write!(f, "over({base},e={e})"),
            PointId::Free { e } => write!(f, "free(e={e})"),
        }
    }
}

fn parse_label_index(s: &str) -> Option<u32> {
    s.trim().strip_prefix("e=")?.trim().parse().ok()
}

impl FromStr for PointId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "infinity" | "∞" => return Ok(PointId::Infinity),
            _ => {}
        }
        if let Some(r) = parse_rational(s) {
            return Ok(PointId::Finite(r));
        }
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg}: {s:?}"),
        };
        if let Some(inner) = s.strip_prefix("free(").and_then(|r| r.strip_suffix(')')) {
            let e = parse_label_index(inner).ok_or_else(|| bad("bad free point"))?;
            return Ok(PointId::Free { e });
        }
        if let Some(inner) = s.strip_prefix("over(").and_then(|r| r.strip_suffix(')')) {
            let (base, idx) = inner.rsplit_once(',').ok_or_else(|| bad("bad cover point"))?;
            let e = parse_label_index(idx).ok_or_else(|| bad("bad cover point"))?;
            let base: PointId = base.parse()?;
            return Ok(PointId::over(&base, e));
        }
        let poly = super::parse::parse_polynomial(s)?;
        closed_point(poly)
    }
}

/// Validates a closed-point modulus: squarefree, degree at least 2 and free
/// of rational roots. Degree-one input becomes a rational point.
pub fn closed_point(poly: UniPoly) -> Result<PointId> {
    let bad = |msg: String| Error::Syntax { pos: 0, msg };
    match poly.degree() {
        None | Some(0) => Err(bad(format!("constant polynomial {poly} is not a point"))),
        Some(1) => {
            let m = poly.monic();
            Ok(PointId::Finite(-m.coeff(0)))
        }
        Some(_) => {
            if !poly.is_squarefree() {
                return Err(bad(format!("closed point {poly} is not squarefree")));
            }
            let (roots, _) = poly.rational_roots();
            if !roots.is_empty() {
                return Err(bad(format!("closed point {poly} has rational roots")));
            }
            Ok(PointId::Closed(poly.monic()))
        }
    }
}
