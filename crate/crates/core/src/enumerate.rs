//! Search for ramification profiles over ∞ whose pulled-back family has a
//! prescribed top Hodge number, and a randomized check that the answer does
//! not depend on the ramification elsewhere.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::qi;
use crate::cover::{pullback_profile, CoverSpec};
use crate::datasets::family;
use crate::error::{Error, Result};
use crate::hodge::{hodge_numbers, quartic_dg, quintic_degree_formulas};
use crate::local::VHSProfile;
use crate::ode::PointId;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CyFamily {
    Quintic,
    Quartic,
}

impl CyFamily {
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "quintic" | "dm1" => Ok(CyFamily::Quintic),
            "quartic" => Ok(CyFamily::Quartic),
            other => Err(Error::Unsupported(format!(
                "enumeration is defined for quintic and quartic, not {other}"
            ))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            CyFamily::Quintic => "quintic",
            CyFamily::Quartic => "quartic",
        }
    }

    /// The finite nonzero singular point of the family.
    pub fn conifold(&self) -> PointId {
        match self {
            CyFamily::Quintic => PointId::Finite(qi(1)),
            CyFamily::Quartic => PointId::Finite(qi(-1)),
        }
    }

    /// Contribution of one part `y` over ∞ to `1 + h^{top,0}` (before
    /// truncation at zero), read off the closed-form degree formulas.
    pub fn part_contribution(&self, y: u32) -> i64 {
        match self {
            CyFamily::Quintic => {
                let (a, _) = quintic_degree_formulas(&[y], y).expect("integral");
                a + i64::from(!y.is_multiple_of(5))
            }
            CyFamily::Quartic => quartic_dg(&[y]) + 2,
        }
    }

    /// `h^{top,0}` predicted by the closed forms for a profile over ∞.
    pub fn predicted_top(&self, ys: &[u32]) -> i64 {
        (ys.iter().map(|&y| self.part_contribution(y)).sum::<i64>() - 1).max(0)
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub family: CyFamily,
    pub max_part: u32,
    pub max_parts: usize,
    pub target: i64,
}

impl SearchConfig {
    pub fn new(family: CyFamily) -> Self {
        SearchConfig {
            family,
            max_part: 50,
            max_parts: 50,
            target: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Nondecreasing partitions in lexicographic order.
    pub partitions: Vec<Vec<u32>>,
    pub certified: bool,
    pub warning: Option<String>,
}

const CERTIFY_WINDOW: u32 = 200;

/// The cover `0: [d]`, conifold: `[1^d]`, `∞: ys`, completed by simple free
/// ramification.
pub fn standard_cover(fam: CyFamily, ys: &[u32]) -> Result<CoverSpec> {
    let d: u32 = ys.iter().sum();
    let mut branch = BTreeMap::new();
    branch.insert(PointId::Finite(qi(0)), vec![d]);
    branch.insert(fam.conifold(), vec![1; d as usize]);
    branch.insert(PointId::Infinity, ys.to_vec());
    CoverSpec::completed(d, branch)
}

fn base_profile(fam: CyFamily) -> Result<VHSProfile> {
    family(fam.id())?.profile()
}

/// `h^{top,0}` of the pullback along `c`, through the full pipeline.
pub fn pipeline_top(fam: CyFamily, c: &CoverSpec) -> Result<i64> {
    let v = pullback_profile(&base_profile(fam)?, c)?;
    Ok(hodge_numbers(&v)?.top())
}

/// Every profile over ∞ within the caps whose top Hodge number equals the
/// target. Each hit is re-derived through base change and the Hodge engine.
pub fn enumerate_cy_infinity_profiles(cfg: &SearchConfig) -> Result<Enumeration> {
    if cfg.max_part == 0 || cfg.max_parts == 0 || cfg.target < 0 {
        return Err(Error::Unsupported("caps must be positive".into()));
    }
    let fam = cfg.family;
    let bound = cfg.target + 1;
    let c: Vec<i64> = (0..=cfg.max_part)
        .map(|y| if y == 0 { 0 } else { fam.part_contribution(y) })
        .collect();

    let mut out = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), 0i64)];
    while let Some((parts, sum)) = stack.pop() {
        if !parts.is_empty() && (sum - 1).max(0) == cfg.target {
            out.push(parts.clone());
        }
        if parts.len() == cfg.max_parts {
            continue;
        }
        let start = parts.last().copied().unwrap_or(1);
        for y in start..=cfg.max_part {
            let s = sum + c[y as usize];
            if s <= bound.max(1) {
                let mut next = parts.clone();
                next.push(y);
                stack.push((next, s));
            }
        }
    }
    out.sort();

    for ys in &out {
        let top = pipeline_top(fam, &standard_cover(fam, ys)?)?;
        if top != cfg.target {
            return Err(Error::InconsistentProfile(format!(
                "{ys:?}: pipeline gives h^top = {top}, closed form {}",
                cfg.target
            )));
        }
    }

    let mut warnings = Vec::new();
    let window: Vec<i64> = (cfg.max_part + 1..=cfg.max_part + CERTIFY_WINDOW)
        .map(|y| fam.part_contribution(y))
        .collect();
    let monotone = c[1..]
        .iter()
        .chain(window.iter())
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] <= w[1]);
    if !monotone || window[0] <= bound {
        warnings.push(format!(
            "parts above {} are not excluded by the per-part bound",
            cfg.max_part
        ));
    }
    if (cfg.max_parts as i64) < bound {
        warnings.push(format!(
            "profiles with more than {} parts are not excluded",
            cfg.max_parts
        ));
    }
    Ok(Enumeration {
        partitions: out,
        certified: warnings.is_empty(),
        warning: (!warnings.is_empty()).then(|| warnings.join("; ")),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub samples: usize,
    pub counterexamples: Vec<String>,
}

fn random_partition(rng: &mut ChaCha8Rng, d: u32) -> Vec<u32> {
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

fn format_cover(c: &CoverSpec) -> String {
    let branch: Vec<String> = c
        .branch
        .iter()
        .map(|(p, ys)| format!("{p}:{ys:?}"))
        .collect();
    format!(
        "d={} {} free={:?}",
        c.degree,
        branch.join(" "),
        c.free_ramification
    )
}

/// Random covers of degree `2..=12` sharing a profile over ∞ with the
/// standard cover but ramified arbitrarily over 0 and the conifold point.
/// A counterexample is a cover whose top Hodge number differs.
pub fn verify_independence(fam: CyFamily, samples: usize, seed: u64) -> Result<IndependenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut done = 0;
    while done < samples {
        let d = rng.gen_range(2..=12u32);
        let ys = random_partition(&mut rng, d);
        let mut branch = BTreeMap::new();
        branch.insert(PointId::Infinity, ys.clone());
        branch.insert(PointId::Finite(qi(0)), random_partition(&mut rng, d));
        branch.insert(fam.conifold(), random_partition(&mut rng, d));
        let Ok(c) = CoverSpec::completed(d, branch) else {
            continue;
        };
        done += 1;
        let reference = pipeline_top(fam, &standard_cover(fam, &ys)?)?;
        match pipeline_top(fam, &c) {
            Ok(top) if top == reference => {}
            Ok(top) => counterexamples.push(format!(
                "{}: h^top = {top}, expected {reference}",
                format_cover(&c)
            )),
            Err(e) => counterexamples.push(format!("{}: {e}", format_cover(&c))),
        }
    }
    Ok(IndependenceReport {
        samples,
        counterexamples,
    })
}
