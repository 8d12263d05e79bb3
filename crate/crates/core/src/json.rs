//! JSON encodings of schemes, profiles, covers, reports and datasets.
//! Rationals are `"p/q"` strings, points are `"a/b"`, `"inf"` or a
//! polynomial string, and object keys come out sorted.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::arith::{parse_rational, rat_to_string};
use crate::cover::CoverSpec;
use crate::datasets::{ExpectedRow, FamilyRecord};
use crate::error::{Error, Result};
use crate::hodge::HodgeReport;
use crate::local::{JordanType, Kind, LocalData, VHSProfile};
use crate::ode::{PointId, RiemannScheme};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(rat_to_string(x))
}

fn rationals(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

fn parse_rat(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("bad rational {n}"))),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn parse_point(s: &str) -> Result<PointId> {
    s.parse::<PointId>()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

pub fn scheme_to_json(s: &RiemannScheme) -> Value {
    json!({
        "order": s.order,
        "rows": s.rows.iter().map(|r| json!({
            "point": r.point.to_string(),
            "orbit_size": r.orbit_size,
            "exponents": rationals(&r.exponents),
        })).collect::<Vec<_>>(),
    })
}

pub fn jordan_to_json(j: &JordanType) -> Value {
    Value::Array(
        j.blocks()
            .iter()
            .map(|b| json!({"alpha": rational(&b.alpha), "size": b.size}))
            .collect(),
    )
}

pub fn jordan_from_json(v: &Value) -> Result<JordanType> {
    let blocks = as_array(v, "jordan")?
        .iter()
        .map(|b| {
            let size = as_u64(field(b, "size")?, "size")? as usize;
            if size == 0 {
                return Err(bad("Jordan block of size 0"));
            }
            Ok((parse_rat(field(b, "alpha")?)?, size))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JordanType::new(blocks))
}

pub fn profile_to_json(v: &VHSProfile) -> Value {
    json!({
        "weight": v.weight,
        "points": v.points.iter().map(|p| {
            let mut m = Map::new();
            m.insert("point".into(), Value::String(p.point.to_string()));
            m.insert("orbit_size".into(), json!(p.orbit_size));
            m.insert("exponents".into(), rationals(&p.exponents));
            m.insert("kind".into(), Value::String(p.kind.as_str().into()));
            if let Some(j) = &p.monodromy {
                m.insert("jordan".into(), jordan_to_json(j));
            }
            Value::Object(m)
        }).collect::<Vec<_>>(),
    })
}

pub fn profile_from_json(v: &Value) -> Result<VHSProfile> {
    let weight = as_u64(field(v, "weight")?, "weight")? as usize;
    let points = as_array(field(v, "points")?, "points")?
        .iter()
        .map(|p| {
            let point = parse_point(
                field(p, "point")?
                    .as_str()
                    .ok_or_else(|| bad("point must be a string"))?,
            )?;
            let orbit = match p.get("orbit_size") {
                Some(o) => as_u64(o, "orbit_size")? as usize,
                None => point.inherent_orbit(),
            };
            let exponents = as_array(field(p, "exponents")?, "exponents")?
                .iter()
                .map(parse_rat)
                .collect::<Result<Vec<_>>>()?;
            let kind_s = field(p, "kind")?
                .as_str()
                .ok_or_else(|| bad("kind must be a string"))?;
            let kind = Kind::parse(kind_s).ok_or_else(|| bad(format!("unknown kind {kind_s:?}")))?;
            let monodromy = p.get("jordan").map(jordan_from_json).transpose()?;
            LocalData::new(point, orbit, exponents, kind, monodromy)
        })
        .collect::<Result<Vec<_>>>()?;
    VHSProfile::new(weight, points)
}

pub fn cover_to_json(c: &CoverSpec) -> Value {
    let branch: Map<String, Value> = c
        .branch
        .iter()
        .map(|(p, ys)| (p.to_string(), json!(ys)))
        .collect();
    json!({
        "degree": c.degree,
        "branch": branch,
        "free_ramification": c.free_ramification,
    })
}

fn u32_list(v: &Value, what: &str) -> Result<Vec<u32>> {
    as_array(v, what)?
        .iter()
        .map(|x| {
            let n = as_u64(x, what)?;
            u32::try_from(n).map_err(|_| bad(format!("{what}: {n} too large")))
        })
        .collect()
}

pub fn cover_from_json(v: &Value) -> Result<CoverSpec> {
    let degree = u32::try_from(as_u64(field(v, "degree")?, "degree")?)
        .map_err(|_| bad("degree too large"))?;
    let mut branch = BTreeMap::new();
    if let Some(b) = v.get("branch") {
        let obj = b.as_object().ok_or_else(|| bad("branch must be an object"))?;
        for (k, ys) in obj {
            branch.insert(parse_point(k)?, u32_list(ys, "partition")?);
        }
    }
    let free_ramification = match v.get("free_ramification") {
        Some(f) => u32_list(f, "free_ramification")?,
        None => Vec::new(),
    };
    Ok(CoverSpec {
        degree,
        branch,
        free_ramification,
    })
}

pub fn report_to_json(r: &HodgeReport) -> Value {
    json!({
        "degrees": r.degrees.degrees,
        "hodge": r.hodge.numbers,
        "total_rank": r.hodge.total_rank,
        "details": {
            "cokernels": r.cokernels.iter().map(|c| {
                let per: Map<String, Value> = c
                    .per_point
                    .iter()
                    .map(|(p, n)| (p.to_string(), json!(n)))
                    .collect();
                json!({"index": c.index, "total": c.total, "per_point": per})
            }).collect::<Vec<_>>(),
            "antisym_targets": rationals(&r.antisym_targets),
        },
    })
}

pub fn family_to_json(f: &FamilyRecord) -> Value {
    let ann: Map<String, Value> = f
        .annotations
        .iter()
        .map(|(p, j)| (p.to_string(), jordan_to_json(j)))
        .collect();
    json!({
        "id": f.id,
        "operator": f.operator,
        "weight": f.weight,
        "annotations": ann,
        "monodromy": f.tag.map(|t| t.as_str()),
        "table_row": f.table3_row,
        "alphas": rationals(&f.alphas),
    })
}

pub fn expected_row_to_json(r: &ExpectedRow) -> Value {
    json!({
        "row": r.row,
        "d": r.d,
        "a": r.a,
        "b": r.b,
        "hodge": r.hodge,
        "new_result": r.new_result,
        "symbolic": r.symbolic,
    })
}

/// Pretty-printed with sorted keys; byte-identical for equal values.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}
