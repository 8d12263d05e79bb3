//! `pfhodge`: Riemann schemes, bundle degrees and Hodge numbers of
//! Picard–Fuchs operators from the command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use pfhodge::arith::rat_to_string;
use pfhodge::datasets::{compute_table3_cell, expected_table3, family, ExpectedRow};
use pfhodge::enumerate::{enumerate_cy_infinity_profiles, CyFamily, Enumeration, SearchConfig};
use pfhodge::json::{
    cover_from_json, jordan_from_json, jordan_to_json, parse_json, profile_from_json,
    profile_to_json, rational, report_to_json, scheme_to_json, to_canonical_string,
};
use pfhodge::local::{classify_elliptic, classify_k3, K3Class, KodairaClass};
use pfhodge::{
    analyze, parse_operator, pullback_profile, riemann_scheme, CoverSpec, DifferentialOperator,
    Error, HodgeReport, JordanType, Kind, LocalData, PointId, RiemannScheme, VHSProfile,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_MISSING_ANNOTATION: u8 = 3;
const EXIT_UNCERTIFIED: u8 = 4;

#[derive(Parser)]
#[command(name = "pfhodge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Riemann scheme of an operator.
    Scheme {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Bundle degrees and Hodge numbers, optionally after base change.
    Hodge {
        #[command(flatten)]
        source: Source,
        /// Cover as inline JSON or a path to a JSON file.
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the local data of a profile pulled back along a cover.
    Pullback {
        #[command(flatten)]
        source: Source,
        /// Cover as inline JSON or a path to a JSON file.
        #[arg(long)]
        cover: String,
        #[arg(long)]
        json: bool,
    },
    /// Recompute a built-in table and diff it against the stored values.
    Reproduce {
        #[arg(value_enum)]
        what: Table,
        #[arg(long)]
        json: bool,
        /// Alter one stored value before diffing (exercises the mismatch path).
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// List the ∞-profiles of covers giving Calabi–Yau type pullbacks.
    Enumerate {
        #[arg(long, default_value = "quintic")]
        family: String,
        /// Search caps as `MAX_PART,MAX_PARTS`.
        #[arg(long)]
        caps: Option<String>,
        /// Required value of the top Hodge number.
        #[arg(long, default_value_t = 1)]
        target: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(skip)]
struct Source {
    /// Built-in family id (dm1..dm14, quintic, quartic, legendre, hesse).
    #[arg(long)]
    family: Option<String>,
    /// File holding an operator in D or del form.
    #[arg(long)]
    operator_file: Option<PathBuf>,
    /// Operator text.
    #[arg(long)]
    operator: Option<String>,
    /// JSON profile file.
    #[arg(long)]
    profile_file: Option<PathBuf>,
    /// JSON object mapping points to `{"kind": ..., "jordan": [...]}`,
    /// for operators given as text.
    #[arg(long, conflicts_with_all = ["family", "profile_file"])]
    annotations: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Table1,
    Table2,
    Table3,
    QuinticList,
    QuarticCorollary,
}

enum Failure {
    Mismatch(String),
    Analysis(Error),
    Uncertified(String, String),
    Message(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Analysis(e)
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Message(format!("cannot read {}: {e}", path.display())))
}

impl Source {
    fn check(&self) -> Result<(), Failure> {
        let given = usize::from(self.family.is_some())
            + usize::from(self.operator_file.is_some())
            + usize::from(self.operator.is_some())
            + usize::from(self.profile_file.is_some());
        if given == 1 {
            Ok(())
        } else {
            Err(Failure::Message(
                "give exactly one of --family, --operator, --operator-file, --profile-file".into(),
            ))
        }
    }

    fn operator(&self) -> Result<DifferentialOperator, Failure> {
        self.check()?;
        if let Some(id) = &self.family {
            return Ok(family(id)?.parse()?);
        }
        if let Some(text) = &self.operator {
            return Ok(parse_operator(text)?);
        }
        if let Some(path) = &self.operator_file {
            return Ok(parse_operator(&read(path)?)?);
        }
        Err(Failure::Message("a profile file carries no operator".into()))
    }

    fn profile(&self) -> Result<VHSProfile, Failure> {
        self.check()?;
        if let Some(id) = &self.family {
            return Ok(family(id)?.profile()?);
        }
        if let Some(path) = &self.profile_file {
            return Ok(profile_from_json(&parse_json(&read(path)?)?)?);
        }
        let scheme = riemann_scheme(&self.operator()?)?;
        let annotations = match &self.annotations {
            Some(path) => annotations_from_json(&parse_json(&read(path)?)?)?,
            None => BTreeMap::new(),
        };
        Ok(VHSProfile::from_scheme(&scheme, &annotations)?)
    }
}

fn annotations_from_json(v: &Value) -> pfhodge::Result<BTreeMap<PointId, (Kind, Option<JordanType>)>> {
    let bad = |m: String| Error::Json(m);
    let obj = v
        .as_object()
        .ok_or_else(|| bad("annotations must be an object".into()))?;
    let mut out = BTreeMap::new();
    for (k, a) in obj {
        let kind = a
            .get("kind")
            .and_then(Value::as_str)
            .and_then(Kind::parse)
            .ok_or_else(|| bad(format!("{k}: missing or unknown kind")))?;
        let jordan = a.get("jordan").map(jordan_from_json).transpose()?;
        out.insert(k.parse::<PointId>()?, (kind, jordan));
    }
    Ok(out)
}

fn cover_arg(arg: &str) -> Result<CoverSpec, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(&PathBuf::from(arg))?
    };
    Ok(cover_from_json(&parse_json(&text)?)?)
}

fn rats(xs: &[pfhodge::arith::BigRational]) -> Vec<String> {
    xs.iter().map(rat_to_string).collect()
}

fn render_scheme(s: &RiemannScheme) -> String {
    let mut cols: Vec<Vec<String>> = s
        .rows
        .iter()
        .map(|r| {
            let mut head = r.point.to_string();
            if r.orbit_size > 1 {
                head = format!("{head} (×{})", r.orbit_size);
            }
            std::iter::once(head).chain(rats(&r.exponents)).collect()
        })
        .collect();
    if cols.is_empty() {
        cols.push(vec!["(no singular points)".into()]);
    }
    let widths: Vec<usize> = cols
        .iter()
        .map(|c| c.iter().map(|x| x.chars().count()).max().unwrap_or(0))
        .collect();
    let height = cols.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    for i in 0..height {
        let cells: Vec<String> = cols
            .iter()
            .zip(&widths)
            .map(|(c, &w)| {
                let x = c.get(i).map(String::as_str).unwrap_or("");
                format!("{x:>w$}")
            })
            .collect();
        let line = cells.join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 0 {
            let rule: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
            out.push_str(&"-".repeat(rule));
            out.push('\n');
        }
    }
    out
}

fn render_profile(v: &VHSProfile) -> String {
    let mut out = format!("weight {}\n", v.weight);
    for p in &v.points {
        let j = p
            .monodromy
            .as_ref()
            .map(|j| format!("  T {j}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{}  orbit {}  {}  ({}){j}",
            p.point,
            p.orbit_size,
            p.kind.as_str(),
            rats(&p.exponents).join(", ")
        );
    }
    out
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn render_report(weight: usize, r: &HodgeReport) -> String {
    let mut out = String::new();
    if weight == 3 {
        let _ = writeln!(out, "a = {}", r.degrees.degrees[0]);
        let _ = writeln!(out, "b = {}", r.degrees.degrees[1]);
    }
    let _ = writeln!(out, "degrees = ({})", join(&r.degrees.degrees));
    let _ = writeln!(out, "hodge = ({})", join(&r.hodge.numbers));
    let _ = writeln!(out, "total rank = {}", r.hodge.total_rank);
    out
}

fn cmd_scheme(source: &Source, as_json: bool) -> CmdResult {
    let s = riemann_scheme(&source.operator()?)?;
    Ok(if as_json {
        to_canonical_string(&scheme_to_json(&s))
    } else {
        render_scheme(&s)
    })
}

fn cmd_hodge(source: &Source, cover: Option<&str>, as_json: bool) -> CmdResult {
    let mut v = source.profile()?;
    if let Some(c) = cover {
        v = pullback_profile(&v, &cover_arg(c)?)?;
    }
    let r = analyze(&v)?;
    Ok(if as_json {
        to_canonical_string(&report_to_json(&r))
    } else {
        render_report(v.weight, &r)
    })
}

fn cmd_pullback(source: &Source, cover: &str, as_json: bool) -> CmdResult {
    let v = pullback_profile(&source.profile()?, &cover_arg(cover)?)?;
    Ok(if as_json {
        to_canonical_string(&profile_to_json(&v))
    } else {
        render_profile(&v)
    })
}

fn finish(lines: String, failures: usize, as_json: bool, doc: Value) -> CmdResult {
    let text = if as_json {
        to_canonical_string(&doc)
    } else {
        lines
    };
    if failures == 0 {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn reproduce_table1(perturb: bool, as_json: bool) -> CmdResult {
    let mut lines = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for (i, class) in KodairaClass::ALL.into_iter().enumerate() {
        let mut w = class.table_weights().to_vec();
        if perturb && i == 0 {
            w[0] += pfhodge::arith::q(1, 2);
        }
        let j = match class {
            KodairaClass::In => JordanType::unipotent_block(2),
            _ => JordanType::diagonal(w.clone()),
        };
        let got = LocalData::new(PointId::Infinity, 1, w.clone(), Kind::Actual, Some(j))
            .and_then(|d| classify_elliptic(&d));
        let ok = got.as_ref().is_ok_and(|c| *c == class);
        failures += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(lines, "{:<10} ({})  {status}", class.label(), rats(&w).join(", "));
        rows.push(json!({
            "class": class.label(),
            "weights": w.iter().map(rational).collect::<Vec<_>>(),
            "pass": ok,
        }));
    }
    finish(lines, failures, as_json, json!({"rows": rows, "mismatches": failures}))
}

fn reproduce_table2(perturb: bool, as_json: bool) -> CmdResult {
    let mut lines = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for (i, class) in K3Class::ALL.into_iter().enumerate() {
        let mut j = class.jordan();
        if perturb && i == 0 {
            j = JordanType::diagonal(vec![pfhodge::arith::q(1, 3); 3]);
        }
        let got = LocalData::new(
            PointId::Infinity,
            1,
            class.sample_exponents().to_vec(),
            Kind::Actual,
            Some(j.clone()),
        )
        .and_then(|d| classify_k3(&d));
        let ok = got.as_ref().is_ok_and(|c| *c == class);
        failures += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(
            lines,
            "{:<8} ({})  {j}  A_1/2:{} A_f:{}  {status}",
            class.label(),
            rats(&class.table_weights()).join(", "),
            u8::from(class.in_a_half()),
            u8::from(class.in_a_f()),
        );
        rows.push(json!({
            "class": class.label(),
            "weights": class.table_weights().iter().map(rational).collect::<Vec<_>>(),
            "jordan": jordan_to_json(&j),
            "in_a_half": class.in_a_half(),
            "in_a_f": class.in_a_f(),
            "pass": ok,
        }));
    }
    finish(lines, failures, as_json, json!({"rows": rows, "mismatches": failures}))
}

fn table3_line(e: &ExpectedRow, got: &pfhodge::Result<HodgeReport>) -> (bool, String, Value) {
    let mark = if e.new_result { "*" } else { " " };
    let expected = format!("a={} b={} ({})", e.a, e.b, join(&e.hodge));
    let (ok, computed, cj) = match got {
        Ok(r) => {
            let a = r.degrees.degrees[0];
            let b = r.degrees.degrees[1];
            let ok = (a, b) == (e.a, e.b) && r.hodge.numbers == e.hodge;
            let text = format!("a={a} b={b} ({})", join(&r.hodge.numbers));
            (ok, text, json!({"a": a, "b": b, "hodge": r.hodge.numbers}))
        }
        Err(err) => (false, err.to_string(), json!({"error": err.to_string()})),
    };
    let status = if ok { "PASS" } else { "FAIL" };
    let line = if ok {
        format!("{mark}row {:>2} d={:>2}  {computed}  {status}", e.row, e.d)
    } else {
        format!(
            "{mark}row {:>2} d={:>2}  {computed}  expected {expected}  {status}",
            e.row, e.d
        )
    };
    let doc = json!({
        "row": e.row,
        "d": e.d,
        "new_result": e.new_result,
        "expected": {"a": e.a, "b": e.b, "hodge": e.hodge},
        "computed": cj,
        "pass": ok,
    });
    (ok, line, doc)
}

fn reproduce_table3(perturb: bool, as_json: bool) -> CmdResult {
    let mut expected = expected_table3();
    if perturb {
        expected[0].b += 1;
    }
    let computed: Vec<_> = expected
        .par_iter()
        .map(|e| compute_table3_cell(e.row, e.d))
        .collect();
    let mut lines = String::new();
    let mut cells = Vec::new();
    let mut failures = 0;
    for (e, got) in expected.iter().zip(&computed) {
        let (ok, line, doc) = table3_line(e, got);
        failures += usize::from(!ok);
        lines.push_str(&line);
        lines.push('\n');
        cells.push(doc);
    }
    let _ = writeln!(
        lines,
        "{}/{} cells match (* marks cells absent from earlier listings)",
        expected.len() - failures,
        expected.len()
    );
    finish(lines, failures, as_json, json!({"cells": cells, "mismatches": failures}))
}

fn small_profiles(max_single: u32, max_pair: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (1..=max_pair)
        .flat_map(|a| (a..=max_pair).map(move |b| vec![a, b]))
        .collect();
    out.extend((max_pair + 1..=max_single).map(|y| vec![y]));
    out.sort();
    out
}

fn reproduce_list(fam: CyFamily, perturb: bool, as_json: bool) -> CmdResult {
    let mut expected = match fam {
        CyFamily::Quintic => small_profiles(10, 5),
        CyFamily::Quartic => small_profiles(8, 4),
    };
    if perturb {
        expected.pop();
    }
    let en = enumerate_cy_infinity_profiles(&SearchConfig::new(fam))?;
    let mut lines = String::new();
    let mut failures = usize::from(!en.certified);
    for ys in &en.partitions {
        let ok = expected.contains(ys);
        failures += usize::from(!ok);
        let _ = writeln!(lines, "{ys:?}  {}", if ok { "PASS" } else { "unexpected  FAIL" });
    }
    for ys in expected.iter().filter(|ys| !en.partitions.contains(ys)) {
        failures += 1;
        let _ = writeln!(lines, "{ys:?}  missing  FAIL");
    }
    let _ = writeln!(
        lines,
        "{} profiles listed, {} stored{}",
        en.partitions.len(),
        expected.len(),
        if en.certified { "" } else { "; search not certified" }
    );
    let doc = json!({
        "family": fam.id(),
        "listed": en.partitions,
        "stored": expected,
        "certified": en.certified,
        "mismatches": failures,
    });
    finish(lines, failures, as_json, doc)
}

fn parse_caps(caps: &str) -> Result<(u32, usize), Failure> {
    let bad = || Failure::Message(format!("--caps expects MAX_PART,MAX_PARTS, got {caps:?}"));
    let (a, b) = caps.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn render_enumeration(en: &Enumeration, as_json: bool) -> String {
    let list = json!(en.partitions);
    if as_json {
        return to_canonical_string(&json!({
            "partitions": list,
            "certified": en.certified,
            "warning": en.warning,
        }));
    }
    let mut out = String::new();
    for ys in &en.partitions {
        let parts: Vec<String> = ys.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "[{}]", parts.join(","));
    }
    out.push_str(&serde_json::to_string(&list).expect("serializable"));
    out.push('\n');
    out
}

fn cmd_enumerate(fam: &str, caps: Option<&str>, target: i64, as_json: bool) -> CmdResult {
    let mut cfg = SearchConfig::new(CyFamily::from_id(fam)?);
    cfg.target = target;
    if let Some(c) = caps {
        (cfg.max_part, cfg.max_parts) = parse_caps(c)?;
    }
    let en = enumerate_cy_infinity_profiles(&cfg)?;
    let text = render_enumeration(&en, as_json);
    if en.certified {
        Ok(text)
    } else {
        Err(Failure::Uncertified(text, en.warning.clone().unwrap_or_default()))
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Scheme { source, json } => cmd_scheme(source, *json),
        Command::Hodge { source, cover, json } => cmd_hodge(source, cover.as_deref(), *json),
        Command::Pullback {
            source,
            cover,
            json,
        } => cmd_pullback(source, cover, *json),
        Command::Reproduce {
            what,
            json,
            perturb,
        } => match what {
            Table::Table1 => reproduce_table1(*perturb, *json),
            Table::Table2 => reproduce_table2(*perturb, *json),
            Table::Table3 => reproduce_table3(*perturb, *json),
            Table::QuinticList => reproduce_list(CyFamily::Quintic, *perturb, *json),
            Table::QuarticCorollary => reproduce_list(CyFamily::Quartic, *perturb, *json),
        },
        Command::Enumerate {
            family,
            caps,
            target,
            json,
        } => cmd_enumerate(family, caps.as_deref(), *target, *json),
    }
}

/// Writes `text` with a trailing newline; a closed pipe is not an error.
fn emit(mut w: impl std::io::Write, text: &str) {
    let _ = writeln!(w, "{}", text.trim_end_matches('\n'));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, err) = (std::io::stdout(), std::io::stderr());
    match run(&cli) {
        Ok(text) => {
            emit(out.lock(), &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(text)) => {
            emit(out.lock(), &text);
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Uncertified(text, warning)) => {
            emit(out.lock(), &text);
            emit(err.lock(), &format!("not certified: {warning}"));
            ExitCode::from(EXIT_UNCERTIFIED)
        }
        Err(Failure::Analysis(e)) => {
            emit(err.lock(), &format!("error: {e}"));
            ExitCode::from(match e {
                Error::MissingAnnotation(_) => EXIT_MISSING_ANNOTATION,
                _ => EXIT_ERROR,
            })
        }
        Err(Failure::Message(m)) => {
            emit(err.lock(), &format!("error: {m}"));
            ExitCode::from(EXIT_ERROR)
        }
    }
}
