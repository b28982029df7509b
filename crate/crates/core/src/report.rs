//! Machine-readable run reports.
//!
//! A report is one JSON document with a fixed `schema` version, the resolved
//! run configuration, a verdict and a command-specific `result`. Everything
//! that may legitimately differ between identical runs (wall time, clock,
//! worker count) lives under `runtime`, which [`Report::canonical_json`]
//! leaves out.

use std::collections::BTreeMap;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{ding_ab_inequality, CodeCf};
use crate::error::Result;
use crate::search::{SearchResult, SearchStatus, TightnessReport};
use crate::sets::{self, PointSet, SpreadUnion};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Found,
    Infeasible,
    CapReached,
    Info,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Found | Verdict::Info => 0,
            Verdict::Fail | Verdict::Infeasible | Verdict::CapReached => 1,
        }
    }
}

/// Resolved configuration of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub q: Option<usize>,
    pub n: Option<usize>,
    pub input: Option<String>,
    pub output: Option<String>,
    /// Command-specific parameters, e.g. `anchor`, `s`, `k`, `cap`.
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Runtime {
    pub workers: usize,
    pub elapsed_ms: u128,
    pub generated_at_unix: u64,
}

impl Runtime {
    pub fn new(workers: usize, elapsed: Duration) -> Self {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Runtime { workers, elapsed_ms: elapsed.as_millis(), generated_at_unix: now }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: RunConfig,
    pub verdict: Verdict,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime: Option<Runtime>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    fn new(config: RunConfig, verdict: Verdict, result: Value, summary: Vec<String>) -> Self {
        Report { schema: SCHEMA_VERSION, config, verdict, result, runtime: None, summary }
    }

    pub fn with_runtime(mut self, runtime: Runtime) -> Self {
        self.runtime = Some(runtime);
        self
    }

    /// The full document, runtime section included.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The document without `runtime`; identical runs give identical bytes.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.runtime = None;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

fn points_json(set: &PointSet) -> Value {
    Value::Array(set.points().iter().map(|p| json!(p.coords())).collect())
}

fn set_json(set: &PointSet) -> Value {
    json!({ "q": set.q(), "n": set.n(), "size": set.len(), "points": points_json(set) })
}

fn parameters_json(code: &CodeCf) -> Value {
    json!({
        "length": code.length(),
        "dimension": code.dimension(),
        "q": code.q(),
        "n": code.n(),
        "support_size": code.set().len(),
        "f_linear": code.is_linear(),
    })
}

fn bracket(code: &CodeCf) -> String {
    format!("[{}, {}]", code.length(), code.dimension())
}

pub fn check_set(config: RunConfig, set: &PointSet) -> Result<Report> {
    let cond = sets::check_conditions(set)?;
    let mut result = json!({ "set": set_json(set), "conditions": cond });
    if set.q() == 2 {
        result["binary_conditions"] = serde_json::to_value(sets::check_conditions_binary(set)?).expect("serializes");
    }
    let summary = vec![
        format!("q = {}, n = {}, |S| = {}", set.q(), set.n(), set.len()),
        format!("not in any affine hyperplane: {}", cond.affine_nondegenerate),
        format!("meets every affine hyperplane: {}", cond.blocking),
        format!("|S| < q^(n-2)(q-1) = {}: {}", cond.size_bound, cond.size_ok),
        format!("all conditions hold: {}", cond.all_hold),
    ];
    let verdict = if cond.all_hold { Verdict::Pass } else { Verdict::Fail };
    Ok(Report::new(config, verdict, result, summary))
}

pub fn build_code(config: RunConfig, code: &CodeCf) -> Report {
    let profile = code.weight_profile();
    let summary = vec![
        format!("code {} over F_{}", bracket(code), code.q()),
        format!(
            "w_min = {}, w_max = {}",
            profile.w_min.map_or("-".to_string(), |w| w.to_string()),
            profile.w_max
        ),
        format!("(u, v) -> c(u, v) injective: {}", profile.injective),
    ];
    let result = json!({ "parameters": parameters_json(code), "weights": profile });
    Report::new(config, Verdict::Info, result, summary)
}

pub fn minimality(config: RunConfig, code: &CodeCf) -> Report {
    let r = code.is_minimal();
    let mut summary = vec![
        format!("code {} over F_{}", bracket(code), code.q()),
        format!("minimal: {} ({} scalar classes)", r.is_minimal, r.class_count),
    ];
    if let Some(w) = &r.witness {
        summary.push(format!(
            "supp c({}, {:?}) is contained in supp c({}, {:?})",
            w.contained.u, w.contained.v, w.containing.u, w.containing.v
        ));
    }
    let verdict = if r.is_minimal { Verdict::Pass } else { Verdict::Fail };
    Report::new(config, verdict, json!({ "parameters": parameters_json(code), "minimality": r }), summary)
}

pub fn ab(config: RunConfig, code: &CodeCf) -> Result<Report> {
    let r = code.ab_condition()?;
    let summary = vec![
        format!("w_min = {}, w_max = {}", r.w_min, r.w_max),
        format!("w_max(q-1) = {} vs w_min q = {}", r.lhs, r.rhs),
        format!("Ashikhmin-Barg condition holds: {}", r.holds),
    ];
    let verdict = if r.holds { Verdict::Pass } else { Verdict::Fail };
    Ok(Report::new(config, verdict, json!({ "parameters": parameters_json(code), "ab": r }), summary))
}

pub fn walsh(config: RunConfig, code: &CodeCf) -> Result<Report> {
    let s = code.walsh_summary()?;
    let summary = vec![
        format!("max |f^| = {}, range [{}, {}]", s.max_abs, s.min_value, s.max_value),
        format!("Parseval sum = {} (expected {})", s.parseval_sum, 1u128 << (2 * s.n)),
        format!("bent: {}", s.bent.map_or("n/a (odd n)".into(), |b| b.to_string())),
        match (&s.ding_minimal, &s.ding_note) {
            (Some(b), _) => format!("spectrum criterion says minimal: {b}"),
            (None, Some(note)) => format!("spectrum criterion not applicable: {note}"),
            _ => unreachable!(),
        },
    ];
    Ok(Report::new(config, Verdict::Info, json!({ "walsh": s }), summary))
}

/// Full analysis of one code: parameters, weights, AB data, minimality and
/// (for q = 2) the Walsh summary.
pub fn analyze(config: RunConfig, code: &CodeCf) -> Result<Report> {
    let profile = code.weight_profile();
    let ab = crate::codes::AbReport::from_profile(code.q(), &profile)?;
    let min = code.is_minimal();
    let mut result = json!({
        "parameters": parameters_json(code),
        "weights": profile,
        "ab": ab,
        "minimality": min,
    });
    if code.q() == 2 {
        result["walsh"] = serde_json::to_value(code.walsh_summary()?).expect("serializes");
    }
    let summary = vec![
        format!("code {} over F_{}", bracket(code), code.q()),
        format!("minimal: {}, AB condition holds: {}", min.is_minimal, ab.holds),
    ];
    Ok(Report::new(config, Verdict::Info, result, summary))
}

/// Conditions, then minimality, then the AB test, with one verdict: pass iff
/// the conditions hold, the code is minimal and the AB condition fails.
pub fn verify_theorem(config: RunConfig, set: &PointSet) -> Result<Report> {
    let cond = sets::check_conditions(set)?;
    let code = CodeCf::new(set.clone())?;
    let min = code.is_minimal();
    let ab = code.ab_condition()?;
    let pass = cond.all_hold && min.is_minimal && !ab.holds;
    let summary = vec![
        format!("q = {}, n = {}, |S| = {}, code {}", set.q(), set.n(), set.len(), bracket(&code)),
        format!("conditions hold: {}", cond.all_hold),
        format!("minimal: {} ({} scalar classes)", min.is_minimal, min.class_count),
        format!("AB condition violated: {} (w_max(q-1) = {}, w_min q = {})", !ab.holds, ab.lhs, ab.rhs),
        format!("verdict: {}", if pass { "PASS" } else { "FAIL" }),
    ];
    let result = json!({
        "set": set_json(set),
        "parameters": parameters_json(&code),
        "conditions": cond,
        "minimality": min,
        "ab": ab,
        "pass": pass,
    });
    Ok(Report::new(config, if pass { Verdict::Pass } else { Verdict::Fail }, result, summary))
}

pub fn search(config: RunConfig, r: &SearchResult) -> Report {
    let verdict = match r.status {
        SearchStatus::Found => Verdict::Found,
        SearchStatus::Infeasible => Verdict::Infeasible,
        SearchStatus::CapReached => Verdict::CapReached,
    };
    let mut summary = vec![format!("status: {:?}, candidate sets examined: {}", r.status, r.examined)];
    if let Some(m) = r.min_size {
        summary.push(format!("minimum size: {m}"));
    }
    let result = json!({
        "status": r.status,
        "min_size": r.min_size,
        "examined": r.examined,
        "witness": r.witness.as_ref().map(set_json),
    });
    Report::new(config, verdict, result, summary)
}

/// A cap-limited blocking search that found nothing.
pub fn search_cap_reached(config: RunConfig, cap: usize) -> Report {
    let result = json!({ "status": SearchStatus::CapReached, "min_size": null, "cap": cap, "witness": null });
    Report::new(config, Verdict::CapReached, result, vec![format!("no blocking set of size <= {cap}")])
}

pub fn tightness(config: RunConfig, t: &TightnessReport) -> Report {
    let summary = vec![
        format!("anchor {:?}, |S| = {} (expected {})", t.anchor, t.set.len(), t.expected_size),
        format!("all conditions hold: {}", t.conditions.all_hold),
    ];
    let result = json!({
        "anchor": t.anchor.coords(),
        "set": set_json(&t.set),
        "expected_size": t.expected_size,
        "conditions": t.conditions,
        "pass": t.pass,
    });
    Report::new(config, if t.pass { Verdict::Pass } else { Verdict::Fail }, result, summary)
}

pub fn construct(config: RunConfig, set: &PointSet, spread: Option<&SpreadUnion>) -> Report {
    let mut result = json!({ "set": set_json(set) });
    let mut summary = vec![format!("constructed {} points in F_{}^{}", set.len(), set.q(), set.n())];
    if let Some(u) = spread {
        result["spread_order"] = json!(u.s);
        result["ab_window"] = json!(u.ab_window);
        summary.push(format!("s = {}, s <= 2^(n/2-2): {}", u.s, u.ab_window));
    }
    Report::new(config, Verdict::Info, result, summary)
}

pub fn hamming_inequality(config: RunConfig, n: usize, k: usize) -> Result<Report> {
    let r = ding_ab_inequality(n, k)?;
    let summary = vec![
        format!("1 + 2 sum C(n,i) = {} <= 2^(n-1) + C(n-1,k) = {}: {}", r.lhs, r.rhs, r.holds),
        format!("stricter cap {} <= {}: {}", r.lhs, r.strict_rhs, r.strict_holds),
    ];
    Ok(Report::new(config, Verdict::Info, json!({ "inequality": r }), summary))
}
