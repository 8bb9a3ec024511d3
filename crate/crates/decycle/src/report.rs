//! Report emission: CheckRecords as CSV rows and JSON documents, and the
//! certificate JSON schema shared by the solver and the constructions.
//!
//! Report bodies are deterministic; wall-time lives in a dedicated trailing
//! CSV column and dedicated JSON keys so consumers can strip timing before
//! comparing runs.

use decycle_core::checks::CheckRecord;
use decycle_core::construct::ConstructionKind;
use decycle_core::fvs::DecyclingCertificate;
use serde_json::{json, Value};

pub const CSV_HEADER: &str = "claim_id,instance,expected,verdict,computed,wall_time_secs";

fn computed_field(r: &CheckRecord) -> String {
    r.computed
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// One CSV row; panics if a field would break the unquoted format, since
/// every identifier this crate produces is comma- and newline-free.
pub fn record_csv_row(r: &CheckRecord) -> String {
    let fields = [
        r.claim_id.clone(),
        r.instance.clone(),
        r.expected.clone(),
        r.verdict.as_str().to_string(),
        computed_field(r),
    ];
    for f in &fields {
        assert!(
            !f.contains(',') && !f.contains('\n'),
            "CSV fields must stay comma-free: {f:?}"
        );
    }
    format!("{},{:.6}", fields.join(","), r.wall_time.as_secs_f64())
}

pub fn records_to_csv(records: &[CheckRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&record_csv_row(r));
        out.push('\n');
    }
    out
}

/// Strips the trailing wall-time column, leaving the deterministic body.
pub fn csv_without_timing(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rsplit_once(',') {
            Some((body, _)) => body.to_string(),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn record_json(r: &CheckRecord) -> Value {
    json!({
        "claim_id": r.claim_id,
        "instance": r.instance,
        "expected": r.expected,
        "computed": r.computed,
        "verdict": r.verdict.as_str(),
        "certificate": r.certificate,
        "wall_time_secs": r.wall_time.as_secs_f64(),
    })
}

/// Full sweep document: identity, parameters, per-record detail, and a
/// verdict summary. Timing sits under the `wall_time_secs` keys only.
pub fn sweep_json(
    suite: &str,
    params: &Value,
    records: &[CheckRecord],
    solver_invocations: u64,
) -> Value {
    let (mut pass, mut fail, mut report_only) = (0u64, 0u64, 0u64);
    for r in records {
        match r.verdict {
            decycle_core::checks::Verdict::Pass => pass += 1,
            decycle_core::checks::Verdict::Fail => fail += 1,
            decycle_core::checks::Verdict::ReportOnly => report_only += 1,
        }
    }
    json!({
        "suite": suite,
        "params": params,
        "summary": {
            "records": records.len(),
            "pass": pass,
            "fail": fail,
            "report_only": report_only,
        },
        "solver_invocations": solver_invocations,
        "records": records.iter().map(record_json).collect::<Vec<_>>(),
    })
}

/// Certificate JSON: graph identity (a graph6 string or factor-label key),
/// value, sorted vertex list, method, node count, wall time, plus the
/// construction tag when one applies.
pub fn certificate_json(
    identity: &str,
    cert: &DecyclingCertificate,
    construction: Option<ConstructionKind>,
) -> Value {
    let mut v = json!({
        "graph": identity,
        "value": cert.value,
        "vertices": cert.set.to_vec(),
        "method": cert.method.as_str(),
        "optimality": cert.optimality.as_str(),
        "nodes": cert.nodes,
        "wall_time_secs": cert.wall_time.as_secs_f64(),
    });
    if let Some(kind) = construction {
        v["construction"] = json!(kind.as_str());
    }
    v
}

/// Sidecar JSON for an exported product: names the factors and pins the
/// index convention.
pub fn product_sidecar_json(factor1: &str, factor2: &str, n2: usize) -> Value {
    json!({
        "factors": [factor1, factor2],
        "index_convention": format!("(a, b) -> a * {n2} + b (row-major)"),
    })
}
