//! Run reports on standard output and CSV emission.
//!
//! Complex numbers go on the wire as `{re, im}` objects, infinity as the
//! string `"inf"`, angles always in radians. CSV numbers carry 17
//! significant digits so a reload loses nothing.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use cfrac_core::{
    CertificateTarget, Complex64, ExtendedComplex, RegionCertificate, SweepReport, Theorem,
};

use crate::CliError;

pub fn complex_json(v: &ExtendedComplex) -> Value {
    match v.to_complex() {
        Some(z) => json!({ "re": z.re, "im": z.im }),
        None => Value::String("inf".into()),
    }
}

pub fn complex64_json(z: Complex64) -> Value {
    if z.re.is_finite() && z.im.is_finite() {
        json!({ "re": z.re, "im": z.im })
    } else {
        Value::String("inf".into())
    }
}

pub fn theorem_name(t: Theorem) -> &'static str {
    match t {
        Theorem::OriginDisk => "origin-disk",
        Theorem::ShiftedDisk => "shifted-disk",
    }
}

pub fn target_name(t: CertificateTarget) -> &'static str {
    match t {
        CertificateTarget::EvenConvergents => "even-convergents",
        CertificateTarget::OddReverse => "odd-reverse",
        CertificateTarget::EvenTails => "even-tails",
    }
}

pub fn certificate_json(cert: &RegionCertificate) -> Value {
    json!({
        "theorem": theorem_name(cert.theorem),
        "target": target_name(cert.target),
        "C": cert.radius,
        "sup_quantity": cert.sup_quantity,
        "passed": cert.passed,
        "checked": cert.checked,
        "worst_index": cert.worst_index,
        "worst_value": complex64_json(cert.worst_value),
        "worst_margin": cert.worst_margin,
        "slack": cert.slack_used,
    })
}

pub fn sweep_json(report: &SweepReport) -> Value {
    json!({
        "samples": report.samples,
        "violations": report.violations,
        "worst_margin": report.worst_margin,
        "worst_sample": report.worst_sample,
        "seed": report.seed,
        "slack": report.slack,
    })
}

/// Prints the one report a command emits. Every field except `timing_ms`
/// is deterministic for fixed inputs and seed.
pub fn print_report(
    command: &str,
    inputs: Value,
    results: Value,
    seed: Option<u64>,
    slack: f64,
    started: Instant,
) {
    let mut report = json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "tolerances": { "slack": slack },
        "timing_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    if let Some(seed) = seed {
        report["seed"] = json!(seed);
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report is valid json")
    );
}

/// 17 significant digits, enough to round-trip any f64.
pub fn csv_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut out = String::with_capacity(rows.len() * 64 + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::Domain(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(out.as_bytes())
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))
}
