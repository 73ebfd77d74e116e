//! The five subcommands. Each prints exactly one JSON report on standard
//! output and returns the process exit code: 0 pass, 1 certificate or
//! sweep failure, 2 parse error, 3 domain error or invalid request.

use std::path::Path;
use std::time::Instant;

use serde_json::json;

use cfrac_core::{
    certify_even_convergents, certify_even_tails, certify_odd_reverse, convergent_at,
    counterexample_sweep, minimal_disk_constant, origin_disk_sweep, reverse_sequence,
    shifted_disk_sweep, tail_sequence, CertificateTarget, ConvergentState, Disk, ExtendedComplex,
    Sector, SweepConfig, Theorem,
};

use crate::report::{
    certificate_json, complex_json, csv_number, print_report, sweep_json, target_name,
    theorem_name, write_csv,
};
use crate::spec::SequenceSpec;
use crate::CliError;

#[derive(Debug, Clone, Copy)]
pub enum EvalMode {
    Convergent,
    Tail,
    Reverse,
}

pub fn cmd_eval(
    spec_path: &Path,
    n: usize,
    w: ExtendedComplex,
    mode: EvalMode,
    slack: f64,
) -> Result<u8, CliError> {
    let started = Instant::now();
    let spec = SequenceSpec::load(spec_path)?;
    let seq = spec.build()?;
    let (mode_name, results) = match mode {
        EvalMode::Convergent => {
            let value = convergent_at(&seq, n, &w)?;
            ("convergent", json!({ "value": complex_json(&value) }))
        }
        EvalMode::Tail => {
            let tails = tail_sequence(&seq, n, w)?;
            let value = tails.last().expect("tail list is never empty");
            (
                "tail",
                json!({
                    "value": complex_json(value),
                    "tail_values": tails.iter().map(complex_json).collect::<Vec<_>>(),
                }),
            )
        }
        EvalMode::Reverse => {
            let value = reverse_sequence(&seq, n, w)?;
            ("reverse", json!({ "value": complex_json(&value) }))
        }
    };
    print_report(
        "eval",
        json!({
            "spec": spec,
            "n": n,
            "w": complex_json(&w),
            "mode": mode_name,
        }),
        results,
        None,
        slack,
        started,
    );
    Ok(0)
}

pub fn cmd_certify(
    spec_path: &Path,
    theorem: Theorem,
    target: CertificateTarget,
    w: ExtendedComplex,
    requested_radius: Option<f64>,
    tail_pairs: Option<usize>,
    slack: f64,
) -> Result<u8, CliError> {
    let started = Instant::now();
    let spec = SequenceSpec::load(spec_path)?;
    let seq = spec.build()?;
    // the declared sector wins; otherwise use the tightest sector holding
    // the materialized elements
    let theta = spec.sector_half_angle.unwrap_or_else(|| seq.max_abs_arg());
    let minimal = minimal_disk_constant(&seq, theorem, target, theta)?;
    let radius = requested_radius.unwrap_or(minimal);
    let disk = match theorem {
        Theorem::OriginDisk => Disk::origin(radius)?,
        Theorem::ShiftedDisk => Disk::shifted(radius)?,
    };
    let certificate = match target {
        CertificateTarget::EvenConvergents => {
            certify_even_convergents(&seq, &w, &disk, theta, slack)?
        }
        CertificateTarget::OddReverse => certify_odd_reverse(&seq, &w, &disk, theta, slack)?,
        CertificateTarget::EvenTails => {
            let pairs = tail_pairs.unwrap_or(seq.len() / 2);
            certify_even_tails(&seq, pairs, &w, &disk, theta, slack)?
        }
    };
    let code = u8::from(!certificate.passed);
    print_report(
        "certify",
        json!({
            "spec": spec,
            "theorem": theorem_name(theorem),
            "target": target_name(target),
            "w": complex_json(&w),
            "theta": theta,
            "requested_C": requested_radius,
            "n": tail_pairs,
        }),
        json!({
            "minimal_C": minimal,
            "certificate": certificate_json(&certificate),
        }),
        None,
        slack,
        started,
    );
    Ok(code)
}

pub fn cmd_counterexample(
    t_min: f64,
    t_max: f64,
    steps: usize,
    csv: Option<&Path>,
    slack: f64,
) -> Result<u8, CliError> {
    let started = Instant::now();
    let rows = counterexample_sweep(t_min, t_max, steps)?;
    let violations = rows.iter().filter(|(_, e)| e.violates).count();
    if let Some(path) = csv {
        let data: Vec<Vec<String>> = rows
            .iter()
            .map(|(t, e)| {
                vec![
                    csv_number(*t),
                    csv_number(e.lhs_squared),
                    csv_number(e.threshold),
                    e.violates.to_string(),
                ]
            })
            .collect();
        write_csv(path, "t,lhs_squared,threshold,violates", &data)?;
    }
    let row_json = |(t, e): &(f64, cfrac_core::CounterexampleEval)| {
        json!({
            "t": t,
            "lhs_squared": e.lhs_squared,
            "lhs_squared_closed_form": e.lhs_squared_closed_form,
            "threshold": e.threshold,
            "violates": e.violates,
        })
    };
    print_report(
        "counterexample",
        json!({
            "t_min": t_min,
            "t_max": t_max,
            "steps": steps,
            "csv": csv.map(|p| p.display().to_string()),
        }),
        json!({
            "violations": violations,
            "expected": steps,
            "first": rows.first().map(row_json),
            "last": rows.last().map(row_json),
        }),
        None,
        slack,
        started,
    );
    Ok(u8::from(violations != steps))
}

pub fn cmd_region_grid(
    spec_path: &Path,
    theorem: Theorem,
    grid_radius: Option<f64>,
    resolution: usize,
    csv: &Path,
    slack: f64,
) -> Result<u8, CliError> {
    let started = Instant::now();
    if resolution < 2 {
        return Err(CliError::Domain(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let spec = SequenceSpec::load(spec_path)?;
    let seq = spec.build()?;
    let theta = spec.sector_half_angle.unwrap_or_else(|| seq.max_abs_arg());
    let radius = minimal_disk_constant(&seq, theorem, CertificateTarget::EvenConvergents, theta)?;
    let disk = match theorem {
        Theorem::OriginDisk => Disk::origin(radius)?,
        Theorem::ShiftedDisk => Disk::shifted(radius)?,
    };
    let sector = match theorem {
        Theorem::OriginDisk => Some(Sector::new(theta)?.with_arg_tolerance(slack)),
        Theorem::ShiftedDisk => None,
    };
    let half_width = grid_radius.unwrap_or(radius);
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(CliError::Domain(format!(
            "grid radius must be positive, got {half_width}"
        )));
    }

    let depth = 2 * (seq.len() / 2);
    let mut state = ConvergentState::start(seq.element(1)?)?;
    for k in 2..=depth {
        state = state.step(seq.element(k)?)?;
    }

    let center = disk.center();
    let coord =
        |i: usize, c: f64| c - half_width + 2.0 * half_width * i as f64 / (resolution - 1) as f64;
    let mut rows = Vec::new();
    let mut skipped = 0usize;
    let mut in_disk_count = 0usize;
    for i in 0..resolution {
        for j in 0..resolution {
            let w = cfrac_core::Complex64::new(coord(i, center.re), coord(j, center.im));
            let admissible =
                disk.contains(w, slack) && sector.as_ref().is_none_or(|s| s.contains_value(w));
            if !admissible {
                skipped += 1;
                continue;
            }
            let value = state.convergent_at(&ExtendedComplex::finite(w));
            let (val_re, val_im, in_disk) = match value.to_complex() {
                Some(z) => (z.re, z.im, disk.contains(z, slack)),
                None => (f64::INFINITY, f64::INFINITY, false),
            };
            in_disk_count += usize::from(in_disk);
            rows.push(vec![
                csv_number(w.re),
                csv_number(w.im),
                csv_number(val_re),
                csv_number(val_im),
                in_disk.to_string(),
            ]);
        }
    }
    let evaluated = rows.len();
    write_csv(csv, "w_re,w_im,val_re,val_im,in_disk", &rows)?;
    print_report(
        "region-grid",
        json!({
            "spec": spec,
            "theorem": theorem_name(theorem),
            "theta": theta,
            "grid_radius": half_width,
            "resolution": resolution,
            "csv": csv.display().to_string(),
        }),
        json!({
            "C": radius,
            "even_depth": depth,
            "total_points": resolution * resolution,
            "skipped": skipped,
            "evaluated": evaluated,
            "in_disk": in_disk_count,
        }),
        None,
        slack,
        started,
    );
    Ok(u8::from(in_disk_count != evaluated))
}

pub fn cmd_sweep(
    theorem: Theorem,
    samples: usize,
    seed: u64,
    theta_max: Option<f64>,
    max_pairs: usize,
    slack: f64,
) -> Result<u8, CliError> {
    let started = Instant::now();
    let mut config = match theorem {
        Theorem::OriginDisk => SweepConfig::origin(samples),
        Theorem::ShiftedDisk => SweepConfig::shifted(samples),
    }
    .with_seed(seed)
    .with_slack(slack);
    if let Some(t) = theta_max {
        config = config.with_theta_max(t);
    }
    config.max_pairs = max_pairs;
    let report = match theorem {
        Theorem::OriginDisk => origin_disk_sweep(&config)?,
        Theorem::ShiftedDisk => shifted_disk_sweep(&config)?,
    };
    print_report(
        "sweep",
        json!({
            "theorem": theorem_name(theorem),
            "samples": samples,
            "theta_max": config.theta_max,
            "max_pairs": max_pairs,
        }),
        sweep_json(&report),
        Some(seed),
        slack,
        started,
    );
    Ok(u8::from(report.violations != 0))
}
