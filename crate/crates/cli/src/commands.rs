use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use slicckit::oracle::{orbit_consistency_campaign, rank_monotonicity_campaign, RandomSpec};
use slicckit::sio::{solve_equivalence, Mode};
use slicckit::table::classify_with;
use slicckit::{Registry, TableError, Thresholds, ThreeQubitPureState};

use crate::document::{load_state, parse_document, read_source};
use crate::report::{ClassificationReport, EquivVerdict, RegistryDoc};
use crate::{exit, to_json, CliError, Output};

pub fn classification(state: &ThreeQubitPureState, thr: &Thresholds) -> Result<ClassificationReport, CliError> {
    let c = classify_with(state, thr).map_err(|e| match e {
        TableError::State(s) => crate::document::state_error(s),
        other => CliError::Domain(other.to_string()),
    })?;
    let ranks = c.normalized.local_ranks(thr.rank);
    Ok(ClassificationReport::new(&c, ranks))
}

pub fn classify(source: &str, thr: &Thresholds) -> Result<Output, CliError> {
    let state = load_state(source)?;
    Ok(Output::ok(to_json(&classification(&state, thr)?)))
}

pub fn equiv(first: &str, second: &str, mode: Mode, thr: &Thresholds) -> Result<Output, CliError> {
    let psi = load_state(first)?;
    let phi = load_state(second)?;
    let verdict = solve_equivalence(&psi, &phi, mode, thr.supp);
    let table = (mode == Mode::Slicc).then(|| Registry::published().compare(&psi, &phi, thr.supp));
    Ok(Output::ok(to_json(&EquivVerdict::new(mode, &verdict, table.as_ref()))))
}

#[derive(Debug, Serialize)]
struct LineError {
    line: usize,
    code: u8,
    error: String,
}

/// One JSON line per nonblank input line, in input order. Lines are numbered
/// from 1 as they appear in the file.
pub fn batch(source: &str, thr: &Thresholds) -> Result<Output, CliError> {
    let start = Instant::now();
    let text = read_source(source)?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let results: Vec<Result<ClassificationReport, (usize, CliError)>> = lines
        .par_iter()
        .map(|&(n, l)| {
            parse_document(l)
                .and_then(|s| classification(&s, thr))
                .map_err(|e| (n, e))
        })
        .collect();

    let mut stdout = String::new();
    let mut failed = Vec::new();
    for r in &results {
        let line = match r {
            Ok(report) => serde_json::to_string(report),
            Err((n, e)) => {
                failed.push(e.exit_code());
                serde_json::to_string(&LineError {
                    line: *n,
                    code: e.exit_code(),
                    error: e.to_string(),
                })
            }
        };
        stdout.push_str(&line.expect("report types serialize"));
        stdout.push('\n');
    }
    let total = results.len();
    let code = if total > 0 && failed.len() == total {
        failed.iter().copied().min().unwrap_or(exit::INPUT)
    } else {
        exit::OK
    };
    let summary = format!(
        "{total} states, {} classified, {} failed ({:.3} s)",
        total - failed.len(),
        failed.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(Output {
        stdout,
        stderr: Some(summary),
        code,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Markdown,
}

pub fn table(format: TableFormat) -> Output {
    let doc = RegistryDoc::new(Registry::published());
    Output::ok(match format {
        TableFormat::Json => to_json(&doc),
        TableFormat::Markdown => doc.markdown(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orbit,
    Ranks,
}

pub fn check(suite: Suite, spec: &RandomSpec) -> Output {
    let report = match suite {
        Suite::Orbit => orbit_consistency_campaign(spec),
        Suite::Ranks => rank_monotonicity_campaign(spec),
    };
    let stderr = format!(
        "{} suite: {} trials, {} disagreements ({:.3} s)",
        report.suite,
        report.trials,
        report.disagreements.len(),
        report.elapsed.as_secs_f64()
    );
    Output {
        stdout: to_json(&report),
        stderr: Some(stderr),
        code: if report.is_clean() { exit::OK } else { exit::CHECK_FAILED },
    }
}
