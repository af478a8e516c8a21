//! Experiment runner: TOML configuration, a work pool over jobs, and reports
//! in JSON and CSV.

mod compare;
mod config;
mod jobs;
mod report;

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

pub use compare::{compare_characteristics, ComparisonRow, ComparisonTable};
pub use config::{ExperimentConfig, FieldSpec, JobKind, JobParams, JobSpec, ResolvedJob};
pub use report::{Certificate, Claim, Report, ResultRow, Status, CSV_COLUMNS};

use crate::error::{Error, Result};

/// Runs every job of the config on a pool of `threads` workers (all cores
/// when `None`); rows come back in config order.
pub fn run(config: &ExperimentConfig, threads: Option<usize>) -> Result<Report> {
    let jobs = config.resolve()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let rows: Vec<Result<ResultRow>> = pool.install(|| jobs.par_iter().map(|j| run_one(j, config.seed)).collect());
    Ok(Report { seed: config.seed, rows: rows.into_iter().collect::<Result<_>>()? })
}

fn run_one(job: &ResolvedJob, seed: u64) -> Result<ResultRow> {
    let start = Instant::now();
    let out = jobs::run_job(job, seed).map_err(|e| Error::Job { id: job.id.clone(), source: Box::new(e) })?;
    Ok(ResultRow {
        job_id: job.id.clone(),
        kind: job.kind,
        field: job.field.label(),
        curve: format!("[{}]", job.curve.join(", ")),
        inputs: json!({ "q": job.q, "t": job.t, "params": job.params }),
        values: out.values,
        status: out.status,
        certificates: out.certificates,
        wall_ms: start.elapsed().as_millis(),
    })
}
