use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSpec, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{make_extension_field, Field, Rationals};

/// `p = 0` selects the rationals; otherwise `F_{p^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { p: 0, k: 1 };

    pub fn label(&self) -> String {
        match (self.p, self.k) {
            (0, _) => "Q".into(),
            (p, 1) => format!("F{p}"),
            (p, k) => format!("F{p}^{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    H0,
    H0Fat,
    Lambda,
    Mu,
    VerifyProp22,
    VerifyProp23,
    VerifyProp27,
    ExampleTheorem,
    GroupOrder,
    CompareChar,
}

impl JobKind {
    pub fn name(&self) -> &'static str {
        match self {
            JobKind::H0 => "h0",
            JobKind::H0Fat => "h0-fat",
            JobKind::Lambda => "lambda",
            JobKind::Mu => "mu",
            JobKind::VerifyProp22 => "verify-prop22",
            JobKind::VerifyProp23 => "verify-prop23",
            JobKind::VerifyProp27 => "verify-prop27",
            JobKind::ExampleTheorem => "example-theorem",
            JobKind::GroupOrder => "group-order",
            JobKind::CompareChar => "compare-char",
        }
    }
}

/// Parameters shared by all job kinds; each kind reads the ones it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobParams {
    /// Inclusive range `[lo, hi]`, a single level `[l]`, or empty.
    pub levels: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// `(level, multiplicity)` rows for `compare-char`.
    pub pairs: Vec<(usize, usize)>,
    /// Explicit sample points `[x, y]` or `[x, y, w0]`.
    pub points: Vec<Vec<String>>,
    /// Random samples drawn when `points` is empty.
    pub samples: Option<usize>,
    pub cap: Option<usize>,
    /// Target characteristic and degree for `compare-char`.
    pub p: Option<u64>,
    pub k: Option<u32>,
    /// Expected group order for `group-order`.
    pub expect: Option<u64>,
}

impl JobParams {
    pub fn level_range(&self) -> Vec<usize> {
        match self.levels.as_slice() {
            [] => Vec::new(),
            [l] => vec![*l],
            [lo, hi, ..] => (*lo..=*hi).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub id: String,
    pub kind: JobKind,
    pub curve: Option<[String; 5]>,
    pub field: Option<FieldSpec>,
    pub q: Option<[String; 2]>,
    pub t: Option<[String; 2]>,
    #[serde(default)]
    pub params: JobParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub curve: Option<[String; 5]>,
    pub field: Option<FieldSpec>,
    pub q: Option<[String; 2]>,
    pub t: Option<[String; 2]>,
    #[serde(default, rename = "job")]
    pub jobs: Vec<JobSpec>,
}

/// A job with the surface data filled in from the config defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedJob {
    pub id: String,
    pub kind: JobKind,
    pub curve: [String; 5],
    pub field: FieldSpec,
    pub q: Option<[String; 2]>,
    pub t: Option<[String; 2]>,
    pub params: JobParams,
}

impl ResolvedJob {
    pub fn curve_spec(&self) -> CurveSpec {
        CurveSpec { a: self.curve.clone() }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.resolve()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Fills defaults into every job and checks that each field, curve and
    /// point is well formed.
    pub fn resolve(&self) -> Result<Vec<ResolvedJob>> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.jobs.len());
        for job in &self.jobs {
            if !seen.insert(job.id.as_str()) {
                return Err(Error::Config(format!("duplicate job id {:?}", job.id)));
            }
            let curve = job
                .curve
                .clone()
                .or_else(|| self.curve.clone())
                .ok_or_else(|| Error::Config(format!("job {}: no curve given", job.id)))?;
            let field = job.field.or(self.field).unwrap_or(FieldSpec::RATIONALS);
            let resolved = ResolvedJob {
                id: job.id.clone(),
                kind: job.kind,
                curve,
                field,
                q: job.q.clone().or_else(|| self.q.clone()),
                t: job.t.clone().or_else(|| self.t.clone()),
                params: job.params.clone(),
            };
            check_job(&resolved).map_err(|e| Error::Config(format!("job {}: {e}", job.id)))?;
            out.push(resolved);
        }
        Ok(out)
    }
}

fn check_job(job: &ResolvedJob) -> Result<()> {
    match job.field.p {
        0 => check_on(Rationals, job)?,
        p => check_on(make_extension_field(p, job.field.k)?, job)?,
    }
    let p = &job.params;
    if p.levels.len() > 2 {
        return Err(Error::Config("levels takes at most two entries".into()));
    }
    if p.multiplicities.contains(&0) || p.pairs.iter().any(|&(_, m)| m == 0) {
        return Err(Error::Config("multiplicities must be positive".into()));
    }
    match job.kind {
        JobKind::VerifyProp27 if job.field.p == 0 => {
            return Err(Error::Config("verify-prop27 needs a finite field".into()));
        }
        JobKind::CompareChar => {
            if job.field.p != 0 {
                return Err(Error::Config("compare-char runs on a curve over Q".into()));
            }
            if p.p.is_none() {
                return Err(Error::Config("compare-char needs params.p".into()));
            }
        }
        JobKind::ExampleTheorem if p.levels.len() != 1 || p.multiplicities.is_empty() => {
            return Err(Error::Config("example-theorem needs one level and a multiplicity list".into()));
        }
        JobKind::Mu if p.level_range().contains(&0) => {
            return Err(Error::Config("mu needs levels >= 1".into()));
        }
        _ => {}
    }
    Ok(())
}

fn check_on<F: Field>(field: F, job: &ResolvedJob) -> Result<()> {
    let curve = WeierstrassCurve::from_spec(field, &job.curve_spec())?;
    for pt in job.q.iter().chain(job.t.iter()) {
        curve.parse_point(&pt[0], &pt[1])?;
    }
    for pt in &job.params.points {
        match pt.as_slice() {
            [x, y] => {
                curve.parse_point(x, y)?;
            }
            [x, y, w] => {
                curve.parse_point(x, y)?;
                curve.field().parse(w)?;
            }
            _ => return Err(Error::Config(format!("point {pt:?} needs two or three coordinates"))),
        }
    }
    Ok(())
}
