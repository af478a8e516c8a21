use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{FieldSpec, JobKind};
use crate::error::{Error, Result};
use crate::field::{make_extension_field, Field, Rationals};
use crate::matrix::{rank_and_kernel, ExactMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Computed values without a verdict.
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Pass, _) | (_, Status::Pass) => Status::Pass,
            _ => Status::Info,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// A linear-algebra claim over the named field, with every entry written out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum Claim {
    /// The matrix has exactly this rank; the kernel dimension is `cols - rank`.
    Rank { cols: usize, matrix: Vec<Vec<String>>, rank: usize },
    /// The nonzero vector lies in the kernel of the matrix.
    Kernel { cols: usize, matrix: Vec<Vec<String>>, vector: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub label: String,
    pub field: FieldSpec,
    /// Defining polynomial of the extension, constant term first; empty over `Q`.
    pub modulus: Vec<u64>,
    #[serde(flatten)]
    pub claim: Claim,
}

impl Certificate {
    pub fn rank<F: Field>(label: impl Into<String>, spec: FieldSpec, f: &F, m: &ExactMatrix<F::Elem>, rank: usize) -> Self {
        Certificate {
            label: label.into(),
            field: spec,
            modulus: f.descriptor().modulus,
            claim: Claim::Rank { cols: m.cols(), matrix: render_matrix(f, m), rank },
        }
    }

    pub fn kernel<F: Field>(
        label: impl Into<String>,
        spec: FieldSpec,
        f: &F,
        m: &ExactMatrix<F::Elem>,
        v: &[F::Elem],
    ) -> Self {
        Certificate {
            label: label.into(),
            field: spec,
            modulus: f.descriptor().modulus,
            claim: Claim::Kernel {
                cols: m.cols(),
                matrix: render_matrix(f, m),
                vector: v.iter().map(|e| f.format(e)).collect(),
            },
        }
    }

    /// Kernel dimension implied by a rank claim.
    pub fn nullity(&self) -> Option<usize> {
        match &self.claim {
            Claim::Rank { cols, rank, .. } => Some(cols - rank),
            Claim::Kernel { .. } => None,
        }
    }

    /// Re-parses the entries and re-checks the claim from scratch.
    pub fn verify(&self) -> Result<bool> {
        match self.field.p {
            0 => self.verify_in(&Rationals),
            p => {
                let f = make_extension_field(p, self.field.k)?;
                if f.modulus() != self.modulus.as_slice() {
                    return Err(Error::Parse(format!("modulus {:?} does not match {:?}", self.modulus, f.modulus())));
                }
                self.verify_in(&f)
            }
        }
    }

    fn verify_in<F: Field>(&self, f: &F) -> Result<bool> {
        match &self.claim {
            Claim::Rank { cols, matrix, rank } => {
                let m = parse_matrix(f, *cols, matrix)?;
                Ok(rank_and_kernel(f, &m).rank == *rank)
            }
            Claim::Kernel { cols, matrix, vector } => {
                let m = parse_matrix(f, *cols, matrix)?;
                let v: Vec<F::Elem> = vector.iter().map(|s| f.parse(s)).collect::<Result<_>>()?;
                if v.len() != *cols || v.iter().all(|e| f.is_zero(e)) {
                    return Ok(false);
                }
                Ok(m.mul_vec(f, &v).iter().all(|e| f.is_zero(e)))
            }
        }
    }
}

fn render_matrix<F: Field>(f: &F, m: &ExactMatrix<F::Elem>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| f.format(e)).collect()).collect()
}

fn parse_matrix<F: Field>(f: &F, cols: usize, rows: &[Vec<String>]) -> Result<ExactMatrix<F::Elem>> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != cols {
            return Err(Error::Parse(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        out.push(r.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(ExactMatrix::from_rows(cols, out))
}

/// One job's outcome. `wall_ms` is left out of the JSON record so that
/// reruns compare byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub job_id: String,
    pub kind: JobKind,
    pub field: String,
    pub curve: String,
    pub inputs: serde_json::Value,
    pub values: serde_json::Value,
    pub status: Status,
    pub certificates: Vec<Certificate>,
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub rows: Vec<ResultRow>,
}

impl Report {
    pub fn status(&self) -> Status {
        self.rows.iter().fold(Status::Info, |acc, r| acc.and(r.status))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Columns: `job_id, kind, field, curve, status, certificates, values, wall_ms`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(CSV_COLUMNS).map_err(io)?;
        for r in &self.rows {
            let values = serde_json::to_string(&r.values).map_err(|e| Error::Io(e.to_string()))?;
            out.write_record([
                r.job_id.as_str(),
                r.kind.name(),
                r.field.as_str(),
                r.curve.as_str(),
                r.status.as_str(),
                &r.certificates.len().to_string(),
                &values,
                &r.wall_ms.to_string(),
            ])
            .map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Re-checks every certificate; returns `(job_id, label, ok)` per certificate.
    pub fn verify_certificates(&self) -> Result<Vec<(String, String, bool)>> {
        let mut out = Vec::new();
        for r in &self.rows {
            for c in &r.certificates {
                out.push((r.job_id.clone(), c.label.clone(), c.verify()?));
            }
        }
        Ok(out)
    }
}

pub const CSV_COLUMNS: [&str; 8] = ["job_id", "kind", "field", "curve", "status", "certificates", "values", "wall_ms"];
