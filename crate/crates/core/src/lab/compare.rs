use serde::{Deserialize, Serialize};

use super::config::FieldSpec;
use super::report::Certificate;
use crate::atiyah::AtiyahSurface;
use crate::curve::{has_bad_reduction, CurveSpec, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::fat::{fat_kernel, FatPoint};
use crate::field::{make_extension_field, Field, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub level: usize,
    pub m: usize,
    pub q: String,
    pub point: String,
    pub h0_char0: usize,
    pub h0_charp: usize,
    pub holds: bool,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub p: u64,
    pub k: u32,
    pub rows: Vec<ComparisonRow>,
}

struct Side<F: Field> {
    spec: FieldSpec,
    curve: WeierstrassCurve<F>,
}

impl<F: Field> Side<F> {
    fn h0(&self, q: &[String; 2], pt: &[String; 2], level: usize, m: usize, label: &str) -> Result<(usize, Certificate)> {
        let c = &self.curve;
        let q = c.parse_point(&q[0], &q[1])?;
        let base = c.parse_point(&pt[0], &pt[1])?;
        if base == q {
            return Err(Error::Precondition(format!("points {} and q coincide over {}", c.format_point(&base), self.spec.label())));
        }
        let a = AtiyahSurface::new(c.clone(), q, None)?;
        let fp = FatPoint { base, w0: c.field().zero(), m };
        let fk = fat_kernel(&a, level, true, &[fp])?;
        let cert = Certificate::rank(format!("{label} over {}", self.spec.label()), self.spec, c.field(), &fk.eval.matrix, fk.rank);
        Ok((fk.kernel.len(), cert))
    }
}

/// `h0_fat` over the rationals and over `F_{p^k}` for every `(level, m)` pair
/// and every ordered pair `(q, P)` of distinct points from `points`, with the
/// fat point at fiber coordinate zero over `P`.
pub fn compare_characteristics(
    spec: &CurveSpec,
    p: u64,
    k: u32,
    pairs: &[(usize, usize)],
    points: &[[String; 2]],
) -> Result<ComparisonTable> {
    if has_bad_reduction(spec, p)? {
        return Err(Error::BadReduction(p));
    }
    let zero = Side { spec: FieldSpec::RATIONALS, curve: WeierstrassCurve::from_spec(Rationals, spec)? };
    let red = Side { spec: FieldSpec { p, k }, curve: WeierstrassCurve::from_spec(make_extension_field(p, k)?, spec)? };
    let mut rows = Vec::new();
    for &(level, m) in pairs {
        for (i, q) in points.iter().enumerate() {
            for (j, pt) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let label = format!("level {level}, m {m}, q ({}, {}), P ({}, {})", q[0], q[1], pt[0], pt[1]);
                let (h0_char0, c0) = zero.h0(q, pt, level, m, &label)?;
                let (h0_charp, cp) = red.h0(q, pt, level, m, &label)?;
                rows.push(ComparisonRow {
                    level,
                    m,
                    q: format!("({}, {})", q[0], q[1]),
                    point: format!("({}, {})", pt[0], pt[1]),
                    h0_char0,
                    h0_charp,
                    holds: h0_charp >= h0_char0,
                    certificates: vec![c0, cp],
                });
            }
        }
    }
    Ok(ComparisonTable { p, k, rows })
}
