use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::compare::compare_characteristics;
use super::config::{FieldSpec, JobKind, ResolvedJob};
use super::report::{Certificate, Status};
use crate::atiyah::AtiyahSurface;
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::fat::{
    certify_class, char_p_witness, expdim, fat_kernel, jet_matrix, lambda_bounds_char0, lambda_with_cap, mu,
    sample_point, verify_lambda_record, verify_witness, ClassCertificate, FatPoint, FatSample, LambdaOutcome,
    LambdaRecord, WitnessComponent,
};
use crate::field::{make_extension_field, Field, Rationals};

pub(crate) struct JobOutput {
    pub values: Value,
    pub status: Status,
    pub certificates: Vec<Certificate>,
}

pub(crate) fn run_job(job: &ResolvedJob, seed: u64) -> Result<JobOutput> {
    if job.kind == JobKind::CompareChar {
        return compare_job(job);
    }
    match job.field.p {
        0 => Ctx::new(Rationals, job, seed)?.run(),
        p => Ctx::new(make_extension_field(p, job.field.k)?, job, seed)?.run(),
    }
}

/// FNV-1a, so that a job's random stream depends only on the seed and its id.
fn stream_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

struct Ctx<'a, F: Field> {
    job: &'a ResolvedJob,
    spec: FieldSpec,
    curve: WeierstrassCurve<F>,
    rng: ChaCha8Rng,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn new(field: F, job: &'a ResolvedJob, seed: u64) -> Result<Self> {
        let curve = WeierstrassCurve::from_spec(field, &job.curve_spec())?;
        Ok(Ctx { job, spec: job.field, curve, rng: ChaCha8Rng::seed_from_u64(stream_seed(seed, &job.id)) })
    }

    fn field(&self) -> &F {
        self.curve.field()
    }

    fn surface(&self) -> Result<AtiyahSurface<F>> {
        let c = &self.curve;
        let q = match &self.job.q {
            Some([x, y]) => c.parse_point(x, y)?,
            None => c
                .first_point_avoiding(&[])
                .ok_or_else(|| Error::Precondition("no affine point available for q".into()))?,
        };
        let t = self.job.t.as_ref().map(|[x, y]| c.parse_point(x, y)).transpose()?;
        AtiyahSurface::new(c.clone(), q, t)
    }

    fn point_json(&self, s: &FatSample<F::Elem>) -> Value {
        json!({ "base": self.curve.format_point(&s.base), "w0": self.field().format(&s.w0) })
    }

    /// Explicit points, or `count` random samples with distinct bases; with
    /// `p_torsion_free` set, random draws whose class is `p`-torsion are skipped.
    fn samples(&mut self, a: &AtiyahSurface<F>, count: usize, p_torsion_free: bool) -> Result<Vec<FatSample<F::Elem>>> {
        let params = &self.job.params;
        if !params.points.is_empty() {
            return params
                .points
                .iter()
                .map(|pt| {
                    let base = self.curve.parse_point(&pt[0], &pt[1])?;
                    let w0 = match pt.get(2) {
                        Some(w) => self.field().parse(w)?,
                        None => self.field().zero(),
                    };
                    Ok(FatSample { base, w0 })
                })
                .collect();
        }
        let mut out: Vec<FatSample<F::Elem>> = Vec::with_capacity(count);
        let mut tries = 0;
        while out.len() < count {
            tries += 1;
            if tries > 10_000 {
                return Err(Error::Precondition("could not draw enough sample points".into()));
            }
            let s = sample_point(a, &mut self.rng);
            if out.iter().any(|o| o.base == s.base) || (p_torsion_free && certify_class(a, &s.base).is_err()) {
                continue;
            }
            out.push(s);
        }
        Ok(out)
    }

    fn run(mut self) -> Result<JobOutput> {
        match self.job.kind {
            JobKind::GroupOrder => self.group_order(),
            JobKind::H0 => self.h0(),
            JobKind::VerifyProp22 => self.dimension_check(false),
            JobKind::VerifyProp23 => self.dimension_check(true),
            JobKind::H0Fat => self.h0_fat(),
            JobKind::Lambda => self.lambda(),
            JobKind::Mu => self.mu(),
            JobKind::VerifyProp27 => self.prop27(),
            JobKind::ExampleTheorem => self.example_theorem(),
            JobKind::CompareChar => unreachable!("dispatched before field selection"),
        }
    }

    fn group_order(&self) -> Result<JobOutput> {
        let g = self.curve.group_structure_small()?;
        let status = match self.job.params.expect {
            Some(n) => Status::from_bool(g.order == n),
            None => Status::Info,
        };
        Ok(JobOutput {
            values: json!({
                "order": g.order,
                "cyclic": g.cyclic,
                "exponent": g.exponent,
                "generator": self.curve.format_point(&g.generator),
            }),
            status,
            certificates: Vec::new(),
        })
    }

    fn space_certificate(&self, label: String, a: &AtiyahSurface<F>, level: usize, twisted: bool) -> Result<(usize, Certificate)> {
        let space = a.section_space(level, twisted)?;
        let cert = Certificate::rank(label, self.spec, self.field(), &space.conditions, space.rank);
        Ok((space.dimension(), cert))
    }

    fn h0(&self) -> Result<JobOutput> {
        let a = self.surface()?;
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        for l in self.job.params.level_range() {
            let (ne, c1) = self.space_certificate(format!("h0_ne({l})"), &a, l, false)?;
            let (fq, c2) = self.space_certificate(format!("h0_fq_le({l})"), &a, l, true)?;
            values.push(json!({ "level": l, "h0_ne": ne, "h0_fq_le": fq }));
            certificates.extend([c1, c2]);
        }
        Ok(JobOutput { values: Value::Array(values), status: Status::Info, certificates })
    }

    fn dimension_check(&self, twisted: bool) -> Result<JobOutput> {
        let a = self.surface()?;
        let p = self.field().characteristic() as usize;
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        let mut ok = true;
        for l in self.job.params.level_range() {
            let (label, expected) = match (twisted, p) {
                (true, _) => (format!("h0_fq_le({l})"), l + 1),
                (false, 0) => (format!("h0_ne({l})"), 1),
                (false, p) => (format!("h0_ne({l})"), l / p + 1),
            };
            let (dim, cert) = self.space_certificate(label, &a, l, twisted)?;
            ok &= dim == expected;
            values.push(json!({ "level": l, "dimension": dim, "expected": expected }));
            certificates.push(cert);
        }
        Ok(JobOutput { values: Value::Array(values), status: Status::from_bool(ok), certificates })
    }

    fn h0_fat(&mut self) -> Result<JobOutput> {
        let a = self.surface()?;
        let samples = self.samples(&a, self.job.params.samples.unwrap_or(1), false)?;
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        for (si, s) in samples.iter().enumerate() {
            for l in self.job.params.level_range() {
                for &m in &self.job.params.multiplicities {
                    let fk = fat_kernel(&a, l, true, &[FatPoint::new(s, m)])?;
                    let h0 = fk.kernel.len();
                    let e = expdim(fk.eval.matrix.cols() as i64 - 1, &[m]);
                    values.push(json!({
                        "sample": si,
                        "point": self.point_json(s),
                        "level": l,
                        "m": m,
                        "h0": h0,
                        "expdim": e,
                        "special": h0 as i64 - 1 > e,
                    }));
                    let label = format!("jets(sample {si}, level {l}, m {m})");
                    certificates.push(Certificate::rank(label, self.spec, self.field(), &fk.eval.matrix, fk.rank));
                }
            }
        }
        Ok(JobOutput { values: Value::Array(values), status: Status::Info, certificates })
    }

    fn class_json(c: &ClassCertificate) -> Value {
        match c {
            ClassCertificate::NonTorsion { bound } => json!(format!("non-torsion up to {bound}")),
            ClassCertificate::NotPTorsion { p } => json!(format!("not {p}-torsion")),
            ClassCertificate::Unchecked => json!("unchecked"),
        }
    }

    /// Kernel certificate at `lambda` and full-rank certificate one level below.
    fn lambda_certificates(&self, a: &AtiyahSurface<F>, rec: &LambdaRecord<F::Elem>, tag: &str) -> Result<(bool, Vec<Certificate>)> {
        let fp = FatPoint::new(&rec.sample, rec.m);
        let eval = jet_matrix(a, rec.lambda, std::slice::from_ref(&fp))?;
        let mut certs =
            vec![Certificate::kernel(format!("{tag} kernel at {}", rec.lambda), self.spec, self.field(), &eval.matrix, &rec.certificate_coords)];
        let mut full = true;
        if let Some(w) = &rec.witness {
            full = w.rank == w.matrix.cols();
            certs.push(Certificate::rank(format!("{tag} full rank at {}", w.level), self.spec, self.field(), &w.matrix, w.rank));
        }
        Ok((full && verify_lambda_record(a, rec)?, certs))
    }

    fn lambda(&mut self) -> Result<JobOutput> {
        let a = self.surface()?;
        let samples = self.samples(&a, self.job.params.samples.unwrap_or(1), false)?;
        let char0 = self.field().characteristic() == 0;
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        let mut status = Status::Pass;
        for (si, s) in samples.iter().enumerate() {
            for &m in &self.job.params.multiplicities {
                let cap = self.job.params.cap.unwrap_or(m * (m + 1) / 2 + 2);
                match lambda_with_cap(&a, m, s, cap)? {
                    LambdaOutcome::Found(rec) => {
                        let (verified, certs) = self.lambda_certificates(&a, &rec, &format!("sample {si}, m {m}"))?;
                        let bounds = char0.then(|| lambda_bounds_char0(m, rec.lambda));
                        let ok = verified && bounds.as_ref().is_none_or(|b| b.holds);
                        status = status.and(Status::from_bool(ok));
                        values.push(json!({
                            "sample": si,
                            "point": self.point_json(s),
                            "m": m,
                            "lambda": rec.lambda,
                            "class": self.curve.format_point(&rec.class),
                            "class_certificate": Self::class_json(&rec.class_certificate),
                            "bounds": bounds,
                            "verified": verified,
                            "curve": rec.certificate.components.iter().map(|f| f.render(self.field())).collect::<Vec<_>>(),
                        }));
                        certificates.extend(certs);
                    }
                    LambdaOutcome::ExceedsBound { m, cap } => {
                        status = Status::Fail;
                        values.push(json!({ "sample": si, "point": self.point_json(s), "m": m, "lambda": null, "cap": cap }));
                    }
                }
            }
        }
        Ok(JobOutput { values: Value::Array(values), status, certificates })
    }

    fn mu(&mut self) -> Result<JobOutput> {
        let a = self.surface()?;
        let samples = self.samples(&a, self.job.params.samples.unwrap_or(1), false)?;
        let mut values = Vec::new();
        for (si, s) in samples.iter().enumerate() {
            for l in self.job.params.level_range() {
                values.push(json!({ "sample": si, "point": self.point_json(s), "level": l, "mu": mu(&a, l, s)? }));
            }
        }
        Ok(JobOutput { values: Value::Array(values), status: Status::Info, certificates: Vec::new() })
    }

    fn prop27(&mut self) -> Result<JobOutput> {
        let a = self.surface()?;
        let p = self.field().characteristic() as usize;
        let samples = self.samples(&a, self.job.params.samples.unwrap_or(1), true)?;
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        let mut status = Status::Pass;
        for (si, s) in samples.iter().enumerate() {
            let class = certify_class(&a, &s.base);
            let mut lambdas = Vec::new();
            let mut verified = true;
            for m in [p - 1, p] {
                match lambda_with_cap(&a, m, s, self.job.params.cap.unwrap_or(m * (m + 1) / 2 + 2))? {
                    LambdaOutcome::Found(rec) => {
                        let (ok, certs) = self.lambda_certificates(&a, &rec, &format!("sample {si}, m {m}"))?;
                        verified &= ok;
                        certificates.extend(certs);
                        lambdas.push(Some(rec.lambda));
                    }
                    LambdaOutcome::ExceedsBound { .. } => lambdas.push(None),
                }
            }
            let holds = matches!((lambdas[0], lambdas[1]), (Some(x), Some(y)) if y >= p + x);
            status = status.and(Status::from_bool(holds && verified && class.is_ok()));
            values.push(json!({
                "sample": si,
                "point": self.point_json(s),
                "p": p,
                "class_certificate": match &class {
                    Ok(c) => Self::class_json(c),
                    Err(e) => json!(e.to_string()),
                },
                "lambda_p_minus_1": lambdas[0],
                "lambda_p": lambdas[1],
                "holds": holds,
                "verified": verified,
            }));
        }
        Ok(JobOutput { values: Value::Array(values), status, certificates })
    }

    fn example_theorem(&mut self) -> Result<JobOutput> {
        let a = self.surface()?;
        let params = &self.job.params;
        let level = params.levels[0];
        let ms = params.multiplicities.clone();
        let samples = self.samples(&a, ms.len(), false)?;
        if samples.len() != ms.len() {
            return Err(Error::Precondition(format!("{} points given for {} multiplicities", samples.len(), ms.len())));
        }
        let fps: Vec<FatPoint<F::Elem>> = samples.iter().zip(&ms).map(|(s, &m)| FatPoint::new(s, m)).collect();
        let points: Vec<Value> = samples.iter().map(|s| self.point_json(s)).collect();
        let fk = fat_kernel(&a, level, true, &fps)?;
        let h0 = fk.kernel.len();
        if self.field().characteristic() == 0 {
            let classes: Vec<Result<ClassCertificate>> = samples.iter().map(|s| certify_class(&a, &s.base)).collect();
            let certified = classes.iter().all(|c| c.is_ok());
            let cert = Certificate::rank(format!("jets at level {level}"), self.spec, self.field(), &fk.eval.matrix, fk.rank);
            return Ok(JobOutput {
                values: json!({
                    "level": level,
                    "multiplicities": ms,
                    "points": points,
                    "class_certificates": classes.iter().map(|c| match c {
                        Ok(c) => Self::class_json(c),
                        Err(e) => json!(e.to_string()),
                    }).collect::<Vec<_>>(),
                    "h0": h0,
                    "empty": h0 == 0,
                }),
                status: Status::from_bool(certified && h0 == 0),
                certificates: vec![cert],
            });
        }
        let w = char_p_witness(&a, level, &fps)?;
        let verified = verify_witness(&a, &w)?;
        let achieved_ok = w.achieved.iter().zip(&ms).all(|(x, m)| x >= m);
        let mut certificates = Vec::new();
        if let Some(v) = fk.kernel.first() {
            certificates.push(Certificate::kernel(format!("jets at level {level}"), self.spec, self.field(), &fk.eval.matrix, v));
        }
        Ok(JobOutput {
            values: json!({
                "level": level,
                "multiplicities": ms,
                "points": points,
                "h0": h0,
                "witness": witness_label(&w.components),
                "base_level": w.base_level,
                "achieved": w.achieved,
                "verified": verified,
                "equation": w.product.components.iter().map(|f| f.render(self.field())).collect::<Vec<_>>(),
            }),
            status: Status::from_bool(verified && achieved_ok && h0 > 0),
            certificates,
        })
    }
}

/// `D0 + 3*E1 + 2*Einf`, with pencil members numbered from 1.
fn witness_label<E>(components: &[WitnessComponent<E>]) -> String {
    let term = |m: usize, name: String| if m == 1 { name } else { format!("{m}*{name}") };
    components
        .iter()
        .map(|c| match c {
            WitnessComponent::Base { multiplicity, .. } => term(*multiplicity, "D0".into()),
            WitnessComponent::PencilMember { point, multiplicity, .. } => term(*multiplicity, format!("E{}", point + 1)),
            WitnessComponent::EInfinity { multiplicity } => term(*multiplicity, "Einf".into()),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn compare_job(job: &ResolvedJob) -> Result<JobOutput> {
    let params = &job.params;
    let points: Vec<[String; 2]> = params
        .points
        .iter()
        .map(|pt| [pt[0].clone(), pt[1].clone()])
        .collect();
    let p = params.p.expect("checked at load");
    let table = compare_characteristics(&job.curve_spec(), p, params.k.unwrap_or(1), &params.pairs, &points)?;
    let status = if table.rows.is_empty() { Status::Info } else { Status::from_bool(table.rows.iter().all(|r| r.holds)) };
    let certificates = table.rows.iter().flat_map(|r| r.certificates.iter().cloned()).collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "level": r.level,
                "m": r.m,
                "q": r.q,
                "point": r.point,
                "h0_char0": r.h0_char0,
                "h0_charp": r.h0_charp,
                "holds": r.holds,
            })
        })
        .collect();
    Ok(JobOutput { values: json!({ "p": table.p, "k": table.k, "rows": rows }), status, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurvePoint;

    #[test]
    fn stream_seed_separates_ids() {
        assert_ne!(stream_seed(1, "a"), stream_seed(1, "b"));
        assert_eq!(stream_seed(5, "job"), stream_seed(5, "job"));
    }

    #[test]
    fn witness_labels() {
        let comps: Vec<WitnessComponent<u64>> =
            vec![WitnessComponent::EInfinity { multiplicity: 2 }, WitnessComponent::EInfinity { multiplicity: 1 }];
        assert_eq!(witness_label(&comps), "2*Einf + Einf");
    }

    #[test]
    fn infinity_is_not_a_sample_base() {
        let f = make_extension_field(5, 1).unwrap();
        let job = ResolvedJob {
            id: "x".into(),
            kind: JobKind::H0Fat,
            curve: ["0", "0", "0", "1", "1"].map(String::from),
            field: FieldSpec { p: 5, k: 1 },
            q: None,
            t: None,
            params: Default::default(),
        };
        let mut ctx = Ctx::new(f, &job, 1).unwrap();
        let a = ctx.surface().unwrap();
        for s in ctx.samples(&a, 3, false).unwrap() {
            assert_ne!(s.base, CurvePoint::Infinity);
        }
    }
}
