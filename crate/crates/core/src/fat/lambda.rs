use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{fat_kernel, h0_fat, section_from_coords, section_jets, FatPoint, FatSample};
use crate::atiyah::{AtiyahSurface, SectionVector};
use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{rank_and_kernel, ExactMatrix};

/// How the class `[P0 - q]` of a sample was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassCertificate {
    /// `k (P0 - q) != 0` for `1 <= k <= bound`.
    NonTorsion { bound: i64 },
    /// `p (P0 - q) != 0`.
    NotPTorsion { p: u64 },
    /// No condition checked.
    Unchecked,
}

/// Jet matrix one level below `lambda`, of full column rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness<E> {
    pub level: usize,
    pub matrix: ExactMatrix<E>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LambdaRecord<E> {
    pub m: usize,
    pub sample: FatSample<E>,
    /// `P0 - q` under the group law.
    pub class: CurvePoint<E>,
    pub class_certificate: ClassCertificate,
    pub lambda: usize,
    /// Coordinates of the certificate in the basis of `H^0(F_q + lambda E_inf)`.
    pub certificate_coords: Vec<E>,
    pub certificate: SectionVector<E>,
    pub witness: Option<RankWitness<E>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LambdaOutcome<E> {
    Found(LambdaRecord<E>),
    /// No curve up to the cap; the conjectured bound would be violated.
    ExceedsBound { m: usize, cap: usize },
}

impl<E> LambdaOutcome<E> {
    pub fn value(&self) -> Option<usize> {
        match self {
            LambdaOutcome::Found(r) => Some(r.lambda),
            LambdaOutcome::ExceedsBound { .. } => None,
        }
    }
}

/// Certifies the class of `base - q`: non-torsion up to 16 in characteristic
/// zero, not `p`-torsion in characteristic `p`.
pub fn certify_class<F: Field>(a: &AtiyahSurface<F>, base: &CurvePoint<F::Elem>) -> Result<ClassCertificate> {
    let c = a.curve();
    let d = c.sub(base, a.q());
    match c.field().characteristic() {
        0 => {
            if c.is_non_torsion_up_to(&d, 16) {
                Ok(ClassCertificate::NonTorsion { bound: 16 })
            } else {
                Err(Error::Torsion(format!("{} - q is torsion", c.format_point(base))))
            }
        }
        p => {
            if c.mul(p as i64, &d).is_infinity() {
                Err(Error::Torsion(format!("{} - q is {p}-torsion", c.format_point(base))))
            } else {
                Ok(ClassCertificate::NotPTorsion { p })
            }
        }
    }
}

/// Smallest `l` such that some curve in `|F_q + l E_inf|` has multiplicity at
/// least `m` at the sample. Search stops above `C(m+1, 2) + 2`.
pub fn lambda<F: Field>(a: &AtiyahSurface<F>, m: usize, sample: &FatSample<F::Elem>) -> Result<LambdaOutcome<F::Elem>> {
    lambda_with_cap(a, m, sample, m * (m + 1) / 2 + 2)
}

pub fn lambda_with_cap<F: Field>(
    a: &AtiyahSurface<F>,
    m: usize,
    sample: &FatSample<F::Elem>,
    cap: usize,
) -> Result<LambdaOutcome<F::Elem>> {
    if m == 0 {
        return Err(Error::Precondition("multiplicity must be at least 1".into()));
    }
    let class_certificate = match certify_class(a, &sample.base) {
        Ok(c) => c,
        Err(e) if a.field().characteristic() == 0 => return Err(e),
        Err(_) => ClassCertificate::Unchecked,
    };
    let fp = FatPoint::new(sample, m);
    let mut previous: Option<RankWitness<F::Elem>> = None;
    for level in 0..=cap {
        let fk = fat_kernel(a, level, true, std::slice::from_ref(&fp))?;
        if let Some(coords) = fk.kernel.first() {
            let certificate = section_from_coords(a, level, true, coords)?;
            return Ok(LambdaOutcome::Found(LambdaRecord {
                m,
                sample: sample.clone(),
                class: a.curve().sub(&sample.base, a.q()),
                class_certificate,
                lambda: level,
                certificate_coords: coords.clone(),
                certificate,
                witness: previous,
            }));
        }
        previous = Some(RankWitness { level, matrix: fk.eval.matrix, rank: fk.rank });
    }
    Ok(LambdaOutcome::ExceedsBound { m, cap })
}

/// Independent re-check of a record: the certificate section is regular on
/// both charts and all of its jets of order `< m` vanish when re-expanded from
/// its components; the witness matrix is rebuilt section by section and has
/// full column rank.
pub fn verify_lambda_record<F: Field>(a: &AtiyahSurface<F>, rec: &LambdaRecord<F::Elem>) -> Result<bool> {
    let fl = a.field();
    let s = &rec.certificate;
    if s.level != rec.lambda || !s.twisted || s.components.iter().all(|c| c.is_zero()) || !a.validate(s) {
        return Ok(false);
    }
    let fp = FatPoint::new(&rec.sample, rec.m);
    if !section_jets(a, s, &fp)?.iter().all(|v| fl.is_zero(v)) {
        return Ok(false);
    }
    match (&rec.witness, rec.lambda) {
        (None, 0) => Ok(true),
        (None, _) => Ok(false),
        (Some(w), l) => {
            if w.level + 1 != l {
                return Ok(false);
            }
            let (dim, secs) = a.h0_fq_le(w.level)?;
            let cols: Vec<Vec<F::Elem>> = secs.iter().map(|sv| section_jets(a, sv, &fp)).collect::<Result<_>>()?;
            let rebuilt = ExactMatrix::from_fn(fp.monomials().len(), dim, |i, j| cols[j][i].clone());
            let rank = rank_and_kernel(fl, &rebuilt).rank;
            Ok(rebuilt == w.matrix && rank == w.rank && rank == dim)
        }
    }
}

/// Largest `m` such that some curve of `|F_q + l E_inf|` has multiplicity `m` at the sample.
pub fn mu<F: Field>(a: &AtiyahSurface<F>, level: usize, sample: &FatSample<F::Elem>) -> Result<usize> {
    if level == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    let mut best = 0;
    for m in 1..=level + 2 {
        if h0_fat(a, level, &[FatPoint::new(sample, m)])? == 0 {
            break;
        }
        best = m;
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub m: usize,
    pub lambda: usize,
    pub trivial_lower: usize,
    pub square_lower: usize,
    pub upper: usize,
    pub holds: bool,
}

/// `C(m,2) + 1 <= lambda <= C(m+1,2)` and `lambda >= ceil(m^2 / 2)`.
pub fn lambda_bounds_char0(m: usize, lambda: usize) -> BoundCheck {
    let trivial_lower = m * (m - 1) / 2 + 1;
    let square_lower = (m * m).div_ceil(2);
    let upper = m * (m + 1) / 2;
    BoundCheck {
        m,
        lambda,
        trivial_lower,
        square_lower,
        upper,
        holds: trivial_lower <= lambda && square_lower <= lambda && lambda <= upper,
    }
}

/// A random point off `E_inf` whose base avoids infinity, `T` and `q`.
pub fn sample_point<F: Field>(a: &AtiyahSurface<F>, rng: &mut dyn RngCore) -> FatSample<F::Elem> {
    let c = a.curve();
    loop {
        let base = c.random_point(rng);
        if base.is_infinity() || &base == a.t() || &base == a.q() {
            continue;
        }
        return FatSample { base, w0: c.field().random(rng) };
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub values: Vec<usize>,
    pub minimum: usize,
    pub attained: usize,
    /// The minimum occurs at least twice.
    pub stable: bool,
}

/// `h0_fat` at several samples; a minimum seen only once flags the field as too small.
pub fn genericity_check<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    m: usize,
    samples: &[FatSample<F::Elem>],
) -> Result<GenericityReport> {
    let values: Vec<usize> =
        samples.iter().map(|s| h0_fat(a, level, &[FatPoint::new(s, m)])).collect::<Result<_>>()?;
    let minimum = values.iter().copied().min().unwrap_or(0);
    let attained = values.iter().filter(|&&v| v == minimum).count();
    Ok(GenericityReport { values, minimum, attained, stable: attained >= 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fat::tests::q_surface;
    use crate::field::Rationals;

    #[test]
    fn lambda_one_and_two_over_q() {
        let a = q_surface();
        let base = a.curve().parse_point("1", "1").unwrap();
        let sample = FatSample { base, w0: Rationals.from_i64(5) };
        for (m, want) in [(1, 1), (2, 3)] {
            let LambdaOutcome::Found(rec) = lambda(&a, m, &sample).unwrap() else { panic!() };
            assert_eq!(rec.lambda, want);
            assert!(verify_lambda_record(&a, &rec).unwrap());
            assert!(lambda_bounds_char0(m, rec.lambda).holds);
        }
        assert_eq!(mu(&a, 1, &sample).unwrap(), 1);
        assert_eq!(mu(&a, 3, &sample).unwrap(), 2);
    }

    #[test]
    fn tampered_certificate_fails() {
        let a = q_surface();
        let base = a.curve().parse_point("-1", "1").unwrap();
        let sample = FatSample { base, w0: Rationals.from_i64(0) };
        let LambdaOutcome::Found(mut rec) = lambda(&a, 2, &sample).unwrap() else { panic!() };
        rec.sample.w0 = Rationals.from_i64(1);
        assert!(!verify_lambda_record(&a, &rec).unwrap());
    }

    #[test]
    fn bounds() {
        assert!(lambda_bounds_char0(3, 6).holds);
        assert!(!lambda_bounds_char0(3, 4).holds);
        assert_eq!(lambda_bounds_char0(4, 9).square_lower, 8);
    }
}
