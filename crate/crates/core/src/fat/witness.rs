use serde::{Deserialize, Serialize};

use super::{fat_kernel, lambda, section_from_coords, section_multiplicity, FatPoint};
use crate::atiyah::{AtiyahSurface, SectionVector};
use crate::curve::FuncElem;
use crate::error::{Error, Result};
use crate::fat::{certify_class, ClassCertificate, FatSample};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessComponent<E> {
    /// `D0` in `|F_q + N E_inf|`, singular of order `p` at every point.
    Base { section: SectionVector<E>, multiplicity: usize },
    /// A member of `|p E_inf|` through the point with the given index.
    PencilMember { point: usize, section: SectionVector<E>, multiplicity: usize },
    EInfinity { multiplicity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDivisor<E> {
    pub p: u64,
    pub level: usize,
    pub base_level: usize,
    pub points: Vec<FatPoint<E>>,
    pub components: Vec<WitnessComponent<E>>,
    /// Equation of the whole divisor as one section of `O_S(F_q + l E_inf)`.
    pub product: SectionVector<E>,
    /// Multiplicity of `product` at each point, capped at the requested one.
    pub achieved: Vec<usize>,
}

fn poly_mul<F: Field>(a: &AtiyahSurface<F>, x: &[FuncElem<F::Elem>], y: &[FuncElem<F::Elem>]) -> Vec<FuncElem<F::Elem>> {
    let c = a.curve();
    let fl = c.field();
    let mut out = vec![FuncElem::zero(fl); x.len() + y.len() - 1];
    for (i, f) in x.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (j, g) in y.iter().enumerate() {
            if !g.is_zero() {
                out[i + j] = out[i + j].add(fl, &f.mul(c, g));
            }
        }
    }
    out
}

fn multiply_out<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    components: &[WitnessComponent<F::Elem>],
) -> SectionVector<F::Elem> {
    let fl = a.field();
    let mut poly = vec![FuncElem::one(fl)];
    let mut twisted = false;
    for comp in components {
        match comp {
            WitnessComponent::Base { section, multiplicity } | WitnessComponent::PencilMember { section, multiplicity, .. } => {
                twisted |= section.twisted;
                for _ in 0..*multiplicity {
                    poly = poly_mul(a, &poly, &section.components);
                }
            }
            WitnessComponent::EInfinity { .. } => {}
        }
    }
    poly.resize(level + 1, FuncElem::zero(fl));
    SectionVector { level, twisted, components: poly }
}

fn check_condition(p: usize, level: usize, ms: &[usize]) -> Result<()> {
    if let Some(&m) = ms.iter().find(|&&m| m <= p) {
        return Err(Error::Precondition(format!("multiplicity {m} must exceed p = {p}")));
    }
    let n = ms.len();
    let sum: usize = ms.iter().sum();
    let squares: usize = ms.iter().map(|m| m * m).sum();
    let lhs = 2 * p * sum + n * (p * p - p);
    if !(lhs <= 2 * level && 2 * level < squares) {
        return Err(Error::Precondition(format!(
            "need 2p*sum(m) + n(p^2-p) <= 2l < sum(m^2), got {lhs} <= {} < {squares}",
            2 * level
        )));
    }
    Ok(())
}

/// Explicit member of `|F_q + l E_inf|` with the prescribed multiplicities in
/// characteristic `p`: `D0 + sum (m_i - p) E_i + r E_inf` with
/// `D0 in |F_q + N E_inf|`, `N = n p (p+1) / 2`, and `E_i in |p E_inf|`
/// through the `i`-th point.
pub fn char_p_witness<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    points: &[FatPoint<F::Elem>],
) -> Result<WitnessDivisor<F::Elem>> {
    let p = a.field().characteristic() as usize;
    if p == 0 {
        return Err(Error::Precondition("witness construction needs positive characteristic".into()));
    }
    let ms: Vec<usize> = points.iter().map(|f| f.m).collect();
    check_condition(p, level, &ms)?;
    let n = points.len();
    let base_level = n * p * (p + 1) / 2;
    let order_p: Vec<FatPoint<F::Elem>> = points.iter().map(|f| FatPoint { m: p, ..f.clone() }).collect();
    let fk = fat_kernel(a, base_level, true, &order_p)?;
    let coords = fk.kernel.first().ok_or_else(|| Error::Precondition("no base curve found".into()))?;
    let d0 = section_from_coords(a, base_level, true, coords)?;
    let mut components = vec![WitnessComponent::Base { section: d0, multiplicity: 1 }];
    for (i, fp) in points.iter().enumerate() {
        let through = FatPoint { m: 1, ..fp.clone() };
        let ek = fat_kernel(a, p, false, std::slice::from_ref(&through))?;
        let coords = ek.kernel.first().ok_or_else(|| Error::Precondition("no member of |pE| through point".into()))?;
        let section = section_from_coords(a, p, false, coords)?;
        components.push(WitnessComponent::PencilMember { point: i, section, multiplicity: fp.m - p });
    }
    let used: usize = base_level + points.iter().map(|f| p * (f.m - p)).sum::<usize>();
    let leftover = level - used;
    if leftover > 0 {
        components.push(WitnessComponent::EInfinity { multiplicity: leftover });
    }
    let product = multiply_out(a, level, &components);
    let achieved = points
        .iter()
        .map(|fp| section_multiplicity(a, &product, &fp.sample(), fp.m))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessDivisor { p: p as u64, level, base_level, points: points.to_vec(), components, product, achieved })
}

/// Re-derives the product from the components and checks regularity, the
/// class arithmetic and every multiplicity.
pub fn verify_witness<F: Field>(a: &AtiyahSurface<F>, w: &WitnessDivisor<F::Elem>) -> Result<bool> {
    let p = w.p as usize;
    let mut total = 0;
    let mut twists = 0;
    for comp in &w.components {
        match comp {
            WitnessComponent::Base { section, multiplicity } => {
                if !a.validate(section) || section.level != w.base_level || !section.twisted {
                    return Ok(false);
                }
                for fp in &w.points {
                    if section_multiplicity(a, section, &fp.sample(), p)? < p {
                        return Ok(false);
                    }
                }
                total += section.level * multiplicity;
                twists += multiplicity;
            }
            WitnessComponent::PencilMember { point, section, multiplicity } => {
                let fp = &w.points[*point];
                if !a.validate(section) || section.level != p || section.twisted {
                    return Ok(false);
                }
                if section_multiplicity(a, section, &fp.sample(), 1)? < 1 {
                    return Ok(false);
                }
                total += p * multiplicity;
            }
            WitnessComponent::EInfinity { multiplicity } => total += multiplicity,
        }
    }
    if total != w.level || twists != 1 {
        return Ok(false);
    }
    let product = multiply_out(a, w.level, &w.components);
    if product != w.product || !a.validate(&product) {
        return Ok(false);
    }
    for fp in &w.points {
        if section_multiplicity(a, &product, &fp.sample(), fp.m)? < fp.m {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop27Report {
    pub p: u64,
    pub class_certificate: ClassCertificate,
    pub lambda_pm1: Option<usize>,
    pub lambda_p: Option<usize>,
    pub holds: bool,
}

/// Computes `lambda(p-1)` and `lambda(p)` and checks `lambda(p) >= p + lambda(p-1)`.
pub fn prop27_check<F: Field>(a: &AtiyahSurface<F>, sample: &FatSample<F::Elem>) -> Result<Prop27Report> {
    let p = a.field().characteristic();
    if p == 0 {
        return Err(Error::Precondition("needs positive characteristic".into()));
    }
    let class_certificate = certify_class(a, &sample.base)?;
    let lp1 = lambda(a, p as usize - 1, sample)?;
    let lp = lambda(a, p as usize, sample)?;
    let (lambda_pm1, lambda_p) = (lp1.value(), lp.value());
    let holds = matches!((lambda_pm1, lambda_p), (Some(x), Some(y)) if y >= p as usize + x);
    Ok(Prop27Report { p, class_certificate, lambda_pm1, lambda_p, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveSpec, WeierstrassCurve};
    use crate::fat::sample_point;
    use crate::field::make_extension_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn condition_arithmetic() {
        assert!(check_condition(2, 11, &[5]).is_ok());
        assert!(check_condition(2, 10, &[5]).is_err());
        assert!(check_condition(2, 12, &[5]).is_ok());
        assert!(check_condition(2, 13, &[5]).is_err());
        for l in 0..20 {
            assert!(check_condition(2, l, &[3]).is_err());
        }
        assert!(check_condition(2, 11, &[2]).is_err());
    }

    #[test]
    fn char_two_witness_small_field() {
        let f = make_extension_field(2, 4).unwrap();
        let c = WeierstrassCurve::from_spec(f, &CurveSpec::new(["1", "0", "0", "0", "1"])).unwrap();
        let q = c.first_point_avoiding(&[]).unwrap();
        let a = AtiyahSurface::new(c, q, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = sample_point(&a, &mut rng);
        let w = char_p_witness(&a, 11, &[FatPoint::new(&s, 5)]).unwrap();
        assert_eq!(w.base_level, 3);
        assert_eq!(w.achieved, vec![5]);
        assert!(matches!(w.components.last(), Some(WitnessComponent::EInfinity { multiplicity: 2 })));
        assert!(verify_witness(&a, &w).unwrap());
    }
}
