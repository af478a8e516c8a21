//! Jet conditions at fat points and the dimension of `|F_q + l E_inf|`
//! through them.

mod lambda;
mod witness;

pub use lambda::{
    certify_class, genericity_check, lambda, lambda_bounds_char0, lambda_with_cap, mu, sample_point, verify_lambda_record,
    BoundCheck, ClassCertificate, GenericityReport, LambdaOutcome, LambdaRecord, RankWitness,
};
pub use witness::{char_p_witness, prop27_check, verify_witness, Prop27Report, WitnessComponent, WitnessDivisor};

use serde::{Deserialize, Serialize};

use crate::atiyah::{AtiyahSurface, SectionSpace, SectionVector};
use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::field::{binomial_table, Field};
use crate::matrix::{rank_and_kernel, ExactMatrix};
use crate::series::LaurentSeries;

/// A point of `S` off `E_inf`, given by its base point and chart-0 fiber coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatSample<E> {
    pub base: CurvePoint<E>,
    pub w0: E,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPoint<E> {
    pub base: CurvePoint<E>,
    pub w0: E,
    pub m: usize,
}

impl<E: Clone> FatPoint<E> {
    pub fn new(sample: &FatSample<E>, m: usize) -> Self {
        FatPoint { base: sample.base.clone(), w0: sample.w0.clone(), m }
    }

    pub fn sample(&self) -> FatSample<E> {
        FatSample { base: self.base.clone(), w0: self.w0.clone() }
    }

    /// Monomials `t^alpha u^beta` with `alpha + beta < m`, by total degree then `beta`.
    pub fn monomials(&self) -> Vec<(usize, usize)> {
        (0..self.m).flat_map(|d| (0..=d).map(move |b| (d - b, b))).collect()
    }
}

/// Jet conditions: one row per `(point, alpha, beta)`, one column per basis section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalMatrix<E> {
    pub level: usize,
    pub rows: Vec<(usize, usize, usize)>,
    pub matrix: ExactMatrix<E>,
}

/// `max(-1, dim_l - sum m_i (m_i + 1) / 2)`.
pub fn expdim(dim_l: i64, multiplicities: &[usize]) -> i64 {
    let conditions: i64 = multiplicities.iter().map(|&m| (m * (m + 1) / 2) as i64).sum();
    (dim_l - conditions).max(-1)
}

fn check_points<F: Field>(a: &AtiyahSurface<F>, points: &[FatPoint<F::Elem>]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if p.base.is_infinity() || &p.base == a.t() {
            return Err(Error::ChartPoint(format!("fat point {} lies over a removed chart point", a.curve().format_point(&p.base))));
        }
        if !a.curve().contains(&p.base) {
            return Err(Error::NotOnCurve);
        }
        if p.m == 0 {
            return Err(Error::Precondition("multiplicity must be at least 1".into()));
        }
        if points[..i].iter().any(|o| o.base == p.base) {
            return Err(Error::Precondition("fat points must have distinct base points".into()));
        }
    }
    Ok(())
}

/// Power of the local parameter clearing the `q`-pole of twisted sections.
fn pole_shift<F: Field>(a: &AtiyahSurface<F>, twisted: bool, base: &CurvePoint<F::Elem>) -> i64 {
    i64::from(twisted && base == a.q())
}

/// Combines expansions `s_a(t)` into the jets of `sum_a s_a(t) (w0 + u)^a`.
fn combine_jets<F: Field>(
    field: &F,
    level: usize,
    comps: &[LaurentSeries<F::Elem>],
    fp: &FatPoint<F::Elem>,
) -> Vec<F::Elem> {
    let binom = binomial_table(field, level);
    let wpow: Vec<F::Elem> = (0..=level).map(|e| field.pow(&fp.w0, e as u64)).collect();
    fp.monomials()
        .into_iter()
        .map(|(al, be)| {
            (be..=level).fold(field.zero(), |acc, a| {
                let c = comps[a].coeff(field, al as i64).expect("jet precision");
                if field.is_zero(&c) {
                    return acc;
                }
                field.add(&acc, &field.mul(&c, &field.mul(&binom[a][be], &wpow[a - be])))
            })
        })
        .collect()
}

/// Jets of every unknown column of a section space: rows indexed by monomials.
fn unknown_jets<F: Field>(
    a: &AtiyahSurface<F>,
    space: &SectionSpace<F::Elem>,
    fp: &FatPoint<F::Elem>,
) -> Result<Vec<Vec<F::Elem>>> {
    let c = a.curve();
    let fl = c.field();
    let shift = pole_shift(a, space.twisted, &fp.base);
    let m = fp.m as i64;
    let exps: Vec<LaurentSeries<F::Elem>> = space
        .functions
        .iter()
        .map(|f| Ok(c.expand_abs(f, &fp.base, m - shift)?.shift(shift)))
        .collect::<Result<_>>()?;
    let binom = binomial_table(fl, space.level);
    let wpow: Vec<F::Elem> = (0..=space.level).map(|e| fl.pow(&fp.w0, e as u64)).collect();
    let monos = fp.monomials();
    let mut rows = vec![vec![fl.zero(); space.columns.len()]; monos.len()];
    for (col, &(ai, i)) in space.columns.iter().enumerate() {
        let e = &exps[space.basis_index[ai][i]];
        for (r, &(al, be)) in monos.iter().enumerate() {
            if be > ai {
                continue;
            }
            let coef = e.coeff(fl, al as i64).expect("jet precision");
            if !fl.is_zero(&coef) {
                rows[r][col] = fl.mul(&coef, &fl.mul(&binom[ai][be], &wpow[ai - be]));
            }
        }
    }
    Ok(rows)
}

fn eval_matrix_for<F: Field>(
    a: &AtiyahSurface<F>,
    space: &SectionSpace<F::Elem>,
    points: &[FatPoint<F::Elem>],
) -> Result<EvalMatrix<F::Elem>> {
    check_points(a, points)?;
    let fl = a.field();
    let dim = space.dimension();
    let mut labels = Vec::new();
    let mut data = Vec::new();
    for (pi, fp) in points.iter().enumerate() {
        let jets = unknown_jets(a, space, fp)?;
        for ((al, be), row) in fp.monomials().into_iter().zip(jets) {
            labels.push((pi, al, be));
            data.push(
                space
                    .kernel
                    .iter()
                    .map(|v| row.iter().zip(v).fold(fl.zero(), |acc, (x, y)| {
                        if fl.is_zero(x) || fl.is_zero(y) {
                            acc
                        } else {
                            fl.add(&acc, &fl.mul(x, y))
                        }
                    }))
                    .collect(),
            );
        }
    }
    Ok(EvalMatrix { level: space.level, rows: labels, matrix: ExactMatrix::from_rows(dim, data) })
}

/// Jet matrix of the basis of `H^0(O_S(F_q + l E_inf))` at the given fat points.
pub fn jet_matrix<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    points: &[FatPoint<F::Elem>],
) -> Result<EvalMatrix<F::Elem>> {
    let space = a.section_space(level, true)?;
    eval_matrix_for(a, &space, points)
}

/// Sections of `O_S(F_q + l E_inf)` (or `O_S(l E_inf)`) vanishing to the given orders.
#[derive(Debug, Clone)]
pub struct FatKernel<E> {
    pub eval: EvalMatrix<E>,
    pub rank: usize,
    /// Kernel vectors in the coordinates of the section basis.
    pub kernel: Vec<Vec<E>>,
}

pub fn fat_kernel<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    twisted: bool,
    points: &[FatPoint<F::Elem>],
) -> Result<FatKernel<F::Elem>> {
    let space = a.section_space(level, twisted)?;
    let eval = eval_matrix_for(a, &space, points)?;
    let rk = rank_and_kernel(a.field(), &eval.matrix);
    Ok(FatKernel { eval, rank: rk.rank, kernel: rk.kernel })
}

/// Vector space dimension of sections with the prescribed multiplicities; the
/// projective dimension of the linear system is one less.
pub fn h0_fat<F: Field>(a: &AtiyahSurface<F>, level: usize, points: &[FatPoint<F::Elem>]) -> Result<usize> {
    if points.is_empty() {
        check_points(a, points)?;
        return a.h0_fq_le_dim(level);
    }
    Ok(fat_kernel(a, level, true, points)?.kernel.len())
}

/// The section `sum_k coords[k] * basis_k` at a level.
pub fn section_from_coords<F: Field>(
    a: &AtiyahSurface<F>,
    level: usize,
    twisted: bool,
    coords: &[F::Elem],
) -> Result<SectionVector<F::Elem>> {
    let fl = a.field();
    let space = a.section_space(level, twisted)?;
    let mut v = vec![fl.zero(); space.columns.len()];
    for (c, kv) in coords.iter().zip(&space.kernel) {
        if fl.is_zero(c) {
            continue;
        }
        for (x, y) in v.iter_mut().zip(kv) {
            *x = fl.add(x, &fl.mul(c, y));
        }
    }
    Ok(a.section(&space, &v))
}

/// Jets of a section at a fat point, computed directly from its components.
pub fn section_jets<F: Field>(
    a: &AtiyahSurface<F>,
    s: &SectionVector<F::Elem>,
    fp: &FatPoint<F::Elem>,
) -> Result<Vec<F::Elem>> {
    let c = a.curve();
    let shift = pole_shift(a, s.twisted, &fp.base);
    let comps: Vec<LaurentSeries<F::Elem>> = s
        .components
        .iter()
        .map(|f| Ok(c.expand_abs(f, &fp.base, fp.m as i64 - shift)?.shift(shift)))
        .collect::<Result<_>>()?;
    Ok(combine_jets(c.field(), s.level, &comps, fp))
}

/// Multiplicity of the curve cut by `s` at the point, capped at `cap`.
pub fn section_multiplicity<F: Field>(
    a: &AtiyahSurface<F>,
    s: &SectionVector<F::Elem>,
    sample: &FatSample<F::Elem>,
    cap: usize,
) -> Result<usize> {
    let fp = FatPoint::new(sample, cap);
    let jets = section_jets(a, s, &fp)?;
    let fl = a.field();
    Ok(fp
        .monomials()
        .iter()
        .zip(&jets)
        .filter(|(_, v)| !fl.is_zero(v))
        .map(|((al, be), _)| al + be)
        .min()
        .unwrap_or(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveSpec, WeierstrassCurve};
    use crate::field::Rationals;

    pub(crate) fn q_surface() -> AtiyahSurface<Rationals> {
        let c = WeierstrassCurve::from_spec(Rationals, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let q = c.parse_point("0", "1").unwrap();
        AtiyahSurface::new(c, q, None).unwrap()
    }

    #[test]
    fn expected_dimension_formula() {
        assert_eq!(expdim(11, &[5]), -1);
        assert_eq!(expdim(7, &[]), 7);
        assert_eq!(expdim(6, &[3]), 0);
    }

    #[test]
    fn zero_jet_is_evaluation() {
        let a = q_surface();
        let fl = Rationals;
        let base = a.curve().parse_point("1", "1").unwrap();
        let fp = FatPoint { base: base.clone(), w0: fl.from_i64(2), m: 1 };
        let em = jet_matrix(&a, 1, std::slice::from_ref(&fp)).unwrap();
        assert_eq!((em.matrix.rows(), em.matrix.cols()), (1, 2));
        assert_eq!(rank_and_kernel(&fl, &em.matrix).rank, 1);
        let (_, secs) = a.h0_fq_le(1).unwrap();
        for (k, s) in secs.iter().enumerate() {
            let val = s.components.iter().enumerate().fold(fl.zero(), |acc, (i, f)| {
                let v = a.curve().value_at(f, &base).unwrap();
                fl.add(&acc, &fl.mul(&v, &fl.pow(&fp.w0, i as u64)))
            });
            assert_eq!(em.matrix.get(0, k), &val);
        }
    }

    #[test]
    fn double_point_at_level_three() {
        let a = q_surface();
        let fl = Rationals;
        let base = a.curve().parse_point("1", "1").unwrap();
        let fp = FatPoint { base, w0: fl.from_i64(3), m: 2 };
        let em = jet_matrix(&a, 3, std::slice::from_ref(&fp)).unwrap();
        assert_eq!((em.matrix.rows(), em.matrix.cols()), (3, 4));
        assert_eq!(rank_and_kernel(&fl, &em.matrix).rank, 3);
        assert_eq!(h0_fat(&a, 3, std::slice::from_ref(&fp)).unwrap(), 1);
        assert_eq!(h0_fat(&a, 4, &[]).unwrap(), 5);
    }

    #[test]
    fn column_route_matches_direct_route() {
        let a = q_surface();
        let fl = Rationals;
        for (x, y) in [("1", "1"), ("0", "1"), ("3", "-5")] {
            let base = a.curve().parse_point(x, y).unwrap();
            let fp = FatPoint { base, w0: fl.from_i64(-2), m: 3 };
            let em = jet_matrix(&a, 4, std::slice::from_ref(&fp)).unwrap();
            let (_, secs) = a.h0_fq_le(4).unwrap();
            for (k, s) in secs.iter().enumerate() {
                let jets = section_jets(&a, s, &fp).unwrap();
                for (r, j) in jets.iter().enumerate() {
                    assert_eq!(em.matrix.get(r, k), j);
                }
            }
        }
    }

    #[test]
    fn chart_points_are_rejected() {
        let a = q_surface();
        let fp = FatPoint { base: a.t().clone(), w0: Rationals.zero(), m: 1 };
        assert!(matches!(h0_fat(&a, 2, &[fp]), Err(Error::ChartPoint(_))));
    }
}
