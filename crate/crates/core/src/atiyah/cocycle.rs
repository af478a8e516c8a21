use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, Divisor, FuncElem, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{rank_and_kernel, ExactMatrix};

/// Charts `U0 = E - {inf}` and `U1 = E - {T}`.
#[derive(Debug, Clone)]
pub struct CechCover<F: Field> {
    pub curve: WeierstrassCurve<F>,
    pub t: CurvePoint<F::Elem>,
}

/// Rank data of `L(N inf) + L(N T) -> L(N (inf + T))` at one cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelRecord {
    pub cutoff: i64,
    pub target_dim: usize,
    pub image_rank: usize,
    pub cokernel_dim: usize,
    /// Rank after adjoining `g` to the image.
    pub rank_with_g: usize,
}

#[derive(Debug, Clone)]
pub struct CechCocycle<F: Field> {
    pub cover: CechCover<F>,
    pub g: FuncElem<F::Elem>,
    /// Minimal `k` with `g` in `L(k (inf + T))`; also the pole order of `g` at infinity.
    pub k: i64,
    pub certificate: Vec<CokernelRecord>,
}


type CoboundaryData<E> = (Vec<FuncElem<E>>, ExactMatrix<E>, ExactMatrix<E>);
impl<F: Field> CechCover<F> {
    pub fn new(curve: WeierstrassCurve<F>, t: CurvePoint<F::Elem>) -> Result<Self> {
        if t.is_infinity() {
            return Err(Error::ChartPoint("T must be affine".into()));
        }
        if !curve.contains(&t) {
            return Err(Error::NotOnCurve);
        }
        Ok(CechCover { curve, t })
    }

    fn coboundary_data(&self, n: i64) -> Result<CoboundaryData<F::Elem>> {
        let c = &self.curve;
        let fl = c.field();
        let inf = CurvePoint::Infinity;
        let target = c.rr_basis(&Divisor::from_pairs([(inf.clone(), n), (self.t.clone(), n)]))?;
        let l0 = c.rr_basis(&Divisor::point(inf.clone(), n))?;
        let l1 = c.rr_basis(&Divisor::point(self.t.clone(), n))?;
        // coefficients t^-n .. t^n at infinity are faithful on L(n (inf + T))
        let rows = |fs: &[FuncElem<F::Elem>]| -> Result<ExactMatrix<F::Elem>> {
            let mut out = Vec::with_capacity(fs.len());
            for f in fs {
                let s = c.expand_abs(f, &inf, n + 1)?;
                out.push((-n..=n).map(|i| s.coeff(fl, i).unwrap()).collect());
            }
            Ok(ExactMatrix::from_rows((2 * n + 1) as usize, out))
        };
        let image: Vec<FuncElem<F::Elem>> = l0.basis.iter().chain(l1.basis.iter()).cloned().collect();
        Ok((target.basis.clone(), rows(&target.basis)?, rows(&image)?))
    }

    fn stack(a: &ExactMatrix<F::Elem>, extra: &[Vec<F::Elem>]) -> ExactMatrix<F::Elem> {
        let mut rows = a.row_vecs();
        rows.extend(extra.iter().cloned());
        ExactMatrix::from_rows(a.cols(), rows)
    }

    fn record(&self, n: i64, g: &FuncElem<F::Elem>) -> Result<CokernelRecord> {
        let c = &self.curve;
        let fl = c.field();
        let (target, _, image) = self.coboundary_data(n)?;
        let s = c.expand_abs(g, &CurvePoint::Infinity, n + 1)?;
        let grow: Vec<F::Elem> = (-n..=n).map(|i| s.coeff(fl, i).unwrap()).collect();
        let image_rank = rank_and_kernel(fl, &image).rank;
        let rank_with_g = rank_and_kernel(fl, &Self::stack(&image, &[grow])).rank;
        Ok(CokernelRecord {
            cutoff: n,
            target_dim: target.len(),
            image_rank,
            cokernel_dim: target.len() - image_rank,
            rank_with_g,
        })
    }
}

impl<F: Field> CechCocycle<F> {
    /// Smallest `k` and the first basis vector of `L(k (inf + T))` outside the
    /// coboundary image, with cokernel records at cutoffs `k, k+1, k+2`.
    pub fn build(curve: WeierstrassCurve<F>, t: CurvePoint<F::Elem>) -> Result<Self> {
        let cover = CechCover::new(curve, t)?;
        let fl = cover.curve.field().clone();
        for k in 1..=4i64 {
            let (target, tmat, image) = cover.coboundary_data(k)?;
            let base = rank_and_kernel(&fl, &image).rank;
            let found = (0..target.len()).find(|&i| {
                rank_and_kernel(&fl, &CechCover::<F>::stack(&image, &[tmat.row(i).to_vec()])).rank > base
            });
            if let Some(i) = found {
                let g = target[i].clone();
                let certificate = (k..=k + 2).map(|n| cover.record(n, &g)).collect::<Result<Vec<_>>>()?;
                return Ok(CechCocycle { cover, g, k, certificate });
            }
        }
        Err(Error::CocycleNotFound(4))
    }

    pub fn curve(&self) -> &WeierstrassCurve<F> {
        &self.cover.curve
    }

    pub fn t(&self) -> &CurvePoint<F::Elem> {
        &self.cover.t
    }

    /// Recomputes the certificate and the pole bounds of `g`.
    pub fn verify(&self) -> Result<bool> {
        let c = self.curve();
        let d = Divisor::from_pairs([(CurvePoint::Infinity, self.k), (self.t().clone(), self.k)]);
        if self.g.is_zero() || !c.in_riemann_roch_space(&self.g, &d) {
            return Ok(false);
        }
        for rec in &self.certificate {
            let fresh = self.cover.record(rec.cutoff, &self.g)?;
            if &fresh != rec || fresh.cokernel_dim != 1 || fresh.rank_with_g != fresh.image_rank + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
