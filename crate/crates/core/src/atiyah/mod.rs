//! Two-chart model of the Atiyah ruled surface.
//!
//! A section of `O(l E_inf)` (or of `O(F_q + l E_inf)` when twisted) is a
//! polynomial `P0(w) = sum_a s_a w^a` in the chart-0 fiber coordinate whose
//! coefficients are regular on `U0` (up to a simple pole at `q` when twisted).
//! On chart 1 the fiber coordinate is `z = w - g`, and the coefficients of
//! `P0(z + g)` must be regular on `U1` with the same allowance at `q`.

mod cocycle;

pub use cocycle::{CechCocycle, CechCover, CokernelRecord};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, Divisor, FuncElem, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{binomial_table, Field};
use crate::matrix::{rank_and_kernel, ExactMatrix};
use crate::series::LaurentSeries;

/// Extra pole order allowed at infinity beyond the proven bound `(l - a) k`.
pub const CUTOFF_MARGIN: i64 = 4;

type SpaceCache<E> = HashMap<(usize, bool), Arc<SectionSpace<E>>>;

#[derive(Debug, Clone)]
pub struct AtiyahSurface<F: Field> {
    cocycle: Arc<CechCocycle<F>>,
    q: CurvePoint<F::Elem>,
    cache: Arc<Mutex<SpaceCache<F::Elem>>>,
}

/// Chart-0 data of one global section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionVector<E> {
    pub level: usize,
    pub twisted: bool,
    pub components: Vec<FuncElem<E>>,
}

/// Kernel of the regularity conditions at one level.
#[derive(Debug, Clone)]
pub struct SectionSpace<E> {
    pub level: usize,
    pub twisted: bool,
    pub margin: i64,
    /// Pole-order cutoff at infinity for each coefficient `s_a`.
    pub cutoffs: Vec<i64>,
    /// Spanning functions for each `s_a`, sorted by pole order at infinity.
    pub basis: Vec<Vec<FuncElem<E>>>,
    /// Riemann–Roch basis at the largest cutoff; `basis[a][i] = functions[basis_index[a][i]]`.
    pub functions: Vec<FuncElem<E>>,
    pub basis_index: Vec<Vec<usize>>,
    /// Unknowns as `(a, index into basis[a])`.
    pub columns: Vec<(usize, usize)>,
    /// Regularity conditions; the kernel is the section space.
    pub conditions: ExactMatrix<E>,
    pub rank: usize,
    pub kernel: Vec<Vec<E>>,
}

impl<E: Clone> SectionSpace<E> {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Coefficients of `s_a` in `basis[a]` for kernel vector `v`.
    pub fn component_coefficients(&self, v: &[E], a: usize) -> Vec<E> {
        self.columns.iter().zip(v).filter(|((ca, _), _)| *ca == a).map(|(_, c)| c.clone()).collect()
    }
}

impl<F: Field> AtiyahSurface<F> {
    /// Marked point `q`; the second chart removes `T`, by default `-q` (or the
    /// first enumerable point other than `q` when `q` is 2-torsion).
    pub fn new(curve: WeierstrassCurve<F>, q: CurvePoint<F::Elem>, t: Option<CurvePoint<F::Elem>>) -> Result<Self> {
        if q.is_infinity() {
            return Err(Error::ChartPoint("q must be affine".into()));
        }
        if !curve.contains(&q) {
            return Err(Error::NotOnCurve);
        }
        let t = match t {
            Some(t) => t,
            None => Self::default_t(&curve, &q)?,
        };
        if t == q {
            return Err(Error::ChartPoint("q coincides with T".into()));
        }
        let cocycle = CechCocycle::build(curve, t)?;
        Ok(AtiyahSurface { cocycle: Arc::new(cocycle), q, cache: Arc::default() })
    }

    pub fn default_t(curve: &WeierstrassCurve<F>, q: &CurvePoint<F::Elem>) -> Result<CurvePoint<F::Elem>> {
        let nq = curve.neg(q);
        if nq != *q && !nq.is_infinity() {
            return Ok(nq);
        }
        curve
            .first_point_avoiding(std::slice::from_ref(q))
            .ok_or_else(|| Error::ChartPoint("no rational point available for T".into()))
    }

    /// Same bundle, different marked point (and its default chart point).
    pub fn with_marked_point(&self, q: CurvePoint<F::Elem>) -> Result<Self> {
        Self::new(self.curve().clone(), q, None)
    }

    pub fn curve(&self) -> &WeierstrassCurve<F> {
        self.cocycle.curve()
    }

    pub fn field(&self) -> &F {
        self.curve().field()
    }

    pub fn q(&self) -> &CurvePoint<F::Elem> {
        &self.q
    }

    pub fn t(&self) -> &CurvePoint<F::Elem> {
        self.cocycle.t()
    }

    pub fn cocycle(&self) -> &CechCocycle<F> {
        &self.cocycle
    }

    /// Upper-triangular `(l+1) x (l+1)` matrix with entry `(j, a) = C(a, j) g^(a-j)`.
    pub fn sym_transition(&self, l: usize) -> Vec<Vec<FuncElem<F::Elem>>> {
        let c = self.curve();
        let fl = c.field();
        let binom = binomial_table(fl, l);
        let mut gpow = vec![FuncElem::one(fl)];
        for e in 1..=l {
            gpow.push(gpow[e - 1].mul(c, &self.cocycle.g));
        }
        (0..=l)
            .map(|j| {
                (0..=l)
                    .map(|a| if a < j { FuncElem::zero(fl) } else { gpow[a - j].scale(fl, &binom[a][j]) })
                    .collect()
            })
            .collect()
    }

    pub fn section_space(&self, level: usize, twisted: bool) -> Result<Arc<SectionSpace<F::Elem>>> {
        if let Some(s) = self.cache.lock().unwrap().get(&(level, twisted)) {
            return Ok(s.clone());
        }
        let space = self.solve(level, twisted, CUTOFF_MARGIN)?;
        let check = self.solve(level, twisted, CUTOFF_MARGIN + 2)?;
        if check.dimension() != space.dimension() {
            return Err(Error::CutoffInstability(format!(
                "level {level}: dimension {} at margin {CUTOFF_MARGIN}, {} at margin {}",
                space.dimension(),
                check.dimension(),
                CUTOFF_MARGIN + 2
            )));
        }
        let space = Arc::new(space);
        self.cache.lock().unwrap().insert((level, twisted), space.clone());
        Ok(space)
    }

    /// Cutoff kernel computation at a given margin.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, level: usize, twisted: bool, margin: i64) -> Result<SectionSpace<F::Elem>> {
        let c = self.curve();
        let fl = c.field();
        let k = self.cocycle.k;
        let l = level as i64;
        let inf = CurvePoint::Infinity;
        let cutoffs: Vec<i64> = (0..=l).map(|a| (l - a) * k + margin).collect();
        let nmax = cutoffs[0];
        let mut dmax = Divisor::point(inf.clone(), nmax);
        if twisted {
            dmax.add_point(self.q.clone(), 1);
        }
        let full = c.rr_basis(&dmax)?.basis;
        let poles: Vec<i64> = full.iter().map(|f| -f.valuation_at_infinity().unwrap()).collect();
        let index: Vec<Vec<usize>> =
            cutoffs.iter().map(|&n| (0..full.len()).filter(|&i| poles[i] <= n).collect()).collect();
        let basis: Vec<Vec<FuncElem<F::Elem>>> =
            index.iter().map(|ix| ix.iter().map(|&i| full[i].clone()).collect()).collect();
        let pb = l * k + 1;
        let exps: Vec<LaurentSeries<F::Elem>> =
            full.iter().map(|f| c.expand_abs(f, &inf, pb)).collect::<Result<_>>()?;
        let gser = c.expand_abs(&self.cocycle.g, &inf, nmax + 1 + l * k)?;
        let mut gpow = vec![LaurentSeries::constant(fl, fl.one(), nmax + 1 + l * k)];
        for e in 1..=level {
            gpow.push(gpow[e - 1].mul(fl, &gser));
        }
        let binom = binomial_table(fl, level);
        let columns: Vec<(usize, usize)> =
            (0..=level).flat_map(|a| (0..basis[a].len()).map(move |i| (a, i))).collect();
        // products g^e * b_i, computed lazily
        let mut prods: HashMap<(usize, usize), LaurentSeries<F::Elem>> = HashMap::new();
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for j in 0..=level {
            let mj = (l - j as i64) * k + margin;
            let first = rows.len();
            rows.extend((0..mj).map(|_| vec![fl.zero(); columns.len()]));
            for (col, &(a, i)) in columns.iter().enumerate() {
                if a < j || fl.is_zero(&binom[a][j]) {
                    continue;
                }
                let e = a - j;
                let i = index[a][i];
                let s = prods.entry((e, i)).or_insert_with(|| gpow[e].mul(fl, &exps[i]));
                debug_assert!(s.precision() >= 0);
                for (r, ci) in (-mj..0).enumerate() {
                    let v = s.coeff(fl, ci).expect("enough precision");
                    if !fl.is_zero(&v) {
                        rows[first + r][col] = fl.mul(&v, &binom[a][j]);
                    }
                }
            }
        }
        let m = ExactMatrix::from_rows(columns.len(), rows);
        let rk = rank_and_kernel(fl, &m);
        Ok(SectionSpace {
            level,
            twisted,
            margin,
            cutoffs,
            basis,
            functions: full,
            basis_index: index,
            columns,
            rank: rk.rank,
            kernel: rk.kernel,
            conditions: m,
        })
    }

    pub fn section(&self, space: &SectionSpace<F::Elem>, v: &[F::Elem]) -> SectionVector<F::Elem> {
        let fl = self.field();
        let components = (0..=space.level)
            .map(|a| {
                let coeffs = space.component_coefficients(v, a);
                space.basis[a]
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, c)| !fl.is_zero(c))
                    .fold(FuncElem::zero(fl), |acc, (f, c)| acc.add(fl, &f.scale(fl, c)))
            })
            .collect();
        SectionVector { level: space.level, twisted: space.twisted, components }
    }

    fn sections(&self, level: usize, twisted: bool) -> Result<(usize, Vec<SectionVector<F::Elem>>)> {
        let space = self.section_space(level, twisted)?;
        let secs = space.kernel.iter().map(|v| self.section(&space, v)).collect();
        Ok((space.dimension(), secs))
    }

    /// `h^0(O_S(n E_inf))` with a basis.
    pub fn h0_ne(&self, n: usize) -> Result<(usize, Vec<SectionVector<F::Elem>>)> {
        self.sections(n, false)
    }

    /// `h^0(O_S(F_q + l E_inf))` with a basis.
    pub fn h0_fq_le(&self, l: usize) -> Result<(usize, Vec<SectionVector<F::Elem>>)> {
        self.sections(l, true)
    }

    pub fn h0_ne_dim(&self, n: usize) -> Result<usize> {
        Ok(self.section_space(n, false)?.dimension())
    }

    pub fn h0_fq_le_dim(&self, l: usize) -> Result<usize> {
        Ok(self.section_space(l, true)?.dimension())
    }

    /// Regularity of the section on both charts, checked exactly.
    pub fn validate(&self, s: &SectionVector<F::Elem>) -> bool {
        let c = self.curve();
        let fl = c.field();
        if s.components.len() != s.level + 1 {
            return false;
        }
        let qpole = i64::from(s.twisted);
        for comp in &s.components {
            let mut d = Divisor::point(CurvePoint::Infinity, (-comp.valuation_at_infinity().unwrap_or(0)).max(0));
            d.add_point(self.q.clone(), qpole);
            if !c.in_riemann_roch_space(comp, &d) {
                return false;
            }
        }
        let trans = self.sym_transition(s.level);
        for row in &trans {
            let r = row
                .iter()
                .zip(&s.components)
                .fold(FuncElem::zero(fl), |acc, (m, comp)| acc.add(fl, &m.mul(c, comp)));
            let tpole = c.valuation_at(&r, self.t()).map_or(0, |v| (-v).max(0));
            let d = Divisor::from_pairs([(self.t().clone(), tpole), (self.q.clone(), qpole)]);
            if !c.in_riemann_roch_space(&r, &d) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::field::{make_extension_field, Rationals};

    fn q_surface() -> AtiyahSurface<Rationals> {
        let c = WeierstrassCurve::from_spec(Rationals, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let q = c.parse_point("0", "1").unwrap();
        AtiyahSurface::new(c, q, None).unwrap()
    }

    #[test]
    fn small_levels_over_q() {
        let s = q_surface();
        for l in 0..5 {
            let (d, secs) = s.h0_fq_le(l).unwrap();
            assert_eq!(d, l + 1, "l = {l}");
            assert!(secs.iter().all(|v| s.validate(v)));
        }
        for n in 0..5 {
            assert_eq!(s.h0_ne_dim(n).unwrap(), 1, "n = {n}");
        }
        let (_, b) = s.h0_ne(0).unwrap();
        assert!(b[0].components[0].is_constant());
    }

    #[test]
    fn frobenius_jump_in_small_characteristic() {
        for (p, k) in [(2u64, 3u32), (3, 2), (5, 1)] {
            let f = make_extension_field(p, k).unwrap();
            let spec = if p == 2 { ["1", "0", "0", "0", "1"] } else { ["0", "0", "0", "-1", "1"] };
            let c = WeierstrassCurve::from_spec(f, &CurveSpec::new(spec)).unwrap();
            let q = c.first_point_avoiding(&[]).unwrap();
            let s = AtiyahSurface::new(c, q, None).unwrap();
            for n in 0..=(2 * p as usize + 2) {
                assert_eq!(s.h0_ne_dim(n).unwrap(), n / p as usize + 1, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn transition_matrix_shape() {
        let f = make_extension_field(2, 2).unwrap();
        let c = WeierstrassCurve::from_spec(f.clone(), &CurveSpec::new(["1", "0", "0", "0", "1"])).unwrap();
        let q = c.first_point_avoiding(&[]).unwrap();
        let s = AtiyahSurface::new(c.clone(), q, None).unwrap();
        let g = s.cocycle().g.clone();
        let m = s.sym_transition(2);
        assert_eq!(m[0][0], FuncElem::one(&f));
        assert_eq!(m[0][1], g);
        assert_eq!(m[0][2], g.mul(&c, &g));
        assert_eq!(m[1][1], FuncElem::one(&f));
        assert!(m[1][2].is_zero());
        assert!(m[2][0].is_zero() && m[2][1].is_zero());
        let m1 = s.sym_transition(1);
        assert_eq!(m1[0][1], g);
        for l in 0..6 {
            let m = s.sym_transition(l);
            for (j, row) in m.iter().enumerate() {
                assert_eq!(row[j], FuncElem::one(&f));
                assert!(row[..j].iter().all(|e| e.is_zero()));
            }
        }
    }
}
