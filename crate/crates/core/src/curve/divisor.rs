use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CurvePoint, FuncElem, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::LaurentSeries;

/// Finite formal sum of points; zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor<E: Ord> {
    support: BTreeMap<CurvePoint<E>, i64>,
}

impl<E: Ord + Clone> Default for Divisor<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Ord + Clone> Divisor<E> {
    pub fn zero() -> Self {
        Divisor { support: BTreeMap::new() }
    }

    pub fn point(p: CurvePoint<E>, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(p, n);
        d
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (CurvePoint<E>, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, n) in pairs {
            d.add_point(p, n);
        }
        d
    }

    pub fn add_point(&mut self, p: CurvePoint<E>, n: i64) {
        let e = self.support.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.support.retain(|_, v| *v != 0);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, n) in &other.support {
            d.add_point(p.clone(), *n);
        }
        d
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn multiplicity(&self, p: &CurvePoint<E>) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurvePoint<E>, &i64)> {
        self.support.iter()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&n| n >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

/// A basis of `L(D) = { f : div(f) + D >= 0 }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RRSpace<E: Ord> {
    pub divisor: Divisor<E>,
    pub basis: Vec<FuncElem<E>>,
}

impl<E: Ord + Clone> RRSpace<E> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

impl<F: Field> WeierstrassCurve<F> {
    /// Sum of the divisor's points under the group law.
    pub fn sigma(&self, d: &Divisor<F::Elem>) -> CurvePoint<F::Elem> {
        d.iter().fold(CurvePoint::Infinity, |acc, (p, n)| self.add(&acc, &self.mul(*n, p)))
    }

    pub fn is_principal(&self, d: &Divisor<F::Elem>) -> bool {
        d.degree() == 0 && self.sigma(d).is_infinity()
    }

    /// `dim L(D)` predicted by Riemann–Roch in genus one.
    pub fn rr_dimension(&self, d: &Divisor<F::Elem>) -> usize {
        match d.degree() {
            n if n >= 1 => n as usize,
            0 => usize::from(self.sigma(d).is_infinity()),
            _ => 0,
        }
    }

    /// `f` with `div(f) = (P) + (Q) - (P+Q) - (inf)`: the line through `P` and
    /// `Q` over the vertical line through their sum.
    pub fn pair_function(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> FuncElem<F::Elem> {
        let fl = self.field();
        let (Some((xp, yp)), Some(_)) = (p.coords(), q.coords()) else {
            return FuncElem::one(fl);
        };
        let vertical = |x0: &F::Elem| FuncElem::from_x_poly(fl, Poly::linear_root(fl, x0));
        let Some(lambda) = self.chord_slope(p, q) else {
            return vertical(xp);
        };
        let r = self.add(p, q);
        let (xr, _) = r.coords().expect("non-vertical chord meets a third affine point");
        let a = Poly::from_coeffs(fl, vec![fl.sub(&fl.mul(&lambda, xp), yp), fl.neg(&lambda)]);
        FuncElem::new(fl, a, Poly::one(fl), Poly::linear_root(fl, xr))
    }

    /// `(y - y_{-R}) / (x - x_R)`, with simple poles exactly at `R` and infinity.
    pub fn one_point_function(&self, r: &CurvePoint<F::Elem>) -> Option<FuncElem<F::Elem>> {
        let fl = self.field();
        let (xr, _) = r.coords()?;
        let neg = self.neg(r);
        let (_, yn) = neg.coords()?;
        let a = Poly::constant(fl, fl.neg(yn));
        Some(FuncElem::new(fl, a, Poly::one(fl), Poly::linear_root(fl, xr)))
    }

    /// Monomials `x^i y^j` with pole order `2i + 3j <= n`, sorted by pole order.
    pub fn monomials_up_to(&self, n: i64) -> Vec<FuncElem<F::Elem>> {
        let fl = self.field();
        (0..=n.max(-1))
            .filter(|&k| k != 1)
            .map(|k| if k % 2 == 0 { FuncElem::monomial(fl, (k / 2) as u32, 0) } else { FuncElem::monomial(fl, ((k - 3) / 2) as u32, 1) })
            .collect()
    }

    /// Function `h` and point `R` with `D = div(h) + (deg D - 1)(inf) + (R)`.
    pub fn miller_reduce(&self, d: &Divisor<F::Elem>) -> (FuncElem<F::Elem>, CurvePoint<F::Elem>) {
        let mut h = FuncElem::one(self.field());
        let mut acc = CurvePoint::Infinity;
        for (p, &n) in d.iter() {
            if p.is_infinity() {
                continue;
            }
            for _ in 0..n.unsigned_abs() {
                if n > 0 {
                    h = h.mul(self, &self.pair_function(&acc, p));
                    acc = self.add(&acc, p);
                } else {
                    let np = self.neg(p);
                    let (xp, _) = p.coords().unwrap();
                    let v = FuncElem::from_x_poly(self.field(), Poly::linear_root(self.field(), xp));
                    h = h.mul(self, &self.pair_function(&acc, &np)).div(self, &v).unwrap();
                    acc = self.add(&acc, &np);
                }
            }
        }
        (h, acc)
    }

    pub fn rr_basis(&self, d: &Divisor<F::Elem>) -> Result<RRSpace<F::Elem>> {
        if d.iter().any(|(p, _)| !self.contains(p)) {
            return Err(Error::NotOnCurve);
        }
        let n = d.degree();
        let (h, r) = self.miller_reduce(d);
        let reduced: Vec<FuncElem<F::Elem>> = match r.coords() {
            _ if n < 0 => Vec::new(),
            None => self.monomials_up_to(n),
            Some(_) if n == 0 => Vec::new(),
            Some(_) => {
                let mut b = self.monomials_up_to(n - 1);
                if n >= 2 {
                    b.push(self.one_point_function(&r).unwrap());
                }
                b
            }
        };
        let hinv = h.inv(self).expect("nonzero Miller function");
        let basis = if hinv.is_constant() && hinv == FuncElem::one(self.field()) {
            reduced
        } else {
            reduced.iter().map(|f| f.mul(self, &hinv)).collect()
        };
        Ok(RRSpace { divisor: d.clone(), basis })
    }

    /// Exact test of `div(f) + D >= 0`.
    pub fn in_riemann_roch_space(&self, f: &FuncElem<F::Elem>, d: &Divisor<F::Elem>) -> bool {
        let fl = self.field();
        if f.is_zero() {
            return true;
        }
        if f.valuation_at_infinity().unwrap() < -d.multiplicity(&CurvePoint::Infinity) {
            return false;
        }
        let xs: BTreeSet<F::Elem> = d.iter().filter_map(|(p, _)| p.coords().map(|(x, _)| x.clone())).collect();
        let mut den = f.parts().2.clone();
        for x0 in &xs {
            let lin = Poly::linear_root(fl, x0);
            loop {
                let (qt, r) = den.div_rem(fl, &lin);
                if !r.is_zero() {
                    break;
                }
                den = qt;
            }
        }
        if !den.is_constant() {
            return false;
        }
        xs.iter().all(|x0| {
            self.lift_x(x0)
                .iter()
                .all(|p| self.valuation_at(f, p).unwrap() >= -d.multiplicity(p))
        })
    }

    /// Full divisor of `f`, provided every zero and pole lies over an x-coordinate
    /// of `candidates`.
    pub fn divisor_over(&self, f: &FuncElem<F::Elem>, candidates: &[CurvePoint<F::Elem>]) -> Option<Divisor<F::Elem>> {
        let fl = self.field();
        if f.is_zero() {
            return None;
        }
        let xs: BTreeSet<F::Elem> = candidates.iter().filter_map(|p| p.coords().map(|(x, _)| x.clone())).collect();
        let mut rest = f.numerator_norm(self).mul(fl, f.parts().2);
        for x0 in &xs {
            let lin = Poly::linear_root(fl, x0);
            loop {
                let (qt, r) = rest.div_rem(fl, &lin);
                if !r.is_zero() {
                    break;
                }
                rest = qt;
            }
        }
        if !rest.is_constant() {
            return None;
        }
        let mut d = Divisor::point(CurvePoint::Infinity, f.valuation_at_infinity().unwrap());
        for x0 in &xs {
            for p in self.lift_x(x0) {
                let v = self.valuation_at(f, &p).unwrap();
                d.add_point(p, v);
            }
        }
        Some(d)
    }

    /// Membership of every element, linear independence, and the Riemann–Roch count.
    pub fn verify_rr_space(&self, space: &RRSpace<F::Elem>) -> bool {
        let fl = self.field();
        let d = &space.divisor;
        if space.dimension() != self.rr_dimension(d) {
            return false;
        }
        if !space.basis.iter().all(|f| self.in_riemann_roch_space(f, d)) {
            return false;
        }
        if space.basis.is_empty() {
            return true;
        }
        let lo = -d.multiplicity(&CurvePoint::Infinity);
        let hi = d.degree() + lo + 1;
        let rows: Vec<Vec<F::Elem>> = space
            .basis
            .iter()
            .map(|f| {
                let s: LaurentSeries<F::Elem> = self.expand_abs(f, &CurvePoint::Infinity, hi).expect("expansion");
                (lo..hi).map(|i| s.coeff(fl, i).unwrap()).collect()
            })
            .collect();
        let m = crate::matrix::ExactMatrix::from_rows((hi - lo) as usize, rows);
        crate::matrix::rank_and_kernel(fl, &m).rank == space.dimension()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::field::{make_extension_field, Rationals};

    #[test]
    fn pair_function_divisors_over_q() {
        let q = Rationals;
        let c = WeierstrassCurve::from_spec(q, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let p = c.parse_point("1", "1").unwrap();
        let r = c.parse_point("3", "5").unwrap();
        let cases = [(p.clone(), r.clone()), (p.clone(), p.clone()), (p.clone(), c.neg(&p))];
        for (a, b) in cases {
            let f = c.pair_function(&a, &b);
            let s = c.add(&a, &b);
            let cands = [a.clone(), b.clone(), s.clone(), c.neg(&s)];
            let div = c.divisor_over(&f, &cands).expect("rational support");
            let mut expect = Divisor::from_pairs([(a.clone(), 1), (b.clone(), 1), (s.clone(), -1)]);
            expect.add_point(CurvePoint::Infinity, -1);
            assert_eq!(div, expect);
            assert_eq!(div.degree(), 0);
        }
    }

    #[test]
    fn small_riemann_roch_spaces() {
        let q = Rationals;
        let c = WeierstrassCurve::from_spec(q, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let zero = c.rr_basis(&Divisor::zero()).unwrap();
        assert_eq!(zero.basis, vec![FuncElem::one(&q)]);
        let three = c.rr_basis(&Divisor::point(CurvePoint::Infinity, 3)).unwrap();
        assert_eq!(three.dimension(), 3);
        assert!(c.verify_rr_space(&three));
        let p = c.parse_point("1", "1").unwrap();
        let r = c.parse_point("0", "1").unwrap();
        let d = Divisor::from_pairs([(p.clone(), 1), (r.clone(), -1)]);
        assert_eq!(c.rr_basis(&d).unwrap().dimension(), 0);
        let d = Divisor::from_pairs([(p.clone(), 2), (r.clone(), -1), (CurvePoint::Infinity, 2)]);
        let sp = c.rr_basis(&d).unwrap();
        assert_eq!(sp.dimension(), 3);
        assert!(c.verify_rr_space(&sp));
    }

    #[test]
    fn principal_degree_zero_divisor_has_constants() {
        let f = make_extension_field(3, 2).unwrap();
        let c = WeierstrassCurve::from_spec(f, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let pts = c.points().unwrap();
        let p = pts[1].clone();
        let q = pts[3].clone();
        let s = c.add(&p, &q);
        let d = Divisor::from_pairs([(p, 1), (q, 1), (s, -1), (CurvePoint::Infinity, -1)]);
        assert!(c.is_principal(&d));
        let sp = c.rr_basis(&d).unwrap();
        assert_eq!(sp.dimension(), 1);
        assert!(c.verify_rr_space(&sp));
    }

    #[test]
    fn char_two_spaces() {
        let f = make_extension_field(2, 4).unwrap();
        let c = WeierstrassCurve::from_spec(f, &CurveSpec::new(["1", "0", "0", "0", "1"])).unwrap();
        let pts = c.points().unwrap();
        for k in 1..6 {
            let d = Divisor::from_pairs([(pts[1].clone(), k), (pts[2].clone(), 1 - k / 2), (pts[3].clone(), -1)]);
            let sp = c.rr_basis(&d).unwrap();
            assert!(c.verify_rr_space(&sp), "k = {k}");
        }
    }
}
