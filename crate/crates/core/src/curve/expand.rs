//! Local power-series expansions at points of the curve.

use serde::{Deserialize, Serialize};

use super::{CurvePoint, FuncElem, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::LaurentSeries;

/// Uniformizer used at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalParameter<E> {
    /// `t = x / y` at the point at infinity.
    AtInfinity,
    /// `t = x - x0`, used when `2y + a1 x + a3` does not vanish.
    XMinus(E),
    /// `t = y - y0`, used at the remaining points.
    YMinus(E),
}

/// The coordinate functions expanded in the local parameter.
#[derive(Debug, Clone)]
pub struct LocalCoords<E> {
    pub param: LocalParameter<E>,
    pub x: LaurentSeries<E>,
    pub y: LaurentSeries<E>,
}

const MAX_EXTRA_PRECISION: i64 = 1 << 14;

impl<F: Field> WeierstrassCurve<F> {
    pub fn local_parameter(&self, p: &CurvePoint<F::Elem>) -> LocalParameter<F::Elem> {
        match p {
            CurvePoint::Infinity => LocalParameter::AtInfinity,
            CurvePoint::Affine(x, y) => {
                if self.field().is_zero(&self.partial_y(x, y)) {
                    LocalParameter::YMinus(y.clone())
                } else {
                    LocalParameter::XMinus(x.clone())
                }
            }
        }
    }

    /// `x(t)` and `y(t)` known at least up to `t^prec` (exclusive).
    pub fn local_coords(&self, p: &CurvePoint<F::Elem>, prec: i64) -> LocalCoords<F::Elem> {
        let fl = self.field();
        let param = self.local_parameter(p);
        let (x, y) = match (&param, p) {
            (LocalParameter::AtInfinity, _) => {
                let n = prec.max(1) + 6;
                let s = self.solve_at_infinity(n);
                let y = s.invert(fl).expect("s has valuation 3");
                let x = y.shift(1);
                (x.truncate(fl, prec.max(1)), y.truncate(fl, prec.max(1)))
            }
            (LocalParameter::XMinus(_), CurvePoint::Affine(x0, y0)) => {
                let n = prec.max(1);
                let x = LaurentSeries::from_poly(fl, &[x0.clone(), fl.one()], n);
                let y = self.newton_y(&x, y0, n);
                (x, y)
            }
            (LocalParameter::YMinus(_), CurvePoint::Affine(x0, y0)) => {
                let n = prec.max(1);
                let y = LaurentSeries::from_poly(fl, &[y0.clone(), fl.one()], n);
                let x = self.newton_x(&y, x0, n);
                (x, y)
            }
            _ => unreachable!(),
        };
        LocalCoords { param, x, y }
    }

    /// `s = 1/y` as a series in `t = x/y`, from
    /// `s (1 + a1 t - a2 t^2) + (a3 - a4 t) s^2 - a6 s^3 - t^3 = 0`.
    fn solve_at_infinity(&self, n: i64) -> LaurentSeries<F::Elem> {
        let fl = self.field();
        let [a1, a2, a3, a4, a6] = self.invariants();
        let lin = LaurentSeries::from_poly(fl, &[fl.one(), a1.clone(), fl.neg(a2)], n);
        let quad = LaurentSeries::from_poly(fl, &[a3.clone(), fl.neg(a4)], n);
        let t3 = LaurentSeries::monomial(fl, fl.one(), 3, n);
        let two = fl.from_i64(2);
        let three = fl.from_i64(3);
        let mut s = LaurentSeries::zero(n);
        for _ in 0..2 * (64 - (n as u64).leading_zeros()) + 4 {
            let s2 = s.mul(fl, &s).truncate(fl, n);
            let s3 = s2.mul(fl, &s).truncate(fl, n);
            let h = s
                .mul(fl, &lin)
                .add(fl, &s2.mul(fl, &quad))
                .sub(fl, &s3.scale(fl, a6))
                .sub(fl, &t3)
                .truncate(fl, n);
            if h.is_zero_to_precision() {
                return s;
            }
            let dh = lin
                .add(fl, &s.mul(fl, &quad).scale(fl, &two))
                .sub(fl, &s2.scale(fl, &fl.mul(&three, a6)))
                .truncate(fl, n);
            let step = h.div(fl, &dh).expect("unit derivative");
            s = s.sub(fl, &step).truncate(fl, n);
        }
        s
    }

    fn newton_y(&self, x: &LaurentSeries<F::Elem>, y0: &F::Elem, n: i64) -> LaurentSeries<F::Elem> {
        let fl = self.field();
        let hx = x.eval_poly(fl, self.h_poly().coeffs()).truncate(fl, n);
        let fx = x.eval_poly(fl, self.f_poly().coeffs()).truncate(fl, n);
        let mut y = LaurentSeries::constant(fl, y0.clone(), n);
        for _ in 0..2 * (64 - (n as u64).leading_zeros()) + 4 {
            let g = y.mul(fl, &y.add(fl, &hx)).sub(fl, &fx).truncate(fl, n);
            if g.is_zero_to_precision() {
                break;
            }
            let dg = y.add(fl, &y).add(fl, &hx);
            y = y.sub(fl, &g.div(fl, &dg).expect("unit derivative")).truncate(fl, n);
        }
        y
    }

    fn newton_x(&self, y: &LaurentSeries<F::Elem>, x0: &F::Elem, n: i64) -> LaurentSeries<F::Elem> {
        let fl = self.field();
        let [a1, ..] = self.invariants();
        let fprime = self.f_poly().derivative(fl);
        let mut x = LaurentSeries::constant(fl, x0.clone(), n);
        for _ in 0..2 * (64 - (n as u64).leading_zeros()) + 4 {
            let hx = x.eval_poly(fl, self.h_poly().coeffs());
            let fx = x.eval_poly(fl, self.f_poly().coeffs());
            let g = y.mul(fl, &y.add(fl, &hx)).sub(fl, &fx).truncate(fl, n);
            if g.is_zero_to_precision() {
                break;
            }
            let dg = y.scale(fl, a1).sub(fl, &x.eval_poly(fl, fprime.coeffs()));
            x = x.sub(fl, &g.div(fl, &dg).expect("unit derivative")).truncate(fl, n);
        }
        x
    }

    fn eval_parts(
        &self,
        f: &FuncElem<F::Elem>,
        c: &LocalCoords<F::Elem>,
    ) -> (LaurentSeries<F::Elem>, LaurentSeries<F::Elem>) {
        let fl = self.field();
        let (a, b, d) = f.parts();
        let num = c.x.eval_poly(fl, a.coeffs()).add(fl, &c.x.eval_poly(fl, b.coeffs()).mul(fl, &c.y));
        let den = c.x.eval_poly(fl, d.coeffs());
        (num, den)
    }

    /// Expansion of `f` at `p` known up to absolute precision `prec`.
    pub fn expand_abs(
        &self,
        f: &FuncElem<F::Elem>,
        p: &CurvePoint<F::Elem>,
        prec: i64,
    ) -> Result<LaurentSeries<F::Elem>> {
        let fl = self.field();
        if f.is_zero() {
            return Ok(LaurentSeries::zero(prec));
        }
        let (a, b, d) = f.parts();
        let deg = |q: &crate::poly::Poly<F::Elem>| q.degree().unwrap_or(0) as i64;
        let mut work = prec + 2 * (deg(a) + deg(b) + deg(d)) + 4;
        loop {
            let coords = self.local_coords(p, work);
            let (num, den) = self.eval_parts(f, &coords);
            if let Ok(r) = num.div(fl, &den) {
                if r.precision() >= prec {
                    return Ok(r.truncate(fl, prec));
                }
                work += prec - r.precision() + 2;
            } else {
                work *= 2;
            }
            if work > prec.abs() + MAX_EXTRA_PRECISION {
                return Err(Error::PrecisionExhausted(format!("expansion at {}", self.format_point(p))));
            }
        }
    }

    /// Exact order of `f` at `p`, or `None` for the zero function.
    pub fn valuation_at(&self, f: &FuncElem<F::Elem>, p: &CurvePoint<F::Elem>) -> Option<i64> {
        let fl = self.field();
        let (x0, _) = match p.coords() {
            None => return f.valuation_at_infinity(),
            Some(c) => c,
        };
        if f.is_zero() {
            return None;
        }
        let (a, b, d) = f.parts();
        let e = match self.local_parameter(p) {
            LocalParameter::XMinus(_) => 1,
            _ => 2,
        };
        let lin = crate::poly::Poly::linear_root(fl, x0);
        let mut dd = d.clone();
        let mut mult = 0;
        loop {
            let (qt, r) = dd.div_rem(fl, &lin);
            if !r.is_zero() {
                break;
            }
            dd = qt;
            mult += 1;
        }
        let bound = (2 * a.degree().unwrap_or(0) as i64).max(2 * b.degree().unwrap_or(0) as i64 + 3);
        let numer = FuncElem::new(fl, a.clone(), b.clone(), crate::poly::Poly::one(fl));
        let mut prec = 8.min(bound + 1);
        loop {
            let coords = self.local_coords(p, prec);
            let (num, _) = self.eval_parts(&numer, &coords);
            if let Some(v) = num.valuation() {
                return Some(v - e * mult);
            }
            assert!(prec <= bound, "nonzero numerator vanishes to bounded order");
            prec = (2 * prec).min(bound + 1);
        }
    }

    /// Expansion of `f` at `p` with `prec` known coefficients from the valuation on.
    pub fn local_expand(
        &self,
        f: &FuncElem<F::Elem>,
        p: &CurvePoint<F::Elem>,
        prec: i64,
    ) -> Result<LaurentSeries<F::Elem>> {
        if prec < 1 {
            return Err(Error::Precondition("precision must be at least 1".into()));
        }
        match self.valuation_at(f, p) {
            None => Ok(LaurentSeries::zero(prec)),
            Some(v) => self.expand_abs(f, p, v + prec),
        }
    }

    /// Value of `f` at `p`, or `None` at a pole.
    pub fn value_at(&self, f: &FuncElem<F::Elem>, p: &CurvePoint<F::Elem>) -> Option<F::Elem> {
        let fl = self.field();
        match self.valuation_at(f, p) {
            None => Some(fl.zero()),
            Some(v) if v > 0 => Some(fl.zero()),
            Some(v) if v < 0 => None,
            Some(_) => {
                if let CurvePoint::Affine(x, y) = p {
                    let (a, b, d) = f.parts();
                    let dv = d.eval(fl, x);
                    if !fl.is_zero(&dv) {
                        let n = fl.add(&a.eval(fl, x), &fl.mul(&b.eval(fl, x), y));
                        return fl.div(&n, &dv);
                    }
                }
                self.expand_abs(f, p, 1).ok()?.coeff(fl, 0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::field::{make_extension_field, FiniteField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_has_double_pole_at_infinity() {
        let q = Rationals;
        let c = WeierstrassCurve::from_spec(q, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let x = FuncElem::x(&q);
        let s = c.local_expand(&x, &CurvePoint::Infinity, 5).unwrap();
        assert_eq!(s.valuation(), Some(-2));
        // x * t^2 is a unit with constant term 1
        let t2 = LaurentSeries::monomial(&q, q.one(), 2, 10);
        let u = s.mul(&q, &t2);
        assert_eq!(u.valuation(), Some(0));
        assert_eq!(u.coeff(&q, 0), Some(q.one()));
        // y = x / t
        let y = c.local_expand(&FuncElem::y(&q), &CurvePoint::Infinity, 5).unwrap();
        assert_eq!(y.valuation(), Some(-3));
        let t = LaurentSeries::monomial(&q, q.one(), 1, 10);
        assert_eq!(y.mul(&q, &t).truncate(&q, 1), s.truncate(&q, 1));
    }

    #[test]
    fn constants_and_vertical_lines() {
        let q = Rationals;
        let c = WeierstrassCurve::from_spec(q, &CurveSpec::new(["0", "0", "0", "-1", "1"])).unwrap();
        let p = c.parse_point("1", "1").unwrap();
        let k = FuncElem::constant(&q, q.from_i64(7));
        let s = c.local_expand(&k, &p, 3).unwrap();
        assert_eq!(s.valuation(), Some(0));
        assert_eq!(s.coeff(&q, 0), Some(q.from_i64(7)));
        assert_eq!(s.coeff(&q, 1), Some(q.zero()));
        let v = FuncElem::x(&q).sub(&q, &FuncElem::constant(&q, q.one()));
        assert_eq!(c.valuation_at(&v, &p), Some(1));
        assert_eq!(c.valuation_at(&v, &CurvePoint::Infinity), Some(-2));
    }

    #[test]
    fn two_torsion_point_uses_y_parameter() {
        let f = make_extension_field(5, 1).unwrap();
        // y^2 = x^3 + x: (0, 0) is 2-torsion
        let c = WeierstrassCurve::from_spec(f.clone(), &CurveSpec::new(["0", "0", "0", "1", "0"])).unwrap();
        let p = c.point(0, 0).unwrap();
        assert_eq!(c.local_parameter(&p), LocalParameter::YMinus(0));
        assert_eq!(c.valuation_at(&FuncElem::x(&f), &p), Some(2));
        assert_eq!(c.valuation_at(&FuncElem::y(&f), &p), Some(1));
        let coords = c.local_coords(&p, 8);
        let lhs = coords.y.mul(&f, &coords.y);
        let rhs = coords.x.eval_poly(&f, c.f_poly().coeffs());
        assert_eq!(lhs.truncate(&f, 8), rhs.truncate(&f, 8));
    }

    fn random_func(c: &WeierstrassCurve<FiniteField>, rng: &mut ChaCha8Rng) -> FuncElem<u64> {
        let f = c.field();
        let mut poly = |deg: usize| {
            crate::poly::Poly::from_coeffs(f, (0..=deg).map(|_| f.random(rng)).collect())
        };
        let (a, b, mut d) = (poly(2), poly(1), poly(1));
        if d.is_zero() {
            d = crate::poly::Poly::one(f);
        }
        FuncElem::new(f, a, b, d)
    }

    #[test]
    fn expansion_is_a_ring_homomorphism() {
        for (p, k, a) in [(2u64, 4u32, ["1", "0", "0", "0", "1"]), (3, 2, ["0", "0", "0", "-1", "1"])] {
            let f = make_extension_field(p, k).unwrap();
            let c = WeierstrassCurve::from_spec(f.clone(), &CurveSpec::new(a)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let pts = c.points().unwrap();
            for trial in 0..40 {
                let g = random_func(&c, &mut rng);
                let h = random_func(&c, &mut rng);
                let pt = &pts[trial % pts.len()];
                let prec = 8;
                let eg = c.expand_abs(&g, pt, prec).unwrap();
                let eh = c.expand_abs(&h, pt, prec).unwrap();
                let prod = c.expand_abs(&g.mul(&c, &h), pt, prec).unwrap();
                let sum = c.expand_abs(&g.add(&f, &h), pt, prec).unwrap();
                let ep = eg.mul(&f, &eh);
                let shared = ep.precision().min(prec);
                assert_eq!(prod.truncate(&f, shared), ep.truncate(&f, shared));
                assert_eq!(sum, eg.add(&f, &eh).truncate(&f, prec));
                if let Some(v) = eg.valuation() {
                    assert_eq!(c.valuation_at(&g, pt), Some(v));
                }
            }
        }
    }
}
