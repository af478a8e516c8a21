//! Elliptic curves in long Weierstrass form
//! `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`, valid in every
//! characteristic including 2 and 3.

mod divisor;
mod expand;
mod function;

pub use divisor::{Divisor, RRSpace};
pub use expand::{LocalCoords, LocalParameter};
pub use function::FuncElem;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurvePoint<E> {
    Infinity,
    Affine(E, E),
}

impl<E> CurvePoint<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&E, &E)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, y) => Some((x, y)),
        }
    }
}

/// Textual form of a curve: the five a-invariants as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub a: [String; 5],
}

impl CurveSpec {
    pub fn new(a: [&str; 5]) -> Self {
        CurveSpec { a: a.map(str::to_string) }
    }
}

#[derive(Debug, Clone)]
pub struct WeierstrassCurve<F: Field> {
    field: F,
    a: [F::Elem; 5],
    /// `a1 x + a3`
    h: Poly<F::Elem>,
    /// `x^3 + a2 x^2 + a4 x + a6`
    f: Poly<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure<E> {
    pub order: u64,
    pub cyclic: bool,
    /// Largest order of a point; equals `order` exactly when cyclic.
    pub exponent: u64,
    /// A point of maximal order (a generator when cyclic).
    pub generator: CurvePoint<E>,
}

impl<F: Field> WeierstrassCurve<F> {
    /// `[a1, a2, a3, a4, a6]`; rejects singular curves.
    pub fn new(field: F, a: [F::Elem; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.clone();
        let h = Poly::from_coeffs(&field, vec![a3, a1]);
        let f = Poly::from_coeffs(&field, vec![a6, a4, a2, field.one()]);
        let curve = WeierstrassCurve { field, a, h, f };
        if curve.field.is_zero(&curve.discriminant()) {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_spec(field: F, spec: &CurveSpec) -> Result<Self> {
        let parsed: Vec<F::Elem> = spec.a.iter().map(|s| field.parse(s)).collect::<Result<_>>()?;
        let a: [F::Elem; 5] = parsed.try_into().expect("five invariants");
        Self::new(field, a)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn invariants(&self) -> &[F::Elem; 5] {
        &self.a
    }

    pub fn spec(&self) -> CurveSpec {
        CurveSpec { a: self.a.clone().map(|c| self.field.format(&c)) }
    }

    pub(crate) fn h_poly(&self) -> &Poly<F::Elem> {
        &self.h
    }

    pub(crate) fn f_poly(&self) -> &Poly<F::Elem> {
        &self.f
    }

    pub fn discriminant(&self) -> F::Elem {
        let fl = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let c = |n: i64| fl.from_i64(n);
        let m = |x: &F::Elem, y: &F::Elem| fl.mul(x, y);
        let b2 = fl.add(&m(a1, a1), &m(&c(4), a2));
        let b4 = fl.add(&m(&c(2), a4), &m(a1, a3));
        let b6 = fl.add(&m(a3, a3), &m(&c(4), a6));
        let b8 = {
            let t1 = m(&m(a1, a1), a6);
            let t2 = m(&c(4), &m(a2, a6));
            let t3 = m(&m(a1, a3), a4);
            let t4 = m(a2, &m(a3, a3));
            let t5 = m(a4, a4);
            fl.sub(&fl.add(&fl.sub(&fl.add(&t1, &t2), &t3), &t4), &t5)
        };
        let t1 = fl.neg(&m(&m(&b2, &b2), &b8));
        let t2 = m(&c(8), &m(&b4, &m(&b4, &b4)));
        let t3 = m(&c(27), &m(&b6, &b6));
        let t4 = m(&c(9), &m(&b2, &m(&b4, &b6)));
        fl.add(&fl.sub(&fl.sub(&t1, &t2), &t3), &t4)
    }

    /// `F(x, y) = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6`
    pub fn equation_at(&self, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let fl = &self.field;
        let lhs = fl.mul(y, &fl.add(y, &self.h.eval(fl, x)));
        fl.sub(&lhs, &self.f.eval(fl, x))
    }

    pub fn contains(&self, p: &CurvePoint<F::Elem>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.field.is_zero(&self.equation_at(x, y)),
        }
    }

    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<CurvePoint<F::Elem>> {
        let p = CurvePoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn parse_point(&self, x: &str, y: &str) -> Result<CurvePoint<F::Elem>> {
        self.point(self.field.parse(x)?, self.field.parse(y)?)
    }

    pub fn format_point(&self, p: &CurvePoint<F::Elem>) -> String {
        match p {
            CurvePoint::Infinity => "inf".to_string(),
            CurvePoint::Affine(x, y) => format!("({}, {})", self.field.format(x), self.field.format(y)),
        }
    }

    /// `dF/dy = 2y + a1 x + a3` at an affine point.
    pub fn partial_y(&self, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let fl = &self.field;
        fl.add(&fl.add(y, y), &self.h.eval(fl, x))
    }

    pub fn neg(&self, p: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let fl = &self.field;
                CurvePoint::Affine(x.clone(), fl.neg(&fl.add(y, &self.h.eval(fl, x))))
            }
        }
    }

    /// Slope of the line through `p` and `q` (tangent when equal), or `None`
    /// when that line is vertical.
    pub(crate) fn chord_slope(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> Option<F::Elem> {
        let fl = &self.field;
        let ((x1, y1), (x2, y2)) = (p.coords()?, q.coords()?);
        if x1 != x2 {
            return fl.div(&fl.sub(y2, y1), &fl.sub(x2, x1));
        }
        if y1 != y2 {
            return None;
        }
        let [a1, a2, _, a4, _] = &self.a;
        let denom = self.partial_y(x1, y1);
        if fl.is_zero(&denom) {
            return None;
        }
        let num = fl.sub(
            &fl.add(
                &fl.add(&fl.mul(&fl.from_i64(3), &fl.mul(x1, x1)), &fl.mul(&fl.from_i64(2), &fl.mul(a2, x1))),
                a4,
            ),
            &fl.mul(a1, y1),
        );
        fl.div(&num, &denom)
    }

    pub fn add(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        let (x1, y1) = match p.coords() {
            None => return q.clone(),
            Some(c) => c,
        };
        let x2 = match q.coords() {
            None => return p.clone(),
            Some((x2, _)) => x2,
        };
        let fl = &self.field;
        let Some(lambda) = self.chord_slope(p, q) else {
            return CurvePoint::Infinity;
        };
        let [a1, a2, a3, _, _] = &self.a;
        let nu = fl.sub(y1, &fl.mul(&lambda, x1));
        let x3 = fl.sub(
            &fl.sub(&fl.sub(&fl.add(&fl.mul(&lambda, &lambda), &fl.mul(a1, &lambda)), a2), x1),
            x2,
        );
        let y3 = fl.sub(&fl.neg(&fl.mul(&fl.add(&lambda, a1), &x3)), &fl.add(&nu, a3));
        CurvePoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn checked_add(&self, p: &CurvePoint<F::Elem>, q: &CurvePoint<F::Elem>) -> Result<CurvePoint<F::Elem>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add(p, q))
    }

    pub fn mul(&self, n: i64, p: &CurvePoint<F::Elem>) -> CurvePoint<F::Elem> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Points with the given x-coordinate, in a fixed order.
    pub fn lift_x(&self, x: &F::Elem) -> Vec<CurvePoint<F::Elem>> {
        let fl = &self.field;
        let b = self.h.eval(fl, x);
        let c = fl.neg(&self.f.eval(fl, x));
        fl.quadratic_roots(&b, &c)
            .into_iter()
            .map(|y| CurvePoint::Affine(x.clone(), y))
            .collect()
    }

    /// All points, for finite fields of order at most 10^6.
    pub fn points(&self) -> Result<Vec<CurvePoint<F::Elem>>> {
        let n = self.enumerable_order()?;
        let mut out = vec![CurvePoint::Infinity];
        for i in 0..n {
            let x = self.field.element(i).expect("index below order");
            out.extend(self.lift_x(&x));
        }
        Ok(out)
    }

    fn enumerable_order(&self) -> Result<u64> {
        match self.field.order() {
            Some(n) if n <= 1_000_000 => Ok(n),
            Some(n) => Err(Error::EnumerationTooLarge(n.to_string())),
            None => Err(Error::EnumerationTooLarge("infinite".to_string())),
        }
    }

    /// Order of `p` given a multiple `n` of it.
    pub fn order_dividing(&self, p: &CurvePoint<F::Elem>, n: u64) -> u64 {
        let mut ord = n;
        for r in small_prime_factors(n) {
            while ord.is_multiple_of(r) && self.mul((ord / r) as i64, p).is_infinity() {
                ord /= r;
            }
        }
        ord
    }

    /// Exact point count and structure by exhaustive enumeration.
    pub fn group_structure_small(&self) -> Result<GroupStructure<F::Elem>> {
        let pts = self.points()?;
        let order = pts.len() as u64;
        let mut best = (1u64, CurvePoint::Infinity);
        for p in &pts {
            let o = self.order_dividing(p, order);
            if o > best.0 {
                best = (o, p.clone());
            }
            if o == order {
                break;
            }
        }
        Ok(GroupStructure { order, cyclic: best.0 == order, exponent: best.0, generator: best.1 })
    }

    /// A uniformly chosen x with a rational lift, first lift or its negative.
    pub fn random_point(&self, rng: &mut dyn RngCore) -> CurvePoint<F::Elem> {
        loop {
            let x = self.field.random(rng);
            let lifts = self.lift_x(&x);
            if lifts.is_empty() {
                continue;
            }
            let pick = (rng.next_u32() as usize) % lifts.len();
            return lifts[pick].clone();
        }
    }

    /// First affine point in enumeration order avoiding `exclude`.
    /// Over the rationals the search runs over `x = a/b` of small height.
    pub fn first_point_avoiding(&self, exclude: &[CurvePoint<F::Elem>]) -> Option<CurvePoint<F::Elem>> {
        let ok = |p: &CurvePoint<F::Elem>| !exclude.contains(p);
        if let Some(n) = self.field.order() {
            for i in 0..n.min(1 << 24) {
                let x = self.field.element(i)?;
                if let Some(p) = self.lift_x(&x).into_iter().find(|p| ok(p)) {
                    return Some(p);
                }
            }
            return None;
        }
        for height in 1i64..=64 {
            for b in 1..=height {
                for a in [-height, height] {
                    let r = BigRational::new(BigInt::from(a), BigInt::from(b));
                    if let Some(p) = self.try_rational_x(&r).filter(|p| ok(p)) {
                        return Some(p);
                    }
                }
                for a in -height + 1..height {
                    if a.abs() < height && b < height {
                        continue;
                    }
                    let r = BigRational::new(BigInt::from(a), BigInt::from(b));
                    if let Some(p) = self.try_rational_x(&r).filter(|p| ok(p)) {
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    fn try_rational_x(&self, r: &BigRational) -> Option<CurvePoint<F::Elem>> {
        if r.denom().is_zero() || (r.denom() != &BigInt::one() && r.numer().is_zero()) {
            return None;
        }
        let x = self.field.from_rational(r).ok()?;
        self.lift_x(&x).into_iter().next()
    }

    /// Nonzero multiples `k p` for `1 <= k <= bound` all differ from infinity.
    pub fn is_non_torsion_up_to(&self, p: &CurvePoint<F::Elem>, bound: i64) -> bool {
        let mut acc = CurvePoint::Infinity;
        for _ in 1..=bound {
            acc = self.add(&acc, p);
            if acc.is_infinity() {
                return false;
            }
        }
        true
    }
}

fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integral model check and discriminant of a curve given over the rationals.
pub fn integral_discriminant(spec: &CurveSpec) -> Result<BigInt> {
    let q = crate::field::Rationals;
    let curve = WeierstrassCurve::from_spec(q, spec)?;
    if curve.invariants().iter().any(|a| !a.is_integer()) {
        return Err(Error::Precondition("model is not integral".into()));
    }
    Ok(curve.discriminant().to_integer())
}

/// Whether `p` divides the discriminant of an integral model.
pub fn has_bad_reduction(spec: &CurveSpec, p: u64) -> Result<bool> {
    let d = integral_discriminant(spec)?;
    Ok(d.is_zero() || (d % BigInt::from(p)).is_zero())
}
