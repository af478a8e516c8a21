use serde::{Deserialize, Serialize};

use super::WeierstrassCurve;
use crate::field::Field;
use crate::poly::Poly;

/// An element `(a(x) + b(x) y) / d(x)` of the function field. The triple is
/// kept with `gcd(a, b, d) = 1` and `d` monic, which makes the representation
/// unique and equality structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FuncElem<E> {
    a: Poly<E>,
    b: Poly<E>,
    d: Poly<E>,
}

impl<E: Clone + PartialEq> FuncElem<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, a: Poly<E>, b: Poly<E>, d: Poly<E>) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if a.is_zero() && b.is_zero() {
            return Self::zero(field);
        }
        let g = a.gcd(field, &b).gcd(field, &d);
        let (a, b, d) = if g.degree() == Some(0) {
            (a, b, d)
        } else {
            (a.div_rem(field, &g).0, b.div_rem(field, &g).0, d.div_rem(field, &g).0)
        };
        let lc = field.inv(d.leading().unwrap()).unwrap();
        FuncElem { a: a.scale(field, &lc), b: b.scale(field, &lc), d: d.scale(field, &lc) }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        FuncElem { a: Poly::zero(), b: Poly::zero(), d: Poly::one(field) }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        FuncElem { a: Poly::constant(field, c), b: Poly::zero(), d: Poly::one(field) }
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        FuncElem { a: Poly::x(field), b: Poly::zero(), d: Poly::one(field) }
    }

    pub fn y<F: Field<Elem = E>>(field: &F) -> Self {
        FuncElem { a: Poly::zero(), b: Poly::one(field), d: Poly::one(field) }
    }

    /// `x^i y^j` with `j` in {0, 1}.
    pub fn monomial<F: Field<Elem = E>>(field: &F, i: u32, j: u32) -> Self {
        let xi = Poly::x(field).pow(field, i);
        if j == 0 {
            FuncElem { a: xi, b: Poly::zero(), d: Poly::one(field) }
        } else {
            FuncElem { a: Poly::zero(), b: xi, d: Poly::one(field) }
        }
    }

    pub fn from_x_poly<F: Field<Elem = E>>(field: &F, p: Poly<E>) -> Self {
        Self::new(field, p, Poly::zero(), Poly::one(field))
    }

    pub fn parts(&self) -> (&Poly<E>, &Poly<E>, &Poly<E>) {
        (&self.a, &self.b, &self.d)
    }

    /// `(a) + (b)*y` over `(d)`, omitting trivial parts.
    pub fn render<F: Field<Elem = E>>(&self, field: &F) -> String {
        let mut num = Vec::new();
        if !self.a.is_zero() {
            num.push(format!("({})", self.a.render(field, "x")));
        }
        if !self.b.is_zero() {
            num.push(format!("({})*y", self.b.render(field, "x")));
        }
        if num.is_empty() {
            return "0".into();
        }
        let num = num.join(" + ");
        if self.d.degree() == Some(0) {
            num
        } else {
            format!("[{num}] / ({})", self.d.render(field, "x"))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_constant() && self.d.is_constant()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        if self.d == o.d {
            return Self::new(field, self.a.add(field, &o.a), self.b.add(field, &o.b), self.d.clone());
        }
        let a = self.a.mul(field, &o.d).add(field, &o.a.mul(field, &self.d));
        let b = self.b.mul(field, &o.d).add(field, &o.b.mul(field, &self.d));
        Self::new(field, a, b, self.d.mul(field, &o.d))
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        FuncElem { a: self.a.neg(field), b: self.b.neg(field), d: self.d.clone() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, o: &Self) -> Self {
        self.add(field, &o.neg(field))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(field);
        }
        FuncElem { a: self.a.scale(field, c), b: self.b.scale(field, c), d: self.d.clone() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, curve: &WeierstrassCurve<F>, o: &Self) -> Self {
        let fl = curve.field();
        let bb = self.b.mul(fl, &o.b);
        let a = self.a.mul(fl, &o.a).add(fl, &bb.mul(fl, curve.f_poly()));
        let b = self
            .a
            .mul(fl, &o.b)
            .add(fl, &o.a.mul(fl, &self.b))
            .sub(fl, &bb.mul(fl, curve.h_poly()));
        Self::new(fl, a, b, self.d.mul(fl, &o.d))
    }

    /// `N(a + b y) = a^2 - a b h - b^2 f`, the norm down to `k(x)` of the numerator.
    pub fn numerator_norm<F: Field<Elem = E>>(&self, curve: &WeierstrassCurve<F>) -> Poly<E> {
        let fl = curve.field();
        let aa = self.a.mul(fl, &self.a);
        let abh = self.a.mul(fl, &self.b).mul(fl, curve.h_poly());
        let bbf = self.b.mul(fl, &self.b).mul(fl, curve.f_poly());
        aa.sub(fl, &abh).sub(fl, &bbf)
    }

    pub fn inv<F: Field<Elem = E>>(&self, curve: &WeierstrassCurve<F>) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let fl = curve.field();
        let n = self.numerator_norm(curve);
        let a = self.a.sub(fl, &self.b.mul(fl, curve.h_poly())).mul(fl, &self.d);
        let b = self.b.neg(fl).mul(fl, &self.d);
        Some(Self::new(fl, a, b, n))
    }

    pub fn div<F: Field<Elem = E>>(&self, curve: &WeierstrassCurve<F>, o: &Self) -> Option<Self> {
        Some(self.mul(curve, &o.inv(curve)?))
    }

    pub fn pow<F: Field<Elem = E>>(&self, curve: &WeierstrassCurve<F>, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv(curve)? } else { self.clone() };
        let mut acc = Self::one(curve.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(curve, &base);
        }
        Some(acc)
    }

    /// Exact order of vanishing at the point at infinity.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let da = self.a.degree().map_or(i64::MIN, |d| 2 * d as i64);
        let db = self.b.degree().map_or(i64::MIN, |d| 2 * d as i64 + 3);
        Some(2 * self.d.degree().unwrap() as i64 - da.max(db))
    }
}
