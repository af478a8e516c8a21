//! Truncated Laurent series `sum_{i >= v} c_i t^i + O(t^prec)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients run from `t^start` up to `t^(start + len - 1)`; everything
/// from `t^prec = t^(start + len)` on is unknown. After normalization the
/// first stored coefficient is nonzero, so `start` is the valuation; a series
/// that vanishes to known precision stores no coefficients and `start == prec`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries<E> {
    start: i64,
    coeffs: Vec<E>,
}

impl<E: Clone> LaurentSeries<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, start: i64, coeffs: Vec<E>) -> Self {
        let lead = coeffs.iter().take_while(|c| field.is_zero(c)).count();
        LaurentSeries { start: start + lead as i64, coeffs: coeffs[lead..].to_vec() }
    }

    /// `O(t^prec)`
    pub fn zero(prec: i64) -> Self {
        LaurentSeries { start: prec, coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E, prec: i64) -> Self {
        Self::monomial(field, c, 0, prec)
    }

    /// `c t^e + O(t^prec)`
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, e: i64, prec: i64) -> Self {
        if e >= prec {
            return Self::zero(prec);
        }
        let mut v = vec![field.zero(); (prec - e) as usize];
        v[0] = c;
        Self::new(field, e, v)
    }

    /// A polynomial in `t` (constant term first), truncated at `prec`.
    pub fn from_poly<F: Field<Elem = E>>(field: &F, coeffs: &[E], prec: i64) -> Self {
        let n = prec.max(0) as usize;
        let v = (0..n).map(|i| coeffs.get(i).cloned().unwrap_or_else(|| field.zero())).collect();
        if prec <= 0 {
            return Self::zero(prec);
        }
        Self::new(field, 0, v)
    }

    pub fn precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Number of known coefficients past the valuation.
    pub fn relative_precision(&self) -> i64 {
        self.coeffs.len() as i64
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^i`, or `None` beyond the known precision.
    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: i64) -> Option<E> {
        if i >= self.precision() {
            None
        } else if i < self.start {
            Some(field.zero())
        } else {
            Some(self.coeffs[(i - self.start) as usize].clone())
        }
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.first()
    }

    pub fn truncate<F: Field<Elem = E>>(&self, field: &F, prec: i64) -> Self {
        if prec >= self.precision() {
            return self.clone();
        }
        if prec <= self.start {
            return Self::zero(prec);
        }
        Self::new(field, self.start, self.coeffs[..(prec - self.start) as usize].to_vec())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { start: self.start + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.precision());
        }
        LaurentSeries { start: self.start, coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        LaurentSeries { start: self.start, coeffs: self.coeffs.iter().map(|a| field.neg(a)).collect() }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let start = self.start.min(other.start).min(prec);
        let v = (start..prec)
            .map(|i| {
                let a = self.coeff(field, i).unwrap();
                let b = other.coeff(field, i).unwrap();
                field.add(&a, &b)
            })
            .collect();
        Self::new(field, start, v)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let prec = (self.precision() + other.start).min(other.precision() + self.start);
        let start = self.start + other.start;
        if start >= prec {
            return Self::zero(prec);
        }
        let n = (prec - start) as usize;
        let mut out = vec![field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !field.is_zero(b) {
                    out[i + j] = field.add(&out[i + j], &field.mul(a, b));
                }
            }
        }
        Self::new(field, start, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        if e == 0 {
            return Self::constant(field, field.one(), self.relative_precision());
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Adds the constant `c`, keeping the precision.
    pub fn add_constant<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let prec = self.precision();
        if prec <= 0 || field.is_zero(c) {
            return self.clone();
        }
        let start = self.start.min(0);
        let mut v: Vec<E> = (start..prec).map(|i| self.coeff(field, i).unwrap()).collect();
        let idx = (-start) as usize;
        v[idx] = field.add(&v[idx], c);
        Self::new(field, start, v)
    }

    /// Multiplicative inverse; `s * s^{-1} = 1 + O(t^{rel})` with the same
    /// relative precision as `s`.
    pub fn invert<F: Field<Elem = E>>(&self, field: &F) -> Result<Self> {
        let n = self.coeffs.len();
        if n == 0 {
            return Err(Error::ZeroSeries);
        }
        let a0_inv = field.inv(&self.coeffs[0]).expect("leading coefficient nonzero");
        let mut b: Vec<E> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut s = field.zero();
            for i in 1..=k {
                if !field.is_zero(&self.coeffs[i]) {
                    s = field.add(&s, &field.mul(&self.coeffs[i], &b[k - i]));
                }
            }
            b.push(field.neg(&field.mul(&s, &a0_inv)));
        }
        Ok(Self::new(field, -self.start, b))
    }

    pub fn div<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        Ok(self.mul(field, &other.invert(field)?))
    }

    /// Evaluates a polynomial (constant term first) at this series by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, field: &F, coeffs: &[E]) -> Self {
        let Some((top, rest)) = coeffs.split_last() else {
            return Self::zero(i64::MAX / 4);
        };
        let mut acc = Self::constant(field, top.clone(), self.relative_precision().max(1));
        for c in rest.iter().rev() {
            acc = acc.mul(field, self).add_constant(field, c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension_field, Rationals};
    use proptest::prelude::*;

    fn q_series(start: i64, coeffs: &[i64]) -> LaurentSeries<num_rational::BigRational> {
        let q = Rationals;
        LaurentSeries::new(&q, start, coeffs.iter().map(|&c| q.from_i64(c)).collect())
    }

    #[test]
    fn invert_one_plus_t() {
        let q = Rationals;
        let s = q_series(0, &[1, 1, 0]);
        let inv = s.invert(&q).unwrap();
        assert_eq!(inv, q_series(0, &[1, -1, 1]));
        let prod = s.mul(&q, &inv);
        assert_eq!(prod, q_series(0, &[1, 0, 0]));
    }

    #[test]
    fn invert_constant_and_monomial() {
        let q = Rationals;
        let c = q_series(0, &[4]);
        assert_eq!(c.invert(&q).unwrap(), LaurentSeries::new(&q, 0, vec![q.parse("1/4").unwrap()]));
        let t2 = q_series(2, &[1, 0, 0]);
        let inv = t2.invert(&q).unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.coeff(&q, -2), Some(q.one()));
        assert_eq!(inv.coeff(&q, -1), Some(q.zero()));
    }

    #[test]
    fn invert_zero_fails() {
        let q = Rationals;
        assert_eq!(LaurentSeries::<num_rational::BigRational>::zero(5).invert(&q), Err(Error::ZeroSeries));
        let _ = q;
    }

    #[test]
    fn precision_tracking_in_products() {
        let q = Rationals;
        // (t^-2 + O(t^1)) * (t^3 + t^4 + O(t^5)) = t + O(t^3)
        let a = q_series(-2, &[1, 0, 0]);
        let b = q_series(3, &[1, 1]);
        let p = a.mul(&q, &b);
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(p.precision(), 3);
    }

    proptest! {
        #[test]
        fn valuations_add_under_multiplication(
            va in -5i64..5, vb in -5i64..5,
            ca in proptest::collection::vec(-9i64..9, 1..8),
            cb in proptest::collection::vec(-9i64..9, 1..8),
        ) {
            let f = make_extension_field(5, 2).unwrap();
            let mk = |v: i64, c: &Vec<i64>| {
                let mut coeffs: Vec<u64> = c.iter().map(|&x| f.from_i64(x)).collect();
                if coeffs[0] == 0 { coeffs[0] = 1; }
                LaurentSeries::new(&f, v, coeffs)
            };
            let a = mk(va, &ca);
            let b = mk(vb, &cb);
            let p = a.mul(&f, &b);
            prop_assert_eq!(p.valuation(), Some(va + vb));
            let inv = a.invert(&f).unwrap();
            let one = a.mul(&f, &inv);
            prop_assert_eq!(one.valuation(), Some(0));
            for i in 1..one.precision() {
                prop_assert_eq!(one.coeff(&f, i), Some(0));
            }
        }
    }
}
