//! Dense univariate polynomials. Coefficients are stored constant term first
//! with no trailing zeros; the zero polynomial is empty.

use serde::{Deserialize, Serialize};

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Poly { coeffs: vec![field.one()] }
    }

    /// `x - a`
    pub fn linear_root<F: Field<Elem = E>>(field: &F, a: &E) -> Self {
        Poly { coeffs: vec![field.neg(a), field.one()] }
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Poly { coeffs: vec![field.zero(), field.one()] }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Terms from the highest degree down, e.g. `x^2 + 3*x + 1`.
    pub fn render<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev().filter(|(_, c)| !field.is_zero(c)) {
            let text = field.format(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = match (i, mag == "1") {
                (0, _) => mag,
                (_, true) => mono,
                _ => format!("{mag}*{mono}"),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(field, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !field.is_zero(b) {
                    out[i + j] = field.add(&out[i + j], &field.mul(a, b));
                }
            }
        }
        Self::from_coeffs(field, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        let mut acc = Self::one(field);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = field.inv(d.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = field.mul(&rem[i + dd], &lc_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !field.is_zero(dj) {
                    rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, dj));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(field, quot), Self::from_coeffs(field, rem))
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(field, &field.inv(lc).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b);
            a = b;
            b = r.monic(field);
        }
        a.monic(field)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(field, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension_field, Rationals};

    #[test]
    fn render_signs() {
        let q = Rationals;
        let p = |cs: &[i64]| Poly::from_coeffs(&q, cs.iter().map(|&c| q.from_i64(c)).collect());
        assert_eq!(p(&[-1, -3]).render(&q, "x"), "-3*x - 1");
        assert_eq!(p(&[2, 0, 1]).render(&q, "x"), "x^2 + 2");
        assert_eq!(p(&[0, -1]).render(&q, "t"), "-t");
        assert_eq!(p(&[]).render(&q, "x"), "0");
    }

    #[test]
    fn div_rem_reconstructs() {
        let q = Rationals;
        let a = Poly::from_coeffs(&q, [3, 0, -2, 5, 1].iter().map(|&c| q.from_i64(c)).collect());
        let d = Poly::from_coeffs(&q, [1, 2].iter().map(|&c| q.from_i64(c)).collect());
        let (qu, r) = a.div_rem(&q, &d);
        assert_eq!(qu.mul(&q, &d).add(&q, &r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_finds_common_factor() {
        let f = make_extension_field(5, 1).unwrap();
        let l1 = Poly::linear_root(&f, &2);
        let l2 = Poly::linear_root(&f, &3);
        let l3 = Poly::linear_root(&f, &4);
        let a = l1.mul(&f, &l2);
        let b = l1.mul(&f, &l3);
        assert_eq!(a.gcd(&f, &b), l1);
        assert_eq!(l2.gcd(&f, &l3), Poly::one(&f));
    }
}
