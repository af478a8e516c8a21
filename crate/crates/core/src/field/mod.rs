//! Exact fields: the rationals and finite fields `F_{p^k}`.
//!
//! Elements are plain values (`BigRational`, packed `u64`); every operation
//! goes through the field object, which carries the parameters and tables.

mod finite;
mod rational;

pub use finite::{is_prime, make_extension_field, FiniteField};
pub use rational::Rationals;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::{ExactMatrix, RankKernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    PrimeField,
    ExtensionField,
}

/// Parameters identifying a field. For finite fields `modulus` holds the
/// monic defining polynomial, constant term first; for `k = 1` it is `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { kind: FieldKind::Rationals, p: 0, k: 1, modulus: Vec::new() }
    }

    pub fn label(&self) -> String {
        match self.kind {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::PrimeField => format!("F_{}", self.p),
            FieldKind::ExtensionField => format!("F_{}^{}", self.p, self.k),
        }
    }
}

pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;

    /// Parses the textual form produced by [`Field::format`].
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// The `i`-th element in a fixed enumeration, for finite fields.
    fn element(&self, _index: u64) -> Option<Self::Elem> {
        None
    }

    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// A root of `z^2 + z = c` in characteristic 2.
    fn solve_artin_schreier(&self, _c: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn rank_and_kernel(&self, m: &ExactMatrix<Self::Elem>) -> RankKernel<Self::Elem> {
        crate::matrix::gauss_rank_kernel(self, m)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_i(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }

    /// Roots of `y^2 + b*y + c`, without multiplicity, in a fixed order.
    fn quadratic_roots(&self, b: &Self::Elem, c: &Self::Elem) -> Vec<Self::Elem> {
        if self.characteristic() == 2 {
            if self.is_zero(b) {
                return self.sqrt(c).into_iter().collect();
            }
            let b2 = self.mul(b, b);
            let rhs = match self.div(c, &b2) {
                Some(v) => v,
                None => return Vec::new(),
            };
            return match self.solve_artin_schreier(&rhs) {
                Some(z) => {
                    let z1 = self.add(&z, &self.one());
                    let mut roots = vec![self.mul(b, &z), self.mul(b, &z1)];
                    roots.sort();
                    roots
                }
                None => Vec::new(),
            };
        }
        let four = self.from_i64(4);
        let disc = self.sub(&self.mul(b, b), &self.mul(&four, c));
        let two_inv = self.inv(&self.from_i64(2)).expect("2 is invertible");
        match self.sqrt(&disc) {
            None => Vec::new(),
            Some(s) => {
                let nb = self.neg(b);
                let r1 = self.mul(&self.add(&nb, &s), &two_inv);
                let r2 = self.mul(&self.sub(&nb, &s), &two_inv);
                if r1 == r2 {
                    vec![r1]
                } else {
                    let mut roots = vec![r1, r2];
                    roots.sort();
                    roots
                }
            }
        }
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Rows `0..=n` of Pascal's triangle reduced into `field`.
pub fn binomial_table<F: Field>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![field.one(); i + 1];
        for j in 1..i {
            row[j] = field.add(&rows[i - 1][j - 1], &rows[i - 1][j]);
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_reduce_mod_p() {
        let f2 = make_extension_field(2, 1).unwrap();
        let t = binomial_table(&f2, 4);
        assert!(f2.is_zero(&t[2][1]));
        assert!(f2.is_zero(&t[4][2]));
        assert!(f2.is_one(&t[3][1]));
        let q = Rationals;
        let t = binomial_table(&q, 6);
        assert_eq!(q.format(&t[6][3]), "20");
    }

    #[test]
    fn quadratic_roots_all_characteristics() {
        let q = Rationals;
        // y^2 - 5y + 6
        let r = q.quadratic_roots(&q.from_i64(-5), &q.from_i64(6));
        assert_eq!(r, vec![q.from_i64(2), q.from_i64(3)]);
        for (p, k) in [(2u64, 3u32), (3, 2), (5, 1), (2, 1)] {
            let f = make_extension_field(p, k).unwrap();
            let n = f.order().unwrap();
            for bi in 0..n {
                for ci in 0..n {
                    let b = f.element(bi).unwrap();
                    let c = f.element(ci).unwrap();
                    let roots = f.quadratic_roots(&b, &c);
                    let brute: Vec<_> = (0..n)
                        .map(|i| f.element(i).unwrap())
                        .filter(|y| {
                            let v = f.add(&f.add(&f.mul(y, y), &f.mul(&b, y)), &c);
                            f.is_zero(&v)
                        })
                        .collect();
                    let mut sorted = roots.clone();
                    sorted.sort();
                    let mut bs = brute.clone();
                    bs.sort();
                    assert_eq!(sorted, bs, "p={p} k={k} b={bi} c={ci}");
                }
            }
        }
    }
}
