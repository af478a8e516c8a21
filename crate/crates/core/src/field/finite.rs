use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::rational::parse_rational;
use super::{Field, FieldDescriptor, FieldKind};
use crate::error::{Error, Result};

/// Largest field order for which log/antilog/Zech tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds `F_{p^k}` with the lowest monic irreducible modulus of degree `k`,
/// where candidates are ordered by the packed integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
pub fn make_extension_field(p: u64, k: u32) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=24).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    if p >= 1 << 31 {
        return Err(Error::FieldTooLarge { p, k });
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q < 1 << 62)
        .ok_or(Error::FieldTooLarge { p, k })?;
    let modulus = if k == 1 { vec![0, 1] } else { lowest_irreducible(p, k as usize) };
    Ok(FiniteField::with_modulus(p, k, q, modulus))
}

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
    non_residue: OnceLock<u64>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    log_neg_one: u32,
}

const NO_ZECH: u32 = u32::MAX;

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField(p={}, k={}, modulus={:?})", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl FiniteField {
    fn with_modulus(p: u64, k: u32, q: u64, modulus: Vec<u64>) -> Self {
        let mut inner = Inner {
            p,
            k: k as usize,
            q,
            modulus,
            tables: None,
            non_residue: OnceLock::new(),
        };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField { inner: Arc::new(inner) }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k as u32
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Coefficients `c_0..c_{k-1}` of the element as a polynomial in the generator `z`.
    pub fn coefficients(&self, a: u64) -> Vec<u64> {
        unpack(&self.inner, a)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> u64 {
        let v: Vec<u64> = coeffs.iter().map(|c| c % self.inner.p).collect();
        pack(&self.inner, &v)
    }
}

fn unpack(inner: &Inner, mut a: u64) -> Vec<u64> {
    let mut v = vec![0u64; inner.k];
    for c in v.iter_mut() {
        *c = a % inner.p;
        a /= inner.p;
    }
    v
}

fn pack(inner: &Inner, v: &[u64]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &c| acc * inner.p + c)
}

fn slow_add(inner: &Inner, a: u64, b: u64) -> u64 {
    if inner.p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..inner.k {
        let d = (a % inner.p + b % inner.p) % inner.p;
        out += d * place;
        place = place.wrapping_mul(inner.p);
        a /= inner.p;
        b /= inner.p;
    }
    out
}

fn slow_neg(inner: &Inner, a: u64) -> u64 {
    if inner.p == 2 {
        return a;
    }
    let v: Vec<u64> = unpack(inner, a).into_iter().map(|c| (inner.p - c) % inner.p).collect();
    pack(inner, &v)
}

fn slow_mul(inner: &Inner, a: u64, b: u64) -> u64 {
    let p = inner.p;
    let k = inner.k;
    let av = unpack(inner, a);
    let bv = unpack(inner, b);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in av.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in bv.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..k {
            let m = inner.modulus[i];
            if m != 0 {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + p - (c * m) % p) % p;
            }
        }
    }
    prod.truncate(k);
    pack(inner, &prod)
}

fn slow_pow(inner: &Inner, a: u64, mut e: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let n = q - 1;
    let factors = prime_factors(n);
    let is_primitive = |g: u64| g != 0 && factors.iter().all(|&r| slow_pow(inner, g, n / r) != 1);
    // prefer the class of z itself
    let generator = std::iter::once(inner.p)
        .chain(2..q)
        .find(|&g| is_primitive(g))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u64;
    for i in 0..n as usize {
        exp[i] = cur as u32;
        exp[i + n as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = slow_mul(inner, cur, generator);
    }
    let mut zech = vec![NO_ZECH; n as usize];
    for d in 0..n as usize {
        let v = slow_add(inner, 1, exp[d] as u64);
        if v != 0 {
            zech[d] = log[v as usize];
        }
    }
    let log_neg_one = if inner.p == 2 { 0 } else { (n / 2) as u32 };
    Tables { exp, log, zech, log_neg_one }
}

// ---- polynomials over F_p for modulus selection ----

fn fp_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, a as i128);
    while nr != 0 {
        let qd = r / nr;
        (t, nt) = (nt, t - qd * nt);
        (r, nr) = (nr, r - qd * nr);
    }
    t.rem_euclid(p as i128) as u64
}

fn fp_polyrem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = fp_inv(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lc_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - c * mi % p) % p;
        }
        fp_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_polyrem(&prod, m, p)
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_polyrem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = fp_polyrem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0u64, 1];
    // x^{p^j} mod f, computed by repeated p-th powering
    let frob = |j: usize| -> Vec<u64> {
        let mut cur = x.clone();
        for _ in 0..j {
            cur = fp_powmod(&cur, p as u128, f, p);
        }
        cur
    };
    let sub_x = |mut v: Vec<u64>| -> Vec<u64> {
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        fp_trim(&mut v);
        v
    };
    let full = sub_x(frob(k));
    if !(full.len() == 1 && full[0] == 0) {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = sub_x(frob(k / r as usize));
        let g = fp_gcd(f, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn lowest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let total = p.pow(k as u32);
    for idx in 0..total {
        let mut f = vec![0u64; k + 1];
        let mut rest = idx;
        for c in f.iter_mut().take(k) {
            *c = rest % p;
            rest /= p;
        }
        f[k] = 1;
        if f[0] == 0 {
            continue;
        }
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    fn find_non_residue(&self) -> u64 {
        *self.inner.non_residue.get_or_init(|| {
            let e = (self.inner.q - 1) / 2;
            (2..self.inner.q)
                .find(|&a| self.pow(&a, e) != 1)
                .expect("odd order field has non-residues")
        })
    }

    fn tonelli_shanks(&self, a: u64) -> Option<u64> {
        let q = self.inner.q;
        if a == 0 {
            return Some(0);
        }
        if self.pow(&a, (q - 1) / 2) != 1 {
            return None;
        }
        let mut s = 0u32;
        let mut odd = q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.find_non_residue();
        let mut m = s;
        let mut c = self.pow(&z, odd);
        let mut t = self.pow(&a, odd);
        let mut r = self.pow(&a, odd.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for FiniteField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            kind: if self.inner.k == 1 { FieldKind::PrimeField } else { FieldKind::ExtensionField },
            p: self.inner.p,
            k: self.inner.k as u32,
            modulus: self.inner.modulus.clone(),
        }
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a + b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        if inner.p == 2 {
            return a ^ b;
        }
        match &inner.tables {
            Some(t) => {
                if *a == 0 {
                    return *b;
                }
                if *b == 0 {
                    return *a;
                }
                let n = (inner.q - 1) as u32;
                let la = t.log[*a as usize];
                let lb = t.log[*b as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[d as usize];
                if z == NO_ZECH {
                    0
                } else {
                    t.exp[(la + z) as usize] as u64
                }
            }
            None => slow_add(inner, *a, *b),
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        let inner = &*self.inner;
        if *a == 0 {
            return 0;
        }
        if inner.k == 1 {
            return inner.p - a;
        }
        if inner.p == 2 {
            return *a;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log_neg_one) as usize] as u64,
            None => slow_neg(inner, *a),
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let inner = &*self.inner;
        if inner.k == 1 {
            return ((*a as u128 * *b as u128) % inner.p as u128) as u64;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize] as u64,
            None => slow_mul(inner, *a, *b),
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        let inner = &*self.inner;
        if *a == 0 {
            return None;
        }
        if inner.k == 1 {
            return Some(fp_inv(*a, inner.p));
        }
        match &inner.tables {
            Some(t) => {
                let n = (inner.q - 1) as u32;
                let l = t.log[*a as usize];
                Some(t.exp[((n - l) % n) as usize] as u64)
            }
            None => Some(slow_pow(inner, *a, inner.q - 2)),
        }
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.inner.p as i64) as u64
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.inner.p);
        n.mod_floor(&p).to_u64().expect("reduced value fits")
    }

    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return Err(Error::BadDenominator(r.to_string()));
        }
        let n = self.from_bigint(r.numer());
        Ok(self.mul(&n, &self.inv(&d).expect("nonzero")))
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let c: i64 = part.parse().map_err(|_| Error::Parse(s.to_string()))?;
                coeffs.push(c.rem_euclid(self.inner.p as i64) as u64);
            }
            if coeffs.len() > self.inner.k {
                return Err(Error::Parse(s.to_string()));
            }
            coeffs.resize(self.inner.k, 0);
            return Ok(pack(&self.inner, &coeffs));
        }
        let r = parse_rational(t)?;
        self.from_rational(&r)
    }

    fn format(&self, a: &u64) -> String {
        if self.inner.k == 1 {
            return a.to_string();
        }
        let mut v = unpack(&self.inner, *a);
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.len() == 1 {
            return v[0].to_string();
        }
        let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.inner.q)
    }

    fn element(&self, index: u64) -> Option<u64> {
        (index < self.inner.q).then_some(index)
    }

    fn sqrt(&self, a: &u64) -> Option<u64> {
        let inner = &*self.inner;
        if *a == 0 {
            return Some(0);
        }
        if inner.p == 2 {
            // Frobenius is bijective; its inverse is x -> x^{q/2}
            return Some(self.pow(a, inner.q / 2));
        }
        if let Some(t) = &inner.tables {
            let l = t.log[*a as usize];
            return (l % 2 == 0).then(|| t.exp[(l / 2) as usize] as u64);
        }
        self.tonelli_shanks(*a)
    }

    fn solve_artin_schreier(&self, c: &u64) -> Option<u64> {
        let inner = &*self.inner;
        if inner.p != 2 {
            return None;
        }
        let k = inner.k;
        // columns of the F_2-linear map z -> z^2 + z on the bit basis
        let cols: Vec<u64> = (0..k)
            .map(|i| {
                let e = 1u64 << i;
                self.add(&self.mul(&e, &e), &e)
            })
            .collect();
        // solve sum_i x_i cols[i] = c by elimination on augmented rows
        let mut rows: Vec<(u64, bool)> = (0..k)
            .map(|r| {
                let mut bits = 0u64;
                for (i, col) in cols.iter().enumerate() {
                    if (col >> r) & 1 == 1 {
                        bits |= 1 << i;
                    }
                }
                (bits, (c >> r) & 1 == 1)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..k {
            let Some(pr) = (rank..k).find(|&r| (rows[r].0 >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pr);
            for r in 0..k {
                if r != rank && (rows[r].0 >> col) & 1 == 1 {
                    rows[r].0 ^= rows[rank].0;
                    rows[r].1 ^= rows[rank].1;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|r| r.1) {
            return None;
        }
        let mut z = 0u64;
        for (r, &col) in pivots.iter().enumerate() {
            if rows[r].1 {
                z |= 1 << col;
            }
        }
        Some(z)
    }
}

impl FiniteField {
    /// Absolute trace to `F_p`, as an element of the prime field.
    pub fn trace(&self, a: &u64) -> u64 {
        let mut acc = 0u64;
        let mut cur = *a;
        for _ in 0..self.inner.k {
            acc = self.add(&acc, &cur);
            cur = self.pow(&cur, self.inner.p);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        // no root-free factorization shortcut: test divisibility by every monic of degree 1..=deg/2
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let total = p.pow(d as u32);
            for idx in 0..total {
                let mut g = vec![0u64; d + 1];
                let mut rest = idx;
                for c in g.iter_mut().take(d) {
                    *c = rest % p;
                    rest /= p;
                }
                g[d] = 1;
                let r = fp_polyrem(f, &g, p);
                if r.len() == 1 && r[0] == 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_modulus_is_z() {
        let f = make_extension_field(3, 1).unwrap();
        assert_eq!(f.descriptor().modulus, vec![0, 1]);
        assert_eq!(f.descriptor().kind, FieldKind::PrimeField);
    }

    #[test]
    fn f4_modulus_is_z2_z_1() {
        let f = make_extension_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_extension_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_extension_field(3, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_extension_field(3, 25).unwrap_err(), Error::DegreeOutOfRange(25));
    }

    #[test]
    fn chosen_modulus_is_lowest_irreducible() {
        for (p, k) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 8), (7, 2)] {
            let f = make_extension_field(p, k as u32).unwrap();
            let m = f.modulus().to_vec();
            assert!(brute_irreducible(&m, p), "p={p} k={k}");
            // every smaller candidate is reducible
            let idx = m[..k].iter().rev().fold(0u64, |a, &c| a * p + c);
            for smaller in 0..idx {
                let mut g = vec![0u64; k + 1];
                let mut rest = smaller;
                for c in g.iter_mut().take(k) {
                    *c = rest % p;
                    rest /= p;
                }
                g[k] = 1;
                assert!(!brute_irreducible(&g, p), "p={p} k={k} smaller={g:?}");
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = make_extension_field(3, 4).unwrap();
        let inner = &*f.inner;
        assert!(inner.tables.is_some());
        for a in (0..81u64).step_by(7) {
            for b in 0..81u64 {
                assert_eq!(f.mul(&a, &b), slow_mul(inner, a, b));
                assert_eq!(f.add(&a, &b), slow_add(inner, a, b));
            }
            assert_eq!(f.neg(&a), slow_neg(inner, a));
        }
    }

    #[test]
    fn large_field_slow_path() {
        let f = make_extension_field(2, 24).unwrap();
        assert!(f.inner.tables.is_none());
        let a = 0xabcdefu64;
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), 1);
        let f = make_extension_field(1_000_003, 2).unwrap();
        let a = f.parse("[5,7]").unwrap();
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        let s = f.mul(&a, &a);
        let r = f.sqrt(&s).unwrap();
        assert_eq!(f.mul(&r, &r), s);
    }

    #[test]
    fn format_parse_round_trip() {
        let f = make_extension_field(5, 3).unwrap();
        for a in [0u64, 1, 4, 5, 27, 124] {
            assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
        }
        assert_eq!(f.parse("1/2").unwrap(), f.inv(&2).unwrap());
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn trace_of_artin_schreier_solvable() {
        let f = make_extension_field(2, 5).unwrap();
        for c in 0..32u64 {
            let sol = f.solve_artin_schreier(&c);
            assert_eq!(sol.is_some(), f.trace(&c) == 0);
            if let Some(z) = sol {
                assert_eq!(f.add(&f.mul(&z, &z), &z), c);
            }
        }
    }
}
