//! Dense exact matrices, rank and kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::Field;

/// Row-major dense matrix. All entries belong to the field the matrix is
/// handed to; the element type carries no field tag of its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel<E> {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows in reduced echelon form.
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vec<E>>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        ExactMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<E: Clone> ExactMatrix<E> {
    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &ExactMatrix<E>) -> ExactMatrix<E> {
        assert_eq!(self.cols, other.rows);
        ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(field.zero(), |acc, k| {
                field.add(&acc, &field.mul(self.get(i, k), other.get(k, j)))
            })
        })
    }
}

/// Rank and kernel through the field's preferred elimination.
pub fn rank_and_kernel<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> RankKernel<F::Elem> {
    field.rank_and_kernel(m)
}

/// Plain Gauss-Jordan elimination to reduced row echelon form.
pub fn gauss_rank_kernel<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> RankKernel<F::Elem> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<F::Elem>> = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("nonzero pivot");
        for x in &mut a[r][c..cols] {
            *x = field.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kernel = kernel_from_rref(field, &a, &pivots, cols);
    RankKernel { rank: r, pivots, kernel }
}

fn kernel_from_rref<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&a[i][f]);
            }
            v
        })
        .collect()
}

/// Fraction-free (Bareiss) Gauss-Jordan elimination over the integers.
///
/// Rows are cleared of denominators first. Every intermediate entry is a minor
/// of the integer matrix, so all divisions are exact; at the end every pivot
/// equals the same determinant `d` and the matrix is `d` times its reduced form.
pub fn bareiss_rank_kernel(m: &ExactMatrix<BigRational>) -> RankKernel<BigRational> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut free_before: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            free_before.push(c);
            continue;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            free_before.push(c);
            continue;
        };
        a.swap(r, pr);
        let pivot_row = a[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let aic = row[c].clone();
            // columns that can be nonzero: later columns, and earlier free
            // columns for rows above the pivot
            let update = |x: &mut BigInt, pj: &BigInt| {
                let mut t = &piv * &*x;
                if !aic.is_zero() && !pj.is_zero() {
                    t -= &aic * pj;
                }
                *x = exact_div(t, &prev);
            };
            if i < r {
                for &j in &free_before {
                    update(&mut row[j], &pivot_row[j]);
                }
                for &pc in &pivots {
                    row[pc] = exact_div(&piv * &row[pc], &prev);
                }
            }
            for j in c..cols {
                update(&mut row[j], &pivot_row[j]);
            }
        }
        pivots.push(c);
        prev = piv;
        r += 1;
    }
    let d = prev;
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = d.clone();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&a[i][f];
            }
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let sign = if v[f].is_negative() { -BigInt::one() } else { BigInt::one() };
            v.into_iter()
                .map(|x| BigRational::from_integer(&(x / &g) * &sign))
                .collect()
        })
        .collect();
    RankKernel { rank: r, pivots, kernel }
}

fn exact_div(n: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return n;
    }
    let (q, rem) = n.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension_field, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: rank by row reduction of the transpose.
    fn naive_rank<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> usize {
        let mut a = m.transpose().row_vecs();
        let mut rank = 0;
        let cols = m.rows();
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !field.is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..a.len() {
                if field.is_zero(&a[i][c]) {
                    continue;
                }
                let f = field.div(&a[i][c], &a[rank][c]).unwrap();
                let (top, bottom) = a.split_at_mut(i);
                for (x, y) in bottom[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_low_rank<F: Field>(field: &F, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix<F::Elem> {
        let r = rng.gen_range(0..=rows.min(cols));
        let left = ExactMatrix::from_fn(rows, r, |_, _| field.random(rng));
        let right = ExactMatrix::from_fn(r, cols, |_, _| field.random(rng));
        if r == 0 {
            return ExactMatrix::from_fn(rows, cols, |_, _| field.zero());
        }
        left.mul(field, &right)
    }

    fn check_field<F: Field>(field: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let m = random_low_rank(field, &mut rng, rows, cols);
            let rk = rank_and_kernel(field, &m);
            assert_eq!(rk.rank, naive_rank(field, &m));
            assert_eq!(rk.rank + rk.kernel.len(), cols);
            for v in &rk.kernel {
                assert!(m.mul_vec(field, v).iter().all(|x| field.is_zero(x)));
            }
        }
    }

    #[test]
    fn identity_over_q() {
        let q = Rationals;
        let m = ExactMatrix::from_fn(3, 3, |i, j| q.from_i64((i == j) as i64));
        let rk = rank_and_kernel(&q, &m);
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel.is_empty());
    }

    #[test]
    fn equal_rows_over_f2() {
        let f2 = make_extension_field(2, 1).unwrap();
        let m = ExactMatrix::from_fn(2, 2, |_, _| 1u64);
        let rk = rank_and_kernel(&f2, &m);
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, vec![vec![1, 1]]);
    }

    #[test]
    fn six_by_four_instance() {
        let q = Rationals;
        let rows = [
            [1, 2, 3, 4],
            [2, 4, 6, 8],
            [0, 1, -1, 2],
            [1, 3, 2, 6],
            [5, 0, 1, 1],
            [6, 3, 3, 7],
        ];
        let m = ExactMatrix::from_fn(6, 4, |i, j| q.from_i64(rows[i][j]));
        let rk = rank_and_kernel(&q, &m);
        assert_eq!(rk.rank, naive_rank(&q, &m));
        assert_eq!(rk.rank, 3);
    }

    #[test]
    fn fraction_free_matches_naive_over_q() {
        check_field(&Rationals, 11);
        // and agrees with plain Gauss-Jordan
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_low_rank(&q, &mut rng, 5, 6);
            let a = bareiss_rank_kernel(&m);
            let b = gauss_rank_kernel(&q, &m);
            assert_eq!(a.rank, b.rank);
            assert_eq!(a.pivots, b.pivots);
        }
    }

    #[test]
    fn finite_fields_match_naive() {
        check_field(&make_extension_field(2, 1).unwrap(), 1);
        check_field(&make_extension_field(3, 2).unwrap(), 2);
        check_field(&make_extension_field(5, 2).unwrap(), 3);
        check_field(&make_extension_field(2, 8).unwrap(), 4);
    }
}
