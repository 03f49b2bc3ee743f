//! Integer diagonalization `U·A·V = D` with unimodular `U`, `V`.
//!
//! Elimination runs in checked `i128` first; on overflow it restarts in
//! arbitrary precision. Pivots are chosen by minimal magnitude, which keeps
//! entries small on the sparse coboundary matrices this crate produces.
//! The diagonal is not forced into a divisibility chain; use
//! [`invariant_factors`] for the canonical form.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct Want {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

impl Want {
    pub const NONE: Want = Want { u: false, u_inv: false, v: false };
    pub const ALL: Want = Want { u: true, u_inv: true, v: true };
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Positive diagonal entries `d_0, …, d_{rank-1}` of `D`.
    pub diagonal: Vec<i64>,
    pub rank: usize,
    pub u: Option<Matrix>,
    pub u_inv: Option<Matrix>,
    pub v: Option<Matrix>,
}

impl Diagonalization {
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(&self.diagonal)
    }
}

trait Scalar: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Quotient rounded to nearest, so the remainder is at most |o|/2.
    fn div_nearest(&self, o: &Self) -> Self;
    fn to_i64(&self) -> Option<i64>;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_nearest(&self, o: &Self) -> Self {
        let q = self.div_euclid(*o);
        let r = self - q * o;
        if 2 * r.unsigned_abs() > o.unsigned_abs() {
            if *o > 0 {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_nearest(&self, o: &Self) -> Self {
        let (q, r) = self.div_mod_floor(o);
        let two_r: BigInt = r.abs() * 2;
        if two_r > o.abs() {
            if Signed::is_positive(o) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

struct Dense<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Dense<S> {
    fn from_matrix(m: &Matrix) -> Self {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            data.extend(m.row(i).iter().map(|&x| S::from_i64(x)));
        }
        Dense { rows: m.rows(), cols: m.cols(), data }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = S::from_i64(1);
        }
        Dense { rows: n, cols: n, data }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src], restricted to columns `from..`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &S, from: usize) -> Option<()> {
        for j in from..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let t = s.mul(q)?;
            let d = &mut self.data[dst * self.cols + j];
            *d = d.sub(&t)?;
        }
        Some(())
    }

    /// col[dst] -= q * col[src], restricted to rows `from..`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &S, from: usize) -> Option<()> {
        for i in from..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let t = s.mul(q)?;
            let d = &mut self.data[i * self.cols + dst];
            *d = d.sub(&t)?;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let x = &mut self.data[r * self.cols + j];
            *x = x.neg()?;
        }
        Some(())
    }

    fn negate_col(&mut self, c: usize) -> Option<()> {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + c];
            *x = x.neg()?;
        }
        Some(())
    }

    fn to_matrix(&self) -> Option<Matrix> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.at(i, j).to_i64()?;
            }
        }
        Some(m)
    }
}

struct State<S> {
    a: Dense<S>,
    u: Option<Dense<S>>,
    u_inv: Option<Dense<S>>,
    v: Option<Dense<S>>,
}

impl<S: Scalar> State<S> {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(u) = &mut self.u {
            u.swap_rows(x, y);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(v) = &mut self.v {
            v.swap_cols(x, y);
        }
    }

    /// row[dst] -= q row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &S, from: usize) -> Option<()> {
        self.a.row_axpy(dst, src, q, from)?;
        if let Some(u) = &mut self.u {
            u.row_axpy(dst, src, q, 0)?;
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse op: col[src] += q col[dst]
            ui.col_axpy(src, dst, &q.neg()?, 0)?;
        }
        Some(())
    }

    /// col[dst] -= q col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &S, from: usize) -> Option<()> {
        self.a.col_axpy(dst, src, q, from)?;
        if let Some(v) = &mut self.v {
            v.col_axpy(dst, src, q, 0)?;
        }
        Some(())
    }
}

fn run<S: Scalar>(m: &Matrix, want: Want) -> Option<(Vec<S>, State<S>)> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = State {
        a: Dense::<S>::from_matrix(m),
        u: want.u.then(|| Dense::identity(rows)),
        u_inv: want.u_inv.then(|| Dense::identity(rows)),
        v: want.v.then(|| Dense::identity(cols)),
    };
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        // global minimal-magnitude pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = st.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(st.a.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.swap_rows(k, pi);
        st.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if st.a.at(i, k).is_zero() {
                    continue;
                }
                let q = st.a.at(i, k).div_nearest(st.a.at(k, k));
                st.row_op(i, k, &q, k)?;
                if !st.a.at(i, k).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let i = (k + 1..rows)
                    .filter(|&i| !st.a.at(i, k).is_zero())
                    .min_by(|&x, &y| cmp_abs(st.a.at(x, k), st.a.at(y, k)))
                    .unwrap();
                st.swap_rows(k, i);
                continue;
            }
            for j in k + 1..cols {
                if st.a.at(k, j).is_zero() {
                    continue;
                }
                let q = st.a.at(k, j).div_nearest(st.a.at(k, k));
                st.col_op(j, k, &q, k)?;
                if !st.a.at(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let j = (k + 1..cols)
                    .filter(|&j| !st.a.at(k, j).is_zero())
                    .min_by(|&x, &y| cmp_abs(st.a.at(k, x), st.a.at(k, y)))
                    .unwrap();
                st.swap_cols(k, j);
                continue;
            }
            break;
        }
        if st.a.at(k, k).is_negative() {
            st.a.negate_row(k)?;
            if let Some(u) = &mut st.u {
                u.negate_row(k)?;
            }
            if let Some(ui) = &mut st.u_inv {
                ui.negate_col(k)?;
            }
        }
        diag.push(st.a.at(k, k).clone());
    }
    Some((diag, st))
}

fn cmp_abs<S: Scalar>(a: &S, b: &S) -> std::cmp::Ordering {
    if a.abs_lt(b) {
        std::cmp::Ordering::Less
    } else if b.abs_lt(a) {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

fn finish<S: Scalar>(diag: Vec<S>, st: State<S>) -> Result<Diagonalization> {
    let conv = |d: &Option<Dense<S>>| -> Result<Option<Matrix>> {
        match d {
            None => Ok(None),
            Some(d) => d.to_matrix().map(Some).ok_or(Error::Overflow("unimodular transform")),
        }
    };
    let diagonal = diag
        .iter()
        .map(|d| d.to_i64().ok_or(Error::Overflow("diagonal entry")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagonalization {
        rank: diagonal.len(),
        diagonal,
        u: conv(&st.u)?,
        u_inv: conv(&st.u_inv)?,
        v: conv(&st.v)?,
    })
}

/// Diagonalize `a` as `U·a·V = D`.
pub fn diagonalize(a: &Matrix, want: Want) -> Result<Diagonalization> {
    if let Some((diag, st)) = run::<i128>(a, want) {
        return finish(diag, st);
    }
    let (diag, st) = run::<BigInt>(a, want).expect("bigint arithmetic does not overflow");
    finish(diag, st)
}

/// Canonical invariant factors (`d_1 | d_2 | …`, units dropped) of a
/// diagonal matrix with the given nonzero entries.
pub fn invariant_factors(diagonal: &[i64]) -> Vec<u64> {
    let mut d: Vec<BigInt> = diagonal.iter().map(|&x| BigInt::from(x).abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if num_traits::Zero::is_zero(&g) {
                continue;
            }
            let l = (&d[i] / &g) * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter()
        .filter(|x| !num_traits::One::is_one(x))
        .map(|x| x.to_u64().expect("invariant factor fits in u64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det_i128(m: &Matrix) -> i128 {
        // fraction-free Bareiss, square only
        let n = m.rows();
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n - 1][n - 1]
        }
    }

    #[test]
    fn small_example() {
        let a = Matrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = diagonalize(&a, Want::ALL).unwrap();
        assert_eq!(d.invariant_factors(), vec![2, 6, 12]);
    }

    #[test]
    fn zero_and_empty() {
        let d = diagonalize(&Matrix::zeros(3, 2), Want::ALL).unwrap();
        assert_eq!(d.rank, 0);
        let d = diagonalize(&Matrix::zeros(0, 4), Want::ALL).unwrap();
        assert_eq!(d.rank, 0);
        assert_eq!(d.v.unwrap(), Matrix::identity(4));
    }

    #[test]
    fn canonical_factors() {
        assert_eq!(invariant_factors(&[4, 6, 1]), vec![2, 12]);
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[1, 1]), Vec::<u64>::new());
    }

    #[test]
    fn large_entries_unimodular() {
        let big = 3_000_000_000_000_000_000i64;
        let a = Matrix::from_rows(&[vec![big, big - 1], vec![big + 1, big]]);
        let d = diagonalize(&a, Want::ALL).unwrap();
        assert_eq!(d.diagonal, vec![1, 1]);
        assert!(diagonalize(&Matrix::from_rows(&[vec![big, big - 1], vec![big - 7, big - 3]]), Want::NONE).is_err());
    }

    proptest! {
        #[test]
        fn reconstruction(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let mut a = Matrix::zeros(rows, cols);
            for i in 0..rows { for j in 0..cols { a[(i, j)] = seed[i * 6 + j]; } }
            let d = diagonalize(&a, Want::ALL).unwrap();
            let (u, ui, v) = (d.u.clone().unwrap(), d.u_inv.clone().unwrap(), d.v.clone().unwrap());
            let mut dm = Matrix::zeros(rows, cols);
            for (k, &x) in d.diagonal.iter().enumerate() { dm[(k, k)] = x; }
            prop_assert_eq!(u.mul(&a).mul(&v), dm);
            prop_assert_eq!(u.mul(&ui), Matrix::identity(rows));
            prop_assert_eq!(det_i128(&u).abs(), 1);
            prop_assert_eq!(det_i128(&v).abs(), 1);
            let f = d.invariant_factors();
            prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
