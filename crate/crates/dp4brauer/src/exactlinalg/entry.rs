//! Scalar backends for the elimination kernels.
//!
//! Every routine in this module is written once over [`Entry`]. The public
//! API runs it first over `i64` with checked arithmetic and repeats it over
//! `BigInt` when an overflow is reported, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt::Debug;

pub(crate) trait Entry: Clone + Debug + PartialEq {
    fn e_zero() -> Self;
    fn e_one() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn e_is_zero(&self) -> bool;
    fn e_is_neg(&self) -> bool;
    fn e_neg(&self) -> Option<Self>;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Quotient rounded toward zero.
    fn quot(&self, b: &Self) -> Self;
    fn divides(&self, b: &Self) -> bool;
}

impl Entry for i64 {
    fn e_zero() -> Self {
        0
    }
    fn e_one() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        // keep headroom so that a single product fits before checking
        x.to_i64().filter(|v| v.unsigned_abs() < (1u64 << 62))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn e_is_neg(&self) -> bool {
        *self < 0
    }
    fn e_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn divides(&self, b: &Self) -> bool {
        if *self == 0 {
            *b == 0
        } else {
            b % self == 0
        }
    }
}

impl Entry for BigInt {
    fn e_zero() -> Self {
        Zero::zero()
    }
    fn e_one() -> Self {
        One::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn e_is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn e_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn divides(&self, b: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(b)
        } else {
            b.is_multiple_of(self)
        }
    }
}

/// Dense row-major matrix over an [`Entry`] type.
#[derive(Clone, Debug)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<T>,
}

impl<T: Entry> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, a: vec![T::e_zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = T::e_one();
        }
        m
    }
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }
    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }
    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }
    /// row_i -= q * row_j
    pub fn row_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let b = &self.a[j * self.cols + c];
            if b.e_is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + c].sub_mul(q, b)?;
            self.a[i * self.cols + c] = v;
        }
        Some(())
    }
    /// col_i -= q * col_j
    pub fn col_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let b = &self.a[r * self.cols + j];
            if b.e_is_zero() {
                continue;
            }
            let v = self.a[r * self.cols + i].sub_mul(q, b)?;
            self.a[r * self.cols + i] = v;
        }
        Some(())
    }
    pub fn neg_row(&mut self, i: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = self.a[i * self.cols + c].e_neg()?;
            self.a[i * self.cols + c] = v;
        }
        Some(())
    }
    pub fn neg_col(&mut self, j: usize) -> Option<()> {
        for r in 0..self.rows {
            let v = self.a[r * self.cols + j].e_neg()?;
            self.a[r * self.cols + j] = v;
        }
        Some(())
    }
}

/// Which transforms the Smith reduction should record.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

pub(crate) struct SnfOut<T> {
    pub s: Dense<T>,
    pub rank: usize,
    pub u: Option<Dense<T>>,
    pub u_inv: Option<Dense<T>>,
    pub v: Option<Dense<T>>,
    /// Right-hand sides carried along under the row operations.
    pub rhs: Dense<T>,
}

struct Work<T> {
    m: Dense<T>,
    u: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v: Option<Dense<T>>,
    rhs: Dense<T>,
}

impl<T: Entry> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.rhs.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
    }
    // row_i -= q row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        self.m.row_sub(i, j, q)?;
        self.rhs.row_sub(i, j, q)?;
        if let Some(u) = self.u.as_mut() {
            u.row_sub(i, j, q)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // inverse op: col_j += q col_i
            let nq = q.e_neg()?;
            ui.col_sub(j, i, &nq)?;
        }
        Some(())
    }
    // col_i -= q col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        self.m.col_sub(i, j, q)?;
        if let Some(v) = self.v.as_mut() {
            v.col_sub(i, j, q)?;
        }
        Some(())
    }
    fn neg_row(&mut self, i: usize) -> Option<()> {
        self.m.neg_row(i)?;
        self.rhs.neg_row(i)?;
        if let Some(u) = self.u.as_mut() {
            u.neg_row(i)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.neg_col(i)?;
        }
        Some(())
    }
}

/// Smith reduction with deterministic pivoting: the nonzero entry of least
/// absolute value, ties broken by lowest row then lowest column.
pub(crate) fn snf<T: Entry>(m: Dense<T>, rhs: Dense<T>, track: Track) -> Option<SnfOut<T>> {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work {
        u: track.u.then(|| Dense::identity(r)),
        u_inv: track.u_inv.then(|| Dense::identity(r)),
        v: track.v.then(|| Dense::identity(c)),
        m,
        rhs,
    };
    let mut t = 0;
    // columns known to be entirely zero below row t can be skipped quickly
    while t < r.min(c) {
        loop {
            // pivot search
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                let row = &w.m.a[i * c..(i + 1) * c];
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.e_is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.cmp_abs(w.m.at(bi, bj)) == Ordering::Less {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w, t);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.m.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let x = w.m.at(i, t);
                if x.e_is_zero() {
                    continue;
                }
                let q = x.quot(&p);
                if !q.e_is_zero() {
                    w.row_sub(i, t, &q)?;
                }
                if !w.m.at(i, t).e_is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let x = w.m.at(t, j);
                if x.e_is_zero() {
                    continue;
                }
                let q = x.quot(&p);
                if !q.e_is_zero() {
                    w.col_sub(j, t, &q)?;
                }
                if !w.m.at(t, j).e_is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility fix-up
            let mut bad = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !p.divides(w.m.at(i, j)) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row_t += row_i
                    let mone = T::e_one().e_neg()?;
                    w.row_sub(t, i, &mone)?;
                }
                None => break,
            }
        }
        if w.m.at(t, t).e_is_neg() {
            w.neg_row(t)?;
        }
        t += 1;
    }
    finish(w, t)
}

fn finish<T: Entry>(w: Work<T>, rank: usize) -> Option<SnfOut<T>> {
    Some(SnfOut { s: w.m, rank, u: w.u, u_inv: w.u_inv, v: w.v, rhs: w.rhs })
}
