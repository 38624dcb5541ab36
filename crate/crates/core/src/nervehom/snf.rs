//! Smith normal form over the integers.
//!
//! The elimination runs in checked `i64` arithmetic first and restarts in
//! arbitrary precision if any intermediate value overflows, so the result
//! is always exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// `self · other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let cell = &mut out.data[r * other.cols + c];
                        *cell = cell.checked_add(a.checked_mul(b)?)?;
                    }
                }
            }
        }
        Some(out)
    }
}

/// Nonzero invariant factors `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one, as machine integers when they fit.
    pub fn torsion(&self) -> Option<Vec<u64>> {
        self.factors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .map(|d| u64::try_from(d).ok())
            .collect()
    }
}

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, v: &Self) -> bool;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn to_abs_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, v: &Self) -> bool {
        // |self| ≥ 1 here; i64::MIN % -1 is the only overflow and divides anyway
        *self == -1 || v.checked_rem(*self) == Some(0)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn to_abs_bigint(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, v: &Self) -> bool {
        Zero::is_zero(&v.mod_floor(self))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn to_abs_bigint(&self) -> BigInt {
        self.abs()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Work<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for c in 0..self.cols {
                self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + c1, r * self.cols + c2);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let b = self.at(src, c).clone();
            if !b.is_zero() {
                let v = self.at(dst, c).sub_mul(q, &b)?;
                self.a[dst * self.cols + c] = v;
            }
        }
        Some(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let b = self.at(r, src).clone();
            if !b.is_zero() {
                let v = self.at(r, dst).sub_mul(q, &b)?;
                self.a[r * self.cols + dst] = v;
            }
        }
        Some(())
    }

    fn row_add(&mut self, dst: usize, src: usize) -> Option<()> {
        for c in 0..self.cols {
            let b = self.at(src, c).clone();
            if !b.is_zero() {
                let v = self.at(dst, c).add(&b)?;
                self.a[dst * self.cols + c] = v;
            }
        }
        Some(())
    }

    /// Smallest nonzero |entry| in the trailing block, ties by row then column.
    fn pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.at(r, c);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.cmp_abs(self.at(br, bc)) == Ordering::Less) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row t and column t.
    fn pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let consider = |r: usize, c: usize, best: &mut (usize, usize)| {
            let v = self.at(r, c);
            if !v.is_zero()
                && (self.at(best.0, best.1).is_zero()
                    || v.cmp_abs(self.at(best.0, best.1)) == Ordering::Less)
            {
                *best = (r, c);
            }
        };
        for r in t + 1..self.rows {
            consider(r, t, &mut best);
        }
        for c in t + 1..self.cols {
            consider(t, c, &mut best);
        }
        best
    }

    fn run(mut self) -> Option<SmithForm> {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.pivot_in_block(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let pivot = self.at(t, t).clone();
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if !self.at(r, t).is_zero() {
                        let q = self.at(r, t).quot(&pivot)?;
                        self.row_sub(r, t, &q)?;
                        dirty |= !self.at(r, t).is_zero();
                    }
                }
                for c in t + 1..self.cols {
                    if !self.at(t, c).is_zero() {
                        let q = self.at(t, c).quot(&pivot)?;
                        self.col_sub(c, t, &q)?;
                        dirty |= !self.at(t, c).is_zero();
                    }
                }
                if dirty {
                    let (r, c) = self.pivot_in_cross(t);
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                let offender = (t + 1..self.rows).find(|&r| {
                    (t + 1..self.cols).any(|c| !pivot.divides(self.at(r, c)))
                });
                match offender {
                    Some(r) => self.row_add(t, r)?,
                    None => break,
                }
            }
            factors.push(self.at(t, t).to_abs_bigint());
            t += 1;
        }
        Some(SmithForm {
            rank: factors.len(),
            factors,
        })
    }
}

fn work<T: Scalar>(m: &IntMatrix) -> Work<T> {
    Work {
        rows: m.rows,
        cols: m.cols,
        a: m.data.iter().map(|&v| T::from_i64(v)).collect(),
    }
}

/// Invariant factors and rank of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    work::<i64>(m)
        .run()
        .or_else(|| work::<BigInt>(m).run())
        .expect("arbitrary precision elimination cannot overflow")
}
