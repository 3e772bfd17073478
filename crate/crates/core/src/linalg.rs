//! Exact integer and rational linear algebra.
//!
//! Everything here is exact. Hot paths (rank, determinants) first run a
//! fraction-free elimination in checked `i128` arithmetic and redo the work
//! over `BigInt` when an intermediate value overflows.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(cols, rows)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Append a row at the bottom.
    pub fn push_row(&mut self, row: &[BigInt]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.data.extend(row.iter().cloned());
        self.rows += 1;
        Ok(())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
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

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Exact ring arithmetic with overflow reporting, so elimination code can be
/// written once and run on `i128` or `BigInt`.
pub(crate) mod exact {
    use super::*;

    pub trait Exact: Clone + PartialEq + fmt::Debug {
        fn nil() -> Self;
        fn unit() -> Self;
        fn from_big(v: &BigInt) -> Option<Self>;
        fn to_big(&self) -> BigInt;
        fn is_nil(&self) -> bool;
        fn signum(&self) -> i8;
        fn add(&self, o: &Self) -> Option<Self>;
        fn sub(&self, o: &Self) -> Option<Self>;
        fn mul(&self, o: &Self) -> Option<Self>;
        fn neg(&self) -> Option<Self>;
        /// Division known to be exact.
        fn div_exact(&self, o: &Self) -> Option<Self>;
        fn gcd(&self, o: &Self) -> Self;
        fn abs_lt(&self, o: &Self) -> bool;
    }

    impl Exact for i128 {
        fn nil() -> Self {
            0
        }
        fn unit() -> Self {
            1
        }
        fn from_big(v: &BigInt) -> Option<Self> {
            // keep headroom so that a single product cannot wrap silently
            v.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 120))
        }
        fn to_big(&self) -> BigInt {
            BigInt::from(*self)
        }
        fn is_nil(&self) -> bool {
            *self == 0
        }
        fn signum(&self) -> i8 {
            i128::signum(*self) as i8
        }
        fn add(&self, o: &Self) -> Option<Self> {
            self.checked_add(*o)
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
        fn div_exact(&self, o: &Self) -> Option<Self> {
            debug_assert_eq!(self % o, 0, "inexact division");
            self.checked_div(*o)
        }
        fn gcd(&self, o: &Self) -> Self {
            Integer::gcd(self, o)
        }
        fn abs_lt(&self, o: &Self) -> bool {
            self.unsigned_abs() < o.unsigned_abs()
        }
    }

    impl Exact for BigInt {
        fn nil() -> Self {
            Zero::zero()
        }
        fn unit() -> Self {
            One::one()
        }
        fn from_big(v: &BigInt) -> Option<Self> {
            Some(v.clone())
        }
        fn to_big(&self) -> BigInt {
            self.clone()
        }
        fn is_nil(&self) -> bool {
            Zero::is_zero(self)
        }
        fn signum(&self) -> i8 {
            match self.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            }
        }
        fn add(&self, o: &Self) -> Option<Self> {
            Some(self + o)
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
        fn div_exact(&self, o: &Self) -> Option<Self> {
            debug_assert!(Zero::is_zero(&(self % o)), "inexact division");
            Some(self / o)
        }
        fn gcd(&self, o: &Self) -> Self {
            Integer::gcd(self, o)
        }
        fn abs_lt(&self, o: &Self) -> bool {
            self.magnitude() < o.magnitude()
        }
    }

    pub struct Echelon<T> {
        pub rows: Vec<Vec<T>>,
        pub rank: usize,
        pub pivot_cols: Vec<usize>,
        pub swaps: usize,
    }

    /// Fraction-free (Bareiss) row echelon form with smallest-magnitude
    /// pivoting. Returns `None` on overflow.
    pub fn echelon<T: Exact>(mut a: Vec<Vec<T>>, ncols: usize) -> Option<Echelon<T>> {
        let nrows = a.len();
        let mut prev = T::unit();
        let mut r = 0;
        let mut pivot_cols = Vec::new();
        let mut swaps = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !a[i][c].is_nil() {
                    match best {
                        Some(b) if !a[i][c].abs_lt(&a[b][c]) => {}
                        _ => best = Some(i),
                    }
                }
            }
            let Some(p) = best else { continue };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let prow = &top[r];
            for row in bottom.iter_mut() {
                for j in c + 1..ncols {
                    let v = prow[c].mul(&row[j])?.sub(&row[c].mul(&prow[j])?)?;
                    row[j] = v.div_exact(&prev)?;
                }
                row[c] = T::nil();
            }
            prev = a[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }
        Some(Echelon {
            rows: a,
            rank: r,
            pivot_cols,
            swaps,
        })
    }

    pub fn rank<T: Exact>(rows: Vec<Vec<T>>, ncols: usize) -> Option<usize> {
        echelon(rows, ncols).map(|e| e.rank)
    }

    /// Determinant of a square matrix given by rows.
    pub fn det<T: Exact>(rows: Vec<Vec<T>>) -> Option<T> {
        let n = rows.len();
        if n == 0 {
            return Some(T::unit());
        }
        let e = echelon(rows, n)?;
        if e.rank < n {
            return Some(T::nil());
        }
        let d = e.rows[n - 1][n - 1].clone();
        if e.swaps % 2 == 1 {
            d.neg()
        } else {
            Some(d)
        }
    }

    /// Convert a BigInt matrix to `i128` rows if every entry is small enough.
    pub fn to_small(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
        rows.iter()
            .map(|r| r.iter().map(i128::from_big).collect())
            .collect()
    }
}

/// Rank over the rationals.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let rows = m.to_rows();
    if let Some(small) = exact::to_small(&rows) {
        if let Some(r) = exact::rank(small, m.cols) {
            return r;
        }
    }
    exact::rank(rows, m.cols).expect("BigInt elimination cannot overflow")
}

/// Rank over the rationals of a small integer matrix given by rows.
pub fn rank_of_rows(rows: &[Vec<i64>], ncols: usize) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(r) = exact::rank(small, ncols) {
        return r;
    }
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    exact::rank(big, ncols).expect("BigInt elimination cannot overflow")
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: m.cols,
        });
    }
    let rows = m.to_rows();
    if let Some(small) = exact::to_small(&rows) {
        if let Some(d) = exact::det(small) {
            return Ok(BigInt::from(d));
        }
    }
    Ok(exact::det(rows).expect("BigInt elimination cannot overflow"))
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (nr, nc) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);

    for t in 0..nr.min(nc) {
        // bring the smallest nonzero entry of the trailing block to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                let x = &d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < d[(bi, bj)].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // smallest nonzero in row t / column t becomes the pivot
            let mut piv = (t, t);
            for i in t + 1..nr {
                if !d[(i, t)].is_zero() && d[(i, t)].magnitude() < d[piv].magnitude() {
                    piv = (i, t);
                }
            }
            for j in t + 1..nc {
                if !d[(t, j)].is_zero() && d[(t, j)].magnitude() < d[piv].magnitude() {
                    piv = (t, j);
                }
            }
            if piv.0 != t {
                d.swap_rows(t, piv.0);
                u.swap_rows(t, piv.0);
            } else if piv.1 != t {
                d.swap_cols(t, piv.1);
                v.swap_cols(t, piv.1);
            }

            let p = d[(t, t)].clone();
            for i in t + 1..nr {
                if !d[(i, t)].is_zero() {
                    let q = -d[(i, t)].div_floor(&p);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..nc {
                if !d[(t, j)].is_zero() {
                    let q = -d[(t, j)].div_floor(&p);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            let clear = (t + 1..nr).all(|i| d[(i, t)].is_zero())
                && (t + 1..nc).all(|j| d[(t, j)].is_zero());
            if !clear {
                continue;
            }
            let p = d[(t, t)].clone();
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { u, d, v }
}

/// Dimension of the affine hull of a nonempty list of integer points.
pub fn affine_span_dim(points: &[Vec<BigInt>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    let mut diffs = Vec::with_capacity(points.len() - 1);
    for p in &points[1..] {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        diffs.push(p.iter().zip(first).map(|(a, b)| a - b).collect());
    }
    Ok(rank_rational(&IntMatrix::from_rows_with_cols(n, diffs)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Integers,
    Rationals,
}

/// Whether `v` is a combination of the rows of `m` with integer (or rational)
/// coefficients.
pub fn in_row_space(v: &[BigInt], m: &IntMatrix, over: Domain) -> Result<bool> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.cols,
            got: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    match over {
        Domain::Rationals => {
            let mut ext = m.clone();
            ext.push_row(v)?;
            Ok(rank_rational(&ext) == rank_rational(m))
        }
        Domain::Integers => {
            // x M = v  <=>  (x U^-1) D = v V
            let snf = smith_normal_form(m);
            let diag = snf.diagonal();
            for j in 0..m.cols {
                let w: BigInt = (0..m.cols).map(|i| &v[i] * &snf.v[(i, j)]).sum();
                let dj = diag.get(j).cloned().unwrap_or_default();
                let ok = if dj.is_zero() {
                    w.is_zero()
                } else {
                    w.is_multiple_of(&dj)
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// A basis of the integer lattice `{x in Z^cols : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    (rank..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Divide by the gcd of the entries (zero vector unchanged).
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Solve `A x = b` for square nonsingular `A` over the rationals.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if a.cols != n { a.cols } else { b.len() },
        });
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !m[i][c].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
