//! Exact rational and integer linear algebra.
//!
//! Everything here is dense and exact. Matrices at this scale are at most a
//! few hundred rows, so no attempt is made at sparse or modular tricks.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinAlgError;

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Exact rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn int_vec(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_integral_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Shape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinAlgError::Shape {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Mat::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    /// Small integer matrix literal, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| int_vec(r)).collect()).expect("ragged integer matrix literal")
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        Mat::diag(&int_vec(entries))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    /// Row-major flattening, used to view n×n matrices as points of Q^(n²).
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    /// Block diagonal `self ⊕ other`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Entries as integers, if they all are.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<Int>>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_integer()).collect())
                .collect(),
        )
    }

    fn from_int_rows(rows: &[Vec<Int>], cols: usize) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            data.extend(r.iter().map(|x| Rat::from_integer(x.clone())));
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-Rat::one())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat {
    /// Inline `a,b,c;d,e,f` form, the same one the CLI accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form. The reduced matrix keeps the input shape, with
/// zero rows at the bottom.
pub fn rref(m: &Mat) -> Rref {
    let mut rows = m.to_rows();
    let cols = m.cols();
    let pivots = rref_rows(&mut rows, cols);
    let rank = pivots.len();
    let reduced = Mat::from_rows(rows).unwrap_or_else(|_| Mat::zeros(0, cols));
    let reduced = if m.rows() == 0 { Mat::zeros(0, cols) } else { reduced };
    Rref {
        reduced,
        rank,
        pivot_columns: pivots,
    }
}

/// In-place RREF on a list of rows; returns the pivot columns. Zero rows
/// end up at the bottom.
pub(crate) fn rref_rows(rows: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical null space basis: one vector per free column, with that free
/// variable set to 1 and the other free variables set to 0.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Rat>> {
    let Rref {
        reduced, pivot_columns, ..
    } = rref(m);
    kernel_from_rref(&reduced, &pivot_columns, m.cols())
}

pub(crate) fn kernel_from_rref(reduced: &Mat, pivots: &[usize], cols: usize) -> Vec<Vec<Rat>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = zero_vec(cols);
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank
}

/// Determinant by Bareiss elimination (on rows scaled to be integral) and
/// inverse by Gauss-Jordan, present iff the determinant is nonzero.
pub fn det_inv(m: &Mat) -> Result<(Rat, Option<Mat>), LinAlgError> {
    let d = det(m)?;
    if d.is_zero() {
        return Ok((d, None));
    }
    let n = m.rows();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    rref_rows(&mut aug, 2 * n);
    let inv = Mat::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect())?;
    Ok((d, Some(inv)))
}

pub fn det(m: &Mat) -> Result<Rat, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rat::one());
    }
    // Clear denominators row by row so Bareiss runs over Z.
    let mut scale = Int::one();
    let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m.row(i).iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        scale *= &l;
        let lr = Rat::from_integer(l);
        a.push(m.row(i).iter().map(|x| (x * &lr).to_integer()).collect());
    }
    Ok(Rat::new(bareiss(a), scale))
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss(mut a: Vec<Vec<Int>>) -> Int {
    let n = a.len();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form `left * m * right = diag(d)` with `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// The `min(rows, cols)` diagonal entries, nonnegative.
    pub divisors: Vec<Int>,
    pub left: Mat,
    pub right: Mat,
}

impl Snf {
    /// Product of the elementary divisors.
    pub fn product(&self) -> Int {
        self.divisors.iter().fold(Int::one(), |a, b| a * b)
    }
}

/// Smith normal form by repeated row/column gcd reduction, choosing the
/// entry of least nonzero absolute value as pivot.
pub fn smith_normal_form(m: &Mat) -> Result<Snf, LinAlgError> {
    let mut a = m.to_int_rows().ok_or(LinAlgError::NotIntegral)?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut left = identity_int(rows);
    let mut right = identity_int(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // Pivot: smallest nonzero |a_ij| in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut left, i, t, &q);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut right, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and redo.
            let offending = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offending {
                Some((i, _)) => {
                    row_axpy(&mut a, t, i, &-Int::one());
                    row_axpy(&mut left, t, i, &-Int::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    Ok(Snf {
        divisors: (0..steps).map(|i| a[i][i].clone()).collect(),
        left: Mat::from_int_rows(&left, rows),
        right: Mat::from_int_rows(&right, cols),
    })
}

fn identity_int(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<Int>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(a: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&s) {
        *x -= q * y;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(a: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    for row in a.iter_mut() {
        let y = row[src].clone();
        row[dst] -= q * y;
    }
}
