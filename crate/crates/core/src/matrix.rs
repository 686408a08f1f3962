//! Dense matrices over exact rationals.
//!
//! Everything downstream (transports, Kan extensions, norm maps, transforms)
//! is expressed through this type, so equality is always exact.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect(),
        }
    }

    pub fn scalar(q: Rational) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![q],
        }
    }

    /// Builds a matrix from rows. Returns `None` if the rows are ragged.
    /// With no rows the column count is taken from `cols_if_empty`.
    pub fn try_from_rows(rows: Vec<Vec<Rational>>, cols_if_empty: usize) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(cols_if_empty, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panicking variant of [`Matrix::try_from_rows`] for literals.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        Self::try_from_rows(rows, 0).expect("ragged matrix rows")
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn column(v: Vec<Rational>) -> Self {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn row(v: Vec<Rational>) -> Self {
        let n = v.len();
        Matrix {
            rows: 1,
            cols: n,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * q).collect(),
        }
    }

    /// Kronecker product; index `(i, j)` of the left factor and `(k, l)` of
    /// the right land at `(i * r + k, j * c + l)`.
    pub fn kron(&self, other: &Matrix) -> Self {
        let (r, c) = other.shape();
        let mut out = Self::zeros(self.rows * r, self.cols * c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r {
                    for l in 0..c {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * r + k, j * c + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Vertical concatenation of any number of blocks with `cols` columns.
    pub fn vstack_all<'a>(cols: usize, blocks: impl IntoIterator<Item = &'a Matrix>) -> Self {
        let mut out = Matrix::zeros(0, cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.rows += b.rows;
            out.data.extend(b.data.iter().cloned());
        }
        out
    }

    pub fn block_diag<'a>(blocks: impl IntoIterator<Item = &'a Matrix>) -> Self {
        let blocks: Vec<&Matrix> = blocks.into_iter().collect();
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row_slice(i).iter().cloned());
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &f * &self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        m.rows = p.len();
        m.data.truncate(p.len() * m.cols);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the null space `{v : self * v = 0}` together with a
    /// coordinate map on it.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut inclusion = Matrix::zeros(self.cols, free.len());
        for (k, &j) in free.iter().enumerate() {
            inclusion[(j, k)] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                inclusion[(p, k)] = -r[(i, j)].clone();
            }
        }
        let mut retraction = Matrix::zeros(free.len(), self.cols);
        for (k, &j) in free.iter().enumerate() {
            retraction[(k, j)] = Rational::one();
        }
        Subspace {
            inclusion,
            retraction,
        }
    }

    /// Quotient of `Q^cols` by the row space of `self`.
    pub fn cokernel_of_rows(&self) -> Quotient {
        let (r, pivots) = self.rref();
        let d = self.cols;
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(free.len(), d);
        let mut section = Matrix::zeros(d, free.len());
        for (k, &j) in free.iter().enumerate() {
            projection[(k, j)] = Rational::one();
            section[(j, k)] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = &r[(i, j)];
                if !x.is_zero() {
                    projection[(k, p)] = -x.clone();
                }
            }
        }
        Quotient {
            projection,
            section,
        }
    }

    /// Solves `self * x = b` for a single solution, if one exists.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve shape mismatch");
        let n = self.cols;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(x)
    }
}

/// A subspace `V ⊆ Q^n`, with `retraction * inclusion = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub inclusion: Matrix,
    pub retraction: Matrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }
}

/// A quotient `Q^n -> Q^n / W`, with `projection * section = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
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

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    /// Bracketed rows: `[[1, 2], [3, 4]]`. Zero-row matrices print as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(&self[(i, j)]))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// Line-oriented text form: one row per line, entries as `p/q` tokens
/// separated by whitespace. Blank lines and `#` comments are ignored.
pub fn matrix_to_text(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row_slice(i).iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Inverse of [`matrix_to_text`]. Errors carry a 1-based line number.
pub fn matrix_from_text(text: &str) -> std::result::Result<Matrix, (usize, String)> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| parse_rational(tok).ok_or_else(|| (n + 1, format!("`{tok}` is not a rational"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if rows.first().is_some_and(|r: &Vec<Rational>| r.len() != row.len()) {
            return Err((n + 1, "row length differs from the first row".into()));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err((1, "no rows".into()));
    }
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    #[test]
    fn text_round_trip() {
        let m = Matrix::from_rows(vec![vec![ratio(1, 2), int(-3)], vec![int(0), ratio(7, 3)]]);
        assert_eq!(matrix_to_text(&m), "1/2 -3\n0 7/3\n");
        assert_eq!(matrix_from_text(&matrix_to_text(&m)).unwrap(), m);
        assert_eq!(matrix_from_text("# k\n1 2\n\n3 4 # tail\n").unwrap(), Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(matrix_from_text("1 2\n3").unwrap_err().0, 2);
        assert_eq!(matrix_from_text("1 x").unwrap_err().0, 1);
        assert!(matrix_from_text("").is_err());
    }

    use super::*;

    #[test]
    fn rational_formatting_round_trips() {
        for s in ["0", "3", "-7", "1/2", "-5/6"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn inverse_and_rank() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(inv[(0, 0)], int(-2));
        assert_eq!(inv[(1, 0)], ratio(3, 2));
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
        assert!(Matrix::zeros(0, 0).inverse().unwrap().is_identity());
    }

    #[test]
    fn kernel_and_cokernel() {
        let m = Matrix::from_i64(&[&[1, -1, 0], &[0, 1, -1]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!((&m * &k.inclusion).is_zero());
        assert!((&k.retraction * &k.inclusion).is_identity());

        let q = m.cokernel_of_rows();
        assert_eq!(q.dim(), 1);
        assert!((&q.projection * &q.section).is_identity());
        // Rows lie in the killed subspace.
        assert!((&q.projection * &m.transpose()).is_zero());
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], int(1));
        assert_eq!(k[(3, 2)], int(4));
        assert_eq!(k[(2, 0)], int(0));
    }

    #[test]
    fn solve_finds_solution_or_reports_none() {
        let a = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        let b = Matrix::from_i64(&[&[3], &[1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, Matrix::from_i64(&[&[2], &[1]]));
        let s = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(s.solve(&b).is_none());
    }

    #[test]
    fn display_is_bracketed() {
        let m = Matrix::from_rows(vec![vec![int(1), ratio(1, 2)], vec![int(-3), int(0)]]);
        assert_eq!(m.to_string(), "[[1, 1/2], [-3, 0]]");
        assert_eq!(Matrix::zeros(0, 3).to_string(), "[]");
        assert_eq!(Matrix::zeros(2, 0).to_string(), "[[], []]");
    }
}
