//! Dense integer matrices, row-major.

use std::fmt;

use super::int::{add_mul, Int};
use super::ZError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds from nested `i64` rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat::from_fn(r, c, |i, j| Int::from(rows[i][j]))
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Int>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn diag(entries: &[Int]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn max_abs(&self) -> Int {
        self.data.iter().map(Int::abs).max().unwrap_or_default()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, ZError> {
        if self.cols != other.rows {
            return Err(ZError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        add_mul(d, a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).expect("matrix shape mismatch")
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        add_mul(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Int) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map_or(0, |m| m.rows);
        Mat::hstack_rows(rows, parts)
    }

    /// Like `hstack` but with an explicit row count, so empty lists work.
    pub fn hstack_rows(rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.paste(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        let cols = parts.first().map_or(0, |m| m.cols);
        Mat::vstack_cols(cols, parts)
    }

    pub fn vstack_cols(cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.paste(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.paste(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Copies `m` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, m: &Mat) {
        assert!(r + m.rows <= self.rows && c + m.cols <= self.cols);
        for i in 0..m.rows {
            let src = &m.data[i * m.cols..(i + 1) * m.cols];
            let start = (r + i) * self.cols + c;
            self.data[start..start + m.cols].clone_from_slice(src);
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduces row `i` modulo `orders[i]` (zero means no reduction).
    pub fn reduce_rows(&mut self, orders: &[Int]) {
        assert_eq!(orders.len(), self.rows);
        for (i, d) in orders.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let v = self.at(i, j);
                if !v.is_zero() {
                    *v = v.mod_floor_pos(d);
                }
            }
        }
    }

    // Elementary operations. `row_addmul(i, j, c)` means row_i += c * row_j.

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    pub fn row_addmul(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        debug_assert_ne!(i, j);
        for k in 0..self.cols {
            let b = self.data[j * self.cols + k].clone();
            if !b.is_zero() {
                add_mul(&mut self.data[i * self.cols + k], c, &b);
            }
        }
    }

    pub fn col_addmul(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        debug_assert_ne!(i, j);
        for k in 0..self.rows {
            let b = self.data[k * self.cols + j].clone();
            if !b.is_zero() {
                add_mul(&mut self.data[k * self.cols + i], c, &b);
            }
        }
    }

    pub fn neg_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = &mut self.data[i * self.cols + k];
            *v = -&*v;
        }
    }

    pub fn neg_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = &mut self.data[k * self.cols + j];
            *v = -&*v;
        }
    }

    /// Formats in the literal syntax accepted by [`parse_matrix`](super::parse_matrix).
    pub fn to_literal(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return format!("[{}x{}]", self.rows, self.cols);
        }
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[{}]", self.rows, self.cols, self.to_literal())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Parses `"1,2;3,4"` into a 2x2 matrix. `[RxC]` denotes an empty shape.
pub fn parse_matrix(s: &str) -> Result<Mat, ZError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let (r, c) = inner
            .split_once('x')
            .ok_or_else(|| ZError::Parse(format!("bad shape literal {s:?}")))?;
        let r = r.trim().parse().map_err(|_| ZError::Parse(format!("bad shape {s:?}")))?;
        let c = c.trim().parse().map_err(|_| ZError::Parse(format!("bad shape {s:?}")))?;
        return Ok(Mat::zeros(r, c));
    }
    if s.is_empty() {
        return Err(ZError::Parse("empty matrix literal".into()));
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for row in s.split(';') {
        let mut r = Vec::new();
        for e in row.split(',') {
            let e = e.trim();
            let v: Int = e.parse().map_err(|_| ZError::Parse(format!("bad integer {e:?}")))?;
            r.push(v);
        }
        rows.push(r);
    }
    let c = rows[0].len();
    if rows.iter().any(|r| r.len() != c) {
        return Err(ZError::Parse(format!("ragged matrix literal {s:?}")));
    }
    let r = rows.len();
    let mut m = Mat::zeros(r, c);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}
