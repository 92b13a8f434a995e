//! Unit-pivot sparse elimination.
//!
//! Presentations built by Kan extensions have thousands of generators and
//! relations, most of which cancel against a unit coefficient. Eliminating
//! those pivots sparsely leaves a small dense core for Smith reduction.
//! The same Schur-complement step serves cokernels (eliminate a generator
//! via a relation) and nullspaces (eliminate a variable via an equation).

use std::collections::{BTreeMap, BTreeSet};

use super::int::{add_mul, Int};
use super::mat::Mat;

pub type SparseVec = Vec<(usize, Int)>;

/// A recorded pivot: entry `u = ±1` at `(row, col)` together with the rest
/// of its row and column at the moment it was eliminated.
#[derive(Clone, Debug)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub u: Int,
    pub row_rest: SparseVec,
    pub col_rest: SparseVec,
}

pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Int>>,
    cols: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl SparseMat {
    pub fn new(nrows: usize, ncols: usize) -> SparseMat {
        SparseMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
            cols: vec![BTreeSet::new(); ncols],
            row_alive: vec![true; nrows],
            col_alive: vec![true; ncols],
        }
    }

    pub fn from_dense(m: &Mat) -> SparseMat {
        let mut s = SparseMat::new(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    s.rows[i].insert(j, v.clone());
                    s.cols[j].insert(i);
                }
            }
        }
        s
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: &Int) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[i].entry(j).or_insert_with(Int::zero);
        *e += v;
        if e.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i);
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn add_mul_entry(&mut self, i: usize, j: usize, a: &Int, b: &Int) {
        let e = self.rows[i].entry(j).or_insert_with(Int::zero);
        add_mul(e, a, b);
        if e.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i);
        }
    }

    fn pivot(&mut self, i: usize, c: usize) -> Pivot {
        let u = self.rows[i][&c].clone();
        debug_assert!(u.is_unit());
        let row_rest: SparseVec =
            self.rows[i].iter().filter(|(j, _)| **j != c).map(|(j, v)| (*j, v.clone())).collect();
        let col_rest: SparseVec = self.cols[c]
            .iter()
            .filter(|r| **r != i)
            .map(|r| (*r, self.rows[*r][&c].clone()))
            .collect();
        // Schur complement: M[r][j] -= M[r][c] * u * M[i][j]
        for (r, a) in &col_rest {
            let f = -(a * &u);
            for (j, b) in &row_rest {
                self.add_mul_entry(*r, *j, &f, b);
            }
            self.rows[*r].remove(&c);
        }
        for (j, _) in &row_rest {
            self.cols[*j].remove(&i);
        }
        self.rows[i].clear();
        self.cols[c].clear();
        self.row_alive[i] = false;
        self.col_alive[c] = false;
        Pivot { row: i, col: c, u, row_rest, col_rest }
    }

    /// Eliminates unit pivots greedily by Markowitz cost until none remain.
    pub fn eliminate(&mut self) -> Vec<Pivot> {
        let mut out = Vec::new();
        loop {
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for i in 0..self.nrows {
                if !self.row_alive[i] || self.rows[i].is_empty() {
                    continue;
                }
                let rl = self.rows[i].len() - 1;
                let mut best: Option<(usize, usize)> = None;
                for (j, v) in &self.rows[i] {
                    if v.is_unit() {
                        let cost = rl * (self.cols[*j].len() - 1);
                        if best.is_none_or(|(b, _)| cost < b) {
                            best = Some((cost, *j));
                        }
                    }
                }
                if let Some((cost, j)) = best {
                    cands.push((cost, i, j));
                }
            }
            if cands.is_empty() {
                break;
            }
            cands.sort();
            let bound = cands[0].0.saturating_mul(2).max(cands[0].0 + 8);
            let mut progressed = false;
            for (_, i, j) in cands {
                if !self.row_alive[i] || !self.col_alive[j] {
                    continue;
                }
                let Some(v) = self.rows[i].get(&j) else { continue };
                if !v.is_unit() {
                    continue;
                }
                let cost = (self.rows[i].len() - 1) * (self.cols[j].len() - 1);
                if cost > bound {
                    continue;
                }
                out.push(self.pivot(i, j));
                progressed = true;
            }
            if !progressed {
                break;
            }
        }
        out
    }

    pub fn alive_rows(&self) -> Vec<usize> {
        (0..self.nrows).filter(|i| self.row_alive[*i]).collect()
    }

    pub fn alive_cols(&self) -> Vec<usize> {
        (0..self.ncols).filter(|j| self.col_alive[*j]).collect()
    }

    /// Dense residual on the given surviving rows and columns; columns that
    /// are entirely zero are kept (callers decide what they mean).
    pub fn residual(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut cpos = vec![usize::MAX; self.ncols];
        for (k, j) in cols.iter().enumerate() {
            cpos[*j] = k;
        }
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (k, i) in rows.iter().enumerate() {
            for (j, v) in &self.rows[*i] {
                let p = cpos[*j];
                if p != usize::MAX {
                    m.set(k, p, v.clone());
                }
            }
        }
        m
    }

    /// Number of nonzero columns among the alive ones.
    pub fn nonzero_alive_cols(&self) -> Vec<usize> {
        (0..self.ncols).filter(|j| self.col_alive[*j] && !self.cols[*j].is_empty()).collect()
    }
}

/// Z-basis of the nullspace of a sparse matrix, columns of the result.
pub fn nullspace(mut s: SparseMat) -> Mat {
    let ncols = s.ncols();
    let pivots = s.eliminate();
    let rows: Vec<usize> = s.alive_rows().into_iter().filter(|i| !s.rows[*i].is_empty()).collect();
    let cols = s.alive_cols();
    let core = s.residual(&rows, &cols);
    let basis = super::snf::nullspace_dense(&core);
    let mut out = Mat::zeros(ncols, basis.cols());
    for k in 0..basis.cols() {
        let mut z = vec![Int::zero(); ncols];
        for (p, j) in cols.iter().enumerate() {
            z[*j] = basis.get(p, k).clone();
        }
        for pv in pivots.iter().rev() {
            // z_c = -u * sum_{c'} b_{c'} z_{c'}
            let mut acc = Int::zero();
            for (j, b) in &pv.row_rest {
                if !z[*j].is_zero() {
                    add_mul(&mut acc, b, &z[*j]);
                }
            }
            z[pv.col] = -(&acc * &pv.u);
        }
        for (i, v) in z.into_iter().enumerate() {
            out.set(i, k, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sparse_nullspace_matches_dense_rank(v in proptest::collection::vec(-2i64..3, 24)) {
            let m = Mat::from_fn(4, 6, |i, j| Int::from(v[i * 6 + j]));
            let n = nullspace(SparseMat::from_dense(&m));
            prop_assert!(m.mul(&n).is_zero());
            let dense = crate::zmod::snf::nullspace_dense(&m);
            prop_assert_eq!(n.cols(), dense.cols());
            // saturation: the basis spans a primitive lattice, so its Smith
            // invariants are all one
            let s = crate::zmod::snf::snf_with(&n, crate::zmod::snf::Track::NONE);
            prop_assert!(s.diag.iter().all(Int::is_one));
        }
    }
}
