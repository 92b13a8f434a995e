//! Smith normal form and column echelon reduction with transform tracking.

use super::int::Int;
use super::mat::Mat;

/// Which transforms to accumulate while reducing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub uinv: bool,
    pub v: bool,
    pub vinv: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, uinv: true, v: true, vinv: true };
    pub const NONE: Track = Track { u: false, uinv: false, v: false, vinv: false };
}

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: Mat,
    /// Nonzero diagonal entries, in order.
    pub diag: Vec<Int>,
    pub u: Option<Mat>,
    pub uinv: Option<Mat>,
    pub v: Option<Mat>,
    pub vinv: Option<Mat>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work {
    m: Mat,
    u: Option<Mat>,
    uinv: Option<Mat>,
    v: Option<Mat>,
    vinv: Option<Mat>,
}

impl Work {
    fn new(m: &Mat, t: Track) -> Work {
        let (r, c) = m.shape();
        Work {
            m: m.clone(),
            u: t.u.then(|| Mat::identity(r)),
            uinv: t.uinv.then(|| Mat::identity(r)),
            v: t.v.then(|| Mat::identity(c)),
            vinv: t.vinv.then(|| Mat::identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.uinv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.vinv {
            vi.swap_rows(i, j);
        }
    }

    /// row_i += c * row_j
    fn row_addmul(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        self.m.row_addmul(i, j, c);
        if let Some(u) = &mut self.u {
            u.row_addmul(i, j, c);
        }
        if let Some(ui) = &mut self.uinv {
            ui.col_addmul(j, i, &-c);
        }
    }

    /// col_i += c * col_j
    fn col_addmul(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        self.m.col_addmul(i, j, c);
        if let Some(v) = &mut self.v {
            v.col_addmul(i, j, c);
        }
        if let Some(vi) = &mut self.vinv {
            vi.row_addmul(j, i, &-c);
        }
    }

    fn neg_row(&mut self, i: usize) {
        self.m.neg_row(i);
        if let Some(u) = &mut self.u {
            u.neg_row(i);
        }
        if let Some(ui) = &mut self.uinv {
            ui.neg_col(i);
        }
    }

    fn neg_col(&mut self, j: usize) {
        self.m.neg_col(j);
        if let Some(v) = &mut self.v {
            v.neg_col(j);
        }
        if let Some(vi) = &mut self.vinv {
            vi.neg_row(j);
        }
    }

    /// Moves the smallest nonzero entry of the trailing block to (t, t).
    fn pivot_min(&mut self, t: usize) -> bool {
        let (r, c) = self.m.shape();
        let mut best: Option<(Int, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = self.m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    let one = a.is_one();
                    best = Some((a, i, j));
                    if one {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|(b, _, _)| b.is_one()) {
                break;
            }
        }
        match best {
            None => false,
            Some((_, i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
        }
    }
}

/// Computes the Smith normal form, accumulating the requested transforms.
pub fn snf_with(m: &Mat, track: Track) -> Smith {
    let mut w = Work::new(m, track);
    let (r, c) = m.shape();
    let mut t = 0;
    while t < r.min(c) {
        if !w.pivot_min(t) {
            break;
        }
        loop {
            let p = w.m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let a = w.m.get(i, t);
                if a.is_zero() {
                    continue;
                }
                let q = a.div_round(&p);
                w.row_addmul(i, t, &-q);
                if !w.m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let a = w.m.get(t, j);
                if a.is_zero() {
                    continue;
                }
                let q = a.div_round(&p);
                w.col_addmul(j, t, &-q);
                if !w.m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row t or column t
                let mut best: Option<(Int, usize, bool)> = None;
                for i in t + 1..r {
                    let a = w.m.get(i, t);
                    if !a.is_zero() && best.as_ref().is_none_or(|(b, _, _)| a.abs() < *b) {
                        best = Some((a.abs(), i, true));
                    }
                }
                for j in t + 1..c {
                    let a = w.m.get(t, j);
                    if !a.is_zero() && best.as_ref().is_none_or(|(b, _, _)| a.abs() < *b) {
                        best = Some((a.abs(), j, false));
                    }
                }
                let (_, k, is_row) = best.expect("unclean pivot without remainder");
                if is_row {
                    w.swap_rows(t, k);
                } else {
                    w.swap_cols(t, k);
                }
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let mut bad = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !p.divides(w.m.get(i, j)) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_addmul(t, i, &Int::one()),
                None => break,
            }
        }
        if w.m.get(t, t).is_negative() {
            w.neg_row(t);
        }
        t += 1;
    }
    let diag = (0..t).map(|i| w.m.get(i, i).clone()).collect();
    Smith { d: w.m, diag, u: w.u, uinv: w.uinv, v: w.v, vinv: w.vinv }
}

pub fn snf(m: &Mat) -> Smith {
    snf_with(m, Track::ALL)
}

/// Independent re-check of a Smith certificate: `U M V = D`, `U Uinv = I`,
/// `V Vinv = I`, `D` diagonal with the divisibility chain.
pub fn verify_smith(m: &Mat, s: &Smith) -> bool {
    let (Some(u), Some(ui), Some(v), Some(vi)) = (&s.u, &s.uinv, &s.v, &s.vinv) else {
        return false;
    };
    let (r, c) = m.shape();
    if u.shape() != (r, r) || v.shape() != (c, c) || s.d.shape() != (r, c) {
        return false;
    }
    if u.mul(m).mul(v) != s.d {
        return false;
    }
    if !u.mul(ui).is_identity() || !v.mul(vi).is_identity() {
        return false;
    }
    is_smith_form(&s.d)
}

pub fn is_smith_form(d: &Mat) -> bool {
    let (r, c) = d.shape();
    for i in 0..r {
        for j in 0..c {
            if i != j && !d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let n = r.min(c);
    for i in 0..n {
        let a = d.get(i, i);
        if a.is_negative() {
            return false;
        }
        if i + 1 < n {
            let b = d.get(i + 1, i + 1);
            if a.is_zero() && !b.is_zero() {
                return false;
            }
            if !a.is_zero() && !a.divides(b) {
                return false;
            }
        }
    }
    true
}

/// Column echelon form: `M * V = E` where the first `rank` columns of `E`
/// have strictly increasing pivot rows and the remaining columns are zero.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub e: Mat,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub v: Option<Mat>,
    pub vinv: Option<Mat>,
}

pub fn col_echelon(m: &Mat, track_v: bool, track_vinv: bool) -> Echelon {
    let mut w = Work::new(m, Track { u: false, uinv: false, v: track_v, vinv: track_vinv });
    let (r, c) = m.shape();
    let mut t = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..r {
        if t == c {
            break;
        }
        loop {
            // smallest nonzero entry of row i among columns t..
            let mut best: Option<(Int, usize)> = None;
            for j in t..c {
                let a = w.m.get(i, j);
                if !a.is_zero() && best.as_ref().is_none_or(|(b, _)| a.abs() < *b) {
                    best = Some((a.abs(), j));
                }
            }
            let Some((_, j)) = best else { break };
            w.swap_cols(t, j);
            let p = w.m.get(i, t).clone();
            let mut clean = true;
            for j in t + 1..c {
                let a = w.m.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let q = a.div_round(&p);
                w.col_addmul(j, t, &-q);
                if !w.m.get(i, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                if w.m.get(i, t).is_negative() {
                    w.neg_col(t);
                }
                pivot_rows.push(i);
                t += 1;
                break;
            }
        }
    }
    Echelon { e: w.m, rank: t, pivot_rows, v: w.v, vinv: w.vinv }
}

/// A Z-basis of `{x : M x = 0}`, as the columns of the returned matrix.
pub fn nullspace_dense(m: &Mat) -> Mat {
    let ech = col_echelon(m, true, false);
    let v = ech.v.expect("tracked");
    v.submatrix(0, v.rows(), ech.rank, v.cols())
}
