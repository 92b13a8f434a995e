//! Finite G-sets as explicit action tables.

use std::collections::VecDeque;

use crate::grp::{mask_elems, FinGroup, GrpHom, Mask};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub group: FinGroup,
    n: usize,
    /// `table[g * n + p] = g · p`
    table: Vec<u32>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GSetError {
    #[error("action table violates the action axioms at element {0}")]
    NotAnAction(usize),
}

impl GSet {
    pub fn from_fn(group: &FinGroup, n: usize, act: impl Fn(usize, usize) -> usize) -> GSet {
        let o = group.order();
        let mut table = Vec::with_capacity(o * n);
        for g in 0..o {
            for p in 0..n {
                table.push(act(g, p) as u32);
            }
        }
        GSet { group: group.clone(), n, table }
    }

    /// Checked constructor for user-supplied actions.
    pub fn new(group: &FinGroup, n: usize, act: impl Fn(usize, usize) -> usize) -> Result<GSet, GSetError> {
        let s = GSet::from_fn(group, n, act);
        s.check_axioms()?;
        Ok(s)
    }

    pub fn check_axioms(&self) -> Result<(), GSetError> {
        let g = &self.group;
        for p in 0..self.n {
            if self.act(0, p) != p {
                return Err(GSetError::NotAnAction(0));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for p in 0..self.n {
                    if self.act(ab, p) != self.act(a, self.act(b, p)) {
                        return Err(GSetError::NotAnAction(ab));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn point(group: &FinGroup) -> GSet {
        GSet::from_fn(group, 1, |_, _| 0)
    }

    /// Left cosets `G/H`, points indexed like `FinGroup::left_coset_reps`.
    pub fn cosets(group: &FinGroup, h: Mask) -> GSet {
        let reps = group.left_coset_reps(h);
        let mut coset_of = vec![0u32; group.order()];
        for (i, r) in reps.iter().enumerate() {
            for x in mask_elems(h) {
                coset_of[group.mul(*r, x)] = i as u32;
            }
        }
        GSet::from_fn(group, reps.len(), |g, p| coset_of[group.mul(g, reps[p])] as usize)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn act(&self, g: usize, p: usize) -> usize {
        self.table[g * self.n + p] as usize
    }

    pub fn stabilizer(&self, p: usize) -> Mask {
        self.group.elements().filter(|g| self.act(*g, p) == p).fold(0, |m, g| m | (1u128 << g))
    }

    pub fn fixed_points(&self, u: Mask) -> Vec<usize> {
        (0..self.n).filter(|p| mask_elems(u).all(|g| self.act(g, *p) == *p)).collect()
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for p in 0..self.n {
            if seen[p] {
                continue;
            }
            let mut orb = vec![p];
            seen[p] = true;
            let mut q = VecDeque::from([p]);
            while let Some(x) = q.pop_front() {
                for g in self.group.generators() {
                    let y = self.act(*g, x);
                    if !seen[y] {
                        seen[y] = true;
                        orb.push(y);
                        q.push_back(y);
                    }
                }
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Breadth-first transversal: for each point of the orbit of `base`,
    /// an element carrying `base` to it.
    pub fn transversal(&self, base: usize) -> Vec<Option<usize>> {
        let mut tr = vec![None; self.n];
        tr[base] = Some(0);
        let mut q = VecDeque::from([base]);
        while let Some(x) = q.pop_front() {
            let gx = tr[x].unwrap();
            for g in self.group.generators() {
                let y = self.act(*g, x);
                if tr[y].is_none() {
                    tr[y] = Some(self.group.mul(*g, gx));
                    q.push_back(y);
                }
            }
        }
        tr
    }

    /// Restriction along `i: H → G` (self is a G-set).
    pub fn restrict(&self, i: &GrpHom) -> GSet {
        debug_assert_eq!(i.dst, self.group);
        GSet::from_fn(&i.src, self.n, |h, p| self.act(i.apply(h), p))
    }

    /// Inflation along `q: G → Q` (self is a Q-set).
    pub fn inflate(&self, q: &GrpHom) -> GSet {
        debug_assert_eq!(q.dst, self.group);
        GSet::from_fn(&q.src, self.n, |g, p| self.act(q.apply(g), p))
    }

    /// Induction `G ×_H X` along an injection `i: H → G` (self is an H-set).
    /// Point `(r, x)` has index `r * len + x`, with `r` indexing the left
    /// coset representatives of `i(H)`.
    pub fn induce(&self, i: &GrpHom) -> GSet {
        debug_assert_eq!(i.src, self.group);
        let g = &i.dst;
        let img = i.image_mask(i.src.full_mask());
        let reps = g.left_coset_reps(img);
        let mut coset_of = vec![0usize; g.order()];
        for (k, r) in reps.iter().enumerate() {
            for x in mask_elems(img) {
                coset_of[g.mul(*r, x)] = k;
            }
        }
        let mut pre = vec![usize::MAX; g.order()];
        for h in i.src.elements() {
            pre[i.apply(h)] = h;
        }
        let n = self.n;
        GSet::from_fn(g, reps.len() * n, |a, p| {
            let (r, x) = (p / n, p % n);
            let y = g.mul(a, reps[r]);
            let s = coset_of[y];
            let h = pre[g.mul(g.inv(reps[s]), y)];
            s * n + self.act(h, x)
        })
    }

    /// Cartesian product; point `(p, q)` has index `p * other.len() + q`.
    pub fn product(&self, other: &GSet) -> GSet {
        debug_assert_eq!(self.group, other.group);
        let m = other.n;
        GSet::from_fn(&self.group, self.n * m, |g, x| {
            self.act(g, x / m) * m + other.act(g, x % m)
        })
    }

    pub fn disjoint_union(parts: &[GSet]) -> GSet {
        let group = parts[0].group.clone();
        let mut offs = Vec::new();
        let mut n = 0;
        for p in parts {
            offs.push(n);
            n += p.n;
        }
        GSet::from_fn(&group, n, |g, x| {
            let k = offs.partition_point(|o| *o <= x) - 1;
            offs[k] + parts[k].act(g, x - offs[k])
        })
    }

    /// Sub-G-set on an invariant subset of points, renumbered in order.
    pub fn subset(&self, pts: &[usize]) -> GSet {
        let mut pos = vec![usize::MAX; self.n];
        for (i, p) in pts.iter().enumerate() {
            pos[*p] = i;
        }
        GSet::from_fn(&self.group, pts.len(), |g, i| {
            let y = pos[self.act(g, pts[i])];
            debug_assert_ne!(y, usize::MAX, "subset not invariant");
            y
        })
    }

    /// Number of points fixed by every element of `u`.
    pub fn marks(&self, u: Mask) -> usize {
        self.fixed_points(u).len()
    }
}
