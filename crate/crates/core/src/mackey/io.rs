//! Text format for Mackey functors.
//!
//! ```text
//! mackey v1
//! group C2                 # catalog name; or a label followed by `gen` lines
//! gen (0 1)                # optional permutation generators
//! level 0 2                # orbit index, generator count, optional relations
//! level 1 1 [1x0]
//! span 0 0 1 0,1;1,0       # src orbit, dst orbit, basis index, matrix
//! ```
//!
//! Matrices use the literal syntax of [`parse_matrix`]: rows separated by
//! `;`, entries by `,`, and `[RxC]` for an empty shape. Only generating
//! spans may be given; identities default to identity maps and the other
//! basis spans are completed by composition, then all axioms are checked.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{MackeyError, MackeyFunctor};
use crate::burnside::Burnside;
use crate::grp::{catalog, make_group, parse_cycles, FinGroup, CATALOG};
use crate::zmod::{parse_matrix, AbGrp, Mat};

fn perr(line: usize, msg: impl Into<String>) -> MackeyError {
    MackeyError::Parse { line, msg: msg.into() }
}

pub fn parse_mackey(text: &str) -> Result<MackeyFunctor, MackeyError> {
    let mut header = false;
    let mut group_name: Option<(usize, String)> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    let mut levels: Vec<(usize, usize, usize, Option<String>)> = Vec::new();
    let mut spans: Vec<(usize, usize, usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if !header {
            if line != "mackey v1" {
                return Err(perr(ln, "expected header `mackey v1`"));
            }
            header = true;
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let nums = |n: usize| -> Result<(Vec<usize>, Option<String>), MackeyError> {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() < n {
                return Err(perr(ln, format!("`{kw}` needs {n} indices")));
            }
            let mut v = Vec::new();
            for t in &toks[..n] {
                v.push(t.parse().map_err(|_| perr(ln, format!("bad index {t:?}")))?);
            }
            let tail = toks[n..].join("");
            Ok((v, if tail.is_empty() { None } else { Some(tail) }))
        };
        match kw {
            "group" => {
                if rest.is_empty() {
                    return Err(perr(ln, "missing group name"));
                }
                group_name = Some((ln, rest.to_string()));
            }
            "gen" => gens.push((ln, rest.to_string())),
            "level" => {
                let (v, m) = nums(2)?;
                levels.push((ln, v[0], v[1], m));
            }
            "span" => {
                let (v, m) = nums(3)?;
                let m = m.ok_or_else(|| perr(ln, "span needs a matrix"))?;
                spans.push((ln, v[0], v[1], v[2], m));
            }
            _ => return Err(perr(ln, format!("unknown directive {kw:?}"))),
        }
    }
    if !header {
        return Err(perr(1, "empty file"));
    }
    let (gl, name) = group_name.ok_or_else(|| perr(1, "missing `group` line"))?;
    let group = if gens.is_empty() {
        catalog(&name).map_err(|e| perr(gl, e.to_string()))?
    } else {
        let mut perms = Vec::new();
        for (ln, g) in &gens {
            perms.push(parse_cycles(g, None).map_err(|e| perr(*ln, e.to_string()))?);
        }
        let degree = perms.iter().map(|p| p.len()).max().unwrap_or(0);
        let mut fixed = Vec::new();
        for (ln, g) in &gens {
            fixed.push(parse_cycles(g, Some(degree)).map_err(|e| perr(*ln, e.to_string()))?);
        }
        make_group(&name, degree, &fixed).map_err(|e| perr(gl, e.to_string()))?
    };
    let b = Burnside::of(&group);
    let n = b.n_orbits();
    if levels.is_empty() {
        return Err(perr(gl, "no levels given"));
    }
    let mut lv: Vec<Option<AbGrp>> = vec![None; n];
    for (ln, o, g, rels) in levels {
        if o >= n {
            return Err(perr(ln, format!("orbit {o} out of range ({n} orbits)")));
        }
        if lv[o].is_some() {
            return Err(perr(ln, format!("level {o} given twice")));
        }
        let rels = match rels {
            Some(s) => parse_matrix(&s).map_err(|e| perr(ln, e.to_string()))?,
            None => Mat::zeros(g, 0),
        };
        lv[o] = Some(AbGrp::presented(g, rels).map_err(|e| perr(ln, e.to_string()))?);
    }
    let mut levels_v = Vec::with_capacity(n);
    for (o, l) in lv.into_iter().enumerate() {
        levels_v.push(l.ok_or_else(|| perr(gl, format!("missing level {o}")))?);
    }
    let mut acts = HashMap::new();
    for (ln, s, t, i, m) in spans {
        let m = parse_matrix(&m).map_err(|e| perr(ln, e.to_string()))?;
        if s < n && t < n && m.shape() != (levels_v[t].n_gens(), levels_v[s].n_gens()) {
            return Err(perr(ln, format!("matrix is {}x{}", m.rows(), m.cols())));
        }
        if acts.insert((s, t, i), m).is_some() {
            return Err(perr(ln, "span given twice"));
        }
    }
    MackeyFunctor::from_generators(&b, &name, levels_v, acts, true)
}

pub fn parse_mackey_file(path: impl AsRef<Path>) -> Result<MackeyFunctor, MackeyError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| MackeyError::Io(e.to_string()))?;
    parse_mackey(&text)
}

fn group_header(g: &FinGroup) -> String {
    let in_catalog = CATALOG.iter().any(|(n, _)| *n == g.label()) && catalog(g.label()).ok().as_ref() == Some(g);
    if in_catalog {
        format!("group {}\n", g.label())
    } else {
        let mut s = format!("group {}\n", g.label());
        for x in g.generators() {
            let _ = writeln!(s, "gen {}", g.cycle_string(*x));
        }
        s
    }
}

/// Serializes levels and the non-identity generating spans.
pub fn write_mackey(m: &MackeyFunctor) -> String {
    let b = m.burnside();
    let mut s = String::from("mackey v1\n");
    s.push_str(&group_header(m.group()));
    for h in 0..b.n_orbits() {
        let l = m.level(h);
        let _ = write!(s, "level {h} {}", l.n_gens());
        if l.rels().cols() > 0 {
            let _ = write!(s, " {}", l.rels().to_literal());
        }
        let _ = writeln!(s, "   # {}", b.orbit(h).label);
    }
    for h in 0..b.n_orbits() {
        let id = b.identity(h).terms[0].0;
        for k in 0..b.n_orbits() {
            for i in b.generating(h, k) {
                if h == k && i == id {
                    continue;
                }
                let e = b.elt(h, k, i);
                let kind = if b.is_forward(&e) && b.is_backward(&e) {
                    "conjugation"
                } else if b.is_forward(&e) {
                    "transfer"
                } else {
                    "restriction"
                };
                let _ = writeln!(s, "span {h} {k} {i} {}   # {kind}", m.action(h, k, i).mat.to_literal());
            }
        }
    }
    s
}
