//! The Picard lattice Z^{1,r} of a degree-d del Pezzo surface: intersection form,
//! canonical class, roots and exceptional classes.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector length {got} does not match lattice rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(i64),
}

/// Integer coordinates in the basis e_0, e_1, …, e_r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass(pub Vec<i64>);

impl LatticeClass {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LatticeClass) -> LatticeClass {
        LatticeClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeClass) -> LatticeClass {
        LatticeClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeClass {
        LatticeClass(self.0.iter().map(|a| a * k).collect())
    }
}

/// Picard lattice of a del Pezzo surface of degree d obtained by blowing up 9 − d points.
#[derive(Clone, Debug)]
pub struct PicardLattice {
    degree: i64,
    roots: OnceLock<Vec<LatticeClass>>,
    lines: OnceLock<Vec<LatticeClass>>,
}

impl PartialEq for PicardLattice {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
    }
}

impl Eq for PicardLattice {}

impl PicardLattice {
    pub fn new(degree: i64) -> Result<PicardLattice, LatticeError> {
        if !(1..=9).contains(&degree) {
            return Err(LatticeError::UnsupportedDegree(degree));
        }
        Ok(PicardLattice {
            degree,
            roots: OnceLock::new(),
            lines: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// r = 9 − d.
    pub fn r(&self) -> usize {
        (9 - self.degree) as usize
    }

    /// Rank r + 1 of the lattice.
    pub fn rank(&self) -> usize {
        self.r() + 1
    }

    pub fn gram_diag(&self, i: usize) -> i64 {
        if i == 0 {
            1
        } else {
            -1
        }
    }

    /// K = (−3; 1, …, 1).
    pub fn canonical(&self) -> LatticeClass {
        let mut v = vec![1; self.rank()];
        v[0] = -3;
        LatticeClass(v)
    }

    pub fn basis(&self, i: usize) -> LatticeClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        LatticeClass(v)
    }

    /// Unchecked form on raw coordinate slices of the right length.
    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
    }

    pub fn intersection(&self, a: &LatticeClass, b: &LatticeClass) -> Result<i64, LatticeError> {
        for v in [a, b] {
            if v.len() != self.rank() {
                return Err(LatticeError::DimensionMismatch {
                    expected: self.rank(),
                    got: v.len(),
                });
            }
        }
        Ok(self.dot(&a.0, &b.0))
    }

    pub fn k_dot(&self, a: &[i64]) -> i64 {
        -3 * a[0] - a[1..].iter().sum::<i64>()
    }

    /// Cached roots; panics outside 1 ≤ d ≤ 6 (use [`enumerate_roots`] for a checked call).
    pub fn roots(&self) -> &[LatticeClass] {
        self.roots.get_or_init(|| solve_norm_equations(self.r(), 0, 2))
    }

    /// Cached exceptional classes; panics outside 1 ≤ d ≤ 7.
    pub fn lines(&self) -> &[LatticeClass] {
        self.lines.get_or_init(|| solve_norm_equations(self.r(), 1, 1))
    }

    pub fn line_index(&self, c: &[i64]) -> Option<usize> {
        self.lines().binary_search_by(|l| l.0.as_slice().cmp(c)).ok()
    }
}

/// All v = (a_0; a_1..a_r) with v·K = −kdot and v² = −norm, i.e.
/// Σ a_i = kdot − 3 a_0 and Σ a_i² = a_0² + norm.
///
/// Bounds: Cauchy–Schwarz on the negative-definite part gives
/// (kdot − 3a_0)² ≤ r (a_0² + norm), a quadratic inequality in a_0; each |a_i| is at
/// most √(a_0² + norm). The search below derives both from these constraints.
fn solve_norm_equations(r: usize, kdot: i64, norm: i64) -> Vec<LatticeClass> {
    let ri = r as i64;
    let feasible = |a0: i64| {
        let s = kdot - 3 * a0;
        s * s <= ri * (a0 * a0 + norm)
    };
    // the inequality is quadratic with leading coefficient 9 − r > 0, so the feasible
    // set is an interval; scan outward from 0 until both ends fail
    let mut out = Vec::new();
    let mut hi = 0i64;
    while feasible(hi + 1) || hi < 1 {
        hi += 1;
    }
    let mut lo = 0i64;
    while feasible(lo - 1) || lo > -1 {
        lo -= 1;
    }
    for a0 in lo..=hi {
        if !feasible(a0) {
            continue;
        }
        let sum = kdot - 3 * a0;
        let sq = a0 * a0 + norm;
        let mut cur = vec![0i64; r];
        fill(&mut cur, 0, sum, sq, &mut |tail| {
            let mut v = Vec::with_capacity(r + 1);
            v.push(a0);
            v.extend_from_slice(tail);
            out.push(LatticeClass(v));
        });
    }
    out.sort();
    out
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn fill(cur: &mut Vec<i64>, i: usize, sum: i64, sq: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (cur.len() - i) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            emit(cur);
        }
        return;
    }
    // remaining entries must satisfy sum² ≤ left · sq
    if sq < 0 || sum * sum > left * sq {
        return;
    }
    let b = isqrt(sq);
    for a in -b..=b {
        cur[i] = a;
        fill(cur, i + 1, sum - a, sq - a * a, emit);
    }
    cur[i] = 0;
}

pub fn enumerate_roots(lat: &PicardLattice) -> Result<Vec<LatticeClass>, LatticeError> {
    if lat.degree > 6 {
        return Err(LatticeError::UnsupportedDegree(lat.degree));
    }
    Ok(lat.roots().to_vec())
}

pub fn enumerate_exceptional(lat: &PicardLattice) -> Result<Vec<LatticeClass>, LatticeError> {
    if lat.degree > 7 {
        return Err(LatticeError::UnsupportedDegree(lat.degree));
    }
    Ok(lat.lines().to_vec())
}

/// Unordered triples {a, b, c} of lines with a + b + c = −K on a cubic surface,
/// as sorted index triples into [`PicardLattice::lines`].
pub fn tritangent_index_trios(lat: &PicardLattice) -> Result<Vec<[usize; 3]>, LatticeError> {
    if lat.degree != 3 {
        return Err(LatticeError::UnsupportedDegree(lat.degree));
    }
    let lines = lat.lines();
    let minus_k = lat.canonical().scale(-1);
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lat.dot(&lines[i].0, &lines[j].0) != 1 {
                continue;
            }
            let c = minus_k.sub(&lines[i]).sub(&lines[j]);
            if let Some(k) = lat.line_index(&c.0) {
                if k > j {
                    out.push([i, j, k]);
                }
            }
        }
    }
    Ok(out)
}

pub fn tritangent_trios(lat: &PicardLattice) -> Result<Vec<[LatticeClass; 3]>, LatticeError> {
    let lines = lat.lines();
    Ok(tritangent_index_trios(lat)?
        .into_iter()
        .map(|[a, b, c]| [lines[a].clone(), lines[b].clone(), lines[c].clone()])
        .collect())
}

/// Adjacency lists of the line incidence graph, weighted by intersection number.
pub fn line_incidence(lat: &PicardLattice) -> Vec<Vec<i64>> {
    let lines = lat.lines();
    lines
        .iter()
        .map(|a| lines.iter().map(|b| lat.dot(&a.0, &b.0)).collect())
        .collect()
}

/// Set-valued helper used by property tests.
pub fn as_set(v: &[LatticeClass]) -> HashSet<LatticeClass> {
    v.iter().cloned().collect()
}
