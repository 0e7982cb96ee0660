//! Integer isometries of the Picard lattice fixing K: reflections, group closure,
//! fingerprints on K⊥, orthogonal-frame involutions and a lookup of named classes.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::picard::{tritangent_index_trios, LatticeClass, LatticeError, PicardLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("class is not a root (s² = −2, s·K = 0)")]
    NotARoot,
    #[error("closure exceeded the cap after reaching {partial} elements")]
    CapExceeded { partial: usize },
    #[error("matrix is not an isometry fixing K")]
    NotAnIsometry,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Integer matrix acting on column coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isometry {
    n: usize,
    m: Vec<i64>,
}

impl Isometry {
    pub fn identity(n: usize) -> Isometry {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        Isometry { n, m }
    }

    /// Builds and validates an isometry from row-major rows.
    pub fn from_rows(lat: &PicardLattice, rows: Vec<Vec<i64>>) -> Result<Isometry, WeylError> {
        let n = lat.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(WeylError::Lattice(LatticeError::DimensionMismatch {
                expected: n,
                got: rows.len(),
            }));
        }
        let g = Isometry {
            n,
            m: rows.into_iter().flatten().collect(),
        };
        if g.is_valid(lat) {
            Ok(g)
        } else {
            Err(WeylError::NotAnIsometry)
        }
    }

    /// Builds the isometry sending each `src[j]` to `dst[j]`, when the sources span the
    /// lattice over Q and the resulting matrix is integral.
    pub fn from_images(lat: &PicardLattice, src: &[LatticeClass], dst: &[LatticeClass]) -> Result<Isometry, WeylError> {
        use crate::linalg::int_to_rat;
        let n = lat.rank();
        let cols_s: Vec<Vec<i64>> = src.iter().map(|c| c.0.clone()).collect();
        let cols_d: Vec<Vec<i64>> = dst.iter().map(|c| c.0.clone()).collect();
        let s = int_to_rat(&Matrix::from_cols(&cols_s));
        let d = int_to_rat(&Matrix::from_cols(&cols_d));
        // M S = D, solve via least-squares-free route: pick n independent source columns
        let (_, piv) = s.rref();
        if piv.len() < n {
            return Err(WeylError::NotAnIsometry);
        }
        let s_sq = Matrix::from_cols(&piv.iter().map(|&j| s.col(j)).collect::<Vec<_>>());
        let d_sq = Matrix::from_cols(&piv.iter().map(|&j| d.col(j)).collect::<Vec<_>>());
        let m = d_sq.mul(&s_sq.inverse().ok_or(WeylError::NotAnIsometry)?);
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let q = &m[(i, j)];
                if !q.is_integer() {
                    return Err(WeylError::NotAnIsometry);
                }
                row.push(num_traits::ToPrimitive::to_i64(&q.to_integer()).ok_or(WeylError::NotAnIsometry)?);
            }
            rows.push(row);
        }
        let g = Isometry::from_rows(lat, rows)?;
        if src.iter().zip(dst).all(|(a, b)| g.apply(&a.0) == b.0) {
            Ok(g)
        } else {
            Err(WeylError::NotAnIsometry)
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.m.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn to_matrix(&self) -> Matrix<i64> {
        Matrix::from_rows(self.rows())
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.m[i * self.n..(i + 1) * self.n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_class(&self, v: &LatticeClass) -> LatticeClass {
        LatticeClass(self.apply(&v.0))
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let n = self.n;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        let out = Isometry { n, m };
        debug_assert!(out.preserves_form());
        out
    }

    /// Inverse via M⁻¹ = G Mᵀ G for the diagonal gram G = diag(1, −1, …).
    pub fn inverse(&self) -> Isometry {
        let n = self.n;
        let g = |i: usize| if i == 0 { 1 } else { -1 };
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = g(i) * self.m[j * n + i] * g(j);
            }
        }
        Isometry { n, m }
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity(self.n)
    }

    fn preserves_form(&self) -> bool {
        let n = self.n;
        let g = |i: usize| if i == 0 { 1 } else { -1 };
        for a in 0..n {
            for b in 0..n {
                let s: i64 = (0..n).map(|i| g(i) * self.m[i * n + a] * self.m[i * n + b]).sum();
                let want = if a == b { g(a) } else { 0 };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    /// Gram preservation, K fixed (integrality and invertibility follow).
    pub fn is_valid(&self, lat: &PicardLattice) -> bool {
        self.n == lat.rank() && self.preserves_form() && self.apply(&lat.canonical().0) == lat.canonical().0
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.m[i * self.n + i]).sum()
    }

    pub fn pow(&self, e: u32) -> Isometry {
        let mut acc = Isometry::identity(self.n);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn order(&self) -> u32 {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
            assert!(k <= 10_000, "element of infinite order");
        }
        k
    }

    /// Index permutation induced on the lattice's exceptional classes.
    pub fn line_permutation(&self, lat: &PicardLattice) -> Vec<usize> {
        lat.lines()
            .iter()
            .map(|l| lat.line_index(&self.apply(&l.0)).expect("isometry must permute lines"))
            .collect()
    }
}

/// v ↦ v + (v·s) s.
pub fn reflection(lat: &PicardLattice, root: &LatticeClass) -> Result<Isometry, WeylError> {
    if root.len() != lat.rank() {
        return Err(WeylError::Lattice(LatticeError::DimensionMismatch {
            expected: lat.rank(),
            got: root.len(),
        }));
    }
    let s = &root.0;
    if lat.dot(s, s) != -2 || lat.k_dot(s) != 0 {
        return Err(WeylError::NotARoot);
    }
    let n = lat.rank();
    let mut m = vec![0i64; n * n];
    for j in 0..n {
        // image of e_j: e_j + (e_j·s) s, with e_j·s = g_jj s_j
        let c = lat.gram_diag(j) * s[j];
        for i in 0..n {
            m[i * n + j] = if i == j { 1 } else { 0 } + c * s[i];
        }
    }
    Ok(Isometry { n, m })
}

/// e_i − e_{i+1} (1 ≤ i < r) and e_0 − e_1 − e_2 − e_3 (when r ≥ 3).
pub fn simple_roots(lat: &PicardLattice) -> Vec<LatticeClass> {
    let r = lat.r();
    let mut out = Vec::new();
    for i in 1..r {
        let mut v = vec![0; r + 1];
        v[i] = 1;
        v[i + 1] = -1;
        out.push(LatticeClass(v));
    }
    if r >= 3 {
        let mut v = vec![0; r + 1];
        v[0] = 1;
        v[1] = -1;
        v[2] = -1;
        v[3] = -1;
        out.push(LatticeClass(v));
    }
    out
}

pub fn simple_reflections(lat: &PicardLattice) -> Vec<Isometry> {
    simple_roots(lat)
        .iter()
        .map(|s| reflection(lat, s).expect("simple roots are roots"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryGroup {
    pub generators: Vec<Isometry>,
    /// Sorted; the identity is always present.
    pub elements: Vec<Isometry>,
}

impl IsometryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn trivial(lat: &PicardLattice) -> IsometryGroup {
        IsometryGroup {
            generators: vec![],
            elements: vec![Isometry::identity(lat.rank())],
        }
    }
}

/// Closure of the generated group by breadth-first multiplication.
pub fn close_group(lat: &PicardLattice, gens: &[Isometry], cap: usize) -> Result<IsometryGroup, WeylError> {
    for g in gens {
        if !g.is_valid(lat) {
            return Err(WeylError::NotAnIsometry);
        }
    }
    let id = Isometry::identity(lat.rank());
    let mut seen: HashSet<Isometry> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(WeylError::CapExceeded { partial: seen.len() });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Isometry> = seen.into_iter().collect();
    elements.sort();
    Ok(IsometryGroup {
        generators: gens.to_vec(),
        elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementFingerprint {
    pub trace_kperp: i64,
    /// Lowest degree first.
    pub charpoly_kperp: Vec<i64>,
    pub fixed_line_count: usize,
    pub order: u32,
    /// Number of invariant tritangent trios; present on degree 3 only.
    pub fixed_tritangent_count: Option<usize>,
    /// Components of the real locus when the element is read as a real structure
    /// with nonempty real points; involutions only.
    pub real_components: Option<usize>,
}

/// Characteristic polynomial of an isometry, via Berkowitz over i128.
pub fn charpoly_full(g: &Isometry) -> Vec<i64> {
    let m = Matrix::from_rows(g.rows().into_iter().map(|r| r.into_iter().map(|x| x as i128).collect()).collect());
    m.charpoly().into_iter().map(|c| c as i64).collect()
}

/// Exact division of an integer polynomial by (x − 1).
fn divide_by_x_minus_1(p: &[i64]) -> Vec<i64> {
    let n = p.len() - 1;
    let mut q = vec![0i64; n];
    let mut carry = 0i64;
    for i in (0..n).rev() {
        carry += p[i + 1];
        q[i] = carry;
    }
    debug_assert_eq!(carry + p[0], 0, "x = 1 is not a root");
    q
}

pub fn fixed_line_count(lat: &PicardLattice, g: &Isometry) -> usize {
    lat.lines().iter().filter(|l| g.apply(&l.0) == l.0).count()
}

/// Tritangent trios mapped to themselves as sets.
pub fn fixed_tritangent_count(lat: &PicardLattice, g: &Isometry) -> Option<usize> {
    let trios = tritangent_index_trios(lat).ok()?;
    let perm = g.line_permutation(lat);
    Some(
        trios
            .iter()
            .filter(|t| {
                let mut img = [perm[t[0]], perm[t[1]], perm[t[2]]];
                img.sort();
                img == **t
            })
            .count(),
    )
}

pub fn fingerprint(lat: &PicardLattice, g: &Isometry) -> ElementFingerprint {
    let full = charpoly_full(g);
    ElementFingerprint {
        trace_kperp: g.trace() - 1,
        charpoly_kperp: divide_by_x_minus_1(&full),
        fixed_line_count: if lat.degree() <= 7 { fixed_line_count(lat, g) } else { 0 },
        order: g.order(),
        fixed_tritangent_count: if lat.degree() == 3 { fixed_tritangent_count(lat, g) } else { None },
        real_components: real_components(g),
    }
}

/// Rank over F_2 of an integer matrix given by rows.
pub fn rank_mod2(rows: &[Vec<i64>]) -> usize {
    let mut masks: Vec<u64> = rows
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |m, (j, &x)| if x.rem_euclid(2) == 1 { m | 1 << j } else { m }))
        .collect();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..masks.len()).find(|&i| masks[i] >> bit & 1 == 1) else { continue };
        masks.swap(rank, p);
        let pivot = masks[rank];
        for (i, m) in masks.iter_mut().enumerate() {
            if i != rank && *m >> bit & 1 == 1 {
                *m ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Number of connected components of X(R) for a real structure acting by `sigma`,
/// assuming X(R) is nonempty.
///
/// Geometrically rational surfaces are Galois-maximal, so the total F_2-Betti number
/// of X(R) is 2 + rk − 2c with c = rank_F2(1 + σ); the Lefschetz formula gives
/// χ(X(R)) = 2 − tr σ. Each component has b0 = b2 = 1, so b0 = (b* + χ)/4.
pub fn real_components(sigma: &Isometry) -> Option<usize> {
    if !sigma.compose(sigma).is_identity() {
        return None;
    }
    let n = sigma.dim();
    let mut rows = sigma.rows();
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] += 1;
    }
    let c = rank_mod2(&rows) as i64;
    let total = 2 + n as i64 - 2 * c;
    let euler = 2 - sigma.trace();
    let b0 = total + euler;
    (b0 > 0 && b0 % 4 == 0).then_some((b0 / 4) as usize)
}

/// v ↦ (2/d)(v·K)K − v: the Geiser (d = 2) or Bertini (d = 1) action.
pub fn minus_on_kperp(lat: &PicardLattice) -> Result<Isometry, WeylError> {
    let d = lat.degree();
    if d != 1 && d != 2 {
        return Err(WeylError::Lattice(LatticeError::UnsupportedDegree(d)));
    }
    let n = lat.rank();
    let k = lat.canonical().0;
    let mut m = vec![0i64; n * n];
    for j in 0..n {
        let vk = lat.gram_diag(j) * k[j];
        for i in 0..n {
            m[i * n + j] = 2 * vk * k[i] / d - if i == j { 1 } else { 0 };
        }
    }
    Ok(Isometry { n, m })
}

/// Product of the reflections in the given roots.
pub fn reflection_product(lat: &PicardLattice, roots: &[LatticeClass]) -> Result<Isometry, WeylError> {
    let mut g = Isometry::identity(lat.rank());
    for s in roots {
        g = g.compose(&reflection(lat, s)?);
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSearch {
    pub k: usize,
    pub fingerprints: BTreeSet<ElementFingerprint>,
    pub frames_examined: usize,
    /// True when every orthogonal k-frame was visited.
    pub exhaustive: bool,
}

/// Positive roots (one of each ± pair) and their orthogonality table.
fn positive_roots(lat: &PicardLattice) -> Vec<LatticeClass> {
    lat.roots()
        .iter()
        .filter(|s| {
            let neg: Vec<i64> = s.0.iter().map(|x| -x).collect();
            s.0 > neg
        })
        .cloned()
        .collect()
}

/// Fingerprints of products of reflections in k pairwise orthogonal roots.
///
/// Frames are enumerated exhaustively in index order while the count stays within
/// `budget`; otherwise `budget` frames are drawn by a seeded random walk.
pub fn involution_frames(lat: &PicardLattice, k: usize, budget: usize) -> Result<FrameSearch, WeylError> {
    if lat.degree() > 6 {
        return Err(WeylError::Lattice(LatticeError::UnsupportedDegree(lat.degree())));
    }
    let pos = positive_roots(lat);
    let n = pos.len();
    let orth: Vec<Vec<bool>> = pos
        .iter()
        .map(|a| pos.iter().map(|b| lat.dot(&a.0, &b.0) == 0).collect())
        .collect();
    let mut seen_elements: HashSet<Isometry> = HashSet::new();
    let mut fps = BTreeSet::new();
    let mut record = |frame: &[usize], fps: &mut BTreeSet<ElementFingerprint>| {
        let roots: Vec<LatticeClass> = frame.iter().map(|&i| pos[i].clone()).collect();
        let g = reflection_product(lat, &roots).expect("positive roots are roots");
        if seen_elements.insert(g.clone()) {
            fps.insert(fingerprint(lat, &g));
        }
    };
    if k == 0 {
        record(&[], &mut fps);
        return Ok(FrameSearch {
            k,
            fingerprints: fps,
            frames_examined: 1,
            exhaustive: true,
        });
    }

    // exhaustive pass over increasing index tuples, abandoned past the budget
    let mut frames: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut overflow = false;
    fn dfs(
        start: usize,
        k: usize,
        n: usize,
        orth: &[Vec<bool>],
        stack: &mut Vec<usize>,
        frames: &mut Vec<Vec<usize>>,
        budget: usize,
        overflow: &mut bool,
    ) {
        if *overflow {
            return;
        }
        if stack.len() == k {
            if frames.len() >= budget {
                *overflow = true;
                return;
            }
            frames.push(stack.clone());
            return;
        }
        for i in start..n {
            if stack.iter().all(|&j| orth[i][j]) {
                stack.push(i);
                dfs(i + 1, k, n, orth, stack, frames, budget, overflow);
                stack.pop();
                if *overflow {
                    return;
                }
            }
        }
    }
    dfs(0, k, n, &orth, &mut stack, &mut frames, budget, &mut overflow);
    if !overflow {
        let examined = frames.len();
        for f in &frames {
            record(f, &mut fps);
        }
        return Ok(FrameSearch {
            k,
            fingerprints: fps,
            frames_examined: examined,
            exhaustive: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (lat.degree() as u64) * 100 + k as u64);
    let all: Vec<usize> = (0..n).collect();
    let mut examined = 0;
    let mut attempts = 0usize;
    while examined < budget && attempts < budget * 20 {
        attempts += 1;
        let mut frame: Vec<usize> = Vec::with_capacity(k);
        let mut cands = all.clone();
        while frame.len() < k {
            let Some(&pick) = cands.choose(&mut rng) else { break };
            frame.push(pick);
            cands.retain(|&j| j != pick && orth[pick][j]);
        }
        if frame.len() < k {
            continue;
        }
        examined += 1;
        record(&frame, &mut fps);
    }
    Ok(FrameSearch {
        k,
        fingerprints: fps,
        frames_examined: examined,
        exhaustive: false,
    })
}

/// Exponents of Φ_m in a product of cyclotomic polynomials; `None` if the input is
/// not such a product.
pub fn cyclotomic_exponents(p: &[i64]) -> Option<BTreeMap<u32, u32>> {
    let mut rest = p.to_vec();
    let mut out = BTreeMap::new();
    for m in 1..=60u32 {
        if rest.len() <= 1 {
            break;
        }
        let phi = crate::exactnum::cyclotomic_poly(m);
        loop {
            if rest.len() < phi.len() {
                break;
            }
            match divide_exact(&rest, &phi) {
                Some(q) => {
                    *out.entry(m).or_insert(0) += 1;
                    rest = q;
                }
                None => break,
            }
        }
    }
    if rest == vec![1] {
        Some(out)
    } else {
        None
    }
}

fn divide_exact(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    if rem.iter().all(|&x| x == 0) {
        Some(q)
    } else {
        None
    }
}

struct NamedRow {
    degree: i64,
    /// (m, exponent of Φ_m) on K⊥
    factors: &'static [(u32, u32)],
    fixed_lines: Option<usize>,
    label: &'static str,
}

const NAMED: &[NamedRow] = &[
    // W(E6): involutions and order-3 classes
    NamedRow { degree: 3, factors: &[(1, 6)], fixed_lines: None, label: "id" },
    NamedRow { degree: 3, factors: &[(1, 5), (2, 1)], fixed_lines: None, label: "A_1" },
    NamedRow { degree: 3, factors: &[(1, 4), (2, 2)], fixed_lines: None, label: "A_1^2" },
    NamedRow { degree: 3, factors: &[(1, 3), (2, 3)], fixed_lines: None, label: "A_1^3" },
    NamedRow { degree: 3, factors: &[(1, 2), (2, 4)], fixed_lines: None, label: "A_1^4" },
    NamedRow { degree: 3, factors: &[(1, 4), (3, 1)], fixed_lines: None, label: "A_2" },
    NamedRow { degree: 3, factors: &[(1, 2), (3, 2)], fixed_lines: None, label: "A_2^2" },
    NamedRow { degree: 3, factors: &[(3, 3)], fixed_lines: None, label: "A_2^3" },
    // W(D5)
    NamedRow { degree: 4, factors: &[(1, 5)], fixed_lines: None, label: "id" },
    NamedRow { degree: 4, factors: &[(1, 4), (2, 1)], fixed_lines: None, label: "A_1" },
    NamedRow { degree: 4, factors: &[(1, 3), (2, 2)], fixed_lines: Some(4), label: "A_1^2" },
    NamedRow { degree: 4, factors: &[(1, 3), (2, 2)], fixed_lines: Some(0), label: "A_1^2'" },
    NamedRow { degree: 4, factors: &[(1, 2), (2, 3)], fixed_lines: None, label: "A_1^3" },
    // W(E7)
    NamedRow { degree: 2, factors: &[(1, 7)], fixed_lines: None, label: "id" },
    NamedRow { degree: 2, factors: &[(1, 6), (2, 1)], fixed_lines: None, label: "A_1" },
    NamedRow { degree: 2, factors: &[(1, 5), (2, 2)], fixed_lines: None, label: "A_1^2" },
    NamedRow { degree: 2, factors: &[(1, 4), (2, 3)], fixed_lines: Some(8), label: "A_1^3''" },
    NamedRow { degree: 2, factors: &[(1, 4), (2, 3)], fixed_lines: Some(0), label: "A_1^3'" },
    NamedRow { degree: 2, factors: &[(1, 3), (2, 4)], fixed_lines: Some(0), label: "A_1^4'" },
    NamedRow { degree: 2, factors: &[(2, 7)], fixed_lines: None, label: "Geiser" },
    NamedRow { degree: 2, factors: &[(1, 2), (2, 3), (4, 1)], fixed_lines: None, label: "A_3×A_1^2" },
    NamedRow { degree: 2, factors: &[(1, 1), (2, 2), (4, 2)], fixed_lines: None, label: "A_3^2" },
    NamedRow { degree: 2, factors: &[(1, 2), (2, 1), (4, 2)], fixed_lines: None, label: "D_4(a_1)×A_1" },
    NamedRow { degree: 2, factors: &[(1, 3), (2, 2), (4, 1)], fixed_lines: None, label: "A_3×A_1" },
    // W(E8)
    NamedRow { degree: 1, factors: &[(1, 8)], fixed_lines: None, label: "1" },
    NamedRow { degree: 1, factors: &[(1, 7), (2, 1)], fixed_lines: None, label: "A_1" },
    NamedRow { degree: 1, factors: &[(1, 6), (2, 2)], fixed_lines: None, label: "A_1^2" },
    NamedRow { degree: 1, factors: &[(1, 5), (2, 3)], fixed_lines: None, label: "A_1^3" },
    NamedRow { degree: 1, factors: &[(1, 4), (2, 4)], fixed_lines: Some(8), label: "A_1^4''" },
    NamedRow { degree: 1, factors: &[(1, 4), (2, 4)], fixed_lines: Some(24), label: "A_1^4'" },
    NamedRow { degree: 1, factors: &[(1, 3), (2, 5)], fixed_lines: None, label: "A_1^5" },
    NamedRow { degree: 1, factors: &[(1, 2), (2, 6)], fixed_lines: None, label: "A_1^6" },
    NamedRow { degree: 1, factors: &[(1, 1), (2, 7)], fixed_lines: None, label: "A_1^7" },
    NamedRow { degree: 1, factors: &[(2, 8)], fixed_lines: None, label: "A_1^8" },
    NamedRow { degree: 1, factors: &[(1, 6), (3, 1)], fixed_lines: None, label: "A_2" },
    NamedRow { degree: 1, factors: &[(1, 4), (3, 2)], fixed_lines: None, label: "A_2^2" },
    NamedRow { degree: 1, factors: &[(1, 2), (3, 3)], fixed_lines: None, label: "A_2^3" },
    NamedRow { degree: 1, factors: &[(3, 4)], fixed_lines: None, label: "A_2^4" },
];

/// Label from the named-class lookup, matched on the factored characteristic polynomial
/// on K⊥ and, where the tables separate primed classes, the fixed-line count.
pub fn classify_named(lat: &PicardLattice, g: &Isometry) -> Option<&'static str> {
    let fp = fingerprint(lat, g);
    classify_fingerprint(lat.degree(), &fp)
}

pub fn classify_fingerprint(degree: i64, fp: &ElementFingerprint) -> Option<&'static str> {
    let exps = cyclotomic_exponents(&fp.charpoly_kperp)?;
    NAMED
        .iter()
        .find(|row| {
            row.degree == degree
                && row.factors.len() == exps.len()
                && row.factors.iter().all(|(m, e)| exps.get(m) == Some(e))
                && row.fixed_lines.is_none_or(|f| f == fp.fixed_line_count)
        })
        .map(|row| row.label)
}
