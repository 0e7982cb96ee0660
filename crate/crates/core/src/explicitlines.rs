//! Coordinate models of the lines on the Fermat and Clebsch cubic surfaces and on the
//! degree-2 surface w² = x⁴ + 6x²y² + y⁴ − 2z⁴, twisted real structures acting on them,
//! and counts of real lines and real tritangent planes.
//!
//! Coordinates live in the smallest cyclotomic field that holds them (ζ_3, ζ_5, ζ_8);
//! every such field embeds in the global Q(ζ_N) when the conductor N is a multiple.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{cyclo_make, rat, CycloNum, DEFAULT_CONDUCTOR};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinesError {
    #[error("coordinate map composed with conjugation is not an involution")]
    InvalidCocycle,
    #[error("the map does not send the line set to itself")]
    NotPreserved,
    #[error("{0} does not lie on the surface")]
    NotOnSurface(String),
    #[error("linear forms of {0} do not cut out a line")]
    Degenerate(String),
    #[error("conductor {got} is not a multiple of {need}")]
    Conductor { need: u32, got: u32 },
    #[error("unknown model or twist {0}")]
    Unknown(String),
}

fn c(k: i64) -> CycloNum {
    CycloNum::from_int(k)
}

fn check_conductor(need: u32, got: u32) -> Result<(), LinesError> {
    if got == 0 || !got.is_multiple_of(need) {
        return Err(LinesError::Conductor { need, got });
    }
    Ok(())
}

/// √2 = ζ_8 + ζ_8^{-1}.
pub fn sqrt2() -> CycloNum {
    cyclo_make(8, 1) + cyclo_make(8, 7)
}

/// √5 = 1 + 2(ζ_5 + ζ_5^{-1}).
pub fn sqrt5() -> CycloNum {
    c(1) + c(2) * (cyclo_make(5, 1) + cyclo_make(5, 4))
}

pub fn imag_unit() -> CycloNum {
    cyclo_make(8, 2)
}

/// A line in P^3, or in the hyperplane Σx_i = 0 of P^4, spanned by two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSpaceLine {
    pub name: String,
    /// 3 or 4.
    pub ambient_dim: usize,
    pub points: [Vec<CycloNum>; 2],
}

impl ProjSpaceLine {
    /// The line cut out by the given linear forms.
    pub fn from_equations(name: &str, ambient_dim: usize, forms: Vec<Vec<CycloNum>>) -> Result<ProjSpaceLine, LinesError> {
        let k = Matrix::from_rows(forms).kernel();
        if k.len() != 2 {
            return Err(LinesError::Degenerate(name.to_string()));
        }
        let [p, q]: [Vec<CycloNum>; 2] = k.try_into().unwrap();
        Ok(ProjSpaceLine {
            name: name.to_string(),
            ambient_dim,
            points: [p, q],
        })
    }

    /// The first four coordinates; on Σx_i = 0 dropping x_5 is an isomorphism onto P^3.
    fn p3_points(&self) -> [&[CycloNum]; 2] {
        [&self.points[0][..4], &self.points[1][..4]]
    }

    /// Plücker coordinates p_ij = a_i b_j − a_j b_i in the order 01, 02, 03, 12, 13, 23,
    /// scaled so that the first nonzero one is 1.
    pub fn plucker(&self) -> Vec<CycloNum> {
        let [a, b] = self.p3_points();
        let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let raw: Vec<CycloNum> = idx.iter().map(|&(i, j)| &a[i] * &b[j] - &a[j] * &b[i]).collect();
        let lead = raw.iter().find(|x| !x.is_zero()).expect("points are independent").clone();
        let inv = lead.inv().expect("nonzero");
        raw.into_iter().map(|x| x * &inv).collect()
    }

    pub fn map_points(&self, f: impl Fn(&[CycloNum]) -> Vec<CycloNum>) -> ProjSpaceLine {
        ProjSpaceLine {
            name: self.name.clone(),
            ambient_dim: self.ambient_dim,
            points: [f(&self.points[0]), f(&self.points[1])],
        }
    }
}

/// Lines meet iff the Plücker pairing vanishes.
fn plucker_pairing(p: &[CycloNum], q: &[CycloNum]) -> CycloNum {
    &p[0] * &q[5] - &p[1] * &q[4] + &p[2] * &q[3] + &p[3] * &q[2] - &p[4] * &q[1] + &p[5] * &q[0]
}

/// Evaluates a homogeneous polynomial on a binary family s·p + t·q at enough (s, t) to
/// decide whether it vanishes identically.
fn vanishes_on_line(f: &dyn Fn(&[CycloNum]) -> CycloNum, p: &[CycloNum], q: &[CycloNum], degree: i64) -> bool {
    (0..=degree).all(|t| {
        let pt: Vec<CycloNum> = p.iter().zip(q).map(|(a, b)| a + &(b * &c(t))).collect();
        f(&pt).is_zero()
    }) && f(q).is_zero()
}

fn sum_of_cubes(x: &[CycloNum]) -> CycloNum {
    x.iter().fold(CycloNum::zero(), |acc, v| acc + v.pow(3))
}

fn verify_cubic(lines: &[ProjSpaceLine]) -> Result<(), LinesError> {
    for l in lines {
        if !vanishes_on_line(&sum_of_cubes, &l.points[0], &l.points[1], 3) {
            return Err(LinesError::NotOnSurface(l.name.clone()));
        }
        if l.ambient_dim == 4 {
            let s = |x: &[CycloNum]| x.iter().fold(CycloNum::zero(), |a, v| a + v);
            if !vanishes_on_line(&s, &l.points[0], &l.points[1], 1) {
                return Err(LinesError::NotOnSurface(l.name.clone()));
            }
        }
    }
    Ok(())
}

/// The 27 lines on x_1³ + x_2³ + x_3³ + x_4³ = 0.
pub fn fermat_lines() -> Vec<ProjSpaceLine> {
    fermat_lines_in(DEFAULT_CONDUCTOR).expect("default conductor holds ζ_3")
}

pub fn fermat_lines_in(conductor: u32) -> Result<Vec<ProjSpaceLine>, LinesError> {
    check_conductor(3, conductor)?;
    let w = |k: i64| cyclo_make(3, k);
    // (name, first pair, second pair): x_a + ω^k x_b = x_c + ω^j x_d = 0
    let fams = [("alpha", (0, 3), (1, 2)), ("beta", (0, 2), (3, 1)), ("gamma", (0, 1), (3, 2))];
    let mut out = Vec::with_capacity(27);
    for (fam, (a, b), (cc, d)) in fams {
        for k in 0..3 {
            for j in 0..3 {
                let mut f1 = vec![c(0); 4];
                f1[a] = c(1);
                f1[b] = w(k);
                let mut f2 = vec![c(0); 4];
                f2[cc] = c(1);
                f2[d] = w(j);
                out.push(ProjSpaceLine::from_equations(&format!("{fam}_{k}{j}"), 3, vec![f1, f2])?);
            }
        }
    }
    verify_cubic(&out)?;
    Ok(out)
}

/// The 27 lines on Σx_i = Σx_i³ = 0 in P^4: fifteen L_ijk and twelve L_ijkl.
pub fn clebsch_lines() -> Vec<ProjSpaceLine> {
    clebsch_lines_in(DEFAULT_CONDUCTOR).expect("default conductor holds ζ_5")
}

pub fn clebsch_lines_in(conductor: u32) -> Result<Vec<ProjSpaceLine>, LinesError> {
    check_conductor(5, conductor)?;
    let ones = vec![c(1); 5];
    let unit = |i: usize| {
        let mut v = vec![c(0); 5];
        v[i] = c(1);
        v
    };
    let mut out = Vec::with_capacity(27);
    // L_ijk: x_i = x_j + x_k = 0
    let mut triples = vec![(1, 2, 3), (1, 2, 4), (1, 2, 5)];
    for i in 2..=5 {
        for k in 2..=5 {
            if k != i {
                triples.push((i, 1, k));
            }
        }
    }
    for (i, j, k) in triples {
        let mut f2 = unit(j - 1);
        f2[k - 1] = c(1);
        out.push(ProjSpaceLine::from_equations(&format!("L_{i}{j}{k}"), 4, vec![unit(i - 1), f2, ones.clone()])?);
    }
    // L_ijkl with ζ = (1 + √5)/2
    let zeta = (c(1) + sqrt5()) * CycloNum::from_rational(&rat(1, 2));
    for i in 1..=4usize {
        for j in i + 1..=4 {
            let rest: Vec<usize> = (1..=4).filter(|&t| t != i && t != j).collect();
            for (k, l) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                let mut f1 = vec![c(0); 5];
                f1[i - 1] = c(1);
                f1[j - 1] = zeta.clone();
                f1[k - 1] = c(1);
                let mut f2 = vec![c(0); 5];
                f2[j - 1] = c(1);
                f2[i - 1] = zeta.clone();
                f2[l - 1] = c(1);
                let mut f3 = vec![c(0); 5];
                f3[i - 1] = zeta.clone();
                f3[j - 1] = zeta.clone();
                f3[4] = c(-1);
                out.push(ProjSpaceLine::from_equations(&format!("L_{i}{j}{k}{l}"), 4, vec![f1, f2, f3])?);
            }
        }
    }
    verify_cubic(&out)?;
    Ok(out)
}

/// Index of the line with the same span, if present.
pub fn find_line(lines: &[ProjSpaceLine], target: &ProjSpaceLine) -> Option<usize> {
    let p = target.plucker();
    lines.iter().position(|l| l.plucker() == p)
}

/// Intersection numbers between distinct lines (0 or 1); −1 on the diagonal.
pub fn incidence_matrix(lines: &[ProjSpaceLine]) -> Vec<Vec<i64>> {
    let pl: Vec<Vec<CycloNum>> = lines.iter().map(|l| l.plucker()).collect();
    let n = lines.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -1;
        for j in i + 1..n {
            let meet = plucker_pairing(&pl[i], &pl[j]).is_zero();
            m[i][j] = meet as i64;
            m[j][i] = meet as i64;
        }
    }
    m
}

/// Triples of lines lying in a common plane, found among pairwise meeting triples by
/// a rank test on their six spanning points.
pub fn tritangent_triples(lines: &[ProjSpaceLine]) -> Vec<[usize; 3]> {
    let inc = incidence_matrix(lines);
    let n = lines.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if inc[i][j] != 1 {
                continue;
            }
            for k in j + 1..n {
                if inc[i][k] != 1 || inc[j][k] != 1 {
                    continue;
                }
                let rows: Vec<Vec<CycloNum>> = [i, j, k]
                    .iter()
                    .flat_map(|&t| lines[t].p3_points().map(|p| p.to_vec()))
                    .collect();
                if Matrix::from_rows(rows).rank() == 3 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// x ↦ A·conj(x) with A monomial: y_{perm(i)} = scalars[i]·conj(x_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedRealStructure {
    pub label: String,
    pub perm: Vec<usize>,
    pub scalars: Vec<CycloNum>,
}

impl TwistedRealStructure {
    /// Accepts the map only when its square is a scalar, i.e. the identity on
    /// projective space: perm² = id and scalars[i]·conj(scalars[perm(i)]) is constant.
    pub fn new(label: &str, perm: Vec<usize>, scalars: Vec<CycloNum>) -> Result<Self, LinesError> {
        let n = perm.len();
        if scalars.len() != n || (0..n).any(|i| perm[i] >= n || perm[perm[i]] != i) {
            return Err(LinesError::InvalidCocycle);
        }
        let lambda: Vec<CycloNum> = (0..n).map(|i| &scalars[i] * &scalars[perm[i]].conj()).collect();
        if lambda[0].is_zero() || lambda.iter().any(|l| *l != lambda[0]) {
            return Err(LinesError::InvalidCocycle);
        }
        Ok(TwistedRealStructure {
            label: label.to_string(),
            perm,
            scalars,
        })
    }

    /// Conjugation twisted by a permutation given as 1-based cycles.
    pub fn permutation(label: &str, n: usize, cycles: &[&[usize]]) -> Result<Self, LinesError> {
        let mut perm: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (a, b) in cyc.iter().zip(cyc.iter().cycle().skip(1)) {
                perm[a - 1] = b - 1;
            }
        }
        TwistedRealStructure::new(label, perm, vec![c(1); n])
    }

    /// `id`, `t12` or `t1234` on n coordinates.
    pub fn named(label: &str, n: usize) -> Result<Self, LinesError> {
        match label {
            "id" => TwistedRealStructure::permutation(label, n, &[]),
            "t12" => TwistedRealStructure::permutation(label, n, &[&[1, 2]]),
            "t1234" => TwistedRealStructure::permutation(label, n, &[&[1, 2], &[3, 4]]),
            other => Err(LinesError::Unknown(other.to_string())),
        }
    }

    pub fn apply(&self, x: &[CycloNum]) -> Vec<CycloNum> {
        let mut y = vec![CycloNum::zero(); x.len()];
        for i in 0..x.len() {
            y[self.perm[i]] = &self.scalars[i] * &x[i].conj();
        }
        y
    }

    pub fn line_permutation(&self, lines: &[ProjSpaceLine]) -> Result<Vec<usize>, LinesError> {
        let perm: Vec<usize> = lines
            .iter()
            .map(|l| find_line(lines, &l.map_points(|p| self.apply(p))).ok_or(LinesError::NotPreserved))
            .collect::<Result<_, _>>()?;
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != lines.len() {
            return Err(LinesError::NotPreserved);
        }
        Ok(perm)
    }
}

pub fn count_real_lines(lines: &[ProjSpaceLine], rs: &TwistedRealStructure) -> Result<usize, LinesError> {
    let perm = rs.line_permutation(lines)?;
    Ok((0..lines.len()).filter(|&i| perm[i] == i).count())
}

pub fn count_real_tritangents(lines: &[ProjSpaceLine], rs: &TwistedRealStructure) -> Result<usize, LinesError> {
    let perm = rs.line_permutation(lines)?;
    Ok(tritangent_triples(lines)
        .iter()
        .filter(|t| {
            let mut img = t.map(|i| perm[i]);
            img.sort();
            img == **t
        })
        .count())
}

/// A line on a surface w² = F(x, y, z) in P(1,1,1,2): the plane line l(x, y, z) = 0
/// with w = q(x, y, z) along it; q is stored as a symmetric 3×3 matrix.
#[derive(Clone, Debug)]
pub struct WeightedLine {
    pub name: String,
    pub linear: [CycloNum; 3],
    pub quad: Matrix<CycloNum>,
}

fn quad_eval(q: &Matrix<CycloNum>, p: &[CycloNum]) -> CycloNum {
    let qp = q.apply(p);
    p.iter().zip(&qp).fold(CycloNum::zero(), |a, (x, y)| a + x * y)
}

fn cross(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl WeightedLine {
    fn new(name: String, linear: [CycloNum; 3], quad: Matrix<CycloNum>) -> WeightedLine {
        let lead = linear.iter().find(|x| !x.is_zero()).expect("nonzero form").inv().expect("nonzero");
        WeightedLine {
            name,
            linear: linear.map(|x| x * &lead),
            quad,
        }
    }

    /// Two points spanning the plane line.
    pub fn plane_points(&self) -> [Vec<CycloNum>; 2] {
        let k = Matrix::from_rows(vec![self.linear.to_vec()]).kernel();
        [k[0].clone(), k[1].clone()]
    }

    fn same_plane_line(&self, o: &WeightedLine) -> bool {
        self.linear == o.linear
    }

    fn same_w_on_line(&self, o: &WeightedLine) -> bool {
        let diff = self.quad.sub(&o.quad);
        let [p, q] = self.plane_points();
        vanishes_on_line(&|x: &[CycloNum]| quad_eval(&diff, x), &p, &q, 2)
    }

    pub fn same_line(&self, o: &WeightedLine) -> bool {
        self.same_plane_line(o) && self.same_w_on_line(o)
    }

    /// Intersection number of distinct lines: 2 over a common bitangent, otherwise 1
    /// when w agrees at the common point of the plane lines.
    pub fn meet(&self, o: &WeightedLine) -> i64 {
        if self.same_plane_line(o) {
            return 2;
        }
        let p = cross(&self.linear, &o.linear);
        (quad_eval(&self.quad, &p) == quad_eval(&o.quad, &p)) as i64
    }

    pub fn conj(&self) -> WeightedLine {
        WeightedLine::new(self.name.clone(), self.linear.clone().map(|x| x.conj()), self.quad.map(|x| x.conj()))
    }

    /// Image under (x, y, z) ↦ M(x, y, z), w ↦ s·w.
    pub fn transform(&self, m: &Matrix<CycloNum>, w_sign: i64) -> WeightedLine {
        let mi = m.inverse().expect("invertible");
        let l: Vec<CycloNum> = (0..3)
            .map(|j| (0..3).fold(CycloNum::zero(), |a, i| a + &self.linear[i] * &mi[(i, j)]))
            .collect();
        let q = mi.transpose().mul(&self.quad).mul(&mi).map(|x| x * &c(w_sign));
        WeightedLine::new(self.name.clone(), [l[0].clone(), l[1].clone(), l[2].clone()], q)
    }
}

/// x⁴ + 6x²y² + y⁴ − 2z⁴.
pub fn dp2_quartic(p: &[CycloNum]) -> CycloNum {
    let (x2, y2) = (p[0].pow(2), p[1].pow(2));
    x2.pow(2) + c(6) * &x2 * &y2 + y2.pow(2) - c(2) * p[2].pow(4)
}

fn sym(entries: [[CycloNum; 3]; 3]) -> Matrix<CycloNum> {
    Matrix::from_rows(entries.into_iter().map(|r| r.to_vec()).collect())
}

/// The 56 lines of the degree-2 example: θ-, η-, σ- and τ-families of 8, 16, 16, 16.
pub fn dp2_example_lines() -> Vec<WeightedLine> {
    dp2_example_lines_in(DEFAULT_CONDUCTOR).expect("default conductor holds ζ_8")
}

pub fn dp2_example_lines_in(conductor: u32) -> Result<Vec<WeightedLine>, LinesError> {
    check_conductor(8, conductor)?;
    let i = imag_unit();
    let r2 = sqrt2();
    let half_r2 = &r2 * &CycloNum::from_rational(&rat(1, 2));
    let z = || c(0);
    let mut out = Vec::with_capacity(56);
    let mut push = |name: String, l: [CycloNum; 3], q: Matrix<CycloNum>| out.push(WeightedLine::new(name, l, q));
    let signs = [1i64, -1];

    // θ: w = ±√2·i·z², x = α_1 y with α_1 = i(±1 ± √2)
    for (a, &s) in signs.iter().enumerate() {
        let q = sym([[z(), z(), z()], [z(), z(), z()], [z(), z(), &r2 * &i * &c(s)]]);
        for (b, &e1) in signs.iter().enumerate() {
            for (d, &e2) in signs.iter().enumerate() {
                let alpha = &i * &(c(e1) + &r2 * &c(e2));
                push(format!("theta_{a}{b}{d}"), [c(1), -alpha, z()], q.clone());
            }
        }
    }
    // η: w = ±(x² + 3y²), z = α_2 y and w = ±(3x² + y²), z = α_2 x with α_2² = ±2i
    let alpha2 = [c(1) + &i, c(-1) - &i, c(1) - &i, c(-1) + &i];
    for (a, &s) in signs.iter().enumerate() {
        for (b, al) in alpha2.iter().enumerate() {
            let q1 = sym([[c(s), z(), z()], [z(), c(3 * s), z()], [z(), z(), z()]]);
            push(format!("eta_y{a}{b}"), [z(), -al.clone(), c(1)], q1);
            let q2 = sym([[c(3 * s), z(), z()], [z(), c(s), z()], [z(), z(), z()]]);
            push(format!("eta_x{a}{b}"), [-al.clone(), z(), c(1)], q2);
        }
    }
    // σ: w = ±(x ∓ y)²/√2, z = α_3(x ± y) with α_3² = ±1/2
    let alpha3 = [half_r2.clone(), -half_r2.clone(), &half_r2 * &i, -(&half_r2 * &i)];
    for (a, &s) in signs.iter().enumerate() {
        let k = &half_r2 * &c(s);
        for (b, al) in alpha3.iter().enumerate() {
            let q1 = sym([[k.clone(), -k.clone(), z()], [-k.clone(), k.clone(), z()], [z(), z(), z()]]);
            push(format!("sigma_p{a}{b}"), [-al.clone(), -al.clone(), c(1)], q1);
            let q2 = sym([[k.clone(), k.clone(), z()], [k.clone(), k.clone(), z()], [z(), z(), z()]]);
            push(format!("sigma_m{a}{b}"), [-al.clone(), al.clone(), c(1)], q2);
        }
    }
    // τ: w = ±i(x² ± 4ixy − y²), z = α_4(x ± iy) with α_4² = ±1
    let alpha4 = [c(1), c(-1), i.clone(), -i.clone()];
    for (a, &s) in signs.iter().enumerate() {
        let k = &i * &c(s);
        for (b, al) in alpha4.iter().enumerate() {
            for (e, &t) in signs.iter().enumerate() {
                let off = &k * &(&i * &c(2 * t));
                let q = sym([[k.clone(), off.clone(), z()], [off, -k.clone(), z()], [z(), z(), z()]]);
                push(format!("tau_{e}{a}{b}"), [-al.clone(), -(al * &i * &c(t)), c(1)], q);
            }
        }
    }
    for l in &out {
        let [p, q] = l.plane_points();
        let f = |x: &[CycloNum]| dp2_quartic(x) - quad_eval(&l.quad, x).pow(2);
        if !vanishes_on_line(&f, &p, &q, 4) {
            return Err(LinesError::NotOnSurface(l.name.clone()));
        }
    }
    Ok(out)
}

pub fn dp2_incidence(lines: &[WeightedLine]) -> Vec<Vec<i64>> {
    let n = lines.len();
    let mut m = vec![vec![0i64; n]; n];
    for a in 0..n {
        m[a][a] = -1;
        for b in a + 1..n {
            let v = lines[a].meet(&lines[b]);
            m[a][b] = v;
            m[b][a] = v;
        }
    }
    m
}

fn find_weighted(lines: &[WeightedLine], t: &WeightedLine) -> Option<usize> {
    lines.iter().position(|l| l.same_line(t))
}

fn weighted_permutation(lines: &[WeightedLine], f: impl Fn(&WeightedLine) -> WeightedLine) -> Result<Vec<usize>, LinesError> {
    lines.iter().map(|l| find_weighted(lines, &f(l)).ok_or(LinesError::NotPreserved)).collect()
}

/// g: [x : y : z : w] ↦ [−y : x : z : ±w].
pub fn dp2_g_matrix() -> Matrix<CycloNum> {
    Matrix::from_rows(vec![vec![c(0), c(-1), c(0)], vec![c(1), c(0), c(0)], vec![c(0), c(0), c(1)]])
}

pub fn dp2_g_permutation(lines: &[WeightedLine], w_sign: i64) -> Result<Vec<usize>, LinesError> {
    let m = dp2_g_matrix();
    weighted_permutation(lines, |l| l.transform(&m, w_sign))
}

pub fn dp2_conj_permutation(lines: &[WeightedLine]) -> Result<Vec<usize>, LinesError> {
    weighted_permutation(lines, |l| l.conj())
}

/// Orbits of the permutation group generated by `gens`, ordered by smallest member.
pub fn perm_orbits(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = BTreeSet::from([s]);
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for g in gens {
                if !seen[g[v]] {
                    seen[g[v]] = true;
                    orbit.insert(g[v]);
                    stack.push(g[v]);
                }
            }
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dp2OrbitReport {
    pub w_sign: i64,
    pub g_orbit_sizes: Vec<usize>,
    pub real_orbit_sizes: Vec<usize>,
    /// Orbits of ⟨g, conj⟩ consisting of pairwise disjoint lines.
    pub disjoint_real_orbits: Vec<Vec<String>>,
}

pub fn dp2_orbit_report(lines: &[WeightedLine], w_sign: i64) -> Result<Dp2OrbitReport, LinesError> {
    let g = dp2_g_permutation(lines, w_sign)?;
    let s = dp2_conj_permutation(lines)?;
    let inc = dp2_incidence(lines);
    let sizes = |o: &[Vec<usize>]| o.iter().map(|v| v.len()).collect::<Vec<_>>();
    let g_orbits = perm_orbits(lines.len(), std::slice::from_ref(&g));
    let real = perm_orbits(lines.len(), &[g, s]);
    let disjoint = real
        .iter()
        .filter(|o| o.iter().all(|&a| o.iter().all(|&b| a == b || inc[a][b] == 0)))
        .map(|o| o.iter().map(|&i| lines[i].name.clone()).collect())
        .collect();
    Ok(Dp2OrbitReport {
        w_sign,
        g_orbit_sizes: sizes(&g_orbits),
        real_orbit_sizes: sizes(&real),
        disjoint_real_orbits: disjoint,
    })
}

/// Model selector used by the command line: `fermat` or `clebsch`.
pub fn cubic_lines(model: &str, conductor: u32) -> Result<Vec<ProjSpaceLine>, LinesError> {
    match model {
        "fermat" => fermat_lines_in(conductor),
        "clebsch" => clebsch_lines_in(conductor),
        other => Err(LinesError::Unknown(other.to_string())),
    }
}

/// Number of coordinates of the model's ambient space.
pub fn cubic_coordinates(model: &str) -> usize {
    if model == "clebsch" {
        5
    } else {
        4
    }
}
