//! Degree 4: the sign-vector group A, its extension by permutations of the five
//! conic-bundle pairs, real-structure patterns, invariant ranks and Wall's characteristic.
//!
//! Basis of Pic ⊗ Q used throughout: e_0 = −K, e_i = C_i (i = 1..5), so that
//! C_i' = e_0 − e_i. Matrices act on column vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::linalg::{int_to_rat, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Dp4Error {
    #[error("element set is not closed under products, or does not commute with the real structure")]
    NotAGroup,
    #[error("shortcut is only defined for p2_31 and q22_02, not {0}")]
    UnsupportedForm(String),
    #[error("pencil points coincide or are antipodal, or a pair is (0, 0)")]
    DegeneratePencil,
    #[error("sign vector has odd weight")]
    OddSignVector,
    #[error("unknown real form {0}")]
    UnknownForm(String),
    #[error("real structure must be an involution")]
    NotAnInvolution,
}

/// (a_1, …, a_5) ∈ (Z/2)^5 with even weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignVector(pub [u8; 5]);

impl SignVector {
    pub const ZERO: SignVector = SignVector([0; 5]);

    pub fn new(bits: [u8; 5]) -> Result<SignVector, Dp4Error> {
        let bits = bits.map(|b| b & 1);
        if bits.iter().sum::<u8>() % 2 != 0 {
            return Err(Dp4Error::OddSignVector);
        }
        Ok(SignVector(bits))
    }

    /// Panicking constructor for literals.
    pub fn of(bits: [u8; 5]) -> SignVector {
        SignVector::new(bits).expect("even weight")
    }

    pub fn add(self, o: SignVector) -> SignVector {
        let mut b = [0; 5];
        for (i, x) in b.iter_mut().enumerate() {
            *x = self.0[i] ^ o.0[i];
        }
        SignVector(b)
    }

    /// (τ·a)_{τ(i)} = a_i.
    pub fn permuted(self, tau: &[usize; 5]) -> SignVector {
        let mut b = [0; 5];
        for i in 0..5 {
            b[tau[i]] = self.0[i];
        }
        SignVector(b)
    }

    /// All 16 elements of A in lexicographic order.
    pub fn all() -> Vec<SignVector> {
        (0..32u8)
            .map(|m| SignVector([m >> 4 & 1, m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1]))
            .filter(|s| s.0.iter().sum::<u8>() % 2 == 0)
            .collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// An element (a, τ) of A ⋊ S_5; τ is stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DP4Element {
    pub sign: SignVector,
    pub perm: [usize; 5],
}

pub const ID_PERM: [usize; 5] = [0, 1, 2, 3, 4];

/// Permutation from 1-based disjoint cycles, e.g. `&[&[2, 3], &[4, 5]]`.
pub fn perm_from_cycles(cycles: &[&[usize]]) -> [usize; 5] {
    let mut p = ID_PERM;
    for c in cycles {
        for k in 0..c.len() {
            p[c[k] - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

/// 1-based cycle notation, "id" for the identity.
pub fn perm_word(p: &[usize; 5]) -> String {
    let mut seen = [false; 5];
    let mut out = String::new();
    for i in 0..5 {
        if seen[i] || p[i] == i {
            continue;
        }
        out.push('(');
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            out.push_str(&(j + 1).to_string());
            j = p[j];
        }
        out.push(')');
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

impl DP4Element {
    pub fn identity() -> DP4Element {
        DP4Element {
            sign: SignVector::ZERO,
            perm: ID_PERM,
        }
    }

    pub fn new(sign: SignVector, perm: [usize; 5]) -> DP4Element {
        DP4Element { sign, perm }
    }

    pub fn sign_only(sign: SignVector) -> DP4Element {
        DP4Element { sign, perm: ID_PERM }
    }

    pub fn perm_only(perm: [usize; 5]) -> DP4Element {
        DP4Element {
            sign: SignVector::ZERO,
            perm,
        }
    }

    /// (a, τ)(b, υ) = (a + τ·b, τυ).
    pub fn mul(&self, o: &DP4Element) -> DP4Element {
        let mut p = [0; 5];
        for (i, x) in p.iter_mut().enumerate() {
            *x = self.perm[o.perm[i]];
        }
        DP4Element {
            sign: self.sign.add(o.sign.permuted(&self.perm)),
            perm: p,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == DP4Element::identity()
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Matrix of the element: e_0 ↦ e_0, e_i ↦ a_{τ(i)} e_0 + (−1)^{a_{τ(i)}} e_{τ(i)}.
    pub fn matrix(&self) -> Matrix<i64> {
        let mut m = Matrix::zeros(6, 6);
        m[(0, 0)] = 1;
        for i in 0..5 {
            let j = self.perm[i];
            let a = self.sign.0[j] as i64;
            m[(0, i + 1)] = a;
            m[(j + 1, i + 1)] = 1 - 2 * a;
        }
        m
    }

    pub fn trace(&self) -> i64 {
        1 + (0..5)
            .filter(|&i| self.perm[i] == i)
            .map(|i| 1 - 2 * self.sign.0[i] as i64)
            .sum::<i64>()
    }
}

impl fmt::Display for DP4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sign, perm_word(&self.perm))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub sign: [u8; 5],
    pub perm: String,
}

impl From<&DP4Element> for ElementReport {
    fn from(e: &DP4Element) -> Self {
        ElementReport {
            sign: e.sign.0,
            perm: perm_word(&e.perm),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DP4RealForm {
    pub label: String,
    /// Lattice action of the real structure, written as an element of A ⋊ S_5.
    pub sigma: DP4Element,
}

impl DP4RealForm {
    pub const LABELS: [&'static str; 5] = ["split", "q31_02", "p2_12", "p2_31", "q22_02"];

    pub fn named(label: &str) -> Result<DP4RealForm, Dp4Error> {
        let norm = label.replace('-', "_");
        let norm = match norm.as_str() {
            "q31_0_2" => "q31_02",
            "p2_1_2" => "p2_12",
            "p2_3_1" => "p2_31",
            "q22_0_2" => "q22_02",
            "p2_5_0" => "split",
            other => other,
        }
        .to_string();
        let sigma = match norm.as_str() {
            "split" => DP4Element::identity(),
            // C_2 ↔ C_2', C_3 ↔ C_3', C_4 ↔ C_5, C_4' ↔ C_5'
            "q31_02" => DP4Element::new(SignVector::of([0, 1, 1, 0, 0]), perm_from_cycles(&[&[4, 5]])),
            // C_2 ↔ C_3, C_4 ↔ C_5 and the same on the primed bundles
            "p2_12" => DP4Element::perm_only(perm_from_cycles(&[&[2, 3], &[4, 5]])),
            "p2_31" => DP4Element::perm_only(perm_from_cycles(&[&[4, 5]])),
            // C_4 ↔ C_4', C_5 ↔ C_5'
            "q22_02" => DP4Element::sign_only(SignVector::of([0, 0, 0, 1, 1])),
            _ => return Err(Dp4Error::UnknownForm(label.to_string())),
        };
        Ok(DP4RealForm { label: norm, sigma })
    }

    /// Any involution of A ⋊ S_5 as an exploratory real structure.
    pub fn custom(label: &str, sigma: DP4Element) -> Result<DP4RealForm, Dp4Error> {
        if !sigma.mul(&sigma).is_identity() {
            return Err(Dp4Error::NotAnInvolution);
        }
        Ok(DP4RealForm {
            label: label.to_string(),
            sigma,
        })
    }

    pub fn commutes(&self, g: &DP4Element) -> bool {
        self.sigma.mul(g) == g.mul(&self.sigma)
    }
}

/// Matrix of `el`, optionally preceded by σ: S·M when `with_sigma`.
pub fn dp4_matrix(el: &DP4Element, form: &DP4RealForm, with_sigma: bool) -> Matrix<Rational> {
    let m = if with_sigma { form.sigma.mul(el).matrix() } else { el.matrix() };
    int_to_rat(&m)
}

pub fn closure(gens: &[DP4Element]) -> BTreeSet<DP4Element> {
    let mut set = BTreeSet::from([DP4Element::identity()]);
    let mut frontier = vec![DP4Element::identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn is_closed(set: &BTreeSet<DP4Element>) -> bool {
    set.contains(&DP4Element::identity()) && set.iter().all(|a| set.iter().all(|b| set.contains(&a.mul(b))))
}

/// 1 + (Σ over {1, σ} × G of (tr − 1)) / (2|G|).
pub fn dp4_invariant_rank(subgroup: &BTreeSet<DP4Element>, form: &DP4RealForm) -> Result<usize, Dp4Error> {
    if !is_closed(subgroup) || !subgroup.iter().all(|g| form.commutes(g)) {
        return Err(Dp4Error::NotAGroup);
    }
    let sum: i64 = subgroup
        .iter()
        .map(|g| (g.trace() - 1) + (form.sigma.mul(g).trace() - 1))
        .sum();
    let n = 2 * subgroup.len() as i64;
    if sum % n != 0 || sum < 0 {
        return Err(Dp4Error::NotAGroup);
    }
    Ok(1 + (sum / n) as usize)
}

pub fn sign_group(vs: &[SignVector]) -> BTreeSet<DP4Element> {
    vs.iter().map(|v| DP4Element::sign_only(*v)).collect()
}

/// Counting shortcuts: p2_31 uses 2(δ_0 − δ_1) + (ε_0 − ε_1) = 0, q22_02 uses δ_0 = δ_1.
pub fn delta_criterion(subgroup: &BTreeSet<SignVector>, form: &DP4RealForm) -> Result<bool, Dp4Error> {
    let as_el: BTreeSet<DP4Element> = subgroup.iter().map(|v| DP4Element::sign_only(*v)).collect();
    if !is_closed(&as_el) {
        return Err(Dp4Error::NotAGroup);
    }
    let (mut d0, mut d1, mut e0, mut e1) = (0i64, 0i64, 0i64, 0i64);
    for v in subgroup {
        for i in 0..3 {
            if v.0[i] == 0 { d0 += 1 } else { d1 += 1 }
        }
        for i in 3..5 {
            if v.0[i] == 0 { e0 += 1 } else { e1 += 1 }
        }
    }
    match form.label.as_str() {
        "p2_31" => Ok(2 * (d0 - d1) + (e0 - e1) == 0),
        "q22_02" => Ok(d0 == d1),
        other => Err(Dp4Error::UnsupportedForm(other.to_string())),
    }
}

/// All elements have a_1 = 0, or all have a_4 = a_5 = 0.
pub fn star_condition(subgroup: &BTreeSet<SignVector>) -> bool {
    subgroup.iter().all(|v| v.0[0] == 0) || subgroup.iter().all(|v| v.0[3] == 0 && v.0[4] == 0)
}

/// Every subgroup of the group generated by `gens`.
pub fn all_subgroups(gens: &[DP4Element]) -> Vec<BTreeSet<DP4Element>> {
    let ambient = closure(gens);
    let trivial = BTreeSet::from([DP4Element::identity()]);
    let mut found: BTreeSet<Vec<DP4Element>> = BTreeSet::from([trivial.iter().copied().collect()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in &ambient {
            if h.contains(x) {
                continue;
            }
            let mut g: Vec<DP4Element> = h.iter().copied().collect();
            g.push(*x);
            let k = closure(&g);
            if found.insert(k.iter().copied().collect()) {
                frontier.push(k);
            }
        }
    }
    found.into_iter().map(|v| v.into_iter().collect()).collect()
}

/// Every subgroup of A, as sign-vector sets.
pub fn subgroups_of_a() -> Vec<BTreeSet<SignVector>> {
    let gens: Vec<DP4Element> = SignVector::all().into_iter().map(DP4Element::sign_only).collect();
    all_subgroups(&gens)
        .into_iter()
        .map(|h| h.into_iter().map(|e| e.sign).collect())
        .collect()
}

fn inverse(g: &DP4Element) -> DP4Element {
    let mut x = *g;
    loop {
        let y = x.mul(g);
        if y.is_identity() {
            return x;
        }
        x = y;
    }
}

/// Isomorphism-type label for the small groups met here.
pub fn iso_type(group: &BTreeSet<DP4Element>) -> String {
    let n = group.len();
    if n == 1 {
        return "1".into();
    }
    let orders: Vec<usize> = group.iter().map(|g| g.order()).collect();
    let max_order = *orders.iter().max().unwrap();
    let abelian = group.iter().all(|a| group.iter().all(|b| a.mul(b) == b.mul(a)));
    let log2 = |m: usize| m.trailing_zeros() as usize;
    if max_order == n {
        return format!("Z/{}", n);
    }
    if abelian && max_order == 2 {
        return if n == 4 { "(Z/2)^2".into() } else { format!("(Z/2)^{}", log2(n)) };
    }
    if abelian {
        // two invariant factors suffice at these orders
        return format!("Z/{}×Z/{}", n / max_order, max_order);
    }
    // a normal elementary abelian subgroup of index 2 with a complement of order 2
    let involutions: Vec<&DP4Element> = group.iter().filter(|g| g.order() == 2).collect();
    for h in all_subgroups(&group.iter().copied().collect::<Vec<_>>()) {
        if h.len() * 2 != n || !h.iter().all(|g| g.order() <= 2) {
            continue;
        }
        let normal = group.iter().all(|g| h.iter().all(|x| h.contains(&g.mul(x).mul(&inverse(g)))));
        if normal && involutions.iter().any(|t| !h.contains(t)) {
            return format!("(Z/2)^{}⋊Z/2", log2(h.len()));
        }
    }
    format!("group of order {}", n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    pub iso_type: String,
    pub order: usize,
    pub elements: Vec<ElementReport>,
    /// Number of ambient-conjugate subgroups in the class.
    pub class_size: usize,
    #[serde(skip)]
    pub members: BTreeSet<DP4Element>,
}

/// Ambient group whose elements are real for the form: A_o extended by the
/// permutation part compatible with σ.
pub fn default_ambient(form: &DP4RealForm) -> Vec<DP4Element> {
    let s = |b: [u8; 5]| DP4Element::sign_only(SignVector::of(b));
    match form.label.as_str() {
        "q31_02" => vec![
            s([0, 1, 1, 0, 0]),
            s([1, 0, 1, 0, 0]),
            s([0, 0, 0, 1, 1]),
            DP4Element::perm_only(perm_from_cycles(&[&[2, 3], &[4, 5]])),
        ],
        "p2_12" => vec![
            s([0, 0, 0, 1, 1]),
            s([0, 1, 1, 0, 0]),
            DP4Element::perm_only(perm_from_cycles(&[&[2, 3]])),
            DP4Element::perm_only(perm_from_cycles(&[&[2, 4, 3, 5]])),
        ],
        "p2_31" => SignVector::all()
            .into_iter()
            .filter(|v| v.0[3] == v.0[4])
            .map(DP4Element::sign_only)
            .collect(),
        _ => SignVector::all().into_iter().map(DP4Element::sign_only).collect(),
    }
}

/// Subgroups of the ambient group of rank 1, one per ambient conjugacy class, sorted by
/// order and then by elements.
pub fn enumerate_strongly_minimal(form: &DP4RealForm, ambient: &[DP4Element]) -> Result<Vec<SubgroupReport>, Dp4Error> {
    let amb = closure(ambient);
    if !amb.iter().all(|g| form.commutes(g)) {
        return Err(Dp4Error::NotAGroup);
    }
    let mut classes: BTreeMap<Vec<DP4Element>, usize> = BTreeMap::new();
    for h in all_subgroups(ambient) {
        if dp4_invariant_rank(&h, form)? != 1 {
            continue;
        }
        let conjugates: BTreeSet<Vec<DP4Element>> = amb
            .iter()
            .map(|g| {
                let gi = inverse(g);
                let mut c: Vec<DP4Element> = h.iter().map(|x| g.mul(x).mul(&gi)).collect();
                c.sort();
                c
            })
            .collect();
        let rep = conjugates.iter().next().unwrap().clone();
        classes.insert(rep, conjugates.len());
    }
    let mut out: Vec<SubgroupReport> = classes
        .into_iter()
        .map(|(rep, size)| {
            let members: BTreeSet<DP4Element> = rep.into_iter().collect();
            SubgroupReport {
                iso_type: iso_type(&members),
                order: members.len(),
                elements: members.iter().map(ElementReport::from).collect(),
                class_size: size,
                members,
            }
        })
        .collect();
    out.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
    Ok(out)
}

/// Rows of a change of basis for Q_{3,1}(0,2): columns are e_0 = −K, C_1, …, C_5 in
/// the geometric basis F, F̄, E_p, E_p̄, E_q, E_q̄.
pub fn q31_conic_basis() -> Matrix<i64> {
    Matrix::from_cols(&[
        vec![2, 2, -1, -1, -1, -1],
        vec![1, 1, -1, -1, 0, 0],
        vec![1, 1, -1, 0, -1, 0],
        vec![1, 1, -1, 0, 0, -1],
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
    ])
}

/// g* for g = ((1,0,1,1,1), (23)(45)) in the geometric basis.
pub fn q31_geometric_g() -> Matrix<i64> {
    Matrix::from_rows(vec![
        vec![2, 1, 1, 1, 1, 1],
        vec![1, 2, 1, 1, 1, 1],
        vec![-1, -1, -1, -1, -1, 0],
        vec![-1, -1, -1, -1, 0, -1],
        vec![-1, -1, 0, -1, -1, -1],
        vec![-1, -1, -1, 0, -1, -1],
    ])
}

/// σ* in the geometric basis: swaps F ↔ F̄, E_p ↔ E_p̄, E_q ↔ E_q̄.
pub fn q31_geometric_sigma() -> Matrix<i64> {
    let mut m = Matrix::zeros(6, 6);
    for (i, j) in [(0, 1), (2, 3), (4, 5)] {
        m[(i, j)] = 1;
        m[(j, i)] = 1;
    }
    m
}

/// Converts a matrix in the conic basis to the geometric basis: B M B⁻¹.
pub fn to_geometric(m: &Matrix<Rational>) -> Matrix<Rational> {
    let b = int_to_rat(&q31_conic_basis());
    b.mul(m).mul(&b.inverse().expect("conic basis is invertible over Q"))
}

/// Diagonal pencil data: one (a_k, b_k) per real eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpec {
    pub real_eigen_pairs: Vec<(Rational, Rational)>,
}

fn half(p: &(Rational, Rational)) -> u8 {
    // 0 for angles in [0, π), 1 for [π, 2π)
    if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
        0
    } else {
        1
    }
}

fn cross(p: &(Rational, Rational), q: &(Rational, Rational)) -> Rational {
    &p.0 * &q.1 - &p.1 * &q.0
}

fn angle_cmp(p: &(Rational, Rational), q: &(Rational, Rational)) -> Ordering {
    half(p).cmp(&half(q)).then_with(|| Rational::zero().cmp(&cross(p, q)))
}

/// Block sizes of the points P_k = (a_k, b_k) and Q_k = −P_k read anticlockwise over half
/// the circle, rotated to the lexicographically largest sequence.
pub fn wall_characteristic(p: &PencilSpec) -> Result<Vec<u32>, Dp4Error> {
    let pts = &p.real_eigen_pairs;
    if pts.is_empty() || pts.iter().any(|(a, b)| a.is_zero() && b.is_zero()) {
        return Err(Dp4Error::DegeneratePencil);
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if cross(&pts[i], &pts[j]).is_zero() {
                return Err(Dp4Error::DegeneratePencil);
            }
        }
    }
    // (point, is_p)
    let mut all: Vec<((Rational, Rational), bool)> = Vec::new();
    for (a, b) in pts {
        all.push(((a.clone(), b.clone()), true));
        all.push(((-a.clone(), -b.clone()), false));
    }
    all.sort_by(|x, y| angle_cmp(&x.0, &y.0));
    let kinds: Vec<bool> = all.iter().map(|x| x.1).collect();
    let n = kinds.len();
    // rotate so a block starts at index 0
    let start = (0..n).find(|&i| kinds[i] != kinds[(i + n - 1) % n]).unwrap_or(0);
    let mut blocks: Vec<u32> = Vec::new();
    let mut prev: Option<bool> = None;
    for k in 0..n {
        let t = kinds[(start + k) % n];
        if prev == Some(t) {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
        }
        prev = Some(t);
    }
    let half_len = blocks.len() / 2;
    debug_assert_eq!(blocks.len() % 2, 0);
    debug_assert_eq!(blocks[..half_len], blocks[half_len..]);
    let seq = &blocks[..half_len];
    let best = (0..half_len)
        .map(|r| seq[r..].iter().chain(&seq[..r]).copied().collect::<Vec<u32>>())
        .max()
        .unwrap();
    Ok(best)
}
