//! Degree 1: the model w² = z³ + f4(x, y) z + f6(x, y), singular fibers of the
//! anticanonical pencil, the Euler-characteristic test for connectedness, the
//! Bertini criterion for minimal groups, and ☆-configurations of order-3 elements.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::invforms::{is_invariant, BinaryForm, PointGroup2D};
use crate::linalg::Matrix;
use crate::picard::{LatticeClass, PicardLattice};
use crate::weyl::Isometry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Dp1Error {
    #[error("f4 must have degree 4 and f6 degree 6, got {0} and {1}")]
    BadDegrees(usize, usize),
    #[error("coefficients must be rational")]
    NotRational,
    #[error("discriminant 4f4³ + 27f6² vanishes identically")]
    ZeroDiscriminant,
    #[error("discriminant has a repeated root that is not a simple cusp")]
    NonSquarefreeDiscriminant,
    #[error("element is not of type A_2^2 (order 3, trace 2 on K⊥)")]
    NotTypeA2Squared,
    #[error("☆-configuration search found {0} invariant configurations")]
    UnexpectedConfigurations(usize),
}

/// Polynomials over Q, lowest degree first, without trailing zeros.
pub mod poly {
    use super::*;

    pub type Poly = Vec<Rational>;

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Rational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(p: &[Rational], t: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(p: &[Rational]) -> Poly {
        trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer((i as i64).into())).collect())
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Poly {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let q = &r[dr] / &b[db];
            for i in 0..=db {
                let t = &q * &b[i];
                r[dr - db + i] -= t;
            }
            r = trim(r);
        }
        r
    }

    pub fn div_exact(a: &[Rational], b: &[Rational]) -> Poly {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = trim(a.to_vec());
        let Some(da) = degree(&r) else { return Vec::new() };
        if da < db {
            return Vec::new();
        }
        let mut q = vec![Rational::zero(); da - db + 1];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = &r[dr] / &b[db];
            for i in 0..=db {
                let t = &c * &b[i];
                r[dr - db + i] -= t;
            }
            q[dr - db] = c;
            r = trim(r);
        }
        trim(q)
    }

    /// Monic gcd; the zero polynomial when both inputs are zero.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(d) = degree(&a) {
            let lead = a[d].clone();
            a.iter_mut().for_each(|c| *c = &*c / &lead);
        }
        a
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(p: &[Rational]) -> Poly {
        let g = gcd(p, &derivative(p));
        if degree(&g).unwrap_or(0) == 0 {
            return trim(p.to_vec());
        }
        div_exact(p, &g)
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn positive_primitive(p: &[Rational]) -> Poly {
        let den = p.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let ints: Vec<BigInt> = p.iter().map(|q| (q * Rational::from(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        if g.is_zero() {
            return Vec::new();
        }
        ints.into_iter().map(|n| Rational::from(n / &g)).collect()
    }

    /// Sturm chain with every member rescaled by a positive constant.
    pub fn sturm_sequence(p: &[Rational]) -> Vec<Poly> {
        let mut seq = vec![positive_primitive(&trim(p.to_vec()))];
        let d = derivative(p);
        if d.is_empty() {
            return seq;
        }
        seq.push(positive_primitive(&d));
        loop {
            let n = seq.len();
            let r = rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Poly = r.into_iter().map(|c| -c).collect();
            seq.push(positive_primitive(&neg));
        }
        seq
    }

    /// Sign of p(t), in integer arithmetic when p has integer coefficients.
    pub fn sign_at(p: &[Rational], t: &Rational) -> i32 {
        let v = if p.iter().all(|c| c.is_integer()) {
            let (n, d) = (t.numer(), t.denom());
            let mut acc = BigInt::zero();
            let mut dpow = BigInt::one();
            for c in p.iter().rev() {
                acc = acc * n + c.numer() * &dpow;
                dpow *= d;
            }
            // acc = d^deg p(t)
            return bigint_sign(&acc);
        } else {
            eval(p, t)
        };
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    fn bigint_sign(x: &BigInt) -> i32 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    fn sign_changes(seq: &[Poly], t: &Rational) -> usize {
        let signs: Vec<bool> = seq.iter().map(|p| sign_at(p, t)).filter(|&v| v != 0).map(|v| v > 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in (a, b].
    pub fn count_roots(seq: &[Poly], a: &Rational, b: &Rational) -> usize {
        sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
    }

    /// Every real root lies in (−B, B).
    pub fn cauchy_bound(p: &[Rational]) -> Rational {
        let d = degree(p).expect("nonzero polynomial");
        let lead = p[d].abs();
        Rational::one() + p[..d].iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |m, x| if x > m { x } else { m })
    }
}

use poly::Poly;

/// A real root given either exactly or by an interval (lo, hi] holding no other root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

/// Distinct real roots, sorted, as isolating intervals of width at most `width`.
/// Rational roots met during bisection come back exact.
pub fn isolate_real_roots(p: &[Rational], width: &Rational) -> Vec<RootInterval> {
    let p = poly::trim(p.to_vec());
    if poly::degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = poly::squarefree_part(&p);
    let seq = poly::sturm_sequence(&p);
    let b = poly::cauchy_bound(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = poly::count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && poly::sign_at(&p, &hi) == 0 {
            out.push(RootInterval { lo: hi.clone(), hi });
            continue;
        }
        if n == 1 && &hi - &lo <= *width {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Whether the real root isolated by `iv` (a root of `p`) is also a root of `h`.
fn vanishes_at(h: &[Rational], p: &[Rational], iv: &RootInterval) -> bool {
    if iv.is_exact() {
        return poly::eval(h, &iv.lo).is_zero();
    }
    let g = poly::gcd(h, p);
    match poly::degree(&g) {
        None => true,
        Some(0) => false,
        Some(_) => poly::count_roots(&poly::sturm_sequence(&g), &iv.lo, &iv.hi) > 0,
    }
}

/// Sign of `h` at the root of `p` isolated by `iv`, given that `h` does not vanish there.
fn sign_at(h: &[Rational], p: &[Rational], iv: &RootInterval) -> i32 {
    let sgn = |v: Rational| if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
    if iv.is_exact() {
        return sgn(poly::eval(h, &iv.lo));
    }
    let hs = poly::sturm_sequence(&poly::squarefree_part(h));
    let ps = poly::sturm_sequence(&poly::squarefree_part(p));
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    loop {
        let vh = poly::eval(h, &hi);
        if !vh.is_zero() && poly::count_roots(&hs, &lo, &hi) == 0 {
            return sgn(vh);
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if poly::eval(p, &mid).is_zero() {
            return sgn(poly::eval(h, &mid));
        }
        if poly::count_roots(&ps, &lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberKind {
    Acnode,
    Crunode,
    Cusp,
}

impl FiberKind {
    /// Euler characteristic of the real fiber.
    pub fn euler(self) -> i64 {
        match self {
            FiberKind::Acnode => 1,
            FiberKind::Crunode => -1,
            FiberKind::Cusp => 0,
        }
    }
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberKind::Acnode => "acnode",
            FiberKind::Crunode => "crunode",
            FiberKind::Cusp => "cusp",
        })
    }
}

/// Position of a singular fiber on the base line: x/y in an interval, or the point y = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasePoint {
    Finite(RootInterval),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularFiber {
    pub at: BasePoint,
    pub kind: FiberKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DP1Surface {
    f4: BinaryForm,
    f6: BinaryForm,
}

impl DP1Surface {
    pub fn new(f4: BinaryForm, f6: BinaryForm) -> Result<Self, Dp1Error> {
        if f4.degree() != 4 || f6.degree() != 6 {
            return Err(Dp1Error::BadDegrees(f4.degree(), f6.degree()));
        }
        if !f4.is_rational() || !f6.is_rational() {
            return Err(Dp1Error::NotRational);
        }
        let s = DP1Surface { f4, f6 };
        if s.discriminant().is_zero() {
            return Err(Dp1Error::ZeroDiscriminant);
        }
        Ok(s)
    }

    pub fn from_ints(f4: &[i64], f6: &[i64]) -> Result<Self, Dp1Error> {
        Self::new(BinaryForm::from_ints(f4), BinaryForm::from_ints(f6))
    }

    pub fn f4(&self) -> &BinaryForm {
        &self.f4
    }

    pub fn f6(&self) -> &BinaryForm {
        &self.f6
    }

    /// 4 f4³ + 27 f6².
    pub fn discriminant(&self) -> BinaryForm {
        let a = self.f4.pow(3).scale(&4.into());
        let b = self.f6.pow(2).scale(&27.into());
        a.add(&b)
    }

    /// No repeated linear factor over C, including at y = 0.
    pub fn is_squarefree(&self) -> bool {
        let d = self.discriminant();
        let p = dehomogenize(&d);
        let inf = d.degree() - poly::degree(&p).unwrap_or(0);
        inf <= 1 && poly::degree(&poly::gcd(&p, &poly::derivative(&p))) == Some(0)
    }

    /// Same surface after (x, y) ↦ (a x + b y, c x + d y).
    pub fn transform(&self, m: &Matrix<Rational>) -> Result<DP1Surface, Dp1Error> {
        let m = m.map(crate::CycloNum::from_rational);
        DP1Surface::new(self.f4.substitute(&m), self.f6.substitute(&m))
    }
}

/// F(t, 1), lowest degree first.
fn dehomogenize(f: &BinaryForm) -> Poly {
    let qs = f.rational_coeffs().expect("rational form");
    poly::trim(qs.into_iter().rev().collect())
}

/// F(1, u), lowest degree first.
fn dehomogenize_at_infinity(f: &BinaryForm) -> Poly {
    poly::trim(f.rational_coeffs().expect("rational form"))
}

fn order_at_zero(p: &[Rational]) -> usize {
    p.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX)
}

fn divides(d: &[Rational], p: &[Rational]) -> bool {
    poly::rem(p, d).is_empty()
}

/// Every repeated root of the discriminant (over C, and at y = 0) is a double root
/// where f4 vanishes and f6 vanishes simply.
fn only_cusps_repeated(s: &DP1Surface) -> bool {
    let d = s.discriminant();
    let p = dehomogenize(&d);
    let rep = poly::gcd(&p, &poly::derivative(&p));
    if poly::degree(&rep).unwrap_or(0) > 0 {
        let f4 = dehomogenize(&s.f4);
        let f6 = dehomogenize(&s.f6);
        let simple = poly::degree(&poly::gcd(&rep, &poly::derivative(&rep))) == Some(0);
        let f6_simple = poly::degree(&poly::gcd(&rep, &poly::derivative(&f6))) == Some(0);
        if !(simple && divides(&rep, &f4) && divides(&rep, &f6) && f6_simple) {
            return false;
        }
    }
    let m = order_at_zero(&dehomogenize_at_infinity(&d));
    m <= 1
        || (m == 2
            && order_at_zero(&dehomogenize_at_infinity(&s.f4)) >= 1
            && order_at_zero(&dehomogenize_at_infinity(&s.f6)) == 1)
}

fn node_kind(f6_sign: i32) -> FiberKind {
    match f6_sign {
        0 => FiberKind::Cusp,
        s if s > 0 => FiberKind::Crunode,
        _ => FiberKind::Acnode,
    }
}

/// Real singular fibers with their kind. Repeated roots of the discriminant are
/// allowed only at simple cusps (f4 = 0 and f6 with a simple zero). At a node, f6 > 0
/// gives a crunode and f6 < 0 an acnode.
pub fn classify_fibers(s: &DP1Surface) -> Result<Vec<SingularFiber>, Dp1Error> {
    if !only_cusps_repeated(s) {
        return Err(Dp1Error::NonSquarefreeDiscriminant);
    }
    let width = Rational::new(1.into(), 1024.into());
    let d = s.discriminant();
    let p = dehomogenize(&d);
    let f6 = dehomogenize(&s.f6);
    let mut out = Vec::new();
    for iv in isolate_real_roots(&p, &width) {
        let sign = if vanishes_at(&f6, &p, &iv) { 0 } else { sign_at(&f6, &p, &iv) };
        out.push(SingularFiber { at: BasePoint::Finite(iv), kind: node_kind(sign) });
    }
    if order_at_zero(&dehomogenize_at_infinity(&d)) > 0 {
        // f6 has even degree, so its sign at [1 : 0] is that of the x^6 coefficient
        let lead = &dehomogenize_at_infinity(&s.f6)[0];
        let sign = if lead.is_zero() { 0 } else if lead.is_positive() { 1 } else { -1 };
        out.push(SingularFiber { at: BasePoint::Infinity, kind: node_kind(sign) });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Rational,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub fibers: Vec<SingularFiber>,
    pub acnodes: usize,
    pub crunodes: usize,
    pub euler: i64,
    pub verdict: Verdict,
}

/// Euler characteristic of the real locus of the blown-up pencil: #acnodes − #crunodes.
/// A negative value certifies a connected real locus.
pub fn euler_heuristic(s: &DP1Surface) -> Result<EulerReport, Dp1Error> {
    let fibers = classify_fibers(s)?;
    let count = |k| fibers.iter().filter(|f| f.kind == k).count();
    let (acnodes, crunodes) = (count(FiberKind::Acnode), count(FiberKind::Crunode));
    let euler: i64 = fibers.iter().map(|f| f.kind.euler()).sum();
    let verdict = if euler < 0 { Verdict::Rational } else { Verdict::Inconclusive };
    Ok(EulerReport { fibers, acnodes, crunodes, euler, verdict })
}

/// A group acting on the degree-1 surface through its action on the pencil's base.
#[derive(Clone, Debug)]
pub struct Dp1Group {
    pub planar: PointGroup2D,
    pub contains_bertini: bool,
}

impl Dp1Group {
    /// Lift fixing w, so that −I on (x, y) acts as the Bertini involution.
    pub fn standard_lift(planar: PointGroup2D) -> Self {
        let minus = Matrix::identity(2).map(|c: &crate::CycloNum| -c);
        let contains_bertini = planar.contains(&minus);
        Dp1Group { planar, contains_bertini }
    }
}

/// Rows of the list of groups acting minimally on degree-1 surfaces, by name and planar
/// group: Z/2 (Bertini only), Z/4, Z/6, (Z/2)², D_4, D_6.
pub const TABLE8_ROWS: [(&str, &str); 6] =
    [("Z/2", "z2"), ("Z/4", "z4"), ("Z/6", "z6"), ("(Z/2)^2", "d2"), ("D_4", "d4"), ("D_6", "d6")];

pub fn table8_group(name: &str) -> Option<Dp1Group> {
    let (_, g) = TABLE8_ROWS.iter().find(|(n, _)| *n == name)?;
    Some(Dp1Group::standard_lift(PointGroup2D::parse(g)?))
}

/// Whether the group preserves the surface and contains the Bertini involution, which
/// leaves invariant Picard rank one.
pub fn table8_certify(group: &Dp1Group, s: &DP1Surface) -> bool {
    group.contains_bertini && is_invariant(&group.planar, &s.f4) && is_invariant(&group.planar, &s.f6)
}

/// Six exceptional classes with H_i·H_{i+1} = 0, H_i·H_{i+2} = 2, H_i·H_{i+3} = 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarConfiguration {
    pub classes: [LatticeClass; 6],
}

impl StarConfiguration {
    /// The configuration determined by two disjoint classes H_1, H_2, if it exists.
    pub fn from_pair(lat: &PicardLattice, h1: &LatticeClass, h2: &LatticeClass) -> Option<Self> {
        let k = lat.canonical();
        let h3 = k.scale(-1).sub(h1).add(h2);
        let h4 = k.scale(-2).sub(h1);
        let h5 = k.scale(-2).sub(h2);
        let h6 = k.scale(-2).sub(&h3);
        let c = StarConfiguration { classes: [h1.clone(), h2.clone(), h3, h4, h5, h6] };
        c.is_valid(lat).then_some(c)
    }

    pub fn is_valid(&self, lat: &PicardLattice) -> bool {
        let h = &self.classes;
        let k = lat.canonical();
        let exceptional = h.iter().all(|x| lat.dot(&x.0, &x.0) == -1 && lat.k_dot(&x.0) == -1);
        let pattern = (0..6).all(|i| {
            lat.dot(&h[i].0, &h[(i + 1) % 6].0) == 0
                && lat.dot(&h[i].0, &h[(i + 2) % 6].0) == 2
                && lat.dot(&h[i].0, &h[(i + 3) % 6].0) == 3
        });
        let sums = (0..6).all(|i| {
            h[i].add(&h[(i + 3) % 6]) == k.scale(-2) && h[i].add(&h[(i + 2) % 6]).add(&h[(i + 4) % 6]) == k.scale(-3)
        });
        exceptional && pattern && sums
    }

    pub fn class_set(&self) -> BTreeSet<LatticeClass> {
        self.classes.iter().cloned().collect()
    }

    /// H_i·H'_j = 1 for all 36 pairs.
    pub fn asynchronized_with(&self, lat: &PicardLattice, other: &StarConfiguration) -> bool {
        self.classes.iter().all(|a| other.classes.iter().all(|b| lat.dot(&a.0, &b.0) == 1))
    }

    /// H_i + K for i = 1, 2.
    pub fn kperp_pair(&self, lat: &PicardLattice) -> [LatticeClass; 2] {
        let k = lat.canonical();
        [self.classes[0].add(&k), self.classes[1].add(&k)]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StarSearch {
    pub fixed_classes: usize,
    /// Two configurations fixed pointwise, then two on which g acts by H_i ↦ H_{i+2}.
    pub configurations: Vec<StarConfiguration>,
    pub pairwise_asynchronized: bool,
    /// Matrix of g on K⊥ ⊗ Q in the basis a_1, a_2, b_1, b_2, c_1, c_2, d_1, d_2.
    #[serde(skip)]
    pub block_matrix: Matrix<Rational>,
}

/// I_4 ⊕ [[−1, −1], [1, 0]] ⊕ [[−1, −1], [1, 0]].
pub fn expected_block_matrix() -> Matrix<Rational> {
    let mut m = Matrix::<Rational>::identity(8);
    for b in [4, 6] {
        let q = |v: i64| Rational::from_integer(v.into());
        m[(b, b)] = q(-1);
        m[(b, b + 1)] = q(-1);
        m[(b + 1, b)] = q(1);
        m[(b + 1, b + 1)] = q(0);
    }
    m
}

pub fn find_star_configurations(lat: &PicardLattice, g: &Isometry) -> Result<StarSearch, Dp1Error> {
    if lat.degree() != 1 || g.dim() != lat.rank() || g.order() != 3 || g.trace() - 1 != 2 {
        return Err(Dp1Error::NotTypeA2Squared);
    }
    let lines = lat.lines();
    let fixed_classes = lines.iter().filter(|l| g.apply_class(l) == **l).count();

    let mut seen = BTreeSet::new();
    let mut fixed = Vec::new();
    let mut moved = Vec::new();
    for h1 in lines {
        for h2 in lines {
            if lat.dot(&h1.0, &h2.0) != 0 {
                continue;
            }
            let Some(c) = StarConfiguration::from_pair(lat, h1, h2) else { continue };
            let set = c.class_set();
            let image: BTreeSet<_> = set.iter().map(|x| g.apply_class(x)).collect();
            if image != set || !seen.insert(set) {
                continue;
            }
            if c.classes.iter().all(|x| g.apply_class(x) == *x) {
                fixed.push(c);
            } else {
                // renumber so that g(H_1) = H_3
                let h1 = &c.classes[0];
                let img = g.apply_class(h1);
                let c = if img == c.classes[2] {
                    c
                } else {
                    StarConfiguration::from_pair(lat, h1, &c.classes[5]).expect("reversed numbering")
                };
                debug_assert_eq!(g.apply_class(&c.classes[0]), c.classes[2]);
                moved.push(c);
            }
        }
    }
    let total = fixed.len() + moved.len();
    if fixed.len() != 2 || moved.len() != 2 {
        return Err(Dp1Error::UnexpectedConfigurations(total));
    }
    let configurations: Vec<_> = fixed.into_iter().chain(moved).collect();
    let pairwise_asynchronized =
        (0..4).all(|i| (i + 1..4).all(|j| configurations[i].asynchronized_with(lat, &configurations[j])));

    let basis: Vec<LatticeClass> = configurations.iter().flat_map(|c| c.kperp_pair(lat)).collect();
    let to_q = |c: &LatticeClass| c.0.iter().map(|&v| Rational::from_integer(v.into())).collect::<Vec<_>>();
    let b = Matrix::from_cols(&basis.iter().map(to_q).collect::<Vec<_>>());
    let gb = Matrix::from_cols(&basis.iter().map(|c| to_q(&g.apply_class(c))).collect::<Vec<_>>());
    // solve B X = g B by least squares over the 8 columns: (BᵀB) X = Bᵀ g B
    let bt = b.transpose();
    let block_matrix = bt.mul(&b).inverse().ok_or(Dp1Error::UnexpectedConfigurations(total))?.mul(&bt.mul(&gb));
    Ok(StarSearch { fixed_classes, configurations, pairwise_asynchronized, block_matrix })
}

/// Product of the rotations in two orthogonal A_2 root systems.
pub fn a2_squared_example(lat: &PicardLattice) -> Isometry {
    use crate::weyl::reflection_product;
    let e = |i: usize| lat.basis(i);
    let roots = [e(1).sub(&e(2)), e(2).sub(&e(3)), e(4).sub(&e(5)), e(5).sub(&e(6))];
    reflection_product(lat, &roots).expect("roots")
}
