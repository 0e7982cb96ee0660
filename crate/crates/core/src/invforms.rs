//! Binary forms and the invariants of the standard two-dimensional representations of
//! Z/n and D_n.
//!
//! A form of degree k is stored by its coefficients on x^k, x^{k-1}y, ..., y^k. A
//! matrix M acts by substitution, (f·M)(x, y) = f(M (x, y)^T).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exactnum::{cyclo_make, CycloNum, Rational};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<CycloNum>,
}

impl BinaryForm {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<CycloNum>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| CycloNum::from_int(c)).collect())
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().map(CycloNum::from_rational).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![CycloNum::zero(); degree + 1])
    }

    /// x^a y^b.
    pub fn monomial(a: usize, b: usize) -> Self {
        let mut f = Self::zero(a + b);
        f.coeffs[b] = CycloNum::one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &CycloNum) -> BinaryForm {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![CycloNum::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// f(M (x, y)^T) for a 2×2 matrix M.
    pub fn substitute(&self, m: &Matrix<CycloNum>) -> BinaryForm {
        let k = self.degree();
        let lx = BinaryForm::new(vec![m[(0, 0)].clone(), m[(0, 1)].clone()]);
        let ly = BinaryForm::new(vec![m[(1, 0)].clone(), m[(1, 1)].clone()]);
        let px = powers(&lx, k);
        let py = powers(&ly, k);
        let mut out = BinaryForm::zero(k);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&px[k - j].mul(&py[j]).scale(c));
        }
        out
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.to_rational()).collect()
    }

    /// Integer coefficients, if all coefficients are integers that fit in i64.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.rational_coeffs()?
            .iter()
            .map(|q| if q.is_integer() { q.numer().to_i64() } else { None })
            .collect()
    }

    /// Rational multiple with coprime integer coefficients and a positive leading
    /// coefficient. Forms with irrational coefficients come back unchanged.
    pub fn primitive(&self) -> BinaryForm {
        let Some(qs) = self.rational_coeffs() else {
            return self.clone();
        };
        let Some(lead) = qs.iter().find(|q| !q.is_zero()) else {
            return self.clone();
        };
        let den = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let ints: Vec<BigInt> = qs.iter().map(|q| (q * Rational::from(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        if lead.is_negative() {
            g = -g;
        }
        Self::new(ints.into_iter().map(|n| CycloNum::from_rational(&Rational::from(n / &g))).collect())
    }
}

fn powers(l: &BinaryForm, k: usize) -> Vec<BinaryForm> {
    let mut out = vec![BinaryForm::from_ints(&[1])];
    for i in 0..k {
        out.push(out[i].mul(l));
    }
    out
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.degree();
        let var = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = format!("{}{}", var("x", k - j), var("y", j));
            let (neg, mag) = match c.to_rational() {
                Some(q) if q.is_negative() => (true, CycloNum::from_rational(&-q)),
                _ => (false, c.clone()),
            };
            let coeff = if mag.is_one() && !mono.is_empty() {
                String::new()
            } else if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{coeff}{mono}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    Dihedral,
}

/// Z/n generated by the rotation through 2π/n, or D_n generated by that rotation and
/// the reflection diag(1, −1). Entries live in Q(ζ_m), m = lcm(4, n).
#[derive(Clone, Debug)]
pub struct PointGroup2D {
    pub kind: GroupKind,
    pub n: u32,
    pub matrices: Vec<Matrix<CycloNum>>,
}

impl PointGroup2D {
    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1, "group order parameter must be positive");
        let r = rotation(n);
        let mut matrices = vec![Matrix::identity(2)];
        for i in 1..n as usize {
            matrices.push(matrices[i - 1].mul(&r));
        }
        PointGroup2D { kind: GroupKind::Cyclic, n, matrices }
    }

    pub fn dihedral(n: u32) -> Self {
        let mut g = Self::cyclic(n);
        let s = reflection();
        let reflected: Vec<_> = g.matrices.iter().map(|m| m.mul(&s)).collect();
        g.matrices.extend(reflected);
        g.kind = GroupKind::Dihedral;
        g
    }

    /// Parses names like "z4" or "d6".
    pub fn parse(name: &str) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        let (kind, rest) = lower.split_at(lower.len().min(1));
        let n: u32 = rest.parse().ok().filter(|&n| n >= 1)?;
        match kind {
            "z" => Some(Self::cyclic(n)),
            "d" => Some(Self::dihedral(n)),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            GroupKind::Cyclic => format!("Z/{}", self.n),
            GroupKind::Dihedral => format!("D_{}", self.n),
        }
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn generators(&self) -> Vec<Matrix<CycloNum>> {
        let mut g = vec![rotation(self.n)];
        if self.kind == GroupKind::Dihedral {
            g.push(reflection());
        }
        g
    }

    pub fn contains(&self, m: &Matrix<CycloNum>) -> bool {
        self.matrices.contains(m)
    }
}

fn rotation(n: u32) -> Matrix<CycloNum> {
    let m = (n as u64).lcm(&4) as u32;
    let z = cyclo_make(m, (m / n) as i64);
    let zi = cyclo_make(m, -((m / n) as i64));
    let i = cyclo_make(m, (m / 4) as i64);
    let half = CycloNum::from_rational(&Rational::new(1.into(), 2.into()));
    let cos = &(&z + &zi) * &half;
    let sin = &(&(&z - &zi) * &half) * &i.inv().expect("i is a unit");
    Matrix::from_rows(vec![vec![cos.clone(), -&sin], vec![sin, cos]])
}

fn reflection() -> Matrix<CycloNum> {
    Matrix::from_rows(vec![
        vec![CycloNum::one(), CycloNum::zero()],
        vec![CycloNum::zero(), CycloNum::from_int(-1)],
    ])
}

/// Matrix of f ↦ f·M on degree-k coefficient vectors (column j is the image of x^{k-j}y^j).
pub fn substitution_matrix(m: &Matrix<CycloNum>, k: usize) -> Matrix<CycloNum> {
    let cols: Vec<Vec<CycloNum>> = (0..=k).map(|j| BinaryForm::monomial(k - j, j).substitute(m).coeffs).collect();
    Matrix::from_cols(&cols)
}

/// Group average of f.
pub fn reynolds(g: &PointGroup2D, f: &BinaryForm) -> BinaryForm {
    let mut acc = BinaryForm::zero(f.degree());
    for m in &g.matrices {
        acc = acc.add(&f.substitute(m));
    }
    let inv = CycloNum::from_rational(&Rational::new(1.into(), (g.order() as i64).into()));
    acc.scale(&inv)
}

pub fn is_invariant(g: &PointGroup2D, f: &BinaryForm) -> bool {
    g.matrices.iter().all(|m| &f.substitute(m) == f)
}

/// Basis of the degree-k invariants: the column space of the Reynolds operator in
/// reduced echelon form, each row scaled to coprime integers.
pub fn invariant_subspace(g: &PointGroup2D, k: usize) -> Vec<BinaryForm> {
    let images: Vec<Vec<CycloNum>> = (0..=k).map(|j| reynolds(g, &BinaryForm::monomial(k - j, j)).coeffs).collect();
    echelon_basis(images)
}

/// Reduced echelon basis of the span of the given coefficient vectors, scaled to
/// primitive integer forms where rational.
pub fn echelon_basis(vectors: Vec<Vec<CycloNum>>) -> Vec<BinaryForm> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors).rref();
    (0..pivots.len()).map(|i| BinaryForm::new(r.row(i).to_vec()).primitive()).collect()
}

/// Dimension of the span of the given forms (all of one degree).
pub fn span_dim(forms: &[BinaryForm]) -> usize {
    if forms.is_empty() {
        return 0;
    }
    Matrix::from_rows(forms.iter().map(|f| f.coeffs.clone()).collect()).rank()
}

/// Whether two lists of forms of the same degree span the same space.
pub fn same_span(a: &[BinaryForm], b: &[BinaryForm]) -> bool {
    let both: Vec<BinaryForm> = a.iter().chain(b).cloned().collect();
    let d = span_dim(&both);
    d == span_dim(a) && d == span_dim(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Real,
    Imag,
}

/// Re or Im of (x + iy)^n.
pub fn realpart_power(n: usize, part: Part) -> BinaryForm {
    let mut coeffs = vec![0i64; n + 1];
    let mut binom = 1i64;
    for (j, c) in coeffs.iter_mut().enumerate() {
        // i^j = ±1 or ±i
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        if (j % 2 == 0) == (part == Part::Real) {
            *c = sign * binom;
        }
        binom = binom * (n - j) as i64 / (j + 1) as i64;
    }
    BinaryForm::from_ints(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_orders() {
        for n in [1, 2, 3, 4, 5, 6, 8, 12] {
            let g = PointGroup2D::cyclic(n);
            assert_eq!(g.order(), n as usize);
            assert!(g.matrices[n as usize - 1].mul(&rotation(n)).is_identity());
        }
        assert_eq!(PointGroup2D::dihedral(6).order(), 12);
    }

    #[test]
    fn realpart_examples() {
        assert_eq!(realpart_power(2, Part::Real).integer_coeffs().unwrap(), vec![1, 0, -1]);
        assert_eq!(realpart_power(6, Part::Real).integer_coeffs().unwrap(), vec![1, 0, -15, 0, 15, 0, -1]);
        assert_eq!(realpart_power(1, Part::Imag).integer_coeffs().unwrap(), vec![0, 1]);
        assert_eq!(realpart_power(6, Part::Imag).integer_coeffs().unwrap(), vec![0, 6, 0, -20, 0, 6, 0]);
    }

    #[test]
    fn display() {
        assert_eq!(BinaryForm::from_ints(&[1, 0, -15, 0, 15, 0, -1]).to_string(), "x^6 - 15x^4y^2 + 15x^2y^4 - y^6");
        assert_eq!(BinaryForm::from_ints(&[0, 0]).to_string(), "0");
        assert_eq!(BinaryForm::from_ints(&[-2, 1]).to_string(), "-2x + y");
    }

    #[test]
    fn primitive_scaling() {
        let f = BinaryForm::from_rationals(&[Rational::new((-1).into(), 2.into()), Rational::zero(), Rational::new(3.into(), 4.into())]);
        assert_eq!(f.primitive().integer_coeffs().unwrap(), vec![2, 0, -3]);
    }

    #[test]
    fn parse_names() {
        assert_eq!(PointGroup2D::parse("d8").unwrap().order(), 16);
        assert_eq!(PointGroup2D::parse("Z6").unwrap().name(), "Z/6");
        assert!(PointGroup2D::parse("q4").is_none());
        assert!(PointGroup2D::parse("z0").is_none());
        assert!(PointGroup2D::parse("").is_none());
    }
}
