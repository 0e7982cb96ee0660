//! Exact arithmetic over Q and the cyclotomic fields Q(ζ_n).
//!
//! A [`CycloNum`] is stored as the canonical residue of a polynomial in ζ modulo the
//! n-th cyclotomic polynomial, written as integer numerators over one positive common
//! denominator. Mixed-conductor arithmetic embeds both operands into the lcm field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Conductor large enough to hold ζ_3, ζ_5 and ζ_8 at once.
pub const DEFAULT_CONDUCTOR: u32 = 120;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("element is not fixed by complex conjugation")]
    NonRealInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out as usize
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial,
/// via Φ_n = Π_{d|n} (x^d − 1)^{μ(n/d)}.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num: Vec<i64> = vec![1];
    let mut den: Vec<i64> = vec![1];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul_i64(&num, &f),
            -1 => den = poly_mul_i64(&den, &f),
            _ => {}
        }
    }
    poly_div_exact_i64(&num, &den)
}

fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic (up to sign of leading ±1) integer polynomial with zero remainder.
fn poly_div_exact_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db];
    debug_assert!(lead == 1 || lead == -1);
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db] * lead;
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0));
    q
}

/// The field Q(ζ_n): its conductor and the cyclotomic modulus.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u32,
    phi: Vec<i64>,
}

impl CycloField {
    pub fn new(n: u32) -> Arc<CycloField> {
        assert!(n >= 1, "conductor must be positive");
        Arc::new(CycloField {
            n,
            phi: cyclotomic_poly(n),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces an integer polynomial in ζ (any length) modulo Φ_n.
    fn reduce(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        let lead = self.phi[deg];
        for i in (deg..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let t = std::mem::take(&mut c[i]) * lead;
            for (j, p) in self.phi[..deg].iter().enumerate() {
                if *p != 0 {
                    c[i - deg + j] -= &t * *p;
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, BigInt::zero());
        c
    }

    fn monomial_poly(&self, k: i64) -> Vec<BigInt> {
        let n = self.n as i64;
        let e = k.rem_euclid(n) as usize;
        let mut c = vec![BigInt::zero(); e.max(self.degree()) + 1];
        c[e] = BigInt::one();
        self.reduce(c)
    }
}

/// An element of Q(ζ_n).
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

impl CycloNum {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> CycloNum {
        let mut x = CycloNum { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero_in(n: u32) -> CycloNum {
        let f = CycloField::new(n);
        let d = f.degree();
        CycloNum {
            field: f,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn from_rational_in(q: &Rational, n: u32) -> CycloNum {
        let mut x = CycloNum::zero_in(n);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x
    }

    pub fn from_rational(q: &Rational) -> CycloNum {
        CycloNum::from_rational_in(q, 1)
    }

    pub fn from_int(k: i64) -> CycloNum {
        CycloNum::from_rational(&rat_int(k))
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    /// Coefficients of 1, ζ, …, ζ^{φ(n)−1}.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The image of `self` in Q(ζ_n); `n` must be a multiple of the conductor.
    pub fn embed(&self, n: u32) -> CycloNum {
        if n == self.field.n {
            return self.clone();
        }
        assert!(n.is_multiple_of(self.field.n), "embedding needs m | n");
        let field = CycloField::new(n);
        self.embed_into(&field)
    }

    fn embed_into(&self, field: &Arc<CycloField>) -> CycloNum {
        if field.n == self.field.n {
            return self.clone();
        }
        let step = (field.n / self.field.n) as usize;
        let mut c = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + field.degree() + 1];
        for (k, a) in self.num.iter().enumerate() {
            c[k * step] = a.clone();
        }
        let num = field.reduce(c);
        CycloNum::from_parts(field.clone(), num, self.den.clone())
    }

    fn common(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
        if a.field.n == b.field.n {
            return (a.clone(), b.clone());
        }
        let n = lcm_u32(a.field.n, b.field.n);
        if n == a.field.n {
            (a.clone(), b.embed_into(&a.field))
        } else if n == b.field.n {
            (a.embed_into(&b.field), b.clone())
        } else {
            let f = CycloField::new(n);
            (a.embed_into(&f), b.embed_into(&f))
        }
    }

    fn add_same(&self, other: &CycloNum, sign: i32) -> CycloNum {
        let g = self.den.gcd(&other.den);
        let fa = &other.den / &g;
        let fb = &self.den / &g;
        let num = self
            .num
            .iter()
            .zip(other.num.iter())
            .map(|(x, y)| {
                if sign > 0 {
                    x * &fa + y * &fb
                } else {
                    x * &fa - y * &fb
                }
            })
            .collect();
        CycloNum::from_parts(self.field.clone(), num, &self.den * fa)
    }

    fn mul_same(&self, other: &CycloNum) -> CycloNum {
        let d = self.num.len();
        let mut c = vec![BigInt::zero(); 2 * d.max(1) - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        let num = self.field.reduce(c);
        CycloNum::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Complex conjugation ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> CycloNum {
        let n = self.field.n as usize;
        let mut c = vec![BigInt::zero(); n.max(self.field.degree() + 1)];
        for (k, a) in self.num.iter().enumerate() {
            if !a.is_zero() {
                c[(n - k) % n] += a;
            }
        }
        let num = self.field.reduce(c);
        CycloNum::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse by solving the linear system of multiplication by `self`.
    pub fn inv(&self) -> Result<CycloNum, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(CycloNum::from_rational_in(&q.recip(), self.field.n));
        }
        let d = self.field.degree();
        // columns: self * ζ^j
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for j in 0..d {
            let mono = CycloNum::from_parts(self.field.clone(), self.field.monomial_poly(j as i64), BigInt::one());
            let col = self.mul_same(&mono).coeffs();
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = Rational::one();
        let sol = solve_augmented(m).ok_or(ExactError::DivisionByZero)?;
        let mut den = BigInt::one();
        for s in &sol {
            den = den.lcm(s.denom());
        }
        let num = sol.iter().map(|s| s.numer() * (&den / s.denom())).collect();
        Ok(CycloNum::from_parts(self.field.clone(), num, den))
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::from_rational_in(&Rational::one(), self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating approximation of the real part under ζ ↦ exp(2πi/n).
    pub fn approx_re(&self) -> f64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) / den * (2.0 * std::f64::consts::PI * k as f64 / n).cos())
            .sum()
    }

    pub fn approx_im(&self) -> f64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) / den * (2.0 * std::f64::consts::PI * k as f64 / n).sin())
            .sum()
    }
}

/// ζ_n^k reduced modulo Φ_n.
pub fn cyclo_make(n: u32, k: i64) -> CycloNum {
    let field = CycloField::new(n);
    let num = field.monomial_poly(k);
    CycloNum::from_parts(field, num, BigInt::one())
}

pub fn conj(x: &CycloNum) -> CycloNum {
    x.conj()
}

/// Sign of a real element: exact zero test, then a float estimate with a safety margin,
/// then rational interval evaluation at doubling precision.
pub fn real_sign(x: &CycloNum) -> Result<i32, ExactError> {
    if !x.is_real() {
        return Err(ExactError::NonRealInput);
    }
    if x.is_zero() {
        return Ok(0);
    }
    if let Some(q) = x.to_rational() {
        return Ok(if q.is_positive() { 1 } else { -1 });
    }
    if let Some(den) = x.den.to_f64() {
        let mut approx = 0.0;
        let mut mass = 0.0;
        let n = x.field.n as f64;
        let mut ok = den.is_finite();
        for (k, c) in x.num.iter().enumerate() {
            match c.to_f64() {
                Some(v) if v.is_finite() => {
                    approx += v * (2.0 * std::f64::consts::PI * k as f64 / n).cos();
                    mass += v.abs();
                }
                _ => ok = false,
            }
        }
        if ok {
            let bound = mass * 1e-12;
            if approx.abs() > bound {
                return Ok(if approx > 0.0 { 1 } else { -1 });
            }
        }
    }
    Ok(interval_sign(x))
}

/// Sign of a nonzero real element by rational interval evaluation, doubling the
/// working precision until the enclosure excludes zero.
fn interval_sign(x: &CycloNum) -> i32 {
    let mut bits = 64u32;
    loop {
        let pi = pi_interval(bits);
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let n = x.field.n as i64;
        for (k, c) in x.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = Rational::new(c.clone(), x.den.clone());
            let (clo, chi) = cos_2pi_frac(k as i64, n, &pi, bits);
            if c.is_positive() {
                lo += &c * &clo;
                hi += &c * &chi;
            } else {
                lo += &c * &chi;
                hi += &c * &clo;
            }
        }
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        bits *= 2;
    }
}

fn floor_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let v = (q * Rational::from_integer(scale.clone())).floor();
    v / Rational::from_integer(scale)
}

fn ceil_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let v = (q * Rational::from_integer(scale.clone())).ceil();
    v / Rational::from_integer(scale)
}

/// Enclosure of arctan(1/m) from the alternating series.
fn atan_inv_interval(m: i64, bits: u32) -> (Rational, Rational) {
    let m2 = BigInt::from(m * m);
    let eps = Rational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut sum = Rational::zero();
    let mut pow = BigInt::from(m);
    let mut j: i64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &pow * BigInt::from(2 * j + 1));
        if term < eps {
            // alternating, decreasing: the next omitted term bounds the error
            let lo = if j % 2 == 0 { sum.clone() } else { &sum - &term };
            let hi = if j % 2 == 0 { &sum + &term } else { sum.clone() };
            return (floor_dyadic(&lo, bits + 2), ceil_dyadic(&hi, bits + 2));
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &m2;
        j += 1;
    }
}

fn pi_interval(bits: u32) -> (Rational, Rational) {
    let (a_lo, a_hi) = atan_inv_interval(5, bits + 6);
    let (b_lo, b_hi) = atan_inv_interval(239, bits + 6);
    let lo = rat_int(16) * a_lo - rat_int(4) * b_hi;
    let hi = rat_int(16) * a_hi - rat_int(4) * b_lo;
    (lo, hi)
}

/// Enclosure of cos(t) for a rational t in [0, 4] by a Taylor polynomial plus remainder.
fn cos_point(t: &Rational, bits: u32) -> (Rational, Rational) {
    let eps = Rational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let t2 = t * t;
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut j: i64 = 0;
    loop {
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &t2 / rat_int((2 * j + 1) * (2 * j + 2));
        j += 1;
        // once terms decrease, |remainder| <= next term
        if term.abs() < eps && j > 2 {
            let lo = &sum - &term;
            let hi = &sum + &term;
            return (floor_dyadic(&lo, bits + 2), ceil_dyadic(&hi, bits + 2));
        }
    }
}

/// Enclosure of cos(2πk/n).
fn cos_2pi_frac(k: i64, n: i64, pi: &(Rational, Rational), bits: u32) -> (Rational, Rational) {
    let mut k = k.rem_euclid(n);
    if 2 * k > n {
        k = n - k;
    }
    if k == 0 {
        return (Rational::one(), Rational::one());
    }
    if 4 * k == n {
        return (Rational::zero(), Rational::zero());
    }
    if 2 * k == n {
        return (-Rational::one(), -Rational::one());
    }
    // angle in (0, π); cos is decreasing there
    let f = rat(2 * k, n);
    let t_lo = &f * &pi.0;
    let t_hi = &f * &pi.1;
    let (_, c_hi) = cos_point(&t_lo, bits);
    let (c_lo, _) = cos_point(&t_hi, bits);
    (c_lo.max(-Rational::one()), c_hi.min(Rational::one()))
}

fn solve_augmented(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, w) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &f * w;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &CycloNum) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = CycloNum::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = Rational::new(c.clone(), self.den.clone());
            if k == 0 {
                parts.push(format!("{}", q));
            } else {
                parts.push(format!("{}*z{}^{}", q, self.field.n, k));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                if self.field.n == rhs.field.n {
                    f(self, rhs)
                } else {
                    let (a, b) = CycloNum::common(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_same(b, 1));
forward_binop!(Sub, sub, |a, b| a.add_same(b, -1));
forward_binop!(Mul, mul, |a, b| a.mul_same(b));
forward_binop!(Div, div, |a, b| a.mul_same(&b.inv().expect("division by zero")));

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -(self.clone())
    }
}

impl Zero for CycloNum {
    fn zero() -> CycloNum {
        CycloNum::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }
}

impl One for CycloNum {
    fn one() -> CycloNum {
        CycloNum::from_int(1)
    }
}

impl From<Rational> for CycloNum {
    fn from(q: Rational) -> CycloNum {
        CycloNum::from_rational(&q)
    }
}

impl From<i64> for CycloNum {
    fn from(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }
}

/// Parses a rational literal `p`, `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = |m: &str| ExactError::Parse(s.to_string(), m.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| err("bad numerator"))?;
    let q: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
    if q.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(p, q))
}

/// Parses expressions built from `p/q` and `z<n>^<k>` literals with `+`, `-`, `*` and
/// parentheses, e.g. `1/2 + 3*z5^2 - (z8^1 + z8^7)`. The result lives in Q(ζ_conductor)
/// when every literal's conductor divides it, otherwise in the lcm field.
pub fn parse_cyclo(s: &str, conductor: u32) -> Result<CycloNum, ExactError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        src: s,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(s.to_string(), "trailing input".into()));
    }
    let n = lcm_u32(v.conductor(), conductor.max(1));
    Ok(v.embed(n))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Zeta(u32, i64),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ExactError> {
    let err = |m: &str| ExactError::Parse(s.to_string(), m.to_string());
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "+-*()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == 'z' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: u32 = chars[start..i].iter().collect::<String>().parse().map_err(|_| err("bad conductor"))?;
            if n == 0 {
                return Err(err("conductor must be positive"));
            }
            let mut k = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                k = chars[start..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent"))?;
            }
            out.push(Tok::Zeta(n, k));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_rational(&lit)?));
        } else {
            return Err(err(&format!("unexpected character `{}`", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, m: &str) -> ExactError {
        ExactError::Parse(self.src.to_string(), m.to_string())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<CycloNum, ExactError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloNum, ExactError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycloNum, ExactError> {
        match self.peek().cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(CycloNum::from_rational(&q))
            }
            Some(Tok::Zeta(n, k)) => {
                self.pos += 1;
                Ok(cyclo_make(n, k))
            }
            _ => Err(self.err("expected a literal")),
        }
    }
}

/// Total order on reals of the same field, decided by [`real_sign`] of the difference.
pub fn real_cmp(a: &CycloNum, b: &CycloNum) -> Result<Ordering, ExactError> {
    Ok(match real_sign(&(a - b))? {
        1 => Ordering::Greater,
        -1 => Ordering::Less,
        _ => Ordering::Equal,
    })
}

/// Sign of a big integer as −1, 0, 1.
pub fn bigint_sign(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
