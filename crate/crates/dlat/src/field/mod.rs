//! Exact arithmetic in the degree-6 real field Q(u, v) with u = cos(pi/7)
//! and v = sin(pi/7).
//!
//! Every element has a unique reduced form
//!
//! ```text
//!     a + b*u + c*u^2 + v*(d + e*u + f*u^2)
//! ```
//!
//! with rational coefficients. Products are reduced with the two relations
//! `8u^3 = -1 + 4u + 4u^2` (u is the root of `8t^3 - 4t^2 - 4t + 1` in
//! `[0.9, 0.91]`) and `v^2 = 1 - u^2`. Signs and numeric exports are decided
//! by certified rational interval refinement, so no floating-point value ever
//! feeds back into an exact decision.

mod interval;

pub mod hept;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use interval::{Enclosure, Interval};

/// Exact rational scalar used throughout the field layer.
///
/// `BigRational` already maintains the invariants the field needs: lowest
/// terms and a positive denominator.
pub type Rational = BigRational;

/// Convenience constructor for `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rational with zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Errors from exact field operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("inversion of zero field element")]
    DivisionByZero,
    #[error("malformed field element: {0}")]
    Parse(String),
}

/// An element of Q(u, v) stored as six rational coordinates in the basis
/// `[1, u, u^2, v, u*v, u^2*v]`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    c: [Rational; 6],
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            c: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The generator u = cos(pi/7).
    pub fn u() -> Self {
        let mut x = Self::zero();
        x.c[1] = Rational::one();
        x
    }

    /// The generator v = sin(pi/7).
    pub fn v() -> Self {
        let mut x = Self::zero();
        x.c[3] = Rational::one();
        x
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut x = Self::zero();
        x.c[0] = q;
        x
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    /// Builds `(s/t) * (c0 + c1*u + c2*u^2) * v^(if times_v {1} else {0})`.
    ///
    /// This is the shape in which all tabulated constants are written.
    pub fn from_poly(s: i64, t: i64, coeffs: [i64; 3], times_v: bool) -> Self {
        let scale = rat(s, t);
        let mut x = Self::zero();
        let base = if times_v { 3 } else { 0 };
        for (k, &ck) in coeffs.iter().enumerate() {
            x.c[base + k] = &scale * rat(ck, 1);
        }
        x
    }

    pub fn coefficients(&self) -> &[Rational; 6] {
        &self.c
    }

    pub fn from_coefficients(c: [Rational; 6]) -> Self {
        FieldElement { c }
    }

    /// Zero test. Exact: the basis is a Q-basis, so an element vanishes iff
    /// all six coordinates do.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|q| q.is_zero())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            c: std::array::from_fn(|k| &self.c[k] * q),
        }
    }

    fn a_part(&self) -> [Rational; 3] {
        [self.c[0].clone(), self.c[1].clone(), self.c[2].clone()]
    }

    fn b_part(&self) -> [Rational; 3] {
        [self.c[3].clone(), self.c[4].clone(), self.c[5].clone()]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a1 = self.a_part();
        let b1 = self.b_part();
        let a2 = other.a_part();
        let b2 = other.b_part();

        // (A1 + v B1)(A2 + v B2) = A1 A2 + (1 - u^2) B1 B2 + v (A1 B2 + B1 A2)
        let a1a2 = reduce(poly_mul(&a1, &a2));
        let b1b2 = reduce(poly_mul(&b1, &b2));
        let one_minus_u2 = [Rational::one(), Rational::zero(), -Rational::one()];
        let real = poly_add(&a1a2, &reduce(poly_mul(&b1b2, &one_minus_u2)));
        let imag = poly_add(&reduce(poly_mul(&a1, &b2)), &reduce(poly_mul(&b1, &a2)));

        FieldElement {
            c: [
                real[0].clone(),
                real[1].clone(),
                real[2].clone(),
                imag[0].clone(),
                imag[1].clone(),
                imag[2].clone(),
            ],
        }
    }

    /// Exact inverse, obtained by solving the 6x6 rational system of
    /// multiplication-by-self on the basis.
    pub fn invert(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // Column j of m is self * basis_j in basis coordinates.
        let mut m = vec![vec![Rational::zero(); 6]; 6];
        for j in 0..6 {
            let mut basis = Self::zero();
            basis.c[j] = Rational::one();
            let col = self.mul(&basis);
            for i in 0..6 {
                m[i][j] = col.c[i].clone();
            }
        }
        let mut rhs = vec![Rational::zero(); 6];
        rhs[0] = Rational::one();
        let sol = solve_rational(&mut m, &mut rhs)
            .expect("multiplication matrix of a nonzero field element is invertible");
        Ok(FieldElement {
            c: [
                sol[0].clone(),
                sol[1].clone(),
                sol[2].clone(),
                sol[3].clone(),
                sol[4].clone(),
                sol[5].clone(),
            ],
        })
    }

    /// Certified sign: -1, 0, or +1.
    ///
    /// Zero is a coordinate test; otherwise the element is evaluated over a
    /// rational enclosure of (u, v) whose width is halved until the interval
    /// excludes zero. Termination for nonzero input follows from uniqueness
    /// of the representation.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = 32usize;
        loop {
            let enc = Enclosure::with_precision(bits);
            let iv = self.eval_interval(&enc);
            if iv.lo.is_positive() {
                return 1;
            }
            if iv.hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(
                bits <= 1 << 16,
                "sign refinement failed to separate a nonzero element from zero"
            );
        }
    }

    fn eval_interval(&self, enc: &Enclosure) -> Interval {
        let u = enc.u();
        let a = Interval::point(self.c[0].clone())
            .add(&u.mul(&Interval::point(self.c[1].clone()).add(&u.mul(&Interval::point(
                self.c[2].clone(),
            )))));
        let b = Interval::point(self.c[3].clone())
            .add(&u.mul(&Interval::point(self.c[4].clone()).add(&u.mul(&Interval::point(
                self.c[5].clone(),
            )))));
        a.add(&b.mul(&enc.v()))
    }

    /// Numeric export with a rigorous absolute error bound.
    ///
    /// The enclosure is refined until its width is below `10^-(precision+1)`,
    /// then the midpoint is rendered to decimal and parsed back, which rounds
    /// correctly. The returned bound covers both the interval half-width and
    /// the final conversion; it is at most `10^-precision` for any precision
    /// a f64 can honor (<= 15 digits).
    pub fn to_float(&self, precision: u32) -> (f64, f64) {
        assert!(precision >= 1, "precision must be at least 1");
        let target = Rational::new(BigInt::one(), BigInt::from(10u8).pow(precision + 1));
        let mut bits = (4 * (precision + 2)) as usize;
        let iv = loop {
            let enc = Enclosure::with_precision(bits);
            let iv = self.eval_interval(&enc);
            if &iv.hi - &iv.lo <= target {
                break iv;
            }
            bits *= 2;
        };
        let mid = (&iv.lo + &iv.hi) / rat(2, 1);
        let rendered = decimal_string(&mid, precision as usize + 3);
        let value: f64 = rendered.parse().expect("decimal rendering is parseable");
        let half_width = ((&iv.hi - &iv.lo) / rat(2, 1)).to_f64().unwrap_or(f64::MAX);
        let bound = half_width + 2.0 * 10f64.powi(-(precision as i32) - 3) + value.abs() * f64::EPSILON;
        (value, bound)
    }

    /// Plain f64 value, accurate to roughly one ulp. Used at the boundary
    /// between the exact layer and floating-point geometry.
    pub fn to_f64(&self) -> f64 {
        self.to_float(15).0
    }

    /// Parses the serialized form: six `"p/q"` strings in basis order.
    pub fn from_strings(parts: &[String]) -> Result<Self, FieldError> {
        if parts.len() != 6 {
            return Err(FieldError::Parse(format!(
                "expected 6 coordinates, got {}",
                parts.len()
            )));
        }
        let mut c = std::array::from_fn(|_| Rational::zero());
        for (k, s) in parts.iter().enumerate() {
            c[k] = parse_rational(s)?;
        }
        Ok(FieldElement { c })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(rational_string).collect()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[")?;
        let names = ["1", "u", "u^2", "v", "u*v", "u^2*v"];
        let mut first = true;
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", q, names[k])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        FieldElement::from_strings(&parts).map_err(D::Error::custom)
    }
}

/// A planar point with exact field coordinates. Enough 2D machinery for the
/// heptagon constructions: differences, convex combinations, cross products,
/// and shoelace areas.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl ExactPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        ExactPoint { x, y }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExactPoint::new(&self.x - &other.x, &self.y - &other.y)
    }

    /// `(1-t)*p + t*q` with exact t.
    pub fn lerp(p: &Self, q: &Self, t: &FieldElement) -> Self {
        let one_minus = &FieldElement::one() - t;
        ExactPoint::new(
            &one_minus.mul(&p.x) + &t.mul(&q.x),
            &one_minus.mul(&p.y) + &t.mul(&q.y),
        )
    }

    pub fn cross(&self, other: &Self) -> FieldElement {
        &self.x.mul(&other.y) - &self.y.mul(&other.x)
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64(), self.y.to_f64()]
    }
}

/// Exact shoelace area of a simple polygon given counterclockwise.
pub fn exact_polygon_area(vertices: &[ExactPoint]) -> FieldElement {
    let n = vertices.len();
    let mut twice = FieldElement::zero();
    for i in 0..n {
        twice = &twice + &vertices[i].cross(&vertices[(i + 1) % n]);
    }
    twice.scale(&rat(1, 2))
}

fn poly_mul(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 5] {
    let mut out = std::array::from_fn(|_| Rational::zero());
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn poly_add(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|k| &a[k] + &b[k])
}

/// Reduces a degree-4 polynomial in u to degree 2 with
/// `u^3 = (-1 + 4u + 4u^2)/8` and `u^4 = (-1 + 2u + 12u^2)/16`.
fn reduce(p: [Rational; 5]) -> [Rational; 3] {
    let r0 = &p[0] - &(&p[3] * rat(1, 8)) - &(&p[4] * rat(1, 16));
    let r1 = &p[1] + &(&p[3] * rat(1, 2)) + &(&p[4] * rat(1, 8));
    let r2 = &p[2] + &(&p[3] * rat(1, 2)) + &(&p[4] * rat(3, 4));
    [r0, r1, r2]
}

/// Gaussian elimination over the rationals. Returns `None` for a singular
/// matrix. `m` and `rhs` are consumed as scratch space.
pub(crate) fn solve_rational(
    m: &mut [Vec<Rational>],
    rhs: &mut [Rational],
) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for k in col..n {
            m[col][k] = &m[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for k in col..n {
                m[r][k] = &m[r][k] - &(&factor * &m[col][k]);
            }
            rhs[r] = &rhs[r] - &(&factor * &rhs[col]);
        }
    }
    Some(rhs.to_vec())
}

fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let bad = |_| FieldError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(bad)?;
            let q: BigInt = q.trim().parse().map_err(bad)?;
            if q.is_zero() {
                return Err(FieldError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(bad)?;
            Ok(Rational::from_integer(p))
        }
    }
}

fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `x` as a plain decimal string with `digits` fractional digits
/// (truncated toward zero), suitable for correctly-rounded f64 parsing.
fn decimal_string(x: &Rational, digits: usize) -> String {
    let negative = x.is_negative();
    let abs = x.abs();
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let s = scaled.to_string();
    let (int_part, frac_part) = if s.len() > digits {
        let split = s.len() - digits;
        (s[..split].to_string(), s[split..].to_string())
    } else {
        ("0".to_string(), format!("{s:0>digits$}"))
    };
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}
