//! Rings of integers of quadratic fields Q(sqrt d).
//!
//! An element is stored as `a + b*w` where `w = sqrt d` when `d` is 2 or 3 mod 4
//! and `w = (1 + sqrt d)/2` when `d` is 1 mod 4.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Values of `d` the enumeration supports.
pub const ADMISSIBLE_D: [i64; 9] = [-11, -7, -3, -2, -1, 2, 3, 5, 6];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("d = {0} is not a squarefree integer other than 0 and 1")]
    NotSquarefree(i64),
    #[error("d = {0} is outside the supported set")]
    Inadmissible(i64),
    #[error("operands belong to different rings (d = {0} and d = {1})")]
    RingMismatch(i64, i64),
    #[error("coordinate overflow in quadratic integer arithmetic")]
    Overflow,
    #[error("cannot parse ring element {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaKind {
    /// `w = sqrt d`
    Sqrt,
    /// `w = (1 + sqrt d)/2`
    HalfInteger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    d: i64,
}

fn is_squarefree(d: i64) -> bool {
    let m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl Ring {
    /// Any squarefree `d` other than 0 and 1.
    pub fn new(d: i64) -> Result<Ring, RingError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(RingError::NotSquarefree(d));
        }
        Ok(Ring { d })
    }

    /// Like [`Ring::new`] but restricted to [`ADMISSIBLE_D`].
    pub fn admissible(d: i64) -> Result<Ring, RingError> {
        if !ADMISSIBLE_D.contains(&d) {
            return Err(RingError::Inadmissible(d));
        }
        Ring::new(d)
    }

    pub fn d(self) -> i64 {
        self.d
    }

    pub fn is_admissible(self) -> bool {
        ADMISSIBLE_D.contains(&self.d)
    }

    pub fn omega_kind(self) -> OmegaKind {
        if self.d.rem_euclid(4) == 1 {
            OmegaKind::HalfInteger
        } else {
            OmegaKind::Sqrt
        }
    }

    pub fn is_imaginary(self) -> bool {
        self.d < 0
    }

    /// `(p, q)` with `w^2 = p + q*w`.
    pub fn omega_square(self) -> (i64, i64) {
        match self.omega_kind() {
            OmegaKind::Sqrt => (self.d, 0),
            OmegaKind::HalfInteger => ((self.d - 1) / 4, 1),
        }
    }

    /// Trace and norm of `w`.
    pub fn omega_trace_norm(self) -> (i64, i64) {
        match self.omega_kind() {
            OmegaKind::Sqrt => (0, -self.d),
            OmegaKind::HalfInteger => (1, (1 - self.d) / 4),
        }
    }

    pub fn elem(self, a: i64, b: i64) -> QuadInt {
        QuadInt { ring: self, a, b }
    }

    pub fn int(self, a: i64) -> QuadInt {
        self.elem(a, 0)
    }

    pub fn zero(self) -> QuadInt {
        self.elem(0, 0)
    }

    pub fn one(self) -> QuadInt {
        self.elem(1, 0)
    }

    pub fn omega(self) -> QuadInt {
        self.elem(0, 1)
    }

    /// Elements of finite multiplicative order, sorted by `(b, a)`.
    pub fn torsion_units(self) -> Vec<QuadInt> {
        let mut u = vec![self.int(1), self.int(-1)];
        match self.d {
            -1 => {
                u.push(self.elem(0, 1));
                u.push(self.elem(0, -1));
            }
            -3 => {
                // w^2 = w - 1 and the sixth roots of unity are +-1, +-w, +-(w - 1)
                u.push(self.elem(0, 1));
                u.push(self.elem(0, -1));
                u.push(self.elem(-1, 1));
                u.push(self.elem(1, -1));
            }
            _ => {}
        }
        u.sort();
        u
    }

    /// Representative of the orbit of `x` under multiplication by torsion units.
    pub fn unit_orbit_min(self, x: QuadInt) -> QuadInt {
        self.torsion_units()
            .into_iter()
            .map(|u| u * x)
            .min()
            .unwrap_or(x)
    }

    /// Elements `x` with `house(x) < bound`, sorted by `(b, a)`.
    ///
    /// With `real_only` set the result is restricted to elements fixed by complex
    /// conjugation, which for real rings is every element.
    pub fn elements_below(self, bound: &BigRational, real_only: bool) -> Vec<QuadInt> {
        let bf = rat_to_f64(bound);
        let s = (self.d.unsigned_abs() as f64).sqrt();
        let scale = match self.omega_kind() {
            OmegaKind::Sqrt => 1.0,
            OmegaKind::HalfInteger => 2.0,
        };
        let bmax = (scale * bf / s).ceil() as i64 + 1;
        let amax = bf.ceil() as i64 + bmax + 1;
        let mut out = Vec::new();
        for b in -bmax..=bmax {
            if real_only && self.is_imaginary() && b != 0 {
                continue;
            }
            for a in -amax..=amax {
                let x = self.elem(a, b);
                if x.house_cmp(bound) == Ordering::Less {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(Q(sqrt {}))", self.d)
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// `a + b*w` in the ring of integers of Q(sqrt d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    ring: Ring,
    pub a: i64,
    pub b: i64,
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ring, self.b, self.a).cmp(&(other.ring, other.b, other.a))
    }
}

fn ov<T>(x: Option<T>) -> T {
    match x {
        Some(v) => v,
        None => panic!("{}", RingError::Overflow),
    }
}

impl QuadInt {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Galois conjugate `sqrt d -> -sqrt d`.
    pub fn conj(&self) -> QuadInt {
        match self.ring.omega_kind() {
            OmegaKind::Sqrt => self.ring.elem(self.a, ov(self.b.checked_neg())),
            // conj(w) = 1 - w
            OmegaKind::HalfInteger => {
                self.ring.elem(ov(self.a.checked_add(self.b)), ov(self.b.checked_neg()))
            }
        }
    }

    /// Complex conjugate: the Galois conjugate for imaginary rings and the
    /// identity for real ones.
    pub fn cc(&self) -> QuadInt {
        if self.ring.is_imaginary() {
            self.conj()
        } else {
            *self
        }
    }

    /// `x * conj(x)`.
    pub fn norm(&self) -> i64 {
        let (t, n) = self.ring.omega_trace_norm();
        let a = self.a as i128;
        let b = self.b as i128;
        let v = a * a + (t as i128) * a * b + (n as i128) * b * b;
        ov(i64::try_from(v).ok())
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> i64 {
        let (t, _) = self.ring.omega_trace_norm();
        ov(self
            .a
            .checked_mul(2)
            .and_then(|v| v.checked_add(ov(self.b.checked_mul(t)))))
    }

    pub fn checked_add(&self, o: &QuadInt) -> Result<QuadInt, RingError> {
        self.same_ring(o)?;
        let a = self.a.checked_add(o.a).ok_or(RingError::Overflow)?;
        let b = self.b.checked_add(o.b).ok_or(RingError::Overflow)?;
        Ok(self.ring.elem(a, b))
    }

    pub fn checked_sub(&self, o: &QuadInt) -> Result<QuadInt, RingError> {
        self.same_ring(o)?;
        let a = self.a.checked_sub(o.a).ok_or(RingError::Overflow)?;
        let b = self.b.checked_sub(o.b).ok_or(RingError::Overflow)?;
        Ok(self.ring.elem(a, b))
    }

    pub fn checked_mul(&self, o: &QuadInt) -> Result<QuadInt, RingError> {
        self.same_ring(o)?;
        let (p, q) = self.ring.omega_square();
        let (a1, b1, a2, b2) = (
            self.a as i128,
            self.b as i128,
            o.a as i128,
            o.b as i128,
        );
        // (a1 + b1 w)(a2 + b2 w) = a1 a2 + b1 b2 p + (a1 b2 + a2 b1 + b1 b2 q) w
        let bb = b1.checked_mul(b2).ok_or(RingError::Overflow)?;
        let a = a1
            .checked_mul(a2)
            .and_then(|v| v.checked_add(bb.checked_mul(p as i128)?))
            .ok_or(RingError::Overflow)?;
        let b = a1
            .checked_mul(b2)
            .and_then(|v| v.checked_add(a2.checked_mul(b1)?))
            .and_then(|v| v.checked_add(bb.checked_mul(q as i128)?))
            .ok_or(RingError::Overflow)?;
        let a = i64::try_from(a).map_err(|_| RingError::Overflow)?;
        let b = i64::try_from(b).map_err(|_| RingError::Overflow)?;
        Ok(self.ring.elem(a, b))
    }

    fn same_ring(&self, o: &QuadInt) -> Result<(), RingError> {
        if self.ring != o.ring {
            return Err(RingError::RingMismatch(self.ring.d, o.ring.d));
        }
        Ok(())
    }

    /// `self / o` when the quotient lies in the ring.
    pub fn div_exact(&self, o: &QuadInt) -> Option<QuadInt> {
        if o.is_zero() || self.ring != o.ring {
            return None;
        }
        let n = o.norm();
        let t = self.checked_mul(&o.conj()).ok()?;
        if t.a % n != 0 || t.b % n != 0 {
            return None;
        }
        Some(self.ring.elem(t.a / n, t.b / n))
    }

    /// `(u, v)` with `x = u + v*sqrt d` in the embedding where `sqrt d` is the
    /// positive root (or `i*sqrt|d|` for imaginary rings).
    pub fn surd_coords(&self) -> (BigRational, BigRational) {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        match self.ring.omega_kind() {
            OmegaKind::Sqrt => (BigRational::from_integer(a), BigRational::from_integer(b)),
            OmegaKind::HalfInteger => {
                let two = BigInt::from(2);
                (
                    BigRational::new(a * &two + &b, two.clone()),
                    BigRational::new(b, two),
                )
            }
        }
    }

    /// Numerical value under the embedding selected by `sign` (the image of
    /// `sqrt d` is `sign*sqrt d`), as `(re, im)`.
    pub fn embed(&self, sign: i8) -> (f64, f64) {
        let s = (self.ring.d.unsigned_abs() as f64).sqrt() * sign as f64;
        let (u, v) = match self.ring.omega_kind() {
            OmegaKind::Sqrt => (self.a as f64, self.b as f64),
            OmegaKind::HalfInteger => (self.a as f64 + self.b as f64 / 2.0, self.b as f64 / 2.0),
        };
        if self.ring.is_imaginary() {
            (u, v * s)
        } else {
            (u + v * s, 0.0)
        }
    }

    /// Compares the house (largest absolute value over all embeddings) with a
    /// nonnegative rational, exactly.
    pub fn house_cmp(&self, q: &BigRational) -> Ordering {
        if self.ring.is_imaginary() {
            // |x|^2 = N(x)
            let n = BigRational::from_integer(BigInt::from(self.norm()));
            return n.cmp(&(q * q));
        }
        let (u, v) = self.surd_coords();
        let d = self.ring.d;
        let e1 = abs_cmp(&u, &v, d, q);
        let e2 = abs_cmp(&u, &(-v.clone()), d, q);
        e1.max(e2)
    }
}

/// Compares `|u + v sqrt d|` with `q` for `d > 0`.
fn abs_cmp(u: &BigRational, v: &BigRational, d: i64, q: &BigRational) -> Ordering {
    let hi = surd_sign(&(u - q), v, d);
    let lo = surd_sign(&(u + q), v, d);
    if hi == Ordering::Greater || lo == Ordering::Less {
        Ordering::Greater
    } else if hi == Ordering::Less && lo == Ordering::Greater {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Exact sign of `u + v sqrt d` for `d > 0`.
pub fn surd_sign(u: &BigRational, v: &BigRational, d: i64) -> Ordering {
    let su = u.signum();
    let sv = v.signum();
    let zero = BigRational::zero();
    let su = su.cmp(&zero);
    let sv = sv.cmp(&zero);
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        (su, _) => {
            // opposite signs: compare u^2 with d v^2
            let lhs = u * u;
            let rhs = v * v * BigRational::from_integer(BigInt::from(d));
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => su,
                Ordering::Less => su.reverse(),
            }
        }
    }
}

pub fn qi_arith(kind: ArithKind, x: &QuadInt, y: &QuadInt) -> Result<QuadInt, RingError> {
    match kind {
        ArithKind::Add => x.checked_add(y),
        ArithKind::Sub => x.checked_sub(y),
        ArithKind::Mul => x.checked_mul(y),
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        self.checked_add(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        self.checked_sub(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        self.checked_mul(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.ring.elem(ov(self.a.checked_neg()), ov(self.b.checked_neg()))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else if self.b < 0 {
            write!(f, "{}-{}*w", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl Serialize for QuadInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

/// Coordinates without a ring, as stored in matrix files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coords(pub [i64; 2]);

/// Parses `3`, `w`, `-w`, `2*w`, `1+w`, `1-2*w`, `[1,-2]`.
pub fn parse_elem(ring: Ring, s: &str) -> Result<QuadInt, RingError> {
    let err = || RingError::Parse(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(err());
        }
        let a = parts[0].parse().map_err(|_| err())?;
        let b = parts[1].parse().map_err(|_| err())?;
        return Ok(ring.elem(a, b));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, c) in t.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    let (mut a, mut b) = (0i64, 0i64);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let sgn = if neg { -1 } else { 1 };
        if let Some(coef) = body.strip_suffix('w') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse().map_err(|_| err())?
            };
            b += sgn * c;
        } else {
            let c: i64 = body.parse().map_err(|_| err())?;
            a += sgn * c;
        }
    }
    Ok(ring.elem(a, b))
}

/// `q` as a rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
