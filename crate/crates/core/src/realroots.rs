//! Exact real-root counting with Sturm sequences over Q and real quadratic fields.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::charpoly::{char_poly, joint_poly, RingPoly};
use crate::matrix::HermitianGraph;
use crate::poly::IntPoly;
use crate::ring::{rat, surd_sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial has {real} real roots out of degree {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("zero polynomial")]
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpanClass {
    LessThan4,
    Exactly4,
    GreaterThan4,
}

/// Arithmetic in an ordered field, enough for Euclid and sign evaluation.
pub trait Field: Clone + Debug {
    type E: Clone + Debug + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_rat(&self, r: &BigRational) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sign(&self, a: &Self::E) -> Ordering;
    /// A rational upper bound for `|a|`.
    fn abs_upper(&self, a: &Self::E) -> BigRational;
}

#[derive(Debug, Clone, Copy)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rat(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sign(&self, a: &BigRational) -> Ordering {
        a.cmp(&BigRational::zero())
    }
    fn abs_upper(&self, a: &BigRational) -> BigRational {
        a.abs()
    }
}

/// Q(sqrt d), d > 0, embedded in R with `sqrt d -> sign * sqrt d`.
/// Elements are pairs `(u, v)` meaning `u + v sqrt d` before embedding.
#[derive(Debug, Clone, Copy)]
pub struct RealQuadratic {
    pub d: i64,
    pub sign: i8,
}

impl Field for RealQuadratic {
    type E = (BigRational, BigRational);
    fn zero(&self) -> Self::E {
        (BigRational::zero(), BigRational::zero())
    }
    fn one(&self) -> Self::E {
        (BigRational::one(), BigRational::zero())
    }
    fn from_rat(&self, r: &BigRational) -> Self::E {
        (r.clone(), BigRational::zero())
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let d = BigRational::from_integer(BigInt::from(self.d));
        (&a.0 * &b.0 + &a.1 * &b.1 * d, &a.0 * &b.1 + &a.1 * &b.0)
    }
    fn neg(&self, a: &Self::E) -> Self::E {
        (-a.0.clone(), -a.1.clone())
    }
    fn inv(&self, a: &Self::E) -> Self::E {
        let d = BigRational::from_integer(BigInt::from(self.d));
        let n = &a.0 * &a.0 - &a.1 * &a.1 * d;
        (&a.0 / &n, -(&a.1 / &n))
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }
    fn sign(&self, a: &Self::E) -> Ordering {
        let v = if self.sign < 0 { -a.1.clone() } else { a.1.clone() };
        surd_sign(&a.0, &v, self.d)
    }
    fn abs_upper(&self, a: &Self::E) -> BigRational {
        // sqrt d <= d
        a.0.abs() + a.1.abs() * BigRational::from_integer(BigInt::from(self.d))
    }
}

type FPoly<F> = Vec<<F as Field>::E>;

fn trim<F: Field>(f: &F, p: &mut FPoly<F>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

fn derivative<F: Field>(f: &F, p: &FPoly<F>) -> FPoly<F> {
    let mut out: FPoly<F> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| f.mul(c, &f.from_rat(&rat(k as i64, 1))))
        .collect();
    trim(f, &mut out);
    out
}

fn rem<F: Field>(f: &F, a: &FPoly<F>, b: &FPoly<F>) -> (FPoly<F>, FPoly<F>) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = f.inv(b.last().expect("nonzero divisor"));
    let mut q = vec![f.zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let top = r.len() - 1;
        let t = f.mul(r.last().unwrap(), &inv);
        let s = top - db;
        for (k, bc) in b.iter().enumerate() {
            r[s + k] = f.sub(&r[s + k], &f.mul(&t, bc));
        }
        q[s] = t;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

fn monic<F: Field>(f: &F, p: &FPoly<F>) -> FPoly<F> {
    let inv = f.inv(p.last().expect("nonzero"));
    p.iter().map(|c| f.mul(c, &inv)).collect()
}

fn gcd<F: Field>(f: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let (_, r) = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(f, &a)
    }
}

fn div_exact<F: Field>(f: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let (q, r) = rem(f, a, b);
    debug_assert!(r.is_empty());
    q
}

/// Yun's squarefree decomposition over a field; entry `k` is `f_{k+1}`.
fn yun<F: Field>(f: &F, p: &FPoly<F>) -> Vec<FPoly<F>> {
    let mut out = Vec::new();
    if p.len() <= 1 {
        return out;
    }
    let dp = derivative(f, p);
    let a0 = gcd(f, p, &dp);
    let mut b = div_exact(f, p, &a0);
    let mut c = div_exact(f, &dp, &a0);
    loop {
        let bd = derivative(f, &b);
        let mut dd: FPoly<F> = (0..c.len().max(bd.len()))
            .map(|k| {
                let x = c.get(k).cloned().unwrap_or_else(|| f.zero());
                let y = bd.get(k).cloned().unwrap_or_else(|| f.zero());
                f.sub(&x, &y)
            })
            .collect();
        trim(f, &mut dd);
        if dd.is_empty() {
            out.push(monic(f, &b));
            break;
        }
        let g = gcd(f, &b, &dd);
        out.push(g.clone());
        b = div_exact(f, &b, &g);
        c = div_exact(f, &dd, &g);
        if b.len() <= 1 {
            break;
        }
    }
    while out.last().is_some_and(|p| p.len() <= 1) {
        out.pop();
    }
    out
}

#[derive(Debug, Clone)]
pub enum Point {
    NegInf,
    At(BigRational),
    PosInf,
}

/// A Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct Sturm<F: Field> {
    field: F,
    chain: Vec<FPoly<F>>,
}

impl<F: Field> Sturm<F> {
    /// `p` must be squarefree and nonzero.
    fn new(field: F, p: FPoly<F>) -> Self {
        let mut chain = vec![p.clone()];
        let dp = derivative(&field, &p);
        if !dp.is_empty() {
            chain.push(dp);
        }
        loop {
            let k = chain.len();
            if k < 2 {
                break;
            }
            let (_, r) = rem(&field, &chain[k - 2], &chain[k - 1]);
            if r.is_empty() {
                break;
            }
            // -r scaled by a positive constant so that the leading coefficient is +-1
            let lc = r.last().unwrap().clone();
            let mut s = field.inv(&lc);
            if field.sign(&lc) == Ordering::Less {
                s = field.neg(&s);
            }
            let nr: FPoly<F> = r.iter().map(|c| field.neg(&field.mul(c, &s))).collect();
            chain.push(nr);
        }
        Sturm { field, chain }
    }

    fn sign_at(&self, p: &FPoly<F>, x: &Point) -> Ordering {
        let f = &self.field;
        match x {
            Point::PosInf => f.sign(p.last().unwrap()),
            Point::NegInf => {
                let s = f.sign(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
            Point::At(r) => {
                let xr = f.from_rat(r);
                let mut acc = f.zero();
                for c in p.iter().rev() {
                    acc = f.add(&f.mul(&acc, &xr), c);
                }
                f.sign(&acc)
            }
        }
    }

    fn variations(&self, x: &Point) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for p in &self.chain {
            let s = self.sign_at(p, x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn is_root(&self, x: &BigRational) -> bool {
        self.sign_at(&self.chain[0], &Point::At(x.clone())) == Ordering::Equal
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Point, hi: &Point) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn count(&self, lo: &Point, hi: &Point, lo_incl: bool, hi_incl: bool) -> usize {
        let mut c = self.count_half_open(lo, hi);
        if let Point::At(a) = lo {
            if lo_incl && self.is_root(a) {
                c += 1;
            }
        }
        if let Point::At(b) = hi {
            if !hi_incl && self.is_root(b) {
                c -= 1;
            }
        }
        c
    }

    pub fn distinct(&self) -> usize {
        self.count_half_open(&Point::NegInf, &Point::PosInf)
    }

    /// Rational `B` with every root in `(-B, B)`.
    fn cauchy_bound(&self) -> BigRational {
        let f = &self.field;
        let p = &self.chain[0];
        let lc = f.abs_upper(p.last().unwrap());
        // leading coefficient of the squarefree part is 1
        debug_assert!(lc.is_one());
        let s = p[..p.len() - 1]
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + f.abs_upper(c));
        s + BigRational::one()
    }
}

/// Exact root information for the polynomial tested by the spectral conditions.
#[derive(Debug, Clone)]
pub enum RootSet {
    Q {
        sturm: Sturm<Rationals>,
        sqfree: IntPoly,
    },
    Surd {
        sturm: Sturm<RealQuadratic>,
        sqfree: FPoly<RealQuadratic>,
    },
}

fn to_qpoly(p: &IntPoly) -> FPoly<Rationals> {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

impl RootSet {
    /// Errors unless every root is real.
    pub fn from_int(p: &IntPoly) -> Result<Self, RootError> {
        if p.is_zero() {
            return Err(RootError::Zero);
        }
        let dec = p.squarefree_decomposition();
        let mut real = 0;
        let mut sq = IntPoly::constant(1);
        for (k, f) in dec.iter().enumerate() {
            let s = Sturm::new(Rationals, monic(&Rationals, &to_qpoly(f)));
            real += (k + 1) * s.distinct();
            sq = &sq * f;
        }
        if real != p.degree() {
            return Err(RootError::NotTotallyReal {
                real,
                degree: p.degree(),
            });
        }
        let sq = sq.with_positive_leading();
        let sturm = Sturm::new(Rationals, monic(&Rationals, &to_qpoly(&sq)));
        Ok(RootSet::Q { sturm, sqfree: sq })
    }

    /// A polynomial over a real quadratic ring under the embedding selected by
    /// `sign`.
    pub fn from_ring_poly(p: &RingPoly, sign: i8) -> Result<Self, RootError> {
        if let Some(ip) = p.to_int_poly() {
            return RootSet::from_int(&ip);
        }
        let ring = p.ring();
        assert!(!ring.is_imaginary(), "imaginary rings give integer polynomials");
        let f = RealQuadratic { d: ring.d(), sign };
        let fp: FPoly<RealQuadratic> = p.coeffs().iter().map(|c| c.surd_coords()).collect();
        if fp.is_empty() {
            return Err(RootError::Zero);
        }
        let fp = monic(&f, &fp);
        let dec = yun(&f, &fp);
        let mut real = 0;
        let mut sq: FPoly<RealQuadratic> = vec![f.one()];
        for (k, part) in dec.iter().enumerate() {
            let s = Sturm::new(f, part.clone());
            real += (k + 1) * s.distinct();
            sq = mul(&f, &sq, part);
        }
        let degree = fp.len() - 1;
        if real != degree {
            return Err(RootError::NotTotallyReal { real, degree });
        }
        let sturm = Sturm::new(f, sq.clone());
        Ok(RootSet::Surd { sturm, sqfree: sq })
    }

    pub fn count(&self, lo: &Point, hi: &Point, lo_incl: bool, hi_incl: bool) -> usize {
        match self {
            RootSet::Q { sturm, .. } => sturm.count(lo, hi, lo_incl, hi_incl),
            RootSet::Surd { sturm, .. } => sturm.count(lo, hi, lo_incl, hi_incl),
        }
    }

    pub fn distinct(&self) -> usize {
        match self {
            RootSet::Q { sturm, .. } => sturm.distinct(),
            RootSet::Surd { sturm, .. } => sturm.distinct(),
        }
    }

    fn cauchy_bound(&self) -> BigRational {
        match self {
            RootSet::Q { sturm, .. } => sturm.cauchy_bound(),
            RootSet::Surd { sturm, .. } => sturm.cauchy_bound(),
        }
    }

    /// Number of distinct roots `r` with `r` and `r + 4` both roots, located in
    /// `(lo, hi]`.
    fn shifted_common_count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let (lo, hi) = (Point::At(lo.clone()), Point::At(hi.clone()));
        match self {
            RootSet::Q { sqfree, .. } => {
                let g = sqfree.gcd(&sqfree.compose_linear(1, &BigInt::from(4)));
                if g.degree() == 0 {
                    return 0;
                }
                Sturm::new(Rationals, monic(&Rationals, &to_qpoly(&g))).count_half_open(&lo, &hi)
            }
            RootSet::Surd { sturm, sqfree } => {
                let f = sturm.field;
                let shifted = compose_shift(&f, sqfree, &rat(4, 1));
                let g = gcd(&f, sqfree, &shifted);
                if g.len() <= 1 {
                    return 0;
                }
                Sturm::new(f, g).count_half_open(&lo, &hi)
            }
        }
    }

    /// All roots in `[-2, 5/2)`.
    pub fn in_window(&self) -> bool {
        let lo = Point::At(rat(-2, 1));
        let hi = Point::At(rat(5, 2));
        self.count(&lo, &hi, true, false) == self.distinct()
    }

    /// All roots in `[-2, 2]`.
    pub fn is_cyclotomic(&self) -> bool {
        let lo = Point::At(rat(-2, 1));
        let hi = Point::At(rat(2, 1));
        self.count(&lo, &hi, true, true) == self.distinct()
    }

    /// Compares `max root - min root` with 4, exactly.
    pub fn span_class(&self) -> SpanClass {
        if self.distinct() <= 1 {
            return SpanClass::LessThan4;
        }
        // cheap and common: everything in [-2, 2], span 4 iff both ends are roots
        if self.is_cyclotomic() {
            let at = |x: i64| {
                let p = Point::At(rat(x, 1));
                self.count(&p, &p, true, true) == 1
            };
            return if at(-2) && at(2) {
                SpanClass::Exactly4
            } else {
                SpanClass::LessThan4
            };
        }
        let four = rat(4, 1);
        let bnd = self.cauchy_bound();
        let mut a = -bnd.clone();
        let mut b = bnd;
        let inf = Point::PosInf;
        loop {
            // invariant: the smallest root lies in (a, b]
            let b4 = Point::At(&b + &four);
            let a4 = Point::At(&a + &four);
            if self.count_half_open_pt(&b4, &inf) > 0 {
                return SpanClass::GreaterThan4;
            }
            if self.count_half_open_pt(&a4, &inf) == 0 {
                return SpanClass::LessThan4;
            }
            let pa = Point::At(a.clone());
            let pb = Point::At(b.clone());
            if self.count_half_open_pt(&pa, &pb) == 1
                && self.count_half_open_pt(&a4, &b4) == 1
                && self.shifted_common_count(&a, &b) == 1
            {
                return SpanClass::Exactly4;
            }
            let mid = (&a + &b) / rat(2, 1);
            if self.count_half_open_pt(&pa, &Point::At(mid.clone())) >= 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
    }

    fn count_half_open_pt(&self, lo: &Point, hi: &Point) -> usize {
        match self {
            RootSet::Q { sturm, .. } => sturm.count_half_open(lo, hi),
            RootSet::Surd { sturm, .. } => sturm.count_half_open(lo, hi),
        }
    }

    /// Rational interval of width at most `eps` around the smallest root.
    pub fn min_root_interval(&self, eps: &BigRational) -> (BigRational, BigRational) {
        let bnd = self.cauchy_bound();
        let (mut a, mut b) = (-bnd.clone(), bnd);
        while &b - &a > *eps {
            let mid = (&a + &b) / rat(2, 1);
            if self.count_half_open_pt(&Point::At(a.clone()), &Point::At(mid.clone())) >= 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        (a, b)
    }

    /// Rational interval of width at most `eps` around the largest root.
    pub fn max_root_interval(&self, eps: &BigRational) -> (BigRational, BigRational) {
        let bnd = self.cauchy_bound();
        let (mut a, mut b) = (-bnd.clone(), bnd);
        while &b - &a > *eps {
            let mid = (&a + &b) / rat(2, 1);
            if self.count_half_open_pt(&Point::At(mid.clone()), &Point::PosInf) >= 1 {
                a = mid;
            } else {
                b = mid;
            }
        }
        (a, b)
    }
}

fn mul<F: Field>(f: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let mut c = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = f.add(&c[i + j], &f.mul(x, y));
        }
    }
    c
}

/// `p(x + s)`
fn compose_shift<F: Field>(f: &F, p: &FPoly<F>, s: &BigRational) -> FPoly<F> {
    let lin = vec![f.from_rat(s), f.one()];
    let mut acc: FPoly<F> = Vec::new();
    for c in p.iter().rev() {
        acc = if acc.is_empty() { acc } else { mul(f, &acc, &lin) };
        if acc.is_empty() {
            acc.push(c.clone());
        } else {
            acc[0] = f.add(&acc[0], c);
        }
    }
    trim(f, &mut acc);
    acc
}

/// All roots real and in `[-2, 5/2)`.
pub fn window_check(p: &IntPoly) -> Result<bool, RootError> {
    Ok(RootSet::from_int(p)?.in_window())
}

pub fn span_class(p: &IntPoly) -> Result<SpanClass, RootError> {
    Ok(RootSet::from_int(p)?.span_class())
}

pub fn is_cyclotomic(p: &IntPoly) -> Result<bool, RootError> {
    Ok(RootSet::from_int(p)?.is_cyclotomic())
}

/// Distinct real roots of `p` in the given interval.
pub fn sturm_count(
    p: &IntPoly,
    lo: &Point,
    hi: &Point,
    lo_incl: bool,
    hi_incl: bool,
) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::Zero);
    }
    let sq = p.squarefree_part().with_positive_leading();
    let q = to_qpoly(&sq);
    let s = Sturm::new(Rationals, monic(&Rationals, &q));
    Ok(s.count(lo, hi, lo_incl, hi_incl))
}

/// Which eigenvalues must satisfy the spectral conditions for real rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EmbeddingCheck {
    /// Only the eigenvalues of `A` under the embedding `sqrt d > 0`.
    #[default]
    Single,
    /// The eigenvalues of `A` and of its Galois conjugate, taken together.
    Both,
}

impl std::str::FromStr for EmbeddingCheck {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single" => Ok(EmbeddingCheck::Single),
            "both" => Ok(EmbeddingCheck::Both),
            _ => Err(format!("unknown embedding check {s:?}")),
        }
    }
}

impl std::fmt::Display for EmbeddingCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EmbeddingCheck::Single => write!(f, "single"),
            EmbeddingCheck::Both => write!(f, "both"),
        }
    }
}

/// Exact roots of the polynomial governing the spectral conditions of `g`.
pub fn spectral_roots(g: &HermitianGraph, mode: EmbeddingCheck) -> Result<RootSet, RootError> {
    if g.ring().is_imaginary() {
        return RootSet::from_int(&joint_poly(g));
    }
    match mode {
        EmbeddingCheck::Both => RootSet::from_int(&joint_poly(g)),
        EmbeddingCheck::Single => RootSet::from_ring_poly(&char_poly(g), 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralVerdict {
    pub window: bool,
    pub span: SpanClass,
    pub cyclotomic: bool,
}

impl SpectralVerdict {
    pub fn small_span_in_window(&self) -> bool {
        self.window && self.span == SpanClass::LessThan4
    }
}

pub fn spectral_verdict(
    g: &HermitianGraph,
    mode: EmbeddingCheck,
) -> Result<SpectralVerdict, RootError> {
    let r = spectral_roots(g, mode)?;
    Ok(SpectralVerdict {
        window: r.in_window(),
        span: r.span_class(),
        cyclotomic: r.is_cyclotomic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn span_boundaries() {
        // x^2 - 4: roots +-2
        assert_eq!(span_class(&p(&[-4, 0, 1])).unwrap(), SpanClass::Exactly4);
        // x^2 - 3
        assert_eq!(span_class(&p(&[-3, 0, 1])).unwrap(), SpanClass::LessThan4);
        // x^2 - 5
        assert_eq!(span_class(&p(&[-5, 0, 1])).unwrap(), SpanClass::GreaterThan4);
        // (x-2)^2 (x+2) x
        let q = &(&p(&[-2, 1]).pow(2) * &p(&[2, 1])) * &IntPoly::x();
        assert_eq!(span_class(&q).unwrap(), SpanClass::Exactly4);
    }

    #[test]
    fn window_edges() {
        // root at -2 is inside, root at 5/2 is outside
        assert!(window_check(&p(&[2, 1])).unwrap());
        assert!(!window_check(&p(&[-5, 2])).unwrap());
        assert!(window_check(&p(&[-2, 1])).unwrap());
        assert!(is_cyclotomic(&p(&[-4, 0, 1])).unwrap());
        assert!(!is_cyclotomic(&p(&[-5, 2])).unwrap());
    }

    #[test]
    fn not_totally_real() {
        assert_eq!(
            span_class(&p(&[1, 0, 1])),
            Err(RootError::NotTotallyReal { real: 0, degree: 2 })
        );
        // (x^2+1)(x-1)^2
        let q = &p(&[1, 0, 1]) * &p(&[-1, 1]).pow(2);
        assert_eq!(
            window_check(&q),
            Err(RootError::NotTotallyReal { real: 2, degree: 4 })
        );
    }

    #[test]
    fn counts() {
        let q = &(&p(&[-1, 1]) * &p(&[1, 1])) * &p(&[-2, 1]);
        let c = |lo: i64, hi: i64, li, hi_i| {
            sturm_count(&q, &Point::At(rat(lo, 1)), &Point::At(rat(hi, 1)), li, hi_i).unwrap()
        };
        assert_eq!(c(-1, 1, true, true), 2);
        assert_eq!(c(-1, 1, false, true), 1);
        assert_eq!(c(-1, 1, false, false), 0);
        assert_eq!(c(-1, 2, true, false), 2);
    }

    #[test]
    fn surd_embedding() {
        use crate::ring::Ring;
        let r = Ring::new(2).unwrap();
        // x - sqrt 2
        let rp = RingPoly::new(r, vec![-r.omega(), r.one()]);
        let plus = RootSet::from_ring_poly(&rp, 1).unwrap();
        let minus = RootSet::from_ring_poly(&rp, -1).unwrap();
        let at = |x: (i64, i64)| Point::At(rat(x.0, x.1));
        assert_eq!(plus.count(&at((7, 5)), &at((3, 2)), false, false), 1);
        assert_eq!(minus.count(&at((-3, 2)), &at((-7, 5)), false, false), 1);
        // (x - sqrt 2)(x + 2 - sqrt 2): span 2
        let q = rp.mul(&RingPoly::new(r, vec![r.elem(2, -1), r.one()]));
        assert_eq!(
            RootSet::from_ring_poly(&q, 1).unwrap().span_class(),
            SpanClass::LessThan4
        );
        // (x - sqrt 2)(x + 4 - sqrt 2): span exactly 4
        let q = rp.mul(&RingPoly::new(r, vec![r.elem(4, -1), r.one()]));
        assert_eq!(
            RootSet::from_ring_poly(&q, 1).unwrap().span_class(),
            SpanClass::Exactly4
        );
    }
}
