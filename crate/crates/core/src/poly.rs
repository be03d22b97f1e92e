//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficients are degree-indexed: `coeffs[k]` multiplies `x^k`.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial: {0}")]
pub struct PolyParseError(pub String);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `x`
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut r = IntPoly::constant(1);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `p(eps*x + c)`
    pub fn compose_linear(&self, eps: i64, c: &BigInt) -> IntPoly {
        let lin = IntPoly::new(vec![c.clone(), BigInt::from(eps)]);
        let mut acc = IntPoly::new(vec![]);
        for k in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPoly::new(vec![k.clone()]);
        }
        acc
    }

    /// `p(x) * sign` made monic-positive: multiplies by -1 if the leading
    /// coefficient is negative.
    pub fn with_positive_leading(self) -> IntPoly {
        if self.leading().is_negative() {
            -self
        } else {
            self
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect()).with_positive_leading()
    }

    /// Quotient and remainder after scaling `self` by `lc(d)^(deg self - deg d + 1)`.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (IntPoly::new(vec![]), self.clone());
        }
        let lc = d.leading();
        let dd = d.degree();
        let steps = self.degree() - dd + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); steps];
        for s in (0..steps).rev() {
            // r <- lc * r - r[top] x^s d
            let top = r[s + dd].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for c in q.iter_mut() {
                *c *= &lc;
            }
            q[s] += &top;
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[s + k] -= &top * dc;
            }
            r.truncate(s + dd);
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Exact division; `None` if `d` does not divide `self` over Z.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let lc = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dd + 1;
        let mut q = vec![BigInt::zero(); steps];
        for s in (0..steps).rev() {
            let top = r[s + dd].clone();
            if !(&top % &lc).is_zero() {
                return None;
            }
            let t = &top / &lc;
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[s + k] -= &t * dc;
            }
            q[s] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Squarefree decomposition `p = c * prod f_i^i` (Yun). Entry `k` of the
    /// result is `f_{k+1}`.
    pub fn squarefree_decomposition(&self) -> Vec<IntPoly> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.primitive();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides derivative");
        loop {
            let bd = b.derivative();
            let dd = &c - &bd;
            if dd.is_zero() {
                out.push(b.primitive());
                break;
            }
            let g = b.gcd(&dd);
            out.push(g.clone());
            b = b.div_exact(&g).expect("gcd divides");
            c = dd.div_exact(&g).expect("gcd divides");
            if b.degree() == 0 {
                break;
            }
        }
        while out.last().is_some_and(|p| p.degree() == 0) {
            out.pop();
        }
        out
    }

    pub fn squarefree_part(&self) -> IntPoly {
        self.squarefree_decomposition()
            .into_iter()
            .filter(|p| p.degree() > 0)
            .fold(IntPoly::constant(1), |acc, p| &acc * &p)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = PolyParseError;

    /// Accepts the printed form, e.g. `x^6 - 7x^4 + 14x^2 - 7`, optionally with
    /// `*` between coefficient and `x`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PolyParseError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, c) in t.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, term.trim_start_matches('+').to_string()),
            };
            let (cs, k) = match body.find('x') {
                None => (body.as_str(), 0usize),
                Some(p) => {
                    let rest = &body[p + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse()
                            .map_err(|_| err())?
                    };
                    (&body[..p], k)
                }
            };
            let mut c: BigInt = if cs.is_empty() {
                BigInt::one()
            } else {
                cs.parse().map_err(|_| err())?
            };
            if neg {
                c = -c;
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p = IntPoly::from_i64(&[-7, 0, 14, 0, -7, 0, 1]);
        assert_eq!(p.to_string(), "x^6 - 7x^4 + 14x^2 - 7");
        assert_eq!(IntPoly::from_i64(&[1, -1]).to_string(), "-x + 1");
        assert_eq!(IntPoly::from_i64(&[]).to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[0, 2]).to_string(), "2x");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "x^6 - 7x^4 + 14x^2 - 7",
            "x^7 - x^6 - 7x^5 + 5x^4 + 15x^3 - 5x^2 - 10x - 1",
            "-x + 1",
            "3",
        ] {
            let p: IntPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        let p: IntPoly = "2*x^2+1".parse().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, 0, 2]));
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)^3 x
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[2, 1]);
        let p = &(&a.pow(2) * &b.pow(3)) * &IntPoly::x();
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], IntPoly::x());
        assert_eq!(dec[1], a);
        assert_eq!(dec[2], b);
        assert_eq!(p.squarefree_part(), &(&a * &b) * &IntPoly::x());
    }

    #[test]
    fn compose_and_divide() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let q = p.compose_linear(1, &BigInt::from(1));
        assert_eq!(q, IntPoly::from_i64(&[0, 2, 1]));
        assert_eq!(q.div_exact(&IntPoly::x()).unwrap(), IntPoly::from_i64(&[2, 1]));
        assert!(q.div_exact(&IntPoly::from_i64(&[1, 1])).is_none());
        assert_eq!(p.gcd(&q), IntPoly::constant(1));
        assert_eq!(p.gcd(&IntPoly::from_i64(&[1, 2, 1])), IntPoly::from_i64(&[1, 1]));
    }
}
