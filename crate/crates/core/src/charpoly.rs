//! Characteristic polynomials over a quadratic ring (Berkowitz, no division).

use std::fmt;

use num_bigint::BigInt;

use crate::matrix::HermitianGraph;
use crate::poly::IntPoly;
use crate::ring::{QuadInt, Ring};

/// Polynomial with coefficients in a quadratic ring, degree-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    ring: Ring,
    coeffs: Vec<QuadInt>,
}

impl RingPoly {
    pub fn new(ring: Ring, mut coeffs: Vec<QuadInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RingPoly { ring, coeffs }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[QuadInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// The polynomial itself if every coefficient is rational.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        if !self.is_integer() {
            return None;
        }
        Some(IntPoly::new(
            self.coeffs.iter().map(|c| BigInt::from(c.a)).collect(),
        ))
    }

    /// Galois conjugate applied to every coefficient.
    pub fn conj(&self) -> RingPoly {
        RingPoly::new(self.ring, self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn mul(&self, o: &RingPoly) -> RingPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return RingPoly::new(self.ring, vec![]);
        }
        let mut c = vec![self.ring.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j] + *x * *y;
            }
        }
        RingPoly::new(self.ring, c)
    }

    /// `p * conj(p)`, which has integer coefficients.
    pub fn norm_poly(&self) -> IntPoly {
        let q = self.mul(&self.conj());
        q.to_int_poly().expect("p * conj(p) is rational")
    }

    /// `p(eps*x + c)` for a ring element `c`.
    pub fn compose_linear(&self, eps: i64, c: QuadInt) -> RingPoly {
        let lin = RingPoly::new(self.ring, vec![c, self.ring.int(eps)]);
        let mut acc = RingPoly::new(self.ring, vec![]);
        for k in self.coeffs.iter().rev() {
            acc = acc.mul(&lin);
            if acc.coeffs.is_empty() {
                acc.coeffs.push(*k);
            } else {
                acc.coeffs[0] = acc.coeffs[0] + *k;
            }
            acc = RingPoly::new(self.ring, acc.coeffs);
        }
        acc
    }

    pub fn eval(&self, x: QuadInt) -> QuadInt {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.to_int_poly() {
            return write!(f, "{p}");
        }
        let mut parts = Vec::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let xs = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k > 0 && c == self.ring.one() {
                parts.push(xs);
            } else if k > 0 && c.is_rational() {
                parts.push(format!("{}{xs}", c.a));
            } else if k > 0 {
                parts.push(format!("({c}){xs}"));
            } else {
                parts.push(format!("({c})"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `det(x I - A)`, computed without division.
pub fn char_poly(g: &HermitianGraph) -> RingPoly {
    let ring = g.ring();
    let n = g.n();
    // highest coefficient first while iterating
    let mut p = vec![ring.one()];
    for k in 0..n {
        let a = g.get(k, k);
        let mut t = Vec::with_capacity(k + 2);
        t.push(ring.one());
        t.push(-a);
        // v = M^j C, with M the leading k x k block and C column k above the diagonal
        let mut v: Vec<QuadInt> = (0..k).map(|i| g.get(i, k)).collect();
        for _ in 0..k {
            let s = (0..k).fold(ring.zero(), |acc, i| acc + g.get(k, i) * v[i]);
            t.push(-s);
            let nv: Vec<QuadInt> = (0..k)
                .map(|i| (0..k).fold(ring.zero(), |acc, j| acc + g.get(i, j) * v[j]))
                .collect();
            v = nv;
        }
        let mut np = vec![ring.zero(); k + 2];
        for (i, slot) in np.iter_mut().enumerate() {
            let mut acc = ring.zero();
            for (j, pj) in p.iter().enumerate() {
                if j <= i && i - j < t.len() {
                    acc = acc + t[i - j] * *pj;
                }
            }
            *slot = acc;
        }
        p = np;
    }
    p.reverse();
    RingPoly::new(ring, p)
}

/// The polynomial whose roots are the eigenvalues to be tested: the
/// characteristic polynomial itself for imaginary rings, and its product with
/// the Galois conjugate for real rings (eigenvalues of `A` and `conj(A)`).
pub fn joint_poly(g: &HermitianGraph) -> IntPoly {
    let p = char_poly(g);
    if g.ring().is_imaginary() {
        p.to_int_poly()
            .expect("Hermitian matrices over imaginary rings have integer characteristic polynomials")
    } else {
        p.norm_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cofactor expansion along the first row.
    fn laplace(g: &HermitianGraph) -> Vec<QuadInt> {
        // returns det(xI - A) by evaluating at n+1 integer points is not exact in
        // the ring basis, so expand symbolically over polynomial entries instead
        let ring = g.ring();
        let n = g.n();
        let m: Vec<Vec<RingPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -g.get(i, j);
                        if i == j {
                            RingPoly::new(ring, vec![c, ring.one()])
                        } else {
                            RingPoly::new(ring, vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(ring: Ring, m: &[Vec<RingPoly>]) -> RingPoly {
            let n = m.len();
            if n == 0 {
                return RingPoly::new(ring, vec![ring.one()]);
            }
            let mut acc = RingPoly::new(ring, vec![]);
            for c in 0..n {
                let minor: Vec<Vec<RingPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][c].mul(&det(ring, &minor));
                let sign = if c % 2 == 0 { 1 } else { -1 };
                let len = acc.coeffs.len().max(term.coeffs.len());
                let coeffs = (0..len)
                    .map(|k| {
                        let a = acc.coeffs.get(k).copied().unwrap_or(ring.zero());
                        let b = term.coeffs.get(k).copied().unwrap_or(ring.zero());
                        if sign > 0 {
                            a + b
                        } else {
                            a - b
                        }
                    })
                    .collect();
                acc = RingPoly::new(ring, coeffs);
            }
            acc
        }
        det(ring, &m).coeffs
    }

    #[test]
    fn matches_cofactor_expansion() {
        let r = Ring::new(-7).unwrap();
        let g = HermitianGraph::from_edges(
            r,
            &[r.one(), r.zero(), r.int(-1), r.int(2)],
            &[
                (0, 1, r.omega()),
                (1, 2, r.elem(1, -1)),
                (0, 3, r.one()),
                (2, 3, r.elem(0, -1)),
                (0, 2, r.int(-1)),
            ],
        );
        assert_eq!(char_poly(&g).coeffs().to_vec(), laplace(&g));
    }

    #[test]
    fn real_ring_joint_poly() {
        let r = Ring::new(2).unwrap();
        let s = r.omega();
        let g = HermitianGraph::from_edges(r, &[s, r.zero()], &[(0, 1, r.one())]);
        let p = char_poly(&g);
        // x^2 - sqrt2 x - 1
        assert_eq!(p.coeffs(), &[r.int(-1), -s, r.one()]);
        // (x^2 - 1)^2 - 2x^2
        assert_eq!(joint_poly(&g), IntPoly::from_i64(&[1, 0, -4, 0, 1]));
    }

    #[test]
    fn compose_linear_shifts() {
        let r = Ring::new(-1).unwrap();
        let p = RingPoly::new(r, vec![r.int(-1), r.zero(), r.one()]);
        let q = p.compose_linear(-1, r.int(1));
        // (1 - x)^2 - 1 = x^2 - 2x
        assert_eq!(q.coeffs(), &[r.zero(), r.int(-2), r.one()]);
    }
}
