//! The template families, the sporadic graphs of span at least 4, and a few
//! fixed graphs, with exact determinant and eigenvector certificates.
//!
//! Labelings: paths run left to right from vertex 0; cycles run from vertex
//! 0; ladders store the pair `j` as vertices `(top, bottom)` in consecutive
//! slots. Each builder's comment gives its layout.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use thiserror::Error;

use crate::matrix::HermitianGraph;
use crate::ring::{QuadInt, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("family {family} has no instance over d = {d}")]
    Unsupported { family: Family, d: i64 },
    #[error("bad parameters for {family}: {msg}")]
    Params { family: Family, msg: String },
    #[error("weight {weight} does not have absolute square {square}")]
    Weight { weight: String, square: i64 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P,
    Q,
    CEven,
    COdd,
    T,
    X1,
    X2,
    X3,
    X4,
    X5,
    X6,
    X7,
    X8,
    X9,
    X10,
    X11,
    X12,
    X13,
    FrakC8,
    Cos6A,
    Cos6B,
    NearP,
}

/// Which irrational weight a family takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// irrational, absolute square 1
    Alpha1,
    /// absolute square 2
    Alpha2,
    None,
}

const NAMES: [(Family, &str); 22] = [
    (Family::P, "P"),
    (Family::Q, "Q"),
    (Family::CEven, "C_even"),
    (Family::COdd, "C_odd"),
    (Family::T, "T"),
    (Family::X1, "X1"),
    (Family::X2, "X2"),
    (Family::X3, "X3"),
    (Family::X4, "X4"),
    (Family::X5, "X5"),
    (Family::X6, "X6"),
    (Family::X7, "X7"),
    (Family::X8, "X8"),
    (Family::X9, "X9"),
    (Family::X10, "X10"),
    (Family::X11, "X11"),
    (Family::X12, "X12"),
    (Family::X13, "X13"),
    (Family::FrakC8, "frakC8"),
    (Family::Cos6A, "cos6a"),
    (Family::Cos6B, "cos6b"),
    (Family::NearP, "nearp"),
];

impl Family {
    pub fn all() -> impl Iterator<Item = Family> {
        NAMES.iter().map(|(f, _)| *f)
    }

    pub fn name(self) -> &'static str {
        NAMES.iter().find(|(f, _)| *f == self).map(|(_, s)| *s).unwrap_or("?")
    }

    pub fn weight_kind(self) -> WeightKind {
        use Family::*;
        match self {
            P | CEven | COdd | X1 | X2 | X3 | X11 | X12 | X13 => WeightKind::Alpha2,
            Q | T | X4 | FrakC8 | Cos6A | Cos6B | NearP => WeightKind::Alpha1,
            X5 | X6 | X7 | X8 | X9 | X10 => WeightKind::None,
        }
    }

    /// Number of size parameters the family takes.
    pub fn arity(self) -> usize {
        use Family::*;
        match self {
            P | Q | CEven | COdd | T | X1 | X2 | X3 => 1,
            X4 => 2,
            _ => 0,
        }
    }

    /// Smallest allowed value of each parameter.
    fn min_params(self) -> &'static [usize] {
        use Family::*;
        match self {
            P | Q | X1 => &[3],
            X2 => &[4],
            X3 => &[5],
            CEven => &[2],
            COdd => &[1],
            // k = 2 would put two edges on the same pair of vertices
            T => &[3],
            X4 => &[2, 2],
            _ => &[],
        }
    }

    /// The sporadic graphs that rule out supergraphs.
    pub fn is_sporadic(self) -> bool {
        use Family::*;
        matches!(self, X5 | X6 | X7 | X8 | X9 | X10 | X11 | X12 | X13)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TemplateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NAMES
            .iter()
            .find(|(_, n)| n.eq_ignore_ascii_case(s))
            .map(|(f, _)| *f)
            .ok_or_else(|| TemplateError::UnknownFamily(s.to_string()))
    }
}

/// Default weight of the given kind, if the ring has one.
pub fn default_weight(ring: Ring, kind: WeightKind) -> Option<QuadInt> {
    let w = ring.omega();
    match (kind, ring.d()) {
        (WeightKind::Alpha1, -1 | -3) => Some(w),
        (WeightKind::Alpha2, -7 | -2 | 2) => Some(w),
        (WeightKind::Alpha2, -1) => Some(ring.elem(1, 1)),
        (WeightKind::None, _) => Some(ring.one()),
        _ => None,
    }
}

fn required_square(kind: WeightKind) -> i64 {
    match kind {
        WeightKind::Alpha1 => 1,
        WeightKind::Alpha2 => 2,
        WeightKind::None => 0,
    }
}

/// A fully specified template graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateInstance {
    pub family: Family,
    pub params: Vec<usize>,
    pub ring: Ring,
    pub weight: QuadInt,
}

impl TemplateInstance {
    /// Checks parameters and weight; `weight = None` picks the default.
    pub fn new(
        family: Family,
        params: &[usize],
        ring: Ring,
        weight: Option<QuadInt>,
    ) -> Result<Self, TemplateError> {
        if params.len() != family.arity() {
            return Err(TemplateError::Params {
                family,
                msg: format!("expected {} parameter(s), got {}", family.arity(), params.len()),
            });
        }
        for (p, m) in params.iter().zip(family.min_params()) {
            if p < m {
                return Err(TemplateError::Params {
                    family,
                    msg: format!("parameter {p} is below {m}"),
                });
            }
        }
        let kind = family.weight_kind();
        let weight = match weight {
            Some(w) => w,
            None => {
                let w = default_weight(ring, kind).ok_or(TemplateError::Unsupported {
                    family,
                    d: ring.d(),
                })?;
                // these two carry -w on their irrational edge
                if family == Family::NearP || family == Family::FrakC8 {
                    -w
                } else {
                    w
                }
            }
        };
        if kind != WeightKind::None {
            let sq = required_square(kind);
            let ok = !weight.is_rational() && weight * weight.cc() == ring.int(sq);
            if !ok {
                return Err(TemplateError::Weight {
                    weight: weight.to_string(),
                    square: sq,
                });
            }
        }
        if family == Family::X4 && !matches!(ring.d(), -1 | -3) {
            return Err(TemplateError::Unsupported { family, d: ring.d() });
        }
        Ok(TemplateInstance {
            family,
            params: params.to_vec(),
            ring,
            weight,
        })
    }

    pub fn build(&self) -> HermitianGraph {
        build_template(self)
    }
}

struct Builder {
    ring: Ring,
    charges: Vec<QuadInt>,
    edges: Vec<(usize, usize, QuadInt)>,
}

impl Builder {
    fn new(ring: Ring, n: usize) -> Self {
        Builder {
            ring,
            charges: vec![ring.zero(); n],
            edges: Vec::new(),
        }
    }

    fn charge(&mut self, v: usize, c: i64) {
        self.charges[v] = self.ring.int(c);
    }

    fn edge(&mut self, i: usize, j: usize, w: QuadInt) {
        self.edges.push((i, j, w));
    }

    fn unit(&mut self, i: usize, j: usize, s: i64) {
        let w = self.ring.int(s);
        self.edge(i, j, w);
    }

    fn path(&mut self, vs: impl IntoIterator<Item = usize>) {
        let vs: Vec<usize> = vs.into_iter().collect();
        for p in vs.windows(2) {
            self.unit(p[0], p[1], 1);
        }
    }

    /// The signed complete bipartite join between consecutive ladder pairs.
    fn rung(&mut self, x: (usize, usize), y: (usize, usize), w: QuadInt) {
        self.edge(x.0, y.0, w);
        self.edge(x.0, y.1, w);
        self.edge(x.1, y.0, -w);
        self.edge(x.1, y.1, -w);
    }

    fn finish(self) -> HermitianGraph {
        HermitianGraph::from_edges(self.ring, &self.charges, &self.edges)
    }
}

fn pair(j: usize, offset: usize) -> (usize, usize) {
    (offset + 2 * j, offset + 2 * j + 1)
}

/// The graph of a validated instance.
pub fn build_template(t: &TemplateInstance) -> HermitianGraph {
    use Family::*;
    let r = t.ring;
    let a = t.weight;
    let one = r.one();
    match t.family {
        // 0 -a- 1 - 2 - ... - (n-1)+
        P => {
            let n = t.params[0];
            let mut b = Builder::new(r, n);
            b.edge(1, 0, a);
            b.path(1..n);
            b.charge(n - 1, 1);
            b.finish()
        }
        // cycle 0 - 1 - ... - (n-2) -a- (n-1) - 0
        Q => {
            let n = t.params[0];
            let mut b = Builder::new(r, n);
            b.path(0..n - 1);
            b.edge(n - 2, n - 1, a);
            b.unit(n - 1, 0, 1);
            b.finish()
        }
        // 0 joined by a to both vertices of pair 0, pairs 0..k-2 laddered,
        // last pair joined to 2k-1 by a and -a
        CEven => {
            let k = t.params[0];
            let m = k - 1;
            let mut b = Builder::new(r, 2 * k);
            let p0 = pair(0, 1);
            b.edge(p0.0, 0, a);
            b.edge(p0.1, 0, a);
            for j in 0..m - 1 {
                b.rung(pair(j, 1), pair(j + 1, 1), one);
            }
            let last = pair(m - 1, 1);
            b.edge(last.0, 2 * k - 1, a);
            b.edge(last.1, 2 * k - 1, -a);
            b.finish()
        }
        // as above but ending in a charged pair joined by -1
        COdd => {
            let k = t.params[0];
            let mut b = Builder::new(r, 2 * k + 1);
            let p0 = pair(0, 1);
            b.edge(p0.0, 0, a);
            b.edge(p0.1, 0, a);
            for j in 0..k - 1 {
                b.rung(pair(j, 1), pair(j + 1, 1), one);
            }
            let last = pair(k - 1, 1);
            b.charge(last.0, 1);
            b.charge(last.1, 1);
            b.unit(last.0, last.1, -1);
            b.finish()
        }
        // k pairs around a torus; the closing rung carries a
        T => {
            let k = t.params[0];
            let mut b = Builder::new(r, 2 * k);
            for j in 0..k - 1 {
                b.rung(pair(j, 0), pair(j + 1, 0), one);
            }
            b.rung(pair(k - 1, 0), pair(0, 0), a);
            b.finish()
        }
        // 0 -a- 1 - ... - (n-2) -a- (n-1)
        X1 => {
            let n = t.params[0];
            let mut b = Builder::new(r, n);
            b.edge(1, 0, a);
            b.path(1..n - 1);
            b.edge(n - 2, n - 1, a);
            b.finish()
        }
        // vertex i is e_{i+1}: charged e_1, e_2 joined by -1, both adjacent
        // to e_3, path e_3 ... e_{n-1} -a- e_n
        X2 => {
            let n = t.params[0];
            let mut b = Builder::new(r, n);
            b.charge(0, 1);
            b.charge(1, 1);
            b.unit(0, 1, -1);
            b.unit(2, 0, 1);
            b.unit(2, 1, 1);
            b.path(2..n - 1);
            b.edge(n - 2, n - 1, a);
            b.finish()
        }
        // 0 -a- 1 - ... - (n-3), which carries the leaves n-2 and n-1
        X3 => {
            let n = t.params[0];
            let mut b = Builder::new(r, n);
            b.edge(1, 0, a);
            b.path(1..n - 2);
            b.unit(n - 3, n - 2, 1);
            b.unit(n - 3, n - 1, 1);
            b.finish()
        }
        X4 => {
            let (s, tt) = (t.params[0], t.params[1]);
            let mut b = Builder::new(r, s + tt + 1);
            for (x, y) in x4_edges(s, tt, a) {
                b.edge(x.0, x.1, y);
            }
            b.finish()
        }
        // 4-cycle 0 - 1 - 2 - 3 - 0 with weights 1, -1, -1, 1
        X5 => {
            let mut b = Builder::new(r, 4);
            b.unit(0, 1, 1);
            b.unit(1, 2, -1);
            b.unit(2, 3, -1);
            b.unit(3, 0, 1);
            b.finish()
        }
        // centre 1 with leaves 0 and 4 and the arm 1 - 2 - 3; 0 charged
        X6 | X7 | X8 => {
            let mut b = Builder::new(r, 5);
            b.charge(0, 1);
            b.path([0, 1, 2, 3]);
            b.unit(1, 4, 1);
            match t.family {
                X7 => b.charge(4, 1),
                X8 => b.charge(4, -1),
                _ => {}
            }
            b.finish()
        }
        // path 0 - ... - 6 with the leaf 7 on vertex 3
        X9 => {
            let mut b = Builder::new(r, 8);
            b.path(0..7);
            b.unit(3, 7, 1);
            b.finish()
        }
        // path 0 - ... - 8, vertex 1 charged; X11 puts a on the last edge
        X10 | X11 => {
            let mut b = Builder::new(r, 9);
            b.charge(1, 1);
            b.path(0..8);
            if t.family == X11 {
                b.edge(7, 8, a);
            } else {
                b.unit(7, 8, 1);
            }
            b.finish()
        }
        // path 0 - 1 -a- 2 - 3 - 4; X13 charges vertex 0
        X12 | X13 => {
            let mut b = Builder::new(r, 5);
            b.unit(0, 1, 1);
            b.edge(1, 2, a);
            b.path(2..5);
            if t.family == X13 {
                b.charge(0, 1);
            }
            b.finish()
        }
        // 8-cycle, odd vertices charged, the edge 3 - 4 carries the weight
        FrakC8 => {
            let mut b = Builder::new(r, 8);
            b.path(0..4);
            b.edge(3, 4, a);
            b.path(4..8);
            b.unit(7, 0, 1);
            for v in [1, 3, 5, 7] {
                b.charge(v, 1);
            }
            b.finish()
        }
        // 2 x 3 ladder: rows 0 - 1 - 4 and 2 - 3 - 5, rungs 2 -(-a)- 0,
        // 1 - 3 and 5 -(-1)- 4
        Cos6A => {
            let mut b = Builder::new(r, 6);
            b.path([0, 1, 4]);
            b.path([2, 3, 5]);
            b.edge(2, 0, -a);
            b.unit(1, 3, 1);
            b.unit(5, 4, -1);
            b.finish()
        }
        // 4-cycle 0 - 1 - 3 -(-a)- 2 - 0 with the tail 3 - 4 - 5
        Cos6B => {
            let mut b = Builder::new(r, 6);
            b.path([2, 0, 1, 3]);
            b.edge(3, 2, -a);
            b.path([3, 4, 5]);
            b.finish()
        }
        NearP => {
            let q = TemplateInstance {
                family: Q,
                params: vec![7],
                ring: r,
                weight: a,
            };
            build_template(&q)
        }
    }
}

/// Vertices: `l_j` is `j` for `0 <= j <= s`, `r_j` is `s + 1 + j` for
/// `0 <= j < t`, and `r_t` is `l_s`.
fn x4_index(s: usize, t: usize) -> (impl Fn(usize) -> usize, impl Fn(usize) -> usize) {
    let l = move |j: usize| j;
    let rr = move |j: usize| if j == t { s } else { s + 1 + j };
    (l, rr)
}

fn x4_edges(s: usize, t: usize, a: QuadInt) -> Vec<((usize, usize), QuadInt)> {
    let ring = a.ring();
    let (l, rr) = x4_index(s, t);
    let one = ring.one();
    let mut e = Vec::new();
    for j in 1..s {
        let w = if j == s - 1 { a } else { one };
        e.push(((l(j), l(j + 1)), w));
    }
    e.push(((l(1), l(0)), one));
    e.push(((l(1), rr(0)), one));
    e.push(((l(0), rr(1)), one));
    e.push(((rr(1), rr(0)), -one));
    for j in 1..t {
        e.push(((rr(j), rr(j + 1)), one));
    }
    e
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<QuadInt>], ring: Ring) -> QuadInt {
    let n = rows.len();
    let mut m: Vec<Vec<QuadInt>> = rows.to_vec();
    let mut sign = 1i64;
    let mut prev = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ring.zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k];
    }
    let d = if n == 0 { ring.one() } else { m[n - 1][n - 1] };
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `det(A + cI)`.
pub fn shifted_determinant(g: &HermitianGraph, c: i64) -> QuadInt {
    let n = g.n();
    let rows: Vec<Vec<QuadInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = g.get(i, j);
                    if i == j {
                        x + g.ring().int(c)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    determinant(&rows, g.ring())
}

/// Computed and predicted values of `det(A + 2I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetCheck {
    pub computed: QuadInt,
    pub predicted: QuadInt,
}

impl DetCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.predicted && !self.computed.is_zero()
    }
}

/// `det(A + 2I)` for `P_n` (predicted 4) or `Q_n` (predicted
/// `2 - (-1)^n (a + conj a)`).
pub fn check_pq_determinant(t: &TemplateInstance) -> Result<DetCheck, TemplateError> {
    let r = t.ring;
    let predicted = match t.family {
        Family::P => r.int(4),
        Family::Q => {
            let n = t.params[0] as i64;
            let tr = (t.weight + t.weight.cc()).a;
            let s = if n % 2 == 0 { 1 } else { -1 };
            r.int(2 - s * tr)
        }
        f => {
            return Err(TemplateError::Params {
                family: f,
                msg: "determinant certificate exists only for P and Q".into(),
            })
        }
    };
    Ok(DetCheck {
        computed: shifted_determinant(&t.build(), 2),
        predicted,
    })
}

fn is_eigvec(g: &HermitianGraph, v: &[QuadInt], lam: i64) -> bool {
    let n = g.n();
    if v.iter().all(|x| x.is_zero()) {
        return false;
    }
    (0..n).all(|i| {
        let s = (0..n).fold(g.ring().zero(), |acc, j| acc + g.get(i, j) * v[j]);
        s == v[i] * g.ring().int(lam)
    })
}

/// Element `a + b*sqrt3 + c*i + d*sqrt3*i` of Q(sqrt 3, i).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyc12(pub [Rational64; 4]);

impl Cyc12 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Cyc12([a, b, c, d].map(Rational64::from_integer))
    }

    pub fn zero() -> Self {
        Cyc12::new(0, 0, 0, 0)
    }

    /// Image of a Gaussian or Eisenstein integer.
    pub fn embed(x: QuadInt) -> Option<Self> {
        let h = Rational64::new(1, 2);
        let (a, b) = (Rational64::from_integer(x.a), Rational64::from_integer(x.b));
        let z = Rational64::from_integer(0);
        match x.ring().d() {
            -1 => Some(Cyc12([a, z, b, z])),
            // w = 1/2 + (1/2) sqrt3 i
            -3 => Some(Cyc12([a + b * h, z, z, b * h])),
            _ => None,
        }
    }

    pub fn add(self, o: Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(o.0) {
            *x += y;
        }
        Cyc12(r)
    }

    pub fn scale(self, k: i64) -> Self {
        Cyc12(self.0.map(|x| x * k))
    }

    pub fn mul(self, o: Self) -> Self {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        let t = Rational64::from_integer(3);
        Cyc12([
            a * e + t * b * f - c * g - t * d * h,
            a * f + b * e - c * h - d * g,
            a * g + c * e + t * b * h + t * d * f,
            a * h + d * e + b * g + c * f,
        ])
    }
}

fn is_eigvec_cyc(g: &HermitianGraph, v: &[Cyc12], lam: i64) -> Option<bool> {
    let n = g.n();
    if v.iter().all(|x| *x == Cyc12::zero()) {
        return Some(false);
    }
    for i in 0..n {
        let mut s = Cyc12::zero();
        for j in 0..n {
            s = s.add(Cyc12::embed(g.get(i, j))?.mul(v[j]));
        }
        if s != v[i].scale(lam) {
            return Some(false);
        }
    }
    Some(true)
}

/// Eigenvectors for 2 and -2 of `X1`, `X2`, `X3` with ring entries.
pub fn span4_vectors(t: &TemplateInstance) -> Option<(Vec<QuadInt>, Vec<QuadInt>)> {
    let r = t.ring;
    let ab = t.weight.cc();
    let int = |k: i64| r.int(k);
    match t.family {
        Family::X1 => {
            let n = t.params[0];
            let mut v = vec![int(2); n];
            v[0] = ab;
            v[n - 1] = ab;
            let w = signed_by_colour(&t.build(), &v)?;
            Some((v, w))
        }
        Family::X3 => {
            let n = t.params[0];
            let mut v = vec![int(2); n];
            v[0] = ab;
            v[n - 2] = int(1);
            v[n - 1] = int(1);
            let w = signed_by_colour(&t.build(), &v)?;
            Some((v, w))
        }
        Family::X2 => {
            let n = t.params[0];
            let mut plus = vec![int(0); n];
            plus[0] = int(1);
            plus[1] = int(-1);
            let mut minus = vec![int(1); n];
            for (i, x) in minus.iter_mut().enumerate().take(n - 1).skip(2) {
                // vertex i is e_{i+1}
                *x = int(if (i + 1) % 2 == 0 { 2 } else { -2 });
            }
            minus[n - 1] = if n % 2 == 0 { ab } else { -ab };
            Some((plus, minus))
        }
        _ => None,
    }
}

fn two_colouring(g: &HermitianGraph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut col: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if col[s].is_some() {
            continue;
        }
        col[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let c = col[v]?;
            for u in g.neighbours(v) {
                match col[u] {
                    None => {
                        col[u] = Some(!c);
                        stack.push(u);
                    }
                    Some(cu) if cu == c => return None,
                    _ => {}
                }
            }
        }
    }
    col.into_iter().collect()
}

/// Negates the entries on one side of a bipartite graph.
fn signed_by_colour(g: &HermitianGraph, v: &[QuadInt]) -> Option<Vec<QuadInt>> {
    let c = two_colouring(g)?;
    Some(v.iter().zip(c).map(|(&x, s)| if s { -x } else { x }).collect())
}

/// Eigenvectors for 2 and -2 of `X4`, in Q(sqrt 3, i).
pub fn x4_vectors(s: usize, t: usize, d: i64) -> Option<(Vec<Cyc12>, Vec<Cyc12>)> {
    // (p, q) = (1 + i, 1 - i) over Z[i] and (sqrt3 + i, sqrt3 - i) over Z[w]
    let (unit_l, p, q) = match d {
        -1 => (Cyc12::new(1, 0, 0, 0), Cyc12::new(1, 0, 1, 0), Cyc12::new(1, 0, -1, 0)),
        -3 => (Cyc12::new(0, 1, 0, 0), Cyc12::new(0, 1, 1, 0), Cyc12::new(0, 1, -1, 0)),
        _ => return None,
    };
    let i = Cyc12::new(0, 0, 1, 0);
    let n = s + t + 1;
    let (l, rr) = x4_index(s, t);
    let sg = |e: usize| if e % 2 == 0 { 1 } else { -1 };

    let mut plus = vec![Cyc12::zero(); n];
    for j in 1..s {
        plus[l(j)] = p;
    }
    for j in 1..=t {
        plus[rr(j)] = q;
    }
    plus[l(0)] = unit_l;
    plus[rr(0)] = i;

    let mut minus = vec![Cyc12::zero(); n];
    for j in 1..s {
        minus[l(j)] = p.scale(sg(s - j));
    }
    for j in 1..t {
        minus[rr(j)] = q.scale(sg(t - j));
    }
    minus[l(s)] = q;
    let (l0, r0) = if (s + t) % 2 == 0 { (unit_l, i) } else { (i, unit_l) };
    minus[l(0)] = l0.scale(sg(s));
    minus[rr(0)] = r0.scale(sg(s));
    Some((plus, minus))
}

/// Whether the stated vectors are eigenvectors for 2 and -2.
pub fn check_span4_eigenvectors(t: &TemplateInstance) -> Result<bool, TemplateError> {
    let g = t.build();
    match t.family {
        Family::X1 | Family::X2 | Family::X3 => {
            let (p, m) = span4_vectors(t).ok_or(TemplateError::Params {
                family: t.family,
                msg: "graph is not bipartite".into(),
            })?;
            Ok(is_eigvec(&g, &p, 2) && is_eigvec(&g, &m, -2))
        }
        Family::X4 => {
            let (p, m) = x4_vectors(t.params[0], t.params[1], t.ring.d()).ok_or(
                TemplateError::Unsupported {
                    family: t.family,
                    d: t.ring.d(),
                },
            )?;
            Ok(is_eigvec_cyc(&g, &p, 2) == Some(true) && is_eigvec_cyc(&g, &m, -2) == Some(true))
        }
        f => Err(TemplateError::Params {
            family: f,
            msg: "no eigenvector certificate for this family".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::char_poly;

    fn inst(f: Family, p: &[usize], d: i64) -> TemplateInstance {
        TemplateInstance::new(f, p, Ring::new(d).unwrap(), None).unwrap()
    }

    fn square_is_4i(g: &HermitianGraph) -> bool {
        let n = g.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = (0..n).fold(g.ring().zero(), |acc, k| acc + g.get(i, k) * g.get(k, j));
                s == g.ring().int(if i == j { 4 } else { 0 })
            })
        })
    }

    #[test]
    fn determinant_small() {
        let r = Ring::new(-1).unwrap();
        let m = vec![
            vec![r.int(2), r.elem(0, 1)],
            vec![r.elem(0, -1), r.int(3)],
        ];
        // 6 - i*(-i) = 5
        assert_eq!(determinant(&m, r), r.int(5));
        let z = vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]];
        assert_eq!(determinant(&z, r), r.int(-1));
    }

    #[test]
    fn cyclotomic_families_square_to_4() {
        for d in [-7, -2, -1, 2] {
            for k in 2..6 {
                assert!(square_is_4i(&inst(Family::CEven, &[k], d).build()), "C_even {k} d={d}");
                assert!(square_is_4i(&inst(Family::COdd, &[k], d).build()), "C_odd {k} d={d}");
            }
            assert!(square_is_4i(&inst(Family::COdd, &[1], d).build()));
        }
        for d in [-1, -3] {
            for k in 3..7 {
                assert!(square_is_4i(&inst(Family::T, &[k], d).build()), "T {k} d={d}");
            }
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(inst(Family::X4, &[2, 3], -1).build().n(), 6);
        assert_eq!(inst(Family::CEven, &[3], -2).build().n(), 6);
        assert_eq!(inst(Family::COdd, &[3], -2).build().n(), 7);
        assert_eq!(inst(Family::X11, &[], -2).build().n(), 9);
    }

    #[test]
    fn eigenvector_certificates() {
        for d in [-7, -2, -1, 2] {
            for n in 3..9 {
                assert!(check_span4_eigenvectors(&inst(Family::X1, &[n], d)).unwrap());
            }
            for n in 4..9 {
                assert!(check_span4_eigenvectors(&inst(Family::X2, &[n], d)).unwrap());
            }
            for n in 5..9 {
                assert!(check_span4_eigenvectors(&inst(Family::X3, &[n], d)).unwrap());
            }
        }
        for d in [-1, -3] {
            for s in 2..6 {
                for t in 2..6 {
                    let x = inst(Family::X4, &[s, t], d);
                    assert!(check_span4_eigenvectors(&x).unwrap(), "X4 {s},{t} d={d}");
                }
            }
        }
    }

    #[test]
    fn x2_unscaled_path_vector_fails() {
        // e_j = (-1)^j on the path does not satisfy the row of e_1
        let t = inst(Family::X2, &[6], -2);
        let g = t.build();
        let r = t.ring;
        let mut v = vec![r.one(), r.one()];
        for j in 3..6 {
            v.push(r.int(if j % 2 == 0 { 1 } else { -1 }));
        }
        v.push(t.weight);
        assert!(!is_eigvec(&g, &v, -2));
    }

    #[test]
    fn weights_checked() {
        let r = Ring::new(-1).unwrap();
        assert!(TemplateInstance::new(Family::Q, &[5], r, Some(r.elem(1, 1))).is_err());
        assert!(TemplateInstance::new(Family::Q, &[5], r, Some(r.one())).is_err());
        assert!(TemplateInstance::new(Family::P, &[2], r, None).is_err());
        assert!(TemplateInstance::new(Family::Q, &[5], Ring::new(-7).unwrap(), None).is_err());
        assert!(TemplateInstance::new(Family::X4, &[2, 2], Ring::new(-2).unwrap(), None).is_err());
    }

    #[test]
    fn near_miss_factorises() {
        let t = inst(Family::NearP, &[], -3);
        let chi = char_poly(&t.build()).to_int_poly().unwrap();
        let p = crate::poly::IntPoly::from_i64(&[1, -8, 8, 6, -6, -1, 1]);
        let x1 = crate::poly::IntPoly::from_i64(&[1, 1]);
        assert_eq!(chi, &x1 * &p);
    }

    #[test]
    fn names_round_trip() {
        for f in Family::all() {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
