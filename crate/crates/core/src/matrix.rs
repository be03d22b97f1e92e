//! Hermitian matrices over a quadratic ring, viewed as charged weighted graphs.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{rat, QuadInt, Ring, RingError};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("entry ({row},{col}) belongs to a different ring")]
    MixedRing { row: usize, col: usize },
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("entry ({row},{col}) breaks Hermitian symmetry")]
    NotHermitian { row: usize, col: usize },
    #[error("diagonal entry {0} is not real")]
    ChargeNotReal(usize),
    #[error("{path}: line {line}: {msg}")]
    Load {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NotHermitian,
    ChargeNotReal,
    ChargeTooLarge,
    WeightTooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub row: usize,
    pub col: usize,
}

/// A Hermitian matrix with entries in a quadratic ring.
///
/// For imaginary rings `w[i][j] = conj(w[j][i])` and the diagonal is rational.
/// For real rings the matrix is symmetric and the diagonal may be irrational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermitianGraph {
    ring: Ring,
    n: usize,
    w: Vec<QuadInt>,
}

impl HermitianGraph {
    /// Builds from a row-major entry list and checks the symmetry conditions.
    pub fn new(ring: Ring, n: usize, w: Vec<QuadInt>) -> Result<Self, MatrixError> {
        if w.len() != n * n {
            return Err(MatrixError::Shape {
                expected: n * n,
                found: w.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if w[i * n + j].ring() != ring {
                    return Err(MatrixError::MixedRing { row: i, col: j });
                }
            }
        }
        let g = HermitianGraph { ring, n, w };
        for i in 0..n {
            if g.get(i, i).cc() != g.get(i, i) {
                return Err(MatrixError::ChargeNotReal(i));
            }
            for j in (i + 1)..n {
                if g.get(i, j) != g.get(j, i).cc() {
                    return Err(MatrixError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(g)
    }

    pub fn zero(ring: Ring, n: usize) -> Self {
        HermitianGraph {
            ring,
            n,
            w: vec![ring.zero(); n * n],
        }
    }

    /// Builds from charges and directed edges `(i, j, w)`; the entry at `(j, i)`
    /// receives the complex conjugate.
    pub fn from_edges(ring: Ring, charges: &[QuadInt], edges: &[(usize, usize, QuadInt)]) -> Self {
        let n = charges.len();
        let mut g = HermitianGraph::zero(ring, n);
        for (i, c) in charges.iter().enumerate() {
            g.w[i * n + i] = *c;
        }
        for &(i, j, x) in edges {
            g.set_edge(i, j, x);
        }
        g
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> QuadInt {
        self.w[i * self.n + j]
    }

    pub fn entries(&self) -> &[QuadInt] {
        &self.w
    }

    pub fn charge(&self, i: usize) -> QuadInt {
        self.get(i, i)
    }

    /// Sets `(i, j)` to `x` and `(j, i)` to its complex conjugate.
    pub fn set_edge(&mut self, i: usize, j: usize, x: QuadInt) {
        let n = self.n;
        self.w[i * n + j] = x;
        self.w[j * n + i] = x.cc();
    }

    pub fn set_charge(&mut self, i: usize, x: QuadInt) {
        let n = self.n;
        self.w[i * n + i] = x;
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && !self.get(i, j).is_zero())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbours(i).count()
    }

    pub fn trace(&self) -> QuadInt {
        (0..self.n).fold(self.ring.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_rational(&self) -> bool {
        self.w.iter().all(|x| x.is_rational())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn delete_vertex(&self, v: usize) -> HermitianGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        self.principal(&keep)
    }

    /// Principal submatrix on the given vertex list, in that order.
    pub fn principal(&self, idx: &[usize]) -> HermitianGraph {
        let m = idx.len();
        let mut w = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                w.push(self.get(i, j));
            }
        }
        HermitianGraph {
            ring: self.ring,
            n: m,
            w,
        }
    }

    /// Appends a vertex with the given charge and column `col[k] = w(k, new)`.
    pub fn extend(&self, charge: QuadInt, col: &[QuadInt]) -> HermitianGraph {
        let n = self.n;
        let mut g = HermitianGraph::zero(self.ring, n + 1);
        for i in 0..n {
            for j in 0..n {
                g.w[i * (n + 1) + j] = self.get(i, j);
            }
        }
        g.set_charge(n, charge);
        for (k, &x) in col.iter().enumerate() {
            g.set_edge(k, n, x);
        }
        g
    }

    /// `eps * A + c * I`.
    pub fn affine(&self, eps: i64, c: QuadInt) -> HermitianGraph {
        let n = self.n;
        let mut g = self.clone();
        for i in 0..n {
            for j in 0..n {
                let x = self.get(i, j);
                g.w[i * n + j] = if eps < 0 { -x } else { x };
            }
            g.w[i * n + i] = g.w[i * n + i] + c;
        }
        g
    }

    pub fn map_entries(&self, f: impl Fn(QuadInt) -> QuadInt) -> HermitianGraph {
        HermitianGraph {
            ring: self.ring,
            n: self.n,
            w: self.w.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Flat integer coordinates, used for deterministic ordering.
    pub fn coords(&self) -> Vec<i64> {
        self.w.iter().flat_map(|x| [x.a, x.b]).collect()
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            d: self.ring.d(),
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| [self.get(i, j).a, self.get(i, j).b]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, MatrixError> {
        let f: MatrixFile = serde_json::from_str(s).map_err(|e| MatrixError::Load {
            path: String::new(),
            line: e.line(),
            msg: e.to_string(),
        })?;
        f.into_graph()
    }

    pub fn load(path: &Path) -> Result<Self, MatrixError> {
        let s = std::fs::read_to_string(path)?;
        HermitianGraph::from_json(&s).map_err(|e| relabel(e, path, 1))
    }
}

fn relabel(e: MatrixError, path: &Path, line: usize) -> MatrixError {
    match e {
        MatrixError::Load { line: l, msg, .. } => MatrixError::Load {
            path: path.display().to_string(),
            line: l.max(line),
            msg,
        },
        MatrixError::Io(e) => MatrixError::Io(e),
        other => MatrixError::Load {
            path: path.display().to_string(),
            line,
            msg: other.to_string(),
        },
    }
}

/// Reads one matrix per line.
pub fn load_jsonl(path: &Path) -> Result<Vec<HermitianGraph>, MatrixError> {
    let s = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(HermitianGraph::from_json(line).map_err(|e| relabel(e, path, i + 1))?);
    }
    Ok(out)
}

/// On-disk matrix format: full matrix, row-major, each entry `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d: i64,
    pub n: usize,
    pub entries: Vec<Vec<[i64; 2]>>,
}

impl MatrixFile {
    pub fn into_graph(self) -> Result<HermitianGraph, MatrixError> {
        let ring = Ring::new(self.d)?;
        if self.entries.len() != self.n {
            return Err(MatrixError::Shape {
                expected: self.n,
                found: self.entries.len(),
            });
        }
        let mut w = Vec::with_capacity(self.n * self.n);
        for row in &self.entries {
            if row.len() != self.n {
                return Err(MatrixError::Shape {
                    expected: self.n,
                    found: row.len(),
                });
            }
            w.extend(row.iter().map(|e| ring.elem(e[0], e[1])));
        }
        HermitianGraph::new(ring, self.n, w)
    }
}

impl fmt::Display for HermitianGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Checks symmetry and the entry bounds: charges have house below 5/2 and
/// off-diagonal entries have house below 2.
pub fn validate(g: &HermitianGraph) -> Result<(), Violation> {
    let n = g.n();
    let v = |kind, row, col| Err(Violation { kind, row, col });
    for i in 0..n {
        let c = g.get(i, i);
        if c.cc() != c {
            return v(ViolationKind::ChargeNotReal, i, i);
        }
        if c.house_cmp(&rat(5, 2)) != Ordering::Less {
            return v(ViolationKind::ChargeTooLarge, i, i);
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if g.get(i, j) != g.get(j, i).cc() {
                return v(ViolationKind::NotHermitian, i, j);
            }
            if g.get(i, j).house_cmp(&rat(2, 1)) != Ordering::Less {
                return v(ViolationKind::WeightTooLarge, i, j);
            }
        }
    }
    Ok(())
}

/// Which structural constraints apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Entry bounds only.
    Early,
    /// Entry bounds plus the row-support bound.
    Rows,
    /// Everything in `Rows` plus the constraints valid on seven or more
    /// vertices.
    Late,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterFailure {
    Bounds(ViolationKind),
    /// An edge weight of absolute value 2 or more.
    HeavyWeight,
    /// A charge of absolute value above 1.
    HeavyCharge,
    /// A triangle with fewer than two charged vertices.
    SparseTriangle,
    /// A triangle in a graph with an edge of absolute value above 1.
    TriangleWithHeavyEdge,
    /// A charged vertex on an edge of absolute value above 1.
    ChargedHeavyEdge,
    /// Too many neighbours at one vertex.
    RowSupport,
}

/// Maximum number of neighbours of a vertex once the row bound applies.
pub fn row_support_bound(ring: Ring) -> usize {
    if ring.d() == -3 {
        4
    } else {
        3
    }
}

/// The stage used when growing to `n` vertices.
pub fn stage_for(ring: Ring, n: usize) -> Stage {
    let rows_from = if ring.d() == -3 { 7 } else { 6 };
    if n >= 7 {
        Stage::Late
    } else if n >= rows_from {
        Stage::Rows
    } else {
        Stage::Early
    }
}

/// Like `structural_filter`, but at the late stage the charge-dependent
/// constraints are tested on every form `eps * g + c I` within the entry
/// bounds, and `g` passes if one of them does. Charges are not invariant under
/// equivalence, so the plain filter can reject a class that merely sits at
/// the wrong shift.
pub fn structural_filter_up_to_shift(g: &HermitianGraph, stage: Stage) -> Result<(), FilterFailure> {
    let first = structural_filter(g, stage);
    if stage != Stage::Late || first.is_ok() {
        return first;
    }
    if matches!(
        first,
        Err(FilterFailure::Bounds(_) | FilterFailure::RowSupport | FilterFailure::HeavyWeight)
    ) {
        return first;
    }
    for eps in [1, -1] {
        for c in -2..=2 {
            if eps == 1 && c == 0 {
                continue;
            }
            let h = g.affine(eps, g.ring().int(c));
            if validate(&h).is_ok() && structural_filter(&h, stage).is_ok() {
                return Ok(());
            }
        }
    }
    first
}

pub fn structural_filter(g: &HermitianGraph, stage: Stage) -> Result<(), FilterFailure> {
    validate(g).map_err(|v| FilterFailure::Bounds(v.kind))?;
    if stage == Stage::Early {
        return Ok(());
    }
    let n = g.n();
    if (0..n).any(|i| g.degree(i) > row_support_bound(g.ring())) {
        return Err(FilterFailure::RowSupport);
    }
    if stage == Stage::Rows {
        return Ok(());
    }
    let one = rat(1, 1);
    let two = rat(2, 1);
    let heavy = |x: QuadInt| x.house_cmp(&one) == Ordering::Greater;
    let mut any_heavy = false;
    for i in 0..n {
        if heavy(g.charge(i)) {
            return Err(FilterFailure::HeavyCharge);
        }
        for j in g.neighbours(i) {
            let x = g.get(i, j);
            if x.house_cmp(&two) != Ordering::Less {
                return Err(FilterFailure::HeavyWeight);
            }
            if heavy(x) {
                any_heavy = true;
                if !g.charge(i).is_zero() {
                    return Err(FilterFailure::ChargedHeavyEdge);
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.get(i, j).is_zero() {
                continue;
            }
            for k in (j + 1)..n {
                if g.get(i, k).is_zero() || g.get(j, k).is_zero() {
                    continue;
                }
                if any_heavy {
                    return Err(FilterFailure::TriangleWithHeavyEdge);
                }
                let charged = [i, j, k]
                    .iter()
                    .filter(|&&v| !g.charge(v).is_zero())
                    .count();
                if charged < 2 {
                    return Err(FilterFailure::SparseTriangle);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let r = Ring::new(-1).unwrap();
        let i = r.omega();
        let w = vec![r.zero(), i, i, r.zero()];
        assert!(matches!(
            HermitianGraph::new(r, 2, w),
            Err(MatrixError::NotHermitian { .. })
        ));
        let w = vec![r.zero(), i, -i, r.zero()];
        assert!(HermitianGraph::new(r, 2, w).is_ok());
    }

    #[test]
    fn real_ring_allows_irrational_charge() {
        let r = Ring::new(2).unwrap();
        let s = r.omega();
        let g = HermitianGraph::from_edges(r, &[s, r.zero()], &[(0, 1, r.one())]);
        assert!(HermitianGraph::new(r, 2, g.entries().to_vec()).is_ok());
        assert!(validate(&g).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::new(-3).unwrap();
        let g = HermitianGraph::from_edges(
            r,
            &[r.one(), r.zero(), r.int(-1)],
            &[(0, 1, r.omega()), (1, 2, r.elem(1, -1))],
        );
        let s = g.to_json();
        assert_eq!(HermitianGraph::from_json(&s).unwrap(), g);
        assert!(s.starts_with("{\"d\":-3,\"n\":3,\"entries\":[[[1,0],"));
    }

    #[test]
    fn bounds() {
        let r = Ring::new(-2).unwrap();
        let g = HermitianGraph::from_edges(r, &[r.zero(), r.zero()], &[(0, 1, r.int(2))]);
        assert_eq!(validate(&g).unwrap_err().kind, ViolationKind::WeightTooLarge);
        let g = HermitianGraph::from_edges(r, &[r.int(3), r.zero()], &[(0, 1, r.one())]);
        assert_eq!(validate(&g).unwrap_err().kind, ViolationKind::ChargeTooLarge);
    }

    #[test]
    fn late_filter() {
        let r = Ring::new(-1).unwrap();
        let z = r.zero();
        let tri = HermitianGraph::from_edges(
            r,
            &[r.one(), z, z],
            &[(0, 1, r.one()), (1, 2, r.one()), (0, 2, r.one())],
        );
        assert_eq!(
            structural_filter(&tri, Stage::Late),
            Err(FilterFailure::SparseTriangle)
        );
        assert!(structural_filter(&tri, Stage::Early).is_ok());
        let heavy = HermitianGraph::from_edges(r, &[r.one(), z], &[(0, 1, r.elem(1, 1))]);
        assert_eq!(
            structural_filter(&heavy, Stage::Late),
            Err(FilterFailure::ChargedHeavyEdge)
        );
    }
}
