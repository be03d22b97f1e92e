//! Switching, Galois conjugation and the two equivalence relations on
//! Hermitian graphs.
//!
//! `A` and `B` are strongly equivalent when `A = s(Q B Q*)` for a monomial
//! matrix `Q` with torsion-unit entries and a field automorphism `s`; they are
//! equivalent when `A` is strongly equivalent to `+-B + cI` with `c` in Z.

use std::collections::HashMap;

use thiserror::Error;

use crate::charpoly::char_poly;
use crate::matrix::HermitianGraph;
use crate::ring::{QuadInt, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("{0} is not a torsion unit of the ring")]
    NotAUnit(QuadInt),
    #[error("vertex {0} out of range")]
    Vertex(usize),
}

/// Multiplies row `v` by `u` and column `v` by the conjugate of `u`.
pub fn switch(g: &HermitianGraph, v: usize, u: QuadInt) -> Result<HermitianGraph, EquivError> {
    if v >= g.n() {
        return Err(EquivError::Vertex(v));
    }
    if u.ring() != g.ring() || !g.ring().torsion_units().contains(&u) {
        return Err(EquivError::NotAUnit(u));
    }
    let mut h = g.clone();
    for j in 0..g.n() {
        if j != v {
            h.set_edge(v, j, u * g.get(v, j));
        }
    }
    Ok(h)
}

/// Applies the nontrivial field automorphism to every entry. For imaginary
/// rings this is complex conjugation, i.e. the transpose.
pub fn galois(g: &HermitianGraph) -> HermitianGraph {
    g.map_entries(|x| x.conj())
}

/// Relabels: vertex `i` of `g` becomes vertex `perm[i]`.
pub fn permute(g: &HermitianGraph, perm: &[usize]) -> HermitianGraph {
    let n = g.n();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    g.principal(&inv)
}

/// Per-vertex data preserved by switching and relabelling.
fn vertex_invariant(g: &HermitianGraph, v: usize) -> (QuadInt, usize, Vec<QuadInt>) {
    let mut e: Vec<QuadInt> = g.neighbours(v).map(|j| g.get(v, j) * g.get(v, j).cc()).collect();
    e.sort();
    (g.charge(v), e.len(), e)
}

/// Breadth-first vertex order, component by component. The second vector gives
/// the already-ordered neighbour each vertex was reached from.
fn bfs_order(g: &HermitianGraph) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
    }
    (order, parent)
}

/// A relabelling and unit vector with `h[perm[i]][perm[j]] = u[i] g[i][j] conj(u[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchIso {
    pub perm: Vec<usize>,
    pub units: Vec<QuadInt>,
}

/// Finds a relabelling with switching taking `g` to `h`.
pub fn find_switch_iso(g: &HermitianGraph, h: &HermitianGraph) -> Option<SwitchIso> {
    let n = g.n();
    if n != h.n() || g.ring() != h.ring() {
        return None;
    }
    let gi: Vec<_> = (0..n).map(|v| vertex_invariant(g, v)).collect();
    let hi: Vec<_> = (0..n).map(|v| vertex_invariant(h, v)).collect();
    let mut a = gi.clone();
    let mut b = hi.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let (order, parent) = bfs_order(g);
    let units = g.ring().torsion_units();
    let mut st = Search {
        g,
        h,
        gi: &gi,
        hi: &hi,
        order: &order,
        parent: &parent,
        units: &units,
        perm: vec![usize::MAX; n],
        used: vec![false; n],
        u: vec![g.ring().one(); n],
    };
    if st.go(0) {
        Some(SwitchIso {
            perm: st.perm,
            units: st.u,
        })
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a HermitianGraph,
    h: &'a HermitianGraph,
    gi: &'a [(QuadInt, usize, Vec<QuadInt>)],
    hi: &'a [(QuadInt, usize, Vec<QuadInt>)],
    order: &'a [usize],
    parent: &'a [Option<usize>],
    units: &'a [QuadInt],
    perm: Vec<usize>,
    used: Vec<bool>,
    u: Vec<QuadInt>,
}

impl Search<'_> {
    fn go(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let ring = self.g.ring();
        for t in 0..self.h.n() {
            if self.used[t] || self.gi[v] != self.hi[t] {
                continue;
            }
            if let Some(p) = self.parent[v] {
                if self.h.get(self.perm[p], t).is_zero() {
                    continue;
                }
            }
            let cands: Vec<QuadInt> = match self.parent[v] {
                None => vec![ring.one()],
                Some(p) => {
                    let want = self.h.get(self.perm[p], t);
                    let base = self.u[p] * self.g.get(p, v);
                    self.units
                        .iter()
                        .copied()
                        .filter(|x| base * x.cc() == want)
                        .collect()
                }
            };
            for cu in cands {
                if !self.consistent(k, v, t, cu) {
                    continue;
                }
                self.perm[v] = t;
                self.used[t] = true;
                self.u[v] = cu;
                if self.go(k + 1) {
                    return true;
                }
                self.used[t] = false;
                self.perm[v] = usize::MAX;
            }
        }
        false
    }

    fn consistent(&self, k: usize, v: usize, t: usize, uv: QuadInt) -> bool {
        for &j in &self.order[..k] {
            let want = self.h.get(t, self.perm[j]);
            let got = uv * self.g.get(v, j) * self.u[j].cc();
            if want != got {
                return false;
            }
        }
        true
    }
}

pub fn strong_equivalent(g: &HermitianGraph, h: &HermitianGraph) -> bool {
    find_switch_iso(g, h).is_some() || find_switch_iso(&galois(g), h).is_some()
}

/// The integer `c` with `trace(h) = trace(eps*s(g)) + n*c`, if there is one.
fn translation(g: &HermitianGraph, h: &HermitianGraph) -> Option<i64> {
    let n = g.n() as i64;
    if n == 0 {
        return Some(0);
    }
    let diff = h.trace() - g.trace();
    if diff.b != 0 || diff.a % n != 0 {
        return None;
    }
    Some(diff.a / n)
}

/// The transforms `eps * s(g)` for `eps = +-1` and `s` either automorphism.
fn sign_galois_images(g: &HermitianGraph) -> [HermitianGraph; 4] {
    let zero = g.ring().zero();
    let c = galois(g);
    [
        g.clone(),
        g.affine(-1, zero),
        c.affine(-1, zero),
        c,
    ]
}

/// `h` is strongly equivalent to `+-g + cI` for some integer `c`.
pub fn equivalent(g: &HermitianGraph, h: &HermitianGraph) -> bool {
    if g.n() != h.n() || g.ring() != h.ring() {
        return false;
    }
    for t in sign_galois_images(g) {
        if let Some(c) = translation(&t, h) {
            let t = t.affine(1, g.ring().int(c));
            if find_switch_iso(&t, h).is_some() {
                return true;
            }
        }
    }
    false
}

/// Whether some equivalent matrix has all entries in Z.
pub fn equivalent_to_rational(g: &HermitianGraph) -> bool {
    let n = g.n();
    if (0..n).any(|i| !g.charge(i).is_rational()) {
        return false;
    }
    let (order, parent) = bfs_order(g);
    let units = g.ring().torsion_units();
    let mut u = vec![g.ring().one(); n];
    for &v in &order {
        if let Some(p) = parent[v] {
            let base = u[p] * g.get(p, v);
            match units.iter().find(|x| (base * x.cc()).is_rational()) {
                Some(&x) => u[v] = x,
                None => return false,
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !(u[i] * g.get(i, j) * u[j].cc()).is_rational() {
                return false;
            }
        }
    }
    true
}

/// Opaque key equal on equivalent graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BucketKey(pub Vec<i64>);

/// Trace-normalising translation: the rational part of the trace of
/// `g + cI` lands in `[0, n)`.
fn normalising_shift(t: QuadInt, n: usize) -> i64 {
    let n = n as i64;
    -t.a.div_euclid(n)
}

pub fn bucket_key(g: &HermitianGraph) -> BucketKey {
    let n = g.n();
    if n == 0 {
        return BucketKey(Vec::new());
    }
    let ring = g.ring();
    let chi = char_poly(g);
    let mut best: Option<Vec<i64>> = None;
    for (eps, conj) in [(1i64, false), (-1, false), (1, true), (-1, true)] {
        let base = if conj { chi.conj() } else { chi.clone() };
        let tr = {
            let t = if conj { g.trace().conj() } else { g.trace() };
            if eps < 0 {
                -t
            } else {
                t
            }
        };
        let c = normalising_shift(tr, n);
        // char poly of eps*s(g) + cI is eps^n s(chi)(eps x - eps c)
        let p = base.compose_linear(eps, ring.int(-eps * c));
        let flip = eps < 0 && n % 2 == 1;
        let mut key: Vec<i64> = p
            .coeffs()
            .iter()
            .flat_map(|x| {
                let x = if flip { -*x } else { *x };
                [x.a, x.b]
            })
            .collect();
        let mut verts: Vec<Vec<i64>> = (0..n)
            .map(|v| {
                let mut ch = g.charge(v);
                if conj {
                    ch = ch.conj();
                }
                if eps < 0 {
                    ch = -ch;
                }
                ch = ch + ring.int(c);
                let mut e: Vec<(i64, i64)> = g
                    .neighbours(v)
                    .map(|j| {
                        let x = g.get(v, j) * g.get(v, j).cc();
                        let x = if conj { x.conj() } else { x };
                        (x.b, x.a)
                    })
                    .collect();
                e.sort();
                let mut row = vec![ch.a, ch.b, e.len() as i64];
                row.extend(e.into_iter().flat_map(|(b, a)| [a, b]));
                row
            })
            .collect();
        verts.sort();
        for r in verts {
            key.push(-1);
            key.extend(r);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    BucketKey(best.unwrap_or_default())
}

/// Representatives of equivalence classes, bucketed by [`bucket_key`].
#[derive(Debug, Clone, Default)]
pub struct EquivStore {
    buckets: HashMap<BucketKey, Vec<HermitianGraph>>,
    len: usize,
}

impl EquivStore {
    pub fn new() -> Self {
        EquivStore::default()
    }

    /// Inserts `g` unless an equivalent graph is already stored.
    pub fn insert(&mut self, g: HermitianGraph) -> bool {
        let key = bucket_key(&g);
        self.insert_with_key(key, g)
    }

    pub fn insert_with_key(&mut self, key: BucketKey, g: HermitianGraph) -> bool {
        let b = self.buckets.entry(key).or_default();
        if b.iter().any(|h| equivalent(h, &g)) {
            return false;
        }
        b.push(g);
        self.len += 1;
        true
    }

    pub fn contains(&self, g: &HermitianGraph) -> bool {
        self.buckets
            .get(&bucket_key(g))
            .is_some_and(|b| b.iter().any(|h| equivalent(h, g)))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn into_graphs(self) -> Vec<HermitianGraph> {
        self.buckets.into_values().flatten().collect()
    }
}

/// Ring for which switching by torsion units maps `x` to each element of its orbit.
pub fn unit_orbit(ring: Ring, x: QuadInt) -> Vec<QuadInt> {
    let mut v: Vec<QuadInt> = ring.torsion_units().into_iter().map(|u| u * x).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switch_example() {
        let r = Ring::new(-1).unwrap();
        let g = HermitianGraph::from_edges(r, &[r.zero(), r.zero()], &[(0, 1, r.one())]);
        let h = switch(&g, 1, r.omega()).unwrap();
        assert_eq!(h.get(0, 1), r.elem(0, -1));
        assert_eq!(h.get(1, 0), r.elem(0, 1));
        assert!(switch(&g, 0, r.int(2)).is_err());
    }

    #[test]
    fn path_with_unit_weight_is_rational() {
        let r = Ring::new(-1).unwrap();
        let z = r.zero();
        let g = HermitianGraph::from_edges(r, &[z, z, z], &[(0, 1, r.omega()), (1, 2, r.one())]);
        assert!(equivalent_to_rational(&g));
        let g = HermitianGraph::from_edges(r, &[z, z], &[(0, 1, r.elem(1, 1))]);
        assert!(!equivalent_to_rational(&g));
    }

    #[test]
    fn triangle_with_odd_unit_product_is_not_rational() {
        let r = Ring::new(-1).unwrap();
        let z = r.zero();
        let g = HermitianGraph::from_edges(
            r,
            &[z, z, z],
            &[(0, 1, r.one()), (1, 2, r.one()), (2, 0, r.omega())],
        );
        assert!(!equivalent_to_rational(&g));
    }

    #[test]
    fn negation_and_shift() {
        let r = Ring::new(-7).unwrap();
        let (o, z) = (r.one(), r.zero());
        let g = HermitianGraph::from_edges(r, &[o, z, z], &[(0, 1, r.omega()), (1, 2, o)]);
        // traces 1 and 2, so only the shifted form can match
        let h = permute(&g.affine(-1, r.int(1)), &[2, 0, 1]);
        assert!(equivalent(&g, &h));
        assert!(!strong_equivalent(&g, &h));
        assert_eq!(bucket_key(&g), bucket_key(&h));
    }

    #[test]
    fn galois_on_real_ring() {
        let r = Ring::new(2).unwrap();
        let g = HermitianGraph::from_edges(r, &[r.omega(), r.zero()], &[(0, 1, r.one())]);
        let h = galois(&g);
        assert!(equivalent(&g, &h));
        assert!(strong_equivalent(&g, &h));
        assert!(!find_switch_iso(&g, &h).is_some());
        assert_eq!(bucket_key(&g), bucket_key(&h));
    }
}
