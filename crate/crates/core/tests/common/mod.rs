use proptest::prelude::*;
use smallspan::ring::{QuadInt, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use smallspan::equivalence::{galois, permute, strong_equivalent, switch};
use smallspan::realroots::Point;
use smallspan::{joint_poly, sturm_count, HermitianGraph, IntPoly};

pub const DS: [i64; 8] = [-11, -7, -3, -2, -1, 2, 3, 5];

pub fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop::sample::select(DS.to_vec()).prop_map(|d| Ring::new(d).unwrap())
}

pub fn imaginary_ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![-11i64, -7, -3, -2, -1]).prop_map(|d| Ring::new(d).unwrap())
}

/// Random matrix with rational charges in -1..=1 and edge coordinates in -1..=1.
pub fn graph_in(ring: Ring, max_n: usize) -> impl Strategy<Value = HermitianGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let m = n * (n - 1) / 2;
        (
            prop::collection::vec(-1i64..=1, n),
            prop::collection::vec((-1i64..=1, -1i64..=1), m),
        )
            .prop_map(move |(ch, ws)| {
                let charges: Vec<QuadInt> = ch.iter().map(|&c| ring.int(c)).collect();
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let (a, b) = ws[k];
                        k += 1;
                        edges.push((i, j, ring.elem(a, b)));
                    }
                }
                HermitianGraph::from_edges(ring, &charges, &edges)
            })
    })
}

pub fn any_graph(max_n: usize) -> impl Strategy<Value = HermitianGraph> {
    ring_strategy().prop_flat_map(move |r| graph_in(r, max_n))
}

pub fn deterministic(cases: u32) -> proptest::test_runner::TestRunner {
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    TestRunner::new_with_rng(
        Config { cases, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}


/// Roots at most `t`, counted with multiplicity.
fn roots_upto(p: &IntPoly, t: &BigRational) -> usize {
    p.squarefree_decomposition()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.degree() > 0)
        .map(|(k, f)| (k + 1) * sturm_count(f, &Point::NegInf, &Point::At(t.clone()), false, true).unwrap())
        .sum()
}

/// Deleting a vertex moves the count of eigenvalues up to `t` by at most one.
pub fn interlacing(cases: u32) -> Result<(), String> {
    let mut runner = deterministic(cases);
    let strat = imaginary_ring().prop_flat_map(|r| graph_in(r, 6)).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, -12i64..=12)
    });
    runner
        .run(&strat, |(g, v, t2)| {
            let t = BigRational::new(BigInt::from(t2), BigInt::from(2));
            let whole = roots_upto(&joint_poly(&g), &t);
            let sub = if g.n() == 1 {
                0
            } else {
                roots_upto(&joint_poly(&g.delete_vertex(v)), &t)
            };
            prop_assert!(whole == sub || whole == sub + 1, "{whole} vs {sub}");
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Relabelling, switching and conjugating keep the characteristic polynomial.
pub fn invariance(cases: u32) -> Result<(), String> {
    let mut runner = deterministic(cases);
    let strat = any_graph(6).prop_flat_map(|g| {
        let n = g.n();
        let units = g.ring().torsion_units();
        (
            Just(g),
            Just(()).prop_perturb(move |_, mut rng| {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, (rng.next_u32() as usize) % (i + 1));
                }
                p
            }),
            prop::collection::vec((0..n, prop::sample::select(units)), 0..4),
            any::<bool>(),
        )
    });
    runner
        .run(&strat, |(g, perm, sw, conj)| {
            let mut h = permute(&g, &perm);
            for (v, u) in sw {
                h = switch(&h, v, u).unwrap();
            }
            if conj {
                h = galois(&h);
            }
            prop_assert_eq!(joint_poly(&h), joint_poly(&g));
            prop_assert!(strong_equivalent(&g, &h));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
