//! Inputs shared by the benchmarks in `benches/`.

use smallspan::equivalence::permute;
use smallspan::ring::Ring;
use smallspan::templates::{Family, TemplateInstance};
use smallspan::HermitianGraph;

/// Sizes used for the per-matrix kernels.
pub const PATH_SIZES: [usize; 3] = [6, 9, 13];

/// P_n over d = -7 with its default weight.
pub fn path(n: usize) -> HermitianGraph {
    let ring = Ring::new(-7).unwrap();
    TemplateInstance::new(Family::P, &[n], ring, None).unwrap().build()
}

/// frakC8 and a relabelling of it, so `equivalent` has to search.
pub fn octagon_pair() -> (HermitianGraph, HermitianGraph) {
    let g = TemplateInstance::new(Family::FrakC8, &[], Ring::new(-3).unwrap(), None)
        .unwrap()
        .build();
    let h = permute(&g, &[3, 1, 4, 0, 7, 2, 6, 5]);
    (g, h)
}
