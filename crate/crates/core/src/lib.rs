//! Small-span Hermitian matrices over rings of integers of quadratic fields.

pub mod charpoly;
pub mod equivalence;
pub mod grow;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod realroots;
pub mod report;
pub mod ring;
pub mod templates;

pub use charpoly::{char_poly, joint_poly, RingPoly};
pub use matrix::{structural_filter, structural_filter_up_to_shift, validate, HermitianGraph, MatrixError, Stage};
pub use poly::IntPoly;
pub use realroots::{
    is_cyclotomic, span_class, spectral_verdict, sturm_count, window_check, EmbeddingCheck,
    RootError, SpanClass,
};
pub use ring::{QuadInt, Ring, RingError};
