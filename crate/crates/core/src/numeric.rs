//! Floating-point eigenvalues, used only to skip exact work when the answer is
//! clear by a wide margin.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::HermitianGraph;
use crate::realroots::EmbeddingCheck;

/// Decisions closer than this to a boundary go to exact arithmetic.
pub const MARGIN: f64 = 1e-7;

/// Eigenvalues under the embedding `sqrt d -> sign * sqrt d`, ascending.
pub fn eigenvalues(g: &HermitianGraph, sign: i8) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = if g.ring().is_imaginary() {
        let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
            let (re, im) = g.get(i, j).embed(sign);
            Complex64::new(re, im)
        });
        m.symmetric_eigenvalues().iter().copied().collect()
    } else {
        let m = DMatrix::<f64>::from_fn(n, n, |i, j| g.get(i, j).embed(sign).0);
        m.symmetric_eigenvalues().iter().copied().collect()
    };
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// All eigenvalues subject to the spectral conditions, ascending.
pub fn spectral_values(g: &HermitianGraph, mode: EmbeddingCheck) -> Vec<f64> {
    let mut ev = eigenvalues(g, 1);
    if !g.ring().is_imaginary() && mode == EmbeddingCheck::Both {
        ev.extend(eigenvalues(g, -1));
        ev.sort_by(|a, b| a.total_cmp(b));
    }
    ev
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unsure,
}

/// Numerical verdict on "every eigenvalue in `[-2, 5/2)` and span below 4".
pub fn small_span_in_window(ev: &[f64]) -> Tri {
    let (Some(&lo), Some(&hi)) = (ev.first(), ev.last()) else {
        return Tri::Yes;
    };
    if lo < -2.0 - MARGIN || hi > 2.5 + MARGIN || hi - lo > 4.0 + MARGIN {
        return Tri::No;
    }
    if lo > -2.0 + MARGIN && hi < 2.5 - MARGIN && hi - lo < 4.0 - MARGIN {
        return Tri::Yes;
    }
    Tri::Unsure
}

/// Numerical verdict on "span below 4", ignoring the window.
pub fn small_span(ev: &[f64]) -> Tri {
    let (Some(&lo), Some(&hi)) = (ev.first(), ev.last()) else {
        return Tri::Yes;
    };
    let s = hi - lo;
    if s > 4.0 + MARGIN {
        Tri::No
    } else if s < 4.0 - MARGIN {
        Tri::Yes
    } else {
        Tri::Unsure
    }
}
