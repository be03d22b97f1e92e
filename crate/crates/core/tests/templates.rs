use smallspan::numeric::eigenvalues;
use smallspan::ring::Ring;
use smallspan::templates::{shifted_determinant, Family, TemplateInstance};
use smallspan::{spectral_verdict, EmbeddingCheck, SpanClass};

/// Floating-point slack when the exact answer is compared with eigenvalues
/// from a dense solver.
const TOL: f64 = 1e-8;

fn instances() -> Vec<TemplateInstance> {
    let mut out = Vec::new();
    for d in [-11, -7, -3, -2, -1, 2, 3, 5] {
        let ring = Ring::new(d).unwrap();
        for fam in Family::all() {
            let sizes: Vec<Vec<usize>> = match fam.arity() {
                0 => vec![vec![]],
                1 => (3..=9).map(|n| vec![n]).collect(),
                _ => (2..=4).flat_map(|s| (2..=4).map(move |t| vec![s, t])).collect(),
            };
            for p in sizes {
                if let Ok(t) = TemplateInstance::new(fam, &p, ring, None) {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn exact_span_agrees_with_dense_eigenvalues() {
    let all = instances();
    assert!(all.len() > 200, "{}", all.len());
    for t in all {
        let g = t.build();
        let mut ev = eigenvalues(&g, 1);
        if !t.ring.is_imaginary() {
            ev.extend(eigenvalues(&g, -1));
        }
        let lo = ev.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        let exact = spectral_verdict(&g, EmbeddingCheck::Both).unwrap();
        let label = format!("{} {:?} d={}", t.family, t.params, t.ring.d());
        match exact.span {
            SpanClass::LessThan4 => assert!(span < 4.0 + TOL, "{label}: {span}"),
            SpanClass::Exactly4 => assert!((span - 4.0).abs() < TOL, "{label}: {span}"),
            SpanClass::GreaterThan4 => assert!(span > 4.0 - TOL, "{label}: {span}"),
        }
        assert_eq!(exact.cyclotomic, lo > -2.0 - TOL && hi < 2.0 + TOL, "{label}");
    }
}

#[test]
fn shifted_determinant_matches_eigenvalue_product() {
    for t in instances().into_iter().filter(|t| t.ring.is_imaginary()) {
        let g = t.build();
        let det = shifted_determinant(&g, 2);
        assert_eq!(det.b, 0, "Hermitian determinants are rational");
        let prod: f64 = eigenvalues(&g, 1).iter().map(|l| l + 2.0).product();
        assert!((prod - det.a as f64).abs() < 1e-6 * (1.0 + prod.abs()), "{} {prod}", t.family);
    }
}

#[test]
fn families_square_to_four_have_span_exactly_four() {
    for d in [-7, -2, -1, 2] {
        let ring = Ring::new(d).unwrap();
        for (fam, n) in [(Family::CEven, 4), (Family::COdd, 3)] {
            let g = TemplateInstance::new(fam, &[n], ring, None).unwrap().build();
            let v = spectral_verdict(&g, EmbeddingCheck::Single).unwrap();
            assert!(v.cyclotomic);
            assert_eq!(v.span, SpanClass::Exactly4, "{fam} d={d}");
        }
    }
    for d in [-1, -3] {
        let g = TemplateInstance::new(Family::T, &[4], Ring::new(d).unwrap(), None).unwrap().build();
        assert_eq!(spectral_verdict(&g, EmbeddingCheck::Single).unwrap().span, SpanClass::Exactly4);
    }
}

#[test]
fn families_need_their_rings() {
    let r = Ring::new(-11).unwrap();
    assert!(TemplateInstance::new(Family::P, &[5], r, None).is_err());
    assert!(TemplateInstance::new(Family::X4, &[3, 3], Ring::new(-7).unwrap(), None).is_err());
    assert!(TemplateInstance::new(Family::T, &[2], Ring::new(-3).unwrap(), None).is_err());
}
