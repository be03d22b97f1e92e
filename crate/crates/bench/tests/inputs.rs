use smallspan::equivalence::{bucket_key, equivalent};
use smallspan::{spectral_verdict, EmbeddingCheck, SpanClass};
use smallspan_bench::{octagon_pair, path, PATH_SIZES};

// The kernels should be timed on the inputs they are meant for.

#[test]
fn paths_are_small_span_and_cyclotomic() {
    for n in PATH_SIZES {
        let v = spectral_verdict(&path(n), EmbeddingCheck::Both).unwrap();
        assert_eq!(v.span, SpanClass::LessThan4, "n={n}");
        assert!(v.cyclotomic);
    }
}

#[test]
fn relabelled_octagon_is_equivalent() {
    let (g, h) = octagon_pair();
    assert_ne!(g, h);
    assert_eq!(bucket_key(&g), bucket_key(&h));
    assert!(equivalent(&g, &h));
}
