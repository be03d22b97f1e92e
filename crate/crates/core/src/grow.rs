//! Exhaustive growth of small-span matrices one vertex at a time.

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

use crate::charpoly::char_poly;
use crate::equivalence::{bucket_key, equivalent, equivalent_to_rational, galois, BucketKey};
use crate::matrix::{stage_for, structural_filter_up_to_shift, HermitianGraph, Stage};
use crate::numeric::{spectral_values, Tri, MARGIN};
use crate::realroots::{spectral_roots, spectral_verdict, EmbeddingCheck, SpanClass};
use crate::ring::{rat, QuadInt, Ring};

#[derive(Debug, Error)]
pub enum GrowError {
    #[error("level {n} has {count} classes, above the ceiling of {ceiling}")]
    Ceiling {
        n: usize,
        count: usize,
        ceiling: usize,
    },
    #[error("level {0} is not available")]
    MissingLevel(usize),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone)]
pub struct GrowConfig {
    pub ring: Ring,
    pub max_n: usize,
    pub embedding_check: EmbeddingCheck,
    /// Keep candidates whose characteristic polynomial has irrational
    /// coefficients (real rings only).
    pub keep_noninteger_charpoly: bool,
    pub workers: usize,
    /// Apply the row-support bound and the seven-vertex structural
    /// constraints when growing past the sizes at which they hold.
    pub structural_filters: bool,
    pub class_ceiling: usize,
}

impl GrowConfig {
    pub fn new(ring: Ring, max_n: usize) -> Self {
        GrowConfig {
            ring,
            max_n,
            embedding_check: EmbeddingCheck::Both,
            keep_noninteger_charpoly: true,
            workers: 0,
            structural_filters: true,
            class_ceiling: 1_000_000,
        }
    }
}

/// Exact-on-demand test for "all tested eigenvalues in `[-2, 5/2)` and span
/// below 4".
pub fn passes(g: &HermitianGraph, mode: EmbeddingCheck) -> bool {
    let ev = spectral_values(g, mode);
    match crate::numeric::small_span_in_window(&ev) {
        Tri::Yes => true,
        Tri::No => false,
        Tri::Unsure => spectral_verdict(g, mode)
            .map(|v| v.small_span_in_window())
            .unwrap_or(false),
    }
}

/// Exact-on-demand test for "span below 4", window ignored.
pub fn small_span(g: &HermitianGraph, mode: EmbeddingCheck) -> bool {
    let ev = spectral_values(g, mode);
    match crate::numeric::small_span(&ev) {
        Tri::Yes => true,
        Tri::No => false,
        Tri::Unsure => spectral_roots(g, mode)
            .map(|r| r.span_class() == SpanClass::LessThan4)
            .unwrap_or(false),
    }
}

fn in_window(g: &HermitianGraph, mode: EmbeddingCheck) -> bool {
    let ev = spectral_values(g, mode);
    let (Some(&lo), Some(&hi)) = (ev.first(), ev.last()) else {
        return true;
    };
    if lo < -2.0 - MARGIN || hi > 2.5 + MARGIN {
        return false;
    }
    if lo > -2.0 + MARGIN && hi < 2.5 - MARGIN {
        return true;
    }
    spectral_roots(g, mode)
        .map(|r| r.in_window())
        .unwrap_or(false)
}

/// The transforms `s(eps*g + cI)` with every tested eigenvalue in the window.
/// The automorphism `s` is only needed for real rings under the single
/// embedding check; elsewhere it maps extensions to extensions.
pub fn window_normalizations(g: &HermitianGraph, mode: EmbeddingCheck) -> Vec<HermitianGraph> {
    let ring = g.ring();
    let use_galois = !ring.is_imaginary() && mode == EmbeddingCheck::Single;
    let bases: Vec<HermitianGraph> = if use_galois {
        vec![g.clone(), galois(g)]
    } else {
        vec![g.clone()]
    };
    let mut out: Vec<HermitianGraph> = Vec::new();
    for b in bases {
        for eps in [1i64, -1] {
            let t = b.affine(eps, ring.zero());
            let ev = spectral_values(&t, mode);
            let (lo, hi) = match (ev.first(), ev.last()) {
                (Some(&l), Some(&h)) => (l, h),
                _ => (0.0, 0.0),
            };
            let cmin = (-2.0 - lo - 1e-6).ceil() as i64;
            let cmax = (2.5 - hi + 1e-6).floor() as i64;
            for c in cmin..=cmax {
                let h = t.affine(1, ring.int(c));
                if in_window(&h, mode) && !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Candidate charges and weights for a ring.
#[derive(Debug, Clone)]
pub struct Alphabet {
    pub charges: Vec<QuadInt>,
    pub weights: Vec<QuadInt>,
}

impl Alphabet {
    pub fn new(ring: Ring, mode: EmbeddingCheck) -> Self {
        let charges: Vec<QuadInt> = ring
            .elements_below(&rat(5, 2), true)
            .into_iter()
            .filter(|&x| passes(&HermitianGraph::from_edges(ring, &[x], &[]), mode))
            .collect();
        let mut weights: Vec<QuadInt> = ring
            .elements_below(&rat(2, 1), false)
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        weights.sort();
        Alphabet { charges, weights }
    }
}

/// Options for a single extension search.
#[derive(Debug, Clone, Copy)]
pub struct ExtendOptions {
    pub mode: EmbeddingCheck,
    pub stage: Stage,
    pub keep_noninteger_charpoly: bool,
    /// Require the extension to lie in the window (otherwise only span < 4).
    pub window: bool,
}

struct Extender<'a> {
    g: &'a HermitianGraph,
    alpha: &'a Alphabet,
    opts: ExtendOptions,
    row_bound: Option<usize>,
    /// squared absolute values of g's vertices' rows, per embedding
    stop_at_first: bool,
    found: Vec<HermitianGraph>,
    col: Vec<QuadInt>,
    charge: QuadInt,
}

fn embed_sq(x: QuadInt, sign: i8) -> f64 {
    let (re, im) = x.embed(sign);
    re * re + im * im
}

impl Extender<'_> {
    fn signs(&self) -> &'static [i8] {
        if !self.g.ring().is_imaginary() && self.opts.mode == EmbeddingCheck::Both {
            &[1, -1]
        } else {
            &[1]
        }
    }

    /// Rejects partial rows that cannot be completed.
    fn partial_ok(&self, k: usize) -> bool {
        // (A^2)_{vv} = x^2 + sum |w|^2 is at most the largest squared eigenvalue
        let bound = if self.opts.window { 6.25 } else { 16.0 };
        for &s in self.signs() {
            let tot: f64 = embed_sq(self.charge, s)
                + self.col[..=k].iter().map(|&w| embed_sq(w, s)).sum::<f64>();
            if tot > bound + MARGIN {
                return false;
            }
        }
        let idx: Vec<usize> = (0..=k).collect();
        let sub = self.g.principal(&idx).extend(self.charge, &self.col[..=k]);
        let ev = spectral_values(&sub, self.opts.mode);
        let t = if self.opts.window {
            crate::numeric::small_span_in_window(&ev)
        } else {
            crate::numeric::small_span(&ev)
        };
        t != Tri::No
    }

    fn dfs(&mut self, k: usize, nonzero: usize) {
        if self.stop_at_first && !self.found.is_empty() {
            return;
        }
        let n = self.g.n();
        if k == n {
            if nonzero > 0 {
                self.leaf();
            }
            return;
        }
        // zero entry
        self.col[k] = self.g.ring().zero();
        self.dfs(k + 1, nonzero);
        if self.row_bound.is_some_and(|b| nonzero + 1 > b || self.g.degree(k) + 1 > b) {
            return;
        }
        for wi in 0..self.alpha.weights.len() {
            let w = self.alpha.weights[wi];
            if nonzero == 0 && self.g.ring().unit_orbit_min(w) != w {
                continue;
            }
            self.col[k] = w;
            if self.partial_ok(k) {
                self.dfs(k + 1, nonzero + 1);
            }
            if self.stop_at_first && !self.found.is_empty() {
                return;
            }
        }
        self.col[k] = self.g.ring().zero();
    }

    fn leaf(&mut self) {
        let h = self.g.extend(self.charge, &self.col);
        if structural_filter_up_to_shift(&h, self.opts.stage).is_err() {
            return;
        }
        let ok = if self.opts.window {
            passes(&h, self.opts.mode)
        } else {
            small_span(&h, self.opts.mode)
        };
        if !ok {
            return;
        }
        if !self.opts.keep_noninteger_charpoly && !char_poly(&h).is_integer() {
            return;
        }
        self.found.push(h);
    }
}

fn run_extender(
    g: &HermitianGraph,
    alpha: &Alphabet,
    opts: ExtendOptions,
    stop_at_first: bool,
) -> Vec<HermitianGraph> {
    let row_bound = match opts.stage {
        Stage::Early => None,
        _ => Some(crate::matrix::row_support_bound(g.ring())),
    };
    let mut out = Vec::new();
    for &c in &alpha.charges {
        let mut e = Extender {
            g,
            alpha,
            opts,
            row_bound,
            stop_at_first,
            found: Vec::new(),
            col: vec![g.ring().zero(); g.n()],
            charge: c,
        };
        e.dfs(0, 0);
        out.append(&mut e.found);
        if stop_at_first && !out.is_empty() {
            break;
        }
    }
    out
}

/// All connected one-vertex extensions of `g` (as given, not up to
/// equivalence) that pass the spectral test, with the first nonzero new
/// weight fixed up to multiplication by a torsion unit.
pub fn extensions(g: &HermitianGraph, cfg: &GrowConfig) -> Vec<HermitianGraph> {
    let alpha = Alphabet::new(cfg.ring, cfg.embedding_check);
    let stage = if cfg.structural_filters {
        stage_for(cfg.ring, g.n() + 1)
    } else {
        Stage::Early
    };
    run_extender(
        g,
        &alpha,
        ExtendOptions {
            mode: cfg.embedding_check,
            stage,
            keep_noninteger_charpoly: cfg.keep_noninteger_charpoly,
            window: true,
        },
        false,
    )
}

/// One stored level.
#[derive(Debug, Clone)]
pub struct Level {
    pub n: usize,
    pub classes: Vec<HermitianGraph>,
    pub nonrational: Vec<bool>,
    /// Indices of maximal non-rational classes, once computed.
    pub maximal: Option<Vec<usize>>,
}

impl Level {
    pub fn new(n: usize, classes: Vec<HermitianGraph>) -> Self {
        let nonrational = classes.iter().map(|g| !equivalent_to_rational(g)).collect();
        Level {
            n,
            classes,
            nonrational,
            maximal: None,
        }
    }

    pub fn nonrational_count(&self) -> usize {
        self.nonrational.iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone)]
pub struct LevelLists {
    pub ring: Ring,
    pub mode: EmbeddingCheck,
    pub levels: Vec<Level>,
}

impl LevelLists {
    pub fn level(&self, n: usize) -> Option<&Level> {
        self.levels.iter().find(|l| l.n == n)
    }

    pub fn max_n(&self) -> usize {
        self.levels.iter().map(|l| l.n).max().unwrap_or(0)
    }
}

fn sort_key(g: &HermitianGraph) -> (BucketKey, Vec<i64>) {
    (bucket_key(g), g.coords())
}

/// Reduces graphs to one representative per equivalence class. The result is
/// ordered by bucket key and then coordinates, and does not depend on the
/// number of threads.
pub fn dedup_classes(graphs: Vec<HermitianGraph>) -> Vec<HermitianGraph> {
    let mut keyed: Vec<((BucketKey, Vec<i64>), HermitianGraph)> =
        graphs.into_par_iter().map(|g| (sort_key(&g), g)).collect();
    keyed.par_sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let mut groups: Vec<Vec<((BucketKey, Vec<i64>), HermitianGraph)>> = Vec::new();
    for item in keyed {
        match groups.last_mut() {
            Some(gr) if gr[0].0 .0 == item.0 .0 => gr.push(item),
            _ => groups.push(vec![item]),
        }
    }
    let reps: Vec<Vec<HermitianGraph>> = groups
        .into_par_iter()
        .map(|gr| {
            let mut reps: Vec<HermitianGraph> = Vec::new();
            for (_, g) in gr {
                if !reps.iter().any(|h| equivalent(h, &g)) {
                    reps.push(g);
                }
            }
            reps
        })
        .collect();
    reps.into_iter().flatten().collect()
}

/// The level-1 classes: `(a)` for real `a` with house below 5/2.
pub fn seeds(ring: Ring, mode: EmbeddingCheck) -> Vec<HermitianGraph> {
    let alpha = Alphabet::new(ring, mode);
    let gs = alpha
        .charges
        .iter()
        .map(|&c| HermitianGraph::from_edges(ring, &[c], &[]))
        .collect();
    dedup_classes(gs)
}

/// Grows the next level from the last one.
pub fn grow_level(prev: &Level, cfg: &GrowConfig) -> Result<Level, GrowError> {
    let n = prev.n + 1;
    let alpha = Alphabet::new(cfg.ring, cfg.embedding_check);
    let stage = if cfg.structural_filters {
        stage_for(cfg.ring, n)
    } else {
        Stage::Early
    };
    let opts = ExtendOptions {
        mode: cfg.embedding_check,
        stage,
        keep_noninteger_charpoly: cfg.keep_noninteger_charpoly,
        window: true,
    };
    let jobs: Vec<HermitianGraph> = prev
        .classes
        .par_iter()
        .flat_map_iter(|g| window_normalizations(g, cfg.embedding_check))
        .collect();
    // local reduction per job keeps memory bounded
    let found: Vec<HermitianGraph> = jobs
        .par_iter()
        .map(|g| dedup_local(run_extender(g, &alpha, opts, false)))
        .flatten_iter()
        .collect();
    let classes = dedup_classes(found);
    if classes.len() > cfg.class_ceiling {
        return Err(GrowError::Ceiling {
            n,
            count: classes.len(),
            ceiling: cfg.class_ceiling,
        });
    }
    Ok(Level::new(n, classes))
}

fn dedup_local(gs: Vec<HermitianGraph>) -> Vec<HermitianGraph> {
    let mut store = crate::equivalence::EquivStore::new();
    let mut out = Vec::new();
    for g in gs {
        if store.insert(g.clone()) {
            out.push(g);
        }
    }
    out
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, GrowError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        b = b.num_threads(workers);
    }
    let pool = b.build().map_err(|e| GrowError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Grows from `start` (or from the seeds) up to `cfg.max_n`, calling
/// `on_level` after each completed level.
pub fn grow_all_from(
    cfg: &GrowConfig,
    start: Option<LevelLists>,
    on_level: &mut (dyn FnMut(&Level) -> Result<(), GrowError> + Send),
) -> Result<LevelLists, GrowError> {
    with_pool(cfg.workers, || {
        let mut lists = match start {
            Some(l) => l,
            None => {
                let l1 = Level::new(1, seeds(cfg.ring, cfg.embedding_check));
                on_level(&l1)?;
                LevelLists {
                    ring: cfg.ring,
                    mode: cfg.embedding_check,
                    levels: vec![l1],
                }
            }
        };
        while lists.max_n() < cfg.max_n {
            let last = lists
                .levels
                .last()
                .ok_or(GrowError::MissingLevel(1))?
                .clone();
            let next = grow_level(&last, cfg)?;
            on_level(&next)?;
            lists.levels.push(next);
        }
        Ok(lists)
    })?
}

pub fn grow_all(cfg: &GrowConfig) -> Result<LevelLists, GrowError> {
    grow_all_from(cfg, None, &mut |_| Ok(()))
}

/// Whether some connected one-vertex extension of a graph equivalent to `g`
/// has span below 4. No structural filters are used.
pub fn has_small_span_extension(g: &HermitianGraph, mode: EmbeddingCheck) -> bool {
    let alpha = Alphabet::new(g.ring(), mode);
    let opts = ExtendOptions {
        mode,
        stage: Stage::Early,
        keep_noninteger_charpoly: true,
        window: true,
    };
    window_normalizations(g, mode)
        .iter()
        .any(|h| !run_extender(h, &alpha, opts, true).is_empty())
}

/// Indices of the maximal non-rational classes at level `n`. The next level
/// must be present in `lists`.
pub fn maximal_nonrational(lists: &LevelLists, n: usize) -> Result<Vec<usize>, GrowError> {
    let lvl = lists.level(n).ok_or(GrowError::MissingLevel(n))?;
    lists.level(n + 1).ok_or(GrowError::MissingLevel(n + 1))?;
    let mode = lists.mode;
    let flags: Vec<bool> = lvl
        .classes
        .par_iter()
        .zip(lvl.nonrational.par_iter())
        .map(|(g, &nr)| nr && !has_small_span_extension(g, mode))
        .collect();
    Ok(flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| i)
        .collect())
}

/// Fills in `maximal` for every level whose successor is stored.
pub fn compute_maximal(lists: &mut LevelLists, workers: usize) -> Result<(), GrowError> {
    let ns: Vec<usize> = lists.levels.iter().map(|l| l.n).collect();
    for n in ns {
        if lists.level(n + 1).is_none() {
            continue;
        }
        let m = with_pool(workers, || maximal_nonrational(lists, n))??;
        if let Some(l) = lists.levels.iter_mut().find(|l| l.n == n) {
            l.maximal = Some(m);
        }
    }
    Ok(())
}

/// Orders graphs for output.
pub fn output_order(a: &HermitianGraph, b: &HermitianGraph) -> Ordering {
    sort_key(a).cmp(&sort_key(b))
}
