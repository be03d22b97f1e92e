//! Run artifacts, the expected count table and its diff, and the scan for
//! characteristic polynomials that are never attained.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charpoly::char_poly;
use crate::equivalence::strong_equivalent;
use crate::grow::{compute_maximal, grow_all_from, GrowConfig, GrowError, Level, LevelLists};
use crate::matrix::{load_jsonl, HermitianGraph, MatrixError};
use crate::numeric::eigenvalues;
use crate::poly::IntPoly;
use crate::realroots::{EmbeddingCheck, RootError, RootSet, SpanClass};
use crate::ring::{Ring, RingError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("malformed {path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("stored run in {path} used different settings: {msg}")]
    Settings { path: PathBuf, msg: String },
    #[error("degree {0} is not a positive multiple of 6")]
    Degree(usize),
    #[error(transparent)]
    Grow(#[from] GrowError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Column order of the count table.
pub const TABLE_D: [i64; 8] = [-11, -7, -3, -2, -1, 2, 3, 5];

/// Maximal non-rational class counts, rows `n = 2..=8`, columns `TABLE_D`.
pub const TABLE1: [[usize; 8]; 7] = [
    [2, 2, 2, 4, 2, 3, 2, 2],
    [0, 6, 3, 5, 8, 5, 0, 4],
    [0, 7, 10, 7, 16, 7, 0, 10],
    [0, 8, 9, 8, 10, 8, 0, 1],
    [0, 4, 14, 4, 6, 4, 0, 0],
    [0, 2, 2, 2, 3, 2, 0, 0],
    [0, 2, 3, 2, 3, 2, 0, 0],
];

pub fn expected_count(d: i64, n: usize) -> Option<usize> {
    let col = TABLE_D.iter().position(|&x| x == d)?;
    TABLE1.get(n.checked_sub(2)?).map(|row| row[col])
}

/// Settings a stored run was produced with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunInfo {
    pub d: i64,
    pub embedding_check: String,
    pub keep_noninteger_charpoly: bool,
    pub structural_filters: bool,
}

impl RunInfo {
    pub fn from_config(cfg: &GrowConfig) -> Self {
        RunInfo {
            d: cfg.ring.d(),
            embedding_check: cfg.embedding_check.to_string(),
            keep_noninteger_charpoly: cfg.keep_noninteger_charpoly,
            structural_filters: cfg.structural_filters,
        }
    }
}

pub fn ring_dir(out: &Path, d: i64) -> PathBuf {
    out.join(format!("d{d}"))
}

pub fn level_dir(out: &Path, d: i64, n: usize) -> PathBuf {
    ring_dir(out, d).join(format!("n{n}"))
}

pub fn write_run_info(out: &Path, info: &RunInfo) -> Result<(), ReportError> {
    let dir = ring_dir(out, info.d);
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let path = dir.join("run.json");
    let s = serde_json::to_string_pretty(info).expect("run info serialises");
    fs::write(&path, s + "\n").map_err(io_err(&path))
}

pub fn read_run_info(out: &Path, d: i64) -> Result<Option<RunInfo>, ReportError> {
    let path = ring_dir(out, d).join("run.json");
    if !path.exists() {
        return Ok(None);
    }
    let s = fs::read_to_string(&path).map_err(io_err(&path))?;
    serde_json::from_str(&s).map(Some).map_err(|e| ReportError::Format {
        path,
        msg: e.to_string(),
    })
}

/// Writes `classes.jsonl` (one matrix per line) and `flags.csv` for a level.
pub fn write_level(out: &Path, d: i64, level: &Level) -> Result<(), ReportError> {
    let dir = level_dir(out, d, level.n);
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let path = dir.join("classes.jsonl");
    let tmp = dir.join("classes.jsonl.tmp");
    {
        let f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        let mut w = BufWriter::new(f);
        for g in &level.classes {
            writeln!(w, "{}", g.to_json()).map_err(io_err(&tmp))?;
        }
        w.flush().map_err(io_err(&tmp))?;
    }
    // renaming last means a level directory with classes.jsonl is complete
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    write_flags(out, d, level)
}

pub fn write_flags(out: &Path, d: i64, level: &Level) -> Result<(), ReportError> {
    let path = level_dir(out, d, level.n).join("flags.csv");
    let mut s = String::from("index,nonrational,maximal\n");
    for (i, nr) in level.nonrational.iter().enumerate() {
        let m = match &level.maximal {
            Some(m) => (m.contains(&i) as u8).to_string(),
            None => String::new(),
        };
        let _ = writeln!(s, "{i},{},{m}", *nr as u8);
    }
    fs::write(&path, s).map_err(io_err(&path))
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryRow {
    pub d: i64,
    pub n: usize,
    pub classes_total: usize,
    pub classes_nonrational: usize,
    pub maximal_nonrational: Option<usize>,
}

pub fn summary_rows(lists: &LevelLists) -> Vec<SummaryRow> {
    lists
        .levels
        .iter()
        .map(|l| SummaryRow {
            d: lists.ring.d(),
            n: l.n,
            classes_total: l.classes.len(),
            classes_nonrational: l.nonrational_count(),
            maximal_nonrational: l.maximal.as_ref().map(|m| m.len()),
        })
        .collect()
}

pub fn write_summary(out: &Path, lists: &LevelLists) -> Result<(), ReportError> {
    let d = lists.ring.d();
    let path = ring_dir(out, d).join("summary.csv");
    let mut s = String::from("d,n,classes_total,classes_nonrational,maximal_nonrational\n");
    for r in summary_rows(lists) {
        let m = r.maximal_nonrational.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.d, r.n, r.classes_total, r.classes_nonrational, m
        );
    }
    fs::write(&path, s).map_err(io_err(&path))
}

pub fn read_summary(out: &Path, d: i64) -> Result<Vec<SummaryRow>, ReportError> {
    let path = ring_dir(out, d).join("summary.csv");
    let s = fs::read_to_string(&path).map_err(io_err(&path))?;
    let bad = |line: usize, msg: &str| ReportError::Format {
        path: path.clone(),
        msg: format!("line {line}: {msg}"),
    };
    let mut rows = Vec::new();
    for (k, line) in s.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(bad(k + 1, "expected 5 fields"));
        }
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad(k + 1, "bad number"));
        rows.push(SummaryRow {
            d: f[0].trim().parse().map_err(|_| bad(k + 1, "bad d"))?,
            n: num(f[1])?,
            classes_total: num(f[2])?,
            classes_nonrational: num(f[3])?,
            maximal_nonrational: if f[4].trim().is_empty() {
                None
            } else {
                Some(num(f[4])?)
            },
        });
    }
    Ok(rows)
}

/// Loads the consecutive stored levels `1..` of a run.
pub fn load_lists(out: &Path, d: i64, mode: EmbeddingCheck) -> Result<Option<LevelLists>, ReportError> {
    let ring = Ring::new(d)?;
    let mut levels = Vec::new();
    for n in 1.. {
        let path = level_dir(out, d, n).join("classes.jsonl");
        if !path.exists() {
            break;
        }
        let classes = load_jsonl(&path)?;
        if let Some(g) = classes.iter().find(|g| g.ring() != ring || g.n() != n) {
            return Err(ReportError::Format {
                path,
                msg: format!("matrix of size {} over d = {}", g.n(), g.ring().d()),
            });
        }
        levels.push(Level::new(n, classes));
    }
    if levels.is_empty() {
        return Ok(None);
    }
    Ok(Some(LevelLists { ring, mode, levels }))
}

/// Grows one ring to `cfg.max_n`, writing each level to `out` as soon as it
/// is complete, then fills in maximality and writes `summary.csv`. With
/// `resume`, stored levels there are reused if they were produced with the
/// same settings.
pub fn run_enumeration(
    cfg: &GrowConfig,
    out: &Path,
    resume: Option<&Path>,
    on_level: &mut (dyn FnMut(&Level) + Send),
) -> Result<LevelLists, ReportError> {
    let d = cfg.ring.d();
    let info = RunInfo::from_config(cfg);
    let mut start = None;
    if let Some(dir) = resume {
        if let Some(stored) = read_run_info(dir, d)? {
            if stored != info {
                return Err(ReportError::Settings {
                    path: ring_dir(dir, d),
                    msg: format!("{stored:?} vs {info:?}"),
                });
            }
            if let Some(mut lists) = load_lists(dir, d, cfg.embedding_check)? {
                lists.levels.retain(|l| l.n <= cfg.max_n);
                start = Some(lists);
            }
        }
    }
    write_run_info(out, &info)?;
    if let Some(lists) = &start {
        if resume != Some(out) {
            for l in &lists.levels {
                write_level(out, d, l)?;
            }
        }
    }
    let mut write_err: Option<ReportError> = None;
    let mut lists = grow_all_from(cfg, start, &mut |l| {
        on_level(l);
        if let Err(e) = write_level(out, d, l) {
            write_err = Some(e);
            return Err(GrowError::Other("could not write level".into()));
        }
        Ok(())
    })
    .map_err(|e| write_err.take().unwrap_or(ReportError::Grow(e)))?;
    compute_maximal(&mut lists, cfg.workers)?;
    for l in &lists.levels {
        write_flags(out, d, l)?;
    }
    write_summary(out, &lists)?;
    Ok(lists)
}

/// One cell of the table comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub d: i64,
    pub n: usize,
    pub expected: usize,
    pub computed: Option<usize>,
}

impl Cell {
    pub fn matches(&self) -> bool {
        self.computed == Some(self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDiff {
    pub cells: Vec<Cell>,
}

impl TableDiff {
    /// Compares computed counts (`None` where missing) against the table.
    pub fn new(computed: impl Fn(i64, usize) -> Option<usize>) -> Self {
        let mut cells = Vec::new();
        for n in 2..=8 {
            for &d in &TABLE_D {
                cells.push(Cell {
                    d,
                    n,
                    expected: expected_count(d, n).expect("inside the table"),
                    computed: computed(d, n),
                });
            }
        }
        TableDiff { cells }
    }

    pub fn from_dir(out: &Path) -> (Self, Vec<String>) {
        let mut missing = Vec::new();
        let mut data: Vec<(i64, Vec<SummaryRow>)> = Vec::new();
        for &d in &TABLE_D {
            match read_summary(out, d) {
                Ok(rows) => data.push((d, rows)),
                Err(e) => missing.push(format!("d={d}: {e}")),
            }
        }
        let diff = TableDiff::new(|d, n| {
            data.iter()
                .find(|(x, _)| *x == d)
                .and_then(|(_, rows)| rows.iter().find(|r| r.n == n))
                .and_then(|r| r.maximal_nonrational)
        });
        for c in &diff.cells {
            if c.computed.is_none() && data.iter().any(|(x, _)| *x == c.d) {
                missing.push(format!("d={}: no maximal count at n={}", c.d, c.n));
            }
        }
        (diff, missing)
    }

    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.matches())
    }

    pub fn any_missing(&self) -> bool {
        self.cells.iter().any(|c| c.computed.is_none())
    }

    pub fn mismatches(&self) -> usize {
        self.cells.iter().filter(|c| !c.matches()).count()
    }

    /// Markdown table; a differing cell shows `computed (expected)`.
    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| n |");
        for d in TABLE_D {
            let _ = write!(s, " {d} |");
        }
        s.push_str("\n|---|");
        for _ in TABLE_D {
            s.push_str("---|");
        }
        s.push('\n');
        for n in 2..=8 {
            let _ = write!(s, "| {n} |");
            for d in TABLE_D {
                let c = self
                    .cells
                    .iter()
                    .find(|c| c.d == d && c.n == n)
                    .expect("every cell present");
                match c.computed {
                    Some(v) if v == c.expected => {
                        let _ = write!(s, " {v} |");
                    }
                    Some(v) => {
                        let _ = write!(s, " **{v}** ({}) |", c.expected);
                    }
                    None => {
                        let _ = write!(s, " - ({}) |", c.expected);
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}

/// The three degree-6 cosine and three degree-7 non-cosine polynomials that
/// no integer symmetric matrix has as minimal polynomial.
pub struct MissingPolys;

impl MissingPolys {
    /// `x^6 - x^5 - 6x^4 + 6x^3 + 8x^2 - 8x + 1`
    pub fn p() -> IntPoly {
        IntPoly::from_i64(&[1, -8, 8, 6, -6, -1, 1])
    }

    pub fn cosine() -> [IntPoly; 3] {
        [
            Self::p(),
            IntPoly::from_i64(&[-7, 0, 14, 0, -7, 0, 1]),
            IntPoly::from_i64(&[-3, 0, 9, 0, -6, 0, 1]),
        ]
    }

    pub fn non_cosine() -> [IntPoly; 3] {
        [
            IntPoly::from_i64(&[-1, -10, -5, 15, 5, -7, -1, 1]),
            IntPoly::from_i64(&[-1, -12, 0, 19, 0, -8, 0, 1]),
            IntPoly::from_i64(&[7, -6, -17, 11, 11, -6, -2, 1]),
        ]
    }

    pub fn all() -> Vec<IntPoly> {
        let mut v: Vec<IntPoly> = Self::cosine().into();
        v.extend(Self::non_cosine());
        v
    }

    /// Every polynomial is small-span and has a translate in the window.
    pub fn self_check() -> Result<bool, RootError> {
        for p in Self::all() {
            let r = RootSet::from_int(&p)?;
            if r.span_class() != SpanClass::LessThan4 || normalise_into_window(&p)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Monic `+-f(eps*x + c)` with the sign fixing the leading coefficient.
fn transform(f: &IntPoly, eps: i64, c: i64) -> IntPoly {
    f.compose_linear(eps, &BigInt::from(c)).with_positive_leading()
}

/// A translate or reflection of `f` with every root in `[-2, 5/2)`.
pub fn normalise_into_window(f: &IntPoly) -> Result<Option<IntPoly>, RootError> {
    for eps in [1, -1] {
        for c in -8..=8 {
            let g = transform(f, eps, c);
            if crate::realroots::window_check(&g)? {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Whether the roots of `f` are `eps * (roots of g) + c` for some sign and
/// integer `c`.
pub fn poly_equivalent(f: &IntPoly, g: &IntPoly) -> bool {
    let n = f.degree();
    if n != g.degree() || n == 0 || !f.is_monic() || !g.is_monic() {
        return f == g;
    }
    let sf = -f.coeff(n - 1);
    let sg = -g.coeff(n - 1);
    let nn = BigInt::from(n);
    for eps in [1i64, -1] {
        // sum of f's roots = eps * sum of g's roots + n * c
        let diff = &sf - &sg * eps;
        if &diff % &nn != BigInt::from(0) {
            continue;
        }
        let c: BigInt = diff / &nn;
        let Ok(c) = i64::try_from(c) else { continue };
        // alpha = eps*beta + c means g(eps*(x - c)) vanishes at alpha
        if transform(g, eps, -eps * c) == *f {
            return true;
        }
    }
    false
}

/// A stored class whose characteristic polynomial is one of the targets.
#[derive(Debug, Clone)]
pub struct PolyHit {
    pub d: i64,
    pub n: usize,
    pub index: usize,
    pub target: usize,
    pub graph: HermitianGraph,
}

/// Which targets (up to equivalence) occur as characteristic polynomials of
/// stored classes at level `n`.
pub fn scan_level(lists: &LevelLists, n: usize, targets: &[IntPoly]) -> Vec<PolyHit> {
    let Some(level) = lists.level(n) else {
        return Vec::new();
    };
    let mut hits = Vec::new();
    for (i, g) in level.classes.iter().enumerate() {
        let Some(chi) = char_poly(g).to_int_poly() else {
            continue;
        };
        for (k, t) in targets.iter().enumerate() {
            if poly_equivalent(&chi, t) {
                hits.push(PolyHit {
                    d: lists.ring.d(),
                    n,
                    index: i,
                    target: k,
                    graph: g.clone(),
                });
            }
        }
    }
    hits
}

/// Targets for a degree-`r` scan: `p^(r/6)` first, then, for `r = 6`, the
/// other cosine polynomials.
pub fn scan_targets(r: usize) -> Result<Vec<IntPoly>, ReportError> {
    if r == 0 || r % 6 != 0 {
        return Err(ReportError::Degree(r));
    }
    let mut t = vec![MissingPolys::p().pow((r / 6) as u32)];
    if r == 6 {
        t.extend(MissingPolys::cosine().into_iter().skip(1));
    }
    Ok(t)
}

/// Growth restricted to matrices whose eigenvalues are roots of `p`, used to
/// rule out `p^2` at twelve rows. Candidates are pruned numerically against
/// `[min root - tol, max root + tol]`, which only ever keeps extra
/// candidates; the final comparison is exact.
pub struct ConstrainedSearch {
    pub ring: Ring,
    pub target: IntPoly,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub class_ceiling: usize,
}

#[derive(Debug, Clone)]
pub struct ConstrainedOutcome {
    pub level_sizes: Vec<usize>,
    pub hits: Vec<HermitianGraph>,
    /// `false` if the ceiling stopped the search.
    pub complete: bool,
}

impl ConstrainedSearch {
    pub fn new(ring: Ring, target: IntPoly) -> Result<Self, RootError> {
        let rs = RootSet::from_int(&target)?;
        let eps = num_rational::BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000));
        let (lo, _) = rs.min_root_interval(&eps);
        let (_, hi) = rs.max_root_interval(&eps);
        let f = |q: num_rational::BigRational| q.to_f64().unwrap_or(f64::NAN);
        Ok(ConstrainedSearch {
            ring,
            target,
            lo: f(lo),
            hi: f(hi),
            tol: 1e-6,
            class_ceiling: 20_000,
        })
    }

    fn fits(&self, g: &HermitianGraph) -> bool {
        let ev = eigenvalues(g, 1);
        ev.first().is_none_or(|&l| l >= self.lo - self.tol)
            && ev.last().is_none_or(|&h| h <= self.hi + self.tol)
    }

    /// Grows to `r` rows. Charges are rational integers and weights have
    /// house below 2; classes are kept up to strong equivalence.
    pub fn run(&self, r: usize) -> ConstrainedOutcome {
        self.run_observed(r, |_, _| {})
    }

    /// As [`run`](Self::run), calling `on_level(n, classes)` after each level.
    pub fn run_observed(&self, r: usize, mut on_level: impl FnMut(usize, usize)) -> ConstrainedOutcome {
        use rayon::prelude::*;
        let ring = self.ring;
        let charges: Vec<_> = ring
            .elements_below(&crate::ring::rat(5, 2), true)
            .into_iter()
            .filter(|c| c.is_rational() && self.fits(&HermitianGraph::from_edges(ring, &[*c], &[])))
            .collect();
        let mut weights: Vec<_> = ring
            .elements_below(&crate::ring::rat(2, 1), false)
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        weights.sort();
        let mut level: Vec<HermitianGraph> = charges
            .iter()
            .map(|&c| HermitianGraph::from_edges(ring, &[c], &[]))
            .collect();
        let mut sizes = vec![level.len()];
        on_level(1, level.len());
        for n in 2..=r {
            let found: Vec<HermitianGraph> = level
                .par_iter()
                .flat_map_iter(|g| self.extend(g, &charges, &weights))
                .collect();
            level = dedup_strong(found);
            sizes.push(level.len());
            on_level(n, level.len());
            if level.len() > self.class_ceiling {
                return ConstrainedOutcome {
                    level_sizes: sizes,
                    hits: Vec::new(),
                    complete: false,
                };
            }
        }
        let hits = level
            .into_iter()
            .filter(|g| char_poly(g).to_int_poly().as_ref() == Some(&self.target))
            .collect();
        ConstrainedOutcome {
            level_sizes: sizes,
            hits,
            complete: true,
        }
    }

    fn extend(
        &self,
        g: &HermitianGraph,
        charges: &[crate::ring::QuadInt],
        weights: &[crate::ring::QuadInt],
    ) -> Vec<HermitianGraph> {
        let n = g.n();
        let ring = self.ring;
        let mut out = Vec::new();
        let mut col = vec![ring.zero(); n];
        for &c in charges {
            self.dfs(g, c, weights, &mut col, 0, 0, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        g: &HermitianGraph,
        c: crate::ring::QuadInt,
        weights: &[crate::ring::QuadInt],
        col: &mut Vec<crate::ring::QuadInt>,
        k: usize,
        nonzero: usize,
        out: &mut Vec<HermitianGraph>,
    ) {
        let ring = self.ring;
        if k == g.n() {
            if nonzero > 0 {
                out.push(g.extend(c, col));
            }
            return;
        }
        col[k] = ring.zero();
        self.dfs(g, c, weights, col, k + 1, nonzero, out);
        for &w in weights {
            if nonzero == 0 && ring.unit_orbit_min(w) != w {
                continue;
            }
            col[k] = w;
            let idx: Vec<usize> = (0..=k).collect();
            if self.fits(&g.principal(&idx).extend(c, &col[..=k])) {
                self.dfs(g, c, weights, col, k + 1, nonzero + 1, out);
            }
        }
        col[k] = ring.zero();
    }
}

/// One representative per strong-equivalence class, bucketed by the exact
/// characteristic polynomial and its conjugate.
pub fn dedup_strong(gs: Vec<HermitianGraph>) -> Vec<HermitianGraph> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<Vec<i64>, Vec<HermitianGraph>> = BTreeMap::new();
    for g in gs {
        let chi = char_poly(&g);
        let a: Vec<i64> = chi.coeffs().iter().flat_map(|c| [c.a, c.b]).collect();
        let b: Vec<i64> = chi.conj().coeffs().iter().flat_map(|c| [c.a, c.b]).collect();
        let key = a.min(b);
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|h| strong_equivalent(h, &g)) {
            bucket.push(g);
        }
    }
    buckets.into_values().flatten().collect()
}
