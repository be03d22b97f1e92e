use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use smallspan::equivalence::{equivalent, strong_equivalent};
use smallspan::grow::GrowConfig;
use smallspan::realroots::spectral_roots;
use smallspan::report::{
    load_lists, read_run_info, run_enumeration, scan_level, scan_targets, ConstrainedSearch,
    MissingPolys, ReportError, TableDiff, TABLE_D,
};
use smallspan::ring::parse_elem;
use smallspan::templates::{
    check_pq_determinant, check_span4_eigenvectors, Family, TemplateInstance,
};
use smallspan::{char_poly, joint_poly, EmbeddingCheck, HermitianGraph, IntPoly, Ring, SpanClass};

/// Small-span Hermitian matrices over quadratic integer rings.
#[derive(Parser)]
#[command(name = "smallspan", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Grow all small-span classes up to a number of rows
    Enumerate(EnumerateArgs),
    /// Compare stored runs with the expected count table
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Spectral verdict for a matrix file
    Span(FileArgs),
    /// Characteristic polynomial of a matrix file
    Charpoly(FileArgs),
    /// Decide equivalence of two matrix files
    Equiv { a: PathBuf, b: PathBuf },
    /// Build and certify template instances
    Template {
        #[command(subcommand)]
        what: TemplateCmd,
    },
    /// Look for the missing polynomials among stored classes
    MissingPolys(MissingArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Rings, comma separated, or "all"
    #[arg(long = "d", value_delimiter = ',', allow_hyphen_values = true, required = true)]
    d: Vec<String>,
    #[arg(long)]
    max_n: usize,
    /// Real rings only: test the eigenvalues of A alone or of A and its conjugate
    #[arg(long, default_value = "both")]
    embedding_check: EmbeddingCheck,
    /// Keep candidates whose characteristic polynomial is not integral
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    keep_noninteger_charpoly: bool,
    /// Disable the row-support and seven-vertex pruning
    #[arg(long)]
    no_structural_filters: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Diff maximal counts against the expected table
    Table1 {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    #[arg(long, default_value = "single")]
    embedding_check: EmbeddingCheck,
}

#[derive(Subcommand)]
enum TemplateCmd {
    /// Certify instances: determinants for P and Q, eigenvectors for X1-X4,
    /// and the spectral verdict for everything
    Check(TemplateArgs),
    /// Print an instance as a matrix file
    Show(TemplateArgs),
}

#[derive(Args)]
struct TemplateArgs {
    #[arg(long)]
    family: String,
    /// `7`, `3..30` (inclusive) or `2,3`
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, allow_hyphen_values = true)]
    ring: Option<i64>,
    /// Weight such as `w`, `-w`, `1+w`
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

#[derive(Args)]
struct MissingArgs {
    #[arg(long)]
    r: usize,
    /// Stored runs (needed for r = 6)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Rings for the r = 12 search, comma separated
    #[arg(long = "d", value_delimiter = ',', allow_hyphen_values = true)]
    d: Vec<i64>,
    /// Give up on a ring (not certified) once a level holds more classes
    #[arg(long, default_value_t = 20_000)]
    max_classes: usize,
    /// Extra polynomials, one coefficient row per line (constant term first)
    #[arg(long)]
    poly_file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Enumerate(a) => enumerate(a),
        Cmd::Verify {
            what: VerifyCmd::Table1 { input },
        } => verify_table1(&input),
        Cmd::Span(f) => span(&f),
        Cmd::Charpoly(f) => charpoly(&f),
        Cmd::Equiv { a, b } => equiv(&a, &b),
        Cmd::Template { what } => match what {
            TemplateCmd::Check(t) => template_check(&t),
            TemplateCmd::Show(t) => template_show(&t),
        },
        Cmd::MissingPolys(m) => missing_polys(&m),
    }
}

fn rings(spec: &[String]) -> Result<Vec<Ring>> {
    if spec.len() == 1 && spec[0] == "all" {
        return TABLE_D.iter().map(|&d| Ok(Ring::new(d)?)).collect();
    }
    spec.iter()
        .map(|s| {
            let d: i64 = s.trim().parse().with_context(|| format!("bad ring {s:?}"))?;
            Ok(Ring::admissible(d)?)
        })
        .collect()
}

fn enumerate(a: EnumerateArgs) -> Result<ExitCode> {
    for ring in rings(&a.d)? {
        let mut cfg = GrowConfig::new(ring, a.max_n);
        cfg.embedding_check = a.embedding_check;
        cfg.keep_noninteger_charpoly = a.keep_noninteger_charpoly;
        cfg.structural_filters = !a.no_structural_filters;
        cfg.workers = a.jobs;
        let d = ring.d();
        let lists = run_enumeration(&cfg, &a.out, a.resume.as_deref(), &mut |l| {
            eprintln!("d={d} n={} classes={}", l.n, l.classes.len());
        })?;
        println!("d,n,classes_total,classes_nonrational,maximal_nonrational");
        for r in smallspan::report::summary_rows(&lists) {
            let m = r.maximal_nonrational.map(|m| m.to_string()).unwrap_or_default();
            println!("{},{},{},{},{}", r.d, r.n, r.classes_total, r.classes_nonrational, m);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_table1(input: &Path) -> Result<ExitCode> {
    let (diff, missing) = TableDiff::from_dir(input);
    print!("{}", diff.to_markdown());
    for m in &missing {
        eprintln!("missing: {m}");
    }
    if diff.any_missing() {
        return Ok(ExitCode::from(3));
    }
    if diff.all_match() {
        println!("all 56 entries match");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{} of 56 entries differ", diff.mismatches());
        Ok(ExitCode::from(1))
    }
}

fn span_word(s: SpanClass) -> &'static str {
    match s {
        SpanClass::LessThan4 => "<4",
        SpanClass::Exactly4 => "=4",
        SpanClass::GreaterThan4 => ">4",
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict_line(g: &HermitianGraph, mode: EmbeddingCheck) -> Result<String> {
    let r = spectral_roots(g, mode)?;
    Ok(format!(
        "window: {}, span: {}, cyclotomic: {}",
        yes(r.in_window()),
        span_word(r.span_class()),
        yes(r.is_cyclotomic())
    ))
}

fn span(f: &FileArgs) -> Result<ExitCode> {
    let g = HermitianGraph::load(&f.file)?;
    println!("{}", verdict_line(&g, f.embedding_check)?);
    Ok(ExitCode::SUCCESS)
}

fn charpoly(f: &FileArgs) -> Result<ExitCode> {
    let g = HermitianGraph::load(&f.file)?;
    let chi = char_poly(&g);
    println!("{chi}");
    if !chi.is_integer() {
        println!("with conjugate: {}", joint_poly(&g));
    }
    Ok(ExitCode::SUCCESS)
}

fn equiv(a: &Path, b: &Path) -> Result<ExitCode> {
    let g = HermitianGraph::load(a)?;
    let h = HermitianGraph::load(b)?;
    if strong_equivalent(&g, &h) {
        println!("strongly equivalent");
    } else if equivalent(&g, &h) {
        println!("equivalent");
    } else {
        println!("not equivalent");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_params(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![vec![]]);
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().context("bad range start")?;
        let hi: usize = hi.trim().parse().context("bad range end")?;
        if lo > hi {
            bail!("empty range {s}");
        }
        return Ok((lo..=hi).map(|n| vec![n]).collect());
    }
    let v: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    Ok(vec![v.context("bad parameter list")?])
}

/// `F:params` is accepted as the family name too.
fn instances(t: &TemplateArgs) -> Result<Vec<TemplateInstance>> {
    let (fam, params) = match t.family.split_once(':') {
        Some((f, p)) => (f, p.to_string()),
        None => (t.family.as_str(), t.params.clone()),
    };
    let family: Family = fam.parse()?;
    let d = t.ring.unwrap_or(match family {
        Family::Q | Family::T | Family::X4 | Family::FrakC8 | Family::Cos6A | Family::Cos6B
        | Family::NearP => -3,
        _ => -2,
    });
    let ring = Ring::new(d)?;
    let weight = t
        .weight
        .as_deref()
        .map(|w| parse_elem(ring, w))
        .transpose()?;
    parse_params(&params)?
        .into_iter()
        .map(|p| Ok(TemplateInstance::new(family, &p, ring, weight)?))
        .collect()
}

fn label(t: &TemplateInstance) -> String {
    let p: Vec<String> = t.params.iter().map(|x| x.to_string()).collect();
    format!("{}:{} d={} weight={}", t.family, p.join(","), t.ring.d(), t.weight)
}

fn template_check(args: &TemplateArgs) -> Result<ExitCode> {
    let ts = instances(args)?;
    let mut all_ok = true;
    let mut dets = Vec::new();
    for t in &ts {
        let g = t.build();
        let mut line = label(t);
        if matches!(t.family, Family::P | Family::Q) {
            let c = check_pq_determinant(t)?;
            line += &format!("  det(A+2I)={} (predicted {})", c.computed, c.predicted);
            all_ok &= c.holds();
            dets.push(c.computed);
        }
        if matches!(t.family, Family::X1 | Family::X2 | Family::X3 | Family::X4) {
            let ok = check_span4_eigenvectors(t)?;
            line += &format!("  eigenvectors for 2 and -2: {}", if ok { "ok" } else { "FAIL" });
            all_ok &= ok;
        }
        line += &format!("  {}", verdict_line(&g, EmbeddingCheck::Single)?);
        println!("{line}");
    }
    if let Some(first) = dets.first() {
        if dets.len() > 1 && dets.iter().all(|x| x == first) && all_ok {
            println!("det(A+2I)={first} for all n");
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn template_show(args: &TemplateArgs) -> Result<ExitCode> {
    for t in instances(args)? {
        println!("{}", t.build().to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn read_poly_file(path: &Path) -> Result<Vec<IntPoly>> {
    let s = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let c: Result<Vec<i64>, _> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse())
            .collect();
        let c = c.map_err(|_| anyhow!("{}:{}: bad coefficient row", path.display(), i + 1))?;
        out.push(IntPoly::from_i64(&c));
    }
    Ok(out)
}

fn missing_polys(m: &MissingArgs) -> Result<ExitCode> {
    if !MissingPolys::self_check()? {
        bail!("built-in polynomials failed their small-span self-check");
    }
    match m.r {
        6 => missing_r6(m),
        12 => missing_r12(m),
        r => Err(ReportError::Degree(r).into()),
    }
}

fn missing_r6(m: &MissingArgs) -> Result<ExitCode> {
    let input = m
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("--in is required for r = 6"))?;
    let mut targets = scan_targets(6)?;
    let near = &IntPoly::from_i64(&[1, 1]) * &MissingPolys::p();
    let mut extra = Vec::new();
    if let Some(f) = &m.poly_file {
        extra = read_poly_file(f)?;
    }
    targets.extend(extra.iter().filter(|p| p.degree() == 6).cloned());
    let mut p_found = false;
    let mut scanned = 0;
    for &d in &TABLE_D {
        let mode = match read_run_info(input, d)? {
            Some(info) => info.embedding_check.parse().map_err(|e: String| anyhow!(e))?,
            None => EmbeddingCheck::Both,
        };
        let Some(lists) = load_lists(input, d, mode)? else {
            eprintln!("d={d}: no stored run");
            continue;
        };
        if lists.level(6).is_none() {
            eprintln!("d={d}: level 6 not stored");
            continue;
        }
        scanned += 1;
        for h in scan_level(&lists, 6, &targets) {
            if h.target == 0 {
                p_found = true;
            }
            println!("d={d} n=6 class {}: {}", h.index, targets[h.target]);
        }
        let mut seven: Vec<IntPoly> = MissingPolys::non_cosine().into();
        seven.push(near.clone());
        seven.extend(extra.iter().filter(|p| p.degree() == 7).cloned());
        for h in scan_level(&lists, 7, &seven) {
            let name = match h.target {
                0..=2 => format!("non-cosine #{}", h.target + 1),
                3 => "(x+1)p(x)".to_string(),
                _ => "listed".to_string(),
            };
            println!("d={d} n=7 class {}: {name} = {}", h.index, seven[h.target]);
        }
    }
    println!(
        "p(x) = {} attained at 6 rows: {} ({scanned} rings scanned)",
        MissingPolys::p(),
        yes(p_found)
    );
    Ok(if p_found {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn missing_r12(m: &MissingArgs) -> Result<ExitCode> {
    let ds: Vec<i64> = if m.d.is_empty() { TABLE_D.to_vec() } else { m.d.clone() };
    let target = MissingPolys::p().pow(2);
    let total = ds.len();
    let mut certified = 0;
    let mut found = false;
    for d in ds {
        let mut s = ConstrainedSearch::new(Ring::new(d)?, target.clone())?;
        s.class_ceiling = m.max_classes;
        let out = s.run_observed(12, |n, k| eprintln!("d={d} n={n} classes={k}"));
        let sizes: Vec<String> = out.level_sizes.iter().map(|x| x.to_string()).collect();
        if !out.complete {
            println!("d={d}: not certified (class ceiling reached; sizes {})", sizes.join(" "));
            continue;
        }
        certified += 1;
        found |= !out.hits.is_empty();
        println!(
            "d={d}: level sizes {}; matrices with characteristic polynomial p(x)^2: {}",
            sizes.join(" "),
            out.hits.len()
        );
        for g in &out.hits {
            println!("  {}", g.to_json());
        }
    }
    if found {
        return Ok(ExitCode::from(1));
    }
    if certified == 0 {
        println!("p(x)^2 at 12 rows: undecided (0 of {total} rings certified)");
    } else {
        println!("p(x)^2 attained at 12 rows: no ({certified} of {total} rings certified)");
    }
    Ok(if certified == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
