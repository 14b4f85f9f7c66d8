//! Command-line surface for the degenflag library: enumeration, graph and
//! polynomial exports, fiber traces, and the cross-module identity suite.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use degenflag::cells::{
    cell_dim, defect_histogram, euler_characteristic, poincare, qt_genocchi, singular_codim_profile,
    smooth_count, smooth_poincare,
};
use degenflag::collections::{
    enumerate_admissible, enumerate_admissible_bottom_up, enumerate_d_admissible, is_smooth,
    is_smooth_partial, AdmissibleCollection, DVector,
};
use degenflag::desing::{fiber_is_singleton, fiber_trace};
use degenflag::error::Error;
use degenflag::moment_graph::{build_moment_graph, build_partial_moment_graph};
use degenflag::quiver::{is_smooth_ext, tangent_dim};
use degenflag::schroeder::{enumerate_paths, r_poly, r_poly_recursive, s_poly, sigma_pairing_report};

#[derive(Parser)]
#[command(name = "degenflag", version, about = "Exact combinatorics of degenerate flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Args)]
struct Common {
    /// Flag length n; subsets live in {1, ..., n+1}
    #[arg(long)]
    n: usize,
    /// Enumeration bound
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    /// Worker threads (0 = automatic)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output file (default: standard output)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Skip the enumeration cache
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List fixed points with their cell invariants
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Step vector for partial flags, e.g. 1,3
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Export the moment graph
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the counting polynomials for n
    Polys {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Subdiagonal path enumeration and polynomials
    Schroeder {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Trace the resolution-fiber recursion over one fixed point
    Fiber {
        /// The collection, e.g. 1|13|124
        collection: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the cross-module identity suite
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also compare against the committed reference graph ("appendixC")
        #[arg(long)]
        fixtures: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn setup_threads(threads: usize) {
    if threads > 0 {
        // ignore failure when a pool already exists (e.g. repeated setup)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .map_err(|e| Error::Validation(format!("stdout: {e}")))
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration cache
// ---------------------------------------------------------------------------

const CACHE_MAGIC: &[u8; 4] = b"DFC1";

fn cache_dir() -> PathBuf {
    std::env::var_os("DEGENFLAG_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("degenflag-cache"))
}

fn cache_read(n: usize) -> Option<Vec<AdmissibleCollection>> {
    let raw = fs::read(cache_dir().join(format!("admissible-{n}.bin"))).ok()?;
    if raw.len() < 16 || &raw[0..4] != CACHE_MAGIC {
        return None;
    }
    let file_n = u32::from_le_bytes(raw[4..8].try_into().unwrap()) as usize;
    let count = u64::from_le_bytes(raw[8..16].try_into().unwrap()) as usize;
    if file_n != n || raw.len() != 16 + 4 * n * count {
        return None;
    }
    let mut out = Vec::with_capacity(count);
    let mut off = 16;
    for _ in 0..count {
        let mut sets = Vec::with_capacity(n);
        for _ in 0..n {
            let mask = u32::from_le_bytes(raw[off..off + 4].try_into().unwrap());
            off += 4;
            let members = (0..n + 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 1);
            sets.push(degenflag::subset::Subset::new(members, n + 1).ok()?);
        }
        out.push(AdmissibleCollection::new(sets).ok()?);
    }
    Some(out)
}

fn cache_write(n: usize, all: &[AdmissibleCollection]) {
    let dir = cache_dir();
    if fs::create_dir_all(&dir).is_err() {
        return;
    }
    let mut raw = Vec::with_capacity(16 + 4 * n * all.len());
    raw.extend_from_slice(CACHE_MAGIC);
    raw.extend_from_slice(&(n as u32).to_le_bytes());
    raw.extend_from_slice(&(all.len() as u64).to_le_bytes());
    for s in all {
        for sub in s.sets() {
            raw.extend_from_slice(&sub.mask().to_le_bytes());
        }
    }
    let _ = fs::write(dir.join(format!("admissible-{n}.bin")), raw);
}

fn load_admissible(n: usize, max_n: usize, no_cache: bool) -> Result<Vec<AdmissibleCollection>, Error> {
    if n > max_n {
        return Err(Error::ResourceLimit { n, bound: max_n });
    }
    if !no_cache {
        if let Some(cached) = cache_read(n) {
            return Ok(cached);
        }
    }
    let all = degenflag::collections::enumerate_admissible_bounded(n, max_n)?;
    if !no_cache {
        cache_write(n, &all);
    }
    Ok(all)
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Enumerate { common, d, format } => {
            setup_threads(common.threads);
            let content = match d {
                None => {
                    let all = load_admissible(common.n, common.max_n, common.no_cache)?;
                    render_complete(&all, format)?
                }
                Some(steps) => {
                    let d = DVector::new(steps, common.n)?;
                    let all = enumerate_d_admissible(common.n, &d)?;
                    render_partial(&all, &d, format)?
                }
            };
            emit(&common.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph { common, d, format } => {
            setup_threads(common.threads);
            if common.n > common.max_n {
                return Err(Error::ResourceLimit { n: common.n, bound: common.max_n });
            }
            let content = match d {
                None => {
                    let g = build_moment_graph(common.n)?;
                    match format {
                        Format::Json => format!("{:#}\n", g.to_json()),
                        Format::Dot => g.to_dot(),
                        _ => return Err(Error::Validation("graph supports json or dot".into())),
                    }
                }
                Some(steps) => {
                    let d = DVector::new(steps, common.n)?;
                    let g = build_partial_moment_graph(common.n, &d)?;
                    match format {
                        Format::Json => format!("{:#}\n", g.to_json()),
                        Format::Dot => g.to_dot(),
                        _ => return Err(Error::Validation("graph supports json or dot".into())),
                    }
                }
            };
            emit(&common.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Polys { common, format } => {
            setup_threads(common.threads);
            let n = common.n;
            if n > common.max_n {
                return Err(Error::ResourceLimit { n, bound: common.max_n });
            }
            let p = poincare(n)?;
            let ps = smooth_poincare(n)?;
            let h = qt_genocchi(n)?;
            let r = r_poly(n);
            let s = s_poly(n)?;
            let content = match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "n": n,
                        "poincare": p.to_json(),
                        "smooth_poincare": ps.to_json(),
                        "qt_genocchi": h.to_json(),
                        "r_poly": r.to_json(),
                        "s_poly": s.to_json(),
                    });
                    format!("{v:#}\n")
                }
                Format::Text => format!(
                    "poincare        = {p}\nsmooth_poincare = {ps}\nqt_genocchi     = {h}\nr_poly          = {r}\ns_poly          = {s}\n"
                ),
                _ => return Err(Error::Validation("polys supports json or text".into())),
            };
            emit(&common.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Schroeder { common, format } => {
            let n = common.n;
            if n > common.max_n {
                return Err(Error::ResourceLimit { n, bound: common.max_n });
            }
            let r = r_poly(n);
            let s = s_poly(n)?;
            let content = match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "n": n,
                        "count": r.eval(1),
                        "r_poly": r.to_json(),
                        "s_poly": s.to_json(),
                    });
                    format!("{v:#}\n")
                }
                Format::Text => {
                    let mut out = format!("count  = {}\nr_poly = {r}\ns_poly = {s}\npaths:\n", r.eval(1));
                    for p in enumerate_paths(n) {
                        out.push_str(&format!("  {p:?}\n"));
                    }
                    out
                }
                _ => return Err(Error::Validation("schroeder supports json or text".into())),
            };
            emit(&common.output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { collection, format } => {
            let s = AdmissibleCollection::parse(&collection)?;
            let trace = fiber_trace(&s);
            let singleton = fiber_is_singleton(&s);
            let content = match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "collection": s.text(),
                        "singleton": singleton,
                        "trace": trace,
                    });
                    format!("{v:#}\n")
                }
                Format::Text => {
                    let mut out = String::new();
                    for step in &trace {
                        match step.obstruction {
                            None => out.push_str(&format!("n={} {}\n", step.n, step.collection)),
                            Some(a) => out.push_str(&format!(
                                "n={} {} blocked at index {a}\n",
                                step.n, step.collection
                            )),
                        }
                    }
                    out.push_str(&format!(
                        "fiber is {}\n",
                        if singleton { "a single point" } else { "positive-dimensional" }
                    ));
                    out
                }
                _ => return Err(Error::Validation("fiber supports json or text".into())),
            };
            emit(&None, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, fixtures } => {
            setup_threads(common.threads);
            verify(common.n, fixtures.as_deref())
        }
    }
}

fn render_complete(all: &[AdmissibleCollection], format: Format) -> Result<String, Error> {
    match format {
        Format::Csv => {
            let mut out = String::from("id,sets,dim,tangent,smooth\n");
            for (i, s) in all.iter().enumerate() {
                out.push_str(&format!(
                    "{i},{},{},{},{}\n",
                    s.text(),
                    cell_dim(s),
                    tangent_dim(s),
                    is_smooth(s)
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = all
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    serde_json::json!({
                        "id": i,
                        "sets": s,
                        "dim": cell_dim(s),
                        "tangent_dim": tangent_dim(s),
                        "smooth": is_smooth(s),
                    })
                })
                .collect();
            Ok(format!("{:#}\n", serde_json::Value::Array(rows)))
        }
        Format::Text => {
            let mut out = String::new();
            for s in all {
                out.push_str(&s.text());
                out.push('\n');
            }
            Ok(out)
        }
        Format::Dot => Err(Error::Validation("enumerate does not support dot".into())),
    }
}

fn render_partial(
    all: &[degenflag::collections::PartialCollection],
    d: &DVector,
    format: Format,
) -> Result<String, Error> {
    match format {
        Format::Csv => {
            let mut out = String::from("id,sets,dim,tangent,smooth\n");
            for (i, s) in all.iter().enumerate() {
                out.push_str(&format!("{i},{},,,{}\n", s.text(), is_smooth_partial(s, d)));
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = all
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    serde_json::json!({
                        "id": i,
                        "sets": s,
                        "smooth": is_smooth_partial(s, d),
                    })
                })
                .collect();
            Ok(format!("{:#}\n", serde_json::Value::Array(rows)))
        }
        Format::Text => {
            let mut out = String::new();
            for s in all {
                out.push_str(&s.text());
                out.push('\n');
            }
            Ok(out)
        }
        Format::Dot => Err(Error::Validation("enumerate does not support dot".into())),
    }
}

// ---------------------------------------------------------------------------
// verify: the cross-module identity suite
// ---------------------------------------------------------------------------

fn verify(n_max: usize, fixtures: Option<&str>) -> Result<ExitCode, Error> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let known_counts = [2u64, 7, 38, 295, 3098, 42271, 726734];
    let mut ok = true;
    for n in 1..=n_max.min(7) {
        ok &= euler_characteristic(n)? == known_counts[n - 1];
    }
    check("fixed-point counts match the reference sequence", ok);

    let mut ok = true;
    for n in 1..=n_max.min(5) {
        ok &= enumerate_admissible(n)? == enumerate_admissible_bottom_up(n)?;
    }
    check("both enumeration orders agree", ok);

    let mut ok = true;
    for n in 1..=n_max.min(5) {
        for s in enumerate_admissible(n)? {
            ok &= degenflag::cells::cell_stats(&s) == degenflag::cells::cell_stats_naive(&s);
        }
    }
    check("cell statistics: scan formula equals first-occurrence formula", ok);

    let mut ok = true;
    for n in 1..=n_max.min(6) {
        for s in enumerate_admissible(n)? {
            let a = is_smooth(&s);
            ok &= a == is_smooth_ext(&s) && a == fiber_is_singleton(&s);
        }
    }
    check("triple smoothness agreement", ok);

    let mut ok = true;
    for n in 1..=n_max.min(4) {
        let g = build_moment_graph(n)?;
        let (outd, ind) = g.degrees();
        for (i, v) in g.vertices.iter().enumerate() {
            ok &= outd[i] == cell_dim(v) && outd[i] + ind[i] == tangent_dim(v);
        }
    }
    check("degree laws: out = cell dim, total = tangent dim", ok);

    let mut ok = true;
    for n in 1..=n_max.min(6) {
        let h = qt_genocchi(n)?;
        ok &= h.eval_t(1) == poincare(n)?;
        ok &= h.eval_t(0) == smooth_poincare(n)?;
        ok &= h.eval(1, 1) as u64 == euler_characteristic(n)?;
        ok &= smooth_poincare(n)? == r_poly(n).shift((n * (n - 1) / 2) as u32);
        ok &= smooth_count(n)? == r_poly(n).eval(1) as u64;
    }
    check("polynomial specializations and the path-count bridge", ok);

    let mut ok = true;
    for n in 0..=n_max.max(8) {
        ok &= r_poly(n) == r_poly_recursive(n);
    }
    for n in 1..=n_max.max(8) {
        ok &= r_poly(n) == {
            let s = s_poly(n)?;
            let mut prod = s.shift(1);
            prod += &s;
            prod
        };
    }
    check("path polynomial recurrence and (1+q) factorization", ok);

    let mut ok = true;
    for n in 1..=n_max.min(6) {
        let rep = sigma_pairing_report(n)?;
        ok &= rep.half_series == smooth_poincare(n)?.div_exact_one_plus_q()?;
    }
    check("involution pairing halves the smooth series", ok);

    let mut ok = true;
    for n in 1..=n_max.min(6) {
        for s in degenflag::collections::enumerate_smooth(n) {
            let k = s.set(1).iter().next().unwrap();
            if k >= 2 {
                let (l, r) = degenflag::collections::split_f(&s)?;
                ok &= degenflag::collections::merge_f(&l, &r, k, n)? == s;
            }
        }
    }
    check("split/merge round-trip on smooth collections", ok);

    let mut ok = true;
    for n in 1..=n_max.min(5) {
        ok &= defect_histogram(n)?.values().sum::<u64>() == euler_characteristic(n)?;
        let profile = singular_codim_profile(n)?;
        ok &= profile.values().sum::<u64>() == euler_characteristic(n)? - smooth_count(n)?;
    }
    check("defect and codimension profiles are complete", ok);

    if let Some(which) = fixtures {
        if which != "appendixC" {
            return Err(Error::Validation(format!("unknown fixture set {which:?}")));
        }
        let fix = degenflag::fixtures::reference_graph_n3();
        let g = build_moment_graph(3)?;
        let mut from_fixture: Vec<(AdmissibleCollection, AdmissibleCollection)> = fix
            .edges
            .iter()
            .map(|&(a, b)| (fix.vertex(a).clone(), fix.vertex(b).clone()))
            .collect();
        from_fixture.sort_unstable();
        let mut built: Vec<(AdmissibleCollection, AdmissibleCollection)> = g
            .edges
            .iter()
            .map(|e| (g.vertices[e.src].clone(), g.vertices[e.dst].clone()))
            .collect();
        built.sort_unstable();
        check("reference graph: edge sets coincide", built == from_fixture);
        let mut verts: Vec<_> = fix.vertices.iter().map(|(v, _)| v.clone()).collect();
        verts.sort_unstable();
        check("reference graph: vertex sets coincide", verts == g.vertices);
    }

    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failures} identity group(s) failed");
        Ok(ExitCode::FAILURE)
    }
}
