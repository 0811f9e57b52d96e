//! Command-line surface. JSON is the stable machine format; the table
//! format of `classify` is human-facing and covered by golden tests.
//!
//! Exit codes: 0 success, 2 invalid input or usage, 1 internal invariant
//! violation (including any failing `verify` check).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::classify::{census_of_classes, classify_trees, EdvClass};
use crate::edv::{compare, edv};
use crate::enumerate::all_trees;
use crate::error::{Error, Result};
use crate::families as fam;
use crate::indices::{all_indices, IndexKind, IndexParams, Lambda};
use crate::transforms::{
    branch_exchange, exchange_certificate, exchange_closure_with_members, find_balanced_pairs,
};
use crate::tree::Tree;
use crate::verify::{self, Suite};

/// Cache files are keyed by order and generator version; bump the version
/// if the enumeration order ever changes.
const GENERATOR_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "edvlab", version, about = "Edge division vectors of trees")]
struct Cli {
    /// Worker threads for classify/verify (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for the randomized relabeling checks in verify.
    #[arg(long, global = true, default_value_t = 0xED01)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write all non-isomorphic trees of order n.
    Enumerate {
        n: usize,
        #[arg(long, default_value = "text", value_parser = ["text", "jsonl"])]
        format: String,
    },
    /// Print the edge division vector of a tree.
    Edv {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Compare the vectors of two trees under the suffix-sum order.
    Compare { first: PathBuf, second: PathBuf },
    /// Evaluate the index catalogue for a tree.
    Indices {
        tree: PathBuf,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Enumerate balanced pairs and their exchanges as JSON.
    Exchange {
        tree: PathBuf,
        /// First anchor vertex; with --v restricts to one anchor pair.
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        v: Option<u32>,
    },
    /// The branch-exchange closure of a tree as JSON.
    Closure { tree: PathBuf },
    /// Classify all trees of order n by edge division vector.
    Classify {
        n: usize,
        #[arg(long, default_value = "table", value_parser = ["table", "json", "csv"])]
        format: String,
    },
    /// Build a named family member and report its vector and verdict.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Run a named invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Starlike tree with the given comma-separated leg lengths.
    Starlike { legs: String },
    /// Double star with parts p and q.
    DoubleStar { p: u32, q: u32 },
    /// Power star with star size p and count t.
    PowerStar { p: u32, t: u32 },
    /// Double starlike tree with leg length s, leg counts k1 and k2,
    /// and a connecting path of k edges.
    Dt { s: u32, k1: u32, k2: u32, k: u32 },
    /// Rooted product of a tree file with the path P_s.
    RootedProduct { tree: PathBuf, s: u32 },
    /// Corona of a tree file with s isolated vertices.
    Corona { tree: PathBuf, s: u32 },
}

/// Entry point used by both the binary and the CLI tests. Returns the
/// process exit code; command output goes to `out`, diagnostics to stderr.
pub fn run<I, S, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = cli.jobs {
            builder = builder.num_threads(jobs.max(1));
        }
        match builder.build() {
            Ok(pool) => pool,
            Err(e) => {
                eprintln!("edvlab: {e}");
                return 1;
            }
        }
    };
    // Render into a buffer inside the pool so the writer need not be Send.
    let (outcome, buf) = pool.install(|| {
        let mut buf = Vec::new();
        let outcome = dispatch(&cli, &mut buf);
        (outcome, buf)
    });
    if out.write_all(&buf).is_err() {
        return 1;
    }
    match outcome {
        Ok(code) => code,
        Err(Error::Internal(msg)) => {
            eprintln!("edvlab: internal invariant violation: {msg}");
            1
        }
        Err(e) => {
            eprintln!("edvlab: {e}");
            2
        }
    }
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    match &cli.command {
        Command::Enumerate { n, format } => cmd_enumerate(*n, format, out),
        Command::Edv { tree } => {
            let t = read_tree(tree)?;
            writeln!(out, "{}", edv(&t)?).map_err(io_err)?;
            Ok(0)
        }
        Command::Compare { first, second } => {
            let a = edv(&read_tree(first)?)?;
            let b = edv(&read_tree(second)?)?;
            writeln!(out, "{}", compare(&a, &b)?).map_err(io_err)?;
            Ok(0)
        }
        Command::Indices {
            tree,
            lambda,
            k,
            format,
        } => {
            let t = read_tree(tree)?;
            let params = IndexParams {
                lambda: Lambda::parse(lambda)?,
                steiner_k: *k,
            };
            cmd_indices(&t, params, format, out)
        }
        Command::Exchange { tree, u, v } => cmd_exchange(&read_tree(tree)?, *u, *v, out),
        Command::Closure { tree } => cmd_closure(&read_tree(tree)?, out),
        Command::Classify { n, format } => cmd_classify(*n, format, out),
        Command::Family { family } => cmd_family(family, out),
        Command::Verify { suite, max_n } => cmd_verify(suite, *max_n, cli.seed, out),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn read_tree(path: &Path) -> Result<Tree> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    Tree::parse(&text)
}

/// Enumeration with the optional file cache keyed by order and generator
/// version under EDVLAB_CACHE_DIR.
fn trees_of_order(n: usize) -> Result<Vec<Tree>> {
    let dir = match std::env::var_os("EDVLAB_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => return Ok(all_trees(n)?.collect()),
    };
    let path = dir.join(format!("trees-v{GENERATOR_VERSION}-n{n}.txt"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        return parse_tree_records(&text);
    }
    let trees: Vec<Tree> = all_trees(n)?.collect();
    let mut blob = String::new();
    for (i, t) in trees.iter().enumerate() {
        if i > 0 {
            blob.push_str("--\n");
        }
        blob.push_str(&t.to_text());
    }
    std::fs::create_dir_all(&dir)
        .and_then(|_| std::fs::write(&path, blob))
        .map_err(|e| {
            Error::InvalidArgument(format!("cannot write cache {}: {e}", path.display()))
        })?;
    Ok(trees)
}

fn parse_tree_records(text: &str) -> Result<Vec<Tree>> {
    text.split("--\n")
        .filter(|chunk| !chunk.trim().is_empty())
        .map(Tree::parse)
        .collect()
}

fn cmd_enumerate<W: Write>(n: usize, format: &str, out: &mut W) -> Result<i32> {
    let trees = trees_of_order(n)?;
    match format {
        "jsonl" => {
            for t in &trees {
                let record = TreeDto::from(t);
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&record).expect("serializable")
                )
                .map_err(io_err)?;
            }
        }
        _ => {
            for (i, t) in trees.iter().enumerate() {
                if i > 0 {
                    writeln!(out, "--").map_err(io_err)?;
                }
                write!(out, "{}", t.to_text()).map_err(io_err)?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct TreeDto {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl From<&Tree> for TreeDto {
    fn from(t: &Tree) -> Self {
        TreeDto {
            n: t.n(),
            edges: t.edges().iter().map(|e| e.endpoints()).collect(),
        }
    }
}

fn cmd_indices<W: Write>(t: &Tree, params: IndexParams, format: &str, out: &mut W) -> Result<i32> {
    let table = all_indices(t, params)?;
    match format {
        "csv" => {
            let header: Vec<&str> = IndexKind::ALL.iter().map(|k| k.column()).collect();
            writeln!(out, "{}", header.join(",")).map_err(io_err)?;
            let row: Vec<String> = table.values.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(",")).map_err(io_err)?;
        }
        _ => {
            #[derive(Serialize)]
            struct IndicesDto {
                n: u32,
                vector: String,
                lambda: String,
                k: u32,
                values: std::collections::BTreeMap<&'static str, String>,
            }
            let values = IndexKind::ALL
                .iter()
                .zip(&table.values)
                .map(|(k, v)| (k.column(), v.to_string()))
                .collect();
            let dto = IndicesDto {
                n: table.n,
                vector: table.vector.to_string(),
                lambda: params.lambda.to_string(),
                k: params.steiner_k,
                values,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&dto).expect("serializable")
            )
            .map_err(io_err)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ExchangeDto {
    u: u32,
    v: u32,
    s_u: Vec<u32>,
    s_v: Vec<u32>,
    result_edges: Vec<(u32, u32)>,
    result_edv: String,
    branches_strongly_isomorphic: bool,
    roots_similar_in_stripped: bool,
    certified_non_isomorphic: bool,
}

fn cmd_exchange<W: Write>(t: &Tree, u: Option<u32>, v: Option<u32>, out: &mut W) -> Result<i32> {
    let anchor_pairs: Vec<(u32, u32)> = match (u, v) {
        (Some(a), Some(b)) => vec![(a, b)],
        (None, None) => {
            let n = t.n() as u32;
            (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .collect()
        }
        _ => {
            return Err(Error::InvalidArgument(
                "--u and --v must be given together".into(),
            ))
        }
    };
    let mut records = Vec::new();
    for (a, b) in anchor_pairs {
        for pair in find_balanced_pairs(t, a, b)? {
            let exchanged = branch_exchange(t, &pair)?;
            let cert = exchange_certificate(t, &pair)?;
            records.push(ExchangeDto {
                u: pair.u,
                v: pair.v,
                s_u: pair.s_u.clone(),
                s_v: pair.s_v.clone(),
                result_edges: exchanged.edges().iter().map(|e| e.endpoints()).collect(),
                result_edv: edv(&exchanged)?.to_string(),
                branches_strongly_isomorphic: cert.branches_strongly_isomorphic,
                roots_similar_in_stripped: cert.roots_similar_in_stripped,
                certified_non_isomorphic: cert.certifies_non_isomorphic(),
            });
        }
    }
    #[derive(Serialize)]
    struct ExchangeReport {
        input: TreeDto,
        edv: String,
        exchanges: Vec<ExchangeDto>,
    }
    let report = ExchangeReport {
        input: TreeDto::from(t),
        edv: edv(t)?.to_string(),
        exchanges: records,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    )
    .map_err(io_err)?;
    Ok(0)
}

fn cmd_closure<W: Write>(t: &Tree, out: &mut W) -> Result<i32> {
    let members = exchange_closure_with_members(t)?;
    #[derive(Serialize)]
    struct ClosureDto {
        input: TreeDto,
        edv: String,
        size: usize,
        members: Vec<ClosureMemberDto>,
    }
    #[derive(Serialize)]
    struct ClosureMemberDto {
        code: String,
        edges: Vec<(u32, u32)>,
    }
    let dto = ClosureDto {
        input: TreeDto::from(t),
        edv: edv(t)?.to_string(),
        size: members.len(),
        members: members
            .iter()
            .map(|(code, tree)| ClosureMemberDto {
                code: code.to_hex(),
                edges: tree.edges().iter().map(|e| e.endpoints()).collect(),
            })
            .collect(),
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&dto).expect("serializable")
    )
    .map_err(io_err)?;
    Ok(0)
}

fn render_classify_table<W: Write>(n: usize, classes: &[EdvClass], out: &mut W) -> Result<()> {
    let census = census_of_classes(n, classes);
    writeln!(
        out,
        "n\ttrees\tdedv\tequivalent\tclasses\tdedv_fraction\tequivalent_fraction"
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        census.n,
        census.total_trees,
        census.dedv_count,
        census.equivalent_tree_count,
        census.class_count_nontrivial,
        census.dedv_fraction_4dp(),
        census.equivalent_fraction_4dp()
    )
    .map_err(io_err)?;
    writeln!(out).map_err(io_err)?;
    writeln!(out, "vector\tsize\tmembers").map_err(io_err)?;
    for class in classes {
        let members: Vec<String> = class.members.iter().map(|c| c.to_hex()).collect();
        writeln!(
            out,
            "{}\t{}\t{}",
            class.vector,
            class.members.len(),
            members.join(" ")
        )
        .map_err(io_err)?;
    }
    Ok(())
}

fn cmd_classify<W: Write>(n: usize, format: &str, out: &mut W) -> Result<i32> {
    let trees = trees_of_order(n)?;
    let classes = classify_trees(n, trees)?;
    match format {
        "json" => {
            let census = census_of_classes(n, &classes);
            #[derive(Serialize)]
            struct CensusDto {
                n: usize,
                trees: usize,
                dedv: usize,
                equivalent: usize,
                nontrivial_classes: usize,
                dedv_fraction: String,
                dedv_fraction_exact: String,
                equivalent_fraction: String,
                equivalent_fraction_exact: String,
            }
            #[derive(Serialize)]
            struct ClassDto {
                vector: String,
                size: usize,
                members: Vec<String>,
            }
            #[derive(Serialize)]
            struct ClassifyDto {
                census: CensusDto,
                classes: Vec<ClassDto>,
            }
            let dto = ClassifyDto {
                census: CensusDto {
                    n: census.n,
                    trees: census.total_trees,
                    dedv: census.dedv_count,
                    equivalent: census.equivalent_tree_count,
                    nontrivial_classes: census.class_count_nontrivial,
                    dedv_fraction: census.dedv_fraction_4dp(),
                    dedv_fraction_exact: census.dedv_fraction.to_string(),
                    equivalent_fraction: census.equivalent_fraction_4dp(),
                    equivalent_fraction_exact: census.equivalent_fraction.to_string(),
                },
                classes: classes
                    .iter()
                    .map(|c| ClassDto {
                        vector: c.vector.to_string(),
                        size: c.members.len(),
                        members: c.members.iter().map(|m| m.to_hex()).collect(),
                    })
                    .collect(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&dto).expect("serializable")
            )
            .map_err(io_err)?;
        }
        "csv" => {
            writeln!(out, "vector,size,members").map_err(io_err)?;
            for class in &classes {
                let members: Vec<String> = class.members.iter().map(|c| c.to_hex()).collect();
                writeln!(
                    out,
                    "\"{}\",{},{}",
                    class.vector,
                    class.members.len(),
                    members.join(" ")
                )
                .map_err(io_err)?;
            }
        }
        _ => render_classify_table(n, &classes, out)?,
    }
    Ok(0)
}

fn cmd_family<W: Write>(family: &FamilyCommand, out: &mut W) -> Result<i32> {
    let tree = match family {
        FamilyCommand::Starlike { legs } => {
            let legs: Vec<u32> = legs
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad leg length {s:?}")))
                })
                .collect::<Result<_>>()?;
            fam::make_starlike(&fam::StarlikeSpec::new(legs)?)
        }
        FamilyCommand::DoubleStar { p, q } => fam::make_double_star(*p, *q)?,
        FamilyCommand::PowerStar { p, t } => fam::make_power_star(*p, *t)?,
        FamilyCommand::Dt { s, k1, k2, k } => {
            fam::make_double_starlike(&fam::DoubleStarlikeSpec::new(*s, *k1, *k2, *k)?)
        }
        FamilyCommand::RootedProduct { tree, s } => {
            fam::rooted_product_path(&read_tree(tree)?, *s)?
        }
        FamilyCommand::Corona { tree, s } => fam::corona_k1(&read_tree(tree)?, *s)?,
    };
    write!(out, "{}", tree.to_text()).map_err(io_err)?;
    writeln!(out, "edv {}", edv(&tree)?).map_err(io_err)?;
    let prediction = fam::predict_dedv(&tree)?;
    match prediction.verdict() {
        Some(v) => writeln!(out, "dedv {} rule={}", v, prediction.rule()).map_err(io_err)?,
        None => writeln!(out, "dedv unknown").map_err(io_err)?,
    }
    Ok(0)
}

fn cmd_verify<W: Write>(suite: &str, max_n: usize, seed: u64, out: &mut W) -> Result<i32> {
    let suite = Suite::parse(suite)?;
    let report = verify::run(suite, max_n, seed)?;
    for check in &report.checks {
        if check.passed {
            writeln!(out, "PASS {} {}", check.name, check.detail).map_err(io_err)?;
        } else {
            writeln!(out, "FAIL {} {}", check.name, check.detail).map_err(io_err)?;
            if let Some(t) = &check.reproducer {
                writeln!(out, "--- reproducer ---").map_err(io_err)?;
                write!(out, "{}", t.to_text()).map_err(io_err)?;
                writeln!(out, "--- end ---").map_err(io_err)?;
            }
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed).map_err(io_err)?;
    Ok(if failed == 0 { 0 } else { 1 })
}
