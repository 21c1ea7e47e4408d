//! `mincodes`: minimal codewords, α values, bounds and tables from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mincodes::alpha::{
    self, alpha_brute, alpha_closed, alpha_construction, bound_m, bound_ml, bound_ml_points, exact_m, AlphaTable,
    BruteGuard, Provenance,
};
use mincodes::io::{format_matrix, format_witness, parse_matrix};
use mincodes::search::{big_m_value, m_table, m_value, Engine, Mode, SearchConfig, Table, TableEntry};
use mincodes::{Error, FieldSpec, LinearCode, ProjectiveSpace};
use serde_json::json;

const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "mincodes", version, about = "Minimal codewords of linear codes via projective geometry")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Min,
    Max,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Min => Mode::Min,
            ModeArg::Max => Mode::Max,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Subset,
    Canon,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlphaMethod {
    Closed,
    Brute,
    Construct,
}

#[derive(clap::Args, Clone)]
struct Guards {
    /// Most n-subsets the brute-subset engine may iterate
    #[arg(long, default_value_t = 100_000_000)]
    subset_limit: u64,
    /// Largest ambient space (points) for canonical augmentation
    #[arg(long, default_value_t = 40)]
    canon_max_points: usize,
    /// Largest [k;l]_q for brute-force α
    #[arg(long, default_value_t = 40)]
    alpha_max_subspaces: u64,
    /// Largest r for brute-force α
    #[arg(long, default_value_t = 4)]
    alpha_max_r: u64,
}

impl Guards {
    fn alpha(&self) -> BruteGuard {
        BruteGuard { max_subspaces: self.alpha_max_subspaces, max_r: self.alpha_max_r }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimality analysis of the code in a matrix file
    Analyze {
        file: PathBuf,
        /// Also report d_l and M^l(C) for subcodes of this dimension
        #[arg(long)]
        subcodes: Option<usize>,
        /// List every hyperplane with its minimality and witness
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Value of α_q^l(k, r)
    Alpha {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, value_enum)]
        method: Option<AlphaMethod>,
        /// Print the covering witness
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        guards: Guards,
    },
    /// Lower bound on M(C) and the exact window value when one applies
    Bound {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[command(flatten)]
        guards: Guards,
    },
    /// Table of m_q(n,k) or M_q(n,k)
    Table {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "min")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Search all codes instead of only minimum distance >= 2
        #[arg(long)]
        no_restrict: bool,
        #[command(flatten)]
        guards: Guards,
    },
    /// Single value of m_q(n,k) or M_q(n,k) with a certificate
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "min")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        no_restrict: bool,
        /// Resumable checkpoint for canonical augmentation
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        partition_depth: usize,
        #[command(flatten)]
        guards: Guards,
    },
    /// Re-check a certificate (matrix file) or a table/entry (JSON)
    Verify { file: PathBuf },
}

struct Failure {
    code: u8,
    kind: &'static str,
    msg: String,
}

impl Failure {
    /// Errors about flag values or computations started from flags.
    fn run(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded(_) | Error::TooLarge(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure { code, kind: e.kind(), msg: e.to_string() }
    }

    /// Errors caused by the contents of an input file.
    fn input(e: Error) -> Self {
        Failure { code: EXIT_INPUT, kind: e.kind(), msg: e.to_string() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, kind: "usage", msg: msg.into() }
    }
}

type CliResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: EXIT_INPUT, kind: "io", msg: format!("{}: {e}", path.display()) })
}

fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    let text = read_file(path)?;
    let m = parse_matrix(&text).map_err(Failure::input)?;
    LinearCode::from_matrix(m).map_err(Failure::input)
}

fn row_string(row: &[u8]) -> String {
    row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn analyze(file: &Path, subcodes: Option<usize>, list: bool, format: Format) -> CliResult {
    let code = load_code(file)?;
    let (n, k, q) = (code.n(), code.k(), code.q());
    if let Some(l) = subcodes {
        if l == 0 || l > k {
            return Err(Failure::usage(format!("--subcodes must be in 1..={k}")));
        }
    }
    let d = code.min_distance();
    let reports = code.minimality_reports();
    let m = reports.iter().filter(|r| r.minimal).count();
    let sub = match subcodes {
        Some(l) => Some((l, code.ghw(l).map_err(Failure::run)?, code.count_support_minimal(l).map_err(Failure::run)?)),
        None => None,
    };
    match format {
        Format::Json => {
            let mut v = json!({
                "q": q, "n": n, "k": k, "projective": code.is_projective(), "d": d,
                "minimal": m, "minimal_codewords": (q as usize - 1) * m, "hyperplanes": reports.len(),
            });
            if let Some((l, dl, ml)) = sub {
                v["subcodes"] = json!({ "l": l, "d_l": dl, "minimal": ml });
            }
            if list {
                v["list"] = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "hyperplane": row_string(r.hyperplane.dual_basis.row(0)),
                            "weight": r.weight,
                            "minimal": r.minimal,
                            "witness": r.witness_codim2.as_ref().map(|u| {
                                (0..2).map(|i| row_string(u.dual_basis.row(i))).collect::<Vec<_>>()
                            }),
                        })
                    })
                    .collect();
            }
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        _ => {
            println!("code: [{n}, {k}]_{q}");
            println!("projective: {}", if code.is_projective() { "yes" } else { "no" });
            println!("d = {d}");
            println!("M(C) = {m}");
            println!("(q-1)M(C) = {}", (q as usize - 1) * m);
            println!("minimal hyperplanes: {m} of {}", reports.len());
            if let Some((l, dl, ml)) = sub {
                println!("d_{l} = {dl}");
                println!("M^{l}(C) = {ml}");
            }
            if list {
                for r in &reports {
                    let status = if r.minimal { "minimal".to_string() } else { "non-minimal".to_string() };
                    let witness = r
                        .witness_codim2
                        .as_ref()
                        .map(|u| format!("  U = [{}; {}]", row_string(u.dual_basis.row(0)), row_string(u.dual_basis.row(1))))
                        .unwrap_or_default();
                    println!(
                        "H{:<4} [{}]  weight {:>3}  {status}{witness}",
                        r.hyperplane_index,
                        row_string(r.hyperplane.dual_basis.row(0)),
                        r.weight
                    );
                }
            }
        }
    }
    Ok(())
}

fn space(q: u32, k: usize) -> Result<std::sync::Arc<ProjectiveSpace>, Failure> {
    let f = FieldSpec::new(q).map_err(Failure::run)?;
    ProjectiveSpace::new(&f, k).map_err(Failure::run)
}

fn alpha_cmd(q: u32, k: usize, r: u64, l: usize, method: Option<AlphaMethod>, witness: bool, guards: &Guards) -> CliResult {
    let s = space(q, k)?;
    let name = if l == 1 { format!("alpha_{q}({k},{r})") } else { format!("alpha^{l}_{q}({k},{r})") };
    let closed = if l == 1 { alpha_closed(q, k, r) } else { None };
    let method = method.unwrap_or(if closed.is_some() { AlphaMethod::Closed } else { AlphaMethod::Brute });
    let (value, provenance, w) = match method {
        AlphaMethod::Closed => {
            let v = closed.ok_or_else(|| Failure::usage(format!("no closed form for {name}")))?;
            let w = if witness { Some(alpha::optimal_witness(&s, r, guards.alpha()).map_err(Failure::run)?) } else { None };
            (v, Provenance::Closed, w)
        }
        AlphaMethod::Brute => {
            let (v, w) = alpha_brute(&s, r, l, guards.alpha()).map_err(Failure::run)?;
            (v, Provenance::Brute, Some(w))
        }
        AlphaMethod::Construct => {
            if l != 1 {
                return Err(Failure::usage("the construction is for l = 1"));
            }
            let w = alpha_construction(&s, r).map_err(Failure::run)?;
            (w.cardinality as u64, Provenance::ConstructionUpperBound, Some(w))
        }
    };
    let rel = if provenance == Provenance::ConstructionUpperBound { "<=" } else { "=" };
    println!("{name} {rel} {value} ({provenance})");
    if witness {
        if let Some(w) = w {
            print!("{}", format_witness(&w));
        }
    }
    Ok(())
}

fn bound_cmd(q: u32, k: usize, n: u64, l: usize, guards: &Guards) -> CliResult {
    let s = space(q, k)?;
    let mut table = AlphaTable::new(s, guards.alpha());
    if l == 1 {
        let b = bound_m(&mut table, n).map_err(Failure::run)?;
        println!("lower bound on M(C): {b}");
        match exact_m(&mut table, n).map_err(Failure::run)? {
            Some(w) => println!("exact m_{q}({n},{k}) = {} (window r = {})", w.value, w.r),
            None => println!("exact m_{q}({n},{k}): not applicable"),
        }
    } else {
        let literal = bound_ml(&mut table, l, n).map_err(Failure::run)?;
        let sharper = bound_ml_points(&mut table, l, n).map_err(Failure::run)?;
        println!("lower bound on M^{l}(C): {literal}");
        println!("lower bound on M^{l}(C), point-count hypothesis: {sharper}");
    }
    Ok(())
}

fn engine(e: EngineArg) -> Engine {
    match e {
        EngineArg::Auto => Engine::Auto,
        EngineArg::Subset => Engine::Subset,
        EngineArg::Canon => Engine::Canon,
    }
}

fn config(workers: Option<usize>, e: EngineArg, no_restrict: bool, guards: &Guards) -> SearchConfig {
    SearchConfig {
        engine: engine(e),
        restrict_min_dist_2: !no_restrict,
        subset_limit: guards.subset_limit,
        canon_max_points: guards.canon_max_points,
        workers,
        alpha_guard: guards.alpha(),
        ..SearchConfig::default()
    }
}

fn entry_text(e: &TableEntry) -> Result<String, Failure> {
    let name = match e.mode {
        Mode::Min => "m",
        Mode::Max => "M",
    };
    let mut out = format!("# {name}_{}({},{}) = {} [{}", e.q, e.n, e.k, e.value, e.method);
    if e.weight_one_reduction {
        out.push_str(", weight-1 reduction");
    }
    out.push_str("]\n");
    out.push_str(&format!("# M(C) = {}\n", e.value));
    out.push_str(&format_matrix(&e.certificate_matrix().map_err(Failure::run)?));
    Ok(out)
}

fn verify_cmd(file: &Path) -> CliResult {
    let text = read_file(file)?;
    let fail = |msg: String| Failure { code: EXIT_INPUT, kind: "verification", msg };
    if text.trim_start().starts_with('{') {
        let entries: Vec<TableEntry> = if let Ok(t) = Table::from_json(&text) {
            t.cells.into_iter().filter_map(|c| c.entry).collect()
        } else {
            let e: TableEntry = serde_json::from_str(&text)
                .map_err(|e| Failure::input(Error::Parse { line: e.line(), msg: e.to_string() }))?;
            vec![e]
        };
        for e in &entries {
            e.verify().map_err(|err| fail(format!("n = {}, k = {}: {err}", e.n, e.k)))?;
        }
        println!("ok: {} entries verified", entries.len());
        return Ok(());
    }
    let code = load_code(file)?;
    let m = code.count_minimal();
    // an optional "# M(C) = v" line states the expected value
    let claimed = text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix('#')?.trim().strip_prefix("M(C)")?.trim().strip_prefix('=')?;
        rest.trim().parse::<usize>().ok()
    });
    if let Some(c) = claimed {
        if c != m {
            return Err(fail(format!("file claims M(C) = {c}, computed {m}")));
        }
    }
    println!("ok: [{}, {}]_{} code, projective: {}, M(C) = {m}", code.n(), code.k(), code.q(), if code.is_projective() { "yes" } else { "no" });
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Analyze { file, subcodes, list, format } => analyze(&file, subcodes, list, format),
        Command::Alpha { q, k, r, l, method, witness, guards } => alpha_cmd(q, k, r, l, method, witness, &guards),
        Command::Bound { q, k, n, l, guards } => bound_cmd(q, k, n, l, &guards),
        Command::Table { q, nmax, kmax, mode, engine, format, no_restrict, guards } => {
            let cfg = config(cli.workers, engine, no_restrict, &guards);
            let t = m_table(q, nmax, kmax, mode.into(), &cfg).map_err(Failure::run)?;
            match format {
                Format::Json => print!("{}", t.to_json()),
                _ => print!("{}", t.to_tsv()),
            }
            for c in t.cells.iter().filter(|c| c.entry.is_none()) {
                eprintln!("note: n = {}, k = {}: {}", c.n, c.k, c.error.as_deref().unwrap_or("no value"));
            }
            Ok(())
        }
        Command::Search { q, k, n, mode, engine, format, no_restrict, checkpoint, partition_depth, guards } => {
            let mut cfg = config(cli.workers, engine, no_restrict, &guards);
            cfg.checkpoint = checkpoint;
            cfg.partition_depth = partition_depth;
            let e = match mode {
                ModeArg::Min => m_value(q, k, n, &cfg),
                ModeArg::Max => big_m_value(q, k, n, &cfg),
            }
            .map_err(Failure::run)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&e).expect("serializable")),
                _ => print!("{}", entry_text(&e)?),
            }
            Ok(())
        }
        Command::Verify { file } => verify_cmd(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.workers == Some(0) {
        eprintln!("error: usage: --workers must be positive");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.msg.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
