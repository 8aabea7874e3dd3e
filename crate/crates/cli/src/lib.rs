//! Command-line frontend. [`run`] maps an argument vector to an exit code
//! and a report; `main` only prints.
//!
//! Exit codes: 0 success, 1 when a certification request is answered
//! negatively (rejected, not characteristically nilpotent, witness found),
//! 2 on input errors.

mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nilcohopf::catalog::{Catalog, Source};
use nilcohopf::derivations::{self, NilpotencyVerdict, TRACE_ORACLE_MAX_DIM};
use nilcohopf::exactlin::{self, Mat, Rat};
use nilcohopf::format::{emit, parse_algebra, parse_vector, render_vector};
use nilcohopf::liealg::{self, StructureConstants};
use nilcohopf::malcev::{self, CoHopfVerdict, LieEndomorphism, VerdictKind};
use num_traits::{One, Signed};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use report::{Input, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "nilcohopf",
    version,
    about = "Exact analysis of nilpotent Lie algebras and the co-Hopfian property of their lattice groups",
    after_help = "ALGEBRA is a structure-constant file or a catalog reference such as @cn7 or @filiform(5)."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed recorded in the report; every command is deterministic.
    #[arg(long, default_value_t = 0x5eed_2024, global = true)]
    pub seed: u64,
    /// Directory holding the catalog data files.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identity on all basis triples and nilpotency.
    Validate { algebra: String },
    /// Rank, class, series, center and abelianization.
    Invariants { algebra: String },
    /// Dimension and basis of Der(L).
    Derivations { algebra: String },
    /// Decide whether every derivation is nilpotent, with a certificate.
    Charnil { algebra: String },
    /// Classify a matrix as homomorphism / automorphism / lattice map.
    Endo {
        algebra: String,
        /// Inline rows `2,0,0;0,2,0;0,0,4` or a file of rows.
        #[arg(long)]
        matrix: String,
        /// Confirm the index by coset enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = malcev::DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Certify co-Hopfian or search for a witness of the opposite.
    Cohopf {
        algebra: String,
        /// Entry bound of the witness search; 0 disables the search.
        #[arg(long, default_value_t = malcev::DEFAULT_SEARCH_BOUND)]
        search_bound: i64,
        /// Candidate columns the search may try.
        #[arg(long, default_value_t = malcev::DEFAULT_NODE_BUDGET)]
        search_budget: usize,
    },
    /// The index-2 self-embedding of G x Z.
    WitnessGxz {
        algebra: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = malcev::DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Exact group product x * y.
    Bch {
        algebra: String,
        /// `e1 + 2*e3` or coordinates `1,0,2`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Index of the image lattice of an automorphism.
    Index {
        algebra: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = malcev::DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// List the catalog, or emit one entry as an algebra file.
    Catalog { name: Option<String> },
}

/// Input error; always exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CmdResult = Result<(), CliError>;

/// Parses `argv` (including the program name) and runs the command.
/// Returns the exit code and the rendered output.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let format = cli.format;
    let report = execute(cli);
    let text = match format {
        Format::Text => report.to_text(),
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(&report.to_machine()).expect("json");
            s.push('\n');
            s
        }
    };
    (report.exit_code, text)
}

pub fn execute(cli: Cli) -> Report {
    let start = Instant::now();
    let catalog = match &cli.data_dir {
        Some(d) => Catalog::with_data_dir(d),
        None => Catalog::new(),
    };
    let mut report = Report::new(command_echo(&cli.command));
    report.push("seed", cli.seed);
    let result = dispatch(&cli.command, &catalog, &mut report);
    if let Err(CliError(message)) = result {
        report.push("error", message);
        report.exit_code = EXIT_INPUT;
    }
    report.elapsed = start.elapsed();
    report
}

fn command_echo(c: &Command) -> String {
    match c {
        Command::Validate { algebra } => format!("validate {algebra}"),
        Command::Invariants { algebra } => format!("invariants {algebra}"),
        Command::Derivations { algebra } => format!("derivations {algebra}"),
        Command::Charnil { algebra } => format!("charnil {algebra}"),
        Command::Endo {
            algebra,
            matrix,
            oracle,
            ..
        } => {
            format!(
                "endo {algebra} --matrix {matrix}{}",
                if *oracle { " --oracle" } else { "" }
            )
        }
        Command::Cohopf {
            algebra, search_bound, ..
        } => format!("cohopf {algebra} --search-bound {search_bound}"),
        Command::WitnessGxz { algebra, oracle, .. } => {
            format!("witness-gxz {algebra}{}", if *oracle { " --oracle" } else { "" })
        }
        Command::Bch { algebra, x, y } => format!("bch {algebra} --x {x} --y {y}"),
        Command::Index {
            algebra,
            matrix,
            oracle,
            ..
        } => {
            format!(
                "index {algebra} --matrix {matrix}{}",
                if *oracle { " --oracle" } else { "" }
            )
        }
        Command::Catalog { name } => format!("catalog {}", name.as_deref().unwrap_or(""))
            .trim_end()
            .to_owned(),
    }
}

fn dispatch(command: &Command, catalog: &Catalog, r: &mut Report) -> CmdResult {
    match command {
        Command::Validate { algebra } => validate(&load(algebra, catalog, r)?, r),
        Command::Invariants { algebra } => invariants(&load_valid(algebra, catalog, r)?, r),
        Command::Derivations { algebra } => derivations(&load_valid(algebra, catalog, r)?, r),
        Command::Charnil { algebra } => charnil(&load_valid(algebra, catalog, r)?, r),
        Command::Endo {
            algebra,
            matrix,
            oracle,
            oracle_cap,
        } => {
            let sc = load_valid(algebra, catalog, r)?;
            let f = parse_matrix(matrix, sc.dim())?;
            endo(&sc, &f, *oracle, *oracle_cap, r)
        }
        Command::Cohopf {
            algebra,
            search_bound,
            search_budget,
        } => cohopf(&load_valid(algebra, catalog, r)?, *search_bound, *search_budget, r),
        Command::WitnessGxz {
            algebra,
            oracle,
            oracle_cap,
        } => witness_gxz(&load_valid(algebra, catalog, r)?, *oracle, *oracle_cap, r),
        Command::Bch { algebra, x, y } => {
            let sc = load_valid(algebra, catalog, r)?;
            let x = parse_vector(x, sc.dim()).map_err(|e| CliError(format!("--x: {e}")))?;
            let y = parse_vector(y, sc.dim()).map_err(|e| CliError(format!("--y: {e}")))?;
            bch(&sc, &x, &y, r)
        }
        Command::Index {
            algebra,
            matrix,
            oracle,
            oracle_cap,
        } => {
            let sc = load_valid(algebra, catalog, r)?;
            let f = parse_matrix(matrix, sc.dim())?;
            index(&sc, &f, *oracle, *oracle_cap, r)
        }
        Command::Catalog { name } => catalog_command(name.as_deref(), catalog, r),
    }
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A file path, or `@name` / `@name(p)` for a catalog entry.
fn load(arg: &str, catalog: &Catalog, r: &mut Report) -> Result<StructureConstants, CliError> {
    if let Some(reference) = arg.strip_prefix('@') {
        let sc = catalog.get_reference(reference)?;
        r.input = Some(Input {
            source: format!("catalog {reference}"),
            digest: digest(&emit(&sc)),
        });
        return Ok(sc);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| CliError(format!("cannot read {arg}: {e}")))?;
    let sc = parse_algebra(&text).map_err(|e| CliError(format!("{arg}: {e}")))?;
    r.input = Some(Input {
        source: format!("file {arg}"),
        digest: digest(&text),
    });
    Ok(sc)
}

fn load_valid(arg: &str, catalog: &Catalog, r: &mut Report) -> Result<StructureConstants, CliError> {
    let sc = load(arg, catalog, r)?;
    liealg::ensure_valid(&sc).map_err(|e| CliError(format!("input rejected by validation: {e}")))?;
    Ok(sc)
}

/// Rows separated by `;` or newlines, entries by `,` or whitespace. A
/// value naming an existing file is read from it.
pub fn parse_matrix(arg: &str, n: usize) -> Result<Mat, CliError> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_owned()
    };
    let mut rows = Vec::new();
    for row in text.split([';', '\n']) {
        let row = row.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        let entries = row
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<Rat>()
                    .map_err(|_| CliError(format!("--matrix: `{s}` is not a rational number")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(entries);
    }
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(CliError(format!(
            "--matrix: expected {n}x{n} for an algebra of dimension {n}, found rows of lengths {shape:?}"
        )));
    }
    Ok(Mat::from_rows(rows)?)
}

fn mat_string(m: &Mat) -> String {
    m.to_string()
}

fn validate(sc: &StructureConstants, r: &mut Report) -> CmdResult {
    let v = liealg::validate(sc);
    r.push("dim", v.dim);
    r.push("accepted", v.accepted());
    let failures: Vec<Value> = v
        .jacobi_failures
        .iter()
        .map(|f| json!({"triple": [f.triple.0, f.triple.1, f.triple.2], "residual": render_vector(&f.residual)}))
        .collect();
    r.push("jacobi_failures", failures);
    r.push("nilpotent", v.is_nilpotent());
    r.push("series_dims", json!(v.series_dims));
    match v.class {
        Some(c) => r.push("class", c),
        None => r.push("stalled_at_dim", json!(v.stalled_at)),
    }
    r.exit_code = if v.accepted() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(())
}

fn invariants(sc: &StructureConstants, r: &mut Report) -> CmdResult {
    let inv = liealg::invariant_report(sc)?;
    r.push("rank", inv.rank);
    r.push("class", inv.class);
    r.push("series_dims", json!(inv.series_dims));
    r.push("center_dim", inv.center_dim);
    r.push(
        "center",
        liealg::center(sc)
            .basis()
            .iter()
            .map(|v| render_vector(v))
            .collect::<Vec<_>>(),
    );
    r.push("derived_dim", inv.derived_dim);
    r.push("abelianization_dim", inv.abelianization_dim);
    r.push("generator_count", inv.generator_count);
    Ok(())
}

fn derivations(sc: &StructureConstants, r: &mut Report) -> CmdResult {
    let ds = derivations::derivation_space(sc);
    r.push("dim_der", ds.dimension());
    r.push("basis", ds.basis().iter().map(mat_string).collect::<Vec<_>>());
    Ok(())
}

fn certificate_json(cert: &derivations::NilpotencyCertificate) -> Value {
    match cert.verdict {
        NilpotencyVerdict::AllNilpotent => json!({
            "verdict": "all-nilpotent",
            "flag_dims": cert.flag.as_ref().map(|f| f.iter().map(|s| s.dim()).collect::<Vec<_>>()),
        }),
        NilpotencyVerdict::NotAllNilpotent => json!({
            "verdict": "not-all-nilpotent",
            "failure_stage": cert.failure_stage,
            "stalled_at_dim": cert.stalled_at.as_ref().map(|s| s.dim()),
            "witness": cert.witness.as_ref().map(mat_string),
        }),
    }
}

fn charnil(sc: &StructureConstants, r: &mut Report) -> CmdResult {
    let report = derivations::is_characteristically_nilpotent(sc)?;
    let n = sc.dim();
    r.push("characteristically_nilpotent", report.verdict);
    r.push("dim_der", report.derivations.dimension());
    r.push("certificate", certificate_json(&report.certificate));
    r.push(
        "certificate_verified",
        report.certificate.verify(n, report.derivations.basis()),
    );
    if n <= TRACE_ORACLE_MAX_DIM {
        let oracle = derivations::trace_power_oracle(n, report.derivations.basis())?;
        r.push("trace_oracle", oracle);
        r.push("oracle_agrees", oracle == report.verdict);
    }
    r.push("center_in_derived", report.center_in_derived);
    r.push("der_series_dims", json!(report.der_series_dims));
    r.push("der_nilpotent", report.der_nilpotent);
    r.exit_code = if report.verdict { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(())
}

fn push_classification(f: &LieEndomorphism, r: &mut Report) {
    r.push("matrix", mat_string(&f.matrix));
    r.push("is_hom", f.is_hom);
    if let Some((i, j)) = f.failing_pair {
        r.push("failing_pair", json!([i, j]));
    }
    r.push("is_automorphism", f.is_automorphism);
    r.push("is_lattice_preserving", f.is_lattice_preserving);
    r.push("det", f.det.to_string());
}

fn push_oracle(f: &LieEndomorphism, sc: &StructureConstants, cap: usize, r: &mut Report) -> Result<usize, CliError> {
    let closure = malcev::lattice_closure_check(sc);
    if !closure.closed {
        return Err(CliError(format!(
            "coset oracle needs Z^n closed under the group law: {}",
            closure.evidence()
        )));
    }
    let count = match malcev::coset_index_oracle(f, sc, cap) {
        Ok(c) => c,
        Err(nilcohopf::MalcevError::BoundExceeded { cap }) => {
            return Err(CliError(format!(
                "oracle bound exceeded: more than {cap} cosets (raise --oracle-cap)"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    r.push("oracle_cosets", count);
    Ok(count)
}

fn endo(sc: &StructureConstants, m: &Mat, oracle: bool, cap: usize, r: &mut Report) -> CmdResult {
    let f = malcev::classify_endomorphism(m, sc)?;
    push_classification(&f, r);
    if f.is_lattice_automorphism() {
        let index = malcev::image_index(&f)?;
        r.push("index", index.to_string());
        r.push("witness", index > One::one());
        if oracle {
            let count = push_oracle(&f, sc, cap, r)?;
            r.push("oracle_agrees", index == count.into());
        }
    } else if oracle {
        return Err(CliError("--oracle needs a lattice-preserving automorphism".to_owned()));
    }
    Ok(())
}

fn verdict_json(v: &CoHopfVerdict, r: &mut Report) {
    r.push("verdict", v.kind.as_str());
    r.push("reason", v.reason.clone());
    if let Some(w) = &v.witness {
        r.push("witness", mat_string(&w.matrix));
        r.push("det", w.det.to_string());
    }
    if let Some(i) = &v.index {
        r.push("index", i.to_string());
        r.push("cover_degree", i.to_string());
    }
    if let Some(c) = &v.certificate {
        r.push("certificate", certificate_json(c));
    }
    if let Some(s) = &v.search {
        r.push(
            "search",
            json!({"bound": s.bound, "nodes": s.nodes, "exhausted": s.exhausted, "phase": s.phase}),
        );
    }
}

fn cohopf(sc: &StructureConstants, bound: i64, budget: usize, r: &mut Report) -> CmdResult {
    if bound < 0 {
        return Err(CliError("--search-bound must be nonnegative".to_owned()));
    }
    let v = malcev::certify_cohopfian_with_budget(sc, bound, budget);
    verdict_json(&v, r);
    r.exit_code = if v.kind == VerdictKind::WitnessFound {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    Ok(())
}

fn witness_gxz(sc: &StructureConstants, oracle: bool, cap: usize, r: &mut Report) -> CmdResult {
    let (sum, f) = malcev::product_with_line_witness(sc);
    r.push("sum_dim", sum.dim());
    r.push("matrix", mat_string(&f.matrix));
    r.push("det", f.det.to_string());
    r.push("is_lattice_automorphism", f.is_lattice_automorphism());
    let v = malcev::cohopf_witness_check(&f.matrix, &sum)?;
    r.push("verdict", v.kind.as_str());
    if let Some(i) = &v.index {
        r.push("index", i.to_string());
    }
    if oracle {
        push_oracle(&f, &sum, cap, r)?;
    }
    Ok(())
}

fn bch(sc: &StructureConstants, x: &[Rat], y: &[Rat], r: &mut Report) -> CmdResult {
    let p = malcev::bch(x, y, sc);
    r.push("x", render_vector(x));
    r.push("y", render_vector(y));
    r.push("product", render_vector(&p));
    r.push("coordinates", p.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    r.push("integral", exactlin::is_integral_vec(&p));
    Ok(())
}

fn index(sc: &StructureConstants, m: &Mat, oracle: bool, cap: usize, r: &mut Report) -> CmdResult {
    let f = malcev::classify_endomorphism(m, sc)?;
    if let Some((i, j)) = f.failing_pair {
        return Err(CliError(format!("not a Lie homomorphism: fails on pair ({i},{j})")));
    }
    let index = malcev::image_index(&f)?;
    r.push("det", f.det.to_string());
    r.push("abs_det", f.det.abs().to_string());
    let snf = exactlin::smith_normal_form(m)?;
    r.push(
        "elementary_divisors",
        snf.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    );
    r.push("index", index.to_string());
    if oracle {
        let count = push_oracle(&f, sc, cap, r)?;
        let agrees = index == count.into();
        r.push("oracle_agrees", agrees);
        if !agrees {
            r.exit_code = EXIT_NEGATIVE;
        }
    }
    Ok(())
}

fn catalog_command(name: Option<&str>, catalog: &Catalog, r: &mut Report) -> CmdResult {
    let Some(reference) = name else {
        let entries: Vec<Value> = catalog
            .list()
            .into_iter()
            .map(|e| {
                json!({
                    "name": e.label(),
                    "kind": match e.source { Source::Family(_) => "family", Source::DataFile(_) => "data" },
                    "available": e.available,
                    "rank": e.expected.rank,
                    "class": e.expected.class,
                    "abelianization_dim": e.expected.abelianization,
                    "charnil": e.expected.charnil,
                    "lattice_closed": e.expected.lattice_closed,
                    "summary": e.summary,
                })
            })
            .collect();
        r.push("data_dir", catalog.data_dir().display().to_string());
        r.push("entries", entries);
        return Ok(());
    };
    let reference = reference.strip_prefix('@').unwrap_or(reference);
    let sc = catalog.get_reference(reference)?;
    let text = emit(&sc);
    r.input = Some(Input {
        source: format!("catalog {reference}"),
        digest: digest(&text),
    });
    r.attachment = Some(text);
    Ok(())
}
