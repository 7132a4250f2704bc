use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mlattice::classify::classification_report;
use mlattice::constructions::{default_corpus, parse_map_table, Corpus, LatticeSource};
use mlattice::dot::to_dot;
use mlattice::harness::{self, hunt, Goal, HarnessConfig, HarnessCtx, Status};
use mlattice::maps::{make_delta, make_phi, DeltaKind, PhiKind};
use mlattice::{Lattice, ParseError, ValidationReport};

#[derive(Parser)]
#[command(name = "mlattice", version, about = "Finite multiplicative lattices and phi-delta-primary elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice axioms.
    Validate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Classify every proper element.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        /// d0, d1 or file:<path>
        #[arg(long, default_value = "d1")]
        delta: String,
        /// none, 0, 1, <k>, n:<k>, omega or file:<path>
        #[arg(long, default_value = "2")]
        phi: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run the theorem properties over a corpus.
    Verify {
        /// `default`, a comma list of sources (zn:8,chain:2,...) or a corpus JSON file
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Only run these properties (repeatable or comma separated).
        #[arg(long = "property", value_delimiter = ',')]
        properties: Vec<String>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = harness::DEFAULT_WITNESS_CAP)]
        witness_cap: usize,
        /// Properties allowed to come out VACUOUS.
        #[arg(long, value_delimiter = ',', default_value = "T24")]
        expect_vacuous: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// List corpus elements in every `have` class but not in `lack`.
    Hunt {
        #[arg(long, value_delimiter = ',', required = true)]
        have: Vec<String>,
        #[arg(long)]
        lack: String,
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print the Hasse diagram as a DOT digraph.
    ExportDot {
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Ideal lattice of Z_n.
    #[arg(long)]
    zn: Option<u64>,
    /// Chain 0 < c1 < ... < 1 with k + 1 elements, mul = meet.
    #[arg(long)]
    chain: Option<usize>,
    /// Powerset of k atoms, mul = meet.
    #[arg(long)]
    boolean: Option<usize>,
    /// Lattice file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> LatticeSource {
        match (self.zn, self.chain, self.boolean, &self.file) {
            (Some(n), ..) => LatticeSource::Zn(n),
            (_, Some(k), ..) => LatticeSource::Chain(k),
            (_, _, Some(k), _) => LatticeSource::Boolean(k),
            (.., Some(p)) => LatticeSource::File(p.clone()),
            _ => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Why a command did not succeed.
enum Failure {
    /// Exit 1: the computation ran and the answer is negative.
    Semantic,
    /// Exit 2: bad input.
    Usage(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { source, format } => validate(&source, format),
        Command::Classify { source, delta, phi, format } => classify(&source, &delta, &phi, format),
        Command::Verify { corpus, properties, report, witness_cap, expect_vacuous, format } => {
            verify(&corpus, &properties, report.as_deref(), witness_cap, &expect_vacuous, format)
        }
        Command::Hunt { have, lack, corpus, format } => hunt_cmd(&have, &lack, &corpus, format),
        Command::ExportDot { source } => export_dot(&source),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn out(line: &str) {
    emit(&format!("{line}\n"));
}

fn load(source: &SourceArgs) -> Result<Arc<Lattice>, Failure> {
    Ok(Arc::new(source.source().load()?))
}

fn render_validation(name: &str, labels: &[String], report: &ValidationReport, format: Format) -> String {
    if format == Format::Json {
        let failures: Vec<serde_json::Value> = report
            .failures
            .iter()
            .map(|f| {
                serde_json::json!({
                    "axiom": f.axiom.name(),
                    "witness": f.witness.iter().map(|e| labels[e.index()].as_str()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = serde_json::json!({ "lattice": name, "ok": report.ok, "failures": failures });
        return serde_json::to_string_pretty(&doc).unwrap() + "\n";
    }
    if report.ok {
        return format!("{name}: ok ({} elements)\n", labels.len());
    }
    let mut out = format!("{name}: {} axiom failure(s)\n", report.failures.len());
    for f in &report.failures {
        let w: Vec<&str> = f.witness.iter().map(|e| labels[e.index()].as_str()).collect();
        writeln!(out, "  {}: {}", f.axiom, w.join(", ")).unwrap();
    }
    out
}

fn validate(source: &SourceArgs, format: Format) -> Outcome {
    match source.source().load() {
        Ok(l) => {
            let report = l.validate();
            emit(&render_validation(l.name(), l.labels(), &report, format));
            if report.ok {
                Ok(())
            } else {
                Err(Failure::Semantic)
            }
        }
        // well-formed tables that break an axiom
        Err(ParseError::Validation(report)) => {
            let labels = file_labels(source);
            emit(&render_validation("lattice", &labels, &report, format));
            Err(Failure::Semantic)
        }
        Err(e) => Err(e.into()),
    }
}

/// Labels from the `elements` line of a lattice file, for reporting
/// witnesses of a table that failed validation.
fn file_labels(source: &SourceArgs) -> Vec<String> {
    let Some(path) = &source.file else {
        return Vec::new();
    };
    std::fs::read_to_string(path)
        .ok()
        .and_then(|text| {
            text.lines().find_map(|line| {
                let line = line.split('#').next().unwrap_or("");
                line.trim().strip_prefix("elements ").map(|rest| rest.split_whitespace().map(String::from).collect())
            })
        })
        .unwrap_or_default()
}

fn read_table(l: &Lattice, path: &str) -> Result<Vec<mlattice::ElementId>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(parse_map_table(l, &text)?)
}

fn parse_delta(l: &Arc<Lattice>, spec: &str) -> Result<mlattice::Expansion, Failure> {
    let kind = match (DeltaKind::builtin(spec), spec.strip_prefix("file:")) {
        (Some(kind), _) => kind,
        (None, Some(path)) => DeltaKind::Table { tag: path.to_string(), table: read_table(l, path)? },
        (None, None) => return Err(Failure::Usage(format!("unknown delta `{spec}`"))),
    };
    make_delta(l, kind).map_err(|e| Failure::Usage(format!("delta `{spec}`: {e}")))
}

fn parse_phi(l: &Arc<Lattice>, spec: &str) -> Result<mlattice::PhiMap, Failure> {
    let kind = match (PhiKind::builtin(spec), spec.strip_prefix("file:")) {
        (Some(kind), _) => kind,
        (None, Some(path)) => PhiKind::Table { tag: path.to_string(), table: read_table(l, path)? },
        (None, None) => return Err(Failure::Usage(format!("unknown phi `{spec}`"))),
    };
    make_phi(l, kind).map_err(|e| Failure::Usage(format!("phi `{spec}`: {e}")))
}

fn classify(source: &SourceArgs, delta: &str, phi: &str, format: Format) -> Outcome {
    let l = load(source)?;
    let delta = parse_delta(&l, delta)?;
    let phi = parse_phi(&l, phi)?;
    let report = classification_report(&l, &delta, &phi).map_err(|e| Failure::Usage(e.to_string()))?;
    match format {
        Format::Table => emit(&report.to_table()),
        Format::Json => out(&report.to_json()),
    }
    Ok(())
}

fn load_corpus(spec: &str) -> Result<Corpus, Failure> {
    if spec == "default" {
        return Ok(default_corpus());
    }
    if spec.contains(':') {
        let mut corpus = Corpus::new();
        for part in spec.split(',') {
            let lattice = part.trim().parse::<LatticeSource>()?.load()?;
            corpus.push(lattice, "command line")?;
        }
        return Ok(corpus);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    Ok(Corpus::from_json(&text)?)
}

fn verify(
    corpus: &str,
    properties: &[String],
    report_path: Option<&Path>,
    witness_cap: usize,
    expect_vacuous: &[String],
    format: Format,
) -> Outcome {
    let corpus = load_corpus(corpus)?;
    let selected = properties
        .iter()
        .map(|id| harness::property(id))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let config = HarnessConfig { witness_cap, ..HarnessConfig::default() };
    let ctx = HarnessCtx::new(&corpus, config).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = if selected.is_empty() {
        harness::run_all_ctx(&ctx)
    } else {
        harness::Report {
            corpus: ctx.lattice_names(),
            results: selected.iter().map(|p| harness::run_property_ctx(p, &ctx)).collect(),
        }
    };
    if let Some(path) = report_path {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Table => emit(&report.to_table()),
        Format::Json => out(&report.to_json()),
    }
    let unexpected: Vec<&str> = report
        .results
        .iter()
        .filter(|r| r.status == Status::Vacuous && !expect_vacuous.iter().any(|id| id == &r.id))
        .map(|r| r.id.as_str())
        .collect();
    let violations = report.total_violations();
    if format == Format::Table {
        let pass = report.results.iter().filter(|r| r.status == Status::Pass).count();
        out(&format!(
            "{} properties: {pass} PASS, {} VACUOUS, {violations} violations",
            report.results.len(),
            report.vacuous().len()
        ));
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected VACUOUS: {}", unexpected.join(", "));
    }
    if violations == 0 && unexpected.is_empty() {
        Ok(())
    } else {
        Err(Failure::Semantic)
    }
}

fn hunt_cmd(have: &[String], lack: &str, corpus: &str, format: Format) -> Outcome {
    let goal = Goal::parse(have, lack).map_err(|e| Failure::Usage(e.to_string()))?;
    let corpus = load_corpus(corpus)?;
    let found = hunt(&goal, &corpus);
    match format {
        Format::Table => {
            for s in &found {
                out(&s.to_string());
            }
            if found.is_empty() {
                out("nothing found");
            }
        }
        Format::Json => out(&serde_json::to_string_pretty(&found).unwrap()),
    }
    if found.is_empty() {
        Err(Failure::Semantic)
    } else {
        Ok(())
    }
}

fn export_dot(source: &SourceArgs) -> Outcome {
    let l = load(source)?;
    emit(&to_dot(&l));
    Ok(())
}
