use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horochow::catalog::{
    self, families, find_semisimple, multiplication_table, reconstruct, Basis, CatalogError, SuiteOptions, Variety,
    VarietySpec,
};
use horochow::chern::g2_fundamental_class;
use horochow::hasse::format_degrees;
use horochow::rational::{fmt_q, parse_q};
use horochow::schubert::{grass_mult, spinor_mult};
use horochow::{GrassCtx, Partition, SchubertCycle, SpinorCycle, StrictPartition, Q};
use thiserror::Error;

const SPEC_DIR_VAR: &str = "HOROCHOW_SPEC_DIR";

#[derive(Parser, Debug)]
#[command(name = "horochow", version, about = "Chow rings and quantum cohomology of horospherical two-orbit varieties")]
struct Cli {
    /// Transliterate σ, τ, γ and friends to plain ASCII.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Replay the golden tables of a variety against the computed ring.
    Verify {
        variety: String,
        #[arg(long, conflicts_with_all = ["quantum", "all"])]
        classical: bool,
        #[arg(long, conflicts_with = "all")]
        quantum: bool,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
        /// Load the variety from this JSON file instead of the catalog.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Print a multiplication table computed from the ring.
    Table {
        variety: String,
        #[arg(long, value_enum, default_value_t = BasisArg::First)]
        basis: BasisArg,
        #[arg(long)]
        quantum: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Degrees of the vertex classes.
    Degrees {
        variety: String,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// The class of the G₂-variety in G(2,8).
    FundamentalClass { variety: String },
    /// Rebuild multiplication by a second generator from the diagram alone.
    Reconstruct {
        variety: String,
        /// Vertex id of the generator (defaults to the one recorded with the variety).
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Certify semisimplicity of the quantum ring at a value of q.
    Semisimple {
        variety: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Schubert calculus on a Grassmannian G(k,n).
    Grass {
        #[command(subcommand)]
        op: GrassOp,
    },
    /// Schubert calculus on the spinor variety of Spin10.
    Spinor {
        #[command(subcommand)]
        op: SpinorOp,
    },
    /// Known families of two-orbit varieties.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
}

#[derive(Subcommand, Debug)]
enum GrassOp {
    Prod { k: usize, n: usize, lambda: String, mu: String },
}

#[derive(Subcommand, Debug)]
enum SpinorOp {
    Prod { lambda: String, mu: String },
}

#[derive(Subcommand, Debug)]
enum CatalogOp {
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    First,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Catalog(CatalogError::UnknownVariety(_)) => 2,
            _ => 1,
        }
    }
}

struct Out {
    ascii: bool,
}

impl Out {
    fn line(&self, s: impl AsRef<str>) {
        let s = s.as_ref();
        if self.ascii {
            emit(&transliterate(s));
        } else {
            emit(s);
        }
    }
}

// a closed pipe (e.g. `| head`) is not an error
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn transliterate(s: &str) -> String {
    const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::with_capacity(s.len());
    let mut in_exponent = false;
    for c in s.chars() {
        if let Some(d) = SUPERSCRIPTS.iter().position(|&x| x == c) {
            if !in_exponent {
                out.push('^');
            }
            out.push(char::from(b'0' + d as u8));
            in_exponent = true;
            continue;
        }
        in_exponent = false;
        match c {
            'σ' => out.push('s'),
            'τ' => out.push('t'),
            'γ' => out.push('g'),
            '·' => out.push('*'),
            '−' => out.push('-'),
            '⁺' => out.push('p'),
            '⁻' => out.push('m'),
            '∫' => out.push_str("int"),
            '⟨' => out.push('<'),
            '⟩' => out.push('>'),
            _ => out.push(c),
        }
    }
    out
}

fn resolve_spec(variety: &str, spec: Option<&Path>) -> Result<VarietySpec, CliError> {
    if let Some(path) = spec {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(catalog::load_spec(&text)?);
    }
    match catalog::builtin(variety) {
        Err(CatalogError::UnknownVariety(_)) => {}
        other => return Ok(other?),
    }
    if let Some(dir) = std::env::var_os(SPEC_DIR_VAR) {
        let path = PathBuf::from(dir).join(format!("{variety}.json"));
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(catalog::load_spec(&text)?);
        }
    }
    Err(CatalogError::UnknownVariety(variety.to_string()).into())
}

fn variety(name: &str, spec: Option<&Path>) -> Result<Variety, CliError> {
    Ok(Variety::new(resolve_spec(name, spec)?)?)
}

fn partition(text: &str) -> Result<Partition, CliError> {
    text.parse().map_err(|e| CliError::Usage(format!("malformed partition {text:?}: {e}")))
}

fn strict_partition(text: &str) -> Result<StrictPartition, CliError> {
    text.parse().map_err(|e| CliError::Usage(format!("malformed strict partition {text:?}: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let out = Out { ascii: cli.ascii };
    let ascii = cli.ascii;
    match cli.command {
        Command::Verify { variety, classical, quantum, all: _, json, spec } => {
            let spec = resolve_spec(&variety, spec.as_deref())?;
            let options = if classical {
                SuiteOptions::classical()
            } else if quantum {
                SuiteOptions::quantum()
            } else {
                SuiteOptions::all()
            };
            let report = catalog::run_suite(&spec, options);
            if json {
                emit(&report.to_json());
            } else {
                for c in report.checks() {
                    out.line(c.to_string());
                }
                let failed = report.failures().count();
                out.line(format!("{} checks, {} passed, {} failed", report.len(), report.len() - failed, failed));
            }
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Table { variety: name, basis, quantum, format, spec } => {
            let v = variety(&name, spec.as_deref())?;
            let model = v.model(quantum)?;
            let basis = match basis {
                BasisArg::First => Basis::First,
                BasisArg::Dual => Basis::Dual,
            };
            if basis == Basis::Dual && v.dual().is_none() {
                return Err(CliError::Usage(format!("{name} has no dual basis data")));
            }
            let rows = multiplication_table(&v, &model, basis, ascii)?;
            match format {
                Format::Json => emit(&serde_json::to_string_pretty(&rows).map_err(anyhow::Error::from)?),
                Format::Text => {
                    for r in rows {
                        out.line(format!("{}·{} = {}", r.a, r.b, r.product));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degrees { variety: name, spec } => {
            let v = variety(&name, spec.as_deref())?;
            let model = v.model(false)?;
            let (paths, ring) = catalog::degrees(&v, &model)?;
            let order: Vec<usize> = (0..v.diagram().vertices().len()).collect();
            out.line(format_degrees(v.diagram(), &ring, &order, ascii));
            if paths != ring {
                out.line(format!("path counts disagree: {}", format_degrees(v.diagram(), &paths, &order, ascii)));
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FundamentalClass { variety } => {
            if variety != "g2" {
                return Err(CliError::Usage(format!("fundamental-class is only available for g2, not {variety:?}")));
            }
            let r = g2_fundamental_class();
            out.line(format!("closed orbit in G(2,7): {}", r.closed_orbit.render("τ")));
            let evals: Vec<String> = r.evaluations.iter().map(|(m, x)| format!("{m}:{}", fmt_q(x))).collect();
            out.line(format!("evaluations: {}", evals.join(" ")));
            out.line(r.class.to_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { variety: name, sigma, spec } => {
            let v = variety(&name, spec.as_deref())?;
            let sigma = sigma
                .or_else(|| v.spec().golden.reconstruct.as_ref().map(|r| r.sigma.clone()))
                .ok_or_else(|| CliError::Usage(format!("{name} records no second generator; pass --sigma")))?;
            if v.diagram().vertex_index(&sigma).is_err() {
                return Err(CliError::Usage(format!("{sigma:?} is not a vertex of {name}")));
            }
            let model = v.model(false)?;
            let report = reconstruct(&v, &model, &sigma)?;
            for l in report.to_string().lines() {
                out.line(l);
            }
            if !(report.sample_associative && report.sample_commutes && report.sample_cyclic) {
                out.line("flagged: sampled operator fails the a-posteriori checks");
            }
            Ok(if report.contains_true == Some(false) { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Semisimple { variety: name, q, spec } => {
            let v = variety(&name, spec.as_deref())?;
            if !v.has_quantum() {
                return Err(CliError::Usage(format!("{name} has no quantum relations")));
            }
            let golden = v.spec().golden.semisimple.clone();
            let q: Q = match q.or_else(|| golden.as_ref().map(|g| g.q.clone())) {
                Some(t) => parse_q(&t).ok_or_else(|| CliError::Usage(format!("malformed rational {t:?}")))?,
                None => Q::from_integer(1.into()),
            };
            let candidates = golden.map(|g| g.candidates).unwrap_or_else(|| vec!["h".to_string()]);
            let model = v.model(true)?;
            let r = find_semisimple(&v, &model, &q, &candidates)?;
            let c = &r.certificate;
            let yn = |b: bool| if b { "yes" } else { "no" };
            out.line(format!("q = {}", fmt_q(&r.q)));
            out.line(format!("element: {}", r.candidate));
            out.line(format!("minimal polynomial: {}", c.minimal_polynomial));
            out.line(format!("degree: {}", c.minimal_polynomial.degree().unwrap_or(0)));
            out.line(format!("squarefree: {}", yn(c.squarefree)));
            out.line(format!("generates: {}", yn(c.generates)));
            out.line(format!("verified: {}", yn(c.verified)));
            out.line(format!("semisimple: {}", yn(c.semisimple())));
            Ok(if c.semisimple() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Grass { op: GrassOp::Prod { k, n, lambda, mu } } => {
            let ctx = GrassCtx::new(k, n).map_err(|e| CliError::Usage(e.to_string()))?;
            let a = SchubertCycle::class(ctx, partition(&lambda)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let b = SchubertCycle::class(ctx, partition(&mu)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let p = grass_mult(&a, &b).map_err(anyhow::Error::from)?;
            out.line(p.to_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Spinor { op: SpinorOp::Prod { lambda, mu } } => {
            let a = SpinorCycle::class(strict_partition(&lambda)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let b = SpinorCycle::class(strict_partition(&mu)?).map_err(|e| CliError::Usage(e.to_string()))?;
            out.line(spinor_mult(&a, &b).to_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { op: CatalogOp::List { json } } => {
            let fams = families();
            if json {
                emit(&serde_json::to_string_pretty(&fams).map_err(anyhow::Error::from)?);
            } else {
                out.line(format!("{:<5} {:<6} {:<12} {:<10} {:<8} {:<12} {}", "case", "group", "P_Y", "P_Z", "d", "k", "builtin"));
                for f in fams {
                    out.line(format!(
                        "{:<5} {:<6} {:<12} {:<10} {:<8} {:<12} {}",
                        f.case,
                        f.group,
                        f.p_y,
                        f.p_z,
                        f.module_dimension,
                        f.k,
                        f.builtin.unwrap_or("-")
                    ));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
