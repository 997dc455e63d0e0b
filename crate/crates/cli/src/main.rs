use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use smfc::algebra::{AbelianGroup, GcgData};
use smfc::builders::{build_dijkgraaf_witten, build_gcg, build_graded_lift, build_matrix_category, GradedFusionInput};
use smfc::category::SmfcData;
use smfc::statesum::{flat_counting_oracle, invariant, invariant_pointed, InvariantOptions, DEFAULT_ORACLE_CAP};
use smfc::topology::{builtin_manifold, random_pachner_walk_trace, DeltaComplex, WalkOptions, BUILTIN_NAMES};
use smfc::Error;

/// State-sum invariants of closed oriented 3-manifolds from spherical multi-fusion data.
#[derive(Parser, Debug)]
#[command(name = "smfc", version)]
struct Cli {
    /// Print only the headline value (or pass/fail) instead of the JSON report.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the handle, orthogonality and pentagon identities of a category file.
    ValidateCategory {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check that a triangulation file (or builtin) is a closed oriented complex.
    ValidateComplex { manifold: String },
    /// Build a category and write it as smfc-category/1.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        /// Input file: smfc-gcg/1 for gcg and dw, smfc-graded/1 for graded-lift.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Matrix size for `matrix`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate the state sum.
    Invariant {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        manifold: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Apply random Pachner moves and compare the invariants along the walk.
    PachnerFuzz {
        #[arg(long, required = true)]
        category: Vec<PathBuf>,
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 10)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Count flat connections and cross-check the pointed state sum.
    Oracle {
        /// smfc-gcg/1 file; only its group is used.
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the builtin manifolds, optionally with the invariant of a category on each.
    Census {
        #[arg(long)]
        category: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long)]
    threads: Option<usize>,
    /// Abort after this many search nodes.
    #[arg(long, env = "SMFC_SIZE_CAP")]
    size_cap: Option<u64>,
}

impl RunArgs {
    fn options(&self) -> InvariantOptions {
        InvariantOptions {
            threads: self.threads,
            max_nodes: self.size_cap,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BuildKind {
    Matrix,
    Gcg,
    Dw,
    GradedLift,
}

enum Failure {
    Check(Value, String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        if err.is_input_error() {
            Failure::Input(err.to_string())
        } else {
            Failure::Check(json!({ "error": err.to_string() }), err.to_string())
        }
    }
}

struct Outcome {
    report: Value,
    short: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if let Err(err) = emit(&cli, &out.report, &out.short) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(report, msg)) => {
            let _ = emit(&cli, &report, "FAIL");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Value, short: &str) -> std::io::Result<()> {
    let text = if cli.quiet {
        short.to_string()
    } else {
        serde_json::to_string_pretty(report).expect("report serializes")
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn load_manifold(name: &str) -> Result<DeltaComplex, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        return Ok(DeltaComplex::load(path)?);
    }
    Ok(builtin_manifold(name)?)
}

fn load_category(path: &Path) -> Result<SmfcData, Failure> {
    SmfcData::load(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_gcg(path: &Path) -> Result<GcgData, Failure> {
    GcgData::load(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn summary(report: &smfc::ValidationReport) -> String {
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        "PASS".to_string()
    } else {
        format!("FAIL {}", failed.join(" "))
    }
}

fn format_value(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::ValidateCategory { path, tol } => {
            let cat = load_category(path)?;
            let report = cat.validate(*tol);
            let passed = report.passed();
            let short = summary(&report);
            Ok(Outcome {
                report: json!({ "passed": passed, "checks": to_value(&report.checks), "dims": to_value(&cat.dims_report()) }),
                short,
                passed,
            })
        }
        Command::ValidateComplex { manifold } => {
            let k = load_manifold(manifold)?;
            let report = k.validate();
            let passed = report.passed();
            let short = summary(&report);
            Ok(Outcome {
                report: json!({
                    "passed": passed,
                    "checks": to_value(&report.checks),
                    "counts": k.counts(),
                    "euler_characteristic": k.euler_characteristic(),
                }),
                short,
                passed,
            })
        }
        Command::Build { kind, input, n } => {
            let need_input = || input.as_deref().ok_or_else(|| Failure::Input("--input is required".into()));
            let cat = match kind {
                BuildKind::Matrix => {
                    let n = n.ok_or_else(|| Failure::Input("--n is required".into()))?;
                    build_matrix_category(n)?
                }
                BuildKind::Gcg => build_gcg(&load_gcg(need_input()?)?)?,
                BuildKind::Dw => {
                    let g = load_gcg(need_input()?)?;
                    if g.abelian().order() != 1 {
                        return Err(Failure::Input("dw needs a trivial abelian group".into()));
                    }
                    let n = g.group().order();
                    let omega = (0..n * n * n).map(|t| g.omega(t / (n * n), (t / n) % n, t % n)).collect();
                    build_dijkgraaf_witten(g.group(), omega)?
                }
                BuildKind::GradedLift => {
                    let path = need_input()?;
                    let input = GradedFusionInput::load(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    build_graded_lift(&input)?
                }
            };
            let text = cat.to_json();
            let report: Value = serde_json::from_str(&text).expect("category json");
            Ok(Outcome {
                short: format!("{} labels", cat.labels().len()),
                report,
                passed: true,
            })
        }
        Command::Invariant { category, manifold, run } => {
            let cat = load_category(category)?;
            let k = load_manifold(manifold)?;
            let res = invariant(&cat, &k, &run.options())?;
            Ok(Outcome {
                short: format_value(res.value),
                report: json!({
                    "value": to_value(&res.value),
                    "colorings": { "visited": res.colorings_visited, "contributing": res.colorings_contributing },
                    "seconds": res.seconds,
                }),
                passed: true,
            })
        }
        Command::PachnerFuzz { category, manifold, moves, seed, tol, run } => {
            let k = load_manifold(manifold)?;
            let cats = category.iter().map(|p| load_category(p)).collect::<Result<Vec<_>, _>>()?;
            let trace = random_pachner_walk_trace(&k, *moves, *seed, WalkOptions::default());
            let opts = run.options();
            let mut all_passed = true;
            let mut per_cat = Vec::new();
            for (path, cat) in category.iter().zip(&cats) {
                let start = invariant(cat, &k, &opts)?.value;
                let mut log = vec![json!({ "move": Value::Null, "tets": k.tets().len(), "value": to_value(&start) })];
                let mut failing = None;
                for (step, (mv, complex)) in trace.iter().enumerate() {
                    let v = invariant(cat, complex, &opts)?.value;
                    if failing.is_none() && !close(start, v, *tol) {
                        failing = Some(step + 1);
                    }
                    log.push(json!({ "move": to_value(mv), "tets": complex.tets().len(), "value": to_value(&v) }));
                }
                all_passed &= failing.is_none();
                per_cat.push(json!({
                    "category": path.display().to_string(),
                    "passed": failing.is_none(),
                    "first_failing_step": failing,
                    "log": log,
                }));
            }
            Ok(Outcome {
                report: json!({
                    "manifold": manifold,
                    "seed": seed,
                    "moves": moves,
                    "tol": tol,
                    "passed": all_passed,
                    "categories": per_cat,
                }),
                short: if all_passed { "PASS".into() } else { "FAIL invariance".into() },
                passed: all_passed,
            })
        }
        Command::Oracle { group, manifold, tol, run } => {
            let g = load_gcg(group)?;
            let k = load_manifold(manifold)?;
            let cap = run.size_cap.unwrap_or(DEFAULT_ORACLE_CAP);
            let count = flat_counting_oracle(g.group(), &k, cap)?;
            let exact = *count.numer() as f64 / *count.denom() as f64;
            let plain = GcgData::new(g.group().clone(), AbelianGroup::trivial());
            let pointed = invariant_pointed(&plain, &k)?.value;
            let passed = close(num_complex::Complex64::new(exact, 0.0), pointed, *tol);
            Ok(Outcome {
                report: json!({
                    "oracle": format!("{count}"),
                    "oracle_value": exact,
                    "pointed": to_value(&pointed),
                    "passed": passed,
                }),
                short: format!("{count}"),
                passed,
            })
        }
        Command::Census { category, run } => {
            let cat = category.as_deref().map(load_category).transpose()?;
            let opts = run.options();
            let mut rows = Vec::new();
            for name in BUILTIN_NAMES {
                let k = builtin_manifold(name)?;
                let mut row = json!({
                    "name": name,
                    "counts": k.counts(),
                    "euler_characteristic": k.euler_characteristic(),
                    "valid": k.validate().passed(),
                });
                if let Some(cat) = &cat {
                    row["value"] = to_value(&invariant(cat, &k, &opts)?.value);
                }
                rows.push(row);
            }
            Ok(Outcome {
                short: format!("{} manifolds", rows.len()),
                report: json!({ "manifolds": rows }),
                passed: true,
            })
        }
    }
}
