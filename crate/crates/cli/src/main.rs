use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use h2lab::analysis::{berezin_with_cap, check_lemma31, DiskPoint};
use h2lab::catalog::{self, CatalogEntry};
use h2lab::characterize::{classify_holo_pair, cross_validate, Mode, Outcome};
use h2lab::operators::{commutator_on_basis, matrix_of, OperatorKind, Truncation};
use h2lab::random::PairClass;
use h2lab::report::{CheckRecord, Format, Report, RunConfig, Status};
use h2lab::suites::{self, random_class_checks};
use h2lab::{parse_symbol, LaurentPoly};

#[derive(Parser, Debug)]
#[command(name = "h2lab", version, about = "Exact Toeplitz operator lab on h²(T²)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Witness-degree budget N.
    #[arg(long, global = true, default_value_t = 8)]
    degree: u32,
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Largest kernel truncation degree M.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: u32,
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Treat inconclusive checks as failures.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// Classify a pair and sweep its commutator over the truncated basis.
    Commutator {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "commute")]
        mode: Mode,
    },
    /// Classify a pair and sweep its semicommutator.
    Semicommutator {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Write the truncated matrix of `T̂_f`.
    Matrix {
        #[arg(allow_hyphen_values = true)]
        symbol: String,
    },
    /// Berezin transform over disk points.
    Berezin(BerezinArgs),
    /// Seeded random pairs per condition class, cross-validated.
    Random {
        /// One of A, B, C, I, II, III, none, none-semicommute; all if omitted.
        #[arg(long)]
        class: Option<PairClass>,
    },
    /// Evaluate catalog entries.
    Catalog {
        /// Catalog JSON file instead of the built-in one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BerezinArgs {
    #[arg(long, group = "op")]
    identity: bool,
    #[arg(long, group = "op", value_name = "F", allow_hyphen_values = true)]
    toeplitz: Option<String>,
    #[arg(long, group = "op", num_args = 2, value_names = ["F", "G"], allow_hyphen_values = true)]
    commutator: Option<Vec<String>>,
    #[arg(long, group = "op", num_args = 2, value_names = ["F", "G"], allow_hyphen_values = true)]
    semicommutator: Option<Vec<String>>,
    /// Point as `re:im,re:im`; repeatable.
    #[arg(long, value_name = "POINT")]
    point: Vec<String>,
    /// Real grid `R:n`, n values per coordinate in [-R, R].
    #[arg(long, value_name = "R:n")]
    grid: Option<String>,
    /// Points with a coordinate above this modulus are rejected.
    #[arg(long, default_value_t = 0.95)]
    max_radius: f64,
}

fn symbol(text: &str) -> Result<LaurentPoly> {
    parse_symbol(text).map_err(|e| anyhow!("symbol `{text}`: {e}"))
}

fn config(g: &Global) -> RunConfig {
    RunConfig {
        seed: g.seed,
        degree: g.degree,
        trials: g.trials,
        tolerance: g.tol,
        cap: g.cap,
        format: g.format,
    }
}

fn outcome_status(o: &Outcome) -> Status {
    match o {
        Outcome::ConfirmedCommuting | Outcome::ConfirmedNoncommuting { .. } => Status::Pass,
        Outcome::InconclusiveRaiseN => Status::Inconclusive,
        Outcome::Bug(_) => Status::Fail,
    }
}

fn pair_report(f_text: &str, g_text: &str, mode: Mode, cfg: &RunConfig) -> Result<Report> {
    let (f, g) = (symbol(f_text)?, symbol(g_text)?);
    let start = Instant::now();
    let inputs = json!({"f": f.to_string(), "g": g.to_string(), "mode": mode.to_string()});
    let (status, detail) = match mode {
        Mode::Mixed => {
            let class = classify_holo_pair(&f, &g, mode)?;
            let sweep = commutator_on_basis(&f, &g.conjugate(), cfg.degree)?;
            let status = match (class.predicts_zero(), sweep.is_all_zero()) {
                (true, true) | (false, false) => Status::Pass,
                (false, true) => Status::Inconclusive,
                (true, false) => Status::Fail,
            };
            let detail = json!({
                "classification": class.verdict.to_string(),
                "satisfied": class.label(),
                "sweep": sweep.to_json(),
            });
            (status, detail)
        }
        _ => {
            let cv = cross_validate(&f, &g, cfg.degree, mode)?;
            (outcome_status(&cv.outcome), cv.to_json())
        }
    };
    let rec = CheckRecord::new(format!("{mode}/pair"), status, inputs, detail)
        .timed(start.elapsed().as_secs_f64() * 1e3);
    Ok(Report::new(mode.to_string(), cfg, vec![rec]))
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let (re, im) = text.split_once(':').unwrap_or((text, "0"));
    Ok(Complex64::new(
        re.trim().parse().with_context(|| format!("real part `{re}`"))?,
        im.trim().parse().with_context(|| format!("imaginary part `{im}`"))?,
    ))
}

fn points(args: &BerezinArgs) -> Result<Vec<DiskPoint>> {
    let mut out = Vec::new();
    for p in &args.point {
        let (a, b) = p
            .split_once(',')
            .ok_or_else(|| anyhow!("point `{p}` must be `re:im,re:im`"))?;
        out.push(DiskPoint::new(parse_complex(a)?, parse_complex(b)?)?);
    }
    if let Some(grid) = &args.grid {
        let (r, n) = grid.split_once(':').ok_or_else(|| anyhow!("grid `{grid}` must be `R:n`"))?;
        let r: f64 = r.parse().context("grid radius")?;
        let n: usize = n.parse().context("grid count")?;
        let axis: Vec<f64> = match n {
            0 => vec![],
            1 => vec![0.0],
            _ => (0..n).map(|k| -r + 2.0 * r * k as f64 / (n - 1) as f64).collect(),
        };
        for &x in &axis {
            for &y in &axis {
                out.push(DiskPoint::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))?);
            }
        }
    }
    if out.is_empty() {
        out.push(DiskPoint::origin());
    }
    if let Some(p) = out.iter().find(|p| p.radius() > args.max_radius) {
        bail!(
            "point ({}, {}) exceeds --max-radius {}",
            p.lambda1(),
            p.lambda2(),
            args.max_radius
        );
    }
    Ok(out)
}

fn berezin_report(args: &BerezinArgs, cfg: &RunConfig) -> Result<Report> {
    let mut lemma31_pair = None;
    let op = if let Some(f) = &args.toeplitz {
        OperatorKind::toeplitz(symbol(f)?)
    } else if let Some(fg) = &args.commutator {
        let (f, g) = (symbol(&fg[0])?, symbol(&fg[1])?);
        lemma31_pair = Some((f.clone(), g.conjugate()));
        OperatorKind::commutator(&f, &g)
    } else if let Some(fg) = &args.semicommutator {
        OperatorKind::semicommutator(&symbol(&fg[0])?, &symbol(&fg[1])?)
    } else {
        OperatorKind::identity()
    };
    let pts = points(args)?;
    let checks = pts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let start = Instant::now();
            let inputs = json!({
                "operator": op.to_string(),
                "lambda1": [p.lambda1().re, p.lambda1().im],
                "lambda2": [p.lambda2().re, p.lambda2().im],
            });
            let id = format!("berezin/point{k:04}");
            let rec = match berezin_with_cap(&op, p, cfg.tolerance, cfg.cap) {
                Ok(v) => {
                    let mut detail = json!({
                        "value": {"re": v.value.re, "im": v.value.im},
                        "bound": v.bound,
                        "degree": v.degree,
                    });
                    let mut status = Status::Pass;
                    if let Some((phi, psi)) = &lemma31_pair {
                        if let Ok(r) = check_lemma31(phi, psi, p, cfg.tolerance) {
                            detail["lemma31"] = json!({
                                "rhs": {"re": r.rhs.re, "im": r.rhs.im},
                                "difference": r.difference,
                                "passed": r.passed,
                            });
                            status = Status::from_bool(r.passed);
                        }
                    }
                    CheckRecord::new(id, status, inputs, detail)
                }
                Err(e) => CheckRecord::new(id, Status::Fail, inputs, json!({"error": e.to_string()})),
            };
            rec.timed(start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    Ok(Report::new("berezin", cfg, checks))
}

fn catalog_report(file: Option<&PathBuf>, cfg: &RunConfig) -> Result<Report> {
    let entries: Vec<CatalogEntry> = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            catalog::from_json(&text)?
        }
        None => catalog::builtin(),
    };
    let checks = entries
        .iter()
        .map(|e| suites::catalog_record(&format!("catalog/{}", e.name), e, cfg.degree))
        .collect();
    Ok(Report::new("catalog", cfg, checks))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = config(&cli.global);
    cfg.validate()?;
    let report = match &cli.command {
        Command::Verify { suite } => suites::run_suite(suite, &cfg)?,
        Command::Commutator { f, g, mode } => pair_report(f, g, *mode, &cfg)?,
        Command::Semicommutator { f, g } => pair_report(f, g, Mode::Semicommute, &cfg)?,
        Command::Matrix { symbol: text } => {
            let f = symbol(text)?;
            let m = matrix_of(&OperatorKind::toeplitz(f), &Truncation::new(cfg.degree))?;
            let body = match cfg.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&m.to_json())?;
                    s.push('\n');
                    s
                }
                Format::Csv | Format::Text => m.to_csv(),
            };
            emit(&body, cli.global.out.as_ref())?;
            return Ok(true);
        }
        Command::Berezin(args) => berezin_report(args, &cfg)?,
        Command::Random { class } => {
            let classes = match class {
                Some(c) => vec![*c],
                None => PairClass::ALL.to_vec(),
            };
            let checks = classes
                .into_iter()
                .flat_map(|c| random_class_checks(&cfg, "random", c))
                .collect();
            Report::new("random", &cfg, checks)
        }
        Command::Catalog { file } => catalog_report(file.as_ref(), &cfg)?,
    };
    emit(&report.render(cfg.format), cli.global.out.as_ref())?;
    let s = report.summary();
    eprintln!(
        "{}: {} pass, {} fail, {} inconclusive",
        report.suite, s.pass, s.fail, s.inconclusive
    );
    Ok(report.succeeded(cli.global.strict))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
