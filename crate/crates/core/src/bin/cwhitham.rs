use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use capillary_whitham::coeff::expand_symbolic;
use capillary_whitham::io::emit::{self, pretty};
use capillary_whitham::io::{Marker, OutputFormat, PlotKind, PlotSpec, RunConfig};
use capillary_whitham::symbol::{double_bifurcation, WEAK_LIMIT};
use capillary_whitham::symbreak::{
    pair_scan, phi_curve, phi_eval, phi_limits, phi_normalized, phi_root_with, PairStatus,
};
use capillary_whitham::wave::{solve_wave_report, ModalParameters};
use capillary_whitham::{Error, SurfaceTension, WaveNumberPair};

#[derive(Parser)]
#[command(
    name = "cwhitham",
    version,
    about = "Bifurcation points, symmetry breaking and asymmetric waves of the capillary-gravity Whitham equation"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat key = value config file (default: $CWHITHAM_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; files are printed to stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output formats, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    format: Vec<OutputFormat>,
    /// Worker threads for pair scans
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Sample points in T for phi curves and root searches
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Number of resolved Fourier modes
    #[arg(long = "K", global = true)]
    truncation: Option<usize>,
    /// Bracket width at which a root of phi is accepted
    #[arg(long, global = true)]
    tol_root: Option<f64>,
    /// Update size at which the fixed point for w counts as converged
    #[arg(long, global = true)]
    tol_w: Option<f64>,
    /// Target for the scaled kernel equations
    #[arg(long, global = true)]
    tol_newton: Option<f64>,
}

#[derive(Args, Clone, Copy)]
struct PairArgs {
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Double bifurcation points (c0, kappa0) for one or more surface tensions
    Bifurcate {
        #[command(flatten)]
        pair: PairArgs,
        /// Surface tension in (0, 1/3)
        #[arg(long = "T", conflicts_with = "t_grid", required_unless_present = "t_grid")]
        t: Option<f64>,
        /// `start:stop:count` (inclusive) or a comma separated list
        #[arg(long = "T-grid")]
        t_grid: Option<String>,
    },
    /// The symmetry-breaking function phi
    Phi {
        #[command(subcommand)]
        mode: PhiMode,
    },
    /// Classify all coprime pairs with k2 <= kmax
    Pairs {
        /// Largest k2 to classify
        #[arg(long)]
        kmax: u32,
        /// Skip the root search and classify by endpoint limits only
        #[arg(long)]
        no_roots: bool,
    },
    /// Solve for a small travelling wave u = v + w
    Wave {
        #[command(flatten)]
        pair: PairArgs,
        /// Amplitude of the k1 mode
        #[arg(long)]
        r1: f64,
        /// Amplitude of the k2 mode
        #[arg(long)]
        r2: f64,
        #[arg(long, default_value_t = 0.0)]
        theta1: f64,
        #[arg(long, default_value_t = 0.0)]
        theta2: f64,
        /// Surface tension, or the starting guess for asymmetric data
        #[arg(long = "T")]
        t: f64,
    },
    /// Exact monomial expansion of phi
    Expand {
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Subcommand)]
enum PhiMode {
    /// phi and its normalized value at one T
    Eval {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "T")]
        t: f64,
    },
    /// All roots of phi on (0, 1/3)
    Root {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Normalized limits of phi at T -> 0 and T -> 1/3
    Limits {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// phi sampled across (0, 1/3)
    Curve {
        #[command(flatten)]
        pair: PairArgs,
    },
}

fn config(common: &Common) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::resolve(common.config.as_deref())?;
    if let Some(v) = &common.out {
        cfg.out = Some(v.clone());
    }
    if !common.format.is_empty() {
        cfg.format = common.format.clone();
    }
    cfg.jobs = common.jobs.unwrap_or(cfg.jobs);
    cfg.grid = common.grid.unwrap_or(cfg.grid);
    cfg.truncation = common.truncation.unwrap_or(cfg.truncation);
    cfg.tol_root = common.tol_root.unwrap_or(cfg.tol_root);
    cfg.tol_w = common.tol_w.unwrap_or(cfg.tol_w);
    cfg.tol_newton = common.tol_newton.unwrap_or(cfg.tol_newton);
    cfg.validate()?;
    Ok(cfg)
}

/// Reduces by the common divisor, noting the change on stderr.
fn pair(args: PairArgs) -> Result<WaveNumberPair, Error> {
    let (pair, divisor) = WaveNumberPair::reduce(args.k1, args.k2)?;
    if divisor > 1 {
        let note = emit::warning_record(
            "pair_reduced",
            &format!("({}, {}) reduced to {pair}", args.k1, args.k2),
            json!({ "k1": args.k1, "k2": args.k2, "divisor": divisor }),
        );
        eprintln!("{}", serde_json::to_string(&note).expect("JSON values serialize"));
    }
    Ok(pair)
}

fn t_values(t: Option<f64>, grid: Option<&str>) -> anyhow::Result<Vec<f64>> {
    if let Some(t) = t {
        return Ok(vec![t]);
    }
    let spec = grid.ok_or_else(|| anyhow!("--T or --T-grid is required"))?;
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let a: f64 = parts[0].trim().parse().context("T-grid start")?;
        let b: f64 = parts[1].trim().parse().context("T-grid stop")?;
        let n: usize = parts[2].trim().parse().context("T-grid count")?;
        return Ok(match n {
            0 => bail!("T-grid count must be positive"),
            1 => vec![a],
            _ => (0..n).map(|i| (a * (n - 1 - i) as f64 + b * i as f64) / (n - 1) as f64).collect(),
        });
    }
    spec.split(',').map(|s| s.trim().parse::<f64>().with_context(|| format!("T-grid entry {s:?}"))).collect()
}

/// Writes every output from one place: files under `--out`, else stdout.
fn write_outputs(cfg: &RunConfig, stem: &str, outputs: Vec<(OutputFormat, String)>) -> anyhow::Result<()> {
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (format, body) in outputs {
                let path = dir.join(format!("{stem}.{}", format.extension()));
                std::fs::write(&path, body)
                    .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
            }
        }
        None => {
            for (_, body) in outputs {
                print!("{body}");
            }
        }
    }
    Ok(())
}

fn select(
    cfg: &RunConfig,
    defaults: &[OutputFormat],
    mut make: impl FnMut(OutputFormat) -> anyhow::Result<Option<String>>,
) -> anyhow::Result<Vec<(OutputFormat, String)>> {
    let mut out = Vec::new();
    for f in cfg.formats_or(defaults) {
        match make(f)? {
            Some(body) => out.push((f, body)),
            None => bail!(Error::Domain(format!("format {} is not available for this command", f.extension()))),
        }
    }
    Ok(out)
}

fn pair_json(p: WaveNumberPair) -> Value {
    json!([p.k1(), p.k2()])
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = config(&cli.common)?;
    use OutputFormat::*;
    match cli.command {
        Command::Bifurcate { pair: args, t, t_grid } => {
            let p = pair(args)?;
            let points = t_values(t, t_grid.as_deref())?
                .into_iter()
                .map(|t| double_bifurcation(p, SurfaceTension::new(t)?))
                .collect::<Result<Vec<_>, Error>>()?;
            let outputs = select(&cfg, &[Csv], |f| {
                Ok(match f {
                    Csv => Some(emit::bifurcation_csv(&points)?),
                    Json => Some(pretty(&json!({
                        "pair": pair_json(p),
                        "points": points.iter().map(|b| json!({
                            "T": b.t.value(), "c0": b.c0, "kappa0": b.kappa0, "residual": b.residual(),
                        })).collect::<Vec<_>>(),
                    }))),
                    Svg => None,
                })
            })?;
            write_outputs(&cfg, "bifurcate", outputs)?;
        }
        Command::Phi { mode } => run_phi(&cfg, mode)?,
        Command::Pairs { kmax, no_roots } => {
            let verdicts = pair_scan(kmax, &cfg.scan_options(!no_roots))?;
            if !verdicts.is_empty() && verdicts.iter().all(|v| v.error.is_some()) {
                bail!(Error::NotConverged {
                    what: "every pair of the scan".into(),
                    iterations: verdicts.len(),
                    residual: f64::NAN,
                });
            }
            let dots: Vec<(f64, f64)> = verdicts
                .iter()
                .filter(|v| v.status == PairStatus::Admits)
                .map(|v| (f64::from(v.pair.k1()), f64::from(v.pair.k2())))
                .collect();
            let outputs = select(&cfg, &[Csv, Svg], |f| {
                Ok(Some(match f {
                    Csv => emit::pairs_csv(&verdicts)?,
                    Json => pretty(&emit::to_value(&verdicts)?),
                    Svg => {
                        let top = f64::from(kmax) + 1.0;
                        PlotSpec::new(PlotKind::Scatter, dots.clone(), "k1", "k2")?
                            .title(format!("pairs with k2 <= {kmax} admitting symmetry breaking"))
                            .ranges(Some((0.0, top)), Some((0.0, top)))
                            .render()
                    }
                }))
            })?;
            write_outputs(&cfg, "pairs", outputs)?;
        }
        Command::Wave { pair: args, r1, r2, theta1, theta2, t } => {
            let p = pair(args)?;
            let params = ModalParameters::new(p, r1, r2, theta1, theta2)?;
            let (profile, report) = solve_wave_report(p, &params, SurfaceTension::weak(t)?, &cfg.wave_options())?;
            let header = emit::wave_header(&profile, &report);
            let outputs = select(&cfg, &[Csv, Json], |f| {
                Ok(Some(match f {
                    Csv => emit::profile_csv(&profile)?,
                    Json => pretty(&header),
                    Svg => {
                        let points = profile.modes.sample(emit::PROFILE_SAMPLES);
                        PlotSpec::new(PlotKind::Line, points, "x", "u")?
                            .title(format!("travelling wave for {p}"))
                            .marker(Marker::Horizontal { y: 0.0, label: String::new() })
                            .render()
                    }
                }))
            })?;
            write_outputs(&cfg, "wave", outputs)?;
            if !report.converged {
                let err = Error::NotConverged {
                    what: "Newton iteration for the kernel equations".into(),
                    iterations: report.iterations_newton,
                    residual: report.residual_equations,
                };
                eprintln!("{}", serde_json::to_string(&emit::error_envelope(&err, header))?);
                return Ok(ExitCode::from(err.exit_code() as u8));
            }
        }
        Command::Expand { pair: args } => {
            let p = pair(args)?;
            let expansion = expand_symbolic(p)?;
            let doc = emit::expansion_json(&expansion)?;
            let outputs = select(&cfg, &[Json], |f| Ok((f == Json).then(|| pretty(&doc))))?;
            write_outputs(&cfg, "expand", outputs)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_phi(cfg: &RunConfig, mode: PhiMode) -> anyhow::Result<()> {
    use OutputFormat::*;
    match mode {
        PhiMode::Eval { pair: args, t } => {
            let p = pair(args)?;
            let t = SurfaceTension::weak(t)?;
            let sample = phi_eval(p, t)?;
            let normalized = phi_normalized(p, t)?;
            let doc = json!({
                "pair": pair_json(p),
                "T": t.value(),
                "phi": sample.value,
                "phi_normalized": normalized,
                "c0": sample.bifurcation.c0,
                "kappa0": sample.bifurcation.kappa0,
            });
            let outputs = select(cfg, &[Json], |f| {
                Ok(match f {
                    Json => Some(pretty(&doc)),
                    Csv => Some(emit::phi_curve_csv(&[(t.value(), sample.value)])?),
                    Svg => None,
                })
            })?;
            write_outputs(cfg, "phi_eval", outputs)
        }
        PhiMode::Root { pair: args } => {
            let p = pair(args)?;
            let roots = phi_root_with(p, cfg.grid, cfg.tol_root)?;
            let outputs = select(cfg, &[Json], |f| {
                Ok(match f {
                    Json => Some(pretty(&json!({ "pair": pair_json(p), "roots": roots }))),
                    Csv => Some(emit::phi_roots_csv(&roots)?),
                    Svg => None,
                })
            })?;
            write_outputs(cfg, "phi_root", outputs)
        }
        PhiMode::Limits { pair: args } => {
            let p = pair(args)?;
            let (low, high) = phi_limits(p)?;
            let sign = |x: f64| {
                if x > 0.0 {
                    "+"
                } else if x < 0.0 {
                    "-"
                } else {
                    "0"
                }
            };
            let doc = json!({
                "pair": pair_json(p),
                "limit_low": low,
                "limit_high": high,
                "signs": [sign(low), sign(high)],
            });
            let outputs = select(cfg, &[Json], |f| Ok((f == Json).then(|| pretty(&doc))))?;
            write_outputs(cfg, "phi_limits", outputs)
        }
        PhiMode::Curve { pair: args } => {
            let p = pair(args)?;
            let curve = phi_curve(p, cfg.grid)?;
            let outputs = select(cfg, &[Csv, Svg], |f| {
                Ok(Some(match f {
                    Csv => emit::phi_curve_csv(&curve)?,
                    Json => pretty(&json!({ "pair": pair_json(p), "samples": curve })),
                    Svg => {
                        let mut plot = PlotSpec::new(PlotKind::Line, curve.clone(), "T", "phi")?
                            .title(format!("phi(T; {}, {})", p.k1(), p.k2()))
                            .marker(Marker::Horizontal { y: 0.0, label: String::new() });
                        if cfg.grid >= capillary_whitham::symbreak::MIN_GRID {
                            for r in phi_root_with(p, cfg.grid, cfg.tol_root)? {
                                plot = plot.marker(Marker::Vertical { x: r.t0, label: format!("T0 = {:.4}", r.t0) });
                            }
                        }
                        plot.ranges(Some((0.0, WEAK_LIMIT)), None).render()
                    }
                }))
            })?;
            write_outputs(cfg, "phi_curve", outputs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let (code, envelope) = match err.downcast_ref::<Error>() {
                Some(e) => (e.exit_code(), emit::error_envelope(e, Value::Null)),
                None => (2, json!({ "code": "usage", "message": format!("{err:#}"), "context": null })),
            };
            eprintln!("{}", serde_json::to_string(&envelope).expect("JSON values serialize"));
            ExitCode::from(code as u8)
        }
    }
}
