//! tspack: contact graphs, separability checks, contact-number bounds,
//! constructions, exhaustive search and classification for packings of
//! congruent balls.
//!
//! Exit codes: 0 success, 1 negative verdict under --strict, 2 invalid
//! input or usage.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};
use tspack_core::*;

#[derive(Parser)]
#[command(
    name = "tspack",
    version,
    about = "Totally/locally separable packings: contact graphs, separability certificates, bounds, constructions, search and classification"
)]
struct Cli {
    /// Append one machine-readable JSON record of this invocation (inputs,
    /// seeds, verdicts, timing) to the given file.
    #[arg(long, global = true, value_name = "FILE")]
    log: Option<PathBuf>,

    /// Worker threads for the operations that fan out (enumerate, sigma).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count tangencies of a packing file and print its contact number.
    Contacts { file: PathBuf },
    /// Decide total separability of a planar packing (exact, with
    /// certificates).
    CheckTs {
        file: PathBuf,
        /// Exit with code 1 on a negative verdict.
        #[arg(long)]
        strict: bool,
        /// Print one separating line per pair.
        #[arg(long)]
        certificates: bool,
    },
    /// Decide local separability: exact planar decision or the
    /// any-dimension obtuse necessary-condition test.
    CheckLs {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Exit with code 1 on a negative verdict.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate a contact-number bound formula.
    Bound(BoundArgs),
    /// Estimate the Rogers simplex density sigma_d by seeded Monte Carlo.
    Sigma {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generate a named configuration and write it as a packing file.
    #[command(subcommand)]
    Construct(ConstructKind),
    /// Exhaustively search n-point lattice configurations for the maximum
    /// contact count.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Abort after this many wall-clock seconds.
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
        /// Abort after this many canonical forms.
        #[arg(long, default_value_t = 10_000_000)]
        budget_forms: u64,
        /// Store every witness in this catalog directory.
        #[arg(long, value_name = "DIR")]
        catalog: Option<PathBuf>,
    },
    /// Classify a planar maximizer into the crystallization cases.
    Classify { file: PathBuf },
    /// Render a planar packing (and optionally its separating lines) as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
        /// Overlay the separating line of every disk pair.
        #[arg(long)]
        separators: bool,
    },
    /// Store packings in, or re-verify, the extremal-configuration catalog.
    #[command(subcommand)]
    Catalog(CatalogAction),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Exact planar decision on every tangency star.
    Exact,
    /// Necessary conditions only (any dimension): pairwise-obtuse
    /// directions, degree at most 2d.
    Obtuse,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    formula: FormulaArg,
    #[arg(long)]
    n: u64,
    /// Dimension (required by main, beszsz and lattice).
    #[arg(long)]
    d: Option<usize>,
    /// Density estimate source for the main formula.
    #[arg(long, value_enum)]
    delta_source: Option<DeltaSourceArg>,
    /// Density value when --delta-source custom.
    #[arg(long)]
    delta_value: Option<f64>,
    /// Monte Carlo samples when --delta-source rogers.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Monte Carlo seed when --delta-source rogers.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    /// Planar, arbitrary packings: floor(3n - sqrt(12n - 3)).
    Harborth,
    /// Planar, locally separable: floor(2n - 2 sqrt(n)).
    Ls2,
    /// 3D, totally separable: floor(3n - 1.346 n^(2/3)).
    Ts3,
    /// 3D, locally separable: floor(3n - 1.206 n^(2/3)).
    Ls3,
    /// 3D, arbitrary packings: floor(6n - 0.926 n^(2/3)).
    General3,
    /// Locally separable, d >= 3, pluggable density estimate.
    Main,
    /// Totally separable, d >= 4.
    Beszsz,
    /// Integer-lattice lower and upper estimates.
    Lattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeltaSourceArg {
    Rogers,
    Hales,
    Custom,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Basic polyomino on n >= 4 lattice points (rectangle plus bar).
    BasicPolyomino {
        #[arg(long)]
        n: u64,
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// d-dimensional grid of side^d unit-diameter balls.
    Grid {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        side: u64,
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// Central unit ball touched by 2d others at +-2 e_i.
    CrossStar {
        #[arg(long)]
        d: usize,
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// The 13-disk pentagon-augmented maximizer (locally but not totally
    /// separable).
    Pentagon {
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// Basic polyomino on n points plus one pendant disk.
    Pendant {
        #[arg(long)]
        n: u64,
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Store a packing file under its canonical hash.
    Store {
        file: PathBuf,
        /// Catalog directory (default: $TSPACK_CATALOG or ./catalog).
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
    },
    /// Re-verify every stored entry and report drift.
    Verify {
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Exit with code 1 when drift is found.
        #[arg(long)]
        strict: bool,
    },
}

/// Key-value report plus the strictness outcome of the invocation.
struct Outcome {
    lines: Vec<(String, String)>,
    negative: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            lines: Vec::new(),
            negative: false,
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let started = Instant::now();
    let result = run(&cli.command);
    let duration_ms = started.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(outcome) => {
            for (key, value) in &outcome.lines {
                println!("{key} = {value}");
            }
            if let Some(path) = &cli.log {
                let code = if outcome.negative { 1 } else { 0 };
                if let Err(e) = append_log(path, &outcome, duration_ms, code) {
                    eprintln!("warning: could not write run log: {e}");
                }
            }
            if outcome.negative {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(path) = &cli.log {
                let mut outcome = Outcome::new();
                outcome.push("error", format!("{e:#}"));
                let _ = append_log(path, &outcome, duration_ms, 2);
            }
            std::process::exit(2);
        }
    }
}

fn append_log(path: &Path, outcome: &Outcome, duration_ms: f64, exit_code: i32) -> Result<()> {
    use std::io::Write;
    let argv: Vec<String> = std::env::args().collect();
    let fields: serde_json::Map<String, serde_json::Value> = outcome
        .lines
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let record = serde_json::json!({
        "argv": argv,
        "fields": fields,
        "duration_ms": duration_ms,
        "exit_code": exit_code,
        "timestamp": SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    });
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(file, "{record}")?;
    Ok(())
}

fn load(file: &Path) -> Result<Packing> {
    let (packing, _) = read_packing(file)?;
    packing
        .validate(&Tolerance::default())
        .with_context(|| format!("invalid packing in {}", file.display()))?;
    Ok(packing)
}

fn catalog_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("TSPACK_CATALOG").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("catalog"))
}

fn run(command: &Command) -> Result<Outcome> {
    let tol = Tolerance::default();
    let mut out = Outcome::new();
    match command {
        Command::Contacts { file } => {
            let p = load(file)?;
            let g = p.contact_graph(&tol)?;
            out.push("file", file.display());
            out.push("dimension", p.dimension());
            out.push("radius", p.radius());
            out.push("n", p.len());
            out.push("contacts", g.contact_count());
            out.push("max_degree", g.max_degree());
        }
        Command::CheckTs {
            file,
            strict,
            certificates,
        } => {
            let p = load(file)?;
            out.push("file", file.display());
            out.push("n", p.len());
            match is_ts(&p, &tol)? {
                TsVerdict::Yes {
                    certificates: certs,
                } => {
                    out.push("verdict", "TS_yes");
                    out.push("pairs", certs.len());
                    if *certificates {
                        for cert in &certs {
                            out.push(
                                &format!("separator_{}_{}", cert.pair.0, cert.pair.1),
                                format!(
                                    "u = ({}, {}), t = {}",
                                    cert.line.direction[0],
                                    cert.line.direction[1],
                                    cert.line.offset
                                ),
                            );
                        }
                    }
                }
                TsVerdict::No { pair } => {
                    out.push("verdict", "TS_no");
                    out.push("witness_pair", format!("({}, {})", pair.0, pair.1));
                    out.negative = *strict;
                }
            }
        }
        Command::CheckLs { file, mode, strict } => {
            let p = load(file)?;
            let g = p.contact_graph(&tol)?;
            out.push("file", file.display());
            out.push("n", p.len());
            let mode = match mode {
                ModeArg::Exact => LsMode::Exact2d,
                ModeArg::Obtuse => LsMode::Obtuse,
            };
            match is_ls(&p, &g, &tol, mode)? {
                LsVerdict::Yes => out.push("verdict", "LS_yes"),
                LsVerdict::NecessaryConditionsHold => {
                    out.push("verdict", "necessary_conditions_hold");
                    out.push(
                        "note",
                        "obtuse mode is a necessary-condition test; a pass is not conclusive",
                    );
                }
                LsVerdict::No(witness) => {
                    out.push("verdict", "LS_no");
                    match witness {
                        LsWitness::StarInseparable { center, pair } => {
                            out.push("witness_center", center);
                            out.push("witness_pair", format!("({}, {})", pair.0, pair.1));
                        }
                        LsWitness::AcuteDirections { center, pair } => {
                            out.push("witness_center", center);
                            out.push("witness_pair", format!("({}, {})", pair.0, pair.1));
                            out.push("witness_kind", "acute_directions");
                        }
                        LsWitness::DegreeExceeded {
                            center,
                            degree,
                            max,
                        } => {
                            out.push("witness_center", center);
                            out.push("witness_kind", format!("degree {degree} > {max}"));
                        }
                    }
                    out.negative = *strict;
                }
            }
        }
        Command::Bound(args) => run_bound(args, &mut out)?,
        Command::Sigma { d, samples, seed } => {
            let est = rogers_sigma(*d, *samples, *seed)?;
            out.push("d", d);
            out.push("samples", samples);
            out.push("seed", seed);
            out.push("sigma", est.value);
            out.push("std_error", est.std_error);
        }
        Command::Construct(kind) => run_construct(kind, &tol, &mut out)?,
        Command::Enumerate {
            n,
            budget_secs,
            budget_forms,
            catalog,
        } => {
            let budget = SearchBudget {
                max_seconds: *budget_secs,
                max_forms: *budget_forms,
            };
            let result = max_contact_lattice(*n, &budget)?;
            out.push("n", n);
            out.push("max_contacts", result.max_edges);
            out.push("formula", planar_max_contacts(*n as u64));
            out.push("witnesses", result.witnesses.len());
            out.push("classes", result.class_counts[*n]);
            out.push("forms_seen", result.forms_seen);
            for (i, witness) in result.witnesses.iter().enumerate() {
                let mut points = String::new();
                for (j, (x, y)) in witness.iter().enumerate() {
                    if j > 0 {
                        points.push(' ');
                    }
                    let _ = write!(points, "{x},{y}");
                }
                out.push(&format!("witness_{i}"), points);
            }
            if let Some(dir) = catalog {
                let dir = catalog_dir(&Some(dir.clone()));
                for witness in &result.witnesses {
                    let config = LatticeConfig::new(witness.iter().copied())
                        .map_err(|e| anyhow!("witness construction: {e}"))?;
                    catalog_store(&dir, &config.to_packing(), &tol)?;
                }
                out.push("catalog", dir.display());
            }
        }
        Command::Classify { file } => {
            let p = load(file)?;
            let c = classify(&p, &tol)?;
            out.push("file", file.display());
            out.push("n", c.n);
            out.push("contacts", c.contacts);
            out.push("label", c.label.as_str());
            out.push("reason", &c.reason);
            match c.evidence {
                Evidence::Polyomino { square_faces } => out.push("square_faces", square_faces),
                Evidence::Pentagon { face } => out.push(
                    "pentagon_face",
                    face.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                Evidence::Pendant { vertex } => out.push("pendant_vertex", vertex),
                Evidence::ExceptionalSeven | Evidence::None => {}
            }
        }
        Command::Render {
            file,
            output,
            separators,
        } => {
            let p = load(file)?;
            let g = p.contact_graph(&tol)?;
            let certs = if *separators {
                match is_ts(&p, &tol)? {
                    TsVerdict::Yes { certificates } => Some(certificates),
                    TsVerdict::No { .. } => None,
                }
            } else {
                None
            };
            let svg = render_svg(&p, &g, &RenderOptions::default(), certs.as_deref())
                .map_err(|e| anyhow!("{e}"))?;
            write_text(output, &svg)
                .with_context(|| format!("cannot write {}", output.display()))?;
            out.push("output", output.display());
            out.push("circles", p.len());
            out.push("segments", g.contact_count());
            if let Some(certs) = &certs {
                out.push("separators", certs.len());
            }
        }
        Command::Catalog(action) => match action {
            CatalogAction::Store { file, dir } => {
                let p = load(file)?;
                let dir = catalog_dir(dir);
                let entry = catalog_store(&dir, &p, &tol)?;
                out.push("catalog", dir.display());
                out.push("hash", &entry.hash);
                out.push("file", &entry.file);
                out.push("n", entry.n);
                out.push("contacts", entry.contacts);
                out.push("label", &entry.label);
                out.push("ts", &entry.ts_verdict);
                out.push("ls", &entry.ls_verdict);
            }
            CatalogAction::Verify { dir, strict } => {
                let dir = catalog_dir(dir);
                let report = catalog_verify(&dir, &tol)?;
                out.push("catalog", dir.display());
                out.push("checked", report.checked);
                out.push("drifted", report.drifted.len());
                for drift in &report.drifted {
                    out.push(
                        &format!("drift_{}", drift.hash),
                        format!("{}: {}", drift.file, drift.details.join("; ")),
                    );
                }
                out.negative = *strict && !report.is_clean();
            }
        },
    }
    Ok(out)
}

fn run_bound(args: &BoundArgs, out: &mut Outcome) -> Result<()> {
    fn report(out: &mut Outcome, r: &BoundReport) {
        out.push("formula", r.formula.as_str());
        out.push("n", r.n);
        out.push("d", r.dimension);
        if let Some(delta) = r.delta {
            out.push("delta", delta);
        }
        out.push("pre_floor", r.pre_floor);
        out.push("value", r.value);
        if let Some(alt) = r.boundary_alternate {
            out.push("boundary_alternate", alt);
            out.push("boundary_note", "pre-floor value within 1e-9 of an integer");
        }
    }
    match args.formula {
        FormulaArg::Harborth => report(out, &planar_bounds(args.n, PlanarKind::Harborth)?),
        FormulaArg::Ls2 => report(out, &planar_bounds(args.n, PlanarKind::Ls)?),
        FormulaArg::Ts3 => report(out, &bounds_3d(args.n, Bounds3dKind::Ts)?),
        FormulaArg::Ls3 => report(out, &bounds_3d(args.n, Bounds3dKind::LsHales)?),
        FormulaArg::General3 => report(out, &bounds_3d(args.n, Bounds3dKind::General)?),
        FormulaArg::Beszsz => {
            let d = args
                .d
                .ok_or_else(|| anyhow!("--d is required for beszsz"))?;
            report(out, &beszsz_ts_bound(args.n, d)?);
        }
        FormulaArg::Lattice => {
            let d = args
                .d
                .ok_or_else(|| anyhow!("--d is required for lattice"))?;
            let (lower, upper) = lattice_bounds(args.n, d)?;
            out.push("formula", "lattice");
            out.push("n", args.n);
            out.push("d", d);
            out.push("lower", lower);
            out.push("upper", upper.value);
        }
        FormulaArg::Main => {
            let d = args.d.ok_or_else(|| anyhow!("--d is required for main"))?;
            let source = args
                .delta_source
                .ok_or_else(|| anyhow!("--delta-source is required for main"))?;
            let est = match source {
                DeltaSourceArg::Hales => {
                    if d != 3 {
                        bail!("the hales density constant applies to d = 3 only");
                    }
                    DensityEstimate::hales()
                }
                DeltaSourceArg::Custom => {
                    let value = args
                        .delta_value
                        .ok_or_else(|| anyhow!("--delta-value is required with custom"))?;
                    DensityEstimate::custom(d, value)?
                }
                DeltaSourceArg::Rogers => {
                    let sigma = rogers_sigma(d, args.samples, args.seed)?;
                    out.push("sigma_std_error", sigma.std_error);
                    out.push("samples", args.samples);
                    out.push("seed", args.seed);
                    sigma.to_density_estimate()?
                }
            };
            out.push(
                "delta_source",
                match source {
                    DeltaSourceArg::Rogers => "rogers",
                    DeltaSourceArg::Hales => "hales",
                    DeltaSourceArg::Custom => "custom",
                },
            );
            report(out, &main_ls_bound(args.n, d, &est)?);
        }
    }
    Ok(())
}

fn run_construct(kind: &ConstructKind, tol: &Tolerance, out: &mut Outcome) -> Result<()> {
    let (packing, name, output) = match kind {
        ConstructKind::BasicPolyomino { n, output } => (
            basic_polyomino(*n)?.to_packing(),
            format!("basic-polyomino-{n}"),
            output,
        ),
        ConstructKind::Grid { d, side, output } => (
            grid_packing(*d, *side)?,
            format!("grid-{d}d-{side}"),
            output,
        ),
        ConstructKind::CrossStar { d, output } => {
            (cross_polytope_star(*d)?, format!("cross-star-{d}d"), output)
        }
        ConstructKind::Pentagon { output } => (
            pentagon_augmented(&basic_polyomino(11)?, (2, 1), tol)?,
            "pentagon-13".to_string(),
            output,
        ),
        ConstructKind::Pendant { n, output } => (
            pendant_augmented(&basic_polyomino(*n)?)?.to_packing(),
            format!("pendant-{n}"),
            output,
        ),
    };
    let g = packing.contact_graph(tol)?;
    write_packing(output, &packing, Some(Metadata::named(&name)))?;
    out.push("output", output.display());
    out.push("kind", &name);
    out.push("n", packing.len());
    out.push("contacts", g.contact_count());
    Ok(())
}
