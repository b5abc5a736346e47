//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{analyze, graph_side, structure, AnalysisError, Report};
use crate::bracket::{bracket, extract_coefficients, BracketOptions};
use crate::corpus;
use crate::diagram::{inflate_twists, parse_diagram, torus_grid, SurfaceDiagram};
use crate::stategraph::predict_coefficients;
use crate::states::DEFAULT_MAX_CROSSINGS;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "surface-bracket",
    version,
    about = "Homological Kauffman brackets of surface link diagrams"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Diagram file, or corpus directory for `batch`.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file, or report directory for `batch` and `generate corpus`.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the state sum; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Largest crossing count whose states are enumerated.
    #[arg(long, global = true, env = "SURFACE_BRACKET_MAX_CROSSINGS", default_value_t = DEFAULT_MAX_CROSSINGS)]
    pub max_crossings: usize,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural, alternation, reducedness and checkerboard checks.
    Validate,
    /// The bracket polynomial.
    Bracket,
    /// Coefficients from the state sum and from the state graphs.
    Coeffs,
    /// State graph censuses.
    Graphs,
    /// Twist region decomposition.
    Twist,
    /// Full verification report; exits 1 if an applicable check fails.
    Verify,
    /// Writes generated diagrams.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Runs `verify` on every `.json` file of a directory.
    Batch,
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    /// p horizontal and q vertical curves on the torus.
    Grid {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Replace every crossing by a twist region of this length.
        #[arg(long, default_value_t = 1)]
        inflate: usize,
    },
    /// A named built-in diagram.
    Named { name: String },
    /// Inflates each crossing of a named diagram by a random length in 1..=max_t.
    Random {
        base: String,
        #[arg(long, default_value_t = 3)]
        max_t: usize,
    },
    /// Every built-in diagram, one file each, into `--output`.
    Corpus,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }

    fn analysis(name: &str, e: AnalysisError) -> Self {
        Failure {
            code: e.exit_code(),
            message: format!("{name}: {e}"),
        }
    }
}

/// Parses `args` and runs the command. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    match execute(&cfg) {
        Ok((code, text)) => {
            if let Err(e) = emit(&cfg.global, &text, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INVALID_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(g: &GlobalArgs, text: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match &g.output {
        Some(path) if !path.is_dir() => fs::write(path, text),
        _ => out.write_all(text.as_bytes()),
    }
}

fn options(g: &GlobalArgs) -> BracketOptions {
    BracketOptions {
        workers: g.workers,
        max_crossings: g.max_crossings,
    }
}

fn load(path: Option<&Path>) -> Result<SurfaceDiagram, Failure> {
    let path = path.ok_or_else(|| Failure::invalid("--input is required"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cfg: &CliConfig) -> Result<(i32, String), Failure> {
    let g = &cfg.global;
    if let Command::Generate { what } = &cfg.command {
        return generate(what, g);
    }
    if let Command::Batch = cfg.command {
        return batch(g);
    }
    let d = load(g.input.as_deref())?;
    let name = d.name().to_string();
    let fail = |e: AnalysisError| Failure::analysis(&name, e);
    match cfg.command {
        Command::Validate => {
            let s = structure(&d).summary;
            let mut problems = Vec::new();
            if !s.alternating {
                problems.push("not alternating");
            }
            if !s.reduced {
                problems.push("not reduced");
            }
            if !s.checkerboard_colorable {
                problems.push("not checkerboard colorable");
            }
            let text = match g.format {
                Format::Json => to_json(&json!({ "diagram": s, "problems": problems })),
                Format::Text => format!(
                    "{}: c={} genus={} faces={} alternating={} reduced={} checkerboard={} adequate={}\n",
                    s.name,
                    s.crossings,
                    s.genus,
                    s.faces,
                    s.alternating,
                    s.reduced,
                    s.checkerboard_colorable,
                    s.homologically_adequate
                ),
            };
            if problems.is_empty() {
                Ok((EXIT_OK, text))
            } else {
                Err(Failure::invalid(format!(
                    "{name}: {}\n{text}",
                    problems.join(", ")
                )))
            }
        }
        Command::Bracket => {
            let s = structure(&d);
            let r = bracket(&d, &s.model, options(g)).map_err(|e| fail(e.into()))?;
            let text = match g.format {
                Format::Json => {
                    to_json(&json!({ "name": name, "genus": s.summary.genus, "bracket": r }))
                }
                Format::Text => format!("{}\n", r.polynomial),
            };
            Ok((EXIT_OK, text))
        }
        Command::Coeffs => {
            let s = structure(&d);
            let r = bracket(&d, &s.model, options(g)).map_err(|e| fail(e.into()))?;
            let from_bracket = extract_coefficients(&r).map_err(|e| fail(e.into()))?;
            let (c, _) = graph_side(&d, &s).map_err(fail)?;
            let from_graph = predict_coefficients(&c.a, &c.b);
            let agree = from_bracket.agrees_with(&from_graph);
            let text = match g.format {
                Format::Json => to_json(&json!({
                    "name": name,
                    "bracket": from_bracket,
                    "graph": from_graph,
                    "agree": agree,
                })),
                Format::Text => format!(
                    "state sum: {}\ngraph:     {}\nagree: {agree}\n",
                    coeff_line(&from_bracket),
                    coeff_line(&from_graph)
                ),
            };
            Ok((if agree { EXIT_OK } else { EXIT_CHECK_FAILED }, text))
        }
        Command::Graphs => {
            let s = structure(&d);
            let (c, _) = graph_side(&d, &s).map_err(fail)?;
            let text = match g.format {
                Format::Json => to_json(&json!({ "name": name, "censuses": c })),
                Format::Text => {
                    let mut t = String::new();
                    for census in [&c.a, &c.b] {
                        let _ = writeln!(
                            t,
                            "G_{}: v={} e*={} e~={} pitchfork*={} tau*={}",
                            census.kind,
                            census.v,
                            census.e_star,
                            census.e_tilde,
                            census.pitchfork_star,
                            census.tau_star
                        );
                    }
                    let ls = &c.long_short;
                    let _ = writeln!(
                        t,
                        "v_bigon={} v_ngon={} e_long={} e_short={}",
                        ls.v_bigon, ls.v_ngon, ls.e_long_classes, ls.e_short_classes
                    );
                    t
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Twist => {
            let s = structure(&d);
            let t = crate::twist::twist_regions(&d, &s.faces).map_err(|e| fail(e.into()))?;
            let text = match g.format {
                Format::Json => to_json(&json!({ "name": name, "twist": t })),
                Format::Text => {
                    let mut out = format!("tw={} min_region_size={}\n", t.tw, t.min_region_size);
                    for r in &t.regions {
                        let _ = writeln!(out, "{:?} {:?}", r.shape, r.crossings);
                    }
                    out
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Verify => {
            let r = analyze(&d, options(g)).map_err(fail)?;
            let code = if r.verification.any_failed() {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            let text = match g.format {
                Format::Json => format!("{}\n", r.to_json()),
                Format::Text => verify_text(&r),
            };
            Ok((code, text))
        }
        Command::Generate { .. } | Command::Batch => unreachable!("handled above"),
    }
}

fn coeff_line(c: &crate::bracket::CoefficientReport) -> String {
    format!(
        "alpha1={:?} beta1={:?} alpha2=({}, {}) beta2=({}, {}) star={}",
        c.alpha1_series, c.beta1_series, c.alpha2_0, c.alpha2_2, c.beta2_0, c.beta2_2, c.star
    )
}

fn verify_text(r: &Report) -> String {
    let v = &r.verification;
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{}: c={} genus={} tw={}",
        r.diagram.name, r.diagram.crossings, r.diagram.genus, r.twist.tw
    );
    let _ = writeln!(
        t,
        "star: state sum {} graph {}",
        v.star_bracket, v.star_graph
    );
    let _ = writeln!(t, "coefficients agree: {}", v.coefficients_agree);
    let _ = writeln!(
        t,
        "twist bounds: {:?} ({} <= {} <= {})",
        v.twist_bounds.outcome, v.twist_bounds.lower, v.twist_bounds.star, v.twist_bounds.upper
    );
    let _ = writeln!(
        t,
        "transverse bound: {:?} ({} <= {} <= 0)",
        v.transverse_bound.outcome, v.transverse_bound.lower, v.transverse_bound.value
    );
    let _ = writeln!(
        t,
        "edge bound: {:?} ({} <= {})",
        v.edge_bound.outcome, v.edge_bound.lhs, v.edge_bound.rhs
    );
    let _ = writeln!(
        t,
        "short edge bound: {:?} ({} >= {})",
        v.short_edge_bound.outcome, v.short_edge_bound.e_short_classes, v.short_edge_bound.lower
    );
    let _ = writeln!(t, "counting identities: {:?}", v.identities.outcome);
    if let Some(vol) = &v.volume {
        let _ = writeln!(
            t,
            "volume: [{:.12}, {:.12}) ({})",
            vol.lower, vol.upper, vol.disclaimer
        );
    }
    t
}

fn generate(what: &Generate, g: &GlobalArgs) -> Result<(i32, String), Failure> {
    let d = match what {
        Generate::Grid { p, q, inflate } => {
            if *p == 0 || *q == 0 {
                return Err(Failure::invalid("grid dimensions must be positive"));
            }
            if *inflate == 0 {
                return Err(Failure::invalid("--inflate must be at least 1"));
            }
            let base = torus_grid(*p, *q).with_name(format!("torus_grid_{p}x{q}"));
            if *inflate == 1 {
                base
            } else {
                corpus::inflate_all(&base, *inflate)
            }
        }
        Generate::Named { name } => corpus::by_name(name)
            .ok_or_else(|| Failure::invalid(format!("unknown diagram `{name}`")))?,
        Generate::Random { base, max_t } => {
            let d = corpus::by_name(base)
                .ok_or_else(|| Failure::invalid(format!("unknown diagram `{base}`")))?;
            if *max_t == 0 {
                return Err(Failure::invalid("--max-t must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let m: BTreeMap<usize, usize> = (0..d.crossing_count())
                .map(|x| (x, rng.gen_range(1..=*max_t)))
                .collect();
            inflate_twists(&d, &m)
                .map_err(|e| Failure::invalid(e.to_string()))?
                .with_name(format!("{base}+random{}", g.seed))
        }
        Generate::Corpus => {
            let dir = g
                .output
                .as_ref()
                .ok_or_else(|| Failure::invalid("--output directory is required"))?;
            fs::create_dir_all(dir)
                .map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?;
            let mut listing = String::new();
            for d in corpus::alternating_corpus()
                .into_iter()
                .chain(corpus::negative_fixtures())
            {
                let path = dir.join(format!("{}.json", file_stem(d.name())));
                fs::write(&path, d.to_json() + "\n")
                    .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
                let _ = writeln!(listing, "{}", path.display());
            }
            return Ok((EXIT_OK, listing));
        }
    };
    Ok((EXIT_OK, d.to_json() + "\n"))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '-'
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct BatchRow {
    file: String,
    name: String,
    exit_code: i32,
    star: Option<i64>,
    failed_checks: bool,
    error: Option<String>,
}

fn batch(g: &GlobalArgs) -> Result<(i32, String), Failure> {
    let dir = g
        .input
        .as_ref()
        .ok_or_else(|| Failure::invalid("--input directory is required"))?;
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if let Some(out) = &g.output {
        fs::create_dir_all(out).map_err(|e| Failure::invalid(format!("{}: {e}", out.display())))?;
    }
    let mut rows = Vec::new();
    for path in &files {
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        let row = match load(Some(path)) {
            Err(f) => BatchRow {
                file,
                name: String::new(),
                exit_code: f.code,
                star: None,
                failed_checks: false,
                error: Some(f.message),
            },
            Ok(d) => match analyze(&d, options(g)) {
                Err(e) => BatchRow {
                    file,
                    name: d.name().to_string(),
                    exit_code: e.exit_code(),
                    star: None,
                    failed_checks: false,
                    error: Some(e.to_string()),
                },
                Ok(r) => {
                    if let Some(out) = &g.output {
                        let target = out.join(format!(
                            "{}.report.json",
                            path.file_stem().unwrap().to_string_lossy()
                        ));
                        fs::write(&target, r.to_json() + "\n")
                            .map_err(|e| Failure::invalid(format!("{}: {e}", target.display())))?;
                    }
                    let failed = r.verification.any_failed();
                    BatchRow {
                        file,
                        name: r.diagram.name.clone(),
                        exit_code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
                        star: Some(r.verification.star_bracket),
                        failed_checks: failed,
                        error: None,
                    }
                }
            },
        };
        rows.push(row);
    }
    let code = rows.iter().map(|r| r.exit_code).max().unwrap_or(EXIT_OK);
    let ok = rows.iter().filter(|r| r.exit_code == EXIT_OK).count();
    let text = match g.format {
        Format::Json => to_json(&json!({
            "files": rows.len(),
            "ok": ok,
            "failed_checks": rows.iter().filter(|r| r.exit_code == EXIT_CHECK_FAILED).count(),
            "errors": rows.iter().filter(|r| r.error.is_some()).count(),
            "rows": rows,
        })),
        Format::Text => {
            let mut t = format!(
                "{:<32} {:<28} {:>4} {:>6}  note\n",
                "file", "name", "exit", "star"
            );
            for r in &rows {
                let star = r.star.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
                let note = r.error.clone().unwrap_or_else(|| {
                    if r.failed_checks {
                        "check failed".into()
                    } else {
                        String::new()
                    }
                });
                let _ = writeln!(
                    t,
                    "{:<32} {:<28} {:>4} {:>6}  {}",
                    r.file, r.name, r.exit_code, star, note
                );
            }
            let _ = writeln!(t, "{} files, {} ok", rows.len(), ok);
            t
        }
    };
    Ok((code, text))
}
