use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use slk_core::bowtie::ManifoldKind;
use slk_core::curves_mcg::{
    acts_nontrivially, algebraic_intersection, conjugacy_equal, dehn_reduce, geometric_intersection_oracle,
    mcg_apply, mcg_apply_word, Curve, MappingClassWord, Nontriviality, Twist, DEFAULT_CONJUGACY_BUDGET,
    DEFAULT_ORACLE_BUDGET,
};
use slk_core::generate::GeneratorConfig;
use slk_core::io::{self, IoError, RunReport, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "slk", version, about = "Fully augmented links in thickened surfaces")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a diagram file describes a valid, cellular, weakly prime FAL.
    Validate { path: PathBuf },
    /// Replace every twist region of a link diagram by a crossing circle.
    Augment {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Dehn fill crossing circles to obtain twist regions.
    Fill {
        path: PathBuf,
        /// A filling `circle:t`; may be repeated.
        #[arg(long = "circle", value_parser = parse_fill)]
        fills: Vec<(usize, i64)>,
        /// Fill every circle with these magnitudes, signs chosen to alternate.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "fills")]
        alternating: Option<Vec<i64>>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cut the complement into ideal polyhedra and triangulate it.
    Decompose {
        path: PathBuf,
        /// Write the tetrahedron gluing table here.
        #[arg(long)]
        export_gluing: Option<PathBuf>,
    },
    /// Volume bounds from the counts alone.
    Bounds {
        #[arg(short)]
        c: usize,
        #[arg(short)]
        g: u32,
        #[arg(short, default_value_t = 1)]
        l: usize,
        #[arg(short, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Trivial)]
        kind: KindArg,
    },
    /// Build a layered family from a JSON spec and report its invariants.
    Family { path: PathBuf },
    /// Sample a random cellular FAL.
    Generate {
        #[arg(short, long)]
        genus: u32,
        #[arg(short, long)]
        circles: usize,
        #[arg(long, env = "SLK_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        checkerboard: bool,
        #[arg(long, default_value_t = 0.0)]
        half_twists: f64,
        #[arg(long)]
        components: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Curves and mapping classes on the closed genus-g surface.
    Curves {
        #[arg(short, long)]
        genus: u32,
        /// Search budget for the word-level procedures.
        #[arg(long)]
        budget: Option<usize>,
        #[command(subcommand)]
        op: CurveOp,
    },
}

#[derive(Subcommand)]
enum CurveOp {
    /// Algebraic intersection number of two curves.
    Algebraic { x: String, y: String },
    /// Geometric intersection number of two words, by exhaustive search.
    Geometric { x: String, y: String },
    /// Free reduction and Dehn reduction of a word.
    Reduce { word: String },
    /// Whether two words represent the same free homotopy class.
    Conjugate {
        x: String,
        y: String,
        /// Also allow reversing orientation.
        #[arg(long)]
        unoriented: bool,
    },
    /// Apply a product of Dehn twists, given as `curve^exp` factors, to a curve.
    Apply {
        #[arg(long = "twist", value_delimiter = ',', allow_hyphen_values = true)]
        twists: Vec<String>,
        curve: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Trivial,
    MappingTorus,
    Doubled,
}

impl From<KindArg> for ManifoldKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Trivial => ManifoldKind::TrivialMappingTorus,
            KindArg::MappingTorus => ManifoldKind::MappingTorus,
            KindArg::Doubled => ManifoldKind::DoubledThickenedSurface,
        }
    }
}

fn parse_fill(s: &str) -> Result<(usize, i64), String> {
    let (k, t) = s.split_once(':').ok_or("expected circle:t")?;
    Ok((k.parse().map_err(|e| format!("{e}"))?, t.parse().map_err(|e| format!("{e}"))?))
}

fn parse_twist(s: &str, g: u32) -> Result<Twist> {
    let (curve, exp) = match s.split_once('^') {
        Some((c, e)) => (c, e.parse().with_context(|| format!("bad exponent in {s}"))?),
        None => (s, 1),
    };
    Ok(Twist {
        curve: io::parse_curve(curve, g)?,
        exponent: exp,
    })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(report: &RunReport, json: bool) {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

/// Text output for the `curves` commands; the exit status is 0 unless the
/// input is invalid.
fn curves(genus: u32, budget: Option<usize>, op: CurveOp, json: bool) -> Result<()> {
    let word = |s: &str| -> Result<_> {
        match io::parse_curve(s, genus)? {
            Curve::Word(w) => Ok(w),
            Curve::Homology(_) => bail!("{s}: this operation needs a word, not a homology class"),
        }
    };
    let value = match op {
        CurveOp::Algebraic { x, y } => {
            let i = algebraic_intersection(&io::parse_curve(&x, genus)?.class(), &io::parse_curve(&y, genus)?.class())?;
            serde_json::json!({ "algebraic_intersection": i })
        }
        CurveOp::Geometric { x, y } => {
            let budget = budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
            let i = geometric_intersection_oracle(&word(&x)?, &word(&y)?, genus, budget)?;
            serde_json::json!({ "geometric_intersection": i })
        }
        CurveOp::Reduce { word: w } => {
            let w = word(&w)?;
            let reduced = dehn_reduce(&w, genus)?;
            serde_json::json!({ "reduced": reduced.to_string(), "length": reduced.len() })
        }
        CurveOp::Conjugate { x, y, unoriented } => {
            let budget = budget.unwrap_or(DEFAULT_CONJUGACY_BUDGET);
            let same = conjugacy_equal(&word(&x)?, &word(&y)?, genus, unoriented, budget)?;
            serde_json::json!({ "freely_homotopic": same })
        }
        CurveOp::Apply { twists, curve } => {
            let phi = MappingClassWord {
                genus,
                letters: twists.iter().map(|t| parse_twist(t, genus)).collect::<Result<_>>()?,
            };
            let target = io::parse_curve(&curve, genus)?;
            let image_class = mcg_apply(&phi, &target.class())?;
            let moved = acts_nontrivially(&phi, &target.class())? == Nontriviality::CertifiedNontrivial;
            let image_word = match &target {
                Curve::Word(w) => mcg_apply_word(&phi, w).ok().map(|w| w.to_string()),
                Curve::Homology(_) => None,
            };
            serde_json::json!({
                "homology": image_class.coords,
                "word": image_word,
                "homology_moved": moved,
            })
        }
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else if let Some(map) = value.as_object() {
        for (k, v) in map {
            println!("{k}: {v}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    let json = cli.json;
    let report = match cli.command {
        Command::Validate { path } => io::cmd_validate(&path)?,
        Command::Augment { path, out } => {
            let (report, d) = io::cmd_augment(&path)?;
            let text = io::diagram_to_string(&d);
            if out.is_none() {
                print!("{text}");
                return Ok(report.exit_status);
            }
            write_or_print(out.as_deref(), &text)?;
            report
        }
        Command::Fill {
            path,
            fills,
            alternating,
            out,
        } => {
            let (report, d) = io::cmd_fill(&path, &fills, alternating.as_deref())?;
            let text = io::diagram_to_string(&d);
            if out.is_none() {
                print!("{text}");
                return Ok(report.exit_status);
            }
            write_or_print(out.as_deref(), &text)?;
            report
        }
        Command::Decompose { path, export_gluing } => {
            let (report, table) = io::cmd_decompose(&path)?;
            if let (Some(p), Some(t)) = (export_gluing, table) {
                write_or_print(Some(&p), &t)?;
            }
            report
        }
        Command::Bounds { c, g, l, m, kind } => io::cmd_bounds(c, g, l, m, kind.into())?,
        Command::Family { path } => io::cmd_family(&path)?,
        Command::Generate {
            genus,
            circles,
            seed,
            checkerboard,
            half_twists,
            components,
            out,
        } => {
            let mut cfg = GeneratorConfig::new(genus, circles)
                .checkerboard(checkerboard)
                .half_twists(half_twists);
            cfg.components = components;
            let text = io::cmd_generate(&cfg, seed)?;
            write_or_print(out.as_deref(), &text)?;
            return Ok(0);
        }
        Command::Curves { genus, budget, op } => {
            curves(genus, budget, op, json)?;
            return Ok(0);
        }
    };
    emit(&report, json);
    Ok(report.exit_status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(IoError::Parse { line, column, .. }) = e.downcast_ref::<IoError>() {
                eprintln!("at line {line}, column {column}");
            }
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
