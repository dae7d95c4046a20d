//! `radocurve`: command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch, 2 on
//! usage or input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use radocurve::embedder::{embed_finite_graph, recipe_curve_graph, SurfaceRecipe};
use radocurve::layout::{crossings, layout};
use radocurve::multicurve::{bracket, bracket_intersection_bit};
use radocurve::rado::{check_extension_samples, er_random_graph, extension_witness, rado_adjacent};
use radocurve::svg::{render_svg, RenderOptions};
use radocurve::verify::{
    compare_levels, verify_embedder_exhaustive, verify_main_theorem, verify_minimality, Level,
};
use radocurve::{Error, FiniteGraph, Polarity};

#[derive(Parser)]
#[command(
    name = "radocurve",
    version,
    about = "The Rado graph in the curve graph of the infinite-genus surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolarityArg {
    Direct,
    Complement,
}

impl From<PolarityArg> for Polarity {
    fn from(p: PolarityArg) -> Self {
        match p {
            PolarityArg::Direct => Polarity::Direct,
            PolarityArg::Complement => Polarity::Complement,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Bracket,
    Layout,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Bracket => Level::Bracket,
            LevelArg::Layout => Level::Layout,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Disjointness of the chosen level against the complement Rado model.
    Theorem,
    /// Multicurve pairing against routed crossings, pair for pair.
    Levels,
    /// |symplectic pairing| = crossings = multicurve pairing.
    Minimality,
    /// Every labeled graph on at most --max vertices through the embedder.
    Embedder,
}

#[derive(Subcommand)]
enum Command {
    /// Adjacency of x and y in Rado's bit model.
    Adj {
        x: BigUint,
        y: BigUint,
        #[arg(long, value_enum, default_value = "direct")]
        polarity: PolarityArg,
    },
    /// A vertex adjacent to every --nbrs vertex and to no --non vertex.
    Witness {
        #[arg(long, value_delimiter = ',')]
        nbrs: Vec<BigUint>,
        #[arg(long, value_delimiter = ',')]
        non: Vec<BigUint>,
        #[arg(long, value_enum, default_value = "direct")]
        polarity: PolarityArg,
    },
    /// The multicurve [x] in additive notation.
    Bracket { x: BigUint },
    /// Intersection number of [x] and [y] (or c(x) and c(y)); needs x < y.
    Intersect {
        x: BigUint,
        y: BigUint,
        #[arg(long, value_enum, default_value = "bracket")]
        level: LevelArg,
    },
    /// Segments of the routed curve c(x).
    Layout { x: BigUint },
    /// Draw c(x), c(y), ... as SVG.
    ///
    /// Hole half-size 8, nesting gap 6, front strokes 1.5 wide, back strokes
    /// 1 wide and dashed, crossing marks of radius 3, eight-colour palette
    /// cycled by label.
    Render {
        #[arg(required = true)]
        labels: Vec<BigUint>,
        #[arg(long)]
        out: PathBuf,
        /// Omit the tubes and holes of the surface.
        #[arg(long)]
        no_surface: bool,
        /// Omit the crossing marks.
        #[arg(long)]
        no_marks: bool,
    },
    /// Sweep all pairs x < y <= --max.
    Verify {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "bracket")]
        level: LevelArg,
        #[arg(long, value_enum, default_value = "theorem")]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print the elapsed time on standard error.
        #[arg(long)]
        timing: bool,
    },
    /// Embed a graph file into the curve graph of a closed surface.
    Embed {
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the curve graph declared by a recipe, in graph file format.
    CurveGraph { recipe: PathBuf },
    /// Probe the extension property on an Erdős–Rényi sample.
    Probe {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "RADOCURVE_SEED", default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Ok,
    Mismatch,
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Adj { x, y, polarity } => {
            println!("{}", rado_adjacent(&x, &y, polarity.into())?);
        }
        Command::Witness {
            nbrs,
            non,
            polarity,
        } => {
            let nbrs: BTreeSet<BigUint> = nbrs.into_iter().collect();
            let non: BTreeSet<BigUint> = non.into_iter().collect();
            println!("{}", extension_witness(&nbrs, &non, polarity.into())?);
        }
        Command::Bracket { x } => println!("{}", bracket(&x)),
        Command::Intersect { x, y, level } => {
            let i = match level {
                LevelArg::Bracket => bracket_intersection_bit(&x, &y)?,
                LevelArg::Layout => {
                    if x >= y {
                        return Err(Error::NotIncreasing { x, y }.into());
                    }
                    crossings(&layout(&x), &layout(&y))?
                }
            };
            println!("{i}");
        }
        Command::Layout { x } => {
            let path = layout(&x);
            println!(
                "c({x}): {}, row {}, depth {}",
                bracket(&x),
                path.top_row(),
                path.depth()
            );
            for s in path.segments() {
                println!("{s}");
            }
        }
        Command::Render {
            labels,
            out,
            no_surface,
            no_marks,
        } => {
            let paths: Vec<_> = labels.iter().map(layout).collect();
            let options = RenderOptions {
                show_surface: !no_surface,
                mark_crossings: !no_marks,
            };
            let r = render_svg(&paths, options)?;
            fs::write(&out, &r.svg).with_context(|| format!("writing {}", out.display()))?;
            println!("{} curves, {} crossings", paths.len(), r.marks.len());
        }
        Command::Verify {
            max,
            level,
            suite,
            jobs,
            json,
            timing,
        } => {
            let (summary, ok, text, elapsed) = match suite {
                Suite::Embedder => {
                    let r = verify_embedder_exhaustive(usize::try_from(max)?)?;
                    (
                        r.summary(),
                        r.is_ok(),
                        serde_json::to_string_pretty(&r)?,
                        r.elapsed,
                    )
                }
                _ => {
                    let r = match suite {
                        Suite::Theorem => verify_main_theorem(max, level.into(), jobs)?,
                        Suite::Levels => compare_levels(max, jobs)?,
                        _ => verify_minimality(max, jobs)?,
                    };
                    (r.summary(), r.is_ok(), r.to_json(), r.elapsed)
                }
            };
            println!("{summary}");
            if let Some(path) = json {
                fs::write(&path, text.trim_end().to_string() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if timing {
                eprintln!("elapsed {:.3}s", elapsed.as_secs_f64());
            }
            if !ok {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Embed { graph, out } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let g: FiniteGraph = text.parse()?;
            let recipe = embed_finite_graph(&g)?;
            fs::write(&out, recipe.to_json())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{} curves, genus {}, {} handles",
                recipe.n,
                recipe.genus,
                recipe.handles.len()
            );
        }
        Command::CurveGraph { recipe } => {
            let text = fs::read_to_string(&recipe)
                .with_context(|| format!("reading {}", recipe.display()))?;
            let g = recipe_curve_graph(&SurfaceRecipe::from_json(&text)?)?;
            print!("{g}");
        }
        Command::Probe { n, t, trials, seed } => {
            if n == 0 {
                bail!("--n must be positive");
            }
            let g = er_random_graph(n, seed);
            let r = check_extension_samples(&g, t, trials, seed)?;
            println!(
                "{}/{} splits of size {t} extended in G({n}, 1/2) seed {seed}: {}",
                r.successes,
                r.trials,
                if r.successes == r.trials {
                    "OK"
                } else {
                    "FAILED"
                }
            );
            if let Some(f) = r.first_failure {
                println!("first failure: U = {:?}, W = {:?}", f.nbrs, f.nonnbrs);
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
