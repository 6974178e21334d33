//! Command-line front end: Conway notation, chair diagrams, tree pairs, the
//! skein maps, invariants and the reverse pipeline, with JSON in and out.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch, 2 on a usage
//! error, 3 when the input is rejected by the library.

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use thompson_knots::constructions::{
    build_concat_diagram, build_product_diagram, expand, ChairDiagram,
};
use thompson_knots::conway_notation::{parse_conway, print_conway, rational_fraction, ConwayExpr};
use thompson_knots::invariants::{goeritz_determinant, jones_set, kauffman_bracket, LaurentPoly};
use thompson_knots::jones_map::{psi, psi_prime};
use thompson_knots::planar_diagram::{build_conway, PlanarDiagram};
use thompson_knots::reverse_pipeline::{
    extract_signed_graph, linearize, normalize, reverse, SignedMidlineGraph,
};
use thompson_knots::thompson_core::ThompsonElement;

#[derive(Parser)]
#[command(
    name = "thompson-knots",
    version,
    about = "Tree pairs of Thompson's group F and the links they encode"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Out {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Limit {
    /// Refuse invariant computations on diagrams with more crossings.
    #[arg(long, default_value_t = 28)]
    max_crossings: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse Conway notation and print its canonical form and fraction.
    Parse {
        expr: String,
        #[command(flatten)]
        out: Out,
    },
    /// Build the tree pair of a chair-diagram family.
    Build {
        family: FamilyArg,
        #[arg(required = true, allow_negative_numbers = true)]
        xs: Vec<i64>,
        /// Emit the chair diagram instead of its expanded tree pair.
        #[arg(long)]
        chairs: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Expand a chair diagram (JSON) into a tree pair.
    Expand {
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Apply a skein map: `psi` to a tree pair, `psi-prime` to a chair diagram.
    Psi {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Psi)]
        variant: Variant,
        /// Emit Gauss code text instead of PD JSON.
        #[arg(long)]
        gauss: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Invariants of a closed diagram (PD JSON).  With no selector, all.
    Invariant {
        input: PathBuf,
        #[arg(long)]
        bracket: bool,
        #[arg(long)]
        jones: bool,
        #[arg(long)]
        det: bool,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// The closed diagram of a Conway expression.
    Closure {
        expr: String,
        /// Emit Gauss code text instead of PD JSON.
        #[arg(long)]
        gauss: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Recover a tree pair from a connected closed diagram (PD JSON).
    Reverse {
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// The individual stages of the reverse pipeline.
    Graph {
        #[command(subcommand)]
        stage: GraphStage,
    },
    /// Draw a tree pair or a chair diagram as SVG.
    Render {
        #[arg(long = "svg", value_enum)]
        kind: RenderKind,
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Check a theorem instance and print a report.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand)]
enum GraphStage {
    /// Signed graph on the unshaded regions of a diagram (PD JSON).
    Extract {
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Lay the signed graph of a diagram (PD JSON) out along a midline.
    Linearize {
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Rewrite a midline graph (JSON) into Thompson form.
    Normalize {
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Check {
    /// The closure of `T(x₁ … xₙ)` is the rational link `[x₁ … xₙ]`.
    Product {
        #[arg(required = true, allow_negative_numbers = true)]
        xs: Vec<i64>,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// The closure of `U(x₁ … xₙ)` is the link `[x₁, …, xₙ]`.
    Concat {
        #[arg(required = true, allow_negative_numbers = true)]
        xs: Vec<i64>,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// ψ after expanding a chair diagram agrees with ψ′.  Without entries, a
    /// tuple is sampled from `--seed`.
    Commute {
        family: FamilyArg,
        #[arg(allow_negative_numbers = true)]
        xs: Vec<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Product,
    Concat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Psi,
    PsiPrime,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    TreePair,
    Chairs,
}

/// A finished command: what to print, and whether a check failed.
struct Outcome {
    text: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            mismatch: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let (outcome, out) = match command {
        Command::Parse { expr, out } => (Outcome::ok(parse(&expr)?), out),
        Command::Build {
            family,
            xs,
            chairs,
            out,
        } => {
            let c = chair_diagram(family, &xs)?;
            let text = if chairs {
                to_json(&c)?
            } else {
                to_json(&expand(&c))?
            };
            (Outcome::ok(text), out)
        }
        Command::Expand { input, out } => {
            let c: ChairDiagram = read_json(&input)?;
            (Outcome::ok(to_json(&expand(&c))?), out)
        }
        Command::Psi {
            input,
            variant,
            gauss,
            out,
        } => {
            let d = match variant {
                Variant::Psi => psi(&read_json::<ThompsonElement>(&input)?),
                Variant::PsiPrime => psi_prime(&read_json::<ChairDiagram>(&input)?),
            };
            (Outcome::ok(diagram_text(&d, gauss)?), out)
        }
        Command::Invariant {
            input,
            bracket,
            jones,
            det,
            limit,
            out,
        } => {
            let d: PlanarDiagram = read_json(&input)?;
            let all = !(bracket || jones || det);
            (
                Outcome::ok(invariants(
                    &d,
                    all || bracket,
                    all || jones,
                    all || det,
                    &limit,
                )?),
                out,
            )
        }
        Command::Closure { expr, gauss, out } => {
            let d = build_conway(&parse_conway(&expr)?).into_closed();
            (Outcome::ok(diagram_text(&d, gauss)?), out)
        }
        Command::Reverse { input, out } => {
            let d: PlanarDiagram = read_json(&input)?;
            (Outcome::ok(to_json(&reverse(&d)?)?), out)
        }
        Command::Graph { stage } => match stage {
            GraphStage::Extract { input, out } => {
                let g = extract_signed_graph(&read_json(&input)?)?;
                let edges: Vec<_> = g
                    .edges
                    .iter()
                    .map(|e| json!([e.u, e.v, if e.sign > 0 { "+" } else { "-" }]))
                    .collect();
                (
                    Outcome::ok(to_json(&json!({ "vertices": g.vertices, "edges": edges }))?),
                    out,
                )
            }
            GraphStage::Linearize { input, out } => {
                let g = linearize(&extract_signed_graph(&read_json(&input)?)?)?;
                (Outcome::ok(to_json(&g)?), out)
            }
            GraphStage::Normalize { input, out } => {
                let g: SignedMidlineGraph = read_json(&input)?;
                (Outcome::ok(to_json(&normalize(&g))?), out)
            }
        },
        Command::Render { kind, input, out } => {
            let svg = match kind {
                RenderKind::TreePair => render::tree_pair(&read_json(&input)?),
                RenderKind::Chairs => render::chairs(&read_json(&input)?),
            };
            (Outcome::ok(svg), out)
        }
        Command::Verify { check } => match check {
            Check::Product { xs, limit, out } => {
                (verify_family(FamilyArg::Product, &xs, &limit)?, out)
            }
            Check::Concat { xs, limit, out } => {
                (verify_family(FamilyArg::Concat, &xs, &limit)?, out)
            }
            Check::Commute {
                family,
                xs,
                seed,
                limit,
                out,
            } => {
                let xs = if xs.is_empty() {
                    let Some(seed) = seed else {
                        bail!("give the entries of the tuple, or --seed to sample one");
                    };
                    sample_tuple(family, seed)
                } else {
                    xs
                };
                (verify_commute(family, &xs, &limit)?, out)
            }
        },
    };
    write_output(out.out.as_deref(), &outcome.text)?;
    Ok(if outcome.mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_input(path)?).with_context(|| format!("decoding {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn diagram_text(d: &PlanarDiagram, gauss: bool) -> Result<String> {
    if gauss {
        Ok(d.gauss_code() + "\n")
    } else {
        to_json(d)
    }
}

fn chair_diagram(family: FamilyArg, xs: &[i64]) -> Result<ChairDiagram> {
    Ok(match family {
        FamilyArg::Product => build_product_diagram(xs)?,
        FamilyArg::Concat => build_concat_diagram(xs)?,
    })
}

fn parse(expr: &str) -> Result<String> {
    let e = parse_conway(expr)?;
    let inner = match &e {
        ConwayExpr::Closure(inner) => inner.as_ref(),
        other => other,
    };
    let fraction = rational_fraction(inner).ok().map(|f| f.to_string());
    to_json(&json!({ "canonical": print_conway(&e), "fraction": fraction, "ast": e }))
}

fn check_size(d: &PlanarDiagram, limit: &Limit) -> Result<()> {
    let n = d.crossing_count();
    if n > limit.max_crossings {
        bail!(
            "the diagram has {n} crossings, above --max-crossings {}",
            limit.max_crossings
        );
    }
    Ok(())
}

fn invariants(
    d: &PlanarDiagram,
    bracket: bool,
    jones: bool,
    det: bool,
    limit: &Limit,
) -> Result<String> {
    check_size(d, limit)?;
    let mut report = serde_json::Map::new();
    report.insert("crossings".into(), json!(d.crossing_count()));
    report.insert("components".into(), json!(d.components()));
    if bracket {
        report.insert(
            "bracket".into(),
            serde_json::to_value(kauffman_bracket(d)?)?,
        );
    }
    if jones {
        report.insert("jones".into(), serde_json::to_value(jones_set(d)?)?);
    }
    if det {
        report.insert("determinant".into(), json!(goeritz_determinant(d)?));
    }
    to_json(&report)
}

/// Small links recognised by name in `verify` reports, up to mirror image.
const NAMED: &[(&str, &str)] = &[
    ("unknot", "[1]"),
    ("Hopf link", "[2]"),
    ("trefoil", "[3]"),
    ("figure-eight", "[2 2]"),
    ("(2,4) torus link", "[4]"),
    ("cinquefoil", "[5]"),
    ("three-twist knot", "[3 2]"),
];

fn link_class(jones: &[LaurentPoly]) -> Result<Option<&'static str>> {
    let mirrored = {
        let mut m: Vec<LaurentPoly> = jones.iter().map(LaurentPoly::invert_variable).collect();
        m.sort();
        m
    };
    for (name, text) in NAMED {
        let v = jones_set(&build_conway(&parse_conway(text)?).into_closed())?;
        if v == jones || v == mirrored {
            return Ok(Some(name));
        }
    }
    Ok(None)
}

fn jones_line(equal: bool, jones: &[LaurentPoly]) -> Result<String> {
    if !equal {
        return Ok("jones differ".into());
    }
    Ok(match link_class(jones)? {
        Some(name) => format!("jones equal: {name} class"),
        None => format!(
            "jones equal: {}",
            jones
                .iter()
                .map(LaurentPoly::to_string)
                .collect::<Vec<_>>()
                .join(" | ")
        ),
    })
}

fn spaced(xs: &[i64], sep: &str) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

fn verify_family(family: FamilyArg, xs: &[i64], limit: &Limit) -> Result<Outcome> {
    let c = chair_diagram(family, xs)?;
    let (name, expr) = match family {
        FamilyArg::Product => ("product", format!("[{}]", spaced(xs, " "))),
        FamilyArg::Concat => ("concat", format!("[{}]", spaced(xs, ","))),
    };
    let image = psi_prime(&c);
    let target = build_conway(&parse_conway(&expr)?).into_closed();
    check_size(&image, limit)?;
    check_size(&target, limit)?;
    let (a, b) = (jones_set(&image)?, jones_set(&target)?);
    let mut text = format!("{name} {}\n", spaced(xs, " "));
    text += &format!("psi' crossings: {}\n", image.crossing_count());
    text += &format!("{expr} crossings: {}\n", target.crossing_count());
    text += &jones_line(a == b, &a)?;
    text.push('\n');
    Ok(Outcome {
        text,
        mismatch: a != b,
    })
}

fn verify_commute(family: FamilyArg, xs: &[i64], limit: &Limit) -> Result<Outcome> {
    let c = chair_diagram(family, xs)?;
    let via_trees = psi(&expand(&c));
    let direct = psi_prime(&c);
    check_size(&via_trees, limit)?;
    check_size(&direct, limit)?;
    let (a, b) = (jones_set(&via_trees)?, jones_set(&direct)?);
    let name = match family {
        FamilyArg::Product => "product",
        FamilyArg::Concat => "concat",
    };
    let mut text = format!("commute {name} {}\n", spaced(xs, " "));
    text += &format!("psi(expand) crossings: {}\n", via_trees.crossing_count());
    text += &format!("psi' crossings: {}\n", direct.crossing_count());
    text += &jones_line(a == b, &a)?;
    text.push('\n');
    Ok(Outcome {
        text,
        mismatch: a != b,
    })
}

/// A tuple of length at most 4, entries 1..=4 (2..=4 for comma lists).
fn sample_tuple(family: FamilyArg, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = match family {
        FamilyArg::Product => 1,
        FamilyArg::Concat => 2,
    };
    let len = rng.gen_range(1..=4);
    (0..len).map(|_| rng.gen_range(low..=4)).collect()
}
