use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gentle_core::decide::decide;
use gentle_core::presentation::{dual, specialize, validate, FIXTURE_NAMES};
use gentle_core::surface::{build_surface, scc_winding_genus0, winding_of_curve};
use gentle_core::words::{enumerate_bands, enumerate_strings};
use gentle_core::{
    fixture, parse, random_gentle, Error, FixtureParams, Presentation, RandomOptions,
};

mod render;
mod report;

#[derive(Parser)]
#[command(
    name = "gentle",
    version,
    about = "Finiteness checks for gentle and skew-gentle algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Presentation document; `-` reads standard input.
    input: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the (skew-)gentle conditions.
    Validate(Common),
    /// Run the whole pipeline.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Windings of two handle curves, used at genus one: `s,t`.
        #[arg(long, value_parser = parse_pair)]
        handle_windings: Option<(i64, i64)>,
    },
    /// List strings up to a length.
    Strings {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
    },
    /// List bands up to a period.
    Bands {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
    },
    /// Genus, boundary components, windings.
    Surface(Common),
    /// All finiteness verdicts with evidence.
    Decide {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_pair)]
        handle_windings: Option<(i64, i64)>,
    },
    /// The dual graded gentle presentation.
    Dual(Common),
    /// Split special vertices into a presentation with weighted relations.
    Specialize(Common),
    /// Winding number of a separating curve (`--subset`) or of a curve given
    /// by its arc crossings (`--curve`).
    Winding {
        #[command(flatten)]
        common: Common,
        /// Boundary ids cut off by the curve: `1,3`.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "curve",
            required_unless_present = "curve"
        )]
        subset: Option<Vec<usize>>,
        /// Crossings such as `"1+ 2+ 4- 3-"`.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Print a named example presentation, or `random` for a generated one.
    Example {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Seed for `random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex count for `random`.
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// Give `random` at least one special loop.
        #[arg(long)]
        skew: bool,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected two integers `s,t`")?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn read_input(path: &str) -> anyhow::Result<Presentation> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    Ok(parse(&text)?)
}

/// What a command printed and how it should exit.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            code: 0,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, bool)> {
    Ok(match cli.command {
        Command::Validate(c) => {
            let p = read_input(&c.input)?;
            let r = validate(&p);
            let code = if r.is_admissible() { 0 } else { 1 };
            let json = serde_json::to_value(&r)?;
            (
                Outcome {
                    text: render::validation(&r),
                    json,
                    code,
                },
                c.json,
            )
        }
        Command::Analyze {
            common,
            handle_windings,
        } => {
            let p = read_input(&common.input)?;
            let r = report::analyze(&p, handle_windings)?;
            let code = if r.validation.is_admissible() { 0 } else { 1 };
            (
                Outcome {
                    text: render::analysis(&r),
                    json: r.to_json(),
                    code,
                },
                common.json,
            )
        }
        Command::Strings { common, max_length } => {
            let p = read_input(&common.input)?;
            let entries = enumerate_strings(&p, max_length)?;
            let json = json!(entries
                .iter()
                .map(|e| json!({ "word": e.word.to_json(&p), "class": e.class }))
                .collect::<Vec<_>>());
            let text = entries
                .iter()
                .map(|e| format!("{:<40} {:?}", e.word.display(&p), e.class.tag))
                .collect::<Vec<_>>()
                .join("\n");
            (Outcome::ok(json, text), common.json)
        }
        Command::Bands { common, max_period } => {
            let p = read_input(&common.input)?;
            let bands = enumerate_bands(&p, max_period)?;
            let json = json!(bands.iter().map(|b| b.to_json(&p)).collect::<Vec<_>>());
            let text = bands
                .iter()
                .map(|b| format!("{:<40} {}", b.display(&p), b.symmetry))
                .collect::<Vec<_>>()
                .join("\n");
            (Outcome::ok(json, text), common.json)
        }
        Command::Surface(c) => {
            let p = read_input(&c.input)?;
            let m = build_surface(&p)?;
            (Outcome::ok(m.to_json(), render::surface(&m)), c.json)
        }
        Command::Decide {
            common,
            handle_windings,
        } => {
            let p = read_input(&common.input)?;
            let d = decide(&p, handle_windings)?;
            (
                Outcome::ok(d.to_json(&p), render::decisions(&d)),
                common.json,
            )
        }
        Command::Dual(c) => {
            let p = read_input(&c.input)?;
            let d = dual(&p)?;
            let json: Value = serde_json::from_str(&d.to_json())?;
            (Outcome::ok(json, d.to_json()), true)
        }
        Command::Specialize(c) => {
            let p = read_input(&c.input)?;
            let s = specialize(&p)?;
            let json: Value = serde_json::from_str(&s.to_json())?;
            (Outcome::ok(json, s.to_json()), true)
        }
        Command::Winding {
            common,
            subset,
            curve,
        } => {
            let p = read_input(&common.input)?;
            let m = build_surface(&p)?;
            let w = match (subset, curve) {
                (Some(js), _) => scc_winding_genus0(&m, &js)?,
                (None, Some(c)) => {
                    let tokens: Vec<String> = c
                        .split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|t| !t.is_empty())
                        .map(String::from)
                        .collect();
                    winding_of_curve(&m, &tokens)?
                }
                (None, None) => bail!("give --subset or --curve"),
            };
            (
                Outcome::ok(json!({ "winding": w }), w.to_string()),
                common.json,
            )
        }
        Command::Example {
            name,
            n,
            r,
            m,
            seed,
            size,
            skew,
        } => {
            let p = if name.eq_ignore_ascii_case("random") {
                random_gentle(
                    seed,
                    size,
                    RandomOptions {
                        skew,
                        ..Default::default()
                    },
                )?
            } else {
                fixture(&name, &FixtureParams { n, r, m }).map_err(|e| match e {
                    Error::UnknownFixture(f) => Error::UnknownFixture(format!(
                        "{f} (known: {}, random)",
                        FIXTURE_NAMES.join(", ")
                    )),
                    e => e,
                })?
            };
            let json: Value = serde_json::from_str(&p.to_json())?;
            (Outcome::ok(json, p.to_json()), true)
        }
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ParseError { .. } | Error::SchemaError { .. }) => 2,
        Some(Error::UnknownFixture(_) | Error::BadParams(_)) => 2,
        Some(Error::InternalInconsistency(_)) => 3,
        Some(_) => 1,
        None if e.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, as_json)) => {
            let doc = if as_json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{doc}").and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::from(out.code),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
