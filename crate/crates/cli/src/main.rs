use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::{Field, Suite};
use serde::Serialize;

use grassmann_cli::commands::{self, AngleRequest, MethodArg, VerifyRequest};
use grassmann_cli::examples;
use grassmann_cli::{exit, CliError, InputDocument, Result};

#[derive(Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Grassmann angles between real and complex subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grassmann angle Θ_{V,W} (or Θ⊥ with --complementary) of two named subspaces.
    Angle(AngleArgs),
    /// Principal angles and principal bases of two named subspaces.
    Principal(PrincipalArgs),
    /// Run the identity suite on seeded random instances.
    Verify(VerifyArgs),
    /// Replay the bundled worked examples.
    Examples(ExamplesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Args)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Residual threshold (overrides the document's residual_eps).
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct DocArgs {
    /// Input document, `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    /// First subspace name (`NAME^perp` for a complement).
    v: String,
    /// Second subspace name.
    w: String,
    /// Compute over this field instead of the document's.
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    /// Also report angles in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct AngleArgs {
    #[command(flatten)]
    doc: DocArgs,
    #[arg(long, value_enum, default_value = "projection")]
    method: MethodArg,
    /// Complementary angle Θ⊥_{V,W} = Θ_{V,W⊥}.
    #[arg(long)]
    complementary: bool,
    /// Oriented angle cosine ⟨ν,ω⟩/(‖ν‖‖ω‖) of the given bases.
    #[arg(long)]
    oriented: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct PrincipalArgs {
    #[command(flatten)]
    doc: DocArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// line, pythagorean, binomial, oriented, weighted-average, direct-sum, converse or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value = "real")]
    field: FieldArg,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Run only these examples (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[command(flatten)]
    out: Output,
}

fn read_document(path: &PathBuf) -> Result<InputDocument> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    InputDocument::from_json(&text)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text(value));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Angle(a) => {
            let doc = read_document(&a.doc.input)?;
            let req = AngleRequest {
                v: a.doc.v,
                w: a.doc.w,
                method: a.method,
                complementary: a.complementary,
                oriented: a.oriented,
                degrees: a.doc.degrees,
                field: a.doc.field.map(Field::from),
                residual_eps: a.out.tolerance,
            };
            emit(
                a.out.json,
                &commands::angle(&doc, &req)?,
                commands::render_angle,
            )?;
            Ok(exit::OK)
        }
        Command::Principal(p) => {
            let doc = read_document(&p.doc.input)?;
            let field = p.doc.field.map(Field::from);
            let out = commands::principal(&doc, &p.doc.v, &p.doc.w, field, p.doc.degrees)?;
            emit(p.out.json, &out, commands::render_principal)?;
            Ok(exit::OK)
        }
        Command::Verify(v) => {
            let suite: Suite = v.suite.parse().map_err(CliError::from)?;
            let checks = commands::verify(&VerifyRequest {
                suite,
                field: v.field.into(),
                n: v.n,
                trials: v.trials,
                seed: v.seed,
                residual_eps: v.out.tolerance,
            })?;
            emit(v.out.json, &checks, |c| commands::render_verify(c))?;
            Ok(if checks.iter().all(|c| c.passed) {
                exit::OK
            } else {
                exit::VERIFICATION
            })
        }
        Command::Examples(e) => {
            let tol = e.out.tolerance.unwrap_or(examples::DEFAULT_TOLERANCE);
            let outcomes = examples::run(&e.only, tol)?;
            emit(e.out.json, &outcomes, |o| examples::render(o))?;
            Ok(if outcomes.iter().all(|o| o.passed) {
                exit::OK
            } else {
                exit::VERIFICATION
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::INPUT
            } else {
                exit::OK
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
