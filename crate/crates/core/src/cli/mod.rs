//! The `freydlab` command line.

mod commands;
mod engine;
mod expr;
mod session;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{Outcome, SCHEMA};
pub use engine::{Bounds, CliError, Context};
pub use expr::{parse_mor, parse_obj, ExprError, MorExpr, ObjExpr};
pub use session::{parse_session, ParseError, Session};

#[derive(Parser, Debug)]
#[command(
    name = "freydlab",
    version,
    about = "Universal homology categories over finite diagrams"
)]
struct Cli {
    /// Maximum rewriting steps when completing quiver relations.
    #[arg(long, global = true)]
    bound_rewrite: Option<usize>,
    /// Certificate search depth.
    #[arg(long, global = true)]
    bound_cert: Option<usize>,
    /// Saturation stages for realization hom modules.
    #[arg(long, global = true)]
    bound_sat: Option<usize>,
    /// Presentation size bound for enumerations.
    #[arg(long, global = true)]
    bound_size: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Evaluation mode: graded, point, relative, add or from-k.
    #[arg(long = "in", global = true)]
    mode: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a session file.
    Check { session: PathBuf },
    /// Build a universal category and report on it.
    Build {
        session: PathBuf,
        /// homology, point, relative, add, kproj, dual or from-k.
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Hom module between two objects.
    Hom {
        session: PathBuf,
        src: String,
        dst: String,
    },
    /// Kernel of a morphism.
    Kernel { session: PathBuf, morphism: String },
    /// Decide whether an object is zero, with evidence.
    Iszero { session: PathBuf, object: String },
    /// Replay a certificate from a JSON file.
    Certify {
        session: PathBuf,
        certificate: PathBuf,
        object: Option<String>,
    },
    /// Evaluate an object under a realization.
    Eval {
        session: PathBuf,
        object: String,
        /// Evaluate a hieratic object at this module (point category only).
        #[arg(long)]
        at: Option<String>,
        /// Change coefficients before evaluating.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Check plus a summary of every construction.
    Report { session: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn bounds(cli: &Cli) -> Result<Bounds, CliError> {
    let mut b = Bounds::default();
    if let Ok(spec) = std::env::var("FREYDLAB_BOUNDS") {
        b.apply_env(&spec)?;
    }
    if let Some(v) = cli.bound_rewrite {
        b.rewrite = v;
    }
    if let Some(v) = cli.bound_cert {
        b.cert = v;
    }
    if let Some(v) = cli.bound_sat {
        b.sat = v;
    }
    if let Some(v) = cli.bound_size {
        b.size = v;
    }
    Ok(b)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let b = bounds(cli)?;
    let mode = cli.mode.as_deref();
    let ctx = |p: &PathBuf| Context::new(commands::load(&read(p)?)?, b);
    match &cli.command {
        Command::Check { session } => Ok(commands::check(commands::load(&read(session)?)?, b)),
        Command::Report { session } => Ok(commands::report(commands::load(&read(session)?)?, b)),
        Command::Build { session, target, k } => commands::build(&ctx(session)?, target, *k, mode),
        Command::Hom { session, src, dst } => commands::hom(&ctx(session)?, src, dst, mode),
        Command::Kernel { session, morphism } => commands::kernel(&ctx(session)?, morphism, mode),
        Command::Iszero { session, object } => commands::iszero(&ctx(session)?, object, mode),
        Command::Certify {
            session,
            certificate,
            object,
        } => commands::certify(&ctx(session)?, &read(certificate)?, object.as_deref(), mode),
        Command::Eval {
            session,
            object,
            at,
            ring,
        } => commands::eval(&ctx(session)?, object, at.as_deref(), ring.as_deref(), mode),
    }
}

/// Run the command line and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_captured(args);
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    code
}

/// Run and capture stdout and stderr as strings.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.report).expect("serializable") + "\n";
            (o.code, text, String::new())
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
