use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sizedmu::cli::{one_shot_script, parse_size_flag, run_source, Flags, Format};

#[derive(Parser)]
#[command(
    name = "sizedmu",
    version,
    about = "Initial algebras of finite-set functors by sized iteration"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// `nat`, `plump:<signature>`, or a declared size
    #[arg(long, global = true)]
    size: Option<String>,
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Script with declarations (signatures, groups) for one-shot commands
    #[arg(long, global = true)]
    defs: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script file, or stdin when no file (or `-`) is given
    Run { file: Option<PathBuf> },
    /// Stage profile of the inflationary iteration
    Iterate { expr: String },
    /// Initial algebra
    Mu { expr: String },
    /// Catamorphism into the algebra `--carrier N --table "…"`
    Cata {
        expr: String,
        #[arg(long)]
        carrier: usize,
        #[arg(long, value_delimiter = ' ')]
        table: Vec<usize>,
        #[arg(long)]
        at: Option<usize>,
    },
    /// Free algebra on a set of the given size
    Free {
        expr: String,
        #[arg(long)]
        on: usize,
    },
    /// Final coalgebra by the deflationary chain
    Nu { expr: String },
    /// Invariant suites
    Check { expr: String },
    /// W-trees of a signature such as "leaf:0 | node:2"
    Enumerate { sig: String },
}

fn read(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let flags = Flags {
        size: g.size.as_deref().map(parse_size_flag),
        budget: g.budget,
        depth: g.depth,
        format: match g.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        seed: g.seed,
    };
    let defs = match &g.defs {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("sizedmu: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        },
        None => String::new(),
    };
    let src = match &cli.command {
        Cmd::Run { file } => match read(file.as_ref()) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("sizedmu: {e}");
                return ExitCode::from(1);
            }
        },
        Cmd::Iterate { expr } => one_shot_script(&defs, expr, "iterate", None),
        Cmd::Mu { expr } => one_shot_script(&defs, expr, "mu", None),
        Cmd::Nu { expr } => one_shot_script(&defs, expr, "nu", None),
        Cmd::Check { expr } => one_shot_script(&defs, expr, "check", None),
        Cmd::Free { expr, on } => one_shot_script(&defs, expr, &format!("free on {on}"), None),
        Cmd::Cata {
            expr,
            carrier,
            table,
            at,
        } => {
            let cmd = at.map_or("cata".to_string(), |n| format!("cata at {n}"));
            one_shot_script(&defs, expr, &cmd, Some((*carrier, table)))
        }
        Cmd::Enumerate { sig } => format!("{defs}\nsig _S = {sig}\nenumerate _S\n"),
    };
    let out = run_source(&src, &flags);
    print!("{}", out.output);
    ExitCode::from(out.exit_code as u8)
}
