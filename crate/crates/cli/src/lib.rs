//! Batch front end: reads group, pair and module files, runs one check and
//! prints a deterministic report.
//!
//! Exit status: 0 when the computation finished with the expected verdicts,
//! 1 on a verdict mismatch, 2 on an input error, 3 when a randomised routine
//! ran out of budget.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{InputFile, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// `p` or `p,m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldArg {
    pub p: u32,
    pub m: Option<u32>,
}

fn parse_field(s: &str) -> Result<FieldArg, String> {
    let mut parts = s.split(',');
    let p = parts
        .next()
        .and_then(|x| x.trim().parse().ok())
        .ok_or_else(|| format!("expected p or p,m, got {s:?}"))?;
    let m = match parts.next() {
        None => None,
        Some(x) => Some(x.trim().parse().map_err(|_| format!("bad extension degree in {s:?}"))?),
    };
    if parts.next().is_some() {
        return Err(format!("expected p or p,m, got {s:?}"));
    }
    Ok(FieldArg { p, m })
}

#[derive(Debug, Parser)]
#[command(name = "indtilt", version, about = "Induced support τ-tilting modules over finite fields")]
pub struct Cli {
    /// Seed for every randomised routine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random trials before a routine reports an inconclusive outcome.
    #[arg(long, global = true, default_value_t = 64)]
    pub trials: usize,
    /// Field as `p` or `p,m`; m defaults to the splitting degree of the
    /// group exponent and p to 2.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldArg>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple modules of the group algebra.
    Simples {
        #[arg(long)]
        group: PathBuf,
    },
    /// Projective indecomposable modules.
    Pims {
        #[arg(long)]
        group: PathBuf,
    },
    /// τM computed as Ω²M and as D Tr M.
    Tau {
        #[arg(long)]
        module: PathBuf,
        /// Write τM (via Ω²) to this module file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Whether Hom(M, τM) = 0.
    CheckRigid {
        #[arg(long)]
        module: PathBuf,
    },
    /// Whether M is support τ-tilting, over the whole algebra or one block.
    CheckStt {
        #[arg(long)]
        module: PathBuf,
        /// 1-based block index; blocks are listed by `blocks`.
        #[arg(long)]
        block: Option<usize>,
    },
    /// Summands of the induced module.
    Induce {
        #[arg(long)]
        group_pair: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Res Ind M ≅ ⊕ g̃M with a verified isomorphism.
    Mackey {
        #[arg(long)]
        group_pair: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Block idempotents and the simples in each block.
    Blocks {
        #[arg(long)]
        group: PathBuf,
    },
    /// Ind M is support τ-tilting ⇔ M τ-rigid with support τ-tilting orbit sum.
    Thm1 {
        #[arg(long)]
        group_pair: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// The block-wise criterion for B̃ Ind M.
    Thm2 {
        #[arg(long)]
        group_pair: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// 1-based block of the subgroup; defaults to the module's block.
        #[arg(long)]
        block: Option<usize>,
        /// 1-based covering block of the big group; defaults to every
        /// covering block.
        #[arg(long)]
        big_block: Option<usize>,
    },
    /// Membership in the rigid and tilting orbit sets.
    Remark {
        #[arg(long)]
        group_pair: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// 1-based block for the block-wise sets; defaults to the module's block.
        #[arg(long)]
        block: Option<usize>,
    },
    /// The built-in A4 ⊴ S4 scenario over GF(4).
    ExampleA4s4,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simples { .. } => "simples",
            Command::Pims { .. } => "pims",
            Command::Tau { .. } => "tau",
            Command::CheckRigid { .. } => "check-rigid",
            Command::CheckStt { .. } => "check-stt",
            Command::Induce { .. } => "induce",
            Command::Mackey { .. } => "mackey",
            Command::Blocks { .. } => "blocks",
            Command::Thm1 { .. } => "thm1",
            Command::Thm2 { .. } => "thm2",
            Command::Remark { .. } => "remark",
            Command::ExampleA4s4 => "example-a4s4",
        }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                return Status::InputError.code();
            }
            let _ = out.write_all(rendered.as_bytes());
            return Status::Ok.code();
        }
    };
    let report = commands::execute(&cli);
    let text = match cli.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => report.render_json(),
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(e) = &report.error {
        let _ = writeln!(err, "error: {e}");
    }
    report.status.code()
}
