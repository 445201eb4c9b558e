mod commands;
mod report;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgroth::Error;
use report::{Format, Report, Status};
use std::process::ExitCode;

/// Grothendieck polynomials of types A, Sp and O, and their stable limits.
#[derive(Parser)]
#[command(name = "kgroth", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial or symmetric series.
    Compute(ComputeArgs),
    /// Expand a symmetric series in G, GP or GQ, or a polynomial in the Grothendieck basis.
    Expand(ExpandArgs),
    /// Hecke atoms and atoms of a fixed-point-free involution.
    Atoms {
        #[arg(long)]
        inv: String,
    },
    /// Diagrams, essential set, codes and classification.
    Diagram {
        #[arg(long, conflicts_with = "perm")]
        inv: Option<String>,
        #[arg(long)]
        perm: Option<String>,
    },
    /// Entries of the Pfaffian formula for a vexillary involution.
    PfaffianTrace {
        #[arg(long)]
        inv: String,
        /// Subscript cap for the printed operator expansions.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run a named verification suite (`--suite list` prints the names).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        maxdeg: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "typeA")]
    TypeA,
    #[value(name = "sp")]
    Sp,
    #[value(name = "o")]
    O,
    #[value(name = "G")]
    G,
    #[value(name = "GP")]
    GP,
    #[value(name = "GQ")]
    GQ,
    #[value(name = "GQO")]
    GQO,
    #[value(name = "GPSp")]
    GPSp,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub perm: Option<String>,
    #[arg(long)]
    pub inv: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub route: Option<String>,
    #[arg(long)]
    pub engine: Option<String>,
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long)]
    pub maxdeg: Option<u32>,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Product of factors such as `GQ:1*GQ:1`, `Gw:1342`, `GPSp:3412`, `o:321`.
    #[arg(long)]
    pub target: String,
    /// `G`, `GP`, `GQ`, or `groth` for the polynomial basis `{𝔊_w}`.
    #[arg(long)]
    pub basis: String,
    #[arg(long)]
    pub maxdeg: Option<u32>,
    #[arg(long)]
    pub vars: Option<usize>,
    /// Step cap for the `groth` basis.
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long)]
    pub report_positivity: bool,
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Compute(args) => commands::compute(args),
        Command::Expand(args) => commands::expand(args),
        Command::Atoms { inv } => commands::atoms(inv),
        Command::Diagram { inv, perm } => commands::diagram(inv.as_deref(), perm.as_deref()),
        Command::PfaffianTrace { inv, cap } => commands::pfaffian_trace(inv, *cap),
        Command::Verify {
            suite,
            vars,
            maxdeg,
        } => suites::run(suite, *vars, *maxdeg),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match cli.command {
        Command::Compute(_) => "compute",
        Command::Expand(_) => "expand",
        Command::Atoms { .. } => "atoms",
        Command::Diagram { .. } => "diagram",
        Command::PfaffianTrace { .. } => "pfaffian-trace",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if !report.all_pass() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(Error::Uncomputable(msg)) => {
            let mut report = Report::new(command_name(&cli));
            report.status = Status::Uncomputable;
            report.line("reason", msg);
            print!("{}", report.render(cli.format));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
