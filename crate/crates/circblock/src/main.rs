use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use circblock::commands::{self, CliError, Options, Outcome, EXIT_INVALID};
use circblock::Document;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "circblock", version, about = "Circulant and block-circulant spectral tools")]
struct Cli {
    /// Nonnegativity and structure tolerance.
    #[arg(long, global = true, default_value_t = circblock_core::DEFAULT_TOL)]
    tol: f64,
    /// Use exact rational arithmetic where the inputs allow it.
    #[arg(long, global = true)]
    exact: bool,
    /// Recorded in the output metadata.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Candidate budget for the Perron-entry search.
    #[arg(long, global = true, default_value_t = circblock_core::ematrix::DEFAULT_BUDGET)]
    max_candidates: usize,
    /// Input document (default: stdin).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output document (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of a circulant.
    CirculantEigs,
    /// Circulant with a given spectrum.
    RealizeCirculant {
        /// Exit with status 4 unless the first row is nonnegative.
        #[arg(long)]
        require_nonnegative: bool,
    },
    /// Minimal Perron entry of a circulant or block realization.
    Guo {
        #[arg(long, value_enum, default_value_t = Mode::Circulant)]
        mode: Mode,
    },
    /// Operations on S-families and block matrices.
    Block {
        #[command(subcommand)]
        op: BlockOp,
    },
    /// Operations on eigenvalue layouts.
    Ematrix {
        #[command(subcommand)]
        op: EmatrixOp,
    },
    /// Check a block matrix against a claimed spectrum.
    Verify {
        /// Spectrum document to compare against.
        #[arg(long)]
        spectrum: PathBuf,
        /// Largest accepted matched distance.
        #[arg(long, default_value_t = 1e-8)]
        match_tol: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Circulant,
    Block,
}

#[derive(Debug, Subcommand)]
enum BlockOp {
    Assemble,
    Spectrum,
    Classify,
    CheckNonneg,
}

#[derive(Debug, Subcommand)]
enum EmatrixOp {
    Validate,
    Phi,
    Realize,
    MinPerron,
}

fn read_document(path: Option<&PathBuf>) -> Result<Document, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        }
    }
    Document::parse(&text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = Options { tol: cli.tol, exact: cli.exact, seed: cli.seed, max_candidates: cli.max_candidates };
    if !(opts.tol.is_finite() && opts.tol >= 0.0) {
        return Err(CliError::Input("--tol must be a nonnegative number".into()));
    }
    let input = read_document(cli.input.as_ref())?;
    match &cli.command {
        Command::CirculantEigs => commands::circulant_eigs(&input, &opts),
        Command::RealizeCirculant { require_nonnegative } => {
            commands::realize_circulant(&input, *require_nonnegative, &opts)
        }
        Command::Guo { mode: Mode::Circulant } => commands::guo_circulant(&input, &opts),
        Command::Guo { mode: Mode::Block } => commands::guo_block(&input, &opts),
        Command::Block { op } => match op {
            BlockOp::Assemble => commands::block_assemble(&input, &opts),
            BlockOp::Spectrum => commands::block_spectrum(&input, &opts),
            BlockOp::Classify => commands::block_classify(&input, &opts),
            BlockOp::CheckNonneg => commands::block_check_nonneg(&input, &opts),
        },
        Command::Ematrix { op } => match op {
            EmatrixOp::Validate => commands::ematrix_validate(&input, &opts),
            EmatrixOp::Phi => commands::ematrix_phi(&input, &opts),
            EmatrixOp::Realize => commands::ematrix_realize(&input, &opts),
            EmatrixOp::MinPerron => commands::ematrix_min_perron(&input, &opts),
        },
        Command::Verify { spectrum, match_tol } => {
            let claimed = read_document(Some(spectrum))?;
            commands::verify(&input, &claimed, *match_tol, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("circblock: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    for line in &outcome.diagnostics {
        eprintln!("circblock: {line}");
    }
    let text = outcome.document.emit();
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("circblock: cannot write output: {e}");
        return ExitCode::from(EXIT_INVALID);
    }
    ExitCode::from(outcome.exit_code)
}
