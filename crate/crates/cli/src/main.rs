mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use slopestab::slope::Mode;

/// Exact slope-stability checks for surfaces given by intersection data.
#[derive(Parser, Debug)]
#[command(name = "slopestab", version)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 4 when a result depends on an incomplete curve roster.
    #[arg(long, global = true)]
    strict_certainty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Pseudo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Pseudo => Mode::Pseudo,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print mu(X,L), mu_c(O_D,L), the pseudo-Seshadri constant and the roster Seshadri constant.
    Slope {
        /// Surface file or catalog key.
        surface: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        c: String,
    },
    /// Decide whether D destabilises (X, L); exit 10 when it does.
    Destab {
        surface: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
    },
    /// Test every class sum a_i G_i with 0 <= a_i <= bound.
    Search {
        surface: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        /// Comma-separated generators; defaults to roster curves and declared effective generators.
        #[arg(long, allow_hyphen_values = true)]
        generators: Option<String>,
        /// Largest number of coefficient tuples allowed.
        #[arg(long, default_value_t = slopestab::search::DEFAULT_CAP)]
        cap: u64,
    },
    /// Scan L_t = (1-t)La + tLb and write PREFIX.csv and PREFIX.svg.
    ConeScan {
        surface: String,
        #[arg(long = "La", allow_hyphen_values = true)]
        la: String,
        #[arg(long = "Lb", allow_hyphen_values = true)]
        lb: String,
        #[arg(long, default_value_t = 50)]
        grid: u32,
        /// Comma-separated divisors (classes or featured labels).
        #[arg(long, allow_hyphen_values = true)]
        divisors: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a destabilising polarisation certificate for an exceptional configuration.
    Construct {
        surface: String,
        /// Configuration such as 2*D1,D2 or a featured configuration label.
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a certificate file; exit 0 iff every invariant holds.
    Verify { certificate: PathBuf },
    /// Run the built-in verification suite.
    VerifySuite {
        /// Row number or id.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = slopestab::suite::DEFAULT_SEED)]
        seed: u64,
    },
    /// Built-in surfaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List the representative keys.
    List,
    /// Write a catalog surface as a surface file.
    Export {
        key: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Opts { json: cli.json, strict_certainty: cli.strict_certainty };
    let result = match cli.command {
        Command::Slope { surface, l, d, c } => commands::slope(&opts, &surface, &l, &d, &c),
        Command::Destab { surface, l, d, mode } => commands::destab(&opts, &surface, &l, &d, mode.into()),
        Command::Search { surface, l, bound, mode, generators, cap } => {
            commands::search(&opts, &surface, &l, bound, mode.into(), generators.as_deref(), cap)
        }
        Command::ConeScan { surface, la, lb, grid, divisors, mode, out } => {
            commands::cone_scan(&opts, &surface, &la, &lb, grid, &divisors, mode.into(), &out)
        }
        Command::Construct { surface, d, h, out } => commands::construct(&opts, &surface, &d, &h, &out),
        Command::Verify { certificate } => commands::verify(&opts, &certificate),
        Command::VerifySuite { only, seed } => commands::verify_suite(&opts, only.as_deref(), seed),
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(&opts),
        Command::Catalog { action: CatalogAction::Export { key, out } } => commands::catalog_export(&key, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
