use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

use commands::Failure;

/// Igusa local zeta functions, solution counts and LFSR keystreams.
#[derive(Debug, Parser)]
#[command(name = "igusa", version)]
struct Cli {
    /// Largest p^m the brute-force counter will enumerate.
    #[arg(long, global = true, env = "IGUSA_BRUTE_CAP", default_value_t = 10_000_000)]
    brute_cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Polynomial, expanded (`x^2 - 1`) or factored (`3*(x - 1/5)*(x - 2)^2`).
    #[arg(long)]
    poly: String,
    #[arg(long)]
    prime: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Tree,
    Spf,
    Brute,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Z(s, f) as a sum of terms and in normal form.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The Poincaré series H(t, f) = (1 - t Z) / (1 - t).
    Poincare {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solution counts N_0 .. N_m modulo p^m.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t = Method::Tree)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The keystream N_0 .. N_u.
    Keystream {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The weighted residue-class tree T(f, l_f).
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a shift register over F_p.
    Lfsr {
        #[arg(long)]
        prime: u64,
        /// q_1, ..., q_r
        #[arg(long, value_delimiter = ',')]
        taps: Vec<u64>,
        /// a_0, ..., a_(r-1)
        #[arg(long, value_delimiter = ',')]
        init: Vec<u64>,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Also report preperiod and period.
        #[arg(long)]
        period: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check every method on one input.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    let cap = cli.brute_cap;
    match cli.command {
        Command::Zeta { input, format } => commands::zeta(&input.poly, &input.prime, format),
        Command::Poincare { input, format } => commands::poincare(&input.poly, &input.prime, format),
        Command::Count {
            input,
            max_m,
            method,
            format,
        } => commands::count(&input.poly, &input.prime, max_m, method, format, cap),
        Command::Keystream {
            input,
            length,
            format,
        } => commands::keystream(&input.poly, &input.prime, length, format),
        Command::Tree { input, format } => commands::tree(&input.poly, &input.prime, format),
        Command::Lfsr {
            prime,
            taps,
            init,
            steps,
            period,
            format,
        } => commands::lfsr(prime, taps, init, steps, period, format),
        Command::Verify { input, max_m } => verify::verify(&input.poly, &input.prime, max_m, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(report)) => {
            print!("{report}");
            ExitCode::from(2)
        }
    }
}
