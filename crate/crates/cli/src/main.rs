use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heegaard_cli::{run, CliConfig, Command};
use heegaard_core::assembly::Bounds;

#[derive(Parser)]
#[command(
    name = "gmsplit",
    version,
    about = "Standard Heegaard splittings of graph manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a spec document and print the violations.
    Validate(Common),
    /// List every standard candidate within bounds, best first.
    Enumerate(Common),
    /// Print the minimal genus and one witness.
    Genus {
        #[command(flatten)]
        common: Common,
        /// Cut along this torus edge first and amalgamate (repeatable).
        #[arg(long = "thin", value_name = "EDGE")]
        thin: Vec<String>,
    },
    /// Cut along a torus edge; `-o` names a directory for the pieces.
    Cut {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        edge: String,
    },
    /// Amalgamate a generalized splitting given as `[[chiS, chiF], ..., [chiS]]`.
    Amalgamate(Common),
    /// Print the Euler characteristic ledger of one ranked candidate.
    Explain {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        candidate: usize,
    },
}

#[derive(Args)]
struct Common {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = Bounds::default().n_max)]
    n_max: u64,
    #[arg(long, default_value_t = Bounds::default().max_arcs)]
    max_arcs: u64,
    #[arg(long)]
    no_tubes: bool,
    /// Bound on |c| for framing coefficients of horizontal pieces.
    #[arg(long, default_value_t = Bounds::default().coeff_max)]
    coeff_max: i64,
    /// Put the collar of a cross pattern in W.
    #[arg(long)]
    cross_in_w: bool,
}

impl Common {
    fn config(self, command: Command) -> CliConfig {
        CliConfig {
            command,
            input: self.input,
            output: self.output,
            json: self.json,
            bounds: Bounds {
                n_max: self.n_max,
                max_arcs: self.max_arcs,
                allow_tubes: !self.no_tubes,
                coeff_max: self.coeff_max,
                cross_in_w: self.cross_in_w,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let cfg = match cli.command {
        Cmd::Validate(c) => c.config(Command::Validate),
        Cmd::Enumerate(c) => c.config(Command::Enumerate),
        Cmd::Genus { common, thin } => common.config(Command::Genus { thin }),
        Cmd::Cut { common, edge } => common.config(Command::Cut { edge }),
        Cmd::Amalgamate(c) => c.config(Command::Amalgamate),
        Cmd::Explain { common, candidate } => common.config(Command::Explain { candidate }),
    };
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
