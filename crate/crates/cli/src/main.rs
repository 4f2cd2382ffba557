use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use icm_core::Settings;
use icm_lab::exec::{run_source, Options, Outcome, EXIT_ENGINE, EXIT_PARSE};
use icm_lab::parse;

#[derive(Parser)]
#[command(name = "icm-lab", version, about = "I-Cohen-Macaulay computations over affine polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EngineFlags {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for randomized searches and suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random candidates tried per regular-element search.
    #[arg(long, default_value_t = Settings::default().search_budget)]
    budget: u32,
    /// Maximum S-pair reductions per Groebner basis.
    #[arg(long, env = "ICM_STEP_LIMIT", default_value_t = Settings::default().step_limit)]
    step_limit: u64,
    /// Trials for suites that do not state a count.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Report wall times of suites.
    #[arg(long)]
    timing: bool,
}

impl EngineFlags {
    fn options(&self) -> Options {
        Options {
            json: self.json,
            settings: Settings { step_limit: self.step_limit, search_budget: self.budget, seed: self.seed },
            trials: self.trials,
            timing: self.timing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script.
    Run {
        file: PathBuf,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Print a script in canonical form.
    Fmt { file: PathBuf },
}

fn read(file: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(file).map_err(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: cannot read {}: {e}\n", file.display()),
        exit_code: EXIT_ENGINE,
    })
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Run { file, flags } => match read(&file) {
            Ok(source) => run_source(&source, &flags.options()),
            Err(o) => o,
        },
        Command::Verify { suite, flags } => {
            let opts = flags.options();
            run_source(&format!("verify {suite} trials {} seed {};", flags.trials, flags.seed), &opts)
        }
        Command::Fmt { file } => match read(&file) {
            Ok(source) => match parse(&source) {
                Ok(script) => Outcome { stdout: script.to_string(), stderr: String::new(), exit_code: 0 },
                Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), exit_code: EXIT_PARSE },
            },
            Err(o) => o,
        },
    }
}

fn main() -> ExitCode {
    let out = dispatch(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit_code as u8)
}
