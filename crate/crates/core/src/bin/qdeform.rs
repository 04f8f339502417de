use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qdeform::cli::{run_command, Command, RunOptions, Source};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Exact star products on skew polynomial rings smashed with finite abelian groups.
#[derive(Debug, Parser)]
#[command(name = "qdeform", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Built-in example, e.g. motivational-q2 or general-k4-n2-a1-b1.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Path to a configuration file.
    #[arg(long)]
    config: Option<String>,
    /// Largest |alpha| swept by the checks [default: 3].
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Largest t-power allowed when q is not a root of unity [default: 8].
    #[arg(long)]
    t_cap: Option<u32>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let source = match (&args.preset, &args.config) {
        (Some(p), _) => Source::preset(p).map(Some),
        (None, Some(path)) => Source::from_path(path).map(Some),
        (None, None) => Ok(None),
    };
    let outcome = source.and_then(|s| {
        let opts = RunOptions::resolve(args.degree_bound, args.t_cap, s.as_ref().map(|s| &s.config.run));
        run_command(args.command, s.as_ref(), opts)
    });
    match outcome {
        Ok(out) => {
            let text = match args.format {
                Format::Human => out.human.clone(),
                Format::Machine => serde_json::to_string_pretty(&out.machine).expect("json") + "\n",
            };
            // a closed pipe (`| head`) is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            match args.format {
                Format::Human => eprintln!("configuration error: {e}"),
                Format::Machine => {
                    let _ = writeln!(
                        std::io::stdout(),
                        "{}",
                        serde_json::json!({ "passed": false, "error": e.to_string() })
                    );
                }
            }
            ExitCode::from(2)
        }
    }
}
