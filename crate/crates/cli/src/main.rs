mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Human => print!("{}", outcome.human),
                Format::Machine => println!("{:#}", outcome.document()),
            }
            for f in &outcome.failures {
                eprintln!(
                    "failure: {}",
                    f.as_str().map_or_else(|| f.to_string(), str::to_owned)
                );
            }
            if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Machine {
                let doc = json!({
                    "schema_version": "1",
                    "command": commands::command_name(&cli.command),
                    "inputs": commands::inputs_of(&cli.command),
                    "results": null,
                    "failures": [e.to_string()],
                });
                println!("{doc:#}");
            }
            ExitCode::from(1)
        }
    }
}
