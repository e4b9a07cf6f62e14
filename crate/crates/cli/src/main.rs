use clap::Parser;
use fwm_cli::{run, Cli};
use serde_json::Value;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match report.summary {
                Value::String(s) => print!("{s}"),
                v => println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default()),
            }
            for f in &report.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
