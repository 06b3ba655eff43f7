use std::process::ExitCode;

use clap::Parser;
use dehnkit::cli::Cli;
use dehnkit::commands::{run, write_artifacts};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| write_artifacts(&cli.global.out, &o.artifacts).map(|paths| (paths, o.failure)));
    match outcome {
        Ok((paths, failure)) => {
            for p in paths {
                println!("{}", p.display());
            }
            match failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("dehnkit: {msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("dehnkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
