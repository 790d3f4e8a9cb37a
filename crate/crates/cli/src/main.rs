use std::process::ExitCode;

use clap::Parser;
use qrank_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = qrank_cli::run(
        &cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
