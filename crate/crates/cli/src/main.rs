use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use monostab_cli::args::Cli;
use monostab_cli::run::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout();
    let code = run(&cli, &mut out);
    let _ = out.flush();
    ExitCode::from(code)
}
