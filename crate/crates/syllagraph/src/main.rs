use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(syllagraph::cli::run(std::env::args_os()))
}
