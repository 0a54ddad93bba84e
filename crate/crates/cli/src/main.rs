use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(entropic_cli::run(std::env::args_os()))
}
