use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tscale_cli::run(std::env::args_os()))
}
