use std::process::ExitCode;

fn main() -> ExitCode {
    chowline::cli::main_with_args(std::env::args_os())
}
