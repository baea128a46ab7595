use std::process::ExitCode;

fn main() -> ExitCode {
    dratio::cli::main_with(std::env::args_os())
}
