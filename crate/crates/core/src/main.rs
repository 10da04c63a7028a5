use std::process::ExitCode;

fn main() -> ExitCode {
    bellflow::cli::run()
}
