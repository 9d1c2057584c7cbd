use std::process::ExitCode;

fn main() -> ExitCode {
    trigcd::cli::run()
}
