use std::process::ExitCode;

fn main() -> ExitCode {
    pathfold::cli::run()
}
