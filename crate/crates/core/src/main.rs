use std::process::ExitCode;

fn main() -> ExitCode {
    noncrossing::cli::main()
}
