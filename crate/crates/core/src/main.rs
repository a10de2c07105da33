use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(quiddity::cli::main_with_stdio() as u8)
}
