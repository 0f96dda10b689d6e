use std::process::ExitCode;

use theta_jordan::cli;

fn main() -> ExitCode {
    match cli::parse_args(std::env::args_os()) {
        Ok(config) => ExitCode::from(cli::execute(&config)),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
