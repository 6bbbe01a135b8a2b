use std::process::ExitCode;

fn main() -> ExitCode {
    match lpvoronoi_cli::parse_args(std::env::args_os()) {
        Ok(config) => ExitCode::from(lpvoronoi_cli::run(&config) as u8),
        Err(e) => e.exit(),
    }
}
