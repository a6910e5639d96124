use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = advreal::cli::run(std::env::args_os());
    print!("{}", report.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", report.diagnostics());
    ExitCode::from(report.exit_code() as u8)
}
