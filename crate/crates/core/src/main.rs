use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = kfermat::cli::dispatch(std::env::args_os().skip(1));
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(result.output.as_bytes());
    for line in &result.diagnostics {
        eprintln!("{}", line.trim_end());
    }
    ExitCode::from(result.status.exit_code() as u8)
}
