use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, code) = dgrams_cli::main_with(std::env::args_os());
    let _ = if code == 2 {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    ExitCode::from(code as u8)
}
