use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let code = nboson_cli::run(args, &mut out, &mut stderr.lock());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
