use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = cremona_cli::run(std::env::args_os());
    if code == 0 {
        print!("{output}");
        let _ = std::io::stdout().flush();
    } else {
        eprint!("{output}");
        let _ = std::io::stderr().flush();
    }
    ExitCode::from(code.clamp(0, u8::MAX as i32) as u8)
}
