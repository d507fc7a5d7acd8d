use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let caps = std::env::var_os(stabilitylab_cli::CAPS_ENV).map(Into::into);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = stabilitylab_cli::run(std::env::args_os(), caps, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
