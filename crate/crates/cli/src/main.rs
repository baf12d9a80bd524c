use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match qshell_cli::parse_args(std::env::args_os()) {
        Ok(config) => config,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let status = qshell_cli::run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(status as u8)
}
