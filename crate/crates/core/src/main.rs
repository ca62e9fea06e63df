use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = delaycode::cli::run(std::env::args_os());
    if code == delaycode::cli::EXIT_USAGE {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    ExitCode::from(code as u8)
}
