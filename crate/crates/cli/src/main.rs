use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = quiverhom_cli::run_command(std::env::args_os());
    if code == 2 {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    ExitCode::from(code as u8)
}
