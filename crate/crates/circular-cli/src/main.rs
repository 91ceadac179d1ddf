use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly on SIGPIPE like other line-oriented tools instead of
    // panicking when a downstream reader such as `head` closes early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match circular_cli::run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}
