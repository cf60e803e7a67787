use std::io::Write;

fn main() {
    let result = arrowscope::cli::run_command(std::env::args().skip(1));
    std::io::stdout().write_all(result.stdout.as_bytes()).ok();
    std::io::stderr().write_all(result.stderr.as_bytes()).ok();
    std::process::exit(result.exit_code);
}
