use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let outcome = cmorbit_cli::dispatch(&argv, None);
    // Ignore broken pipes on output; the exit status still reports the result.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
