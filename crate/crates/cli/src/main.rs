use std::io::Write;

fn main() {
    cloneforge_cli::init_threads();
    let out = cloneforge_cli::run_args(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
