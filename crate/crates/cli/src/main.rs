use clap::Parser;
use std::io::Write;

fn main() {
    let out = polymin_cli::execute(polymin_cli::Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
