use clap::Parser;
use halg_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, code) = run(&cli);
    if code >= 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code)
}
