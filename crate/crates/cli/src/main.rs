use clap::Parser;

use sigatlas_cli::{run, Cli, Limits};

fn main() {
    let cli = Cli::parse();
    let envelope = run(&cli.command, Limits::from_env());
    print!("{}", envelope.to_json());
    std::process::exit(envelope.exit_code());
}
