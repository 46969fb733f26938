use clap::Parser;

fn main() {
    let cli = dirac1d_cli::Cli::parse();
    std::process::exit(dirac1d_cli::main_with(cli));
}
