use clap::Parser;

fn main() {
    std::process::exit(perimac::cli::run(perimac::cli::Cli::parse()));
}
