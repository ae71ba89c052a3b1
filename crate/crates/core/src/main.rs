use clap::Parser;

fn main() {
    std::process::exit(noclid::driver::run(noclid::driver::Cli::parse()));
}
