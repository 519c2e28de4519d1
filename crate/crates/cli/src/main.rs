use clap::Parser;

fn main() {
    let cli = hypercover_cli::args::Cli::parse();
    match hypercover_cli::run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
