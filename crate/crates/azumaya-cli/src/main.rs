use clap::Parser;

fn main() {
    // clap exits with code 2 on unknown commands or malformed flags.
    let cli = azumaya_cli::Cli::parse();
    match azumaya_cli::run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
