use clap::Parser;
use latzeta::cli::{configure_threads, exit_code, run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = configure_threads().and_then(|()| run(&cli, &mut std::io::stdout().lock())).unwrap_or_else(|e| {
        eprintln!("latzeta: {e}");
        exit_code(&e)
    });
    std::process::exit(code);
}
