//! Every branch through the zeros at Δ = 1/2 in [-1,2]x[0,25], traced over
//! Δ in [0.05, 0.99] and classified. Writes one CSV per branch when given a
//! directory.
//!
//! cargo run --release --example figure_sweep -- /tmp/branches

use latzeta::cli::run_args;

fn main() {
    let mut args = vec!["latzeta".to_string(), "sweep".into()];
    if let Some(dir) = std::env::args().nth(1) {
        args.extend(["--out".into(), dir]);
    } else {
        args.extend(["--format".into(), "json".into()]);
    }
    match run_args(&args, &mut std::io::stdout()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(latzeta::cli::exit_code(&e));
        }
    }
}
