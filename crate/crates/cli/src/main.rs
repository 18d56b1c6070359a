use centpoly_cli::config::{Cli, RunConfig};
use clap::Parser;

fn main() {
    let cfg = RunConfig::from_cli(Cli::parse());
    let start = std::time::Instant::now();
    let code = centpoly_cli::run(&cfg);
    if cfg.timing {
        eprintln!("[timing] total: {:.3}s", start.elapsed().as_secs_f64());
    }
    std::process::exit(code);
}
