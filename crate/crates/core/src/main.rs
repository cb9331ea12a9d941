use std::time::Instant;

use clap::Parser;
use fillcurve::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("FILLCURVE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().expect("thread pool is set once");
    }
    let start = Instant::now();
    let code = run(&cli);
    eprintln!("elapsed: {:.2?}", start.elapsed());
    std::process::exit(code);
}
