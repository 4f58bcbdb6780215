use clap::Parser;

use toricval::cli::{run, Cli};

fn main() {
    if let Some(threads) = std::env::var("TORICVAL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                std::process::exit(0);
            }
            let payload = serde_json::json!({"error": e.kind().to_string()});
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("JSON values serialize")
            );
            std::process::exit(1);
        }
    };
    std::process::exit(run(&cli));
}
