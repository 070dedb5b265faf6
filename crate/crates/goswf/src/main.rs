use clap::Parser;
use goswf::cli::{run, Cli, EXIT_CONFIG};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are success; bad flags are config errors
            if e.use_stderr() {
                let _ = e.print();
                std::process::exit(EXIT_CONFIG);
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };
    std::process::exit(run(&cli));
}
