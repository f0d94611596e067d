use clap::Parser;
use srg_cli::{commands, Cli};

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not configure {n} threads: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", out.json);
            std::process::exit(out.exit_code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let srg_cli::CliError::Core(srg_core::Error::UnboundedRegion(_)) = e {
                eprintln!("hint: add a Lipschitz or cocoercive atom, or set an enlargement mode");
            }
            std::process::exit(e.exit_code());
        }
    }
}
