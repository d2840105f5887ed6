use clap::error::ErrorKind;
use clap::Parser;

use thyme_cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprint!("{err}");
            std::process::exit(1);
        }
    };
    if let Err(err) = run(cli) {
        if is_broken_pipe(&err) {
            std::process::exit(0);
        }
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn is_broken_pipe(err: &thyme_cli::commands::CommandError) -> bool {
    let thyme_cli::commands::CommandError::Data(inner) = err else {
        return false;
    };
    inner
        .chain()
        .filter_map(|cause| cause.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}
