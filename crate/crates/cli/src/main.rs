use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use subvac_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let (envelope, code) = match run(&cli.command) {
        Ok(env) => (Some(env), 0),
        Err(CliError::ReportFailed(env)) => {
            eprintln!("error: at least one report row failed");
            (Some(*env), 3)
        }
        Err(e) => {
            let code = e.exit_code();
            match e {
                CliError::Usage(m) | CliError::Numerical(m) | CliError::Violation(m) => {
                    eprintln!("error: {m}")
                }
                CliError::ReportFailed(_) => unreachable!(),
            }
            (None, code)
        }
    };

    if let Some(env) = envelope {
        if let Err(e) = env.write(cli.format, &mut out).and_then(|_| out.flush()) {
            if e.kind() != io::ErrorKind::BrokenPipe {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(3);
            }
        }
    }
    ExitCode::from(code as u8)
}
