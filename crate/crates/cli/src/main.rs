use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cyclic_cubic::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(cli, &mut out, &mut io::stderr());
    if out.flush().is_err() && code == 0 {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
