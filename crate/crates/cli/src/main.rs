use std::io;
use std::process::ExitCode;

use clap::Parser;
use cli::commands::{run, Cli, Command, EXIT_INTERNAL};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Command::Serve { port, data_dir } => {
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INTERNAL as u8);
                }
            };
            match rt.block_on(cli::serve(port, data_dir)) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        cmd => run(cmd, &mut io::stdout().lock(), &mut io::stderr().lock()),
    };
    ExitCode::from(code as u8)
}
