mod cli;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::Cli;

fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": kind, "message": message }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_json("BadArguments", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };

    if let Some(n) = std::env::var("CHP_PACK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }

    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let kind = e.downcast_ref::<chp_pack::Error>().map_or("Error", |e| e.kind());
            eprintln!("{}", error_json(kind, &format!("{e:#}")));
            ExitCode::from(3)
        }
    }
}
