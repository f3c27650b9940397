mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use betanum::{Error, Params};
use commands::Rendered;

const USAGE: u8 = 2;
const DOMAIN: u8 = 1;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("BETANUM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("BETANUM_THREADS must be a nonnegative integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn params(cli: &Cli) -> Result<Params, ExitCode> {
    match (cli.p, cli.q) {
        (Some(p), Some(q)) => Params::new(p, q).map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }),
        _ => {
            eprintln!("error: --p and --q are required for this command");
            Err(ExitCode::from(USAGE))
        }
    }
}

fn run(cli: &Cli, params: Option<&Params>) -> Result<Rendered, Error> {
    let params = || params.expect("checked before dispatch");
    match &cli.command {
        Command::Expand(op) => commands::expand(op, cli.budget, params()),
        Command::Normalize { digits } => commands::normalize(digits, params()),
        Command::Add { x, y } => commands::add(x, y, cli.budget, params()),
        Command::Addpow { digits, l } => commands::addpow(digits, *l, params()),
        Command::List { n } => commands::list(*n, params()),
        Command::Succ(op) => commands::succ(op, params()),
        Command::Lplus { digit_bound } => commands::lplus(*digit_bound, params()),
        Command::Lemmaf { j } => commands::lemmaf(*j, params()),
        Command::Balance {
            prefix_len,
            max_window,
        } => commands::balance(*prefix_len, *max_window, params()),
        Command::Dn { n_max } => commands::dn(*n_max, params()),
        Command::Words { kind, n, word } => {
            commands::words_cmd(*kind, *n, word.as_deref(), params())
        }
        Command::Verify(args) => {
            if let (Some(p), Some(q)) = (cli.p, cli.q) {
                Params::new(p, q)?;
            }
            commands::verify_cmd(args, cli.p, cli.q)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    let params = match &cli.command {
        Command::Verify(_) => None,
        _ => match params(&cli) {
            Ok(p) => Some(p),
            Err(code) => return code,
        },
    };
    match run(&cli, params.as_ref()) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("values serialize")
                ),
                Format::Csv => print!("{}", out.csv),
            }
            if out.failed {
                ExitCode::from(DOMAIN)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ Error::Parse { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(DOMAIN)
        }
    }
}
