use std::panic;
use std::process::ExitCode;

use clap::Parser;
use transverse_hopf::limits;
use transverse_hopf_cli::{run, Cli};

const DEFAULT_MAX_TERMS: usize = 1_000_000;

fn panic_message(payload: &(dyn std::any::Any + Send)) -> Option<&str> {
    payload.downcast_ref::<String>().map(String::as_str).or_else(|| payload.downcast_ref::<&str>().copied())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match std::env::var("TRANSVERSE_HOPF_MAX_TERMS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) if c > 0 => c,
            _ => {
                eprintln!("error: TRANSVERSE_HOPF_MAX_TERMS must be a positive integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => DEFAULT_MAX_TERMS,
    };
    limits::set_max_terms(cap);

    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(move |info| {
        if !panic_message(info.payload()).is_some_and(|m| m.starts_with(limits::LIMIT_MESSAGE)) {
            default_hook(info);
        }
    }));

    match panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(report)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                if let Some(w) = report.witnesses.first() {
                    eprintln!("failed: {w}");
                }
                ExitCode::from(1)
            }
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(payload) => match panic_message(payload.as_ref()) {
            Some(m) if m.starts_with(limits::LIMIT_MESSAGE) => {
                eprintln!("error: {m}");
                ExitCode::from(3)
            }
            _ => panic::resume_unwind(payload),
        },
    }
}
