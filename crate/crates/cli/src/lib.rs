//! Command-line front end for `qcolour-core`: argument parsing, hypergraph
//! files, configuration and the result catalog.

pub mod args;
pub mod budget;
pub mod catalog;
pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;
pub mod io;
pub mod json;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::Cli;
use crate::commands::{execute, Body};
use crate::config::Settings;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Parses `argv`, runs the command and writes its output. Returns the exit status.
pub fn run<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = Settings::resolve(&cli.global).and_then(|st| execute(&cli.command, &st));
    match result {
        Ok(report) => {
            let text = match report.body {
                Body::Json(v) => json::render(&v),
                Body::Text(t) => t,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if report.unknown {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let body = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = out.write_all(json::render(&body).as_bytes());
            e.exit_code()
        }
    }
}
