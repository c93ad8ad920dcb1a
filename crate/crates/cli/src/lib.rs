//! Command-line surface for `hecke-core`: argument parsing, configuration,
//! the on-disk series cache and report emission. This is the only crate in
//! the workspace that touches the file system or the network.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use hecke_core::hecke::{DirectSource, ExpansionSource, Memoized};

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use args::{Cli, Command, OeisCommand};
use cache::DiskCache;
use error::{CliError, CliResult};

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code: 0 when every gated check passes, 1 when one fails
/// or a computation cannot complete, 2 for usage and configuration errors.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let settings = config::resolve(&cli.global, &|k| std::env::var(k).ok())?;
    let disk = match &settings.cache_dir {
        Some(dir) => Some(DiskCache::open(dir).map_err(|e| {
            CliError::Usage(format!("cannot use cache directory {}: {e}", dir.display()))
        })?),
        None => None,
    };
    let memo_disk;
    let memo_direct;
    let source: &dyn ExpansionSource = match &disk {
        Some(d) => {
            memo_disk = Memoized::new(d);
            &memo_disk
        }
        None => {
            memo_direct = Memoized::new(DirectSource);
            &memo_direct
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = settings.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Failure(format!("cannot start worker pool: {e}")))?;
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(&cli.command, source, &mut buffer));
    out.write_all(&buffer)?;
    if let Some(d) = &disk {
        for w in d.take_warnings() {
            let _ = writeln!(err, "warning: {w}");
        }
    }
    result
}

fn dispatch(command: &Command, source: &dyn ExpansionSource, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Expand(a) => commands::expand(source, a, out),
        Command::Power(a) => commands::power(source, a, out),
        Command::Constants(a) => commands::constants(source, a, out),
        Command::Interp(a) => commands::interp(source, a, out),
        Command::Check(a) => commands::check(source, a, out),
        Command::OeisVerify(a) => commands::oeis_verify(source, a, out),
        Command::Oeis(OeisCommand::Fetch(a)) => commands::oeis_fetch(a, out),
        Command::Catalan(a) => commands::catalan_cmd(a, out),
    }
}
