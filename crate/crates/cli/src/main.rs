mod args;
mod commands;
mod input;
mod job;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use job::{Cache, CliError};

fn run(cli: &Cli) -> Result<bool, CliError> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Compute(e.to_string()))?;
    }
    let (spec, compute) = commands::plan(&cli.command, g)?;
    let cache = (!g.no_cache).then(|| Cache::new(&g.cache_dir));
    let cached = cache.as_ref().and_then(|c| c.load(&spec));
    let (record, table) = match cached {
        Some(hit) => {
            eprintln!("cache hit {}", hit.0.job_hash);
            hit
        }
        None => {
            let (record, table) = job::finish(spec, compute()?);
            if let Some(c) = &cache {
                c.store(&record, &table)?;
            }
            (record, table)
        }
    };
    let bytes = job::render(&record, &table, g.output)?;
    match &g.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| CliError::Write { path: path.clone(), source })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
        }
    }
    Ok(record.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
