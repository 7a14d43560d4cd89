mod pillowcase;
mod ribbon;
mod skein;
mod tqft;

use crate::args::{Command, GlobalOpts};
use crate::job::{CliError, JobSpec, Outcome};

pub type Run = Box<dyn FnOnce() -> Result<Outcome, CliError>>;

/// The job identifying a command invocation, and the deferred computation,
/// which is skipped on a cache hit.
pub fn plan(command: &Command, global: &GlobalOpts) -> Result<(JobSpec, Run), CliError> {
    match command {
        Command::SkeinMul(a) => skein::skein_mul(a),
        Command::IsoSweep(a) => skein::iso_sweep(a),
        Command::TqftTrace(a) => tqft::trace(a, global),
        Command::TqftLimit(a) => tqft::limit(a, global),
        Command::PillowcaseCheck(a) => pillowcase::check(a, global),
        Command::RibbonCheck(a) => ribbon::check(a, global),
        Command::GramProbe(a) => tqft::gram(a, global),
    }
}

fn yes_no(b: bool) -> String {
    if b { "pass" } else { "FAIL" }.to_string()
}

/// Shortest round-trip form, with an exponent for very small or large values.
fn num(x: f64) -> String {
    format!("{x:?}")
}
