//! A small declarative language over the lhott engine: declare groups,
//! groupoids, functors, local systems, correspondences and kernels, then
//! print cardinalities, Kan extensions, integral transforms, axiom checks
//! and finite gauge theory partition functions.

pub mod ast;
pub mod check;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod run;

use std::path::Path;

pub use check::{check, Checked};
pub use error::{CheckError, Failure, ParseError};
pub use parser::parse;
pub use printer::print;
pub use run::{Format, Options, Record};

/// Parses and checks `text`, resolving matrix files against `base_dir`.
pub fn load(text: &str, base_dir: &Path) -> Result<Checked, Failure> {
    let program = parse(text).map_err(Failure::Parse)?;
    check(&program, base_dir).map_err(Failure::Check)
}

/// Parses, checks and runs a script, returning its rendered output lines.
/// On failure the lines produced so far are returned with the failure.
pub fn run_script(
    text: &str,
    base_dir: &Path,
    opts: Options,
    format: Format,
) -> (Vec<String>, Option<Failure>) {
    let mut lines = Vec::new();
    let result = load(text, base_dir).and_then(|env| run::run(&env, opts, &mut |r| lines.push(r.render(format))));
    (lines, result.err())
}
