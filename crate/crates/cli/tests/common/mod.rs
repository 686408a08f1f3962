//! Golden script corpus shared by the golden and acceptance tests.

use std::fs;
use std::path::{Path, PathBuf};

use lhott_cli::{parse, print, run_script, Format, Options};
use lhott_core::models::DEFAULT_SIZE_LIMIT;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Every `*.lh` script, sorted by name.
pub fn scripts() -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = fs::read_dir(golden_dir())
        .expect("golden directory exists")
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "lh"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).expect("readable script"))
        })
        .collect();
    v.sort();
    v
}

/// Output lines, then the failure if any, then the exit code.
pub fn transcript(text: &str, format: Format) -> String {
    let opts = Options {
        limit: DEFAULT_SIZE_LIMIT,
    };
    let (lines, failure) = run_script(text, &golden_dir(), opts, format);
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    let code = match failure {
        Some(f) => {
            let msg = match format {
                Format::Plain => format!("error: {f}"),
                Format::Json => f.to_json().to_string(),
            };
            out.push_str(&msg);
            out.push('\n');
            f.exit_code()
        }
        None => 0,
    };
    out.push_str(&format!("exit {code}\n"));
    out
}

pub fn expected_path(name: &str, format: Format) -> PathBuf {
    let ext = match format {
        Format::Plain => "out",
        Format::Json => "json",
    };
    golden_dir().join(format!("{name}.{ext}"))
}

/// Compares every script with its frozen transcripts; with `LHOTT_BLESS`
/// set, rewrites them instead. Returns the names that differ.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var_os("LHOTT_BLESS").is_some();
    let mut bad = Vec::new();
    for (name, text) in scripts() {
        for format in [Format::Plain, Format::Json] {
            let got = transcript(&text, format);
            let path = expected_path(&name, format);
            if bless {
                fs::write(&path, &got).expect("writable golden file");
            } else if fs::read_to_string(&path).ok().as_deref() != Some(got.as_str()) {
                bad.push(format!("{}", path.display()));
            }
        }
    }
    bad
}

/// Scripts whose canonical print does not parse back to the same program.
/// Scripts that fail to parse are skipped.
pub fn round_trip_failures() -> Vec<String> {
    scripts()
        .into_iter()
        .filter_map(|(name, text)| {
            let p = parse(&text).ok()?;
            let printed = print(&p);
            (parse(&printed).as_ref() != Ok(&p) || print(&parse(&printed).ok()?) != printed).then_some(name)
        })
        .collect()
}
