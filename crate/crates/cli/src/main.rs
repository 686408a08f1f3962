use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lhott_cli::run::{run, run_all_axioms, Data, Record};
use lhott_cli::{load, Failure, Format, Options};
use lhott_core::models::{dw_partition, SurfaceSpec, DEFAULT_SIZE_LIMIT};
use lhott_core::Group;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "lhott", version, about = "Exact six-operation calculus and pull-push quantization over finite groupoids")]
struct Cli {
    /// Largest number of enumerated tuples allowed for gauge theory commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_LIMIT as u64)]
    limit: u64,
    /// Output format; json emits one object per line.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a script and run its print commands.
    Run { file: PathBuf },
    /// Parse and check a script without running it.
    Check { file: PathBuf },
    /// Run the axiom suite on every declared functor and compatible systems.
    Axioms { file: PathBuf },
    /// Print a script in canonical form.
    Fmt { file: PathBuf },
    /// Genus-g partition function of untwisted finite gauge theory.
    Dw {
        /// `Z<n>` (cyclic), `S<n>` (symmetric) or `trivial`.
        group: String,
        #[arg(long)]
        genus: usize,
    },
}

fn parse_group(s: &str) -> Result<Group, Failure> {
    let bad = || Failure::Usage(format!("unknown group `{s}`; use Z<n>, S<n> or trivial"));
    if s == "trivial" {
        return Ok(Group::trivial());
    }
    let (kind, n) = s.split_at(1.min(s.len()));
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "Z" | "C" if n >= 1 => Ok(Group::cyclic(n)),
        "S" if (1..=lhott_cli::check::MAX_SYMMETRIC_DEGREE).contains(&n) => Ok(Group::symmetric(n)),
        _ => Err(bad()),
    }
}

fn read(file: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))
}

fn base_dir(file: &Path) -> &Path {
    file.parent().unwrap_or(Path::new("."))
}

fn execute(cli: &Cli, format: Format, out: &mut dyn FnMut(String)) -> Result<(), Failure> {
    let opts = Options {
        limit: cli.limit as u128,
    };
    match &cli.command {
        Cmd::Run { file } => {
            let env = load(&read(file)?, base_dir(file))?;
            run(&env, opts, &mut |r| out(r.render(format)))
        }
        Cmd::Check { file } => {
            let env = load(&read(file)?, base_dir(file))?;
            let r = Record {
                statement: "check".into(),
                data: Data::Summary {
                    declarations: env.bindings.len(),
                    commands: env.commands.len(),
                },
            };
            out(r.render(format));
            Ok(())
        }
        Cmd::Axioms { file } => {
            let env = load(&read(file)?, base_dir(file))?;
            run_all_axioms(&env, &mut |r| match format {
                Format::Plain => out(format!("{}: {}", r.statement, r.render(format))),
                Format::Json => out(r.render(format)),
            })
        }
        Cmd::Fmt { file } => {
            let program = lhott_cli::parse(&read(file)?).map_err(Failure::Parse)?;
            out(lhott_cli::print(&program).trim_end().to_string());
            Ok(())
        }
        Cmd::Dw { group, genus } => {
            let g = parse_group(group)?;
            let z = dw_partition(&g, SurfaceSpec { genus: *genus }, opts.limit)
                .map_err(|e| Failure::engine(Default::default(), e))?;
            let r = Record {
                statement: format!("dw {group} genus {genus}"),
                data: Data::Scalar(z),
            };
            out(r.render(format));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = match cli.format {
        OutputFormat::Plain => Format::Plain,
        OutputFormat::Json => Format::Json,
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let result = execute(&cli, format, &mut |line| {
        let _ = writeln!(lock, "{line}");
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match format {
                Format::Plain => eprintln!("error: {f}"),
                Format::Json => eprintln!("{}", f.to_json()),
            }
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
