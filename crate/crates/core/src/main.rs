use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use absorb::dsl::{parse_family, Format, Plan};
use absorb::exec::{execute, Options};
use absorb::harness::default_family;
use absorb::{Error, Limits};
use clap::Parser;

/// Classify submodules of finite modules and check absorbing-prime identities.
#[derive(Parser, Debug)]
#[command(name = "absorb", version)]
struct Cli {
    /// Script file; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output format. Overrides a `format` statement in the script.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest carrier that will be materialised.
    #[arg(long, default_value_t = Limits::default().max_elements)]
    max_elements: usize,
    /// Instance family for `suite` and `counterexample`: `default` or a file.
    #[arg(long)]
    suite_family: Option<String>,
}

fn read_source(path: Option<&PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)
            .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let text = read_source(cli.input.as_ref())?;
    let plan = Plan::parse(&text)?;
    let family = match cli.suite_family.as_deref() {
        None => None,
        Some("default") => Some(default_family()),
        Some(path) => Some(parse_family(
            &std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?,
        )?),
    };
    let opts = Options {
        limits: Limits {
            max_elements: cli.max_elements,
            ..Limits::default()
        },
        family,
    };
    let out = execute(&plan, &opts);
    let format = cli.format.or(out.format).unwrap_or(Format::Text);
    let mut stdout = io::stdout().lock();
    stdout.write_all(out.render(format).as_bytes())?;
    stdout.flush()?;
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    Ok(out.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
