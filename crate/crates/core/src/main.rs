use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use folcalc::commands::{self, Command, Options};
use folcalc::dsl::{self, Session};

/// Exact computations with polynomial foliations.
#[derive(Parser, Debug)]
#[command(name = "folcalc", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input file in the folcalc language, `-` for stdin; for `catalog`, an entry name
    input: Option<String>,
    /// Binding or catalog entry holding the 1-form
    #[arg(long)]
    form: Option<String>,
    /// Binding holding the map
    #[arg(long)]
    map: Option<String>,
    /// Inclusive range of total degrees, e.g. 0..8
    #[arg(long, value_parser = commands::parse_degrees)]
    degrees: Option<(i64, i64)>,
    /// Rank for critical sets (repeatable)
    #[arg(long)]
    k: Vec<usize>,
    /// Point as c1,c2,... (repeatable)
    #[arg(long, value_parser = dsl::parse_point, allow_hyphen_values = true)]
    point: Vec<Vec<folcalc::Q>>,
    /// Degree bound for stabcones and determinacy
    #[arg(long)]
    bound: Option<i64>,
    /// Also report the projective degree of the form (requires descent)
    #[arg(long)]
    projective_degree: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

fn load(input: &str) -> Result<Session, String> {
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?
    } else {
        let path = PathBuf::from(input);
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    dsl::parse_session(&text).map_err(|e| format!("{input}:{e}"))
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which is reserved for math failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut opts = Options {
        form: cli.form,
        map: cli.map,
        degrees: cli.degrees,
        k: cli.k,
        points: cli.point,
        bound: cli.bound,
        projective_degree: cli.projective_degree,
    };
    let session = match (cli.command, cli.input) {
        (Command::Catalog, Some(name)) => {
            opts.form.get_or_insert(name);
            Session::default()
        }
        (_, Some(input)) => match load(&input) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        (_, None) => Session::default(),
    };
    match commands::run(cli.command, &session, &opts) {
        Ok(report) => {
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
