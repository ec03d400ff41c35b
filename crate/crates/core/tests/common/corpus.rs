//! Fixture corpus, golden reports and malformed inputs for the CLI.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "fol"))
        .collect();
    files.sort();
    files
}

pub struct Invocation {
    pub name: String,
    pub args: Vec<String>,
}

pub fn manifest() -> Vec<Invocation> {
    let text = std::fs::read_to_string(fixtures_dir().join("manifest.txt")).expect("manifest");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name | args");
            Invocation { name: name.trim().into(), args: args.split_whitespace().map(String::from).collect() }
        })
        .collect()
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the fixtures directory, feeding `stdin` if given.
pub fn folcalc(args: &[String], stdin: Option<&str>) -> Outcome {
    let mut child = Command::new(env!("CARGO_BIN_EXE_folcalc"))
        .args(args)
        .current_dir(fixtures_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn folcalc");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("wait");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

pub fn args(line: &str) -> Vec<String> {
    line.split_whitespace().map(String::from).collect()
}

/// Runs an invocation twice and compares both runs with its golden file.
/// With `FOLCALC_BLESS=1` the golden file is rewritten instead.
pub fn check_golden(inv: &Invocation) -> Result<(), String> {
    let first = folcalc(&inv.args, None);
    let second = folcalc(&inv.args, None);
    if first.code != 0 {
        return Err(format!("{}: exit {} ({})", inv.name, first.code, first.stderr.trim()));
    }
    if first.stdout != second.stdout {
        return Err(format!("{}: output differs between runs", inv.name));
    }
    let path = golden_dir().join(format!("{}.out", inv.name));
    if std::env::var("FOLCALC_BLESS").is_ok_and(|v| v == "1") {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if golden != first.stdout {
        return Err(format!("{}: output differs from {}", inv.name, path.display()));
    }
    Ok(())
}

pub const MALFORMED: [&str; 20] = [
    "vars x y;\nlet w = x +* y;",
    "let w = x;",
    "vars x;\nlet w = x^99999;",
    "vars x;\nlet w = 1/0;",
    "vars x y;\nlet w = d(x) * d(y);",
    "vars x;\nlet w = (x + 1;",
    "vars x;\nlet w = y;",
    "vars x x;",
    "vars x;\nlet x = 1;",
    "vars x;\nlet w = 1;\nlet w = 2;",
    "vars x;\nlet w = x",
    "vars d;",
    "vars x y;\nlet u = i([x], d(x));",
    "vars x;\nlet w = x $ 2;",
    "vars x;\nlet w = x^-1;",
    "vars x;\nlet w = [x : 1] + x;",
    "vars x;\nlet w = d(x) + x;",
    "vars x;\nlet w = ;",
    "vars ;",
    "vars x;\nlet w = L(x, d(x));",
];

/// `line:col: message` after the `error: -:` prefix.
pub fn positioned(stderr: &str) -> bool {
    let Some(rest) = stderr.trim_end().strip_prefix("error: -:") else { return false };
    let mut parts = rest.splitn(3, ':');
    let numeric = |s: Option<&str>| s.is_some_and(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()));
    numeric(parts.next()) && numeric(parts.next()) && parts.next().is_some_and(|m| m.len() > 1)
}
