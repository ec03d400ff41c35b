//! Python access to the folcalc command layer. Every call returns the JSON
//! report the CLI would print with `--json`.

use folcalc::commands::{self, Command, CommandError, Options};
use folcalc::dsl::{self, Session};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn command_by_name(name: &str) -> PyResult<Command> {
    Command::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown command `{name}`")))
}

fn session(source: Option<&str>) -> PyResult<Session> {
    match source {
        Some(text) => dsl::parse_session(text).map_err(|e| PyValueError::new_err(e.to_string())),
        None => Ok(Session::default()),
    }
}

fn to_py(e: CommandError) -> PyErr {
    match e {
        CommandError::Usage(_) => PyValueError::new_err(e.to_string()),
        CommandError::Math(_) => PyArithmeticError::new_err(e.to_string()),
    }
}

/// Runs a command on DSL source and returns the JSON report.
///
/// Usage and parse errors raise `ValueError`; failed mathematical
/// preconditions raise `ArithmeticError`.
#[pyfunction]
#[pyo3(signature = (command, source=None, form=None, map=None, degrees=None, k=None, points=None, bound=None, projective_degree=false))]
#[allow(clippy::too_many_arguments)]
fn run(
    command: &str,
    source: Option<&str>,
    form: Option<String>,
    map: Option<String>,
    degrees: Option<(i64, i64)>,
    k: Option<Vec<usize>>,
    points: Option<Vec<String>>,
    bound: Option<i64>,
    projective_degree: bool,
) -> PyResult<String> {
    let command = command_by_name(command)?;
    let points = points
        .unwrap_or_default()
        .iter()
        .map(|p| dsl::parse_point(p).map_err(PyValueError::new_err))
        .collect::<PyResult<Vec<_>>>()?;
    let opts = Options { form, map, degrees, k: k.unwrap_or_default(), points, bound, projective_degree };
    let report = commands::run(command, &session(source)?, &opts).map_err(to_py)?;
    Ok(report.to_json())
}

/// Parses DSL source and returns its canonical printed form.
#[pyfunction]
fn parse(source: &str) -> PyResult<String> {
    Ok(session(Some(source))?.print())
}

/// JSON report for a catalog entry, or for the fixed entries when `name` is omitted.
#[pyfunction]
#[pyo3(signature = (name=None))]
fn catalog(name: Option<String>) -> PyResult<String> {
    let opts = Options { form: name, ..Options::default() };
    Ok(commands::run(Command::Catalog, &Session::default(), &opts).map_err(to_py)?.to_json())
}

#[pymodule]
fn pyfolcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
