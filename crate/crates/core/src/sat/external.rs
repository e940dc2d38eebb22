use std::io::Read;
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use super::{Model, SatError, SolveStatus};
use crate::cnf::{write_dimacs, CnfFormula};

/// Reads SAT-competition output: an `s` status line and `v` value lines.
/// `s UNKNOWN` maps to [`SolveStatus::TimedOut`].
pub fn parse_external_output(text: &str, num_vars: u32) -> Result<SolveStatus, SatError> {
    let mut status = None;
    let mut values = vec![false; num_vars as usize + 1];
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => 10,
                "UNSATISFIABLE" => 20,
                "UNKNOWN" | "INDETERMINATE" => 0,
                other => return Err(SatError::Output(format!("unknown status `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| SatError::Output(format!("bad value token `{tok}`")))?;
                let idx = v.unsigned_abs() as usize;
                if idx > num_vars as usize {
                    return Err(SatError::Output(format!("value for unknown variable {idx}")));
                }
                if v > 0 {
                    values[idx] = true;
                }
            }
        }
    }
    match status {
        Some(10) => Ok(SolveStatus::Sat(Model::from_values(values))),
        Some(20) => Ok(SolveStatus::Unsat),
        Some(_) => Ok(SolveStatus::TimedOut),
        None => Err(SatError::Output("missing status line".into())),
    }
}

pub(super) fn run(command: &str, formula: &CnfFormula, timeout: Option<Duration>) -> Result<SolveStatus, SatError> {
    let backend_err = |message: String| SatError::External {
        command: command.to_string(),
        message,
    };
    let mut parts = command.split_whitespace();
    let program = parts.next().ok_or_else(|| backend_err("empty command".into()))?;
    let file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
    std::fs::write(file.path(), write_dimacs(formula))?;

    let mut child = Command::new(program)
        .args(parts)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| backend_err(format!("spawn failed: {e}")))?;
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut text = String::new();
        stdout.read_to_string(&mut text).map(|_| text)
    });

    let exit = match timeout {
        Some(t) => child.wait_timeout(t)?,
        None => Some(child.wait()?),
    };
    if exit.is_none() {
        let _ = child.kill();
        let _ = child.wait();
        let _ = reader.join();
        return Ok(SolveStatus::TimedOut);
    }
    let text = reader
        .join()
        .map_err(|_| backend_err("output reader panicked".into()))??;
    parse_external_output(&text, formula.num_vars()).map_err(|e| match e {
        SatError::Output(m) => backend_err(format!("{m} (exit {})", exit.unwrap())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_competition_output() {
        let text = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        match parse_external_output(text, 3).unwrap() {
            SolveStatus::Sat(m) => assert_eq!(m.values(), &[false, true, false, true]),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_external_output("s UNSATISFIABLE\n", 3).unwrap(), SolveStatus::Unsat);
        assert_eq!(parse_external_output("s UNKNOWN\n", 3).unwrap(), SolveStatus::TimedOut);
        assert!(parse_external_output("segmentation fault", 3).is_err());
        assert!(parse_external_output("", 3).is_err());
        assert!(parse_external_output("s SATISFIABLE\nv 9 0\n", 3).is_err());
    }

    #[test]
    fn missing_program_is_backend_error() {
        let f = CnfFormula::with_vars(1);
        let err = run("/nonexistent/solver-binary", &f, None).unwrap_err();
        assert!(matches!(err, SatError::External { .. }));
    }
}
