use std::fs::File;
use std::io::{self, Write};

use anyhow::{Context, Result};
use qdeform::report::{Check, VerificationReport};
use serde::Serialize;

use crate::config::{Format, OutputArgs};

fn sink(out: &OutputArgs) -> Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize>(out: &OutputArgs, value: &T) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

pub fn write_csv<T: Serialize>(out: &OutputArgs, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Flatten reports into one record per identity; report-level notes are
/// copied onto each of that report's checks.
pub fn flatten(reports: Vec<VerificationReport>) -> Vec<Check> {
    let mut checks = Vec::new();
    for rep in reports {
        for mut c in rep.checks {
            c.notes.extend(rep.notes.iter().cloned());
            checks.push(c);
        }
    }
    checks
}

#[derive(Serialize)]
struct CheckRow<'a> {
    identity: &'a str,
    residual: f64,
    tolerance: f64,
    pass: bool,
    params: String,
    notes: String,
}

pub fn write_checks(out: &OutputArgs, checks: &[Check]) -> Result<()> {
    match out.format {
        Format::Json => write_json(out, &checks),
        Format::Csv => {
            let rows = checks
                .iter()
                .map(|c| {
                    Ok(CheckRow {
                        identity: &c.identity,
                        residual: c.residual,
                        tolerance: c.tolerance,
                        pass: c.pass,
                        params: serde_json::to_string(&c.params)?,
                        notes: c.notes.join("; "),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_csv(out, &rows)
        }
    }
}

pub fn summarize(checks: &[Check]) {
    let failed = checks.iter().filter(|c| !c.pass).count();
    eprintln!("{} checks, {} failed", checks.len(), failed);
    for c in checks.iter().filter(|c| !c.pass) {
        eprintln!("  FAIL {} residual {:e} (tol {:e})", c.identity, c.residual, c.tolerance);
    }
}
