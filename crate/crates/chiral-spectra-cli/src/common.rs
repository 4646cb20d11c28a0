//! Shared plumbing for the subcommands: graph loading, tolerance resolution,
//! range parsing, and output emission.

use chiral_spectra::graph::{builtin, parse_edge_list, Graph};
use chiral_spectra::{Error, Result};
use std::path::PathBuf;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Environment variable consulted when `--tol` is absent.
pub const TOL_ENV: &str = "CHIRAL_SPECTRA_TOL";

/// Loads exactly one of `--graph PATH` or `--builtin NAME`, returning a label
/// for reports alongside the graph itself.
pub fn load_graph(path: &Option<PathBuf>, name: &Option<String>) -> Result<(String, Graph)> {
    match (path, name) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter {
                name: "graph",
                detail: format!("cannot read {}: {e}", path.display()),
            })?;
            Ok((path.display().to_string(), parse_edge_list(&text)?))
        }
        (None, Some(name)) => Ok((name.clone(), builtin(name)?)),
        _ => Err(Error::InvalidParameter {
            name: "graph",
            detail: "provide exactly one of --graph PATH or --builtin NAME".into(),
        }),
    }
}

/// Tolerance precedence: explicit flag, then `CHIRAL_SPECTRA_TOL`, then the
/// command's documented default.
pub fn resolve_tol(flag: Option<f64>, fallback: f64) -> Result<f64> {
    let value = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(raw) => raw.trim().parse::<f64>().map_err(|_| Error::InvalidParameter {
                name: "tol",
                detail: format!("{TOL_ENV}={raw:?} is not a float"),
            })?,
            Err(_) => fallback,
        },
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            detail: format!("tolerance must be positive and finite, got {value}"),
        });
    }
    Ok(value)
}

/// Writes `content` to the `--out` path when given, otherwise to stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| Error::InvalidParameter {
            name: "out",
            detail: format!("cannot write {}: {e}", path.display()),
        })?,
        None => print!("{content}"),
    }
    Ok(())
}

/// Parses a `START:STOP:COUNT` sweep specification into evenly spaced points
/// (inclusive of both endpoints).
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let malformed = |detail: String| Error::InvalidParameter { name: "range", detail };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(malformed(format!("expected START:STOP:COUNT, got {spec:?}")));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| malformed(format!("bad start {:?}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| malformed(format!("bad stop {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| malformed(format!("bad count {:?}", parts[2])))?;
    if !start.is_finite() || !stop.is_finite() || stop < start || count == 0 {
        return Err(malformed(format!("empty or inverted range {spec:?}")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

/// Full-precision float formatting shared by all CSV emitters.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}
