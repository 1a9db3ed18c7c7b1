//! `.pot` files: `# POT`, the point count, then one `r Z(r)` pair per line.

use crate::error::{Error, Result};
use crate::potential::{tabulated_charge, ChargeSpec};
use std::fmt::Write as _;
use std::path::Path;

pub const POT_SIGNATURE: &str = "# POT";

fn fmt_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn read_pot(path: &Path) -> Result<ChargeSpec> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, POT_SIGNATURE)) => {}
        Some((n, l)) => return Err(fmt_err(path, n, format!("expected {POT_SIGNATURE:?}, found {l:?}"))),
        None => return Err(fmt_err(path, 1, "empty file")),
    }
    let mut lines = lines.filter(|(_, l)| !l.is_empty());
    let (ln, l) = lines.next().ok_or_else(|| fmt_err(path, 2, "missing point count"))?;
    let count: usize = l.parse().map_err(|_| fmt_err(path, ln, format!("bad point count {l:?}")))?;
    let mut r = Vec::with_capacity(count);
    let mut z = Vec::with_capacity(count);
    for k in 0..count {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| fmt_err(path, 0, format!("truncated: {k} of {count} points")))?;
        let mut it = l.split_whitespace().map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => {
                r.push(a);
                z.push(b);
            }
            _ => return Err(fmt_err(path, ln, format!("expected two numbers, found {l:?}"))),
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(fmt_err(path, ln, "data beyond the declared point count"));
    }
    tabulated_charge(r, z).map_err(|e| fmt_err(path, 0, e.to_string()))
}

/// A Coulomb charge is written as the two points `(0, Z)` and `(r_max, Z)`.
pub fn write_pot(path: &Path, charge: &ChargeSpec, r_max: f64) -> Result<()> {
    let (r, z) = match charge {
        ChargeSpec::Coulomb(zeff) => (vec![0.0, r_max], vec![*zeff, *zeff]),
        ChargeSpec::Tabulated { r, z } => (r.clone(), z.clone()),
    };
    let mut out = String::with_capacity(48 * (r.len() + 2));
    writeln!(out, "{POT_SIGNATURE}").unwrap();
    writeln!(out, "{}", r.len()).unwrap();
    for (a, b) in r.iter().zip(&z) {
        writeln!(out, "{a:.15E} {b:.15E}").unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}
