//! `.rgf` files holding tabulated Green's functions.
//!
//! ```text
//! # DCFGF
//! # ... comment lines, including "# grid rnt h n: <rnt> <h> <n>"
//! <interpolation_mode>
//! <count>
//! <E> <kappa> <mtp>          one header per function, followed by
//! <r> <r'> <gLL> <gLS> <gSL> <gSS>   mtp^2 records, r' running fastest
//! ```

use crate::error::{Error, Result};
use crate::greens::{GreensFunction, Tabulation};
use std::io::{BufWriter, Write};
use std::path::Path;

pub const RGF_SIGNATURE: &str = "# DCFGF";
const GRID_TAG: &str = "# grid rnt h n:";

#[derive(Clone, Debug, PartialEq)]
pub struct RgfFunction {
    pub energy: f64,
    pub kappa: i32,
    /// The `mtp` tabulation radii.
    pub r: Vec<f64>,
    pub table: Tabulation,
}

impl RgfFunction {
    pub fn from_greens(gf: &GreensFunction, table: Tabulation) -> Self {
        RgfFunction {
            energy: gf.energy,
            kappa: gf.kappa,
            r: gf.grid().r().to_vec(),
            table,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RgfFile {
    pub interpolation_mode: u32,
    pub grid: Option<(f64, f64, usize)>,
    pub functions: Vec<RgfFunction>,
}

pub fn write_rgf(path: &Path, file: &RgfFile) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "{RGF_SIGNATURE}")?;
    writeln!(w, "# radial Green's functions of the Dirac equation, atomic units, E without rest energy")?;
    writeln!(w, "# records: r r' gLL gLS gSL gSS (one line per node pair, r' fastest)")?;
    writeln!(w, "# gLS and gSL on r = r' hold the average of both sides")?;
    if let Some((rnt, h, n)) = file.grid {
        writeln!(w, "{GRID_TAG} {rnt:.15E} {h:.15E} {n}")?;
    }
    writeln!(w, "{}", file.interpolation_mode)?;
    writeln!(w, "{}", file.functions.len())?;
    for f in &file.functions {
        let m = f.r.len();
        writeln!(w, "{:.15E} {} {}", f.energy, f.kappa, m)?;
        for i in 0..m {
            for j in 0..m {
                let [a, b, c, d] = f.table.at(i, j);
                writeln!(w, "{:.15E} {:.15E} {a:.15E} {b:.15E} {c:.15E} {d:.15E}", f.r[i], f.r[j])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

struct Reader<'a> {
    path: &'a Path,
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    line: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Format {
            path: self.path.display().to_string(),
            line: self.line,
            msg: msg.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.lines.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l)
            }
            None => {
                self.line += 1;
                Err(self.err(format!("unexpected end of file, expected {what}")))
            }
        }
    }

    fn parse<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("bad {what} {s:?}")))
    }
}

pub fn read_rgf(path: &Path) -> Result<RgfFile> {
    let text = std::fs::read_to_string(path)?;
    let mut rd = Reader {
        path,
        lines: text.lines().enumerate().peekable(),
        line: 0,
    };
    let first = rd.next("signature")?;
    if first.trim_end() != RGF_SIGNATURE {
        return Err(rd.err(format!("missing {RGF_SIGNATURE:?} signature, found {first:?}")));
    }
    let mut grid = None;
    let mut l = rd.next("interpolation mode")?;
    while l.starts_with('#') {
        if let Some(rest) = l.strip_prefix(GRID_TAG) {
            let v: Vec<&str> = rest.split_whitespace().collect();
            if v.len() != 3 {
                return Err(rd.err("grid line needs rnt, h and n"));
            }
            grid = Some((rd.parse(v[0], "rnt")?, rd.parse(v[1], "h")?, rd.parse(v[2], "n")?));
        }
        l = rd.next("interpolation mode")?;
    }
    let interpolation_mode: u32 = rd.parse(l.trim(), "interpolation mode")?;
    let l = rd.next("function count")?;
    let count: usize = rd.parse(l.trim(), "function count")?;
    let mut functions = Vec::with_capacity(count);
    for _ in 0..count {
        let l = rd.next("function header")?;
        let v: Vec<&str> = l.split_whitespace().collect();
        if v.len() != 3 {
            return Err(rd.err(format!("function header needs E kappa mtp, found {l:?}")));
        }
        let energy: f64 = rd.parse(v[0], "energy")?;
        let kappa: i32 = rd.parse(v[1], "kappa")?;
        let m: usize = rd.parse(v[2], "mtp")?;
        let mut r = vec![0.0; m];
        let mut t = Tabulation {
            mtp: m,
            gll: Vec::with_capacity(m * m),
            gls: Vec::with_capacity(m * m),
            gsl: Vec::with_capacity(m * m),
            gss: Vec::with_capacity(m * m),
        };
        for i in 0..m {
            for j in 0..m {
                let l = rd.next("record")?;
                let mut x = [0.0; 6];
                let mut it = l.split_whitespace();
                for v in x.iter_mut() {
                    let s = it.next().ok_or_else(|| rd.err("record needs six columns"))?;
                    *v = rd.parse(s, "number")?;
                }
                if it.next().is_some() {
                    return Err(rd.err("record has more than six columns"));
                }
                if j == 0 {
                    r[i] = x[0];
                }
                if i == 0 {
                    r[j] = x[1];
                }
                t.gll.push(x[2]);
                t.gls.push(x[3]);
                t.gsl.push(x[4]);
                t.gss.push(x[5]);
            }
        }
        functions.push(RgfFunction {
            energy,
            kappa,
            r,
            table: t,
        });
    }
    while let Some((i, l)) = rd.lines.next() {
        if !l.trim().is_empty() {
            rd.line = i + 1;
            return Err(rd.err("data after the last declared function"));
        }
    }
    Ok(RgfFile {
        interpolation_mode,
        grid,
        functions,
    })
}
