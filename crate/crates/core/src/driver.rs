//! Batch generation of Green's functions: potential, grid, a list of
//! `(energy, symmetry)` requests, optional accuracy checks and the `.rgf`
//! output.

use crate::error::{Error, Result};
use crate::greens::{build_greens, GreensFunction, PhysicalConstants, DEFAULT_C};
use crate::grid::{build_grid, DEFAULT_H, DEFAULT_N, DEFAULT_RNT};
use crate::io::{convert_energy, parse_symmetry, symmetry_label, write_pot, write_rgf, EnergyUnit, RgfFile, RgfFunction};
use crate::potential::{coulomb_charge, linearize, load_pot, ChargeSpec};
use crate::verify::{accuracy_report, AccuracyReport};
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

/// Largest `|overlap - 1|` accepted by a checked run.
pub const DEFAULT_CHECK_THRESHOLD: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq)]
pub enum PotentialSource {
    Coulomb(f64),
    File(PathBuf),
}

impl FromStr for PotentialSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(z) = s.strip_prefix("coulomb:") {
            let z = z.parse().map_err(|_| Error::Parse(format!("bad nuclear charge in {s:?}")))?;
            return Ok(PotentialSource::Coulomb(z));
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(PotentialSource::File(PathBuf::from(p)));
        }
        Err(Error::Parse(format!("potential must be coulomb:<Z> or file:<path>, got {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub rnt: f64,
    pub h: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            rnt: DEFAULT_RNT,
            h: DEFAULT_H,
            n: DEFAULT_N,
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<&str> = s.split(',').collect();
        let bad = || Error::Parse(format!("grid must be <rnt>,<h>,<n>, got {s:?}"));
        if v.len() != 3 {
            return Err(bad());
        }
        Ok(GridSpec {
            rnt: v[0].trim().parse().map_err(|_| bad())?,
            h: v[1].trim().parse().map_err(|_| bad())?,
            n: v[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

/// One requested function: energy in the request unit and a symmetry label.
#[derive(Clone, Debug, PartialEq)]
pub struct GfRequest {
    pub energy: f64,
    pub symmetry: String,
}

impl FromStr for GfRequest {
    type Err = Error;
    /// `<E>:<symmetry>`, e.g. `-10000:s`.
    fn from_str(s: &str) -> Result<Self> {
        let (e, sym) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <energy>:<symmetry>, got {s:?}")))?;
        let energy = e.trim().parse().map_err(|_| Error::Parse(format!("bad energy {e:?}")))?;
        parse_symmetry(sym.trim())?;
        Ok(GfRequest {
            energy,
            symmetry: sym.trim().to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRequest {
    pub potential: PotentialSource,
    pub grid: GridSpec,
    pub c: f64,
    pub functions: Vec<GfRequest>,
    pub unit: EnergyUnit,
    pub check: bool,
    pub check_threshold: f64,
    pub out: PathBuf,
    pub save_pot: Option<PathBuf>,
}

impl RunRequest {
    pub fn new(potential: PotentialSource, functions: Vec<GfRequest>, out: PathBuf) -> Self {
        RunRequest {
            potential,
            grid: GridSpec::default(),
            c: DEFAULT_C,
            functions,
            unit: EnergyUnit::EV,
            check: false,
            check_threshold: DEFAULT_CHECK_THRESHOLD,
            out,
            save_pot: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub functions: usize,
    pub mtp: usize,
    pub bytes: u64,
    pub reports: Vec<AccuracyReport>,
    /// False when a checked overlap deviates by more than the threshold.
    pub passed: bool,
}

/// Potential and grid of a request, the grid cut at the end of a tabulated
/// potential.
pub fn prepare(req: &RunRequest) -> Result<(ChargeSpec, crate::grid::RadialGrid)> {
    let charge = match &req.potential {
        PotentialSource::Coulomb(z) => coulomb_charge(*z)?,
        PotentialSource::File(p) => load_pot(p)?,
    };
    let mut grid = build_grid(req.grid.rnt, req.grid.h, req.grid.n)?;
    if let Some(rmax) = charge.r_max() {
        grid.truncate_at(rmax)?;
    }
    Ok((charge, grid))
}

/// `-1.0000000E+04` style: signed two-digit exponent at least.
pub fn sci(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$E}");
    match s.split_once('E') {
        Some((m, e)) => {
            let (sign, e) = match e.strip_prefix('-') {
                Some(e) => ('-', e),
                None => ('+', e),
            };
            format!("{m}E{sign}{e:0>2}")
        }
        None => s,
    }
}

fn line(w: &mut dyn Write, s: &str) -> Result<()> {
    writeln!(w, "{s}")?;
    Ok(())
}

/// Runs `req`, writing progress and the accuracy table to `log`.
pub fn run(req: &RunRequest, log: &mut dyn Write) -> Result<RunSummary> {
    if req.functions.is_empty() {
        return Err(Error::Domain("no Green's functions requested".into()));
    }
    let consts = PhysicalConstants::new(req.c)?;
    let mut targets = Vec::with_capacity(req.functions.len());
    for f in &req.functions {
        let e = convert_energy(f.energy, req.unit);
        if !(e < 0.0) {
            return Err(Error::Domain(format!(
                "energy {} {} is not negative",
                f.energy,
                req.unit
            )));
        }
        targets.push((e, parse_symmetry(&f.symmetry)?));
    }
    let (charge, grid) = prepare(req)?;
    if let Some(p) = &req.save_pot {
        write_pot(p, &charge, grid.r_max())?;
    }
    let pw = linearize(&charge, &grid)?;
    let unit = req.unit.to_string();

    line(log, "  Generation of radial Green's functions")?;
    line(log, "")?;
    line(log, &format!("     i     E ({unit:>9})    j     overall progress"))?;
    line(log, "  ---------------------------------------------------")?;
    let total = targets.len();
    let mut built: Vec<GreensFunction> = Vec::with_capacity(total);
    for (i, (&(e, kappa), f)) in targets.iter().zip(&req.functions).enumerate() {
        let gf = build_greens(e, kappa, &pw, &consts).map_err(|err| Error::Request {
            energy: e,
            label: symmetry_label(kappa),
            source: Box::new(err),
        })?;
        built.push(gf);
        let pct = (100 * (i + 1)) / total;
        line(
            log,
            &format!("  {:>4}    {:>14}    {:<4}   {:>5}%", i + 1, sci(f.energy, 7), symmetry_label(kappa), pct),
        )?;
    }
    line(log, "")?;

    let mut reports = Vec::new();
    let mut passed = true;
    if req.check {
        line(log, "  Tests on the accuracy of the Green's functions by means of overlap and normalization integrals:")?;
        line(log, "")?;
        line(log, "                                      Overlap integrals          Normalization")?;
        line(log, &format!("     i     E ({unit:>9})   nj  <nj (Greens) | nj (oracle)>      ||nj (Greens)||"))?;
        line(log, "  -------------------------------------------------------------------------------")?;
        for (i, (gf, f)) in built.iter().zip(&req.functions).enumerate() {
            let rep = accuracy_report(gf).map_err(|err| Error::Request {
                energy: gf.energy,
                label: symmetry_label(gf.kappa),
                source: Box::new(err),
            })?;
            for o in &rep.orbitals {
                let nj = format!("{}{}", o.n, symmetry_label(o.kappa));
                line(
                    log,
                    &format!(
                        "  {:>4}    {:>14}   {:<4}        {}              {}",
                        i + 1,
                        sci(f.energy, 7),
                        nj,
                        sci(o.overlap, 6),
                        sci(o.normalization, 6)
                    ),
                )?;
            }
            if !(rep.max_overlap_deviation() <= req.check_threshold) {
                passed = false;
            }
            reports.push(rep);
        }
        line(log, "  -------------------------------------------------------------------------------")?;
        line(log, "")?;
    }

    let file = RgfFile {
        interpolation_mode: 1,
        grid: Some((grid.rnt(), grid.h(), grid.n())),
        functions: built
            .iter()
            .map(|gf| RgfFunction::from_greens(gf, gf.tabulate()))
            .collect(),
    };
    write_rgf(&req.out, &file)?;
    let bytes = std::fs::metadata(&req.out)?.len();
    line(log, " Write the Green's functions to the .rgf file;")?;
    line(log, &format!("  {} radial Green's functions with {} bytes ...", total, bytes))?;
    if !passed {
        line(
            log,
            &format!(" overlap deviation above {:e} in at least one test", req.check_threshold),
        )?;
    }
    Ok(RunSummary {
        functions: total,
        mtp: grid.mtp(),
        bytes,
        reports,
        passed,
    })
}
