//! Text formats, units and symmetry labels.

mod pot;
mod rgf;

pub use pot::{read_pot, write_pot, POT_SIGNATURE};
pub use rgf::{read_rgf, write_rgf, RgfFile, RgfFunction, RGF_SIGNATURE};

use crate::error::{Error, Result};
use std::str::FromStr;

/// eV per Hartree.
pub const HARTREE_EV: f64 = 27.211_396_1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyUnit {
    EV,
    Hartree,
}

impl FromStr for EnergyUnit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ev" => Ok(EnergyUnit::EV),
            "hartree" | "au" | "a.u." => Ok(EnergyUnit::Hartree),
            _ => Err(Error::Parse(format!("unknown energy unit {s:?} (expected eV or Hartree)"))),
        }
    }
}

impl std::fmt::Display for EnergyUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            EnergyUnit::EV => "eV",
            EnergyUnit::Hartree => "Hartree",
        })
    }
}

/// Energy in Hartree.
pub fn convert_energy(value: f64, unit: EnergyUnit) -> f64 {
    match unit {
        EnergyUnit::EV => value / HARTREE_EV,
        EnergyUnit::Hartree => value,
    }
}

const SYMMETRIES: [(&str, i32); 9] = [
    ("s", -1),
    ("p-", 1),
    ("p", -2),
    ("d-", 2),
    ("d", -3),
    ("f-", 3),
    ("f", -4),
    ("g-", 4),
    ("g", -5),
];

pub fn parse_symmetry(label: &str) -> Result<i32> {
    let l = label.trim();
    SYMMETRIES
        .iter()
        .find(|(s, _)| *s == l)
        .map(|&(_, k)| k)
        .ok_or_else(|| {
            let valid: Vec<&str> = SYMMETRIES.iter().map(|(s, _)| *s).collect();
            Error::Parse(format!("unknown symmetry {label:?}; valid labels are {}", valid.join(", ")))
        })
}

pub fn symmetry_label(kappa: i32) -> String {
    match SYMMETRIES.iter().find(|&&(_, k)| k == kappa) {
        Some((s, _)) => s.to_string(),
        None => format!("kappa={kappa}"),
    }
}

/// `(n, kappa)` from an orbital label such as `2p-`.
pub fn parse_orbital(label: &str) -> Result<(u32, i32)> {
    let l = label.trim();
    let split = l.find(|c: char| !c.is_ascii_digit()).unwrap_or(l.len());
    let n = l[..split]
        .parse()
        .map_err(|_| Error::Parse(format!("orbital label {label:?} must start with n, e.g. 2p-")))?;
    Ok((n, parse_symmetry(&l[split..])?))
}
