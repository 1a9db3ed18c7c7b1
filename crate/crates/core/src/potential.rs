//! Effective nuclear charge `Z(r)` (the potential is `-Z(r)/r`), its
//! reduction to straight lines on the grid intervals, and the validity
//! checks those lines must pass at a given energy.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::greens::PhysicalConstants;

#[derive(Clone, Debug, PartialEq)]
pub enum ChargeSpec {
    Coulomb(f64),
    /// Node values of `Z`, linearly interpolated between nodes.
    Tabulated { r: Vec<f64>, z: Vec<f64> },
}

pub fn coulomb_charge(zeff: f64) -> Result<ChargeSpec> {
    let c = PhysicalConstants::default().c;
    if !(zeff > 0.0 && zeff < c) {
        return Err(Error::Potential(format!(
            "Coulomb charge must lie in (0, {c}), got {zeff}"
        )));
    }
    Ok(ChargeSpec::Coulomb(zeff))
}

/// Validates a tabulated charge and wraps it.
pub fn tabulated_charge(r: Vec<f64>, z: Vec<f64>) -> Result<ChargeSpec> {
    if r.len() != z.len() {
        return Err(Error::Potential(format!(
            "{} radii but {} charges",
            r.len(),
            z.len()
        )));
    }
    if r.len() < 2 {
        return Err(Error::Potential("a charge table needs at least two points".into()));
    }
    if r.iter().chain(&z).any(|v| !v.is_finite()) {
        return Err(Error::Potential("non-finite entry in charge table".into()));
    }
    if r[0] != 0.0 {
        return Err(Error::Potential(format!("radii must start at 0, first is {}", r[0])));
    }
    if let Some(k) = r.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::Potential(format!(
            "radii not strictly increasing at entry {}",
            k + 2
        )));
    }
    if z[0] <= 0.0 {
        return Err(Error::Potential(format!(
            "Z(0) = {} must be a positive point-nucleus charge",
            z[0]
        )));
    }
    let last = z[z.len() - 1];
    if last < 0.0 {
        return Err(Error::Potential(format!(
            "boundary condition violated: Z(r_max) = {last} is negative"
        )));
    }
    Ok(ChargeSpec::Tabulated { r, z })
}

pub fn load_pot(path: &std::path::Path) -> Result<ChargeSpec> {
    crate::io::read_pot(path)
}

impl ChargeSpec {
    /// `Z(r)`; `None` beyond the last tabulated radius, allowing for the
    /// rounding of a printed radius.
    pub fn eval(&self, x: f64) -> Option<f64> {
        match self {
            ChargeSpec::Coulomb(z) => Some(*z),
            ChargeSpec::Tabulated { r, z } => {
                let n = r.len();
                if !(x >= 0.0 && x <= r[n - 1] * (1.0 + 1e-14)) {
                    return None;
                }
                if x >= r[n - 1] {
                    return Some(z[n - 1]);
                }
                let k = r.partition_point(|&v| v <= x).clamp(1, n - 1) - 1;
                if x == r[k] {
                    return Some(z[k]);
                }
                let th = (x - r[k]) / (r[k + 1] - r[k]);
                Some(z[k] + th * (z[k + 1] - z[k]))
            }
        }
    }

    pub fn r_max(&self) -> Option<f64> {
        match self {
            ChargeSpec::Coulomb(_) => None,
            ChargeSpec::Tabulated { r, .. } => r.last().copied(),
        }
    }

    /// `Z(0)`.
    pub fn z_nuc(&self) -> f64 {
        match self {
            ChargeSpec::Coulomb(z) => *z,
            ChargeSpec::Tabulated { z, .. } => z[0],
        }
    }
}

/// `Z(r) = z0[i] + z1[i] r` on `[r_i, r_{i+1}]`, `i < mtp - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseCharge {
    pub z0: Vec<f64>,
    pub z1: Vec<f64>,
    /// `Z` at the nodes `r[0..mtp]`.
    pub nodes: Vec<f64>,
    pub grid: RadialGrid,
}

pub fn linearize(charge: &ChargeSpec, grid: &RadialGrid) -> Result<PiecewiseCharge> {
    let r = grid.r();
    let m = r.len();
    if let ChargeSpec::Coulomb(z) = charge {
        return Ok(PiecewiseCharge {
            z0: vec![*z; m - 1],
            z1: vec![0.0; m - 1],
            nodes: vec![*z; m],
            grid: grid.clone(),
        });
    }
    let nodes = r
        .iter()
        .map(|&x| {
            charge.eval(x).ok_or_else(|| {
                Error::Domain(format!(
                    "charge table ends at r = {}, grid tabulates up to {}",
                    charge.r_max().unwrap_or(f64::NAN),
                    grid.r_max()
                ))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut z0 = Vec::with_capacity(m - 1);
    let mut z1 = Vec::with_capacity(m - 1);
    for i in 0..m - 1 {
        let slope = (nodes[i + 1] - nodes[i]) / (r[i + 1] - r[i]);
        z1.push(slope);
        z0.push(nodes[i] - slope * r[i]);
    }
    Ok(PiecewiseCharge {
        z0,
        z1,
        nodes,
        grid: grid.clone(),
    })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    /// Intervals with `z1 >= |E|`.
    pub slope_violations: Vec<usize>,
    /// Intervals with `E + z1` outside `(-2c^2, 0)`.
    pub energy_violations: Vec<usize>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.slope_violations.is_empty() && self.energy_violations.is_empty()
    }
}

impl PiecewiseCharge {
    pub fn intervals(&self) -> usize {
        self.z0.len()
    }

    /// `Z(r)` from the straight lines.
    pub fn eval(&self, r: f64) -> Result<f64> {
        let k = self.grid.bracket(r)?;
        if r == self.grid.r()[k] {
            return Ok(self.nodes[k]);
        }
        Ok(self.z0[k] + self.z1[k] * r)
    }

    pub fn is_constant(&self) -> bool {
        let z = self.z0[0];
        self.z1.iter().all(|&s| s == 0.0) && self.z0.iter().all(|&v| v == z)
    }

    pub fn validate_for_energy(&self, energy: f64, consts: &PhysicalConstants) -> ValidationReport {
        let two_c2 = 2.0 * consts.c * consts.c;
        let mut rep = ValidationReport::default();
        for (i, &s) in self.z1.iter().enumerate() {
            if !(s < energy.abs()) {
                rep.slope_violations.push(i);
            }
            let shifted = energy + s;
            if !(shifted < 0.0 && shifted > -two_c2) {
                rep.energy_violations.push(i);
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> RadialGrid {
        let mut g = RadialGrid::standard();
        g.truncate_at(5.0).unwrap();
        g
    }

    #[test]
    fn coulomb_range() {
        assert_eq!(coulomb_charge(79.0).unwrap(), ChargeSpec::Coulomb(79.0));
        assert!(coulomb_charge(1.0).is_ok());
        assert!(coulomb_charge(137.5).is_err());
        assert!(coulomb_charge(0.0).is_err());
    }

    #[test]
    fn coulomb_lines_are_exact() {
        let g = RadialGrid::standard();
        let pw = linearize(&ChargeSpec::Coulomb(79.0), &g).unwrap();
        assert_eq!(pw.intervals(), g.mtp() - 1);
        assert!(pw.z0.iter().all(|&z| z == 79.0));
        assert!(pw.z1.iter().all(|&z| z == 0.0));
        assert!(pw.is_constant());
    }

    #[test]
    fn straight_line_charge() {
        let g = small_grid();
        let r = vec![0.0, 5.0];
        let z = vec![79.0, 29.0];
        let pw = linearize(&tabulated_charge(r, z).unwrap(), &g).unwrap();
        for i in 0..pw.intervals() {
            assert!((pw.z0[i] - 79.0).abs() < 1e-12, "{i} {}", pw.z0[i]);
            assert!((pw.z1[i] + 10.0).abs() < 1e-9);
        }
        assert!(!pw.is_constant());
    }

    #[test]
    fn lines_reproduce_node_values() {
        let g = small_grid();
        let r: Vec<f64> = (0..60).map(|k| k as f64 * 0.1).collect();
        let z: Vec<f64> = r.iter().map(|x| 1.0 + 78.0 * (-x * 3.0).exp()).collect();
        let spec = tabulated_charge(r, z).unwrap();
        let pw = linearize(&spec, &g).unwrap();
        for (i, &x) in g.r().iter().enumerate() {
            let want = spec.eval(x).unwrap();
            assert_eq!(pw.nodes[i], want);
            if i + 1 < g.mtp() {
                assert!((pw.z0[i] + pw.z1[i] * x - want).abs() < 1e-12);
            }
            if i > 0 {
                let j = i - 1;
                assert!((pw.z0[j] + pw.z1[j] * x - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn table_validation() {
        assert!(tabulated_charge(vec![0.0, 10.0], vec![1.0, 1.0]).is_ok());
        let e = tabulated_charge(vec![0.0, 10.0], vec![1.0, -0.5]).unwrap_err();
        assert!(e.to_string().contains("boundary condition"));
        assert!(tabulated_charge(vec![0.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]).is_err());
        assert!(tabulated_charge(vec![0.1, 1.0], vec![1.0, 1.0]).is_err());
        assert!(tabulated_charge(vec![0.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn coverage_gap_is_an_error() {
        let g = small_grid();
        let spec = tabulated_charge(vec![0.0, 2.0], vec![3.0, 1.0]).unwrap();
        assert!(matches!(linearize(&spec, &g), Err(Error::Domain(_))));
    }

    #[test]
    fn energy_validation() {
        let consts = PhysicalConstants::default();
        let g = RadialGrid::standard();
        let mut pw = linearize(&ChargeSpec::Coulomb(79.0), &g).unwrap();
        assert!(pw.validate_for_energy(-367.5, &consts).is_ok());
        pw.z1[17] = 400.0;
        let rep = pw.validate_for_energy(-367.5, &consts);
        assert_eq!(rep.slope_violations, vec![17]);
        let c2 = consts.c * consts.c;
        pw.z1[17] = 0.0;
        let rep = pw.validate_for_energy(-2.0 * c2 - 1.0, &consts);
        assert_eq!(rep.energy_violations.len(), pw.intervals());
    }
}
