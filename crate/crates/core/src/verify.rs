//! Accuracy checks of a Green's function against bound orbitals of the same
//! potential: reconstruction of an orbital by projection, the overlap and
//! normalization integrals, and the slope jump on the diagonal.
//!
//! With `g` the Green's function at `E` and `(P, Q)` a bound state at `E_n`,
//!
//! ```text
//! P~(r') = (E_n - E) ∫ (P gLL + Q gSL)(r, r') dr
//! Q~(r') = (E_n - E) ∫ (P gLS + Q gSS)(r, r') dr
//! ```
//!
//! reproduces `(P, Q)` exactly. On the grid the integrand has a slope kink
//! at `r = r'`, which limits the plain trapezoid to first order in `h` near
//! the diagonal. [`Quadrature::KinkCorrected`] adds the Euler-Maclaurin end
//! term of both one-sided pieces, computed from the analytic one-sided
//! derivatives of `g` and of the orbital.

use crate::dirac::{orbital_l, solve_bound, RadialOrbital};
use crate::error::{Error, Result};
use crate::greens::{GreensFunction, Tabulation};
use crate::grid::RadialGrid;
use rayon::prelude::*;

/// Smallest `|E_n - E|` accepted by [`project_orbital`].
pub const MIN_ENERGY_GAP: f64 = 1e-6;
/// Number of diagonal points used by [`jump_diagnostic`].
pub const JUMP_POINTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    /// Grid trapezoid on every column.
    Plain,
    /// Grid trapezoid plus the diagonal kink term.
    KinkCorrected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitalCheck {
    pub n: u32,
    pub kappa: i32,
    pub orbital_energy: f64,
    pub overlap: f64,
    pub normalization: f64,
    /// The same integrals with [`Quadrature::Plain`].
    pub overlap_plain: f64,
    pub normalization_plain: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AccuracyReport {
    pub energy: f64,
    pub kappa: i32,
    pub orbitals: Vec<OrbitalCheck>,
    pub jump_max_rel_dev: f64,
    pub wronskian_rel_spread: f64,
}

impl AccuracyReport {
    pub fn max_overlap_deviation(&self) -> f64 {
        self.orbitals.iter().map(|o| (o.overlap - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.jump_max_rel_dev.is_finite()
            && self.wronskian_rel_spread.is_finite()
            && self
                .orbitals
                .iter()
                .all(|o| [o.overlap, o.normalization, o.overlap_plain, o.normalization_plain].iter().all(|x| x.is_finite()))
    }
}

fn check_pair(gf: &GreensFunction, orb: &RadialOrbital) -> Result<()> {
    if orb.kappa != gf.kappa {
        return Err(Error::Domain(format!(
            "orbital kappa {} differs from Green's function kappa {}",
            orb.kappa, gf.kappa
        )));
    }
    if !((orb.energy - gf.energy).abs() > MIN_ENERGY_GAP) {
        return Err(Error::Domain(format!(
            "orbital energy {} is within {MIN_ENERGY_GAP:e} of the Green's function energy {}",
            orb.energy, gf.energy
        )));
    }
    let m = gf.mtp();
    if orb.p.len() != m || orb.q.len() != m {
        return Err(Error::Domain(format!(
            "orbital has {} points, Green's function {}",
            orb.p.len(),
            m
        )));
    }
    Ok(())
}

/// `(P', Q')` of the orbital at node `j` from the Dirac equation.
fn orbital_slope(gf: &GreensFunction, orb: &RadialOrbital, j: usize) -> (f64, f64) {
    let r = gf.grid().r()[j];
    let a = gf.consts.alpha;
    let zr = gf.pw.nodes[j] / r;
    let k = orb.kappa as f64;
    let (p, q) = (orb.p[j], orb.q[j]);
    let d = 2.0 / a + a * (zr + orb.energy);
    (-k * p / r + d * q, k * q / r - a * (orb.energy + zr) * p)
}

/// Euler-Maclaurin kink terms for the `P~` and `Q~` integrands of column
/// `j`, scaled to the grid trapezoid.
fn kink_terms(gf: &GreensFunction, orb: &RadialOrbital, j: usize) -> (f64, f64) {
    let g = gf.grid();
    let m = gf.mtp();
    let (h, r) = (g.h(), g.r()[j]);
    let rx = r + g.rnt();
    let d = gf.diagonal_limits(j);
    let (p, q) = (orb.p[j], orb.q[j]);
    let (pp, qp) = orbital_slope(gf, orb, j);
    // F'(x) = r_x^2 f_r + r_x f for F(x) = f(r(x)) r_x
    let side = |v: [f64; 4], dv: [f64; 4], a: usize, b: usize| {
        let f = p * v[a] + q * v[b];
        let fr = pp * v[a] + p * dv[a] + qp * v[b] + q * dv[b];
        rx * rx * fr + rx * f
    };
    let factor = h.sinh() / h * h * h / 12.0;
    let mut out = [0.0; 2];
    for (o, (a, b)) in out.iter_mut().zip([(0, 2), (1, 3)]) {
        let below = side(d.below, d.below_deriv, a, b);
        let above = if j + 1 < m { side(d.above, d.above_deriv, a, b) } else { 0.0 };
        *o = -factor * (below - above);
    }
    (out[0], out[1])
}

fn project_with(gf: &GreensFunction, t: &Tabulation, orb: &RadialOrbital, quad: Quadrature) -> Result<Projection> {
    check_pair(gf, orb)?;
    let g = gf.grid();
    let m = gf.mtp();
    let de = orb.energy - gf.energy;
    let cols: Vec<(f64, f64)> = (0..m)
        .into_par_iter()
        .map(|j| {
            if j == 0 {
                return Ok((0.0, 0.0));
            }
            let fp: Vec<f64> = (0..m).map(|i| orb.p[i] * t.gll[i * m + j] + orb.q[i] * t.gsl[i * m + j]).collect();
            let fq: Vec<f64> = (0..m).map(|i| orb.p[i] * t.gls[i * m + j] + orb.q[i] * t.gss[i * m + j]).collect();
            let (mut ip, mut iq) = (g.integrate(&fp)?, g.integrate(&fq)?);
            if quad == Quadrature::KinkCorrected {
                let (kp, kq) = kink_terms(gf, orb, j);
                ip += kp;
                iq += kq;
            }
            Ok((de * ip, de * iq))
        })
        .collect::<Result<_>>()?;
    let (p, q) = cols.into_iter().unzip();
    Ok(Projection { p, q })
}

/// Reconstructs `orb` from `gf`.
pub fn project_orbital(gf: &GreensFunction, orb: &RadialOrbital, quad: Quadrature) -> Result<Projection> {
    project_with(gf, &gf.tabulate(), orb, quad)
}

/// `∫ (P~ P + Q~ Q) dr`.
pub fn overlap_integral(orb: &RadialOrbital, proj: &Projection, grid: &RadialGrid) -> Result<f64> {
    let f: Vec<f64> = (0..proj.p.len())
        .map(|i| proj.p[i] * orb.p[i] + proj.q[i] * orb.q[i])
        .collect();
    grid.integrate(&f)
}

/// `∫ (P~² + Q~²) dr`.
pub fn normalization_integral(proj: &Projection, grid: &RadialGrid) -> Result<f64> {
    let f: Vec<f64> = proj.p.iter().zip(&proj.q).map(|(p, q)| p * p + q * q).collect();
    grid.integrate(&f)
}

/// Nodes used by [`jump_diagnostic`]: spread evenly over
/// `0.05/q <= r <= 2/q` with `q` the decay constant at `E`, at least two
/// nodes away from either end of the grid.
pub fn jump_nodes(gf: &GreensFunction) -> Vec<usize> {
    let a = gf.consts.alpha;
    let e = gf.energy;
    let q = (-e * (e * a * a + 2.0)).sqrt();
    let r = gf.grid().r();
    let m = r.len();
    let cand: Vec<usize> = (2..m - 2).filter(|&i| r[i] >= 0.05 / q && r[i] <= 2.0 / q).collect();
    if cand.len() <= JUMP_POINTS {
        return cand;
    }
    let step = (cand.len() - 1) as f64 / (JUMP_POINTS - 1) as f64;
    (0..JUMP_POINTS).map(|k| cand[(k as f64 * step).round() as usize]).collect()
}

/// Largest relative deviation of `gLL` slope jumps, from one-sided
/// three-point differences on the grid, from `α (2/α + α Z(r')/r' + α E)`.
pub fn jump_diagnostic(gf: &GreensFunction) -> f64 {
    let g = gf.grid();
    let r = g.r();
    let h = g.h();
    let a = gf.consts.alpha;
    let m = gf.mtp();
    let fp = &gf.fp;
    let col = |i: usize, j: usize| -> f64 {
        let v = if i <= j { fp.ml[i] * fp.wl[j] } else { fp.wl[i] * fp.ml[j] };
        (gf.norm_c * v).to_f64()
    };
    debug_assert!(m > 4);
    jump_nodes(gf)
        .into_iter()
        .map(|j| {
            let rx = r[j] + g.rnt();
            let left = (3.0 * col(j, j) - 4.0 * col(j - 1, j) + col(j - 2, j)) / (2.0 * h * rx);
            let right = (-3.0 * col(j, j) + 4.0 * col(j + 1, j) - col(j + 2, j)) / (2.0 * h * rx);
            let expect = a * (2.0 / a + a * gf.pw.nodes[j] / r[j] + a * gf.energy);
            ((left - right - expect) / expect).abs()
        })
        .fold(0.0, f64::max)
}

/// The `count` lowest states of `gf.kappa` in the potential of `gf`.
pub fn lowest_orbitals(gf: &GreensFunction, count: u32) -> Result<Vec<RadialOrbital>> {
    let n0 = orbital_l(gf.kappa) + 1;
    (n0..n0 + count)
        .into_par_iter()
        .map(|n| solve_bound(&gf.pw, gf.kappa, n, &gf.consts))
        .collect()
}

/// Overlap and normalization for each orbital, with both quadratures.
pub fn check_orbitals(gf: &GreensFunction, orbitals: &[RadialOrbital]) -> Result<Vec<OrbitalCheck>> {
    let t = gf.tabulate();
    let g = gf.grid();
    orbitals
        .iter()
        .map(|orb| {
            let pc = project_with(gf, &t, orb, Quadrature::KinkCorrected)?;
            let pp = project_with(gf, &t, orb, Quadrature::Plain)?;
            Ok(OrbitalCheck {
                n: orb.n,
                kappa: orb.kappa,
                orbital_energy: orb.energy,
                overlap: overlap_integral(orb, &pc, g)?,
                normalization: normalization_integral(&pc, g)?,
                overlap_plain: overlap_integral(orb, &pp, g)?,
                normalization_plain: normalization_integral(&pp, g)?,
            })
        })
        .collect()
}

/// Full check of one Green's function against the two lowest states of its
/// symmetry.
pub fn accuracy_report(gf: &GreensFunction) -> Result<AccuracyReport> {
    let orbitals = lowest_orbitals(gf, 2)?;
    Ok(AccuracyReport {
        energy: gf.energy,
        kappa: gf.kappa,
        orbitals: check_orbitals(gf, &orbitals)?,
        jump_max_rel_dev: jump_diagnostic(gf),
        wronskian_rel_spread: gf.wronskian_rel_spread,
    })
}
