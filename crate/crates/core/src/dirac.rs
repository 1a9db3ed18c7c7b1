//! Bound states of the radial Dirac equation in a piecewise-linear charge,
//! used to check Green's functions independently of their construction.
//!
//! Outward integration starts from a power series at the first non-zero
//! node, inward integration from a decaying start well beyond the classical
//! turning point; both use RK4 in `x = ln(1 + r/rnt)` with several substeps
//! per grid interval. The energy is located by node counting, then by
//! bisection on the mismatch of `Q/P` at the matching node.

use crate::error::{Error, Result};
use crate::greens::PhysicalConstants;
use crate::potential::PiecewiseCharge;

/// Largest RK4 substep in the logarithmic variable.
const MAX_SUBSTEP: f64 = 0.004;
/// Largest RK4 substep times the local rate of change.
const MAX_RATE_STEP: f64 = 0.1;
const MAX_SUBSTEPS: usize = 100_000;
/// `q (r - r_tp)` at which the inward integration starts.
const DECAY_START: f64 = 40.0;
/// Below this the orbital is considered not decayed inside the grid.
const DECAY_MIN: f64 = 15.0;
const ENERGY_RTOL: f64 = 1e-13;
const RESCALE: f64 = 1e150;

#[derive(Clone, Debug, PartialEq)]
pub struct RadialOrbital {
    pub n: u32,
    pub kappa: i32,
    pub energy: f64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

pub fn orbital_l(kappa: i32) -> u32 {
    if kappa < 0 {
        (-kappa - 1) as u32
    } else {
        kappa as u32
    }
}

fn sign_changes(v: &[f64]) -> usize {
    let mut last = 0.0;
    let mut count = 0;
    for &x in v {
        if x != 0.0 {
            if last != 0.0 && (x > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = x;
        }
    }
    count
}

impl RadialOrbital {
    pub fn interior_nodes(&self) -> usize {
        sign_changes(&self.p)
    }
}

/// Dirac point-Coulomb eigenvalue without the rest energy.
pub fn sommerfeld_energy(z: f64, n: u32, kappa: i32, consts: &PhysicalConstants) -> Result<f64> {
    let k = kappa.unsigned_abs();
    if kappa == 0 || n < k || (kappa > 0 && n == k) {
        return Err(Error::Domain(format!("no Dirac state with n = {n}, kappa = {kappa}")));
    }
    let az = consts.alpha * z;
    let kf = k as f64;
    if !(az.abs() < kf) {
        return Err(Error::Domain(format!("supercritical charge: alpha Z = {az} >= |kappa| = {k}")));
    }
    let x = az / ((n - k) as f64 + ((kf - az) * (kf + az)).sqrt());
    let root = (1.0 + x * x).sqrt();
    // [1 + x^2]^{-1/2} - 1 without cancellation
    Ok(-consts.c * consts.c * x * x / (root * (1.0 + root)))
}

struct Ode<'a> {
    pw: &'a PiecewiseCharge,
    e: f64,
    k: f64,
    a: f64,
    rnt: f64,
    h: f64,
    /// Minimum number of substeps per interval.
    nsub: usize,
}

impl Ode<'_> {
    fn deriv(&self, i: usize, x: f64, y: [f64; 2]) -> [f64; 2] {
        let r = self.rnt * x.exp_m1();
        let jac = r + self.rnt;
        let zr = self.pw.z0[i] / r + self.pw.z1[i];
        let d = 2.0 / self.a + self.a * (zr + self.e);
        [
            jac * (-self.k * y[0] / r + d * y[1]),
            jac * (self.k * y[1] / r - self.a * (self.e + zr) * y[0]),
        ]
    }

    /// Local rate `|d ln y / dx|` of the solutions at node `j`, seen from interval `i`.
    fn rate(&self, i: usize, j: usize) -> f64 {
        let r = self.pw.grid.r()[j];
        let zr = self.pw.z0[i] / r + self.pw.z1[i];
        let d = 2.0 / self.a + self.a * (zr + self.e);
        (r + self.rnt) * (self.k * self.k / (r * r) - d * self.a * (self.e + zr)).abs().sqrt()
    }

    /// From node `from` to the adjacent node `to` across interval `min(from, to)`.
    fn step(&self, from: usize, to: usize, y: [f64; 2]) -> [f64; 2] {
        let i = from.min(to);
        let lam = self.rate(i, i).max(self.rate(i, i + 1));
        let nsub = ((self.h * lam / MAX_RATE_STEP).ceil() as usize).clamp(self.nsub, MAX_SUBSTEPS);
        let dx = (to as f64 - from as f64) * self.h / nsub as f64;
        let mut x = from as f64 * self.h;
        let mut y = y;
        let add = |y: [f64; 2], k: [f64; 2], s: f64| [y[0] + s * k[0], y[1] + s * k[1]];
        for _ in 0..nsub {
            let k1 = self.deriv(i, x, y);
            let k2 = self.deriv(i, x + 0.5 * dx, add(y, k1, 0.5 * dx));
            let k3 = self.deriv(i, x + 0.5 * dx, add(y, k2, 0.5 * dx));
            let k4 = self.deriv(i, x + dx, add(y, k3, dx));
            for c in 0..2 {
                y[c] += dx / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            x += dx;
        }
        y
    }

    /// Power-series solution `r^s sum (p_k, q_k) r^k` at `r`, `p_0 = 1`.
    fn series(&self, r: f64) -> [f64; 2] {
        let (z0, ez) = (self.pw.z0[0], self.e + self.pw.z1[0]);
        let (a, k) = (self.a, self.k);
        let az = a * z0;
        let s = ((k - az) * (k + az)).sqrt();
        let (mut p, mut q) = (1.0, if k < 0.0 { -az / (s - k) } else { (s + k) / az });
        let (mut sp, mut sq) = (p, q);
        let mut rk = 1.0;
        for n in 1..60 {
            let nf = n as f64;
            let lhs_a = (2.0 / a + a * ez) * q;
            let lhs_b = -a * ez * p;
            let det = nf * (2.0 * s + nf);
            let pn = (lhs_a * (s + nf - k) + az * lhs_b) / det;
            let qn = ((s + nf + k) * lhs_b - az * lhs_a) / det;
            p = pn;
            q = qn;
            rk *= r;
            sp += p * rk;
            sq += q * rk;
            if (p * rk).abs() <= 1e-18 * sp.abs() && (q * rk).abs() <= 1e-18 * sq.abs() {
                break;
            }
        }
        let rs = r.powf(s);
        [sp * rs, sq * rs]
    }
}

/// Matching layout for one energy.
#[derive(Clone, Copy, Debug)]
struct Layout {
    jm: usize,
    jinf: usize,
    decay: f64,
}

fn layout(pw: &PiecewiseCharge, e: f64, consts: &PhysicalConstants) -> Layout {
    let r = pw.grid.r();
    let m = r.len();
    let tp = (1..m).rev().find(|&j| e + pw.nodes[j] / r[j] > 0.0).unwrap_or(1);
    let q = (-e * (e * consts.alpha * consts.alpha + 2.0)).max(0.0).sqrt();
    let jinf = (tp + 1..m).find(|&j| q * (r[j] - r[tp]) >= DECAY_START).unwrap_or(m - 1);
    let jm = tp.clamp(10.min(jinf.saturating_sub(2)), jinf.saturating_sub(2).max(1));
    Layout {
        jm,
        jinf,
        decay: q * (r[jinf] - r[tp]),
    }
}

struct Shot {
    p: Vec<f64>,
    q: Vec<f64>,
    /// `Q/P` from the outward and inward sides at the matching node.
    defect: f64,
    nodes: usize,
}

fn shoot(ode: &Ode, lay: Layout, m: usize) -> Shot {
    let r = ode.pw.grid.r();
    let mut p = vec![0.0; m];
    let mut q = vec![0.0; m];
    let y = ode.series(r[1]);
    p[1] = y[0];
    q[1] = y[1];
    for j in 1..lay.jm {
        let y = ode.step(j, j + 1, [p[j], q[j]]);
        p[j + 1] = y[0];
        q[j + 1] = y[1];
        if y[0].abs() > RESCALE {
            for v in p[..=j + 1].iter_mut().chain(q[..=j + 1].iter_mut()) {
                *v /= RESCALE;
            }
        }
    }
    let (pm, qm) = (p[lay.jm], q[lay.jm]);

    let ri = r[lay.jinf];
    let zr = ode.pw.nodes[lay.jinf] / ri;
    let d = 2.0 / ode.a + ode.a * (zr + ode.e);
    let lam = (ode.k * ode.k / (ri * ri) - d * ode.a * (ode.e + zr)).max(0.0).sqrt();
    let mut ip = vec![0.0; m];
    let mut iq = vec![0.0; m];
    ip[lay.jinf] = 1.0;
    iq[lay.jinf] = (ode.k / ri - lam) / d;
    for j in (lay.jm + 1..=lay.jinf).rev() {
        let y = ode.step(j, j - 1, [ip[j], iq[j]]);
        ip[j - 1] = y[0];
        iq[j - 1] = y[1];
        if y[0].abs() > RESCALE {
            for v in ip[j - 1..].iter_mut().chain(iq[j - 1..].iter_mut()) {
                *v /= RESCALE;
            }
        }
    }
    let defect = qm / pm - iq[lay.jm] / ip[lay.jm];
    let scale = pm / ip[lay.jm];
    for j in lay.jm + 1..=lay.jinf {
        p[j] = ip[j] * scale;
        q[j] = iq[j] * scale;
    }
    let nodes = sign_changes(&p[1..=lay.jinf]);
    Shot { p, q, defect, nodes }
}

/// Bisection for the lowest energy in `(lo, hi)` at which `pred` holds,
/// assuming it is monotone.
fn bisect(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= ENERGY_RTOL * hi.abs().max(lo.abs()) {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn solve_bound(pw: &PiecewiseCharge, kappa: i32, n: u32, consts: &PhysicalConstants) -> Result<RadialOrbital> {
    let l = orbital_l(kappa);
    if kappa == 0 || n < l + 1 {
        return Err(Error::Domain(format!("no state with n = {n}, kappa = {kappa}")));
    }
    let nr = (n - l - 1) as usize;
    let g = &pw.grid;
    let m = g.mtp();
    let nsub = ((g.h() / MAX_SUBSTEP).ceil() as usize).max(1);
    let ode = |e: f64| Ode {
        pw,
        e,
        k: kappa as f64,
        a: consts.alpha,
        rnt: g.rnt(),
        h: g.h(),
        nsub,
    };
    let count = |e: f64, lay: Option<Layout>| {
        let lay = lay.unwrap_or_else(|| layout(pw, e, consts));
        shoot(&ode(e), lay, m).nodes
    };

    let zmax = pw.nodes.iter().cloned().fold(0.0, f64::max);
    let k = kappa.unsigned_abs();
    let n_low = if kappa > 0 { k + 1 } else { k };
    let c2 = consts.c * consts.c;
    let mut lo = (1.5 * sommerfeld_energy(zmax, n_low, kappa, consts)?).max(-1.99 * c2);
    while count(lo, None) > nr {
        if lo <= -1.98 * c2 {
            return Err(Error::StateNotFound(format!("no energy with at most {nr} nodes for kappa = {kappa}")));
        }
        lo = (2.0 * lo).max(-1.99 * c2);
    }
    let hi = -1e-12;
    if count(hi, None) <= nr {
        return Err(Error::StateNotFound(format!(
            "n = {n}, kappa = {kappa} is not bound within the grid"
        )));
    }

    // Coarse window with the matching node following the energy, then a
    // refined window with it fixed so that the defect is continuous.
    let top = bisect(lo, hi, |e| count(e, None) > nr);
    let bottom = if nr == 0 { lo } else { bisect(lo, top, |e| count(e, None) >= nr) };
    let lay = layout(pw, 0.5 * (bottom + top), consts);
    let top = bisect(bottom.min(lo), hi, |e| count(e, Some(lay)) > nr);
    let bottom = if nr == 0 { lo } else { bisect(lo, top, |e| count(e, Some(lay)) >= nr) };

    let width = top - bottom;
    let mut a = bottom + 1e-9 * width;
    let mut b = top - 1e-9 * width;
    let f = |e: f64| shoot(&ode(e), lay, m).defect;
    let (fa, fb) = (f(a), f(b));
    if !(fa * fb < 0.0) {
        return Err(Error::StateNotFound(format!(
            "matching defect does not change sign for n = {n}, kappa = {kappa} in [{a}, {b}]"
        )));
    }
    let sa = fa > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || (b - a) <= ENERGY_RTOL * mid.abs() {
            break;
        }
        if (f(mid) > 0.0) == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    let energy = 0.5 * (a + b);
    let lay_e = layout(pw, energy, consts);
    if lay.jinf == m - 1 && lay_e.decay < DECAY_MIN {
        return Err(Error::Domain(format!(
            "orbital n = {n}, kappa = {kappa} has not decayed by r = {}; use a larger grid",
            g.r_max()
        )));
    }
    let shot = shoot(&ode(energy), lay, m);
    let (mut p, mut q) = (shot.p, shot.q);
    let dens: Vec<f64> = p.iter().zip(&q).map(|(a, b)| a * a + b * b).collect();
    let norm = g.integrate(&dens)?.sqrt();
    let sign = if p[1] < 0.0 { -1.0 } else { 1.0 };
    for v in p.iter_mut().chain(q.iter_mut()) {
        *v *= sign / norm;
    }
    let orb = RadialOrbital {
        n,
        kappa,
        energy,
        p,
        q,
    };
    if orb.interior_nodes() != nr {
        return Err(Error::StateNotFound(format!(
            "converged solution for n = {n}, kappa = {kappa} has {} nodes, expected {nr}",
            orb.interior_nodes()
        )));
    }
    Ok(orb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grid, RadialGrid, DEFAULT_H, DEFAULT_RNT};
    use crate::potential::{linearize, ChargeSpec};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn fine_grid() -> RadialGrid {
        build_grid(DEFAULT_RNT, 0.5 * DEFAULT_H, 780).unwrap()
    }

    #[test]
    fn sommerfeld_values() {
        let c = PhysicalConstants::default();
        let e = sommerfeld_energy(1.0, 1, -1, &c).unwrap();
        assert!(rel(e, -0.500_006_656_6) < 1e-9);
        // -Z^2/2n^2 - Z^4 alpha^2 / (2 n^3) (n/|kappa| - 3/4)
        let a2 = c.alpha * c.alpha;
        assert!((e - (-0.5 - 0.5 * a2 * 0.25)).abs() < 1e-9);
        assert!(sommerfeld_energy(1e-6, 1, -1, &c).unwrap() < 0.0);
        assert!(sommerfeld_energy(1e-6, 1, -1, &c).unwrap() > -1e-12);
        assert_eq!(sommerfeld_energy(79.0, 2, 1, &c).unwrap(), sommerfeld_energy(79.0, 2, -1, &c).unwrap());
        assert!(sommerfeld_energy(140.0, 1, -1, &c).is_err());
        assert!(sommerfeld_energy(1.0, 1, 1, &c).is_err());
    }

    #[test]
    fn hydrogen_levels() {
        let c = PhysicalConstants::default();
        let g = fine_grid();
        let pw = linearize(&ChargeSpec::Coulomb(1.0), &g).unwrap();
        let s1 = solve_bound(&pw, -1, 1, &c).unwrap();
        assert!(rel(s1.energy, sommerfeld_energy(1.0, 1, -1, &c).unwrap()) < 1e-8);
        assert_eq!(s1.interior_nodes(), 0);
        let s2 = solve_bound(&pw, -1, 2, &c).unwrap();
        assert_eq!(s2.interior_nodes(), 1);
        let ovl: Vec<f64> = (0..g.mtp()).map(|i| s1.p[i] * s2.p[i] + s1.q[i] * s2.q[i]).collect();
        assert!(g.integrate(&ovl).unwrap().abs() < 1e-6);
        let pmax = s1.p.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let qmax = s1.q.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        assert!(qmax / pmax < 0.02);
    }

    #[test]
    fn gold_ground_state() {
        let c = PhysicalConstants::default();
        let pw = linearize(&ChargeSpec::Coulomb(79.0), &fine_grid()).unwrap();
        let s = solve_bound(&pw, -1, 1, &c).unwrap();
        let want = sommerfeld_energy(79.0, 1, -1, &c).unwrap();
        assert!((want + 3434.6).abs() < 0.1);
        assert!(rel(s.energy, want) < 1e-8, "{} vs {want}", s.energy);
    }

    #[test]
    fn rejects_impossible_states() {
        let c = PhysicalConstants::default();
        let pw = linearize(&ChargeSpec::Coulomb(1.0), &RadialGrid::standard()).unwrap();
        assert!(solve_bound(&pw, 1, 1, &c).is_err());
        assert!(solve_bound(&pw, 0, 1, &c).is_err());
    }
}
