//! Radial Green's function of the Dirac equation at a bound-region energy,
//! assembled from one fundamental pair of homogeneous solutions: `M`
//! regular at the origin and `W` regular at infinity, each with large and
//! small components.
//!
//! With `C = alpha / (wL mS - mL wS)`, the components for `r < r'` are
//! `C (mL wL, mL wS, mS wL, mS wS)` evaluated at `(r, r')`, and the
//! transposed assignment for `r > r'`.

mod coulomb;
mod sweep;

pub use coulomb::{basis_at, coulomb_irregular, coulomb_regular, interval_params, small_from_large, Basis, IntervalParams, SolutionPoint};
pub use sweep::{backward_sweep, continuity_residual, forward_sweep, interval_ends, IntervalEnds, Sweep};

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::potential::{linearize, ChargeSpec, PiecewiseCharge};
use crate::specfun::{Scaled, FLAG_REL_ERROR};
use rayon::prelude::*;

pub const DEFAULT_C: f64 = 137.035_989_5;

/// Allowed relative spread of the Wronskian over the nodes.
pub const WRONSKIAN_TOL: f64 = 1e-6;
/// A relative Wronskian below this means `M` and `W` are numerically
/// dependent, i.e. the energy sits on a bound state.
pub const POLE_TOL: f64 = 1e-8;
/// Nodes closer to the origin are excluded from the Wronskian spread.
pub const WRONSKIAN_FIRST_NODE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub alpha: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            c: DEFAULT_C,
            alpha: 1.0 / DEFAULT_C,
        }
    }
}

impl PhysicalConstants {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("speed of light must be positive, got {c}")));
        }
        Ok(PhysicalConstants { c, alpha: 1.0 / c })
    }
}

/// Node tables of the fundamental pair and the interval coefficients that
/// produced them. Index 0 (`r = 0`) holds zeros.
#[derive(Clone, Debug)]
pub struct FundamentalPair {
    pub ml: Vec<Scaled>,
    pub mlp: Vec<Scaled>,
    pub ms: Vec<Scaled>,
    pub wl: Vec<Scaled>,
    pub wlp: Vec<Scaled>,
    pub ws: Vec<Scaled>,
    pub msp: Vec<Scaled>,
    pub wsp: Vec<Scaled>,
    pub fcoef: Vec<[Scaled; 2]>,
    pub gcoef: Vec<[Scaled; 2]>,
}

#[derive(Clone, Debug)]
pub struct GreensFunction {
    pub energy: f64,
    pub kappa: i32,
    pub fp: FundamentalPair,
    pub norm_c: Scaled,
    /// `wL mS - mL wS` at the reference node.
    pub wronskian: Scaled,
    pub reference_node: usize,
    pub wronskian_rel_spread: f64,
    pub continuity_residual: f64,
    /// Largest special-function error estimate met during construction.
    pub specfun_est: f64,
    pub params: Vec<IntervalParams>,
    pub pw: PiecewiseCharge,
    pub consts: PhysicalConstants,
}

/// Components and their `r`-derivatives at `r' = r_j` as `r` approaches
/// `r_j` from below and from above.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalLimits {
    pub below: [f64; 4],
    pub below_deriv: [f64; 4],
    pub above: [f64; 4],
    pub above_deriv: [f64; 4],
}

/// The four components on all node pairs, row-major in `(r, r')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulation {
    pub mtp: usize,
    pub gll: Vec<f64>,
    pub gls: Vec<f64>,
    pub gsl: Vec<f64>,
    pub gss: Vec<f64>,
}

impl Tabulation {
    pub fn at(&self, i: usize, j: usize) -> [f64; 4] {
        let k = i * self.mtp + j;
        [self.gll[k], self.gls[k], self.gsl[k], self.gss[k]]
    }
}

fn check_request(energy: f64, kappa: i32) -> Result<()> {
    if !(energy < 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("energy must be negative, got {energy}")));
    }
    if kappa == 0 {
        return Err(Error::Domain("kappa must be non-zero".into()));
    }
    Ok(())
}

fn all_params(pw: &PiecewiseCharge, energy: f64, kappa: i32, consts: &PhysicalConstants) -> Result<Vec<IntervalParams>> {
    let rep = pw.validate_for_energy(energy, consts);
    if let Some(&i) = rep.energy_violations.first() {
        return Err(Error::EnergyRange {
            interval: i,
            shifted: energy + pw.z1[i],
        });
    }
    if let Some(&i) = rep.slope_violations.first() {
        return Err(Error::Domain(format!(
            "charge slope Z1 = {} on interval {i} is not below |E| = {}",
            pw.z1[i],
            energy.abs()
        ))
        .in_interval(i));
    }
    (0..pw.intervals())
        .map(|i| {
            interval_params(pw.z0[i], pw.z1[i], energy, kappa, consts).map_err(|e| match e {
                Error::Supercritical { alpha_z0, kappa_abs, .. } => Error::Supercritical {
                    interval: i,
                    alpha_z0,
                    kappa_abs,
                },
                Error::EnergyRange { shifted, .. } => Error::EnergyRange { interval: i, shifted },
                e => e.in_interval(i),
            })
        })
        .collect()
}

/// Builds the Green's function for `(energy, kappa)` by matching per-interval
/// Coulomb solutions.
pub fn build_greens(energy: f64, kappa: i32, pw: &PiecewiseCharge, consts: &PhysicalConstants) -> Result<GreensFunction> {
    check_request(energy, kappa)?;
    let params = all_params(pw, energy, kappa, consts)?;
    let ends = interval_ends(&params, &pw.grid)?;
    let fwd = forward_sweep(&ends)?;
    let bwd = backward_sweep(&ends)?;
    let est = ends
        .iter()
        .flat_map(|e| e.left.iter().chain(std::iter::once(&e.right)))
        .map(Basis::est_rel_error)
        .fold(0.0, f64::max);
    let cont = continuity_residual(&ends, &fwd).max(continuity_residual(&ends, &bwd));
    finish(energy, kappa, pw.clone(), consts, params, fwd, bwd, est, cont)
}

/// Pure Coulomb Green's function from a single analytic interval covering
/// the whole grid, with no matching.
pub fn build_greens_single(energy: f64, kappa: i32, zeff: f64, grid: &RadialGrid, consts: &PhysicalConstants) -> Result<GreensFunction> {
    check_request(energy, kappa)?;
    let pw = linearize(&ChargeSpec::Coulomb(zeff), grid)?;
    let p = all_params(&pw, energy, kappa, consts)?[0];
    let r = grid.r();
    let bases = r[1..]
        .par_iter()
        .map(|&x| basis_at(x, &p))
        .collect::<Result<Vec<_>>>()?;
    let m = r.len();
    let table = |pick: fn(&Basis) -> &SolutionPoint| -> Sweep {
        let mut sw = Sweep {
            coef: Vec::new(),
            value: vec![Scaled::ZERO; m],
            deriv: vec![Scaled::ZERO; m],
            small: vec![Scaled::ZERO; m],
        };
        for (k, b) in bases.iter().enumerate() {
            let s = pick(b);
            sw.value[k + 1] = s.value;
            sw.deriv[k + 1] = s.deriv;
            sw.small[k + 1] = s.small;
        }
        sw
    };
    let mut fwd = table(|b| &b.m);
    let mut bwd = table(|b| &b.w);
    fwd.coef = vec![[Scaled::ONE, Scaled::ZERO]];
    bwd.coef = vec![[Scaled::ZERO, Scaled::ONE]];
    let est = bases.iter().map(Basis::est_rel_error).fold(0.0, f64::max);
    finish(energy, kappa, pw, consts, vec![p], fwd, bwd, est, 0.0)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    energy: f64,
    kappa: i32,
    pw: PiecewiseCharge,
    consts: &PhysicalConstants,
    params: Vec<IntervalParams>,
    fwd: Sweep,
    bwd: Sweep,
    specfun_est: f64,
    continuity_residual: f64,
) -> Result<GreensFunction> {
    let r = pw.grid.r();
    let small_deriv = |sw: &Sweep| -> Vec<Scaled> {
        (0..sw.value.len())
            .map(|i| {
                if i == 0 {
                    return Scaled::ZERO;
                }
                let zr = pw.nodes[i] / r[i];
                sw.small[i].mul_f64(kappa as f64 / r[i]) - sw.value[i].mul_f64(consts.alpha * (energy + zr))
            })
            .collect()
    };
    let (msp, wsp) = (small_deriv(&fwd), small_deriv(&bwd));
    let fp = FundamentalPair {
        msp,
        wsp,
        ml: fwd.value,
        mlp: fwd.deriv,
        ms: fwd.small,
        wl: bwd.value,
        wlp: bwd.deriv,
        ws: bwd.small,
        fcoef: fwd.coef,
        gcoef: bwd.coef,
    };
    let m = fp.ml.len();
    let mut worst_rel = f64::INFINITY;
    let mut wr = vec![Scaled::ZERO; m];
    for i in 1..m {
        let a = fp.wl[i] * fp.ms[i];
        let b = fp.ml[i] * fp.ws[i];
        wr[i] = a - b;
        let scale = a.abs() + b.abs();
        if !wr[i].is_finite() || !scale.is_finite() {
            return Err(Error::Accuracy(format!("non-finite Wronskian at node {i}")));
        }
        let rel = if scale.is_zero() { 0.0 } else { (wr[i].abs() / scale).to_f64() };
        worst_rel = worst_rel.min(rel);
    }
    if worst_rel < POLE_TOL {
        return Err(Error::NearPole {
            energy,
            rel_wronskian: worst_rel,
        });
    }
    let k = m / 2;
    let w_ref = wr[k];
    let spread = wr[WRONSKIAN_FIRST_NODE.min(m - 1)..]
        .iter()
        .map(|&w| ((w - w_ref).abs() / w_ref.abs()).to_f64())
        .fold(0.0, f64::max);
    if !(spread <= WRONSKIAN_TOL) {
        return Err(Error::Accuracy(format!(
            "Wronskian varies by {spread:e} across the grid (tolerance {WRONSKIAN_TOL:e}) for E = {energy}, kappa = {kappa}"
        )));
    }
    Ok(GreensFunction {
        energy,
        kappa,
        fp,
        norm_c: Scaled::new(consts.alpha) / w_ref,
        wronskian: w_ref,
        reference_node: k,
        wronskian_rel_spread: spread,
        continuity_residual,
        specfun_est,
        params,
        pw,
        consts: *consts,
    })
}

fn lerp(a: Scaled, b: Scaled, th: f64) -> Scaled {
    a + (b - a).mul_f64(th)
}

impl GreensFunction {
    pub fn grid(&self) -> &RadialGrid {
        &self.pw.grid
    }

    pub fn mtp(&self) -> usize {
        self.fp.ml.len()
    }

    /// Special-function error estimates above the flag threshold.
    pub fn is_flagged(&self) -> bool {
        !(self.specfun_est <= FLAG_REL_ERROR)
    }

    /// `wL mS - mL wS` at node `i >= 1`.
    pub fn wronskian_at(&self, i: usize) -> Scaled {
        let fp = &self.fp;
        fp.wl[i] * fp.ms[i] - fp.ml[i] * fp.ws[i]
    }

    /// One-sided limits at the diagonal node `j >= 1`.
    pub fn diagonal_limits(&self, j: usize) -> DiagonalLimits {
        let fp = &self.fp;
        let c = self.norm_c;
        let f = |v: [Scaled; 4]| v.map(|x| (c * x).to_f64());
        let (ml, ms, wl, ws) = (fp.ml[j], fp.ms[j], fp.wl[j], fp.ws[j]);
        DiagonalLimits {
            below: f([ml * wl, ml * ws, ms * wl, ms * ws]),
            below_deriv: f([fp.mlp[j] * wl, fp.mlp[j] * ws, fp.msp[j] * wl, fp.msp[j] * ws]),
            above: f([wl * ml, wl * ms, ws * ml, ws * ms]),
            above_deriv: f([fp.wlp[j] * ml, fp.wlp[j] * ms, fp.wsp[j] * ml, fp.wsp[j] * ms]),
        }
    }

    /// `(mL, mS, wL, wS)` at `x`: node values, analytic on the first interval,
    /// linear interpolation elsewhere.
    fn pair_at(&self, x: f64) -> Result<[Scaled; 4]> {
        let g = self.grid();
        let k = g.bracket(x)?;
        let r = g.r();
        let fp = &self.fp;
        let node = |i: usize| [fp.ml[i], fp.ms[i], fp.wl[i], fp.ws[i]];
        if x == r[k] {
            return Ok(node(k));
        }
        if x == r[k + 1] {
            return Ok(node(k + 1));
        }
        if k == 0 {
            let b = basis_at(x, &self.params[0])?;
            let (f, h) = (fp.fcoef[0], fp.gcoef[0]);
            return Ok([
                f[0] * b.m.value + f[1] * b.w.value,
                f[0] * b.m.small + f[1] * b.w.small,
                h[0] * b.m.value + h[1] * b.w.value,
                h[0] * b.m.small + h[1] * b.w.small,
            ]);
        }
        let th = (x - r[k]) / (r[k + 1] - r[k]);
        let (a, b) = (node(k), node(k + 1));
        Ok([0, 1, 2, 3].map(|c| lerp(a[c], b[c], th)))
    }

    /// `(gLL, gLS, gSL, gSS)` at `(r, r')`; entries discontinuous across the
    /// diagonal take the two-sided average there.
    pub fn eval_components(&self, r: f64, rp: f64) -> Result<[f64; 4]> {
        let g = self.grid();
        for x in [r, rp] {
            g.bracket(x)?;
        }
        if r == 0.0 || rp == 0.0 {
            return Ok([0.0; 4]);
        }
        let [ml1, ms1, wl1, ws1] = self.pair_at(r)?;
        let [ml2, ms2, wl2, ws2] = self.pair_at(rp)?;
        Ok(assemble(self.norm_c, r.partial_cmp(&rp).unwrap(), [ml1, ms1, wl1, ws1], [ml2, ms2, wl2, ws2]))
    }

    /// All four components on every node pair `(r_i, r_j)`.
    pub fn tabulate(&self) -> Tabulation {
        let m = self.mtp();
        let fp = &self.fp;
        let rows: Vec<[Vec<f64>; 4]> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut row = [vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]];
                if i == 0 {
                    return row;
                }
                let a = [fp.ml[i], fp.ms[i], fp.wl[i], fp.ws[i]];
                for j in 1..m {
                    let b = [fp.ml[j], fp.ms[j], fp.wl[j], fp.ws[j]];
                    let v = assemble(self.norm_c, i.cmp(&j), a, b);
                    for c in 0..4 {
                        row[c][j] = v[c];
                    }
                }
                row
            })
            .collect();
        let mut t = Tabulation {
            mtp: m,
            gll: Vec::with_capacity(m * m),
            gls: Vec::with_capacity(m * m),
            gsl: Vec::with_capacity(m * m),
            gss: Vec::with_capacity(m * m),
        };
        for [a, b, c, d] in rows {
            t.gll.extend(a);
            t.gls.extend(b);
            t.gsl.extend(c);
            t.gss.extend(d);
        }
        t
    }
}

/// Components from the pair values `u = (mL, mS, wL, wS)` at `r` and `v` at `r'`.
fn assemble(c: Scaled, order: std::cmp::Ordering, u: [Scaled; 4], v: [Scaled; 4]) -> [f64; 4] {
    use std::cmp::Ordering::*;
    let [ml1, ms1, wl1, ws1] = u;
    let [ml2, ms2, wl2, ws2] = v;
    let out = match order {
        Less => [ml1 * wl2, ml1 * ws2, ms1 * wl2, ms1 * ws2],
        Greater => [wl1 * ml2, wl1 * ms2, ws1 * ml2, ws1 * ms2],
        Equal => {
            let mixed = (ml1 * ws1 + wl1 * ms1).mul_f64(0.5);
            [ml1 * wl1, mixed, mixed, ms1 * ws1]
        }
    };
    out.map(|x| (c * x).to_f64())
}
