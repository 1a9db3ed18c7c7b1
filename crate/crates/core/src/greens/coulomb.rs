//! Per-interval Coulomb parameters and the regular / irregular solutions of
//! the radial Dirac equation for `Z(r) = z0 + z1 r`.
//!
//! The constant `z1` shifts the energy, so on each interval the problem is a
//! point-Coulomb one with charge `z0` at energy `E + z1`.

use super::PhysicalConstants;
use crate::error::{Error, Result};
use crate::specfun::{kummer_m_deriv_scaled, kummer_m_scaled, tricomi_u_deriv_scaled, tricomi_u_scaled, Scaled, ScaledResult};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalParams {
    pub s: f64,
    pub t: f64,
    pub q: f64,
    /// `s + kappa`, free of the cancellation that direct subtraction suffers
    /// for `kappa < 0`.
    pub s_plus_kappa: f64,
    pub z0: f64,
    /// `E + z1`.
    pub shifted_energy: f64,
    pub kappa: i32,
    pub alpha: f64,
}

pub fn interval_params(z0: f64, z1: f64, energy: f64, kappa: i32, consts: &PhysicalConstants) -> Result<IntervalParams> {
    let alpha = consts.alpha;
    if kappa == 0 {
        return Err(Error::Domain("kappa must be non-zero".into()));
    }
    let k = kappa as f64;
    let az = alpha * z0;
    if !(az.abs() < k.abs()) {
        return Err(Error::Supercritical {
            interval: 0,
            alpha_z0: az.abs(),
            kappa_abs: kappa.abs(),
        });
    }
    let e = energy + z1;
    let two_c2 = 2.0 / (alpha * alpha);
    if !(e < 0.0 && e > -two_c2) {
        return Err(Error::EnergyRange {
            interval: 0,
            shifted: e,
        });
    }
    let s = ((k - az) * (k + az)).sqrt();
    let s_plus_kappa = if kappa < 0 { -az * az / (s - k) } else { s + k };
    let eps = e * alpha * alpha + 1.0;
    // sqrt(1 - eps^2) = alpha q
    let q = (-e * (e * alpha * alpha + 2.0)).sqrt();
    let t = z0 * eps / q - s;
    Ok(IntervalParams {
        s,
        t,
        q,
        s_plus_kappa,
        z0,
        shifted_energy: e,
        kappa,
        alpha,
    })
}

/// A homogeneous solution at one radius: large component, its derivative,
/// and the small component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionPoint {
    pub value: Scaled,
    pub deriv: Scaled,
    pub small: Scaled,
    /// Largest error estimate of the special-function values used. The
    /// combinations themselves pass through zero at nodes of the solution,
    /// where no relative error bound is meaningful.
    pub est_rel_error: f64,
}

/// Regular and irregular solutions at one radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis {
    pub m: SolutionPoint,
    pub w: SolutionPoint,
}

impl Basis {
    pub fn est_rel_error(&self) -> f64 {
        self.m.est_rel_error.max(self.w.est_rel_error)
    }
}

impl IntervalParams {
    pub fn b(&self) -> f64 {
        2.0 * self.s + 1.0
    }

    /// `2/alpha + alpha (Z(r)/r + E)` for this interval's line.
    pub fn denominator(&self, r: f64) -> f64 {
        2.0 / self.alpha + self.alpha * (self.z0 / r + self.shifted_energy)
    }
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("Coulomb solutions need r > 0, got {r}")));
    }
    Ok(())
}

/// `c1 x + c2 y`, with the larger error estimate of the two evaluations.
fn combine(c1: f64, x: ScaledResult, c2: f64, y: ScaledResult) -> (Scaled, f64) {
    (x.value.mul_f64(c1) + y.value.mul_f64(c2), x.est_rel_error.max(y.est_rel_error))
}

/// Assembles value, derivative and small component from the bracket
/// `B(z)` and `dB/dr`.
fn assemble(p: &IntervalParams, r: f64, pre: Scaled, br: (Scaled, f64), dbr: (Scaled, f64)) -> SolutionPoint {
    let (b, eb) = br;
    let (db, edb) = dbr;
    let deriv = b.mul_f64(p.s / r - p.q) + db;
    let small = b.mul_f64(p.s_plus_kappa / r - p.q) + db;
    SolutionPoint {
        value: pre * b,
        deriv: pre * deriv,
        small: (pre * small).mul_f64(1.0 / p.denominator(r)),
        est_rel_error: eb.max(edb),
    }
}

fn prefactor(p: &IntervalParams, r: f64) -> (Scaled, f64) {
    let qr = p.q * r;
    (Scaled::powf(r, p.s) * Scaled::exp(-qr), 2.0 * qr)
}

/// Solution regular at the origin:
/// `r^s e^{-qr} [t M(1-t, b, 2qr) + (kappa - z0/q) M(-t, b, 2qr)]`.
pub fn coulomb_regular(r: f64, p: &IntervalParams) -> Result<SolutionPoint> {
    check_r(r)?;
    let (pre, z) = prefactor(p, r);
    let (a1, a0, b) = (1.0 - p.t, -p.t, p.b());
    let c = p.kappa as f64 - p.z0 / p.q;
    let br = combine(p.t, kummer_m_scaled(a1, b, z)?, c, kummer_m_scaled(a0, b, z)?);
    let (db, edb) = combine(p.t, kummer_m_deriv_scaled(a1, b, z)?, c, kummer_m_deriv_scaled(a0, b, z)?);
    Ok(assemble(p, r, pre, br, (db.mul_f64(2.0 * p.q), edb)))
}

/// Solution regular at infinity:
/// `r^s e^{-qr} [(kappa + z0/q) U(1-t, b, 2qr) + U(-t, b, 2qr)]`.
pub fn coulomb_irregular(r: f64, p: &IntervalParams) -> Result<SolutionPoint> {
    check_r(r)?;
    let (pre, z) = prefactor(p, r);
    let (a1, a0, b) = (1.0 - p.t, -p.t, p.b());
    let c = p.kappa as f64 + p.z0 / p.q;
    let br = combine(c, tricomi_u_scaled(a1, b, z)?, 1.0, tricomi_u_scaled(a0, b, z)?);
    let (db, edb) = combine(c, tricomi_u_deriv_scaled(a1, b, z)?, 1.0, tricomi_u_deriv_scaled(a0, b, z)?);
    Ok(assemble(p, r, pre, br, (db.mul_f64(2.0 * p.q), edb)))
}

pub fn basis_at(r: f64, p: &IntervalParams) -> Result<Basis> {
    Ok(Basis {
        m: coulomb_regular(r, p)?,
        w: coulomb_irregular(r, p)?,
    })
}

/// Small component of a large-component solution with value `value` and
/// slope `derivative` at `r`, where the charge is `zr`.
pub fn small_from_large(value: f64, derivative: f64, r: f64, zr: f64, energy: f64, kappa: i32, consts: &PhysicalConstants) -> f64 {
    let a = consts.alpha;
    (derivative + kappa as f64 / r * value) / (2.0 / a + a * (zr / r + energy))
}
