#![allow(dead_code)]

use cfgreens::specfun::{kummer_m_deriv_scaled, kummer_m_scaled, ln_abs_rgamma, log_gamma, tricomi_u_deriv_scaled, tricomi_u_scaled, Scaled};
use proptest::prelude::*;

pub const ALPHA: f64 = 1.0 / 137.035_989_5;

/// `(a, b)` met on a Coulomb interval with charge `z0` at energy `e`:
/// `a = -t + da`, `b = 2s + 1 + db`.
pub fn coulomb_ab(z0: f64, kappa: i32, e: f64, da: u8, db: u8) -> (f64, f64) {
    let k = kappa as f64;
    let s = (k * k - (ALPHA * z0).powi(2)).sqrt();
    let q = (-e * (e * ALPHA * ALPHA + 2.0)).sqrt();
    let eps = e * ALPHA * ALPHA + 1.0;
    let t = z0 * eps / q - s;
    (-t + da as f64, 2.0 * s + 1.0 + db as f64)
}

/// Parameter lattice `(a, b, z)` over the reach of the Green's function
/// construction.
pub fn reached_domain() -> impl Strategy<Value = (f64, f64, f64)> {
    (
        prop::sample::select(vec![1.0, 2.0, 10.0, 29.0, 47.0, 79.0, 92.0]),
        prop::sample::select(vec![-1, 1, -2, 2, -3, 3, -5]),
        -2.0..4.0f64,
        0u8..2,
        0u8..2,
        -6.0..5.0f64,
    )
        .prop_map(|(z0, kappa, le, da, db, lz)| {
            let (a, b) = coulomb_ab(z0, kappa, -(10f64.powf(le)), da, db);
            (a, b, 10f64.powf(lz))
        })
}

fn rel(x: Scaled, y: Scaled) -> f64 {
    ((x - y).abs() / y.abs()).to_f64()
}

/// Relative defect of `M U' - M' U = -Γ(b)/Γ(a) z^-b e^z`.
pub fn wronskian_defect(a: f64, b: f64, z: f64) -> f64 {
    let m = kummer_m_scaled(a, b, z).unwrap().value;
    let mp = kummer_m_deriv_scaled(a, b, z).unwrap().value;
    let u = tricomi_u_scaled(a, b, z).unwrap().value;
    let up = tricomi_u_deriv_scaled(a, b, z).unwrap().value;
    let (lra, sra) = ln_abs_rgamma(a);
    if sra == 0.0 {
        return 0.0;
    }
    let rhs = Scaled::exp(log_gamma(b).unwrap() + lra - b * z.ln() + z).mul_f64(-sra);
    rel(m * up - mp * u, rhs)
}

/// `|(b-a) M(a-1) + (2a-b+z) M(a) - a M(a+1)|` over its largest term.
pub fn contiguous_defect(a: f64, b: f64, z: f64) -> f64 {
    let m = |x: f64| kummer_m_scaled(x, b, z).unwrap().value;
    let t = [m(a - 1.0).mul_f64(b - a), m(a).mul_f64(2.0 * a - b + z), m(a + 1.0).mul_f64(-a)];
    let big = t.iter().copied().max_by(|x, y| x.cmp_abs(y)).unwrap();
    ((t[0] + t[1] + t[2]).abs() / big.abs()).to_f64()
}

/// Central-difference check of `M'` and `U'`, relative to `max(|f'|, |f|/(1+z))`.
pub fn derivative_defects(a: f64, b: f64, z: f64) -> (f64, f64) {
    let check = |f: &dyn Fn(f64) -> Scaled, d: Scaled, h: f64| {
        let fd = (f(z + h) - f(z - h)).mul_f64(0.5 / h);
        let floor = f(z).abs().mul_f64(1.0 / (1.0 + z));
        let scale = if d.cmp_abs(&floor).is_ge() { d.abs() } else { floor };
        ((fd - d).abs() / scale).to_f64()
    };
    let dm = check(
        &|x| kummer_m_scaled(a, b, x).unwrap().value,
        kummer_m_deriv_scaled(a, b, z).unwrap().value,
        2e-5 * (1.0 + z).cbrt() / (1.0 + a.abs().sqrt()),
    );
    let du = check(
        &|x| tricomi_u_scaled(a, b, x).unwrap().value,
        tricomi_u_deriv_scaled(a, b, z).unwrap().value,
        1e-4 * z / (1.0 + a.abs() + b),
    );
    (dm, du)
}
