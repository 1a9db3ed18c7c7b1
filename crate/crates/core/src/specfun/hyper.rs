//! Confluent hypergeometric functions of real arguments.
//!
//! `M(a,b,z)` is summed as a Taylor series in double-double arithmetic where
//! that does not cancel, taken from its two-term large-`z` expansion for large
//! `z`, and otherwise carried outward from small `z` by Taylor-series
//! continuation of Kummer's equation `z w'' + (b - z) w' - a w = 0`.
//! `U(a,b,z)` comes from its large-`z` expansion where that converges cleanly
//! and is otherwise carried inward by the same continuation, the stable
//! direction for `U`. Neither route needs special treatment of integer `b`.
//! The continuation runs in double-double arithmetic so that the thousands
//! of steps needed across the oscillatory region for large `|a|` do not
//! accumulate visible rounding error.

use super::dd::Dd;
use super::gamma::{cos_pi, gamma, ln_abs_rgamma, rgamma};
use super::scaled::{ldexp, Scaled};
use super::{ScaledResult, SpecFnError};

const DD_EPS: f64 = 1.3e-32;
const F64_EPS: f64 = 1.1e-16;
const MAX_TERMS: usize = 20_000;
const TAYLOR_Z_MAX: f64 = 700.0;
/// Estimated error below which a route is accepted without trying others.
const GOOD_ENOUGH: f64 = 1e-14;
const MAX_ODE_STEPS: usize = 200_000;
const MAX_INWARD_STEP: f64 = 20.0;

fn check_finite(a: f64, b: f64, z: f64) -> Result<(), SpecFnError> {
    if a.is_finite() && b.is_finite() && z.is_finite() {
        Ok(())
    } else {
        Err(SpecFnError::Domain(format!(
            "non-finite argument (a={a}, b={b}, z={z})"
        )))
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn better(best: Option<ScaledResult>, r: ScaledResult) -> Option<ScaledResult> {
    match best {
        Some(b) if b.est_rel_error <= r.est_rel_error => Some(b),
        _ => Some(r),
    }
}

fn accuracy_loss(what: String, best: Option<ScaledResult>) -> Result<ScaledResult, SpecFnError> {
    match best {
        Some(r) if r.est_rel_error.is_finite() => Ok(r),
        _ => Err(SpecFnError::AccuracyLoss {
            what,
            est_rel_error: f64::INFINITY,
        }),
    }
}

/// Kummer's function `M(a,b,z)` in extended range.
pub fn kummer_m_scaled(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    check_finite(a, b, z)?;
    if is_nonpositive_integer(b) {
        return Err(SpecFnError::Domain(format!(
            "M(a,b,z) undefined for non-positive integer b = {b}"
        )));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(ScaledResult::exact(Scaled::ONE));
    }
    if z < 0.0 {
        // Kummer's transformation
        let r = kummer_m_scaled(b - a, b, -z)?;
        return Ok(ScaledResult {
            value: r.value * Scaled::exp(z),
            est_rel_error: r.est_rel_error + F64_EPS,
        });
    }
    if is_nonpositive_integer(a) {
        let p = kummer_polynomial(a, b, z);
        if p.est_rel_error <= GOOD_ENOUGH {
            return Ok(p);
        }
        let best = better(None, p);
        return match kummer_continuation(a, b, z) {
            Ok(r) => Ok(better(best, r).unwrap()),
            Err(_) => Ok(best.unwrap()),
        };
    }
    let mut best = None;
    if z > 40.0_f64.max(2.0 * a.abs()) || z > TAYLOR_Z_MAX {
        if let Some(r) = kummer_asymptotic(a, b, z) {
            if r.est_rel_error <= GOOD_ENOUGH {
                return Ok(r);
            }
            best = better(best, r);
        }
    }
    if z <= TAYLOR_Z_MAX {
        if let Ok(r) = kummer_taylor(a, b, z) {
            if r.est_rel_error <= GOOD_ENOUGH {
                return Ok(r);
            }
            best = better(best, r);
        }
    }
    if let Ok(r) = kummer_continuation(a, b, z) {
        best = better(best, r);
    }
    accuracy_loss(format!("M({a}, {b}, {z}): no convergent representation"), best)
}

fn kummer_taylor(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    let zd = Dd::new(z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut abs_sum = 1.0f64;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let num = Dd::sum(a, kf) * zd;
        let den = Dd::sum(b, kf).mul_f64(kf + 1.0);
        term = term * num / den;
        sum = sum + term;
        abs_sum += term.hi.abs();
        k += 1;
        if term.hi == 0.0 {
            break;
        }
        let ratio = ((a + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0))).abs();
        if term.hi.abs() <= 1e-34 * sum.hi.abs() && ratio < 0.5 {
            break;
        }
        if k > MAX_TERMS || !abs_sum.is_finite() {
            return Err(SpecFnError::AccuracyLoss {
                what: format!("M({a}, {b}, {z}): Taylor series did not converge"),
                est_rel_error: f64::INFINITY,
            });
        }
    }
    let v = sum.to_f64();
    let est = F64_EPS + DD_EPS * (k as f64).sqrt() * abs_sum / v.abs();
    Ok(ScaledResult {
        value: Scaled::new(v),
        est_rel_error: est,
    })
}

/// Terminating series for `a = -n`; evaluated as `z^n Σ c_k z^(k-n)` so that
/// huge `z` stays in range.
fn kummer_polynomial(a: f64, b: f64, z: f64) -> ScaledResult {
    let n = (-a) as usize;
    let mut coef = Vec::with_capacity(n + 1);
    let mut c = Dd::ONE;
    coef.push(c);
    for k in 0..n {
        let kf = k as f64;
        c = c * Dd::sum(a, kf) / Dd::sum(b, kf).mul_f64(kf + 1.0);
        coef.push(c);
    }
    if z <= 1.0 {
        let mut acc = Dd::ZERO;
        let mut abs_acc = 0.0;
        for c in coef.iter().rev() {
            acc = acc * Dd::new(z) + *c;
            abs_acc = abs_acc * z + c.hi.abs();
        }
        let v = acc.to_f64();
        return ScaledResult {
            value: Scaled::new(v),
            est_rel_error: F64_EPS + DD_EPS * n as f64 * abs_acc / v.abs(),
        };
    }
    let inv = Dd::ONE / Dd::new(z);
    let mut acc = Dd::ZERO;
    let mut abs_acc = 0.0;
    for c in coef.iter() {
        acc = acc * inv + *c;
        abs_acc = abs_acc / z + c.hi.abs();
    }
    let v = acc.to_f64();
    ScaledResult {
        value: Scaled::new(v) * Scaled::powf(z, n as f64),
        est_rel_error: 2.0 * F64_EPS + DD_EPS * n as f64 * abs_acc / v.abs(),
    }
}

/// `M` carried outward from a small `z` where its Taylor series is clean.
fn kummer_continuation(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    let z_s = z.min(0.5 / (a.abs() + b.abs() + 1.0));
    let m0 = kummer_taylor(a, b, z_s)?;
    let m1 = kummer_taylor(a + 1.0, b + 1.0, z_s)?;
    if z_s == z {
        return Ok(m0);
    }
    let (w, _, err) = kummer_ode(a, b, z_s, m0.value, m1.value.mul_f64(a / b), z)?;
    Ok(ScaledResult {
        value: w,
        est_rel_error: err + m0.est_rel_error.max(m1.est_rel_error),
    })
}

/// Sum of `Σ_k (p)_k (q)_k / (k! x^k)` truncated once the terms fall below
/// `tol * |sum|`. Returns `(sum, error bound)` where the bound covers both
/// truncation and rounding in the partial sums, or `None` if the terms start
/// growing first. With `tol == 0` the series must terminate.
fn asymptotic_sum(p: f64, q: f64, x: f64, tol: f64) -> Option<(f64, f64)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut prev = f64::INFINITY;
    // past this index the term ratio only grows
    let k_turn = ((p - 1.0) * (q - 1.0)).abs().sqrt() + 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (p + kf) * (q + kf) / ((kf + 1.0) * x);
        if term == 0.0 {
            return Some((sum, 2.0 * F64_EPS * abs_sum));
        }
        if !term.is_finite() {
            return None;
        }
        if tol > 0.0 && term.abs() > prev && kf > k_turn {
            return None;
        }
        prev = term.abs();
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= tol * sum.abs() {
            return Some((sum, term.abs() + 2.0 * F64_EPS * abs_sum));
        }
    }
    None
}

/// Two-term large-z expansion on the positive real axis:
/// `M/Γ(b) ≈ e^z z^(a-b)/Γ(a) Σ (1-a)_k (b-a)_k/(k! z^k)
///          + cos(πa) z^(-a)/Γ(b-a) Σ (a)_k (a-b+1)_k/(k! (-z)^k)`.
fn kummer_asymptotic(a: f64, b: f64, z: f64) -> Option<ScaledResult> {
    let tol = 1e-17;
    let gb = gamma(b);
    let (ln_ra, sign_ra) = ln_abs_rgamma(a);
    let (ln_rba, sign_rba) = ln_abs_rgamma(b - a);

    let mut value = Scaled::ZERO;
    let mut abs_err = Scaled::ZERO;

    if sign_ra != 0.0 {
        let (s1, e1) = asymptotic_sum(1.0 - a, b - a, z, tol)?;
        let pref = Scaled::exp(z)
            * Scaled::exp(ln_ra)
            * Scaled::powf(z, a - b)
            * Scaled::new(gb * sign_ra);
        value = value + pref.mul_f64(s1);
        abs_err = abs_err + pref.abs().mul_f64(e1 + 4.0 * F64_EPS * s1.abs());
    }
    let cpa = cos_pi(a);
    if sign_rba != 0.0 && cpa != 0.0 {
        let (s2, e2) = match asymptotic_sum(a, a - b + 1.0, -z, tol) {
            Some(v) => v,
            // subdominant part unresolvable; its size bounds the error
            None if sign_ra != 0.0 => (1.0, 1.0),
            None => return None,
        };
        let pref = Scaled::exp(ln_rba) * Scaled::powf(z, -a) * Scaled::new(gb * cpa * sign_rba);
        value = value + pref.mul_f64(s2);
        abs_err = abs_err + pref.abs().mul_f64(e2 + 4.0 * F64_EPS * s2.abs());
    }
    if value.is_zero() {
        return None;
    }
    let est = (abs_err / value.abs()).to_f64() + 4.0 * F64_EPS;
    Some(ScaledResult {
        value,
        est_rel_error: est,
    })
}

/// `U(a,b,z) ≈ z^(-a) Σ (a)_k (a-b+1)_k / (k! (-z)^k)`; exact when the series
/// terminates.
fn tricomi_asymptotic(a: f64, b: f64, z: f64, tol: f64) -> Option<ScaledResult> {
    let (s, e) = asymptotic_sum(a, a - b + 1.0, -z, tol)?;
    if s == 0.0 {
        return None;
    }
    Some(ScaledResult {
        value: Scaled::powf(z, -a).mul_f64(s),
        est_rel_error: e / s.abs() + 4.0 * F64_EPS,
    })
}

/// Tricomi's function `U(a,b,z)`, `z > 0`, in extended range.
pub fn tricomi_u_scaled(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    check_finite(a, b, z)?;
    if z <= 0.0 {
        return Err(SpecFnError::Domain(format!(
            "U(a,b,z) requires z > 0, got z = {z}"
        )));
    }
    if a == 0.0 {
        return Ok(ScaledResult::exact(Scaled::ONE));
    }
    let mut best = None;
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(a - b + 1.0);
    if terminating {
        if let Some(r) = tricomi_asymptotic(a, b, z, 0.0) {
            if r.est_rel_error <= GOOD_ENOUGH {
                return Ok(r);
            }
            best = better(best, r);
        }
    }
    if let Some(r) = tricomi_asymptotic(a, b, z, 1e-17) {
        if r.est_rel_error <= GOOD_ENOUGH {
            return Ok(r);
        }
        best = better(best, r);
    }
    if let Ok(r) = tricomi_continuation(a, b, z) {
        best = better(best, r);
    }
    accuracy_loss(format!("U({a}, {b}, {z}): no convergent representation"), best)
}

/// Start from the asymptotic expansion at some `z_start > z` and integrate
/// Kummer's equation inward.
fn tricomi_continuation(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    let mut z_start = z.max(40.0);
    let (u0, du0) = loop {
        let u = tricomi_asymptotic(a, b, z_start, 1e-17);
        let up = tricomi_asymptotic(a + 1.0, b + 1.0, z_start, 1e-17);
        if let (Some(u), Some(up)) = (u, up) {
            if u.est_rel_error <= GOOD_ENOUGH && up.est_rel_error <= GOOD_ENOUGH {
                break (u, up);
            }
        }
        z_start *= 1.5;
        if z_start > 1e12 {
            return Err(SpecFnError::AccuracyLoss {
                what: format!("U({a}, {b}, {z}): no convergent starting point"),
                est_rel_error: f64::INFINITY,
            });
        }
    };
    if z_start == z {
        return Ok(u0);
    }
    let (w, _, err) = kummer_ode(a, b, z_start, u0.value, du0.value.mul_f64(-a), z)?;
    Ok(ScaledResult {
        value: w,
        est_rel_error: err + u0.est_rel_error.max(du0.est_rel_error),
    })
}

/// Integrates Kummer's equation from `z0` to `z1` by successive Taylor
/// expansions. Steps are at most half the distance to the singular point at
/// the origin and, where solutions oscillate, about one radian of phase.
/// Returns `(w, w', accumulated relative error estimate)` at `z1`.
fn kummer_ode(
    a: f64,
    b: f64,
    z0: f64,
    w0: Scaled,
    wp0: Scaled,
    z1: f64,
) -> Result<(Scaled, Scaled, f64), SpecFnError> {
    let fail = |why: &str| SpecFnError::AccuracyLoss {
        what: format!("Kummer ODE for a={a}, b={b} from {z0} to {z1}: {why}"),
        est_rel_error: f64::INFINITY,
    };
    // common binary exponent for w and w'
    let mut base = if w0.cmp_abs(&wp0).is_ge() { w0.exp2() } else { wp0.exp2() };
    let mut w = Dd::new(w0.shift(-base).to_f64());
    let mut wp = Dd::new(wp0.shift(-base).to_f64());
    let mut err = 0.0;
    let mut z = z0;
    let mut coef: Vec<Dd> = Vec::with_capacity(128);
    for _ in 0..MAX_ODE_STEPS {
        if z == z1 {
            return Ok((
                Scaled::new(w.to_f64()).shift(base),
                Scaled::new(wp.to_f64()).shift(base),
                err + F64_EPS,
            ));
        }
        let p = (b - z) / z;
        let disc = 0.25 * p * p + a / z;
        let mut hmax = 0.5 * z;
        if disc < 0.0 {
            hmax = hmax.min(1.0 / (-disc).sqrt());
        }
        if z1 < z {
            // inward, the Taylor coefficients of the e^z-like solution grow
            // like |h|^k/k!; rounding noise in them must stay far below 1/eps
            hmax = hmax.min(MAX_INWARD_STEP);
        }
        let z_next = if (z1 - z).abs() <= hmax { z1 } else { z + hmax.copysign(z1 - z) };
        let h = z_next - z;

        // d_k = c_k h^k of the local Taylor series w(z + x) = Σ c_k x^k
        let bz = Dd::sum(b, -z);
        let zd = Dd::new(z);
        coef.clear();
        coef.push(w);
        coef.push(wp.mul_f64(h));
        let mut val = coef[0] + coef[1];
        let mut dsum = coef[1]; // h w'(z + h) = Σ k d_k
        let mut abs_terms = coef[0].hi.abs() + coef[1].hi.abs();
        let mut small = 0;
        let mut k = 0usize;
        loop {
            let kf = k as f64;
            let t1 = (bz + Dd::new(kf)).mul_f64(-(kf + 1.0) * h) * coef[k + 1];
            let t2 = Dd::sum(a, kf).mul_f64(h) * coef[k].mul_f64(h);
            let d2 = (t1 + t2) / zd.mul_f64((kf + 2.0) * (kf + 1.0));
            coef.push(d2);
            val = val + d2;
            dsum = dsum + d2.mul_f64(kf + 2.0);
            abs_terms += d2.hi.abs();
            k += 1;
            let scale = val.hi.abs() + dsum.hi.abs();
            if (kf + 2.0) * d2.hi.abs() <= 1e-33 * scale {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            if k > 5000 || !scale.is_finite() {
                return Err(fail("local series diverged"));
            }
        }
        let der = dsum / Dd::new(h);
        let scale = val.hi.abs() + dsum.hi.abs();
        if scale == 0.0 {
            return Err(fail("solution vanished"));
        }
        err += DD_EPS * (2.0 + abs_terms / scale) * (k as f64).sqrt();
        let big = if val.hi.abs() >= der.hi.abs() { val.hi } else { der.hi };
        let e = Scaled::new(big).exp2();
        let f = ldexp(1.0, -e);
        w = val.mul_f64(f);
        wp = der.mul_f64(f);
        base += e;
        z = z_next;
    }
    Err(fail("too many steps"))
}

/// `U` from the two-`M` connection formula (non-integer `b` only). An
/// independent route used to cross-check [`tricomi_u_scaled`] where the
/// formula does not cancel badly.
pub fn tricomi_u_connection(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    check_finite(a, b, z)?;
    if b == b.round() {
        return Err(SpecFnError::Domain(format!(
            "connection formula needs non-integer b, got {b}"
        )));
    }
    if z <= 0.0 {
        return Err(SpecFnError::Domain(format!("U requires z > 0, got {z}")));
    }
    let m1 = kummer_m_scaled(a, b, z)?;
    let m2 = kummer_m_scaled(a - b + 1.0, 2.0 - b, z)?;
    let c1 = gamma(1.0 - b) * rgamma(a - b + 1.0);
    let c2 = gamma(b - 1.0) * rgamma(a);
    let t1 = m1.value.mul_f64(c1);
    let t2 = m2.value.mul_f64(c2) * Scaled::powf(z, 1.0 - b);
    let v = t1 + t2;
    let scale = if t1.cmp_abs(&t2).is_ge() { t1.abs() } else { t2.abs() };
    let cancel = (scale / v.abs()).to_f64();
    Ok(ScaledResult {
        value: v,
        est_rel_error: (4.0 * F64_EPS + m1.est_rel_error.max(m2.est_rel_error)) * cancel,
    })
}
