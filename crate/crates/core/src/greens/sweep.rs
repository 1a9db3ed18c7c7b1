//! Matching of the per-interval Coulomb solutions across interval
//! boundaries: outward for the solution regular at the origin, inward for
//! the one regular at infinity.

use super::coulomb::{basis_at, Basis, IntervalParams, SolutionPoint};
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::specfun::Scaled;
use rayon::prelude::*;

/// Basis values at both ends of one interval; `left` is `None` at `r = 0`.
#[derive(Clone, Copy, Debug)]
pub struct IntervalEnds {
    pub left: Option<Basis>,
    pub right: Basis,
}

pub fn interval_ends(params: &[IntervalParams], grid: &RadialGrid) -> Result<Vec<IntervalEnds>> {
    let r = grid.r();
    params
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let at = |x: f64| basis_at(x, p).map_err(|e| e.in_interval(i));
            let left = if r[i] > 0.0 { Some(at(r[i])?) } else { None };
            let right = at(r[i + 1])?;
            Ok(IntervalEnds { left, right })
        })
        .collect()
}

/// Coefficients on each interval and the resulting solution at the nodes.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub coef: Vec<[Scaled; 2]>,
    pub value: Vec<Scaled>,
    pub deriv: Vec<Scaled>,
    pub small: Vec<Scaled>,
}

fn combine(c: &[Scaled; 2], m: &SolutionPoint, w: &SolutionPoint) -> (Scaled, Scaled, Scaled) {
    (
        c[0] * m.value + c[1] * w.value,
        c[0] * m.deriv + c[1] * w.deriv,
        c[0] * m.small + c[1] * w.small,
    )
}

/// Coefficients of `(v, v')` in the basis `b`.
fn solve(b: &Basis, v: Scaled, vp: Scaled, node: usize) -> Result<[Scaled; 2]> {
    let wr = b.m.value * b.w.deriv - b.m.deriv * b.w.value;
    if wr.is_zero() || !wr.is_finite() {
        return Err(Error::Matching { node });
    }
    let f1 = (v * b.w.deriv - vp * b.w.value) / wr;
    let f2 = (b.m.value * vp - b.m.deriv * v) / wr;
    if !f1.is_finite() || !f2.is_finite() {
        return Err(Error::Matching { node });
    }
    Ok([f1, f2])
}

fn empty(nodes: usize, intervals: usize) -> Sweep {
    Sweep {
        coef: vec![[Scaled::ZERO; 2]; intervals],
        value: vec![Scaled::ZERO; nodes],
        deriv: vec![Scaled::ZERO; nodes],
        small: vec![Scaled::ZERO; nodes],
    }
}

/// Starts from `(1, 0)` on the first interval; node values come from the
/// right end of the interval to their left.
pub fn forward_sweep(ends: &[IntervalEnds]) -> Result<Sweep> {
    let n = ends.len();
    let mut sw = empty(n + 1, n);
    sw.coef[0] = [Scaled::ONE, Scaled::ZERO];
    for i in 0..n {
        let rb = &ends[i].right;
        let (v, vp, vs) = combine(&sw.coef[i], &rb.m, &rb.w);
        sw.value[i + 1] = v;
        sw.deriv[i + 1] = vp;
        sw.small[i + 1] = vs;
        if i + 1 < n {
            let lb = ends[i + 1].left.as_ref().ok_or(Error::Matching { node: i + 1 })?;
            sw.coef[i + 1] = solve(lb, v, vp, i + 1)?;
        }
    }
    Ok(sw)
}

/// Starts from `(0, 1)` on the last interval; node values come from the
/// left end of the interval to their right (the last node from the right
/// end of the last interval). The origin entry stays zero.
pub fn backward_sweep(ends: &[IntervalEnds]) -> Result<Sweep> {
    let n = ends.len();
    let mut sw = empty(n + 1, n);
    sw.coef[n - 1] = [Scaled::ZERO, Scaled::ONE];
    let last = &ends[n - 1].right;
    sw.value[n] = last.w.value;
    sw.deriv[n] = last.w.deriv;
    sw.small[n] = last.w.small;
    for i in (1..n).rev() {
        let lb = ends[i].left.as_ref().ok_or(Error::Matching { node: i })?;
        let (v, vp, vs) = combine(&sw.coef[i], &lb.m, &lb.w);
        sw.value[i] = v;
        sw.deriv[i] = vp;
        sw.small[i] = vs;
        sw.coef[i - 1] = solve(&ends[i - 1].right, v, vp, i)?;
    }
    Ok(sw)
}

fn rel_diff(a: Scaled, b: Scaled) -> f64 {
    let big = if a.cmp_abs(&b).is_ge() { a } else { b };
    if big.is_zero() {
        return 0.0;
    }
    ((a - b).abs() / big.abs()).to_f64()
}

/// Largest relative mismatch of value and slope between the two sides of
/// every interior node.
pub fn continuity_residual(ends: &[IntervalEnds], sw: &Sweep) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 1..ends.len() {
        let Some(lb) = ends[i].left.as_ref() else { continue };
        let rb = &ends[i - 1].right;
        let (v1, d1, _) = combine(&sw.coef[i - 1], &rb.m, &rb.w);
        let (v2, d2, _) = combine(&sw.coef[i], &lb.m, &lb.w);
        worst = worst.max(rel_diff(v1, v2)).max(rel_diff(d1, d2));
    }
    worst
}
