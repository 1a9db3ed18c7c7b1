//! Exponential radial grid `r_i = rnt (e^{i h} - 1)`, `i = 0..n-1`, with
//! trapezoidal quadrature and linear interpolation up to the maximum
//! tabulation point.
//!
//! Indices are zero-based: `r[0] = 0` and `mtp` counts nodes, so the
//! tabulated range is `r[0..mtp]`.

use crate::error::{Error, Result};

/// Defaults of the standard grid.
pub const DEFAULT_RNT: f64 = 2.177_968_408_335_618e-4;
pub const DEFAULT_H: f64 = 0.0625;
pub const DEFAULT_N: usize = 390;

#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    rnt: f64,
    h: f64,
    n: usize,
    r: Vec<f64>,
    mtp: usize,
}

pub fn build_grid(rnt: f64, h: f64, n: usize) -> Result<RadialGrid> {
    build_grid_hp(rnt, h, 0.0, n)
}

/// As [`build_grid`], accepting the mixed log-linear parameter `hp`, which
/// must be zero.
pub fn build_grid_hp(rnt: f64, h: f64, hp: f64, n: usize) -> Result<RadialGrid> {
    if hp != 0.0 {
        return Err(Error::UnsupportedGrid(format!(
            "hp = {hp}; only purely exponential grids (hp = 0) are supported"
        )));
    }
    if !(rnt > 0.0 && rnt.is_finite()) || !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!(
            "grid parameters must be positive and finite (rnt = {rnt}, h = {h})"
        )));
    }
    if n < 10 {
        return Err(Error::Domain(format!("grid needs at least 10 nodes, got {n}")));
    }
    let r: Vec<f64> = (0..n).map(|i| rnt * (i as f64 * h).exp_m1()).collect();
    if !r[n - 1].is_finite() {
        return Err(Error::Domain("grid extends beyond the f64 range".into()));
    }
    Ok(RadialGrid { rnt, h, n, r, mtp: n })
}

impl RadialGrid {
    pub fn standard() -> RadialGrid {
        build_grid(DEFAULT_RNT, DEFAULT_H, DEFAULT_N).expect("default grid is valid")
    }

    /// Halves `h` and sets `n -> 2n - 1`, so that old node `i` is new node `2i`.
    pub fn refined(&self) -> RadialGrid {
        let mut g = build_grid(self.rnt, 0.5 * self.h, 2 * self.n - 1).expect("refinement of a valid grid");
        g.mtp = 2 * self.mtp - 1;
        g
    }

    pub fn rnt(&self) -> f64 {
        self.rnt
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mtp(&self) -> usize {
        self.mtp
    }

    /// All `n` nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.r
    }

    /// The tabulated nodes `r[0..mtp]`.
    pub fn r(&self) -> &[f64] {
        &self.r[..self.mtp]
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.mtp - 1]
    }

    pub fn set_mtp(&mut self, mtp: usize) -> Result<()> {
        if mtp < 10 || mtp > self.n {
            return Err(Error::Domain(format!(
                "mtp must lie in [10, {}], got {mtp}",
                self.n
            )));
        }
        self.mtp = mtp;
        Ok(())
    }

    /// Largest `mtp` with `r[mtp-1] <= r_limit`.
    pub fn truncate_at(&mut self, r_limit: f64) -> Result<()> {
        let m = self.r.partition_point(|&x| x <= r_limit * (1.0 + 1e-14));
        self.set_mtp(m.min(self.n))
    }

    /// Trapezoidal weights on `r[0..mtp]`.
    pub fn weights(&self) -> Vec<f64> {
        let r = self.r();
        let m = r.len();
        let mut w = vec![0.0; m];
        for i in 0..m - 1 {
            let d = 0.5 * (r[i + 1] - r[i]);
            w[i] += d;
            w[i + 1] += d;
        }
        w
    }

    /// `∫_0^{r[mtp-1]} f dr` for `f` tabulated on the first `mtp` nodes.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.mtp {
            return Err(Error::Domain(format!(
                "integrand has {} values, grid tabulates {}",
                values.len(),
                self.mtp
            )));
        }
        let r = self.r();
        Ok((0..self.mtp - 1)
            .map(|i| 0.5 * (r[i + 1] - r[i]) * (values[i] + values[i + 1]))
            .sum())
    }

    /// Index `k` with `r[k] <= x <= r[k+1]`, `k + 1 < mtp`.
    pub fn bracket(&self, x: f64) -> Result<usize> {
        let r = self.r();
        if !(x >= 0.0 && x <= r[self.mtp - 1]) {
            return Err(Error::Domain(format!(
                "r = {x} outside the tabulated range [0, {}]",
                r[self.mtp - 1]
            )));
        }
        let k = r.partition_point(|&v| v <= x);
        Ok(k.saturating_sub(1).min(self.mtp - 2))
    }

    pub fn interp_linear(&self, values: &[f64], x: f64) -> Result<f64> {
        if values.len() < self.mtp {
            return Err(Error::Domain(format!(
                "table has {} values, grid tabulates {}",
                values.len(),
                self.mtp
            )));
        }
        let k = self.bracket(x)?;
        let r = self.r();
        let th = (x - r[k]) / (r[k + 1] - r[k]);
        if th == 0.0 {
            return Ok(values[k]);
        }
        if th == 1.0 {
            return Ok(values[k + 1]);
        }
        Ok(values[k] + th * (values[k + 1] - values[k]))
    }
}
