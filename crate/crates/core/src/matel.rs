//! Second-order radial matrix elements
//!
//! ```text
//! U = ∫∫ gβ(r) j_Λ(k r) g(r, r') j_Λ~(k~ r') gα(r') dr dr'
//! ```
//!
//! with `gβ`, `gα` the large (`P`) or small (`Q`) component of a bound
//! orbital and `g` one of the four Green's function components.

use crate::dirac::RadialOrbital;
use crate::error::{Error, Result};
use crate::greens::{GreensFunction, Tabulation};
use crate::specfun::sph_bessel_j;
use rayon::prelude::*;
use std::str::FromStr;

pub const MAX_RANK: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    L,
    S,
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(Component::L),
            "S" | "s" => Ok(Component::S),
            _ => Err(Error::Parse(format!("unknown component '{s}', expected L or S"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixElementSpec {
    pub k: f64,
    pub ktilde: f64,
    pub lambda: u32,
    pub lambda_tilde: u32,
    pub t_beta: Component,
    pub t: Component,
    pub t_tilde: Component,
    pub t_alpha: Component,
}

impl MatrixElementSpec {
    /// Large components throughout.
    pub fn large(k: f64, lambda: u32, ktilde: f64, lambda_tilde: u32) -> Self {
        MatrixElementSpec {
            k,
            ktilde,
            lambda,
            lambda_tilde,
            t_beta: Component::L,
            t: Component::L,
            t_tilde: Component::L,
            t_alpha: Component::L,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.lambda > MAX_RANK || self.lambda_tilde > MAX_RANK {
            return Err(Error::Domain(format!("multipole ranks above {MAX_RANK} are not supported")));
        }
        if !(self.k >= 0.0 && self.ktilde >= 0.0 && self.k.is_finite() && self.ktilde.is_finite()) {
            return Err(Error::Domain("photon wave numbers must be finite and non-negative".into()));
        }
        Ok(())
    }
}

fn pick(orb: &RadialOrbital, c: Component) -> &[f64] {
    match c {
        Component::L => &orb.p,
        Component::S => &orb.q,
    }
}

fn block(t: &Tabulation, a: Component, b: Component) -> &[f64] {
    use Component::*;
    match (a, b) {
        (L, L) => &t.gll,
        (L, S) => &t.gls,
        (S, L) => &t.gsl,
        (S, S) => &t.gss,
    }
}

/// `U` by nested grid trapezoids over a precomputed tabulation of `gf`.
pub fn radial_matrix_element_tab(
    orb_beta: &RadialOrbital,
    gf: &GreensFunction,
    t: &Tabulation,
    orb_alpha: &RadialOrbital,
    spec: &MatrixElementSpec,
) -> Result<f64> {
    spec.validate()?;
    let m = gf.mtp();
    for o in [orb_beta, orb_alpha] {
        if o.p.len() != m || o.q.len() != m {
            return Err(Error::Domain(format!(
                "orbital n = {}, kappa = {} has {} points, Green's function {}",
                o.n,
                o.kappa,
                o.p.len(),
                m
            )));
        }
    }
    if t.mtp != m {
        return Err(Error::Domain(format!("tabulation has {} points, Green's function {}", t.mtp, m)));
    }
    let grid = gf.grid();
    let r = grid.r();
    let gb = pick(orb_beta, spec.t_beta);
    let ga = pick(orb_alpha, spec.t_alpha);
    let g = block(t, spec.t, spec.t_tilde);
    let right: Vec<f64> = (0..m)
        .map(|j| sph_bessel_j(spec.lambda_tilde as usize, spec.ktilde * r[j]) * ga[j])
        .collect();
    let outer: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| {
            let w = gb[i] * sph_bessel_j(spec.lambda as usize, spec.k * r[i]);
            if w == 0.0 {
                return Ok(0.0);
            }
            let row: Vec<f64> = (0..m).map(|j| g[i * m + j] * right[j]).collect();
            Ok(w * grid.integrate(&row)?)
        })
        .collect::<Result<_>>()?;
    grid.integrate(&outer)
}

pub fn radial_matrix_element(
    orb_beta: &RadialOrbital,
    gf: &GreensFunction,
    orb_alpha: &RadialOrbital,
    spec: &MatrixElementSpec,
) -> Result<f64> {
    radial_matrix_element_tab(orb_beta, gf, &gf.tabulate(), orb_alpha, spec)
}
