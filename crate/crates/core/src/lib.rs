//! Relativistic radial Green's functions of the Dirac equation in a central
//! field, for bound-region energies `E < 0` (rest energy excluded, atomic
//! units).
//!
//! The effective charge `Z(r)` is replaced by straight lines on the
//! intervals of an exponential grid. On each interval the Dirac equation
//! then has analytic Coulomb solutions in terms of Kummer and Tricomi
//! functions; these are matched across the grid to give the solutions
//! regular at the origin and at infinity, whose products form the Green's
//! function.

pub mod dirac;
pub mod driver;
pub mod error;
pub mod greens;
pub mod grid;
pub mod io;
pub mod matel;
pub mod potential;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
