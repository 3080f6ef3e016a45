//! Certified numerics for a chain of Gegenbauer-polynomial inequalities.
//!
//! [`numerics`] supplies exact rationals and outward-rounded intervals,
//! [`orthopoly`] builds normalized Gegenbauer polynomials and certified extrema,
//! [`asymptotics`] covers large degrees through an expansion with a rigorous
//! remainder, [`verifier`] turns each inequality into a [`verifier::Certificate`],
//! and [`cli_report`] drives suites, checkpoints and plots.

pub mod numerics;
pub mod asymptotics;
pub mod orthopoly;
pub mod verifier;
pub mod cli_report;
