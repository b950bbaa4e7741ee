//! Semimeander diagrams of knots: transformation calculus on annotated
//! chord diagrams, exact max-min linear programming for the associated
//! constants, crossing-number bounds, and a planar reduction algorithm that
//! rewrites any knot diagram into one composed of two simple arcs.
//!
//! The `examples/` directory contains one runnable program per major
//! capability; the `semimeander` binary exposes the same operations as
//! subcommands.

pub mod acd;
pub mod bounds;
mod fast;
pub mod gauss;
pub mod linear_form;
pub mod lp;
pub mod optimizer;
pub mod planar;
pub mod rational;
pub mod reducer;
pub mod tables;
pub mod transforms;

pub use acd::{Acd, Diagram, PreAcd};
pub use linear_form::LinearForm;
pub use optimizer::{elimination_functions, t_hat, MParam};
pub use rational::Rational;
