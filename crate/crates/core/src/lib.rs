//! McKay correspondence toolkit for the binary dihedral groups `BD_2n(a)`:
//! G-graphs, the orbifold McKay quiver with relations, explicit affine charts
//! of G-Hilb(C^2) and G-cluster ideals, all in exact arithmetic.

pub mod arith;
pub mod charts;
pub mod cli;
pub mod error;
pub mod ggraph;
pub mod group;
pub mod lattice;
pub mod quiver;

pub use error::{Error, Result};
