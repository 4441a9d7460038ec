//! Exact computations with poset homology, bar and Koszul complexes of
//! modules over finite-set surjections, and the symmetric-function
//! character theory attached to them.
//!
//! Modules, roughly bottom-up:
//!
//! * [`exactla`]: sparse rational matrices, ranks, kernels, chain complexes.
//! * [`posets`]: finite posets, lattice families, Möbius numbers.
//! * [`posetrep`]: poset representations, bar/Koszul complexes, ideals.
//! * [`fsopmod`]: presented modules over surjections and their complexes.
//! * [`symfun`]: truncated symmetric functions and differential operators.
//! * [`charspace`]: character spaces, projections and dual bases.
//! * [`langideal`]: regular languages, ordered automata, initial ideals.
//! * [`shell`]: run configuration and verification reports for the CLI.

pub mod error;
pub mod charspace;
pub mod exactla;
pub mod fsopmod;
pub mod langideal;
pub mod limits;
pub mod posetrep;
pub mod posets;
pub mod shell;
pub mod symfun;

pub use error::{Error, Result};
pub use limits::Limits;
