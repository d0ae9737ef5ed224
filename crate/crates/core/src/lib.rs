//! Numerical workbench for noncommutative integration.
//!
//! Finite-dimensional and discretized models of Young functions and Orlicz
//! norms on traced matrix algebras, a truncated crossed-product model with its
//! dual action, a lattice Weyl algebra for a Klein–Gordon field, commuting
//! translation flows with mollified derivations, and the differential graded
//! algebra generated by a finite family of derivations.

pub mod crossed;
pub mod error;
pub mod flows;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod matrixalg;
pub mod ncnorms;
pub mod numeric;
pub mod random;
pub mod suite;
pub mod weyl;
pub mod young;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/young.md")]
    pub struct Young;
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub struct Algebras;
    #[doc = include_str!("../../../book/src/norms.md")]
    pub struct Norms;
    #[doc = include_str!("../../../book/src/crossed.md")]
    pub struct Crossed;
    #[doc = include_str!("../../../book/src/weyl.md")]
    pub struct Weyl;
    #[doc = include_str!("../../../book/src/flows.md")]
    pub struct Flows;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
    #[doc = include_str!("../../../book/src/formats.md")]
    pub struct Formats;
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
