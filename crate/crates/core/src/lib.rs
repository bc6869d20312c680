//! Exact computer algebra for the dga `H_k(c)`, a derived Hecke algebra of
//! the 2-sphere.

pub mod braid;
pub mod coeff;
pub mod dga;
pub mod error;
pub mod expr;
mod format;
pub mod hecke;
pub mod homology;
pub mod katok;
pub mod symgroup;

pub use coeff::IntPoly;
pub use dga::{Dga, DgaConfig, DgaElt, GenWord, Letter, PbwMono};
pub use error::{Error, Result};
pub use expr::{parse_expr, parse_poly, Expr};
pub use hecke::HeckeElt;
pub use symgroup::{Perm, Side};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/pbw.md")]
    mod pbw {}
    #[doc = include_str!("../../../book/src/differential.md")]
    mod differential {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/braids.md")]
    mod braids {}
    #[doc = include_str!("../../../book/src/katok.md")]
    mod katok {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
