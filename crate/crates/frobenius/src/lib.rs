//! Exact computations in the bimodule category of a finite-dimensional
//! Frobenius algebra presented by a quiver with relations.
//!
//! The pipeline: build the algebra from a presentation ([`algebra`]), form
//! its enveloping algebra and compute minimal projective bimodule
//! resolutions ([`module`]), compute Hochschild cohomology with its
//! Gerstenhaber operations ([`hochschild`]), assemble the twisted
//! Laurent-style graded algebra and its mapping-cone cohomology ([`cone`]),
//! and decide whether the stable bimodule category carries a compatible
//! triangulated structure ([`check`]).
//!
//! All arithmetic is exact: prime fields `F_p` and the rationals with big
//! integers. Elimination is deterministic, so every basis this crate
//! produces is reproducible across runs.
//!
//! ```
//! use frobenius::Field;
//! use frobenius::examples::build_named_example;
//! use frobenius::check::check_enhancement;
//!
//! let algebra = build_named_example("dual_numbers", Field::Fp(3), &[]).unwrap();
//! let report = check_enhancement(&algebra, 200, 0).unwrap();
//! assert_eq!(report.enhanced, Some(true));
//! ```

pub mod algebra;
pub mod check;
pub mod cone;
pub mod error;
pub mod examples;
pub mod hochschild;
pub mod linalg;
pub mod module;
pub mod report;
pub mod specfile;

pub use error::Error;
pub use linalg::{Field, Matrix, Scalar, Subspace};

// Run every code listing in the guide (book/) as a documentation test;
// mdbook itself does not execute them.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/getting-started.md")]
    mod getting_started {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/hochschild.md")]
    mod hochschild {}
    #[doc = include_str!("../../../book/src/cone.md")]
    mod cone {}
    #[doc = include_str!("../../../book/src/checker.md")]
    mod checker {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
