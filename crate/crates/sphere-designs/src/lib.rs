//! Spherical t-designs as polynomial systems.
//!
//! This crate verifies the t-design property of point configurations on
//! the unit sphere `S^d` (exactly over the rationals or numerically),
//! builds the pinned polynomial system whose isolated roots encode
//! design rigidity, certifies the isolated-root condition from Jacobian
//! rank, refutes rigidity by constructing explicit flexes, and evaluates
//! the exact big-integer root-count inequality that caps the size of
//! rigid designs.
//!
//! See the `book/` guide for a narrative walkthrough; its code snippets
//! double as doctests below.

pub mod bound;
pub mod config;
pub mod design;
pub mod error;
pub mod moments;
pub mod rigidity;
pub mod scalar;
pub mod system;

pub use design::{
    generate, orbit_distance, verify_design, weyl_residual, Configuration, DesignReport, Family,
    PointConfiguration,
};
pub use error::{Error, Result};
pub use moments::{enumerate_monomials, sphere_moment, Monomial};
pub use rigidity::{
    certify, flex_search, matrix_rank, FlexResult, RigidityCertificate, RigidityStatus,
};
pub use scalar::Scalar;
pub use system::{build_system, export_system, import_system, select_pins, PolynomialSystem};

// Keep the book's code snippets compiling: every chapter is attached
// here as a hidden doc module, so `cargo test` runs them as doctests.
macro_rules! book_chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        mod $name {}
    };
}

book_chapter!(_book_introduction, "../../../book/src/introduction.md");
book_chapter!(_book_designs, "../../../book/src/designs.md");
book_chapter!(_book_moments, "../../../book/src/moments.md");
book_chapter!(_book_systems, "../../../book/src/systems.md");
book_chapter!(_book_rigidity, "../../../book/src/rigidity.md");
book_chapter!(_book_bounds, "../../../book/src/bounds.md");
book_chapter!(_book_cli, "../../../book/src/cli.md");
