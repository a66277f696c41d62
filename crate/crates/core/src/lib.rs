//! Finite-dimensional Jordan *-algebras and the geometry of their positive unit spheres.
//!
//! Elements of `mat:n`, `spin:n`, the exceptional `h3o` and their direct sums share
//! one coordinate type, [`algebra::Element`], described by an
//! [`algebra::AlgebraDescriptor`] such as `"sum:mat:2,spin:4".parse()`. On top of the
//! product sit spectral theory ([`spectral`]), projections ([`projections`]), the
//! sphere characterizations ([`spheres`]), pairs of projections ([`two_proj`]), spin
//! factor geometry ([`spin`]), the Glennie identity ([`exceptional`]) and the
//! extension of sphere isometries ([`tingley`]).
//!
//! Randomness always flows from a `u64` seed through [`rng`], so every report produced
//! by [`suites::run_suite`] is reproducible byte for byte.
//!
//! ```
//! use jordan_spheres::algebra::{Element, Tolerances};
//! use jordan_spheres::spheres::double_sphere_test;
//!
//! let p = Element::diag(&[1.0, 0.0, 1.0]);
//! let mut rng = jordan_spheres::rng::seeded(1);
//! let out = double_sphere_test(&p, 10, &mut rng, &Tolerances::default()).unwrap();
//! assert!(out.is_projection);
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exceptional;
pub mod linalg;
pub mod maps;
pub mod projections;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod spectral;
pub mod spheres;
pub mod spin;
pub mod suites;
pub mod tingley;
pub mod two_proj;
