//! Stationary states of the cubic nonlinear Schrödinger equation
//! `-φ'' + g|φ|²φ = k²φ` on metric star graphs with Kirchhoff matching at
//! the centre and Dirichlet boundary vertices.
//!
//! The crate provides, bottom up:
//!
//! * [`elliptic`] — elliptic integrals (Carlson symmetric forms) and Jacobi
//!   elliptic functions, self-contained and accurate to ~1e-12.
//! * [`interval`] — the one-parameter solution families `χ±` on the half
//!   line and interval, their wavelength, amplitude, norm, and the interval
//!   spectral curves `k(m)`, `N(m)` and their inverses.
//! * [`stargraph`] — the star-graph model, nodal-structure bookkeeping,
//!   existence conditions for central Dirichlet solutions (odd/even edge
//!   counts for the repulsive sign, inverse-square length sums for the
//!   attractive sign), and constructive solvers for prescribed per-edge
//!   nodal counts, including the reduction of equal-length edge pairs.
//! * [`continuation`] — Newton matching of the Kirchhoff conditions at
//!   fixed spectral parameter, pseudo-arclength tracing of spectral curves
//!   in the (k, N) plane, and detection of central Dirichlet crossings
//!   where the nodal structure jumps.
//! * [`cli`] — the `nlstar` command line (`check`, `find`, `trace`,
//!   `interval`) emitting JSON records and CSV tables.
//!
//! Runnable walk-throughs live in `examples/`; start with
//! `cargo run --example central_dirichlet`.

pub mod cli;
pub mod continuation;
pub mod elliptic;
pub mod interval;
mod roots;
pub mod stargraph;

pub use interval::Interaction;
pub use stargraph::{GraphSolution, StarGraph};

