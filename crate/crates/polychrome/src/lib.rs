//! Constant-shallow hitting sets and polychromatic colorings for the
//! hypergraphs that axis-aligned ranges induce on planar (and d-dimensional)
//! point sets.
//!
//! A range family (strips, bottomless rectangles, topless rectangles, their
//! union, unit-height rectangles) together with a point set `V` and a size
//! `m` induces the *range capturing* hypergraph `H(V, family, m)`: the
//! hyperedges are exactly the sets `V ∩ R` of size `m`. This crate builds
//!
//! * **shallow hitting sets**: a set `X ⊆ V` meeting every hyperedge at least
//!   once and at most `t` times, with `t` a small constant independent of `m`
//!   ([`shallow`]);
//! * **polychromatic colorings**: total `k`-colorings under which every
//!   hyperedge sees all `k` colors, for `m` linear in `k` ([`coloring`]);
//! * **strip pipelines** through window hypergraphs and their duals
//!   ([`strips`]), plus the matching **lower-bound gadgets** and machine
//!   certificates ([`lowerbounds`]);
//! * **brute-force verification** for all of the above ([`verify`]): every
//!   constructive claim in this crate is checked against definition-level
//!   enumeration on every test run.
//!
//! The primary interface is the `examples/` directory: each major capability
//! has one runnable program, e.g.
//!
//! ```text
//! cargo run --example bottomless_shallow
//! cargo run --example strips_pipeline
//! cargo run --example gadget_certificates
//! ```
//!
//! A thin CLI (`polychrome` binary) exposes the same operations on files; see
//! the README for subcommands (`gen`, `run`, `verify`, `gadget`, `strips`,
//! `bench`, `plot`).
//!
//! Determinism is a hard requirement throughout: identical inputs and seeds
//! produce byte-identical reports. All randomness flows through seeded
//! ChaCha8 streams, and all set-valued state is kept in sorted order.

pub mod error;
pub mod geometry;
pub mod hypergraph;
pub mod verify;
pub mod shallow;
pub mod strips;
pub mod lowerbounds;
pub mod coloring;
pub mod experiment;

pub use error::{Error, Result};
pub use geometry::{PointSet, RangeFamily, Witness};
pub use hypergraph::{Edge, Hypergraph};
