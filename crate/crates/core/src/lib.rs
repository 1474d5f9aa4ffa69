//! Finite lattices whose ordered set of principal congruences is a
//! prescribed ordered set with zero.
//!
//! The crate is organised bottom-up:
//!
//! * [`order`]: quasiorders, ordered sets, ideals and isomorphism testing;
//! * [`lattice`]: finite lattices and N6-quadruple classification;
//! * [`congruence`]: principal congruences, `Princ L`, and a weak
//!   projectivity oracle that checks congruence closure independently;
//! * [`quasicolor`]: quasi-colorings and the axiom checker for auxiliary
//!   structures;
//! * [`construction`]: the bridge gadget, vertical and horizontal
//!   extensions, and the `represent` drivers;
//! * [`io`] and [`dot`]: JSON formats and Graphviz output;
//! * [`corpus`]: exhaustive and seeded random test inputs.
//!
//! Bulk scans take an [`Exec`] and run on rayon when the `parallel` feature
//! is enabled.

pub mod bits;
pub mod congruence;
pub mod construction;
pub mod corpus;
pub mod dot;
pub mod io;
pub mod lattice;
pub mod order;
pub mod par;
pub mod quasicolor;

pub use par::Exec;
