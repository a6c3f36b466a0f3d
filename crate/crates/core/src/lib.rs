//! Exact model of the Knaster bucket-handle continuum.
//!
//! Points of the Cantor set on the x-axis are eventually-periodic binary
//! sequences ([`binseq`]), embedded exactly as rationals ([`cantor`]). The
//! continuum is the union of semicircle families over those points
//! ([`continuum`]). Two axis points are path-connected exactly when their
//! sequences are `E_0*`-related; [`witness`] builds the connecting arc chains
//! and [`oracle`] checks the correspondence on finite truncations.

pub mod binseq;
pub mod cantor;
pub mod cli;
pub mod continuum;
pub mod error;
pub mod oracle;
pub mod render;
pub mod witness;

pub use binseq::{e0, e0star, f_n, witness_level, BinSeq, Mode, WitnessLevel};
pub use cantor::{embed, mirror0, unembed, CantorPoint};
pub use continuum::{arc_class, center_x, make_arc, Arc, Half};
pub use error::{Error, Result};
pub use oracle::{build, check_theorem, ConnGraph, TheoremReport};
pub use render::{render, RenderSpec};
pub use witness::{simplify, synthesize, verify, PathWitness};
