//! Exact arithmetic for SL2-tilings and triangulations of the infinite strip.
//!
//! An *SL2-tiling* is a bi-infinite matrix `t = (t_ij)` of positive integers
//! in which every adjacent 2x2 minor has determinant 1:
//!
//! ```text
//! t_ij * t_(i+1)(j+1) - t_i(j+1) * t_(i+1)j = 1
//! ```
//!
//! Throughout the crate we use matrix convention: the row index `i` increases
//! downwards and the column index `j` increases to the right.  A tiling has
//! *enough ones* if every quadrant strictly below-left and strictly
//! above-right of any cell contains an entry 1; the positions of the 1s then
//! form an infinite staircase ("zig-zag") running from the upper right to the
//! lower left.
//!
//! Such tilings are in bijection with periodic triangulations of an infinite
//! strip with marked points on both boundary lines.  This crate implements
//! both sides of the bijection with exact `BigInt` arithmetic:
//!
//! * [`strip`] models the strip, its arcs, and periodic triangulations;
//! * [`polygon`] handles triangulated polygons, quiddity sequences, and
//!   continuants;
//! * [`frieze`] grows Conway-Coxeter friezes by determinant propagation and
//!   converts between friezes and polygon triangulations;
//! * [`tiling`] stores finite windows of a tiling and runs the structural
//!   checks (determinants, derived `c`/`d` values, Ptolemy relations,
//!   linearisation, quadrant exclusion);
//! * [`phi`] evaluates the map from a strip triangulation to its tiling;
//! * [`psi`] recovers the triangulation from a window of the tiling;
//! * [`io`] parses and emits the plain-text document formats used by the
//!   command line tool;
//! * [`fixtures`] holds the worked examples used in tests and demos;
//! * [`sample`] generates seeded random specs and triangulations.
//!
//! All arithmetic is exact; there is no floating point anywhere.

mod fill;

pub mod fixtures;
pub mod frieze;
pub mod io;
pub mod phi;
pub mod polygon;
pub mod psi;
pub mod sample;
pub mod strip;
pub mod tiling;

pub use frieze::FriezeGrid;
pub use polygon::PolygonTriangulation;
pub use strip::{Arc, FinitePatch, PeriodicTriangulationSpec, Vertex};
pub use tiling::TilingWindow;
