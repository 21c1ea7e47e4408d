//! Minimal codewords of linear codes through projective geometry.
//!
//! A projective `[n,k]_q` code is a spanning set of `n` points of
//! PG(GF(q)^k). Its codewords up to scalars correspond to hyperplanes, and a
//! codeword is minimal exactly when the points on its hyperplane span that
//! hyperplane. The crate builds on this to count minimal codewords, bound
//! and compute `m_q(n,k)` and `M_q(n,k)`, and do the same for subcodes.

pub mod alpha;
pub mod code;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod search;

pub use alpha::{AlphaTable, BruteGuard, CoverWitness, Provenance};
pub use code::{LinearCode, MinimalityReport};
pub use error::{Error, Result};
pub use geometry::{gaussian_binomial, num_points, PointSet, ProjectiveSpace, SubspaceRecord};
pub use gf::{Elem, FieldSpec};
pub use linalg::Matrix;
pub use search::{Engine, Method, Mode, SearchConfig, SearchTask, Table, TableEntry};
