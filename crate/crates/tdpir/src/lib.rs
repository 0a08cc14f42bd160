//! Private information retrieval from transversal designs.
//!
//! A database is encoded into the kernel code of a transversal design's
//! incidence matrix and split across one server per design group. Retrieval
//! sends one local index to each server; every server reads a single stored
//! symbol and the client reconstructs the target with `ell - 1` additions.
//! Queries to any single server (or to any collusion below the design
//! strength) carry no information about the retrieved index.
//!
//! Module map:
//! - [`ff`]: exact arithmetic in GF(p^e), canonical element encoding;
//! - [`linalg`]: rank / RREF / kernels over GF(p), bit-packed for p = 2,
//!   with streaming rank for very large incidence matrices;
//! - [`design`]: transversal designs from affine and projective geometry
//!   and from orthogonal arrays, plus exhaustive verifiers;
//! - [`basecodes`]: base codes (GRS, Golay, Reed-Muller, hyperoval MDS),
//!   orthogonal arrays of their codewords, dual distance, divisibility;
//! - [`inccode`]: codes of designs and incidence codes, dimension bounds,
//!   the Reed-Solomon dimension census;
//! - [`hamada`]: closed-form geometry ranks used as an independent oracle;
//! - [`pir`]: the retrieval protocol, privacy audits, cost accounting.
//!
//! The `parallel` feature (on by default) parallelizes rank reductions,
//! verification sweeps, audits and the census with rayon; disabling it
//! yields identical results on one thread.

pub mod basecodes;
mod comb;
pub mod design;
pub mod error;
pub mod ff;
pub mod hamada;
pub mod inccode;
pub mod linalg;
mod par;
pub mod pir;

pub use error::{Error, Result};
