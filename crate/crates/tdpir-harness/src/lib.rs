//! Operational shell for the transversal-design retrieval protocol: a
//! length-prefixed wire format, share files, a multi-server simulator (TCP
//! and in-process loopback), columnar database chunking, and scheme file
//! I/O. The `tdpir` binary wires these into a CLI.

pub mod chunk;
pub mod client;
pub mod error;
pub mod scheme_io;
pub mod server;
pub mod wire;

pub use error::{HarnessError, Result};
