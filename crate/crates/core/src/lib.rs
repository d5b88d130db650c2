//! Compositional encodings of finite meaning tables as non-well-founded sets.
//!
//! The crate is layered bottom-up:
//!
//! - [`hyperset`]: accessible pointed graphs, bisimulation, pairing, decoration
//! - [`eqsolver`]: unique solutions of finite systems of set equations
//! - [`langmodel`]: finite languages with a meaning table and substitutional synonymy
//! - [`mu_encoder`]: the compositional encoding `μ` and its checks
//! - [`wf_encoder`]: the well-founded encoding and its table-driven application
//! - [`relsem`]: scope readings generated with quantifier storage

pub mod eqsolver;
pub mod hyperset;
pub mod langmodel;
pub mod mu_encoder;
pub mod relsem;
pub mod report;
pub mod wf_encoder;
