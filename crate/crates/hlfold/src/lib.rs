//! Hall–Littlewood coefficients L_{λ,μ}(q) for root systems of type A, B, C,
//! computed by counting positively folded one-skeleton galleries, together
//! with the classical oracles used to check them.

pub mod apartment;
pub mod error;
pub mod folding;
pub mod gallery;
pub mod hlengine;
pub mod oracles;
pub mod poly;
pub mod residue;
pub mod rootdata;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
pub use poly::QPoly;
pub use rootdata::{Family, RootSystem, RootSystemSpec, RootVec, WId, Q};
