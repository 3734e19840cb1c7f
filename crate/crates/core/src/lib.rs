//! Hecke groups G_q and their odd vanishing cycles in Z[ζ], ζ = e^{iπ/q}.

pub mod cycles;
pub mod error;
pub mod field;
pub mod group;
pub mod output;
pub mod q5;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Context, CycInt, QLambda, ZLambda};
