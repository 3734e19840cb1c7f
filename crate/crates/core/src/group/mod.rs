//! The matrix Hecke group G_q = ⟨V, A₁⟩ ⊂ SL₂(Z[λ]).

pub mod cf;
pub mod mat2;
pub mod membership;
pub mod relations;
pub mod tuple;
pub mod word;

pub use cf::{CfExpansion, Projective};
pub use mat2::{Generators, Mat2};
pub use membership::MembershipTrace;
pub use relations::{RelationCheck, RelationsReport};
pub use tuple::CanonicalTuple;
pub use word::{Gen, Token, Word};
