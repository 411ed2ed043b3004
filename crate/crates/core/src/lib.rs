//! Finitely presented groups from 4-manifold topology: presentations,
//! coset enumeration, abelian invariants, concrete group models and the
//! builders that produce presentations from geometric data.

pub mod abelian;
pub mod builders;
pub mod claims;
pub mod coset;
pub mod matrix;
pub mod models;
pub mod monodromy;
pub mod parse;
pub mod presentation;
pub mod words;

pub use abelian::{abelian_invariants, smith_normal_form, surgery_h1, AbelianInvariants};
pub use coset::{enumerate, group_order, quotient_order, EnumerationLimits, GroupOrder, Strategy};
pub use matrix::IntegerMatrix;
pub use presentation::Presentation;
pub use words::{Generator, Letter, Word};
