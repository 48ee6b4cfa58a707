//! Combinatorics of Motzkin skeletons of lambda terms in de Bruijn form.
//!
//! A skeleton is what remains of a de Bruijn term once the variable indices
//! are erased. This crate enumerates skeletons and closed terms by size,
//! decides which skeletons are (uniquely) closable and (uniquely) typable,
//! counts the skeleton families exactly through their generating functions,
//! and draws large uniform random skeletons with Boltzmann samplers.

pub mod enumerate;
pub mod sampler;
pub mod series;
pub mod size;
pub mod term;
pub mod typecheck;

pub use size::{IndexKind, SeqIndex, SizePolicy, SIZE_POLICY};
pub use term::{Index, Label, Shape, Skeleton, Term, TermError, Tree};
