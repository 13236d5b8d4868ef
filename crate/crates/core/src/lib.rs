//! Finite-quotient machinery for finitely presented groups, specialised to
//! residually finite Baumslag–Solitar groups.
//!
//! The crate computes with group presentations (parsing, free and cyclic
//! reduction), enumerates cosets (Todd–Coxeter), searches subgroups of low
//! index up to conjugacy, computes integer Smith normal forms and
//! abelianizations, and assembles truncated finite-quotient fingerprints
//! `C_N(G)`. On top of that sits a decision procedure for profinite
//! equivalence of residually finite Baumslag–Solitar groups that produces
//! explicit separating quotients as certificates.
//!
//! Everything here is deterministic: identical inputs give identical outputs,
//! including orderings. The crate is `no_std` (it requires `alloc`); all IO,
//! serialization, and the command-line front end live in the companion
//! `profinito` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bs;
pub mod fingerprint;
pub mod low_index;
pub mod perm;
pub mod presentation;
pub mod snf;
pub mod todd_coxeter;

pub use bs::{certify_distinction, profinitely_isomorphic, BsError, Certificate};
pub use fingerprint::{compute_fingerprint, diff_fingerprints, Fingerprint, FiniteQuotient};
pub use perm::{PermGroup, Permutation};
pub use presentation::{BsParams, GroupPresentation, Word};
pub use snf::AbelianInvariants;
pub use todd_coxeter::{coset_enumerate, CosetTable};
