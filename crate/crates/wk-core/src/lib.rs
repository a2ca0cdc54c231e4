//! Watson-Crick automata with restricted lower strands.
//!
//! A Watson-Crick automaton reads a double strand — two equal-length words
//! whose positions are paired by a complementarity relation ρ — with one
//! independent head per strand and a single control state. The restricted
//! variant additionally constrains the lower strand to a language L, which
//! this crate models across five classes (finite, regular, unary regular,
//! context free, context sensitive), each with an exact membership decider.
//!
//! On top of the machine models sit executable constructions relating them:
//!
//! * [`constructions::lift_to_restricted`] — a plain deterministic machine
//!   as a restricted one with the universal restriction;
//! * [`constructions::to_one_limited`] — normal form where every rule reads
//!   exactly one symbol from exactly one strand;
//! * [`constructions::product_with_dfa`] — folds a regular restriction into
//!   the state, yielding a plain deterministic machine;
//! * [`constructions::lift_dfa`] — embeds a DFA under a unary restriction;
//! * [`constructions::stateless_identity`] — the one-state identity machine
//!   whose language is exactly its restriction;
//! * [`constructions::to_pda`] — simulates a unary-restricted machine by a
//!   pushdown automaton accepting by empty stack.
//!
//! Each construction is falsifiable at desk scale through the [`oracle`]
//! module, which enumerates words in a canonical order and compares
//! acceptors up to a length bound.
//!
//! The crate is `no_std` (with `alloc`); parsing, file formats and the
//! command-line front end live in the companion `wkkit` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constructions;
pub mod dfa;
pub mod error;
pub mod grammar;
pub mod oracle;
pub mod pda;
pub mod restriction;
pub mod wk;
pub mod word;

pub use dfa::Dfa;
pub use error::{ConstructionError, DefinitionError, ResourceBound, RunError, StrandError};
pub use grammar::{Cfg, CfgRule, Csg, CsgRule};
pub use pda::{Pda, PdaRule, StackDiscipline};
pub use restriction::{Limits, RestrictedWkAutomaton, RestrictionLanguage};
pub use wk::{
    Classification, ComplementarityRelation, DoubleStrand, Transition, WkAutomaton,
    WkConfiguration,
};
pub use word::{prefix_comparable, StateId, Symbol, Word};
