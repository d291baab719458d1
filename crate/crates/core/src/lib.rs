//! Antichain-based decision procedures for Büchi automata.
//!
//! The crate decides emptiness of alternating Büchi automata, universality of
//! nondeterministic Büchi automata, and language inclusion between two NBW,
//! without ever building a complement or breakpoint automaton. Each problem is
//! reduced to the emptiness fixed point of an implicit automaton whose state
//! space carries a simulation order; the iterates of the fixed point are then
//! downward closed and are stored as antichains of maximal elements.
//!
//! The [`oracle`] module holds explicit, brute-force versions of the same
//! constructions for cross-checking at small sizes, and [`randgen`] generates
//! random automata deterministically from a seed.

pub mod alt;
pub mod antichain;
pub mod automaton;
pub mod error;
pub mod fixpoint;
pub mod incl;
pub mod oracle;
pub mod randgen;
pub mod univ;

pub use alt::{abw_empty, AltDomain, MhPair};
pub use antichain::{Antichain, Preorder};
pub use automaton::{eval_formula, pre_nbw, Abw, Letter, Nbw, PosFormula, StateId, StateSet};
pub use error::{Diagnostic, Error, InvalidAutomaton, Timeout};
pub use fixpoint::{buchi_fix, gen_buchi_fix, BuchiDomain, FixOptions, GenBuchiDomain};
pub use incl::is_included;
pub use univ::{is_universal, RankFn, RankPair, RankSpace, UnivDomain};
