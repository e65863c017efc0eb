//! # synideal
//!
//! Synchronizing automata whose set of reset words is a principal ideal
//! `Σ*wΣ*` over the alphabet `{a, b}`.
//!
//! * [`ideal`] builds the minimal acceptor of `Σ*wΣ*`.
//! * [`construction`] builds a strongly connected synchronizing automaton with
//!   `|w| + 1` states whose reset words are exactly `Σ*wΣ*`, together with two
//!   explicit families for `w = a^(n-1)b`.
//! * [`subset`] provides power and pair automata, language comparison and
//!   shortest reset words, which is how every construction is verified.
//! * [`syntactic`] computes transition semigroups and the syntactic complexity
//!   of `Σ*wΣ*`, and evaluates its closed formula.
//! * [`search`] exhaustively enumerates small automata to measure reset
//!   complexity.
//!
//! ```
//! use synideal::{construction::construct_sc, ideal::minimal_ideal_dfa, subset, Word};
//!
//! let w: Word = "aabab".parse().unwrap();
//! let (b, _trace) = construct_sc(&w).unwrap();
//! assert!(b.is_strongly_connected());
//! let syn = subset::syn_acceptor(&b, subset::DEFAULT_SUBSET_LIMIT).unwrap();
//! assert!(subset::languages_equal(&syn, &minimal_ideal_dfa(&w)).unwrap().is_equal());
//! ```

pub mod cli;
pub mod construction;
pub mod dfa;
pub mod document;
pub mod error;
pub mod ideal;
pub mod search;
pub mod subset;
pub mod syntactic;
pub mod word;

pub use dfa::{Dfa, Transformation};
pub use error::{Error, Result};
pub use word::{Letter, Word};

/// Resource limits shared by the subset and semigroup constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub subset_limit: usize,
    pub closure_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_limit: subset::DEFAULT_SUBSET_LIMIT,
            closure_limit: syntactic::DEFAULT_CLOSURE_LIMIT,
        }
    }
}
