//! Orbits and expandability for semigroups and groups generated by
//! letter-to-letter transducers (Mealy automata).
//!
//! A word `u` is *k-expandable* when some suffix `x` makes the orbit
//! `Q* ∘ ux` at least `k` elements larger than `Q* ∘ u`. The crate decides this
//! for arbitrary deterministic automata ([`expand`]), characterizes it
//! through shifted stabilizers for automaton groups ([`group`]), constructs
//! witnesses for complete reversible automata ([`reversible`]) and solves the
//! word problem for state sequences ([`semigroup`]).
//!
//! ```
//! use orbitex::{builtins, expand, Machine};
//!
//! let m = Machine::new(&builtins::adding_machine()).unwrap();
//! let u = m.parse_word("0").unwrap();
//! let v = expand::decide_k_expandable(&m, expand::ExpandQuery { u: &u, k: 1 });
//! assert_eq!(m.format_word(v.witness.as_ref().unwrap()), "0");
//! ```

pub mod action;
pub mod automaton;
pub mod builtins;
pub mod error;
pub mod expand;
pub mod group;
pub mod orbit;
pub mod reversible;
pub mod semigroup;

pub use action::{Machine, StateSeq, Word};
pub use automaton::{Automaton, Classification, Letter, SignedState, StateId, Transition};
pub use error::{Error, Result};
pub use expand::{Status, Verdict};
