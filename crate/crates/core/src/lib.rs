//! String abstract interpretation with finite automata whose alphabet is
//! made of whole strings plus an unknown-string symbol `⊤`.
//!
//! [`automata`] holds the automaton library, [`regex`] the regex view and
//! substring extraction, [`tarsis`] the string domain, [`value_domains`]
//! intervals, booleans and the baseline string domains, [`imp`] the toy
//! language and [`analysis`] the concrete and abstract interpreters.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod automata;
pub mod imp;
pub mod regex;
pub mod tarsis;
pub mod value_domains;
