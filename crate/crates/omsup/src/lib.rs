//! A synthesis and verification toolkit for supervisory control of
//! discrete-event systems with infinite behavior.
//!
//! A plant is modeled as a deterministic finite automaton generating both
//! finite strings (the marker set distinguishes completed tasks) and infinite
//! strings (a Büchi set distinguishes the behaviors that remain live
//! forever). Given a plant, a safety specification on finite strings, and
//! liveness bounds on infinite strings, the toolkit computes a supervisor
//! that disables only controllable events and keeps the closed loop
//! nonblocking in the infinite-behavior sense — every finite history can be
//! extended to an infinite behavior that meets the liveness specification —
//! or reports that no such supervisor exists, with a witness.
//!
//! The crate is organized bottom-up:
//!
//! - [`alphabet`], [`automaton`], [`lasso`]: core types — partitioned event
//!   alphabets, deterministic automata serving both the finite-string and
//!   infinite-string views, and ultimately periodic strings.
//! - [`ops`]: language operators over both views (prefix closure, limits,
//!   intersections, containment with counterexamples).
//! - [`star`]: supremal controllable sublanguage synthesis on the
//!   finite-string view.
//! - [`omega`]: supremal controllable sublanguage synthesis on the
//!   infinite-string view, via a Büchi game.
//! - [`solver`]: the coupled fixpoint combining both views, the solvability
//!   gate, cycle pruning, and supervisor assembly.
//! - [`verify`]: independent checks of supervisor properties
//!   (nonblockingness, deadlock and livelock freedom, controllability).
//! - [`oracle`]: brute-force reference implementations and random instance
//!   generators used to cross-check the main algorithms.
//! - [`format`], [`dot`], [`cli`]: a line-oriented text format for automata,
//!   Graphviz export, and the `omsup` command-line interface.

#![forbid(unsafe_code)]

pub mod alphabet;
pub mod automaton;
pub mod cli;
pub mod dot;
pub mod fixtures;
pub mod format;
mod graph;
pub mod lasso;
pub mod omega;
pub mod ops;
pub mod oracle;
pub mod solver;
pub mod star;
pub mod verify;

pub use alphabet::{Alphabet, ControlPattern, EventId};
pub use automaton::{Automaton, StateId};
pub use lasso::Lasso;
