//! Finite automata and rational expressions over graph alphabets.
//!
//! A graph alphabet is a directed multigraph whose edges are the letters;
//! words are walks, typed by their source and target vertices. Automata
//! label states with vertices and transitions with edges so that every
//! accepting path spells a well-typed walk.

pub mod alphabet;
pub mod automaton;
pub mod cli;
pub mod minimize;
pub mod ops;
pub mod oracle;
pub mod random;
pub mod rational;
