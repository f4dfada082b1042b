//! Simulation of Leggett-Garg tests on a photonic qutrit probed with
//! unambiguous (pass-one-mode) and ambiguous (block-one-mode) intermediate
//! measurements: exact correlators and signalling quantities, inferred
//! quasi-probabilities, Monte Carlo noise emulation, and parameter search.

pub mod error;
pub mod noise;
pub mod output;
pub mod preset;
pub mod qutrit;
pub mod search;
pub mod stats;

pub use error::{Error, Result};
