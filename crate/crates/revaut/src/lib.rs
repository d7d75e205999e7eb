//! Reversible Mealy automata, the coarse-grained interfaces that observe
//! them, and exact information accounting.
//!
//! The library simulates symbolic dynamics whose combined transition/output
//! map is one-to-one, and everything that follows from that single property:
//!
//! - [`automaton`]: define, validate, run, invert, and undo reversible
//!   machines ([`Automaton`], [`Configuration`], [`Trajectory`]);
//! - [`permutation`]: the combined map as a permutation of configuration
//!   indices, with matrix form, cycles, orders, and signed powers;
//! - [`interface`]: question-indexed readouts from micro configurations to
//!   macro symbols, injectivity classification, and observer-side state
//!   estimation by preimage filtering;
//! - [`information`]: Shannon entropy over micro/macro distributions, flow
//!   density `j = N v i`, surface and sphere flow, and an integer lattice
//!   continuity law;
//! - [`experiments`]: measurement-undo on composite systems and the
//!   four-step transcendent-self protocol as a seeded statistical test;
//! - [`cli`]: the `revaut` command-line front end over the text document
//!   formats.
//!
//! Start with the runnable examples (`cargo run --example closed_orbit`),
//! each of which walks one capability end to end.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod automaton;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod information;
pub mod interface;
pub mod permutation;

pub use automaton::{Automaton, Configuration, ReversibilityReport, Trajectory};
pub use error::{Error, Result};
pub use experiments::{Agent, CompositeSystem, EraserReport, TranscendenceReport, Verdict};
pub use information::{ContinuityReport, Distribution, LatticeFlow, SurfacePatch, Transfer};
pub use interface::{CandidateSet, InterfaceClassification, InterfaceMap, MapKind, Scenario};
pub use permutation::{CycleDecomposition, Permutation};

/// Formats a number to six significant digits, the fixed precision of all
/// numeric CLI and report output. Magnitudes outside a readable range fall
/// back to scientific notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}
