//! Entropy bookkeeping: one-to-one evolution rearranges a distribution and
//! conserves its entropy exactly; a many-to-one readout merges probabilities
//! and can only lose.
//!
//!     cargo run -p revaut --example entropy_conservation

use revaut::permutation::to_permutation;
use revaut::{sig6, Automaton, Distribution, InterfaceMap};

fn main() -> revaut::Result<()> {
    let machine = Automaton::parse(include_str!("table1.aut"))?;
    let step = to_permutation(&machine)?;

    let mut d = Distribution::new(vec![0.5, 0.2, 0.1, 0.1, 0.05, 0.05])?;
    println!("micro entropy at t=0: {} bits", sig6(d.entropy()));
    for t in 1..=3 {
        d = d.push_forward(&step)?;
        println!("micro entropy at t={t}: {} bits", sig6(d.entropy()));
    }

    let state_only = InterfaceMap::parse(include_str!("state_readout.ifc"), &machine)?;
    let macro_d = d.project(&state_only, "state")?;
    println!(
        "\nmacro distribution over states: p(s1)={} p(s2)={}",
        sig6(macro_d.probs()[0]),
        sig6(macro_d.probs()[1]),
    );
    println!(
        "macro entropy: {} bits  (micro held {} bits)",
        sig6(macro_d.entropy()),
        sig6(d.entropy()),
    );
    println!(
        "bits lost at the interface: {}",
        sig6(d.entropy() - macro_d.entropy())
    );
    Ok(())
}
