//! Watch the same reversible run through interfaces of different coarseness:
//! a lossless readout, a state-only readout, and a two-macrostate partition.
//!
//!     cargo run -p revaut --example coarse_graining

use revaut::interface::coarse_grain;
use revaut::{Automaton, Configuration, InterfaceMap};

fn main() -> revaut::Result<()> {
    let machine = Automaton::parse(include_str!("table1.aut"))?;
    let trajectory = machine.run_closed(&Configuration::new("s1", "3"), 5)?;

    let micro: Vec<String> = trajectory.steps.iter().map(|c| c.to_string()).collect();
    println!("micro trajectory: {}", micro.join(" "));

    let identity = InterfaceMap::identity_readout(&machine);
    println!(
        "identity readout: {}",
        coarse_grain(&machine, &identity, "which", &trajectory)?.join(" ")
    );

    let state_only = InterfaceMap::parse(include_str!("state_readout.ifc"), &machine)?;
    println!(
        "state readout:    {}",
        coarse_grain(&machine, &state_only, "state", &trajectory)?.join(" ")
    );

    for (name, m) in [("identity", &identity), ("state-only", &state_only)] {
        let c = m.classify();
        println!("\n{name} readout is {}", c.overall);
        for (question, counts) in &c.preimage_sizes {
            let sizes: Vec<String> = counts
                .iter()
                .map(|(ans, n)| format!("{ans}<-{n}"))
                .collect();
            println!("  question \"{question}\": preimage sizes {}", sizes.join(" "));
        }
    }

    // a partition of four microstates onto two macrostates: distinct micro
    // sequences become the same macro sequence
    let partition = InterfaceMap::from_table(
        vec!["macro".into()],
        vec!["I".into(), "II".into()],
        4,
        &[
            ("macro".into(), 0, "I".into()),
            ("macro".into(), 1, "I".into()),
            ("macro".into(), 2, "II".into()),
            ("macro".into(), 3, "II".into()),
        ],
    )?;
    println!(
        "\npartition readout of micro indices [0,2,3]: {}",
        partition.coarse_grain_indices("macro", &[0, 2, 3])?.join(" ")
    );
    Ok(())
}
