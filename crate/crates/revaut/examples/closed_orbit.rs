//! Run a reversible machine in closed loop (every output fed back as the
//! next input), then walk the whole trajectory backwards to the start.
//!
//!     cargo run -p revaut --example closed_orbit

use revaut::{Automaton, Configuration};

fn main() -> revaut::Result<()> {
    let doc = include_str!("table1.aut");
    let machine = Automaton::parse(doc)?;

    println!(
        "machine: {} states, {} symbols, reversible = {}",
        machine.states().len(),
        machine.inputs().len(),
        machine.check_reversible().reversible
    );

    // (s1,3) sits on a period-3 orbit
    let start = Configuration::new("s1", "3");
    let trajectory = machine.run_closed(&start, 5)?;
    println!("\nclosed-loop run from {start}:");
    for (t, c) in trajectory.steps.iter().enumerate() {
        println!("  t={t}  {c}");
    }

    // (s1,1) is a fixed point of the combined map
    let parked = machine.run_closed(&Configuration::new("s1", "1"), 5)?;
    println!(
        "\n(s1,1) after 5 steps: still {}",
        parked.steps.last().unwrap()
    );

    // the inverse machine retraces the run exactly
    let restored = machine.undo_trajectory(&trajectory)?;
    println!("\nundo of the 5-step run lands on {restored}");
    assert_eq!(restored, start);
    Ok(())
}
