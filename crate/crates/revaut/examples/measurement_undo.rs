//! Measure, then unmeasure: the register briefly holds the result, the undo
//! wipes it, and the whole composite returns to its exact starting state.
//! No record of the measurement can survive a true undo.
//!
//!     cargo run -p revaut --example measurement_undo

use revaut::experiments::{eraser_experiment, measure, unmeasure};
use revaut::CompositeSystem;

fn main() -> revaut::Result<()> {
    let initial = CompositeSystem::new(2, 1, 0)?;
    println!("initial   {initial}");
    let measured = measure(&initial);
    println!("measured  {measured}   <- the observer now knows the object is 1");
    let undone = unmeasure(&measured);
    println!("unmeasured {undone}  <- and now it never knew");
    assert_eq!(undone, initial);

    // the full report form, on a larger alphabet
    let report = eraser_experiment(CompositeSystem::new(5, 3, 4)?, 0);
    println!("\nk=5 run:");
    for (i, s) in report.steps.iter().enumerate() {
        println!("  step {i}: {s}");
    }
    println!(
        "restored={} trace_left={} mid_register={}",
        report.restored, report.trace_left, report.mid_register
    );

    // restoration is not a property of lucky inputs
    let mut checked = 0;
    for k in 1..=12u64 {
        for object in 0..k {
            for register in 0..k {
                let c = CompositeSystem::new(k, object, register)?;
                assert_eq!(unmeasure(&measure(&c)), c);
                checked += 1;
            }
        }
    }
    println!("\nround trip verified on all {checked} composite states with k <= 12");
    Ok(())
}
