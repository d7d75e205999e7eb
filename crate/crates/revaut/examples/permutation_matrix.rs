//! Export a reversible machine's combined step map as a permutation: image
//! array, 0/1 matrix, and cycle decomposition.
//!
//!     cargo run -p revaut --example permutation_matrix

use revaut::permutation::to_permutation;
use revaut::Automaton;

fn main() -> revaut::Result<()> {
    let machine = Automaton::parse(include_str!("table1.aut"))?;
    let p = to_permutation(&machine)?;

    println!("configurations in canonical order:");
    for idx in 0..machine.config_count() {
        println!("  {idx} = {}", machine.config_at(idx));
    }

    let image: Vec<String> = p.image().iter().map(|v| v.to_string()).collect();
    println!("\nimage: {}", image.join(" "));
    println!("\n{}", p.matrix_text());

    let cycles = p.cycle_decomposition();
    println!("cycles: {cycles}");
    println!(
        "after {} steps every configuration is back where it started",
        cycles.order()
    );

    // powers walk the orbit; negative powers walk it backwards
    let idx = machine.config_index(&revaut::Configuration::new("s1", "3"))?;
    println!(
        "\nU^3({}) = {}, U^-1(U({})) = {}",
        idx,
        p.apply_power(3, idx)?,
        idx,
        p.apply_power(-1, p.apply_power(1, idx)?)?,
    );
    Ok(())
}
