//! Render a reversible machine's flow diagram as DOT (fixed points show as
//! self-loops). Pipe into graphviz: `... | dot -Tsvg > flow.svg`.
//!
//!     cargo run -p revaut --example flow_diagram

use revaut::cli::export_dot;
use revaut::Automaton;

fn main() -> revaut::Result<()> {
    let machine = Automaton::parse(include_str!("table1.aut"))?;
    print!("{}", export_dot(&machine)?);
    Ok(())
}
