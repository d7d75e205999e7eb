//! The conservation law as integer bookkeeping: bits hop between lattice
//! cells and every tick must balance exactly, cell by cell and across any
//! designated region boundary.
//!
//!     cargo run -p revaut --example lattice_continuity

use revaut::{LatticeFlow, Transfer};

fn main() -> revaut::Result<()> {
    let lattice = LatticeFlow::parse(include_str!("two_cell.lat"))?;
    let (after, report) = lattice.tick()?;
    println!("{report}");
    println!("contents after the tick: {:?}\n", after.cells());
    assert!(report.conserved());

    // a 2x2 ring circulating bits forever
    let mut ring = LatticeFlow::new(
        vec![8, 0, 0, 0],
        vec![
            Transfer { from: 0, to: 1, amount: 2 },
            Transfer { from: 1, to: 3, amount: 0 },
            Transfer { from: 3, to: 2, amount: 0 },
            Transfer { from: 2, to: 0, amount: 0 },
        ],
    )?;
    println!("ring contents over 6 ticks (transfers shift with the bits):");
    println!("  t=0: {:?} total={}", ring.cells(), ring.total_bits());
    for t in 1..=6 {
        // move two bits out of every occupied cell, clockwise
        let transfers: Vec<Transfer> = [(0usize, 1usize), (1, 3), (3, 2), (2, 0)]
            .iter()
            .map(|&(from, to)| Transfer {
                from,
                to,
                amount: ring.cells()[from].min(2),
            })
            .collect();
        let (next, report) = ring.with_transfers(transfers)?.tick()?;
        assert!(report.conserved());
        ring = next;
        println!("  t={t}: {:?} total={}", ring.cells(), ring.total_bits());
    }
    Ok(())
}
