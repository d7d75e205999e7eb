//! The four-step protocol: draw a hidden outcome, let the observer measure
//! it, undo the measurement so no physical record remains, ask for a
//! prediction, then replay the measurement and compare.
//!
//! An agent whose memory lives inside the simulated physics loses its
//! record with the undo and can only guess at chance. An agent holding the
//! outcome on an out-of-band channel predicts perfectly. One wrong
//! prediction falsifies the out-of-band claim.
//!
//!     cargo run -p revaut --example transcendent_self

use revaut::experiments::transcendence_experiment;
use revaut::Agent;

fn main() -> revaut::Result<()> {
    for agent in [Agent::Transcendent, Agent::Immanent] {
        let report = transcendence_experiment(3, agent, 10_000, 42)?;
        println!("{report}\n");
    }

    // chance scales as 1/k for the immanent agent
    println!("immanent match rate against alphabet size (10,000 trials each):");
    for k in [2u64, 3, 4, 8, 16] {
        let r = transcendence_experiment(k, Agent::Immanent, 10_000, 7)?;
        println!(
            "  k={k:<2}  match_rate={:.4}  (chance {:.4})",
            r.match_rate,
            1.0 / k as f64
        );
    }
    Ok(())
}
