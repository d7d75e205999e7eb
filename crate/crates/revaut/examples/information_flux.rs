//! Information transport through surfaces: flow density j = N v i, the
//! closed-sphere formula 4 pi r^2 c i, and its icosphere discretization
//! converging quadratically.
//!
//!     cargo run -p revaut --example information_flux

use revaut::information::{
    flux_density, icosphere_patches, sphere_flow, surface_flow, LIGHT_SPEED,
};
use revaut::sig6;

fn main() -> revaut::Result<()> {
    // a million carriers per cubic metre at sound speed, one bit each
    let j = flux_density(1e6, 330.0, 1.0)?;
    println!("flow density: {} bits/m^2/s", sig6(j));

    // single-bit flow through a 0.13 m sphere at light speed; the rounded
    // 3e8 figure shifts the answer by less than a tenth of a percent
    let exact = sphere_flow(0.13, 3e8, 1.0)?;
    println!("sphere flow at r=0.13 m: {} bits/s", sig6(exact));
    println!(
        "         with c={}: {} bits/s",
        sig6(LIGHT_SPEED),
        sig6(sphere_flow(0.13, LIGHT_SPEED, 1.0)?)
    );

    println!("\nicosphere refinement:");
    println!("{:>8}  {:>14}  {:>12}", "facets", "flow (bits/s)", "rel. error");
    for level in 0..5 {
        let patches = icosphere_patches(0.13, level, 3e8)?;
        let flow = surface_flow(&patches);
        let rel = (flow - exact).abs() / exact;
        println!("{:>8}  {:>14}  {:>12}", patches.len(), sig6(flow), sig6(rel));
    }
    Ok(())
}
