//! Axis-aligned strips in 2 and 3 dimensions: block partition, dual
//! hypergraph, shallow hitting edge set, and the resulting 3t'-shallow
//! hitting point set; then a polychromatic coloring through the same dual.
//!
//!     cargo run --example strips_pipeline

use polychrome::geometry::{enumerate_hyperedges, random_point_set, RangeFamily};
use polychrome::strips::{
    build_window_hypergraph, strips_polychromatic_coloring, strips_shallow_hitting,
};
use polychrome::verify::check_polychromatic;

fn main() -> anyhow::Result<()> {
    for (dim, n, m) in [(2usize, 200usize, 10usize), (3, 240, 12)] {
        let ps = random_point_set(dim, n, 5)?;
        let wh = build_window_hypergraph(&ps, m)?;
        println!(
            "d={dim}: blocks of r={} points, {} blocks total, dual is {}-uniform {}-regular",
            wh.block_size,
            wh.hypergraph.edge_count(),
            dim,
            wh.block_size,
        );

        let mut rep = strips_shallow_hitting(&ps, m)?;
        let t_prime = rep.t_prime.expect("search regime records t'");
        let checks = rep.verify_against(&ps)?;
        assert!(checks.iter().all(|c| c.pass));
        println!(
            "  hitting set: {} points, block depth t'={}, strip depth {} <= 3t'={}",
            rep.x.len(),
            t_prime,
            rep.achieved["strips-axis-aligned"],
            3 * t_prime
        );

        let k = 3;
        let c = strips_polychromatic_coloring(&ps, k, m)?;
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::StripsAxisAligned, m)?;
        let poly = check_polychromatic(&h, &c)?;
        println!("  {k}-coloring of {} strip edges: polychromatic={}", h.edge_count(), poly.pass);
        assert!(poly.pass);
    }
    Ok(())
}
