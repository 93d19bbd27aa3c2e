//! The constructive polychromatic coloring chain: bottomless at m = 4k-3,
//! bottomless-or-topless at 8k-5, unit-height at 16k-11, plus the generic
//! peeling route at m = 10(k-1)+1. Each coloring is verified by enumerating
//! every edge of the claimed size and checking all k colors appear.
//!
//!     cargo run --example coloring_chain

use polychrome::coloring::{
    bl_tl_polychromatic, bottomless_m_literature, bottomless_m_used,
    bottomless_peeled_polychromatic, bottomless_polychromatic, unit_height_polychromatic,
};
use polychrome::geometry::{
    enumerate_hyperedges, random_point_set, random_unit_height_point_set, RangeFamily,
};
use polychrome::verify::{check_balanced, check_polychromatic};

fn main() -> anyhow::Result<()> {
    let ps = random_point_set(2, 500, 11)?;
    let uh = random_unit_height_point_set(800, 4, 12)?;

    for k in [2usize, 3, 4] {
        let m = bottomless_m_used(k);
        let c = bottomless_polychromatic(&ps, k)?;
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::Bottomless, m)?;
        let poly = check_polychromatic(&h, &c)?;
        let bal = check_balanced(&h, &c, 4)?;
        println!(
            "bottomless   k={k}: m={m:>2} ({} edges) polychromatic={} 4-balanced={} (literature: {})",
            h.edge_count(),
            poly.pass,
            bal.pass,
            bottomless_m_literature(k)
        );
        assert!(poly.pass && bal.pass);

        let (c, m) = bl_tl_polychromatic(&ps, k)?;
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::BottomlessOrTopless, m)?;
        let poly = check_polychromatic(&h, &c)?;
        println!(
            "bl-or-tl     k={k}: m={m:>2} ({} edges) polychromatic={}",
            h.edge_count(),
            poly.pass
        );
        assert!(poly.pass);

        let (c, m) = unit_height_polychromatic(&uh, k)?;
        let (h, _) = enumerate_hyperedges(&uh, RangeFamily::UnitHeight, m)?;
        let poly = check_polychromatic(&h, &c)?;
        println!(
            "unit-height  k={k}: m={m:>2} ({} edges) polychromatic={}",
            h.edge_count(),
            poly.pass
        );
        assert!(poly.pass);

        // Peeling trades edge size for generality: any t-shallow hitting set
        // source gives m = t(k-1)+1, here t = 10.
        let (c, m) = bottomless_peeled_polychromatic(&ps, k)?;
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::Bottomless, m)?;
        let poly = check_polychromatic(&h, &c)?;
        println!(
            "peeled       k={k}: m={m:>2} ({} edges) polychromatic={}",
            h.edge_count(),
            poly.pass
        );
        assert!(poly.pass);
    }
    Ok(())
}
