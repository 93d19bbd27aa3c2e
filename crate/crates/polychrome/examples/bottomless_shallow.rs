//! Build a 10-shallow hitting set for bottomless rectangles and verify it by
//! full enumeration.
//!
//!     cargo run --example bottomless_shallow

use polychrome::geometry::random_point_set;
use polychrome::shallow::bottomless_shallow_hitting;

fn main() -> anyhow::Result<()> {
    let ps = random_point_set(2, 400, 7)?;
    let m = 23;
    let mut report = bottomless_shallow_hitting(&ps, m)?;
    println!(
        "n = {}, m = {}: selected {} of {} points (sweep used w = {} classes)",
        ps.len(),
        m,
        report.x.len(),
        ps.len(),
        report.w
    );

    for check in report.verify_against(&ps)? {
        println!("  {} -> {}", check.property, if check.pass { "ok" } else { "FAIL" });
    }
    println!(
        "deepest edge intersection: {} (claimed bound {})",
        report.achieved["bottomless"], report.guarantee
    );
    assert!(report.guarantee_respected());
    Ok(())
}
