//! The three rectangle-family hitting sets beyond plain bottomless: the
//! asymmetric 14/7 set, the 21-shallow union set, and the 63-shallow
//! unit-height set built from per-slab unions.
//!
//!     cargo run --example union_and_slabs

use polychrome::geometry::{random_point_set, random_unit_height_point_set};
use polychrome::shallow::{
    bl_tl_asymmetric_set, bl_tl_shallow_hitting, unit_height_shallow_hitting,
};

fn main() -> anyhow::Result<()> {
    let ps = random_point_set(2, 600, 3)?;
    let m = 31;

    // One sweep, two guarantees: hits every bottomless edge at most 14 times
    // while staying at most 7 deep in every topless edge.
    let mut asym = bl_tl_asymmetric_set(&ps, m)?;
    for check in asym.verify_against(&ps)? {
        println!("asymmetric: {} -> {}", check.property, if check.pass { "ok" } else { "FAIL" });
    }

    let mut union = bl_tl_shallow_hitting(&ps, m)?;
    for check in union.verify_against(&ps)? {
        println!("union:      {} -> {}", check.property, if check.pass { "ok" } else { "FAIL" });
    }
    println!(
        "union set size {} / {} points, deepest {}",
        union.x.len(),
        ps.len(),
        union.achieved["bottomless-or-topless"]
    );

    // Unit-height rectangles: three y-slabs of points, m' = ceil(m/2) per slab.
    let uh = random_unit_height_point_set(700, 3, 4)?;
    let mut slab = unit_height_shallow_hitting(&uh, m)?;
    for check in slab.verify_against(&uh)? {
        println!("unit-height: {} -> {}", check.property, if check.pass { "ok" } else { "FAIL" });
    }
    println!(
        "unit-height set size {} / {} points, deepest {}",
        slab.x.len(),
        uh.len(),
        slab.achieved["unit-height"]
    );

    assert!(asym.guarantee_respected());
    assert!(union.guarantee_respected());
    assert!(slab.guarantee_respected());
    Ok(())
}
