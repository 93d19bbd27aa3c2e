//! Two structural properties of the sweeps, demonstrated rather than merely
//! asserted: class labels are final the moment the sweep-line passes a point
//! (semi-online), and the upside-down asymmetric sweep equals the plain sweep
//! on the y-reflected input (conjugacy).
//!
//!     cargo run --example semi_online_sweep

use polychrome::geometry::random_point_set;
use polychrome::shallow::{bl_tl_union_parts, sweep_assignment_log, SweepOptions};

fn main() -> anyhow::Result<()> {
    let ps = random_point_set(2, 300, 9)?;
    let classes = 6;

    let full = sweep_assignment_log(&ps, classes)?;
    println!("full run: {} assignments, first five: {:?}", full.len(), &full[..5]);

    // Restricting the input to its lowest j points reproduces every full-run
    // assignment made by step j: no label ever depends on points above the
    // line. (Labels are issued at the seeding step and at splits, so the
    // filter is by step, not by entry count.)
    let by_y = ps.axis_order(1);
    for j in [50usize, 120, 250] {
        let prefix_ids: Vec<u32> = by_y[..j].to_vec();
        let sub = ps.subset(&prefix_ids);
        let log = sweep_assignment_log(&sub, classes)?;
        let renamed: Vec<(usize, u32, u32)> = log
            .iter()
            .map(|&(step, local, class)| (step, prefix_ids[local as usize], class))
            .collect();
        let by_step_j: Vec<(usize, u32, u32)> =
            full.iter().copied().filter(|&(step, _, _)| step <= j).collect();
        assert_eq!(renamed, by_step_j, "prefix of size {j} diverged");
        println!(
            "prefix {j:>3}: log identical to the {} full-run assignments made by step {j}",
            by_step_j.len()
        );
    }

    // Conjugacy: the reflected half of the union construction on V equals the
    // plain half on the y-negation of V, point for point.
    let m = 29;
    let opts = SweepOptions::default();
    let (_, reflected_on_plain) = bl_tl_union_parts(&ps, m, opts)?;
    let (plain_on_reflected, _) = bl_tl_union_parts(&ps.reflect_y(), m, opts)?;
    assert_eq!(reflected_on_plain.x, plain_on_reflected.x);
    println!(
        "conjugacy: reflected sweep on V == plain sweep on reflected V ({} points selected)",
        reflected_on_plain.x.len()
    );
    Ok(())
}
