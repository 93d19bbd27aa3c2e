//! Desk-scale impossibility certificates from the complete-t-subset gadget:
//! no (t-1)-shallow hitting set on the primal, no polychromatic k-coloring of
//! the blown-up dual (by exhaustive search and by the counting argument), and
//! the point embedding whose strips simulate the dual.
//!
//!     cargo run --example gadget_certificates

use polychrome::lowerbounds::{
    bound_chain_holds, certify_no_polychromatic_edge_coloring, certify_no_shallow_hitting,
    complete_t_subset_gadget, counting_threshold, embed_to_points, embedding_is_consecutive,
    minimum_hitting_edge_set_size,
};

fn main() -> anyhow::Result<()> {
    for t in [2usize, 3] {
        let g = complete_t_subset_gadget(t)?;
        g.check_structure()?;
        println!(
            "t={t}: primal {} vertices / {} edges, dual {}-uniform {}-partite (4^t >= C(2t,t): {})",
            g.primal.vertex_count(),
            g.primal.edge_count(),
            g.r,
            g.r,
            bound_chain_holds(t)
        );

        // 2^(2t) vertex subsets, none both hitting and (t-1)-shallow.
        let shallow = certify_no_shallow_hitting(&g.primal, t - 1)?;
        println!(
            "  no {}-shallow hitting set: {} ({} subsets: {} not hitting, {} too deep)",
            t - 1,
            shallow.holds(),
            shallow.subsets_checked,
            shallow.not_hitting,
            shallow.too_deep
        );
        assert!(shallow.holds());

        // Any hitting edge set of the dual needs t+1 edges; a perfect
        // matching would need only vertices/r of them.
        let min_cover = minimum_hitting_edge_set_size(&g.dual)?;
        println!(
            "  dual min hitting edge set: {min_cover} edges (perfect matching would be {})",
            g.dual.vertex_count() / g.r
        );

        for k in [2usize, 4, 6] {
            let blown = g.blow_up(k)?;
            let cert = certify_no_polychromatic_edge_coloring(&blown, k)?;
            let modes = match (&cert.exhaustive, &cert.counting) {
                (Some(e), Some(c)) => format!(
                    "exhaustive {} assignments + counting {} required > {} available: {}",
                    e.assignments_checked, c.required_instances, cert.instances, c.applies
                ),
                (None, Some(c)) => format!(
                    "counting only: {} required > {} available: {}",
                    c.required_instances, cert.instances, c.applies
                ),
                (Some(e), None) => format!("exhaustive only: {} assignments", e.assignments_checked),
                (None, None) => unreachable!("certifier errors instead"),
            };
            println!(
                "  k={k}: no polychromatic coloring of blown dual = {} ({modes}); \
                 rules out shallow bound {}",
                cert.infeasible,
                counting_threshold(t, k)
            );
            assert!(cert.infeasible);
        }

        let pts = embed_to_points(&g.dual)?;
        println!(
            "  embedded dual: {} points in R^{}, incidences consecutive per axis: {}",
            pts.len(),
            pts.dim(),
            embedding_is_consecutive(&g.dual, &pts)?
        );
    }
    Ok(())
}
