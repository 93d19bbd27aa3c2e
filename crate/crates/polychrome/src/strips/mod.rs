//! Axis-aligned strips in any dimension: shallow hitting sets and
//! polychromatic colorings through the block/dual pipeline.
//!
//! The pipeline partitions each axis order into blocks of r = floor(m/2)
//! consecutive points (padding the point count up to a multiple of r with
//! virtual points beyond every coordinate). The blocks form an r-uniform
//! d-regular hypergraph whose dual is d-uniform and r-regular; a t'-shallow
//! hitting edge set of the dual selects points meeting every block between 1
//! and t' times, and any strip edge of size m fully contains one block and
//! touches at most three, so the selection is 3t'-shallow hitting.

pub mod search;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geometry::{PointSet, RangeFamily};
use crate::hypergraph::Hypergraph;
use crate::shallow::{FamilyClaim, HittingSetReport, Regime, TraceSummary};
use search::{
    find_shallow_hitting_edge_set, polychromatic_edge_coloring, EdgeColoringOutcome, SearchBudget,
};

/// The block hypergraph over the (padded) point set: one size-r edge per run
/// of r consecutive points on each axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowHypergraph {
    pub hypergraph: Hypergraph,
    /// r = floor(m/2).
    pub block_size: usize,
    /// Number of real points; padding ids are `base_n..padded_n`.
    pub base_n: usize,
    pub padded_n: usize,
    /// `(axis, block index)` per edge, aligned with `hypergraph.edges()`.
    pub blocks: Vec<(usize, usize)>,
}

impl WindowHypergraph {
    pub fn blocks_per_axis(&self) -> usize {
        self.padded_n / self.block_size
    }

    /// Edge index of block `j` on `axis`; edges are laid out axis-major.
    pub fn edge_of_block(&self, axis: usize, j: usize) -> usize {
        debug_assert!(j < self.blocks_per_axis());
        axis * self.blocks_per_axis() + j
    }
}

/// Builds the r-uniform d-regular block hypergraph for edge size `m >= 2`.
/// If r does not divide n, virtual points with ids `n..` are appended past
/// the top of every axis order (their mutual order is id order).
pub fn build_window_hypergraph(ps: &PointSet, m: usize) -> Result<WindowHypergraph> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "strip edge size m must be at least 2, got {m}"
        )));
    }
    let r = m / 2;
    let n = ps.len();
    let padded_n = if n == 0 { 0 } else { n.div_ceil(r) * r };
    let mut h = Hypergraph::new(padded_n);
    let mut blocks = Vec::new();
    for axis in 0..ps.dim() {
        let mut order = ps.axis_order(axis);
        order.extend(n as u32..padded_n as u32);
        for (j, chunk) in order.chunks(r).enumerate() {
            h.add_edge(chunk.to_vec(), 1)?;
            blocks.push((axis, j));
        }
    }
    debug_assert_eq!(
        h.check_uniform_regular(),
        if padded_n == 0 { (None, None) } else { (Some(r), Some(ps.dim())) }
    );
    Ok(WindowHypergraph { hypergraph: h, block_size: r, base_n: n, padded_n, blocks })
}

/// Shallow hitting set for axis-aligned strips of size `m`: selects points
/// through a t'-shallow hitting edge set of the dual block hypergraph and
/// strips the padding. The report claims 3t' and records t' separately.
pub fn strips_shallow_hitting(ps: &PointSet, m: usize) -> Result<HittingSetReport> {
    strips_shallow_hitting_with(ps, m, &SearchBudget::default())
}

pub fn strips_shallow_hitting_with(
    ps: &PointSet,
    m: usize,
    budget: &SearchBudget,
) -> Result<HittingSetReport> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "strip edge size m must be at least 2, got {m}"
        )));
    }
    let r = m / 2;
    if ps.len() < m {
        let claims = vec![FamilyClaim {
            family: RangeFamily::StripsAxisAligned,
            shallow: 0,
            hitting: true,
        }];
        let trace =
            TraceSummary { steps: ps.len(), splits: 0, deaths: 0, regime: Regime::Empty };
        let mut rep = HittingSetReport::new("strips-shallow", m, r, Vec::new(), claims, trace);
        rep.t_prime = Some(0);
        return Ok(rep);
    }
    let wh = build_window_hypergraph(ps, m)?;
    let dual = wh.hypergraph.dual();
    // Dual edge index == point id, so the selection is directly a point set.
    let found = find_shallow_hitting_edge_set(&dual, budget)?;
    let x: Vec<u32> = found
        .selected
        .iter()
        .map(|&e| e as u32)
        .filter(|&id| (id as usize) < wh.base_n)
        .collect();
    let claims = vec![FamilyClaim {
        family: RangeFamily::StripsAxisAligned,
        shallow: 3 * found.achieved,
        hitting: true,
    }];
    let trace =
        TraceSummary { steps: ps.len(), splits: 0, deaths: 0, regime: Regime::Search };
    let mut rep = HittingSetReport::new("strips-shallow", m, r, x, claims, trace);
    rep.t_prime = Some(found.achieved);
    Ok(rep)
}

/// Polychromatic k-coloring for axis-aligned strips of size `m`, via a
/// polychromatic k-edge-coloring of the dual block hypergraph. On a line
/// (d = 1) the rank-mod-k coloring is exact and needs no search. A search
/// failure for d >= 2 is reported as such; it never certifies that no
/// coloring exists.
pub fn strips_polychromatic_coloring(ps: &PointSet, k: usize, m: usize) -> Result<Coloring> {
    strips_polychromatic_coloring_with(ps, k, m, &SearchBudget::default())
}

pub fn strips_polychromatic_coloring_with(
    ps: &PointSet,
    k: usize,
    m: usize,
    budget: &SearchBudget,
) -> Result<Coloring> {
    if k == 0 {
        return Err(Error::InvalidParameter("color count k must be positive".into()));
    }
    if k == 1 {
        return Ok(Coloring {
            k: 1,
            assignment: vec![1; ps.len()],
            provenance: "constant".to_string(),
        });
    }
    if ps.dim() == 1 {
        if m < k {
            return Err(Error::InvalidParameter(format!(
                "size-{m} windows cannot contain {k} colors"
            )));
        }
        let order = ps.axis_order(0);
        let mut assignment = vec![0u32; ps.len()];
        for (rank, &id) in order.iter().enumerate() {
            assignment[id as usize] = (rank % k) as u32 + 1;
        }
        return Ok(Coloring { k, assignment, provenance: "rank-cycle".to_string() });
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "strip edge size m must be at least 2, got {m}"
        )));
    }
    let r = m / 2;
    if r < k {
        return Err(Error::SearchFailed {
            reason: format!(
                "blocks of size {r} cannot meet {k} colors; raise m to at least {}",
                2 * k
            ),
            best_deficiency: None,
        });
    }
    if ps.len() < m {
        // No edges of size m: any total coloring is vacuously polychromatic.
        return Ok(Coloring {
            k,
            assignment: (0..ps.len()).map(|i| (i % k) as u32 + 1).collect(),
            provenance: "vacuous".to_string(),
        });
    }
    let wh = build_window_hypergraph(ps, m)?;
    let dual = wh.hypergraph.dual();
    match polychromatic_edge_coloring(&dual, k, budget)? {
        EdgeColoringOutcome::Colored { colors, .. } => Ok(Coloring {
            k,
            // Dual edge instance i is point i; drop the padding tail.
            assignment: colors[..wh.base_n].to_vec(),
            provenance: "window-dual".to_string(),
        }),
        EdgeColoringOutcome::CertifiedInfeasible { .. } => Err(Error::SearchFailed {
            reason: format!(
                "no polychromatic {k}-edge-coloring of this block structure exists; \
                 the strip hypergraph itself may still be colorable"
            ),
            best_deficiency: None,
        }),
        EdgeColoringOutcome::Failed { best_deficiency } => Err(Error::SearchFailed {
            reason: format!("edge-coloring search exhausted its budget for k = {k}, m = {m}"),
            best_deficiency: Some(best_deficiency),
        }),
    }
}
