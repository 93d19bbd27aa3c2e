//! Definition-level verification. Nothing in this module shares code with the
//! constructive algorithms: edges are enumerated by trying every combinatorially
//! distinct range placement, and set properties are counted twice through
//! independent implementations. Size guards are hard errors, and every failing
//! check carries a concrete witness that re-fails in isolation.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geometry::{PointSet, RangeFamily};
use crate::hypergraph::Hypergraph;

/// Hard cap for [`oracle_edges`]: candidate ranges are O(n^3) with an O(n)
/// scan each, so this keeps a single call comfortably under a millisecond.
pub const ORACLE_MAX_N: usize = 14;

/// Hard cap for [`min_shallow_t`] and the exhaustive certificates (2^24
/// subsets with bitmask counting).
pub const EXHAUSTIVE_MAX_N: usize = 24;

/// Identifies the instance a report talks about, for replay.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
}

/// Witness of a failed check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailureWitness {
    /// Edge not hit at all.
    UncoveredEdge { verts: Vec<u32> },
    /// Edge hit more than the allowed number of times.
    OverloadedEdge { verts: Vec<u32>, load: usize, bound: usize },
    /// Edge missing a color.
    MissingColor { verts: Vec<u32>, color: u32 },
    /// Edge where color `a` outnumbers `t * (count(b) + 1)`.
    Unbalanced { verts: Vec<u32>, a: u32, b: u32, count_a: usize, count_b: usize, t: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<FailureWitness>,
    pub fingerprint: Fingerprint,
}

impl VerificationReport {
    pub fn pass(property: impl Into<String>) -> Self {
        VerificationReport {
            property: property.into(),
            pass: true,
            witness: None,
            fingerprint: Fingerprint::default(),
        }
    }

    pub fn fail(property: impl Into<String>, witness: FailureWitness) -> Self {
        VerificationReport {
            property: property.into(),
            pass: false,
            witness: Some(witness),
            fingerprint: Fingerprint::default(),
        }
    }

    pub fn with_fingerprint(mut self, fp: Fingerprint) -> Self {
        self.fingerprint = fp;
        self
    }
}

/// Brute-force enumeration of all size-`m` captured sets, by direct
/// definition: every combinatorially distinct placement of a range is tried
/// and its captured set collected. No sweep, no incremental state.
///
/// Boundaries for the order-driven families are cut positions between ranks;
/// unit-height slabs are tried at every critical threshold and at every
/// midpoint between consecutive criticals.
pub fn oracle_edges(ps: &PointSet, family: RangeFamily, m: usize) -> Result<Hypergraph> {
    let n = ps.len();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { what: "oracle point set", size: n, limit: ORACLE_MAX_N });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("edge size m must be positive".into()));
    }
    if !family.supports_dim(ps.dim()) {
        return Err(Error::DimensionMismatch { family: family.name(), dim: ps.dim() });
    }
    let mut sets: std::collections::BTreeSet<Vec<u32>> = Default::default();
    match family {
        RangeFamily::StripsAxisAligned => {
            for axis in 0..ps.dim() {
                let ranks = ps.axis_ranks(axis);
                collect_interval_sets(n, m, &ranks, |_| true, &mut sets);
            }
        }
        RangeFamily::Bottomless => oracle_halfplanes(ps, m, false, &mut sets),
        RangeFamily::Topless => oracle_halfplanes(ps, m, true, &mut sets),
        RangeFamily::BottomlessOrTopless => {
            oracle_halfplanes(ps, m, false, &mut sets);
            oracle_halfplanes(ps, m, true, &mut sets);
        }
        RangeFamily::UnitHeight => {
            ps.check_unit_height_preconditions()?;
            let xr = ps.axis_ranks(0);
            let mut thresholds: Vec<f64> = Vec::new();
            let mut criticals: Vec<f64> = Vec::new();
            for id in ps.ids() {
                criticals.push(ps.coord(id, 1) - 1.0);
                criticals.push(ps.coord(id, 1));
            }
            criticals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            criticals.dedup();
            thresholds.extend_from_slice(&criticals);
            for pair in criticals.windows(2) {
                thresholds.push(0.5 * (pair[0] + pair[1]));
            }
            for &c in &thresholds {
                let in_slab =
                    |id: u32| ps.coord(id, 1) >= c && ps.coord(id, 1) <= c + 1.0;
                collect_interval_sets(n, m, &xr, in_slab, &mut sets);
            }
        }
    }
    let mut h = Hypergraph::new(n);
    for verts in sets {
        h.add_edge(verts, 1)?;
    }
    Ok(h)
}

/// All size-`m` sets of the form {active points whose rank lies in [lo, hi)}.
fn collect_interval_sets(
    n: usize,
    m: usize,
    ranks: &[usize],
    active: impl Fn(u32) -> bool,
    sets: &mut std::collections::BTreeSet<Vec<u32>>,
) {
    for lo in 0..=n {
        for hi in lo + 1..=n {
            let mut verts: Vec<u32> = (0..n as u32)
                .filter(|&id| {
                    let r = ranks[id as usize];
                    r >= lo && r < hi && active(id)
                })
                .collect();
            if verts.len() == m {
                verts.sort_unstable();
                sets.insert(verts);
            }
        }
    }
}

fn oracle_halfplanes(
    ps: &PointSet,
    m: usize,
    topless: bool,
    sets: &mut std::collections::BTreeSet<Vec<u32>>,
) {
    let n = ps.len();
    let xr = ps.axis_ranks(0);
    let yr = ps.axis_ranks(1);
    for cut in 0..=n {
        let in_halfplane = |id: u32| {
            if topless {
                yr[id as usize] >= cut
            } else {
                yr[id as usize] < cut
            }
        };
        collect_interval_sets(n, m, &xr, in_halfplane, sets);
    }
}

/// `(hitting, max_load)` of `x` against the edges of `h`: hitting means every
/// edge contains at least one element of `x`; the load of an edge is
/// `|edge ∩ x|` and `max_load` is the maximum over all edges (0 if there are
/// no edges). Implemented with per-vertex membership flags.
pub fn check_hitting_shallow(h: &Hypergraph, x: &[u32]) -> (bool, usize) {
    let mut member = vec![false; h.vertex_count()];
    for &v in x {
        member[v as usize] = true;
    }
    let mut hitting = true;
    let mut max_load = 0usize;
    for e in h.edges() {
        let load = e.verts.iter().filter(|&&v| member[v as usize]).count();
        if load == 0 {
            hitting = false;
        }
        max_load = max_load.max(load);
    }
    (hitting, max_load)
}

/// Independent second implementation of edge load counting: merge walk over
/// the two sorted id lists. Used to cross-check [`check_hitting_shallow`].
pub fn intersection_size_sorted(edge: &[u32], x_sorted: &[u32]) -> usize {
    let mut i = 0;
    let mut j = 0;
    let mut count = 0;
    while i < edge.len() && j < x_sorted.len() {
        match edge[i].cmp(&x_sorted[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn validate_coloring(h: &Hypergraph, c: &Coloring) -> Result<()> {
    if c.assignment.len() != h.vertex_count() {
        return Err(Error::ColoringNotTotal { expected: h.vertex_count(), got: c.assignment.len() });
    }
    for &color in &c.assignment {
        if color == 0 || color as usize > c.k {
            return Err(Error::ColorOutOfRange { color, k: c.k });
        }
    }
    Ok(())
}

/// Every edge of `h` must contain all `k` colors of `c`. The failing witness
/// is the first deficient edge together with a missing color.
pub fn check_polychromatic(h: &Hypergraph, c: &Coloring) -> Result<VerificationReport> {
    validate_coloring(h, c)?;
    for e in h.edges() {
        let mut present = vec![false; c.k + 1];
        for &v in &e.verts {
            present[c.assignment[v as usize] as usize] = true;
        }
        for color in 1..=c.k as u32 {
            if !present[color as usize] {
                return Ok(VerificationReport::fail(
                    "polychromatic",
                    FailureWitness::MissingColor { verts: e.verts.clone(), color },
                ));
            }
        }
    }
    Ok(VerificationReport::pass("polychromatic"))
}

/// `t`-balanced: inside every edge, every ordered color pair `(a, b)`
/// satisfies `count_a <= t * (count_b + 1)`.
pub fn check_balanced(h: &Hypergraph, c: &Coloring, t: usize) -> Result<VerificationReport> {
    validate_coloring(h, c)?;
    if t == 0 {
        return Err(Error::InvalidParameter("balance factor t must be positive".into()));
    }
    for e in h.edges() {
        let mut counts = vec![0usize; c.k + 1];
        for &v in &e.verts {
            counts[c.assignment[v as usize] as usize] += 1;
        }
        for a in 1..=c.k {
            for b in 1..=c.k {
                if counts[a] > t * (counts[b] + 1) {
                    return Ok(VerificationReport::fail(
                        "balanced",
                        FailureWitness::Unbalanced {
                            verts: e.verts.clone(),
                            a: a as u32,
                            b: b as u32,
                            count_a: counts[a],
                            count_b: counts[b],
                            t,
                        },
                    ));
                }
            }
        }
    }
    Ok(VerificationReport::pass("balanced"))
}

/// Exhaustive minimum over all hitting sets `X` of `max_e |e ∩ X|`.
/// `None` iff no hitting set exists, which happens exactly when some edge is
/// empty. A hypergraph with no edges yields `Some(0)` (the empty set hits
/// vacuously).
pub fn min_shallow_t(h: &Hypergraph) -> Result<Option<usize>> {
    let n = h.vertex_count();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge { what: "exhaustive vertex set", size: n, limit: EXHAUSTIVE_MAX_N });
    }
    if h.edges().iter().any(|e| e.verts.is_empty()) {
        return Ok(None);
    }
    let masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.verts.iter().fold(0u32, |acc, &v| acc | (1 << v)))
        .collect();
    let mut best: Option<usize> = None;
    for x in 0u64..(1u64 << n) {
        let x = x as u32;
        let mut max_load = 0u32;
        let mut hitting = true;
        for &em in &masks {
            let load = (em & x).count_ones();
            if load == 0 {
                hitting = false;
                break;
            }
            max_load = max_load.max(load);
        }
        if hitting {
            best = Some(best.map_or(max_load as usize, |b| b.min(max_load as usize)));
        }
    }
    Ok(best)
}

/// True iff the two hypergraphs capture the same distinct edge sets
/// (multiplicity ignored; the enumerators always emit multiplicity 1).
pub fn same_edge_sets(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.distinct_edge_sets() == b.distinct_edge_sets()
}
