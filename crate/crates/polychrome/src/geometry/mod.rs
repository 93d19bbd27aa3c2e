//! Point sets in general position, the supported range families, and
//! sweep-based enumeration of the hyperedges each family captures.
//!
//! All range boundaries are handled in rank space: general position (pairwise
//! distinct coordinates per axis) means a range boundary can always be slid to
//! fall strictly between two ranks without changing the captured set, so no
//! epsilon arithmetic is needed anywhere. The one exception is the unit-height
//! family, whose fixed height 1 couples the two y-boundaries; it works on raw
//! y values and rejects degenerate inputs instead.

mod generate;

pub use generate::{random_point_set, random_unit_height_point_set};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// The range families under study. Strips are defined in every dimension
/// `d >= 1`; the four rectangle families are planar (`d == 2`, the second
/// axis being y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeFamily {
    /// Axis-aligned strips: one axis constrained to an interval, all other
    /// axes unbounded.
    StripsAxisAligned,
    /// `[x1, x2] x (-inf, y]`.
    Bottomless,
    /// `[x1, x2] x [y, inf)`.
    Topless,
    /// Union of the two families above.
    BottomlessOrTopless,
    /// `[x1, x2] x [y, y+1]`.
    UnitHeight,
}

impl RangeFamily {
    pub const ALL: [RangeFamily; 5] = [
        RangeFamily::StripsAxisAligned,
        RangeFamily::Bottomless,
        RangeFamily::Topless,
        RangeFamily::BottomlessOrTopless,
        RangeFamily::UnitHeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RangeFamily::StripsAxisAligned => "strips-axis-aligned",
            RangeFamily::Bottomless => "bottomless",
            RangeFamily::Topless => "topless",
            RangeFamily::BottomlessOrTopless => "bottomless-or-topless",
            RangeFamily::UnitHeight => "unit-height",
        }
    }

    pub fn supports_dim(self, dim: usize) -> bool {
        match self {
            RangeFamily::StripsAxisAligned => dim >= 1,
            _ => dim == 2,
        }
    }

    fn require_dim(self, dim: usize) -> Result<()> {
        if self.supports_dim(dim) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { family: self.name(), dim })
        }
    }
}

impl fmt::Display for RangeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RangeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strips-axis-aligned" | "strips" | "st" => Ok(RangeFamily::StripsAxisAligned),
            "bottomless" | "bl" => Ok(RangeFamily::Bottomless),
            "topless" | "tl" => Ok(RangeFamily::Topless),
            "bottomless-or-topless" | "bl-tl" | "bltl" => Ok(RangeFamily::BottomlessOrTopless),
            "unit-height" | "uh" => Ok(RangeFamily::UnitHeight),
            other => Err(Error::InvalidParameter(format!("unknown range family `{other}`"))),
        }
    }
}

/// A point set in general position. Point ids are the indices `0..n` and are
/// stable across every operation in this crate; subsets and reductions never
/// renumber silently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

/// Serde helper so deserialized files go through validation.
#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.dim, raw.points)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPointSet::deserialize(de)?;
        PointSet::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl PointSet {
    /// Validates arity, finiteness and general position (pairwise distinct
    /// coordinates on every axis). The error names the axis and the two
    /// colliding points.
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        for (id, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::BadArity { id: id as u32, got: p.len(), dim });
            }
            for &c in p {
                if !c.is_finite() {
                    return Err(Error::NotFinite { id: id as u32, value: c });
                }
            }
        }
        for axis in 0..dim {
            let mut order: Vec<u32> = (0..points.len() as u32).collect();
            order.sort_by(|&a, &b| {
                points[a as usize][axis].partial_cmp(&points[b as usize][axis]).unwrap()
            });
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                if points[a as usize][axis] == points[b as usize][axis] {
                    return Err(Error::GeneralPosition {
                        axis,
                        a,
                        b,
                        value: points[a as usize][axis],
                    });
                }
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: u32) -> &[f64] {
        &self.points[id as usize]
    }

    pub fn coord(&self, id: u32, axis: usize) -> f64 {
        self.points[id as usize][axis]
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.points.len() as u32
    }

    /// Ids sorted by ascending coordinate on `axis`.
    pub fn axis_order(&self, axis: usize) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.points.len() as u32).collect();
        order.sort_by(|&a, &b| {
            self.points[a as usize][axis].partial_cmp(&self.points[b as usize][axis]).unwrap()
        });
        order
    }

    /// Rank of each point (indexed by id) on `axis`.
    pub fn axis_ranks(&self, axis: usize) -> Vec<usize> {
        let order = self.axis_order(axis);
        let mut ranks = vec![0usize; self.points.len()];
        for (r, &id) in order.iter().enumerate() {
            ranks[id as usize] = r;
        }
        ranks
    }

    /// Replaces every coordinate by its rank `0..n-1` on its axis. Point ids
    /// and all per-axis orderings are preserved; for the purely order-driven
    /// families (strips, bottomless, topless and their union) the captured
    /// hyperedges are identical before and after.
    pub fn rank_reduce(&self) -> PointSet {
        let mut reduced = vec![vec![0.0; self.dim]; self.points.len()];
        for axis in 0..self.dim {
            for (id, &rank) in self.axis_ranks(axis).iter().enumerate() {
                reduced[id][axis] = rank as f64;
            }
        }
        PointSet { dim: self.dim, points: reduced }
    }

    /// New point set containing `ids` in the given order under fresh ids
    /// `0..ids.len()`. The caller keeps the id mapping.
    pub fn subset(&self, ids: &[u32]) -> PointSet {
        let points = ids.iter().map(|&id| self.points[id as usize].clone()).collect();
        PointSet { dim: self.dim, points }
    }

    /// Mirror image across the x-axis (y negated), same ids. Turns topless
    /// structure into bottomless structure and vice versa.
    pub fn reflect_y(&self) -> PointSet {
        assert_eq!(self.dim, 2, "reflect_y is a planar operation");
        let points = self
            .points
            .iter()
            .map(|p| vec![p[0], -p[1]])
            .collect();
        PointSet { dim: self.dim, points }
    }

    /// Preconditions for unit-height ranges on top of general position:
    /// no integer y and no two y values at distance exactly 1 (either would
    /// put a point on a slab boundary).
    pub fn check_unit_height_preconditions(&self) -> Result<()> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { family: "unit-height", dim: self.dim });
        }
        let mut ys: Vec<(f64, u32)> =
            self.points.iter().enumerate().map(|(id, p)| (p[1], id as u32)).collect();
        ys.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for &(y, id) in &ys {
            if y.fract() == 0.0 {
                return Err(Error::DegenerateUnitHeight {
                    reason: format!("point {id} has integer y = {y}"),
                });
            }
        }
        for &(y, id) in &ys {
            let target = y + 1.0;
            if let Ok(pos) = ys.binary_search_by(|probe| probe.0.partial_cmp(&target).unwrap()) {
                return Err(Error::DegenerateUnitHeight {
                    reason: format!(
                        "points {id} and {} have y values at distance exactly 1",
                        ys[pos].1
                    ),
                });
            }
        }
        Ok(())
    }
}

/// A concrete range certifying one hyperedge. Boundaries for the order-driven
/// families are inclusive rank windows; the unit-height slab keeps its real
/// lower y threshold. [`Witness::captured`] recomputes the captured set from
/// the range alone, independent of how the edge was enumerated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Witness {
    Strip { axis: usize, lo_rank: usize, hi_rank: usize },
    Bottomless { x_lo_rank: usize, x_hi_rank: usize, y_top_rank: usize },
    Topless { x_lo_rank: usize, x_hi_rank: usize, y_bot_rank: usize },
    UnitHeight { x_lo_rank: usize, x_hi_rank: usize, y_low: f64 },
}

impl Witness {
    /// The ids captured by this range on `ps`, sorted.
    pub fn captured(&self, ps: &PointSet) -> Vec<u32> {
        let mut out = Vec::new();
        match *self {
            Witness::Strip { axis, lo_rank, hi_rank } => {
                let ranks = ps.axis_ranks(axis);
                for id in ps.ids() {
                    let r = ranks[id as usize];
                    if r >= lo_rank && r <= hi_rank {
                        out.push(id);
                    }
                }
            }
            Witness::Bottomless { x_lo_rank, x_hi_rank, y_top_rank } => {
                let xr = ps.axis_ranks(0);
                let yr = ps.axis_ranks(1);
                for id in ps.ids() {
                    if xr[id as usize] >= x_lo_rank
                        && xr[id as usize] <= x_hi_rank
                        && yr[id as usize] <= y_top_rank
                    {
                        out.push(id);
                    }
                }
            }
            Witness::Topless { x_lo_rank, x_hi_rank, y_bot_rank } => {
                let xr = ps.axis_ranks(0);
                let yr = ps.axis_ranks(1);
                for id in ps.ids() {
                    if xr[id as usize] >= x_lo_rank
                        && xr[id as usize] <= x_hi_rank
                        && yr[id as usize] >= y_bot_rank
                    {
                        out.push(id);
                    }
                }
            }
            Witness::UnitHeight { x_lo_rank, x_hi_rank, y_low } => {
                let xr = ps.axis_ranks(0);
                for id in ps.ids() {
                    let y = ps.coord(id, 1);
                    if xr[id as usize] >= x_lo_rank
                        && xr[id as usize] <= x_hi_rank
                        && y >= y_low
                        && y <= y_low + 1.0
                    {
                        out.push(id);
                    }
                }
            }
        }
        out
    }
}

/// Enumerates every distinct size-`m` hyperedge `V ∩ R` for ranges `R` in the
/// family, plus one witness range per edge (aligned by index with the returned
/// edge list). Edges are emitted in lexicographic vertex order, each exactly
/// once.
pub fn enumerate_hyperedges(
    ps: &PointSet,
    family: RangeFamily,
    m: usize,
) -> Result<(Hypergraph, Vec<Witness>)> {
    family.require_dim(ps.dim())?;
    if m == 0 {
        return Err(Error::InvalidParameter("edge size m must be positive".into()));
    }
    let mut found: std::collections::BTreeMap<Vec<u32>, Witness> = Default::default();
    if m <= ps.len() {
        match family {
            RangeFamily::StripsAxisAligned => {
                for axis in 0..ps.dim() {
                    let order = ps.axis_order(axis);
                    for s in 0..=(ps.len() - m) {
                        let mut verts: Vec<u32> = order[s..s + m].to_vec();
                        verts.sort_unstable();
                        found
                            .entry(verts)
                            .or_insert(Witness::Strip { axis, lo_rank: s, hi_rank: s + m - 1 });
                    }
                }
            }
            RangeFamily::Bottomless => {
                sweep_halfplane_windows(ps, m, false, &mut found);
            }
            RangeFamily::Topless => {
                sweep_halfplane_windows(ps, m, true, &mut found);
            }
            RangeFamily::BottomlessOrTopless => {
                sweep_halfplane_windows(ps, m, false, &mut found);
                sweep_halfplane_windows(ps, m, true, &mut found);
            }
            RangeFamily::UnitHeight => {
                ps.check_unit_height_preconditions()?;
                unit_height_windows(ps, m, &mut found);
            }
        }
    } else if family == RangeFamily::UnitHeight {
        ps.check_unit_height_preconditions()?;
    }
    let mut h = Hypergraph::new(ps.len());
    let mut witnesses = Vec::with_capacity(found.len());
    for (verts, w) in found {
        h.add_edge(verts, 1)?;
        witnesses.push(w);
    }
    Ok((h, witnesses))
}

/// Sweep for bottomless ranges (`reflect == true` runs it upside down for
/// topless ranges): insert points by increasing y (decreasing for topless)
/// and after each insertion emit every window of `m` x-consecutive inserted
/// points that contains the new point. Every captured edge has a unique
/// topmost (bottommost) point and x-consecutive members among the points at
/// or below (above) it, so each edge is emitted exactly once.
fn sweep_halfplane_windows(
    ps: &PointSet,
    m: usize,
    reflect: bool,
    found: &mut std::collections::BTreeMap<Vec<u32>, Witness>,
) {
    let n = ps.len();
    let xrank = ps.axis_ranks(0);
    let yrank = ps.axis_ranks(1);
    let mut by_y = ps.axis_order(1);
    if reflect {
        by_y.reverse();
    }
    // Inserted ids, kept sorted by x-rank.
    let mut active: Vec<u32> = Vec::with_capacity(n);
    for (step, &p) in by_y.iter().enumerate() {
        let pos = active.partition_point(|&q| xrank[q as usize] < xrank[p as usize]);
        active.insert(pos, p);
        let count = step + 1;
        if count < m {
            continue;
        }
        let lo = pos.saturating_sub(m - 1);
        let hi = pos.min(count - m);
        for s in lo..=hi {
            let window = &active[s..s + m];
            let mut verts: Vec<u32> = window.to_vec();
            verts.sort_unstable();
            let x_lo_rank = xrank[window[0] as usize];
            let x_hi_rank = xrank[window[m - 1] as usize];
            let witness = if reflect {
                Witness::Topless { x_lo_rank, x_hi_rank, y_bot_rank: yrank[p as usize] }
            } else {
                Witness::Bottomless { x_lo_rank, x_hi_rank, y_top_rank: yrank[p as usize] }
            };
            found.entry(verts).or_insert(witness);
        }
    }
}

/// Critical y thresholds of the unit-height family are `y(p) - 1` (p enters
/// the slab from above) and `y(p)` (p leaves below). Under the degeneracy
/// preconditions the captured sets are constant between consecutive criticals,
/// and every boundary set equals one of its two neighbours, so testing slab
/// positions at the midpoints of consecutive distinct criticals is exhaustive.
fn unit_height_windows(
    ps: &PointSet,
    m: usize,
    found: &mut std::collections::BTreeMap<Vec<u32>, Witness>,
) {
    let xrank = ps.axis_ranks(0);
    let mut criticals: Vec<f64> = Vec::with_capacity(2 * ps.len());
    for id in ps.ids() {
        let y = ps.coord(id, 1);
        criticals.push(y - 1.0);
        criticals.push(y);
    }
    criticals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    criticals.dedup();
    for pair in criticals.windows(2) {
        let c = 0.5 * (pair[0] + pair[1]);
        let mut active: Vec<u32> = ps
            .ids()
            .filter(|&id| {
                let y = ps.coord(id, 1);
                y >= c && y <= c + 1.0
            })
            .collect();
        if active.len() < m {
            continue;
        }
        active.sort_by_key(|&id| xrank[id as usize]);
        for s in 0..=(active.len() - m) {
            let window = &active[s..s + m];
            let mut verts: Vec<u32> = window.to_vec();
            verts.sort_unstable();
            found.entry(verts).or_insert(Witness::UnitHeight {
                x_lo_rank: xrank[window[0] as usize],
                x_hi_rank: xrank[window[m - 1] as usize],
                y_low: c,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(pts: &[(f64, f64)]) -> PointSet {
        PointSet::new(2, pts.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap()
    }

    #[test]
    fn general_position_violation_names_axis_and_points() {
        let err = PointSet::new(2, vec![vec![1.0, 2.0], vec![1.0, 3.0]]).unwrap_err();
        match err {
            Error::GeneralPosition { axis, value, .. } => {
                assert_eq!(axis, 0);
                assert_eq!(value, 1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rank_reduce_two_points() {
        let p = ps(&[(1.5, 9.0), (2.5, 4.0)]);
        let r = p.rank_reduce();
        assert_eq!(r.point(0), &[0.0, 1.0]);
        assert_eq!(r.point(1), &[1.0, 0.0]);
    }

    #[test]
    fn rank_reduce_preserves_axis_orders() {
        let p = random_point_set(3, 50, 0xC0FFEE).unwrap();
        let r = p.rank_reduce();
        for axis in 0..3 {
            assert_eq!(p.axis_order(axis), r.axis_order(axis));
        }
    }

    #[test]
    fn strip_windows_on_a_line() {
        let p = PointSet::new(1, (0..5).map(|i| vec![i as f64]).collect()).unwrap();
        let (h, wit) = enumerate_hyperedges(&p, RangeFamily::StripsAxisAligned, 2).unwrap();
        let sets: Vec<Vec<u32>> = h.edges().iter().map(|e| e.verts.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        for (e, w) in h.edges().iter().zip(&wit) {
            assert_eq!(w.captured(&p), e.verts);
        }
    }

    #[test]
    fn bottomless_three_point_example() {
        // Points (1,3),(2,1),(3,2): the m=2 bottomless edges are {p1,p2} and {p0,p1}.
        let p = ps(&[(1.0, 3.0), (2.0, 1.0), (3.0, 2.0)]);
        let (h, wit) = enumerate_hyperedges(&p, RangeFamily::Bottomless, 2).unwrap();
        let sets: Vec<Vec<u32>> = h.edges().iter().map(|e| e.verts.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![1, 2]]);
        for (e, w) in h.edges().iter().zip(&wit) {
            assert_eq!(w.captured(&p), e.verts);
        }
    }

    #[test]
    fn topless_mirrors_bottomless() {
        let p = ps(&[(1.0, 3.0), (2.0, 1.0), (3.0, 2.0)]);
        let refl = p.reflect_y();
        let (h_tl, _) = enumerate_hyperedges(&p, RangeFamily::Topless, 2).unwrap();
        let (h_bl, _) = enumerate_hyperedges(&refl, RangeFamily::Bottomless, 2).unwrap();
        assert!(h_tl.same_edge_multiset(&h_bl));
    }

    #[test]
    fn unit_height_rejects_integer_y() {
        let p = ps(&[(0.0, 1.0), (1.0, 2.5)]);
        assert!(matches!(
            enumerate_hyperedges(&p, RangeFamily::UnitHeight, 1),
            Err(Error::DegenerateUnitHeight { .. })
        ));
    }

    #[test]
    fn unit_height_rejects_unit_gap() {
        let p = ps(&[(0.0, 1.25), (1.0, 2.25)]);
        assert!(matches!(
            enumerate_hyperedges(&p, RangeFamily::UnitHeight, 1),
            Err(Error::DegenerateUnitHeight { .. })
        ));
    }

    #[test]
    fn unit_height_separates_far_slabs() {
        // Two clusters more than one unit apart never share an edge.
        let p = ps(&[(0.0, 0.1), (1.0, 0.2), (2.0, 5.1), (3.0, 5.2)]);
        let (h, wit) = enumerate_hyperedges(&p, RangeFamily::UnitHeight, 2).unwrap();
        let sets: Vec<Vec<u32>> = h.edges().iter().map(|e| e.verts.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![2, 3]]);
        for (e, w) in h.edges().iter().zip(&wit) {
            assert_eq!(w.captured(&p), e.verts);
        }
    }

    #[test]
    fn oversized_m_gives_no_edges() {
        let p = ps(&[(0.0, 0.5), (1.0, 1.25)]);
        for fam in RangeFamily::ALL {
            let (h, _) = enumerate_hyperedges(&p, fam, 3).unwrap();
            assert_eq!(h.edge_count(), 0, "{fam}");
        }
    }

    #[test]
    fn enumeration_is_rank_invariant() {
        let p = random_point_set(2, 40, 7).unwrap();
        let r = p.rank_reduce();
        for fam in [
            RangeFamily::StripsAxisAligned,
            RangeFamily::Bottomless,
            RangeFamily::Topless,
            RangeFamily::BottomlessOrTopless,
        ] {
            for m in [2, 3, 5] {
                let (a, _) = enumerate_hyperedges(&p, fam, m).unwrap();
                let (b, _) = enumerate_hyperedges(&r, fam, m).unwrap();
                assert!(a.same_edge_multiset(&b), "{fam} m={m}");
            }
        }
    }
}
