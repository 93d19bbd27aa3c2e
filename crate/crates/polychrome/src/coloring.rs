//! Polychromatic colorings: total k-colorings under which every captured edge
//! of the stated size sees all k colors.
//!
//! Constructive sizes produced here (with the best sizes known from other,
//! non-constructive or more intricate arguments kept as metadata next to
//! them, never asserted):
//!
//! | family               | built at m =      | literature m = |
//! |----------------------|-------------------|----------------|
//! | bottomless           | 4k - 3            | 3k - 2         |
//! | bottomless ∪ topless | 8k - 5            | 6k - 3         |
//! | unit-height          | 16k - 11          | 12k - 7        |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{PointSet, RangeFamily};
use crate::shallow::{bottomless, SweepOptions};

/// A total coloring with colors `1..=k`, indexed by point id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub assignment: Vec<u32>,
    pub provenance: String,
}

impl Coloring {
    pub fn color_class(&self, color: u32) -> Vec<u32> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(id, _)| id as u32)
            .collect()
    }

    /// Merges class `b` into class `a` and renumbers so colors stay `1..=k-1`.
    /// Merging classes preserves the polychromatic property one k lower.
    pub fn merge_classes(&self, a: u32, b: u32) -> Result<Coloring> {
        if a == b || a == 0 || b == 0 || a as usize > self.k || b as usize > self.k {
            return Err(Error::InvalidParameter(format!("cannot merge classes {a} and {b}")));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|&c| {
                let c = if c == b { a } else { c };
                if c > b {
                    c - 1
                } else {
                    c
                }
            })
            .collect();
        Ok(Coloring {
            k: self.k - 1,
            assignment,
            provenance: format!("{} (classes {a},{b} merged)", self.provenance),
        })
    }
}

/// Serialization schema for coloring outputs: the literature bound rides
/// along as metadata only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub k: usize,
    /// Edge size at which the coloring is claimed polychromatic.
    pub m_used: usize,
    pub family: RangeFamily,
    pub colors: Vec<u32>,
    pub construction: String,
    /// Claimed balance bound (each color count at most this times another
    /// color's count plus one, per edge), if the construction has one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub balanced_t: Option<usize>,
    /// Best bound known from the literature for the same family; informative
    /// only, never asserted by any test.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub literature_bound: Option<usize>,
}

impl ColoringReport {
    pub fn new(
        c: &Coloring,
        family: RangeFamily,
        m_used: usize,
        balanced_t: Option<usize>,
        literature_bound: Option<usize>,
    ) -> Self {
        ColoringReport {
            k: c.k,
            m_used,
            family,
            colors: c.assignment.clone(),
            construction: c.provenance.clone(),
            balanced_t,
            literature_bound,
        }
    }

    pub fn to_coloring(&self) -> Coloring {
        Coloring {
            k: self.k,
            assignment: self.colors.clone(),
            provenance: self.construction.clone(),
        }
    }
}

/// Edge size at which [`bottomless_polychromatic`] is polychromatic.
pub fn bottomless_m_used(k: usize) -> usize {
    4 * k - 3
}

/// Best bottomless bound in the literature (metadata only; the construction
/// here does not achieve it).
pub fn bottomless_m_literature(k: usize) -> usize {
    3 * k - 2
}

/// Edge size for the union family: a captured set of size `8k - 5` keeps at
/// least `4k - 3` points on its matching side of the paired split (two points
/// may sit in pairs straddling the x-window, hence the `+1` beyond doubling).
pub fn bl_tl_m_used(k: usize) -> usize {
    2 * bottomless_m_used(k) + 1 // = 8k - 5
}

pub fn bl_tl_m_literature(k: usize) -> usize {
    6 * k - 3
}

/// Edge size for unit-height rectangles: such a rectangle meets exactly two
/// integer slabs, so a captured set of size `16k - 11` keeps at least
/// `8k - 5` points inside one slab (no straddling loss; every point lies in
/// exactly one slab).
pub fn unit_height_m_used(k: usize) -> usize {
    2 * bl_tl_m_used(k) - 1 // = 16k - 11
}

pub fn unit_height_m_literature(k: usize) -> usize {
    12 * k - 7
}

/// Polychromatic k-coloring for bottomless rectangles of size `4k - 3`: the
/// w-class sweep with w = k, completed to a total coloring by filling every
/// interval's unclassified points in x-order with its least-used color. Every
/// final interval then holds every color once or twice, which also makes the
/// coloring 4-balanced on bottomless edges of *every* size and every class a
/// 10-shallow hitting set at size 4k - 3.
pub fn bottomless_polychromatic(ps: &PointSet, k: usize) -> Result<Coloring> {
    bottomless_polychromatic_with(ps, k, SweepOptions::default())
}

pub fn bottomless_polychromatic_with(
    ps: &PointSet,
    k: usize,
    opts: SweepOptions,
) -> Result<Coloring> {
    if ps.dim() != 2 {
        return Err(Error::DimensionMismatch { family: "bottomless", dim: ps.dim() });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("color count k must be positive".into()));
    }
    let provenance = "bottomless-sweep".to_string();
    if ps.len() < k {
        // Too few points for the sweep to seed; all-distinct colors are
        // trivially 4-balanced and there are no size-(4k-3) edges.
        let by_y = ps.axis_order(1);
        let mut assignment = vec![0u32; ps.len()];
        for (i, &id) in by_y.iter().enumerate() {
            assignment[id as usize] = i as u32 + 1;
        }
        return Ok(Coloring { k, assignment, provenance });
    }
    let out = bottomless::class_sweep(ps, k, opts.instrument)?;
    let mut assignment: Vec<u32> = out
        .labels
        .iter()
        .map(|l| l.map_or(0, |c| c + 1))
        .collect();
    for members in &out.final_intervals {
        let mut counts = vec![0usize; k];
        for &q in members {
            if assignment[q as usize] != 0 {
                counts[(assignment[q as usize] - 1) as usize] += 1;
            }
        }
        for &q in members {
            // members are in x-order already
            if assignment[q as usize] != 0 {
                continue;
            }
            let (best, _) = counts
                .iter()
                .enumerate()
                .min_by_key(|&(c, &cnt)| (cnt, c))
                .expect("k > 0");
            assignment[q as usize] = best as u32 + 1;
            counts[best] += 1;
        }
        if counts.iter().any(|&c| c > 2) {
            return Err(Error::Structure(
                "completion left a color more than twice in one interval".into(),
            ));
        }
    }
    Ok(Coloring { k, assignment, provenance })
}

/// Polychromatic k-coloring for bottomless-or-topless rectangles of size
/// `8k - 5`: walk the points in x-order in consecutive pairs; the lower point
/// of each pair (and the odd leftover) goes to part A, the upper to part B.
/// A is colored by the bottomless construction, B by its reflection (the
/// topless construction). Any union-family edge of size 8k - 5 keeps at
/// least 4k - 3 points inside the matching part.
pub fn bl_tl_polychromatic(ps: &PointSet, k: usize) -> Result<(Coloring, usize)> {
    bl_tl_polychromatic_with(ps, k, SweepOptions::default())
}

pub fn bl_tl_polychromatic_with(
    ps: &PointSet,
    k: usize,
    opts: SweepOptions,
) -> Result<(Coloring, usize)> {
    if ps.dim() != 2 {
        return Err(Error::DimensionMismatch { family: "bottomless", dim: ps.dim() });
    }
    let by_x = ps.axis_order(0);
    let mut part_a: Vec<u32> = Vec::with_capacity(ps.len() / 2 + 1);
    let mut part_b: Vec<u32> = Vec::with_capacity(ps.len() / 2);
    for pair in by_x.chunks(2) {
        match *pair {
            [p, q] => {
                if ps.coord(p, 1) < ps.coord(q, 1) {
                    part_a.push(p);
                    part_b.push(q);
                } else {
                    part_a.push(q);
                    part_b.push(p);
                }
            }
            [p] => part_a.push(p),
            _ => unreachable!(),
        }
    }
    let mut assignment = vec![0u32; ps.len()];
    let ca = bottomless_polychromatic_with(&ps.subset(&part_a), k, opts)?;
    for (local, &orig) in part_a.iter().enumerate() {
        assignment[orig as usize] = ca.assignment[local];
    }
    let cb = bottomless_polychromatic_with(&ps.subset(&part_b).reflect_y(), k, opts)?;
    for (local, &orig) in part_b.iter().enumerate() {
        assignment[orig as usize] = cb.assignment[local];
    }
    let coloring =
        Coloring { k, assignment, provenance: "paired-bottomless-topless".to_string() };
    Ok((coloring, bl_tl_m_used(k)))
}

/// Share of a union-family edge that lands in part A (or B): of `s` points
/// captured, consecutive-pair splitting keeps at least `(s - 2) / 2 + s % 2`
/// in the matching part. Exposed for the density test.
pub fn paired_split_lower_bound(s: usize) -> usize {
    s.saturating_sub(2).div_ceil(2)
}

/// Polychromatic k-coloring for unit-height rectangles of size `16k - 11`:
/// color every integer slab independently with [`bl_tl_polychromatic`]. Any
/// unit-height edge of that size keeps at least `8k - 5` points inside one
/// slab, captured there by a bottomless or topless range.
pub fn unit_height_polychromatic(ps: &PointSet, k: usize) -> Result<(Coloring, usize)> {
    unit_height_polychromatic_with(ps, k, SweepOptions::default())
}

pub fn unit_height_polychromatic_with(
    ps: &PointSet,
    k: usize,
    opts: SweepOptions,
) -> Result<(Coloring, usize)> {
    ps.check_unit_height_preconditions()?;
    let mut slabs: std::collections::BTreeMap<i64, Vec<u32>> = Default::default();
    for id in ps.ids() {
        slabs.entry(ps.coord(id, 1).floor() as i64).or_default().push(id);
    }
    let mut assignment = vec![0u32; ps.len()];
    for ids in slabs.values() {
        let (c, _) = bl_tl_polychromatic_with(&ps.subset(ids), k, opts)?;
        for (local, &orig) in ids.iter().enumerate() {
            assignment[orig as usize] = c.assignment[local];
        }
    }
    let coloring = Coloring { k, assignment, provenance: "slab-composition".to_string() };
    Ok((coloring, unit_height_m_used(k)))
}

/// A source of t-shallow hitting sets for one range family, used as the
/// peeling step of [`shallow_to_polychromatic`].
pub trait ShallowHittingProvider {
    /// The depth bound t every returned set satisfies.
    fn guarantee(&self) -> usize;
    /// A hitting set for size-`m` edges of `ps`, at most `t` deep.
    fn compute(&self, ps: &PointSet, m: usize) -> Result<Vec<u32>>;
}

/// The bottomless sweep as a provider (t = 10).
pub struct BottomlessProvider {
    pub opts: SweepOptions,
}

impl Default for BottomlessProvider {
    fn default() -> Self {
        BottomlessProvider { opts: SweepOptions::default() }
    }
}

impl ShallowHittingProvider for BottomlessProvider {
    fn guarantee(&self) -> usize {
        10
    }

    fn compute(&self, ps: &PointSet, m: usize) -> Result<Vec<u32>> {
        Ok(crate::shallow::bottomless_shallow_hitting_with(ps, m, self.opts)?.x)
    }
}

/// Exact 1-shallow hitting sets for strips on a line (d = 1): every m-th
/// point in rank order. Each window of m consecutive ranks holds exactly one.
pub struct UnitStripProvider;

impl ShallowHittingProvider for UnitStripProvider {
    fn guarantee(&self) -> usize {
        1
    }

    fn compute(&self, ps: &PointSet, m: usize) -> Result<Vec<u32>> {
        if ps.dim() != 1 {
            return Err(Error::DimensionMismatch { family: "strips-axis-aligned", dim: ps.dim() });
        }
        if m == 0 {
            return Err(Error::InvalidParameter("edge size m must be positive".into()));
        }
        let order = ps.axis_order(0);
        Ok(order.iter().skip(m - 1).step_by(m).copied().collect())
    }
}

/// Turns any t-shallow hitting set source into a polychromatic k-coloring at
/// edge size `m = t(k-1) + 1`: peel a hitting set for shrinking edge sizes
/// `t(i-1) + 1` off the remaining points for colors i = k down to 2, color 1
/// takes the rest. Every size-m edge loses at most t points per peel, so it
/// still holds an edge of the next size and meets every color.
pub fn shallow_to_polychromatic(
    ps: &PointSet,
    family: RangeFamily,
    k: usize,
    provider: &dyn ShallowHittingProvider,
) -> Result<(Coloring, usize)> {
    if k == 0 {
        return Err(Error::InvalidParameter("color count k must be positive".into()));
    }
    let t = provider.guarantee();
    let m_used = t * (k - 1) + 1;
    let mut remaining: Vec<u32> = ps.ids().collect();
    let mut assignment = vec![1u32; ps.len()];
    for color in (2..=k as u32).rev() {
        let m_i = t * (color as usize - 1) + 1;
        let sub = ps.subset(&remaining);
        let local_x = provider.compute(&sub, m_i)?;
        let chosen: std::collections::BTreeSet<u32> =
            local_x.iter().map(|&l| remaining[l as usize]).collect();
        for &id in &chosen {
            assignment[id as usize] = color;
        }
        remaining.retain(|id| !chosen.contains(id));
    }
    let coloring = Coloring {
        k,
        assignment,
        provenance: format!("peeled-{}", family.name()),
    };
    Ok((coloring, m_used))
}

/// Convenience wrapper: peel with the bottomless sweep, verifying nothing.
pub fn bottomless_peeled_polychromatic(ps: &PointSet, k: usize) -> Result<(Coloring, usize)> {
    shallow_to_polychromatic(
        ps,
        RangeFamily::Bottomless,
        k,
        &BottomlessProvider::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_hyperedges, random_point_set, random_unit_height_point_set};
    use crate::verify::{check_balanced, check_polychromatic};

    const OPTS: SweepOptions = SweepOptions { instrument: true };

    #[test]
    fn bottomless_coloring_is_polychromatic_and_balanced() {
        let ps = random_point_set(2, 240, 10).unwrap();
        for k in [2, 3, 5] {
            let c = bottomless_polychromatic_with(&ps, k, OPTS).unwrap();
            let (h, _) =
                enumerate_hyperedges(&ps, RangeFamily::Bottomless, bottomless_m_used(k)).unwrap();
            assert!(h.edge_count() > 0);
            assert!(check_polychromatic(&h, &c).unwrap().pass, "k = {k}");
            for m in [1, 2, 5, 9, 30] {
                let (hm, _) = enumerate_hyperedges(&ps, RangeFamily::Bottomless, m).unwrap();
                assert!(check_balanced(&hm, &c, 4).unwrap().pass, "k = {k}, m = {m}");
            }
        }
    }

    #[test]
    fn every_class_of_the_bottomless_coloring_is_shallow_hitting() {
        let ps = random_point_set(2, 200, 4).unwrap();
        let k = 3;
        let c = bottomless_polychromatic_with(&ps, k, OPTS).unwrap();
        let (h, _) =
            enumerate_hyperedges(&ps, RangeFamily::Bottomless, bottomless_m_used(k)).unwrap();
        for color in 1..=k as u32 {
            let class = c.color_class(color);
            let (hit, load) = crate::verify::check_hitting_shallow(&h, &class);
            assert!(hit, "class {color} misses an edge");
            assert!(load <= 10, "class {color} has depth {load}");
        }
    }

    #[test]
    fn tiny_inputs_get_distinct_colors() {
        let ps = random_point_set(2, 3, 0).unwrap();
        let c = bottomless_polychromatic(&ps, 5).unwrap();
        let mut seen: Vec<u32> = c.assignment.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn union_coloring_verified() {
        let ps = random_point_set(2, 300, 21).unwrap();
        for k in [2, 3] {
            let (c, m_used) = bl_tl_polychromatic_with(&ps, k, OPTS).unwrap();
            assert_eq!(m_used, 8 * k - 5);
            let (h, _) =
                enumerate_hyperedges(&ps, RangeFamily::BottomlessOrTopless, m_used).unwrap();
            assert!(h.edge_count() > 0);
            assert!(check_polychromatic(&h, &c).unwrap().pass, "k = {k}");
        }
    }

    #[test]
    fn paired_split_density_holds_per_edge() {
        let ps = random_point_set(2, 160, 33).unwrap();
        let by_x = ps.axis_order(0);
        let mut in_a = vec![false; ps.len()];
        for pair in by_x.chunks(2) {
            match *pair {
                [p, q] => {
                    let low = if ps.coord(p, 1) < ps.coord(q, 1) { p } else { q };
                    in_a[low as usize] = true;
                }
                [p] => in_a[p as usize] = true,
                _ => unreachable!(),
            }
        }
        let m = 11;
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::Bottomless, m).unwrap();
        for e in h.edges() {
            let a_count = e.verts.iter().filter(|&&v| in_a[v as usize]).count();
            assert!(a_count >= paired_split_lower_bound(m));
        }
    }

    #[test]
    fn unit_height_coloring_verified() {
        let ps = random_unit_height_point_set(500, 3, 5).unwrap();
        let k = 2;
        let (c, m_used) = unit_height_polychromatic_with(&ps, k, OPTS).unwrap();
        assert_eq!(m_used, 16 * k - 11);
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::UnitHeight, m_used).unwrap();
        assert!(h.edge_count() > 0);
        assert!(check_polychromatic(&h, &c).unwrap().pass);
    }

    #[test]
    fn peeling_with_bottomless_provider() {
        let ps = random_point_set(2, 320, 13).unwrap();
        let k = 3;
        let (c, m_used) = bottomless_peeled_polychromatic(&ps, k).unwrap();
        assert_eq!(m_used, 10 * (k - 1) + 1);
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::Bottomless, m_used).unwrap();
        assert!(h.edge_count() > 0);
        assert!(check_polychromatic(&h, &c).unwrap().pass);
    }

    #[test]
    fn peeling_with_unit_strip_provider_matches_line_bound() {
        let ps = PointSet::new(1, (0..40).map(|i| vec![i as f64 * 1.3]).collect()).unwrap();
        let k = 4;
        let (c, m_used) =
            shallow_to_polychromatic(&ps, RangeFamily::StripsAxisAligned, k, &UnitStripProvider)
                .unwrap();
        assert_eq!(m_used, k);
        let (h, _) = enumerate_hyperedges(&ps, RangeFamily::StripsAxisAligned, k).unwrap();
        assert!(check_polychromatic(&h, &c).unwrap().pass);
    }

    #[test]
    fn merging_classes_preserves_polychromatic() {
        let ps = random_point_set(2, 220, 6).unwrap();
        let c = bottomless_polychromatic_with(&ps, 4, OPTS).unwrap();
        let merged = c.merge_classes(2, 4).unwrap();
        assert_eq!(merged.k, 3);
        let (h, _) =
            enumerate_hyperedges(&ps, RangeFamily::Bottomless, bottomless_m_used(4)).unwrap();
        assert!(check_polychromatic(&h, &merged).unwrap().pass);
    }

    #[test]
    fn literature_bounds_are_metadata_only() {
        let c = Coloring { k: 3, assignment: vec![], provenance: "x".into() };
        let rep = ColoringReport::new(
            &c,
            RangeFamily::Bottomless,
            bottomless_m_used(3),
            Some(4),
            Some(bottomless_m_literature(3)),
        );
        assert_eq!(rep.m_used, 9);
        assert_eq!(rep.literature_bound, Some(7));
        assert!(rep.m_used >= rep.literature_bound.unwrap());
    }
}
