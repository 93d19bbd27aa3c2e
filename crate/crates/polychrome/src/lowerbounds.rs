//! Lower-bound gadgets: the complete t-subset hypergraph, its two-per-part
//! dual, multiplicity blow-ups, and exhaustive certificates that these
//! instances admit no shallow hitting set / no polychromatic edge coloring.
//! A final embedding realizes any uniform multipartite regular hypergraph as
//! a point set whose strip hypergraph simulates it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::hypergraph::Hypergraph;
use crate::strips::search::{assignments_within, exhaustive_edge_coloring};

/// Exact binomial coefficient in u128; panics on overflow (desk-scale only).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.checked_mul((n - i) as u128).expect("binomial overflow") / (i as u128 + 1);
    }
    result
}

/// The complete t-subset gadget and its derived structures.
///
/// The primal hypergraph has vertices `0..2t` and all t-subsets as edges: it
/// is t-uniform and r-regular with r = C(2t,t)/2, and admits no (t-1)-shallow
/// hitting set (any hitting set has at least t+1 vertices and then contains a
/// whole edge). The dual is r-uniform, r-partite and t-regular with parts of
/// size two pairing each subset with its complement, and consequently admits
/// no (t-1)-shallow hitting edge set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GadgetDescriptor {
    pub t: usize,
    /// r = C(2t,t)/2: primal regularity, dual uniformity and part count.
    pub r: usize,
    pub primal: Hypergraph,
    pub dual: Hypergraph,
    /// Subset bitmask of each primal edge, aligned with `primal.edges()` and
    /// with the dual's vertex ids.
    pub subset_masks: Vec<u32>,
}

/// Largest t for which the gadget is constructed; C(12,6)/2 = 462 parts is
/// already far beyond every certifier here.
pub const GADGET_MAX_T: usize = 6;

pub fn complete_t_subset_gadget(t: usize) -> Result<GadgetDescriptor> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("gadget needs t >= 2, got {t}")));
    }
    if t > GADGET_MAX_T {
        return Err(Error::TooLarge { what: "gadget parameter t", size: t, limit: GADGET_MAX_T });
    }
    let n = 2 * t;
    let r = (binomial(n as u64, t as u64) / 2) as usize;
    let mut primal = Hypergraph::new(n);
    let mut subset_masks = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let verts: Vec<u32> = (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
        primal.add_edge(verts, 1)?;
        subset_masks.push(mask);
    }
    let mut dual = primal.dual();
    // Part of a dual vertex (a t-subset) = its complementation pair.
    let full = (1u32 << n) - 1;
    let index_of: std::collections::BTreeMap<u32, usize> =
        subset_masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut parts = vec![u32::MAX; subset_masks.len()];
    let mut next_part = 0u32;
    for (i, &mask) in subset_masks.iter().enumerate() {
        let comp = full & !mask;
        if mask < comp {
            parts[i] = next_part;
            parts[index_of[&comp]] = next_part;
            next_part += 1;
        }
    }
    dual.set_parts(parts)?;

    let desc = GadgetDescriptor { t, r, primal, dual, subset_masks };
    desc.check_structure()?;
    Ok(desc)
}

impl GadgetDescriptor {
    /// Verifies every structural count the construction promises.
    pub fn check_structure(&self) -> Result<()> {
        let expect = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Structure(format!("gadget t = {}: {what}", self.t)))
            }
        };
        let t = self.t;
        expect(self.primal.vertex_count() == 2 * t, "primal must have 2t vertices")?;
        expect(
            self.primal.edge_count() as u128 == binomial(2 * t as u64, t as u64),
            "primal must have C(2t,t) edges",
        )?;
        expect(
            self.primal.check_uniform_regular() == (Some(t), Some(self.r)),
            "primal must be t-uniform r-regular",
        )?;
        expect(
            self.dual.check_uniform_regular() == (Some(self.r), Some(t)),
            "dual must be r-uniform t-regular",
        )?;
        expect(self.dual.part_count() == Some(self.r), "dual must have r parts")?;
        let parts = self.dual.parts().expect("parts installed");
        let mut sizes = vec![0usize; self.r];
        for &p in parts {
            sizes[p as usize] += 1;
        }
        expect(sizes.iter().all(|&s| s == 2), "dual parts must have size two")?;
        for (i, &mask) in self.subset_masks.iter().enumerate() {
            let comp = ((1u32 << (2 * t)) - 1) & !mask;
            let j = self.subset_masks.iter().position(|&m| m == comp).expect("complement listed");
            expect(parts[i] == parts[j], "complement pairs must share a part")?;
        }
        Ok(())
    }

    /// The dual with every edge's multiplicity scaled by floor(k/2).
    pub fn blow_up(&self, k: usize) -> Result<Hypergraph> {
        blow_up(&self.dual, k)
    }
}

/// Scales every edge multiplicity by floor(k/2) (so k = 2 and k = 3 leave
/// the hypergraph unchanged). Preserves any vertex partition.
pub fn blow_up(h: &Hypergraph, k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("blow-up needs k >= 2, got {k}")));
    }
    let factor = (k / 2) as u32;
    let mut out = Hypergraph::new(h.vertex_count());
    if let Some(parts) = h.parts() {
        out.set_parts(parts.to_vec())?;
    }
    for e in h.edges() {
        out.add_edge(e.verts.clone(), e.mult * factor)?;
    }
    Ok(out)
}

/// Exhaustive proof that `h` has no hitting vertex set of depth at most
/// `bound`, or the counterexample that refutes the claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShallowHittingCertificate {
    pub bound: usize,
    pub subsets_checked: u64,
    /// Subsets that miss at least one edge.
    pub not_hitting: u64,
    /// Hitting subsets that meet some edge more than `bound` times.
    pub too_deep: u64,
    /// One (subset, missed edge) sample from the not-hitting class.
    pub sample_uncovered: Option<(Vec<u32>, Vec<u32>)>,
    /// One (subset, overloaded edge) sample from the too-deep class.
    pub sample_overloaded: Option<(Vec<u32>, Vec<u32>)>,
    /// A `bound`-shallow hitting set, present exactly when the claim fails.
    pub counterexample: Option<Vec<u32>>,
}

impl ShallowHittingCertificate {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks every vertex subset of `h` (so `|V| <= 24`) and classifies it as
/// not hitting, too deep, or a counterexample to "no `bound`-shallow hitting
/// set exists".
pub fn certify_no_shallow_hitting(
    h: &Hypergraph,
    bound: usize,
) -> Result<ShallowHittingCertificate> {
    let n = h.vertex_count();
    if n > crate::verify::EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: "vertex count for exhaustive subset search",
            size: n,
            limit: crate::verify::EXHAUSTIVE_MAX_N,
        });
    }
    let edge_masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.verts.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let ids = |mask: u32| -> Vec<u32> { (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect() };
    let mut cert = ShallowHittingCertificate {
        bound,
        subsets_checked: 0,
        not_hitting: 0,
        too_deep: 0,
        sample_uncovered: None,
        sample_overloaded: None,
        counterexample: None,
    };
    for subset in 0u32..(1u64 << n) as u32 {
        cert.subsets_checked += 1;
        if let Some(missed) = edge_masks.iter().position(|&e| e & subset == 0) {
            cert.not_hitting += 1;
            if cert.sample_uncovered.is_none() {
                cert.sample_uncovered = Some((ids(subset), ids(edge_masks[missed])));
            }
            continue;
        }
        if let Some(deep) = edge_masks
            .iter()
            .position(|&e| (e & subset).count_ones() as usize > bound)
        {
            cert.too_deep += 1;
            if cert.sample_overloaded.is_none() {
                cert.sample_overloaded = Some((ids(subset), ids(edge_masks[deep])));
            }
            continue;
        }
        cert.counterexample = Some(ids(subset));
        return Ok(cert);
    }
    Ok(cert)
}

/// Smallest number of distinct edges covering every vertex, by exhaustive
/// subset search over the distinct edge sets (at most 20 of them).
pub fn minimum_hitting_edge_set_size(h: &Hypergraph) -> Result<usize> {
    let sets = h.distinct_edge_sets();
    if sets.len() > 20 {
        return Err(Error::TooLarge {
            what: "distinct edge count for exhaustive cover search",
            size: sets.len(),
            limit: 20,
        });
    }
    let n = h.vertex_count();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1u32 << sets.len()) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut covered = vec![false; n];
        for (i, set) in sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for &v in set {
                    covered[v as usize] = true;
                }
            }
        }
        if covered.iter().all(|&c| c) {
            best = Some(size);
        }
    }
    best.ok_or_else(|| Error::NoHittingEdgeSet("some vertex is in no edge".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveColoringOutcome {
    pub assignments_checked: u64,
    /// A polychromatic coloring if one exists (refuting infeasibility).
    pub found: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingOutcome {
    /// Every hitting edge set needs at least this many instances, so a
    /// polychromatic k-coloring needs at least `min_cover * k` instances.
    pub min_cover: usize,
    pub required_instances: usize,
    /// Whether `required_instances > instances`, proving infeasibility.
    pub applies: bool,
}

/// Certificate that `h` admits no polychromatic k-edge-coloring, combining
/// an exhaustive enumeration (when k^instances <= 2^24) with the counting
/// argument (each color class is a hitting edge set, so k * min_cover
/// instances are necessary).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub k: usize,
    pub instances: usize,
    pub exhaustive: Option<ExhaustiveColoringOutcome>,
    pub counting: Option<CountingOutcome>,
    pub infeasible: bool,
}

/// Cap for the exhaustive coloring certifier: k^instances <= 2^24.
pub const CERTIFY_COLORING_LOG2: u32 = 24;

pub fn certify_no_polychromatic_edge_coloring(
    h: &Hypergraph,
    k: usize,
) -> Result<ColoringCertificate> {
    if k == 0 {
        return Err(Error::InvalidParameter("color count k must be positive".into()));
    }
    let instances = h.instance_count();
    let mut cert = ColoringCertificate {
        k,
        instances,
        exhaustive: None,
        counting: None,
        infeasible: false,
    };
    if let Some(space) = assignments_within(k, instances, CERTIFY_COLORING_LOG2) {
        let found = exhaustive_edge_coloring(h, k);
        cert.infeasible = found.is_none();
        cert.exhaustive = Some(ExhaustiveColoringOutcome {
            assignments_checked: space,
            found,
        });
    }
    if let Ok(min_cover) = minimum_hitting_edge_set_size(h) {
        let required = min_cover.saturating_mul(k);
        let applies = required > instances;
        cert.counting = Some(CountingOutcome {
            min_cover,
            required_instances: required,
            applies,
        });
        if applies {
            if cert.exhaustive.as_ref().is_some_and(|e| e.found.is_some()) {
                return Err(Error::Structure(
                    "counting argument and exhaustive search disagree".into(),
                ));
            }
            cert.infeasible = true;
        }
    }
    if cert.exhaustive.is_none() && cert.counting.is_none() {
        return Err(Error::TooLarge {
            what: "coloring certification (neither exhaustive nor counting applies); instances",
            size: instances,
            limit: 1 << CERTIFY_COLORING_LOG2,
        });
    }
    Ok(cert)
}

/// The exact lower bound the blow-up certificate establishes for the strip
/// parameter: with the t-gadget blown up for k colors, no polychromatic
/// k-coloring exists at regularity t * floor(k/2).
pub fn counting_threshold(t: usize, k: usize) -> usize {
    t * (k / 2)
}

/// Exact form of the bound chain: t >= log_4(C(2t,t)), i.e. 4^t >= C(2t,t),
/// which lets the concrete threshold t*floor(k/2) dominate the asymptotic
/// form (log_2(d)-1)/2 * floor(k/2) for d = C(2t,t)/2 .. 4 * that.
pub fn bound_chain_holds(t: usize) -> bool {
    let four_pow: u128 = match 4u128.checked_pow(t as u32) {
        Some(p) => p,
        None => return false,
    };
    four_pow >= binomial(2 * t as u64, t as u64)
}

/// Realizes a d-uniform d-partite regular hypergraph with equal part sizes
/// as points, one per edge instance: coordinate i ranks the instances by
/// their part-i vertex (instance index breaking ties within one vertex).
/// Every vertex's incident instances then occupy consecutive ranks on the
/// axis of its part, so size-Δ strip edges simulate the hypergraph.
pub fn embed_to_points(h: &Hypergraph) -> Result<PointSet> {
    let layout = EmbeddingLayout::new(h)?;
    let pts: Vec<Vec<f64>> = (0..layout.instances)
        .map(|i| (0..layout.d).map(|axis| layout.rank[axis][i] as f64 + 1.0).collect())
        .collect();
    PointSet::new(layout.d, pts)
}

struct EmbeddingLayout {
    d: usize,
    instances: usize,
    /// `rank[axis][instance]`: 0-based position in the axis order.
    rank: Vec<Vec<usize>>,
    /// `vertex_of[axis][instance]`: the part-`axis` vertex of the instance.
    vertex_of: Vec<Vec<u32>>,
}

impl EmbeddingLayout {
    fn new(h: &Hypergraph) -> Result<Self> {
        let (uniform, regular) = h.check_uniform_regular();
        let (Some(d), Some(_)) = (uniform, regular) else {
            return Err(Error::NotUniformRegular { uniform, regular });
        };
        let Some(parts) = h.parts() else {
            return Err(Error::Structure("embedding needs a vertex partition".into()));
        };
        let part_count = h.part_count().unwrap_or(0);
        if part_count != d {
            return Err(Error::Structure(format!(
                "embedding needs exactly {d} parts, found {part_count}"
            )));
        }
        let mut size = vec![0usize; part_count];
        for &p in parts {
            size[p as usize] += 1;
        }
        if size.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Structure(format!("part sizes differ: {size:?}")));
        }

        let mut inst_verts: Vec<&[u32]> = Vec::new();
        for e in h.edges() {
            for _ in 0..e.mult {
                inst_verts.push(&e.verts);
            }
        }
        let instances = inst_verts.len();
        let mut rank = Vec::with_capacity(d);
        let mut vertex_of = Vec::with_capacity(d);
        for axis in 0..d {
            let mut vert: Vec<u32> = Vec::with_capacity(instances);
            for verts in &inst_verts {
                let mut in_part = verts.iter().filter(|&&v| parts[v as usize] as usize == axis);
                let (Some(&v), None) = (in_part.next(), in_part.next()) else {
                    return Err(Error::Structure(format!(
                        "an edge does not meet part {axis} exactly once"
                    )));
                };
                vert.push(v);
            }
            // Stable sort by vertex id: instances of one vertex stay in
            // instance order, giving the deterministic tie-break.
            let mut order: Vec<usize> = (0..instances).collect();
            order.sort_by_key(|&i| vert[i]);
            let mut rk = vec![0usize; instances];
            for (pos, &i) in order.iter().enumerate() {
                rk[i] = pos;
            }
            rank.push(rk);
            vertex_of.push(vert);
        }
        Ok(EmbeddingLayout { d, instances, rank, vertex_of })
    }
}

/// Checks the embedding's defining property on `ps` (as produced by
/// [`embed_to_points`] from `h`): for every vertex, the ranks of its
/// incident instances form an integer interval on its part's axis.
pub fn embedding_is_consecutive(h: &Hypergraph, ps: &PointSet) -> Result<bool> {
    let layout = EmbeddingLayout::new(h)?;
    if ps.len() != layout.instances || ps.dim() != layout.d {
        return Err(Error::Structure(format!(
            "point set is {}x{}, embedding expects {}x{}",
            ps.len(),
            ps.dim(),
            layout.instances,
            layout.d
        )));
    }
    for axis in 0..layout.d {
        let order = ps.axis_order(axis);
        let mut pos = vec![0usize; layout.instances];
        for (p, &id) in order.iter().enumerate() {
            pos[id as usize] = p;
        }
        let mut by_vertex: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
        for i in 0..layout.instances {
            by_vertex.entry(layout.vertex_of[axis][i]).or_default().push(pos[i]);
        }
        for ranks in by_vertex.values_mut() {
            ranks.sort_unstable();
            if ranks.windows(2).any(|w| w[1] != w[0] + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_hyperedges, RangeFamily};
    use crate::strips::search::{find_shallow_hitting_edge_set, SearchBudget};
    use crate::verify::min_shallow_t;

    #[test]
    fn gadget_counts_for_t2_and_t3() {
        let g2 = complete_t_subset_gadget(2).unwrap();
        assert_eq!(g2.r, 3);
        assert_eq!(g2.primal.vertex_count(), 4);
        assert_eq!(g2.primal.edge_count(), 6);
        assert_eq!(g2.primal.check_uniform_regular(), (Some(2), Some(3)));
        assert_eq!(g2.dual.check_uniform_regular(), (Some(3), Some(2)));

        let g3 = complete_t_subset_gadget(3).unwrap();
        assert_eq!(g3.r, 10);
        assert_eq!(g3.primal.edge_count(), 20);
        assert_eq!(g3.primal.check_uniform_regular(), (Some(3), Some(10)));
    }

    #[test]
    fn primal_edges_pair_into_perfect_matchings() {
        // The C(2t,t) primal edges split into r complement pairs; each pair
        // partitions the vertex set, i.e. forms a perfect matching. The dual
        // parts are exactly these pairs.
        for t in [2usize, 3] {
            let g = complete_t_subset_gadget(t).unwrap();
            let parts = g.dual.parts().unwrap();
            let full = (1u32 << (2 * t)) - 1;
            for p in 0..g.r as u32 {
                let members: Vec<usize> =
                    (0..g.subset_masks.len()).filter(|&i| parts[i] == p).collect();
                assert_eq!(members.len(), 2);
                assert_eq!(g.subset_masks[members[0]] ^ g.subset_masks[members[1]], full);
            }
        }
    }

    #[test]
    fn no_shallow_hitting_certificates() {
        let g2 = complete_t_subset_gadget(2).unwrap();
        let cert = certify_no_shallow_hitting(&g2.primal, 1).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.subsets_checked, 16);
        assert_eq!(cert.not_hitting + cert.too_deep, 16);
        assert!(cert.sample_uncovered.is_some() && cert.sample_overloaded.is_some());
        assert_eq!(min_shallow_t(&g2.primal).unwrap(), Some(2));

        let g3 = complete_t_subset_gadget(3).unwrap();
        let cert = certify_no_shallow_hitting(&g3.primal, 2).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.subsets_checked, 64);
        assert_eq!(min_shallow_t(&g3.primal).unwrap(), Some(3));
    }

    #[test]
    fn certificate_fails_where_a_shallow_set_exists() {
        let mut h = Hypergraph::new(2);
        h.add_edge(vec![0], 1).unwrap();
        h.add_edge(vec![1], 1).unwrap();
        let cert = certify_no_shallow_hitting(&h, 1).unwrap();
        assert!(!cert.holds());
        assert_eq!(cert.counterexample, Some(vec![0, 1]));
    }

    #[test]
    fn dual_has_no_perfect_matching_but_an_optimal_t_shallow_edge_set() {
        for t in [2usize, 3] {
            let g = complete_t_subset_gadget(t).unwrap();
            let out = find_shallow_hitting_edge_set(&g.dual, &SearchBudget::default()).unwrap();
            assert!(out.exhaustive, "2t = {} edges fit the exhaustive path", 2 * t);
            assert_eq!(out.achieved, t, "optimum must be exactly t");
        }
    }

    #[test]
    fn blow_up_scales_multiplicity_only() {
        let g = complete_t_subset_gadget(2).unwrap();
        let unchanged = g.blow_up(2).unwrap();
        assert!(unchanged.same_edge_multiset(&g.dual));
        let b5 = g.blow_up(5).unwrap();
        assert_eq!(b5.instance_count(), 2 * 2 * 2); // 2t * floor(k/2)
        assert_eq!(b5.check_uniform_regular(), (Some(3), Some(4)));
        assert!(blow_up(&g.dual, 1).is_err());
    }

    #[test]
    fn coloring_certificates_exhaustive_and_counting() {
        let g = complete_t_subset_gadget(2).unwrap();
        // k = 2: 4 instances, exhaustive over 2^4; counting also applies
        // (min cover 3, 2*3 > 4).
        let cert = certify_no_polychromatic_edge_coloring(&g.dual, 2).unwrap();
        assert!(cert.infeasible);
        let exh = cert.exhaustive.as_ref().unwrap();
        assert_eq!(exh.assignments_checked, 16);
        assert!(exh.found.is_none());
        let counting = cert.counting.as_ref().unwrap();
        assert_eq!(counting.min_cover, 3);
        assert!(counting.applies);

        // k = 4 on the blow-up: |E| = 8 < (t+1)k = 12.
        let b = g.blow_up(4).unwrap();
        let cert = certify_no_polychromatic_edge_coloring(&b, 4).unwrap();
        assert!(cert.infeasible);
        assert!(cert.counting.as_ref().unwrap().applies);
    }

    #[test]
    fn k1_certification_correctly_fails() {
        let g = complete_t_subset_gadget(2).unwrap();
        let cert = certify_no_polychromatic_edge_coloring(&g.dual, 1).unwrap();
        assert!(!cert.infeasible);
        let found = cert.exhaustive.unwrap().found.unwrap();
        assert!(found.iter().all(|&c| c == 1));
    }

    #[test]
    fn counting_threshold_chain() {
        for t in 2..=GADGET_MAX_T {
            assert!(bound_chain_holds(t), "4^{t} >= C({},{}) must hold", 2 * t, t);
        }
        for (t, k) in [(2usize, 2usize), (2, 6), (3, 2), (3, 6)] {
            let g = complete_t_subset_gadget(t).unwrap();
            let b = g.blow_up(k).unwrap();
            assert_eq!(b.instance_count(), 2 * counting_threshold(t, k));
            // Blown-up regularity equals the certified threshold.
            assert_eq!(b.check_uniform_regular().1, Some(counting_threshold(t, k)));
        }
    }

    #[test]
    fn embedding_single_edge_and_four_cycle() {
        let mut h = Hypergraph::new(2);
        h.set_parts(vec![0, 1]).unwrap();
        h.add_edge(vec![0, 1], 1).unwrap();
        let ps = embed_to_points(&h).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps.coord(0, 0), ps.coord(0, 1)), (1.0, 1.0));

        // 4-cycle as a 2-uniform 2-partite 2-regular hypergraph.
        let mut h = Hypergraph::new(4);
        h.set_parts(vec![0, 0, 1, 1]).unwrap();
        for e in [[0u32, 2], [0, 3], [1, 2], [1, 3]] {
            h.add_edge(e.to_vec(), 1).unwrap();
        }
        let ps = embed_to_points(&h).unwrap();
        assert_eq!(ps.len(), 4);
        assert!(embedding_is_consecutive(&h, &ps).unwrap());
    }

    #[test]
    fn embedding_of_gadget_dual_is_consecutive() {
        for t in [2usize, 3] {
            let g = complete_t_subset_gadget(t).unwrap();
            let ps = embed_to_points(&g.dual).unwrap();
            assert_eq!(ps.len(), 2 * t);
            assert_eq!(ps.dim(), g.r);
            assert!(embedding_is_consecutive(&g.dual, &ps).unwrap());
        }
    }

    #[test]
    fn embedding_transfer_property_on_tiny_instance() {
        // Any polychromatic 2-coloring of the strip hypergraph on the
        // embedded points induces a polychromatic 2-edge-coloring of h.
        // Instance: complete tripartite triples over parts {0,1},{2,3},{4,5}
        // (3-uniform, 3-partite, 4-regular), embedded as 8 points in R^3.
        let mut h = Hypergraph::new(6);
        h.set_parts(vec![0, 0, 1, 1, 2, 2]).unwrap();
        for a in 0..2u32 {
            for b in 2..4u32 {
                for c in 4..6u32 {
                    h.add_edge(vec![a, b, c], 1).unwrap();
                }
            }
        }
        let ps = embed_to_points(&h).unwrap();
        assert!(embedding_is_consecutive(&h, &ps).unwrap());
        let m = 4; // = regularity
        let (strips, _) = enumerate_hyperedges(&ps, RangeFamily::StripsAxisAligned, m).unwrap();
        let inc: Vec<Vec<usize>> = {
            let mut inc = vec![Vec::new(); h.vertex_count()];
            for (i, e) in h.edges().iter().enumerate() {
                for &v in &e.verts {
                    inc[v as usize].push(i);
                }
            }
            inc
        };
        let mut polychromatic_seen = 0;
        for mask in 0u32..(1 << ps.len()) {
            let colors: Vec<u32> =
                (0..ps.len()).map(|i| if mask & (1 << i) != 0 { 2 } else { 1 }).collect();
            let strip_poly = strips.edges().iter().all(|e| {
                let c: std::collections::BTreeSet<u32> =
                    e.verts.iter().map(|&v| colors[v as usize]).collect();
                c.len() == 2
            });
            if !strip_poly {
                continue;
            }
            polychromatic_seen += 1;
            // Edge instance i of h is point i; its color transfers.
            for lists in &inc {
                let c: std::collections::BTreeSet<u32> =
                    lists.iter().map(|&e| colors[e]).collect();
                assert_eq!(c.len(), 2, "vertex missing a color after transfer");
            }
        }
        assert!(polychromatic_seen > 0, "no polychromatic strip coloring found at all");
    }

    #[test]
    fn embedded_gadget_blocks_strip_coloring_at_its_threshold() {
        // The embedded t=2 gadget dual yields 4 points in R^3 whose size-2
        // strip hypergraph forces all four points to differ pairwise, so no
        // 2-coloring is polychromatic. This is the point-level form of the
        // counting certificate (every color class would need t+1 = 3 of the
        // 4 edges).
        let g = complete_t_subset_gadget(2).unwrap();
        let ps = embed_to_points(&g.dual).unwrap();
        assert_eq!((ps.len(), ps.dim()), (4, 3));
        let (strips, _) = enumerate_hyperedges(&ps, RangeFamily::StripsAxisAligned, 2).unwrap();
        for mask in 0u32..(1 << ps.len()) {
            let colors: Vec<u32> =
                (0..ps.len()).map(|i| if mask & (1 << i) != 0 { 2 } else { 1 }).collect();
            let strip_poly = strips.edges().iter().all(|e| {
                let c: std::collections::BTreeSet<u32> =
                    e.verts.iter().map(|&v| colors[v as usize]).collect();
                c.len() == 2
            });
            assert!(!strip_poly, "mask {mask:#b} should not be polychromatic");
        }
    }

    #[test]
    fn embedding_rejects_bad_structure() {
        let mut h = Hypergraph::new(4);
        h.add_edge(vec![0, 1], 1).unwrap();
        h.add_edge(vec![2, 3], 1).unwrap();
        assert!(embed_to_points(&h).is_err()); // no parts
        let mut h2 = h.clone();
        h2.set_parts(vec![0, 1, 0, 1]).unwrap();
        embed_to_points(&h2).unwrap();
        let mut h3 = Hypergraph::new(3);
        h3.set_parts(vec![0, 1, 1]).unwrap();
        h3.add_edge(vec![0, 1], 1).unwrap();
        h3.add_edge(vec![0, 2], 1).unwrap();
        assert!(embed_to_points(&h3).is_err()); // unequal part sizes
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(3, 5), 0);
    }
}
