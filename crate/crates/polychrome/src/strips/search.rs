//! Search subroutines on uniform regular hypergraphs: shallow hitting edge
//! sets and polychromatic edge colorings.
//!
//! Tiny instances are solved exhaustively (and exhaustive failure is a
//! certificate); everything else runs a seeded greedy + local-search loop
//! whose outcome is best-effort and never treated as a disproof.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Exhaustive search is used when the number of stored edges is at most this.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 20;

/// Exhaustive edge-coloring enumeration is used when k^instances is at most
/// 2^this.
pub const EXHAUSTIVE_COLORING_LOG2: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub restarts: usize,
    /// Local-search steps per restart.
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 8, iterations: 4000, seed: 0 }
    }
}

impl SearchBudget {
    fn rng(&self, restart: usize) -> ChaCha8Rng {
        // Independent stream per restart; restart 0 is fully deterministic
        // greedy so the default path needs no randomness at all.
        ChaCha8Rng::seed_from_u64(
            self.seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        )
    }
}

/// Outcome of [`find_shallow_hitting_edge_set`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSetSearch {
    /// Indices into `h.edges()`, sorted.
    pub selected: Vec<usize>,
    /// `max_v |selected ∩ incident(v)|`, the verified shallowness.
    pub achieved: usize,
    /// Whether the result is exhaustively optimal.
    pub exhaustive: bool,
}

fn require_uniform_regular(h: &Hypergraph) -> Result<(usize, usize)> {
    match h.check_uniform_regular() {
        (Some(u), Some(r)) if h.edge_count() > 0 => Ok((u, r)),
        (uniform, regular) => Err(Error::NotUniformRegular { uniform, regular }),
    }
}

/// Shallowness target before restarts stop refining: ceil(e * uniformity) + 2.
/// Instances above it are still returned (best found), never errors.
pub fn shallowness_target(uniformity: usize) -> usize {
    (std::f64::consts::E * uniformity as f64).ceil() as usize + 2
}

struct Loads<'a> {
    h: &'a Hypergraph,
    selected: Vec<bool>,
    cover: Vec<usize>,
}

impl<'a> Loads<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Loads { h, selected: vec![false; h.edge_count()], cover: vec![0; h.vertex_count()] }
    }

    fn set(&mut self, e: usize, on: bool) {
        if self.selected[e] == on {
            return;
        }
        self.selected[e] = on;
        for &v in &self.h.edges()[e].verts {
            if on {
                self.cover[v as usize] += 1;
            } else {
                self.cover[v as usize] -= 1;
            }
        }
    }

    fn hitting(&self) -> bool {
        self.cover.iter().all(|&c| c >= 1)
    }

    fn max_load(&self) -> usize {
        self.cover.iter().copied().max().unwrap_or(0)
    }

    fn selected_indices(&self) -> Vec<usize> {
        (0..self.selected.len()).filter(|&e| self.selected[e]).collect()
    }

    /// Removing `e` keeps every one of its vertices covered.
    fn removable(&self, e: usize) -> bool {
        self.h.edges()[e].verts.iter().all(|&v| self.cover[v as usize] >= 2)
    }
}

/// A subset of edges covering every vertex at least once and at most `t`
/// times, with `t` minimized best-effort. Parallel copies never help (a
/// duplicate adds load without adding coverage), so only stored edge entries
/// are considered, each at most once.
///
/// With at most [`EXHAUSTIVE_EDGE_LIMIT`] stored edges all subsets are tried
/// and the result is optimal; a failed exhaustive run proves no hitting edge
/// set exists. Otherwise a deterministic greedy cover is pruned and repaired
/// by local search under `budget`, restarting with shuffled tie-breaks.
pub fn find_shallow_hitting_edge_set(
    h: &Hypergraph,
    budget: &SearchBudget,
) -> Result<EdgeSetSearch> {
    require_uniform_regular(h)?;
    let inc = h.incidence();
    if let Some(v) = inc.iter().position(|edges| edges.is_empty()) {
        return Err(Error::NoHittingEdgeSet(format!("vertex {v} has no incident edge")));
    }
    if h.edge_count() <= EXHAUSTIVE_EDGE_LIMIT {
        return exhaustive_edge_set(h);
    }

    let target = shallowness_target(h.edges()[0].verts.len());
    let mut best: Option<(usize, Vec<usize>)> = None;
    for restart in 0..budget.restarts.max(1) {
        let mut rng = budget.rng(restart);
        let mut loads = Loads::new(h);
        greedy_cover(&mut loads, restart > 0, &mut rng);
        prune(&mut loads);
        local_search(&mut loads, budget.iterations, &mut rng);
        debug_assert!(loads.hitting());
        let achieved = loads.max_load();
        if best.as_ref().is_none_or(|(t, _)| achieved < *t) {
            best = Some((achieved, loads.selected_indices()));
        }
        if best.as_ref().is_some_and(|(t, _)| *t <= target) {
            break;
        }
    }
    let (achieved, selected) = best.expect("at least one restart ran");
    Ok(EdgeSetSearch { selected, achieved, exhaustive: false })
}

fn exhaustive_edge_set(h: &Hypergraph) -> Result<EdgeSetSearch> {
    let e = h.edge_count();
    let mut best: Option<(usize, u32)> = None;
    for mask in 1u32..(1u32 << e) {
        let mut cover = vec![0usize; h.vertex_count()];
        for i in 0..e {
            if mask & (1 << i) != 0 {
                for &v in &h.edges()[i].verts {
                    cover[v as usize] += 1;
                }
            }
        }
        if cover.iter().any(|&c| c == 0) {
            continue;
        }
        let t = cover.into_iter().max().unwrap_or(0);
        if best.is_none_or(|(bt, _)| t < bt) {
            best = Some((t, mask));
            if t == 1 {
                break;
            }
        }
    }
    let (achieved, mask) = best.ok_or_else(|| {
        Error::NoHittingEdgeSet("exhausted all edge subsets without covering".into())
    })?;
    let selected = (0..e).filter(|&i| mask & (1 << i) != 0).collect();
    Ok(EdgeSetSearch { selected, achieved, exhaustive: true })
}

fn greedy_cover(loads: &mut Loads, shuffle_ties: bool, rng: &mut ChaCha8Rng) {
    let h = loads.h;
    let mut uncovered: usize = h.vertex_count();
    while uncovered > 0 {
        let mut best_gain = 0usize;
        let mut best_edge = usize::MAX;
        let mut ties = 0usize;
        for e in 0..h.edge_count() {
            if loads.selected[e] {
                continue;
            }
            let gain =
                h.edges()[e].verts.iter().filter(|&&v| loads.cover[v as usize] == 0).count();
            if gain > best_gain {
                best_gain = gain;
                best_edge = e;
                ties = 1;
            } else if gain == best_gain && gain > 0 {
                ties += 1;
                // Reservoir choice keeps each tied edge equally likely while
                // restart 0 sticks to the lowest index.
                if shuffle_ties && rng.gen_range(0..ties) == 0 {
                    best_edge = e;
                }
            }
        }
        debug_assert!(best_gain > 0, "cover stalled with {uncovered} vertices uncovered");
        loads.set(best_edge, true);
        uncovered -= best_gain;
    }
}

/// Drops every edge whose removal keeps the cover intact, deepest-loaded
/// edges first.
fn prune(loads: &mut Loads) {
    let mut order = loads.selected_indices();
    order.sort_by_key(|&e| {
        std::cmp::Reverse(
            loads.h.edges()[e].verts.iter().map(|&v| loads.cover[v as usize]).max().unwrap_or(0),
        )
    });
    for e in order {
        if loads.removable(e) {
            loads.set(e, false);
        }
    }
}

fn local_search(loads: &mut Loads, iterations: usize, rng: &mut ChaCha8Rng) {
    let h = loads.h;
    let inc = h.incidence();
    for _ in 0..iterations {
        let t = loads.max_load();
        if t <= 1 {
            break;
        }
        let deep: Vec<usize> =
            (0..h.vertex_count()).filter(|&v| loads.cover[v] == t).collect();
        let &v = deep.choose(rng).expect("max load is attained");
        let mut at_v: Vec<usize> =
            inc[v].iter().map(|&(e, _)| e).filter(|&e| loads.selected[e]).collect();
        at_v.shuffle(rng);
        let mut moved = false;
        for e in at_v {
            if loads.removable(e) {
                loads.set(e, false);
                moved = true;
                break;
            }
            // Swap: replace e by an edge avoiding v that re-covers whatever
            // only e covered, without exceeding the current max elsewhere.
            let lonely: Vec<u32> = h.edges()[e]
                .verts
                .iter()
                .copied()
                .filter(|&u| loads.cover[u as usize] == 1)
                .collect();
            if lonely.is_empty() {
                continue;
            }
            let mut candidates: Vec<usize> = inc[lonely[0] as usize]
                .iter()
                .map(|&(f, _)| f)
                .filter(|&f| !loads.selected[f] && f != e)
                .collect();
            candidates.shuffle(rng);
            for f in candidates {
                let fv = &h.edges()[f].verts;
                if fv.contains(&(v as u32)) {
                    continue;
                }
                if !lonely.iter().all(|u| fv.contains(u)) {
                    continue;
                }
                if fv.iter().any(|&u| loads.cover[u as usize] + 1 > t) {
                    continue;
                }
                loads.set(e, false);
                loads.set(f, true);
                moved = true;
                break;
            }
            if moved {
                break;
            }
        }
        if !moved {
            break;
        }
    }
}

/// Outcome of [`polychromatic_edge_coloring`]: colors are per edge
/// *instance* (parallel copies may differ), `1..=k`, aligned with instance
/// order (edge entries flattened by multiplicity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum EdgeColoringOutcome {
    Colored { colors: Vec<u32>, exhaustive: bool },
    /// Exhaustive enumeration tried every assignment; none works. This is a
    /// proof of infeasibility.
    CertifiedInfeasible { assignments_checked: u64 },
    /// Heuristic search gave up; not a disproof. Deficiency counts missing
    /// (vertex, color) incidences.
    Failed { best_deficiency: usize },
}

/// k^instances if it is at most 2^cap_log2.
pub(crate) fn assignments_within(k: usize, instances: usize, cap_log2: u32) -> Option<u64> {
    let cap: u128 = 1u128 << cap_log2;
    let mut total: u128 = 1;
    for _ in 0..instances {
        total = total.checked_mul(k as u128)?;
        if total > cap {
            return None;
        }
    }
    Some(total as u64)
}

/// Vertex lists per edge instance (edge entries flattened by multiplicity).
fn instance_verts(h: &Hypergraph) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(h.instance_count());
    for e in h.edges() {
        for _ in 0..e.mult {
            out.push(e.verts.clone());
        }
    }
    out
}

/// Incremental deficiency bookkeeping: `count[v*k + c-1]` incident instances
/// of color c at v; deficiency = number of zero (v, c) cells.
struct ColorState {
    k: usize,
    verts: Vec<Vec<u32>>,
    count: Vec<u32>,
    colors: Vec<u32>,
    deficiency: usize,
}

impl ColorState {
    fn new(h: &Hypergraph, k: usize, colors: Vec<u32>) -> Self {
        let verts = instance_verts(h);
        let mut state = ColorState {
            k,
            verts,
            count: vec![0; h.vertex_count() * k],
            colors: vec![0; colors.len()],
            deficiency: h.vertex_count() * k,
        };
        for (i, &c) in colors.iter().enumerate() {
            state.colors[i] = c;
            for vi in 0..state.verts[i].len() {
                let v = state.verts[i][vi] as usize;
                let cell = v * k + (c - 1) as usize;
                if state.count[cell] == 0 {
                    state.deficiency -= 1;
                }
                state.count[cell] += 1;
            }
        }
        state
    }

    fn recolor(&mut self, i: usize, c_new: u32) {
        let c_old = self.colors[i];
        if c_old == c_new {
            return;
        }
        self.colors[i] = c_new;
        for vi in 0..self.verts[i].len() {
            let v = self.verts[i][vi] as usize;
            let old_cell = v * self.k + (c_old - 1) as usize;
            self.count[old_cell] -= 1;
            if self.count[old_cell] == 0 {
                self.deficiency += 1;
            }
            let new_cell = v * self.k + (c_new - 1) as usize;
            if self.count[new_cell] == 0 {
                self.deficiency -= 1;
            }
            self.count[new_cell] += 1;
        }
    }

    fn eval(&mut self, i: usize, c_new: u32) -> usize {
        let c_old = self.colors[i];
        self.recolor(i, c_new);
        let d = self.deficiency;
        self.recolor(i, c_old);
        d
    }
}

/// A coloring of edge instances with `1..=k` such that every vertex is
/// incident to every color, or a certified/uncertified failure. Exhaustive
/// when k^instances ≤ 2^[`EXHAUSTIVE_COLORING_LOG2`]; the shared enumerator
/// is also used by the lower-bound certifiers with a larger cap.
pub fn polychromatic_edge_coloring(
    h: &Hypergraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<EdgeColoringOutcome> {
    require_uniform_regular(h)?;
    if k == 0 {
        return Err(Error::InvalidParameter("color count k must be positive".into()));
    }
    let instances = h.instance_count();
    if let Some(space) = assignments_within(k, instances, EXHAUSTIVE_COLORING_LOG2) {
        return Ok(match exhaustive_edge_coloring(h, k) {
            Some(colors) => EdgeColoringOutcome::Colored { colors, exhaustive: true },
            None => EdgeColoringOutcome::CertifiedInfeasible { assignments_checked: space },
        });
    }

    let mut best_deficiency = usize::MAX;
    for restart in 0..budget.restarts.max(1) {
        let mut rng = budget.rng(restart);
        let colors: Vec<u32> = if restart == 0 {
            // Round-robin start: balanced counts, often near-polychromatic.
            (0..instances).map(|i| (i % k) as u32 + 1).collect()
        } else {
            (0..instances).map(|_| rng.gen_range(1..=k as u32)).collect()
        };
        let mut state = ColorState::new(h, k, colors);
        let mut order: Vec<usize> = (0..instances).collect();
        for _ in 0..budget.iterations {
            if state.deficiency == 0 {
                break;
            }
            // Recolor the instance whose change lowers deficiency the most;
            // equal-deficiency moves are taken too (plateau walks), bounded
            // by the iteration budget.
            let mut best_move: Option<(usize, u32, usize)> = None;
            order.shuffle(&mut rng);
            'sweep: for &i in &order {
                let old = state.colors[i];
                for c in 1..=k as u32 {
                    if c == old {
                        continue;
                    }
                    let d = state.eval(i, c);
                    if best_move.is_none_or(|(_, _, bd)| d < bd) {
                        best_move = Some((i, c, d));
                        if d + 1 < state.deficiency {
                            break 'sweep;
                        }
                    }
                }
            }
            match best_move {
                Some((i, c, d)) if d <= state.deficiency => state.recolor(i, c),
                _ => break,
            }
        }
        if state.deficiency == 0 {
            return Ok(EdgeColoringOutcome::Colored { colors: state.colors, exhaustive: false });
        }
        best_deficiency = best_deficiency.min(state.deficiency);
    }
    Ok(EdgeColoringOutcome::Failed { best_deficiency })
}

/// Tries every assignment of `1..=k` to edge instances in odometer order and
/// returns the first polychromatic one. `None` means none exists. The caller
/// bounds the search space; colors are capped at 63 for the bitmask check.
pub(crate) fn exhaustive_edge_coloring(h: &Hypergraph, k: usize) -> Option<Vec<u32>> {
    assert!(k >= 1 && k < 64, "exhaustive coloring supports 1..=63 colors");
    let verts = instance_verts(h);
    let instances = verts.len();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); h.vertex_count()];
    for (i, vs) in verts.iter().enumerate() {
        for &v in vs {
            inc[v as usize].push(i);
        }
    }
    let full: u64 = (1u64 << k) - 1;
    let mut colors = vec![1u32; instances];
    loop {
        let polychromatic = inc.iter().all(|list| {
            let mut mask = 0u64;
            for &i in list {
                mask |= 1 << (colors[i] - 1);
            }
            mask == full
        });
        if polychromatic {
            return Some(colors);
        }
        // Increment the base-k odometer, least significant digit last.
        let mut pos = instances;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if colors[pos] < k as u32 {
                colors[pos] += 1;
                break;
            }
            colors[pos] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[u32]]) -> Hypergraph {
        let mut g = Hypergraph::new(n);
        for e in edges {
            g.add_edge(e.to_vec(), 1).unwrap();
        }
        g
    }

    #[test]
    fn perfect_matching_is_found_exactly() {
        // Two disjoint edges: the only 1-shallow hitting edge set is both.
        let g = h(4, &[&[0, 1], &[2, 3]]);
        let out = find_shallow_hitting_edge_set(&g, &SearchBudget::default()).unwrap();
        assert_eq!(out.selected, vec![0, 1]);
        assert_eq!(out.achieved, 1);
        assert!(out.exhaustive);
    }

    #[test]
    fn isolated_vertex_is_a_hard_error() {
        let g = h(3, &[&[0, 1]]);
        // vertex 2 uncovered, but also non-regular: regularity is checked first
        assert!(matches!(
            find_shallow_hitting_edge_set(&g, &SearchBudget::default()),
            Err(Error::NotUniformRegular { .. })
        ));
    }

    #[test]
    fn heuristic_path_returns_verified_hitting_sets() {
        // Cyclic 3-uniform 3-regular instance on 24 vertices: 24 edges, above
        // the exhaustive limit.
        let n = 24u32;
        let mut g = Hypergraph::new(n as usize);
        for i in 0..n {
            g.add_edge(vec![i, (i + 1) % n, (i + 2) % n], 1).unwrap();
        }
        let out = find_shallow_hitting_edge_set(&g, &SearchBudget::default()).unwrap();
        assert!(!out.exhaustive);
        let mut cover = vec![0usize; n as usize];
        for &e in &out.selected {
            for &v in &g.edges()[e].verts {
                cover[v as usize] += 1;
            }
        }
        assert!(cover.iter().all(|&c| c >= 1));
        assert_eq!(cover.into_iter().max().unwrap(), out.achieved);
        assert!(out.achieved <= shallowness_target(3));
    }

    #[test]
    fn search_is_deterministic() {
        let n = 30u32;
        let mut g = Hypergraph::new(n as usize);
        for i in 0..n {
            g.add_edge(vec![i, (i + 5) % n, (i + 11) % n, (i + 17) % n], 1).unwrap();
        }
        let budget = SearchBudget::default();
        let a = find_shallow_hitting_edge_set(&g, &budget).unwrap();
        let b = find_shallow_hitting_edge_set(&g, &budget).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_color_needs_no_search() {
        let g = h(4, &[&[0, 1], &[2, 3]]);
        match polychromatic_edge_coloring(&g, 1, &SearchBudget::default()).unwrap() {
            EdgeColoringOutcome::Colored { colors, exhaustive } => {
                assert_eq!(colors, vec![1, 1]);
                assert!(exhaustive);
            }
            other => panic!("expected coloring, got {other:?}"),
        }
    }

    #[test]
    fn parallel_copies_can_take_distinct_colors() {
        let mut g = Hypergraph::new(2);
        g.add_edge(vec![0, 1], 2).unwrap();
        match polychromatic_edge_coloring(&g, 2, &SearchBudget::default()).unwrap() {
            EdgeColoringOutcome::Colored { colors, .. } => {
                let mut sorted = colors.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, vec![1, 2]);
            }
            other => panic!("expected coloring, got {other:?}"),
        }
    }

    #[test]
    fn infeasibility_is_certified_on_tiny_instances() {
        // One edge instance, two colors: a degree-1 vertex sees one color, so
        // both of the 2^1 assignments fail and infeasibility is certified.
        let g = h(2, &[&[0, 1]]);
        match polychromatic_edge_coloring(&g, 2, &SearchBudget::default()).unwrap() {
            EdgeColoringOutcome::CertifiedInfeasible { assignments_checked } => {
                assert_eq!(assignments_checked, 2);
            }
            other => panic!("expected certified infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn assignment_counter_caps() {
        assert_eq!(assignments_within(2, 10, 20), Some(1024));
        assert_eq!(assignments_within(2, 21, 20), None);
        assert_eq!(assignments_within(3, 40, 24), None);
        assert_eq!(assignments_within(1, 1000, 20), Some(1));
    }
}
