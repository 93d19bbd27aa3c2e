//! The semi-online bottomless sweep.
//!
//! Points are inserted by increasing y. The x-axis is partitioned into
//! intervals; each interval carries a partial assignment of `w` classes in
//! which every class occurs exactly once among its inserted points. When an
//! interval reaches 2w inserted points it splits at the median into two
//! w-point halves, and each half completes its class set: the classes missing
//! in a half (they went to the other half) are assigned, in ascending class
//! order, to the half's unclassified points in ascending y order. The counts
//! always match exactly, so both halves leave the split fully classified.
//!
//! Class 0 doubles as the "selected" class of the shallow-hitting-set view:
//! with w = floor((m+3)/4), the class-0 points hit every bottomless edge of
//! size m between 1 and 10 times. The same sweep with w = k is the backbone
//! of the polychromatic k-coloring. Decisions depend only on already-inserted
//! points, so label prefixes agree with runs on input prefixes (semi-online).

use crate::error::{Error, Result};
use crate::geometry::PointSet;

#[derive(Debug, Clone)]
pub(crate) struct ClassSweepOutcome {
    /// Class per point id, `None` for points never classified by a split.
    pub labels: Vec<Option<u32>>,
    /// `(step, id, class)` in assignment order; `step` is the number of
    /// inserted points at assignment time. Initial seeding happens at step w.
    pub events: Vec<(usize, u32, u32)>,
    /// Member lists (sorted by x-rank) of the final intervals, left to right.
    pub final_intervals: Vec<Vec<u32>>,
    /// For every split: the members of the parent interval just before the
    /// triggering insertion. Together with the final intervals these dominate
    /// every intermediate interval state, because members only accumulate
    /// between splits.
    pub split_snapshots: Vec<Vec<u32>>,
    pub splits: usize,
}

struct Interval {
    lo: usize,
    hi: usize,
    /// Inserted points of this interval, sorted by x-rank.
    members: Vec<u32>,
}

pub(crate) struct ClassSweep<'a> {
    ps: &'a PointSet,
    w: usize,
    instrument: bool,
    xrank: Vec<usize>,
    by_y: Vec<u32>,
    yidx: Vec<usize>,
    labels: Vec<Option<u32>>,
    intervals: Vec<Interval>,
    events: Vec<(usize, u32, u32)>,
    split_snapshots: Vec<Vec<u32>>,
    splits: usize,
}

impl<'a> ClassSweep<'a> {
    pub fn new(ps: &'a PointSet, w: usize, instrument: bool) -> Result<Self> {
        if ps.dim() != 2 {
            return Err(Error::DimensionMismatch { family: "bottomless", dim: ps.dim() });
        }
        if w == 0 {
            return Err(Error::InvalidParameter("class count w must be positive".into()));
        }
        if ps.len() < w {
            return Err(Error::InvalidParameter(format!(
                "sweep needs at least w = {w} points, got {}",
                ps.len()
            )));
        }
        let by_y = ps.axis_order(1);
        let mut yidx = vec![0usize; ps.len()];
        for (i, &id) in by_y.iter().enumerate() {
            yidx[id as usize] = i;
        }
        Ok(ClassSweep {
            xrank: ps.axis_ranks(0),
            by_y,
            yidx,
            labels: vec![None; ps.len()],
            intervals: Vec::new(),
            events: Vec::new(),
            split_snapshots: Vec::new(),
            splits: 0,
            ps,
            w,
            instrument,
        })
    }

    pub fn run(mut self) -> Result<ClassSweepOutcome> {
        let n = self.ps.len();
        let w = self.w;
        // Seed: the w lowest points form one interval spanning everything,
        // classes assigned in ascending y order.
        let mut members: Vec<u32> = self.by_y[..w].to_vec();
        members.sort_by_key(|&id| self.xrank[id as usize]);
        for (c, &id) in self.by_y[..w].iter().enumerate() {
            self.labels[id as usize] = Some(c as u32);
            self.events.push((w, id, c as u32));
        }
        self.intervals.push(Interval { lo: 0, hi: n, members });
        self.check_invariants(w)?;
        for step in w + 1..=n {
            let p = self.by_y[step - 1];
            self.insert(step, p)?;
            self.check_invariants(step)?;
        }
        Ok(ClassSweepOutcome {
            labels: self.labels,
            events: self.events,
            final_intervals: self.intervals.into_iter().map(|iv| iv.members).collect(),
            split_snapshots: self.split_snapshots,
            splits: self.splits,
        })
    }

    fn interval_index(&self, xr: usize) -> usize {
        debug_assert!(!self.intervals.is_empty());
        self.intervals.partition_point(|iv| iv.hi <= xr)
    }

    fn insert(&mut self, step: usize, p: u32) -> Result<()> {
        let w = self.w;
        let xr = self.xrank[p as usize];
        let idx = self.interval_index(xr);
        let iv = &mut self.intervals[idx];
        let pos = iv.members.partition_point(|&q| self.xrank[q as usize] < xr);
        iv.members.insert(pos, p);
        if iv.members.len() < 2 * w {
            return Ok(());
        }
        // Split at the median member: left half takes the w smallest x-ranks.
        self.splits += 1;
        let iv = self.intervals.remove(idx);
        let mut snapshot: Vec<u32> = iv.members.iter().copied().filter(|&q| q != p).collect();
        snapshot.sort_unstable();
        self.split_snapshots.push(snapshot);
        let cut = self.xrank[iv.members[w] as usize];
        let left = Interval { lo: iv.lo, hi: cut, members: iv.members[..w].to_vec() };
        let right = Interval { lo: cut, hi: iv.hi, members: iv.members[w..].to_vec() };
        for half in [&left, &right] {
            self.complete_half(step, half)?;
        }
        self.intervals.insert(idx, right);
        self.intervals.insert(idx, left);
        Ok(())
    }

    /// Assigns the half's missing classes (ascending) to its unclassified
    /// members (ascending y). Exact count match is structural: the parent had
    /// each class once among 2w members, so a half of w members with c classes
    /// present has exactly w - c unclassified points and w - c absent classes.
    fn complete_half(&mut self, step: usize, half: &Interval) -> Result<()> {
        let w = self.w;
        let mut present = vec![false; w];
        let mut unclassified: Vec<u32> = Vec::new();
        for &q in &half.members {
            match self.labels[q as usize] {
                Some(c) => present[c as usize] = true,
                None => unclassified.push(q),
            }
        }
        unclassified.sort_by_key(|&q| self.yidx[q as usize]);
        let missing: Vec<u32> =
            (0..w as u32).filter(|&c| !present[c as usize]).collect();
        if missing.len() != unclassified.len() {
            return Err(Error::Structure(format!(
                "split half has {} unclassified points but {} missing classes",
                unclassified.len(),
                missing.len()
            )));
        }
        for (&c, &q) in missing.iter().zip(&unclassified) {
            self.labels[q as usize] = Some(c);
            self.events.push((step, q, c));
        }
        Ok(())
    }

    /// Sweep invariants, checked after every insertion when instrumented:
    /// the intervals tile the x-rank axis; every interval holds between w and
    /// 2w-1 inserted points; among them every class occurs exactly once.
    fn check_invariants(&self, step: usize) -> Result<()> {
        if !self.instrument {
            return Ok(());
        }
        let w = self.w;
        let mut expected_lo = 0usize;
        for iv in &self.intervals {
            if iv.lo != expected_lo || iv.hi <= iv.lo {
                return Err(Error::Structure(format!(
                    "step {step}: intervals do not tile the axis at cut {expected_lo}"
                )));
            }
            expected_lo = iv.hi;
            if iv.members.len() < w || iv.members.len() > 2 * w - 1 {
                return Err(Error::Structure(format!(
                    "step {step}: interval [{}, {}) holds {} points, outside [{w}, {}]",
                    iv.lo,
                    iv.hi,
                    iv.members.len(),
                    2 * w - 1
                )));
            }
            let mut counts = vec![0usize; w];
            for &q in &iv.members {
                if let Some(c) = self.labels[q as usize] {
                    counts[c as usize] += 1;
                }
                let xr = self.xrank[q as usize];
                if xr < iv.lo || xr >= iv.hi {
                    return Err(Error::Structure(format!(
                        "step {step}: member {q} outside its interval"
                    )));
                }
            }
            if counts.iter().any(|&c| c != 1) {
                return Err(Error::Structure(format!(
                    "step {step}: interval [{}, {}) class counts {counts:?}, expected all 1",
                    iv.lo, iv.hi
                )));
            }
        }
        if expected_lo != self.ps.len() {
            return Err(Error::Structure(format!(
                "step {step}: intervals end at {expected_lo}, expected {}",
                self.ps.len()
            )));
        }
        Ok(())
    }
}

/// Runs the sweep and additionally, when instrumented, asserts the per-class
/// depth bound: no interval snapshot (parents at split time, final intervals)
/// ever holds more than two points of any single class under the final
/// labels.
pub(crate) fn class_sweep(
    ps: &PointSet,
    w: usize,
    instrument: bool,
) -> Result<ClassSweepOutcome> {
    let outcome = ClassSweep::new(ps, w, instrument)?.run()?;
    if instrument {
        for snap in outcome.split_snapshots.iter().chain(&outcome.final_intervals) {
            let mut counts = vec![0usize; w];
            for &q in snap {
                if let Some(c) = outcome.labels[q as usize] {
                    counts[c as usize] += 1;
                }
            }
            if let Some((c, &cnt)) = counts.iter().enumerate().find(|&(_, &cnt)| cnt > 2) {
                return Err(Error::Structure(format!(
                    "class {c} appears {cnt} times inside one interval snapshot"
                )));
            }
        }
    }
    Ok(outcome)
}
