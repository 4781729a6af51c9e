//! Partial permutations with incrementally maintained committed costs.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use thiserror::Error;

use crate::model::{Instance, JobId};

const NONE: u32 = u32::MAX;

/// Constraint indexes shared by all nodes of one search.
#[derive(Clone, Debug)]
pub struct SearchContext {
    k: usize,
    weights: [u64; 3],
    partner: Vec<u32>,
    /// Hard atomic successors per job.
    succs: Vec<Vec<u32>>,
    pred_count: Vec<u32>,
    /// For each job `x`, the jobs `i` with a soft constraint `i < x`.
    soft_preds: Vec<Vec<u32>>,
    disj: Vec<[u32; 4]>,
    /// Disjunctions with the job as the `after` side of a disjunct.
    disj_by_after: Vec<Vec<u32>>,
    /// Constrained ends of direct successor constraints.
    ds: Vec<bool>,
}

impl SearchContext {
    pub fn new(inst: &Instance) -> Self {
        let k = inst.k();
        let kk = k as u64;
        let mut ctx = SearchContext {
            k,
            weights: [
                kk.saturating_mul(kk).saturating_mul(kk),
                kk.saturating_mul(kk),
                kk,
            ],
            partner: inst
                .jobs()
                .map(|j| inst.partner_of(j).map_or(NONE, |p| p.index() as u32))
                .collect(),
            succs: vec![Vec::new(); k],
            pred_count: vec![0; k],
            soft_preds: vec![Vec::new(); k],
            disj: Vec::with_capacity(inst.disjunctive().len()),
            disj_by_after: vec![Vec::new(); k],
            ds: vec![false; k],
        };
        for c in inst.atomic() {
            ctx.succs[c.before.index()].push(c.after.index() as u32);
            ctx.pred_count[c.after.index()] += 1;
        }
        for c in inst.soft_atomic() {
            ctx.soft_preds[c.after.index()].push(c.before.index() as u32);
        }
        for (idx, d) in inst.disjunctive().iter().enumerate() {
            let t = d.as_tuple().map(|j| (j - 1) as u32);
            ctx.disj.push(t);
            ctx.disj_by_after[t[1] as usize].push(idx as u32);
            if t[3] != t[1] {
                ctx.disj_by_after[t[3] as usize].push(idx as u32);
            }
        }
        for &i in inst.direct_successors() {
            ctx.ds[i.index()] = true;
        }
        ctx
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root(&self) -> SearchNode<'_> {
        SearchNode {
            ctx: self,
            pos: vec![0; self.k],
            prefix: Vec::with_capacity(self.k),
            pending: self.pred_count.clone(),
            open: Vec::new(),
            closed_interrupted: 0,
            closed_max_gap: 0,
            m_max: 0,
            n_committed: 0,
            frames: Vec::with_capacity(self.k),
        }
    }

    /// Replays `prefix` from the root, checking each step is a candidate.
    pub fn node_from_prefix(&self, prefix: &[JobId]) -> Result<SearchNode<'_>, InconsistentPrefix> {
        let mut node = self.root();
        for (step, &job) in prefix.iter().enumerate() {
            if job.index() >= self.k || !node.candidates().contains(&job) {
                return Err(InconsistentPrefix { step, job });
            }
            node.push(job.index() as u32);
        }
        Ok(node)
    }

    #[inline]
    fn weigh(&self, s: u64, m: u64, l: u64, n: u64) -> u64 {
        self.weights[0]
            .saturating_mul(s)
            .saturating_add(self.weights[1].saturating_mul(m))
            .saturating_add(self.weights[2].saturating_mul(l))
            .saturating_add(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("job {job} cannot be placed at step {step} of the prefix")]
pub struct InconsistentPrefix {
    pub step: usize,
    pub job: JobId,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    closed_interrupted: u32,
    closed_max_gap: u32,
    m_max: u32,
    n_committed: u32,
    /// Index in `open` of the entry removed by this placement.
    closed_at: u32,
}

/// Committed cost components of a partial permutation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Committed {
    pub s: u64,
    pub m: u64,
    pub l: u64,
    pub n: u64,
}

/// A consistent partial permutation: no hard constraint is falsified by the
/// jobs placed so far.
#[derive(Clone, Debug)]
pub struct SearchNode<'c> {
    ctx: &'c SearchContext,
    /// 1-based position per job, 0 while unplaced.
    pos: Vec<u32>,
    prefix: Vec<u32>,
    /// Unplaced hard predecessors per job.
    pending: Vec<u32>,
    /// First-placed ends of open pairs, in placement order.
    open: Vec<u32>,
    closed_interrupted: u32,
    /// Largest `gap - 1` over closed pairs.
    closed_max_gap: u32,
    m_max: u32,
    n_committed: u32,
    frames: Vec<Frame>,
}

impl<'c> SearchNode<'c> {
    #[inline]
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.prefix.len() == self.ctx.k
    }

    pub fn prefix(&self) -> Vec<JobId> {
        self.prefix
            .iter()
            .map(|&j| JobId::from_index(j as usize))
            .collect()
    }

    pub(crate) fn prefix_raw(&self) -> &[u32] {
        &self.prefix
    }

    /// Places a job at the next position. The caller guarantees that the
    /// job is one of [`SearchNode::candidates`].
    pub(crate) fn push(&mut self, x: u32) {
        let xi = x as usize;
        let p = self.prefix.len() as u32 + 1;
        let mut frame = Frame {
            closed_interrupted: self.closed_interrupted,
            closed_max_gap: self.closed_max_gap,
            m_max: self.m_max,
            n_committed: self.n_committed,
            closed_at: NONE,
        };
        self.pos[xi] = p;
        self.prefix.push(x);
        for &s in &self.ctx.succs[xi] {
            self.pending[s as usize] -= 1;
        }
        for &i in &self.ctx.soft_preds[xi] {
            if self.pos[i as usize] == 0 {
                self.n_committed += 1;
            }
        }
        let y = self.ctx.partner[xi];
        if y != NONE {
            let py = self.pos[y as usize];
            if py == 0 {
                // Opening a pair: the job sits inside every other open pair.
                self.m_max = self.m_max.max(self.open.len() as u32);
                self.open.push(x);
            } else {
                let at = self
                    .open
                    .iter()
                    .position(|&o| o == y)
                    .expect("placed partner is open");
                self.open.remove(at);
                frame.closed_at = at as u32;
                let gap = p - py;
                if gap > 1 {
                    self.closed_interrupted += 1;
                    self.closed_max_gap = self.closed_max_gap.max(gap - 1);
                }
                self.m_max = self.m_max.max(self.open.len() as u32);
            }
        } else {
            self.m_max = self.m_max.max(self.open.len() as u32);
        }
        self.frames.push(frame);
    }

    pub(crate) fn pop(&mut self) {
        let frame = self.frames.pop().expect("pop below root");
        let x = self.prefix.pop().expect("non-empty prefix");
        let xi = x as usize;
        if frame.closed_at != NONE {
            let y = self.ctx.partner[xi];
            self.open.insert(frame.closed_at as usize, y);
        } else if self.ctx.partner[xi] != NONE {
            let last = self.open.pop();
            debug_assert_eq!(last, Some(x));
        }
        for &s in &self.ctx.succs[xi] {
            self.pending[s as usize] += 1;
        }
        self.pos[xi] = 0;
        self.closed_interrupted = frame.closed_interrupted;
        self.closed_max_gap = frame.closed_max_gap;
        self.m_max = frame.m_max;
        self.n_committed = frame.n_committed;
    }

    /// Cost components that every completion of this prefix must pay.
    ///
    /// An open pair whose placed end is not the last job can no longer be
    /// closed back to back, and its partner lands after position `t`.
    pub fn committed(&self) -> Committed {
        let t = self.prefix.len() as u32;
        let mut open_interrupted = self.open.len() as u32;
        if let Some(&last) = self.open.last() {
            if self.pos[last as usize] == t {
                open_interrupted -= 1;
            }
        }
        let open_gap = self
            .open
            .first()
            .map_or(0, |&o| t - self.pos[o as usize]);
        Committed {
            s: (self.closed_interrupted + open_interrupted) as u64,
            m: self.m_max as u64,
            l: self.closed_max_gap.max(open_gap) as u64,
            n: self.n_committed as u64,
        }
    }

    /// `k³S + k²M + kL + N` of the committed components. Never exceeds the
    /// objective of a valid completion; equals it on complete nodes.
    pub fn lower_bound(&self) -> u64 {
        let c = self.committed();
        self.ctx.weigh(c.s, c.m, c.l, c.n)
    }

    /// Jobs that may be placed next, best first.
    ///
    /// A job is legal when all its hard predecessors are placed and placing
    /// it leaves every disjunction with a live disjunct. A just-placed end
    /// with a direct successor constraint and an unplaced partner forces
    /// that partner.
    pub fn candidates(&self) -> Vec<JobId> {
        self.candidates_raw()
            .into_iter()
            .map(|j| JobId::from_index(j as usize))
            .collect()
    }

    pub(crate) fn candidates_raw(&self) -> Vec<u32> {
        if self.is_complete() {
            return Vec::new();
        }
        if let Some(&last) = self.prefix.last() {
            let y = self.ctx.partner[last as usize];
            if self.ctx.ds[last as usize] && self.pos[y as usize] == 0 {
                return if self.is_legal(y) { vec![y] } else { Vec::new() };
            }
        }
        let mut legal: Vec<u32> = (0..self.ctx.k as u32)
            .filter(|&x| self.pos[x as usize] == 0 && self.is_legal(x))
            .collect();
        let first = self.open.last().and_then(|&o| {
            let y = self.ctx.partner[o as usize];
            legal.iter().position(|&c| c == y)
        });
        let head = first.map(|at| legal.remove(at));
        legal.sort_by_cached_key(|&x| (Reverse(self.unplaced_successors(x)), x));
        if let Some(y) = head {
            legal.insert(0, y);
        }
        legal
    }

    fn unplaced_successors(&self, x: u32) -> usize {
        self.ctx.succs[x as usize]
            .iter()
            .filter(|&&s| self.pos[s as usize] == 0)
            .count()
    }

    fn is_legal(&self, x: u32) -> bool {
        let xi = x as usize;
        if self.pending[xi] != 0 {
            return false;
        }
        let next = self.prefix.len() as u32 + 1;
        let at = |j: u32| if j == x { next } else { self.pos[j as usize] };
        // A disjunct a < b is dead once b is placed without a before it.
        let dead = |a: u32, b: u32| {
            let (pa, pb) = (at(a), at(b));
            pb != 0 && (pa == 0 || pa > pb)
        };
        for &d in &self.ctx.disj_by_after[xi] {
            let [a, b, c, e] = self.ctx.disj[d as usize];
            if dead(a, b) && dead(c, e) {
                return false;
            }
        }
        // Placing x would force its partner next; that partner must be ready.
        if self.ctx.ds[xi] {
            let y = self.ctx.partner[xi];
            if self.pos[y as usize] == 0 {
                let blocked_by_x = self.ctx.succs[xi].contains(&y) as u32;
                if self.pending[y as usize] != blocked_by_x {
                    return false;
                }
            }
        }
        true
    }
}
