//! Exhaustive design search and the random-scramble simulation.
//!
//! The searcher builds a design one part at a time. Part order is fixed by
//! requiring every new part to cover the smallest still-uncovered pair, and
//! with symmetry reduction enabled the first part is the identity layout
//! (the symmetric group on the host acts transitively on embedded copies).
//! Within a part the smallest uncovered pair `{u, v}` is pinned to one
//! representative of each orbit of directed grid edges; the remaining grid
//! symmetries fixing that edge are removed by keeping only the
//! lexicographically least image. An exhausted search with no solutions is
//! therefore a nonexistence certificate.

mod scramble;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Design, Layout, Target};

pub use scramble::{scramble_simulation, QuantileSummary, ScrambleStats, ARRANGEMENT_CAP};

/// Largest host supported by the fixed-width vertex sets.
pub const MAX_HOST: usize = 256;

const SPLIT_DEPTH: usize = 5;
const CHECK_INTERVAL: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The whole space was searched; fewer than `limit` solutions exist.
    Exhausted,
    /// `limit` solutions were found.
    Found,
    /// The budget ran out. Not a nonexistence claim.
    Timeout,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub host_n: usize,
    pub target: Target,
    pub symmetry_reduction: bool,
    pub status: SearchStatus,
    pub solutions: Vec<Design>,
    pub nodes_explored: u64,
    pub elapsed_secs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Search for decompositions of `K_n` into copies of `target`, with the
/// first-part symmetry reduction on and a single worker.
pub fn exhaustive_design_search(
    n: usize,
    target: Target,
    limit: usize,
    budget: Option<Duration>,
) -> Result<SearchOutcome> {
    let mut search = DesignSearch::new(n, target).limit(limit);
    if let Some(b) = budget {
        search = search.budget(b);
    }
    search.run()
}

#[derive(Clone, Debug)]
pub struct DesignSearch {
    host_n: usize,
    target: Target,
    limit: usize,
    budget: Option<Duration>,
    workers: usize,
    fix_first_part: bool,
}

impl DesignSearch {
    pub fn new(host_n: usize, target: Target) -> Self {
        Self {
            host_n,
            target,
            limit: 1,
            budget: None,
            workers: 1,
            fix_first_part: true,
        }
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Disables fixing the first part to the identity layout.
    pub fn symmetry_reduction(mut self, on: bool) -> Self {
        self.fix_first_part = on;
        self
    }

    pub fn run(&self) -> Result<SearchOutcome> {
        let start = Instant::now();
        let (n, target) = (self.host_n, self.target);
        if self.limit == 0 {
            return Err(Error::InvalidParameter("limit must be at least 1".into()));
        }
        if n > MAX_HOST {
            return Err(Error::InvalidParameter(format!(
                "host size {n} exceeds {MAX_HOST}"
            )));
        }
        if target.rows == 0 || target.cols == 0 {
            return Err(Error::InvalidParameter(
                "target dimensions must be positive".into(),
            ));
        }
        let mut outcome = SearchOutcome {
            host_n: n,
            target,
            symmetry_reduction: self.fix_first_part,
            status: SearchStatus::Exhausted,
            solutions: Vec::new(),
            nodes_explored: 0,
            elapsed_secs: 0.0,
            note: None,
        };
        let total = n * n.saturating_sub(1) / 2;
        let per = target.edge_count();
        if per == 0 || total % per != 0 || target.cell_count() > n {
            outcome.note = Some(format!(
                "no design possible: K_{n} has {total} edges, {target} has {per} edges on {} vertices",
                target.cell_count()
            ));
            outcome.elapsed_secs = start.elapsed().as_secs_f64();
            return Ok(outcome);
        }

        let plan = Plan::new(n, target, total / per);
        let mut root = State::new(&plan);
        if self.fix_first_part {
            let identity: Vec<u32> = (0..plan.cells as u32).collect();
            root.commit(&plan, &identity);
        }
        let tasks = root.tasks(&plan);
        let ctrl = Control {
            deadline: self.budget.map(|b| start + b),
            timed_out: AtomicBool::new(false),
            stop_after: AtomicUsize::new(usize::MAX),
        };
        let results: Mutex<Vec<Option<TaskResult>>> = Mutex::new(vec![None; tasks.len()]);
        let next = AtomicUsize::new(0);

        std::thread::scope(|s| {
            for _ in 0..self.workers.min(tasks.len()).max(1) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= tasks.len() || ctrl.timed_out.load(Ordering::Relaxed) {
                        break;
                    }
                    if i > ctrl.stop_after.load(Ordering::Relaxed) {
                        continue;
                    }
                    let mut worker = Worker::new(&plan, &ctrl, root.clone(), i, self.limit);
                    worker.run(&tasks[i]);
                    let result = TaskResult {
                        solutions: worker.solutions,
                        nodes: worker.nodes,
                        complete: !worker.aborted,
                    };
                    let mut guard = results.lock().unwrap();
                    guard[i] = Some(result);
                    let mut found = 0;
                    for (j, slot) in guard.iter().enumerate() {
                        match slot {
                            Some(r) if r.complete => {
                                found += r.solutions.len();
                                if found >= self.limit {
                                    ctrl.stop_after.fetch_min(j, Ordering::Relaxed);
                                    break;
                                }
                            }
                            _ => break,
                        }
                    }
                });
            }
        });

        let results = results.into_inner().unwrap();
        outcome.nodes_explored = results.iter().flatten().map(|r| r.nodes).sum();
        let stop_after = ctrl.stop_after.load(Ordering::Relaxed);
        let mut raw: Vec<Vec<Vec<u32>>> = Vec::new();
        if stop_after != usize::MAX {
            for r in results[..=stop_after].iter().flatten() {
                raw.extend(r.solutions.iter().cloned());
            }
            raw.truncate(self.limit);
            outcome.status = SearchStatus::Found;
        } else {
            for r in results.iter().flatten() {
                raw.extend(r.solutions.iter().cloned());
            }
            if raw.len() >= self.limit {
                raw.truncate(self.limit);
                outcome.status = SearchStatus::Found;
            } else if ctrl.timed_out.load(Ordering::Relaxed) {
                outcome.status = SearchStatus::Timeout;
            }
        }
        let mut solutions = raw
            .into_iter()
            .map(|parts| {
                let layouts = parts
                    .into_iter()
                    .map(|cells| Layout::new(target.rows, target.cols, cells, target.wrap()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Design::new(n, target, layouts))
            })
            .collect::<Result<Vec<_>>>()?;
        solutions.sort_by_cached_key(Design::canonical_key);
        outcome.solutions = solutions;
        outcome.elapsed_secs = start.elapsed().as_secs_f64();
        Ok(outcome)
    }
}

#[derive(Clone)]
struct TaskResult {
    solutions: Vec<Vec<Vec<u32>>>,
    nodes: u64,
    complete: bool,
}

struct Control {
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    stop_after: AtomicUsize,
}

/// Fixed-capacity vertex set.
#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Bits([u64; MAX_HOST / 64]);

impl Bits {
    fn full(n: usize) -> Self {
        let mut b = Bits::default();
        for v in 0..n {
            b.insert(v as u32);
        }
        b
    }

    fn insert(&mut self, v: u32) {
        self.0[(v / 64) as usize] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: u32) {
        self.0[(v / 64) as usize] &= !(1 << (v % 64));
    }

    fn and(mut self, other: &Bits) -> Self {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        self
    }

    fn and_not(mut self, other: &Bits) -> Self {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a &= !b;
        }
        self
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn first(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
    }

    fn iter(self) -> impl Iterator<Item = u32> {
        self.0.into_iter().enumerate().flat_map(|(i, mut w)| {
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + t)
            })
        })
    }
}

/// A representative directed grid edge `(a, b)` with the fill order it
/// induces and the nontrivial symmetries fixing it.
struct Anchor {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    stabilizer: Vec<Vec<usize>>,
}

/// Everything about the target that does not change during the search.
struct Plan {
    host_n: usize,
    cells: usize,
    parts: usize,
    pos_edges: Vec<(usize, usize)>,
    nbrs: Vec<Vec<usize>>,
    deg: Vec<u32>,
    /// Distinct position degrees, ascending, with their multiplicities.
    deg_classes: Vec<(u32, usize)>,
    min_deg: u32,
    max_deg: u32,
    anchors: Vec<Anchor>,
}

impl Plan {
    fn new(host_n: usize, target: Target, parts: usize) -> Self {
        let cells = target.cell_count();
        let pos_edges = target.position_edges();
        let nbrs = target.neighbors();
        let deg: Vec<u32> = nbrs.iter().map(|l| l.len() as u32).collect();
        let max_deg = deg.iter().copied().max().unwrap_or(0);
        let min_deg = if host_n > cells {
            0
        } else {
            deg.iter().copied().min().unwrap_or(0)
        };
        let group = target.automorphisms();

        let mut reps = std::collections::BTreeSet::new();
        for &(x, y) in &pos_edges {
            for (a, b) in [(x, y), (y, x)] {
                let rep = group.iter().map(|g| (g[a], g[b])).min().expect("identity");
                reps.insert(rep);
            }
        }
        let anchors = reps
            .into_iter()
            .map(|(a, b)| {
                let order = bfs_from(&nbrs, a, b);
                let mut rank = vec![0; cells];
                for (i, &p) in order.iter().enumerate() {
                    rank[p] = i;
                }
                let back = order
                    .iter()
                    .map(|&p| {
                        nbrs[p]
                            .iter()
                            .copied()
                            .filter(|&q| rank[q] < rank[p])
                            .collect()
                    })
                    .collect();
                let stabilizer = group
                    .iter()
                    .skip(1)
                    .filter(|g| g[a] == a && g[b] == b)
                    .cloned()
                    .collect();
                Anchor {
                    order,
                    back,
                    stabilizer,
                }
            })
            .collect();
        let mut deg_classes: Vec<(u32, usize)> = Vec::new();
        let mut sorted = deg.clone();
        sorted.sort_unstable();
        for d in sorted {
            match deg_classes.last_mut() {
                Some((e, c)) if *e == d => *c += 1,
                _ => deg_classes.push((d, 1)),
            }
        }
        Self {
            host_n,
            cells,
            parts,
            pos_edges,
            nbrs,
            deg,
            deg_classes,
            min_deg,
            max_deg,
            anchors,
        }
    }

    /// When every vertex appears in every part, a vertex whose remaining
    /// degree is far from average must take some extreme-degree positions.
    /// Checks the total demand against the supply of such positions.
    fn slots_ok(&self, remdeg: &[u32], k: usize) -> bool {
        let c = &self.deg_classes;
        if self.host_n != self.cells || k == 0 || c.len() < 2 {
            return true;
        }
        let k32 = k as u32;
        let (lo, lo_next) = (c[0], c[1].0);
        let (hi, hi_next) = (c[c.len() - 1], c[c.len() - 2].0);
        let (mut need_lo, mut need_hi) = (0usize, 0usize);
        for &r in remdeg {
            if r > k32 * hi_next {
                need_hi += (r - k32 * hi_next).div_ceil(hi.0 - hi_next) as usize;
            }
            if r < k32 * lo_next {
                need_lo += (k32 * lo_next - r).div_ceil(lo_next - lo.0) as usize;
            }
        }
        need_hi <= k * hi.1 && need_lo <= k * lo.1
    }

    /// Can a vertex with `remaining` uncovered incidences still be served
    /// by `parts_after` more parts?
    fn feasible(&self, remaining: u32, parts_after: usize) -> bool {
        let k = parts_after as u32;
        remaining >= self.min_deg * k && remaining <= self.max_deg * k
    }
}

fn bfs_from(nbrs: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let mut seen = vec![false; nbrs.len()];
    seen[a] = true;
    seen[b] = true;
    let mut order = vec![a, b];
    let mut queue = VecDeque::from([a, b]);
    while let Some(v) = queue.pop_front() {
        for &w in &nbrs[v] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    // disconnected grids (one row of length 1) are not searched
    debug_assert_eq!(order.len(), nbrs.len());
    order
}

/// Uncovered pairs and per-vertex remaining degrees.
#[derive(Clone)]
struct State {
    avail: Vec<Bits>,
    remdeg: Vec<u32>,
    parts: Vec<Vec<u32>>,
}

enum Task {
    /// No parts left to place after the root.
    Complete,
    /// The next part starts with these cells in anchor fill order.
    Prefix { anchor: usize, cells: Vec<u32> },
}

impl State {
    fn new(plan: &Plan) -> Self {
        let n = plan.host_n;
        let avail = (0..n as u32)
            .map(|v| {
                let mut b = Bits::full(n);
                b.remove(v);
                b
            })
            .collect();
        Self {
            avail,
            remdeg: vec![n as u32 - 1; n],
            parts: Vec::new(),
        }
    }

    fn parts_left(&self, plan: &Plan) -> usize {
        plan.parts - self.parts.len()
    }

    fn commit(&mut self, plan: &Plan, cells: &[u32]) {
        for &(x, y) in &plan.pos_edges {
            let (u, v) = (cells[x], cells[y]);
            self.avail[u as usize].remove(v);
            self.avail[v as usize].remove(u);
        }
        for (pos, &v) in cells.iter().enumerate() {
            self.remdeg[v as usize] -= plan.deg[pos];
        }
        self.parts.push(cells.to_vec());
    }

    fn uncommit(&mut self, plan: &Plan) {
        let cells = self.parts.pop().expect("a committed part");
        for &(x, y) in &plan.pos_edges {
            let (u, v) = (cells[x], cells[y]);
            self.avail[u as usize].insert(v);
            self.avail[v as usize].insert(u);
        }
        for (pos, &v) in cells.iter().enumerate() {
            self.remdeg[v as usize] += plan.deg[pos];
        }
    }

    fn smallest_uncovered(&self) -> Option<(u32, u32)> {
        self.avail
            .iter()
            .enumerate()
            .find_map(|(u, b)| b.first().map(|v| (u as u32, v)))
    }

    /// Splits the next part's enumeration into prefixes, in search order.
    fn tasks(&self, plan: &Plan) -> Vec<Task> {
        if self.parts_left(plan) == 0 {
            return vec![Task::Complete];
        }
        let depth = SPLIT_DEPTH.min(plan.cells);
        let mut tasks = Vec::new();
        let (u, v) = self
            .smallest_uncovered()
            .expect("parts left implies uncovered pairs");
        for (ai, anchor) in plan.anchors.iter().enumerate() {
            let mut cells = vec![u32::MAX; plan.cells];
            let mut used = Bits::default();
            if !self.seed(plan, anchor, u, v, &mut cells, &mut used) {
                continue;
            }
            self.collect_prefixes(plan, ai, 2, depth, &mut cells, &mut used, &mut tasks);
        }
        tasks
    }

    fn seed(
        &self,
        plan: &Plan,
        anchor: &Anchor,
        u: u32,
        v: u32,
        cells: &mut [u32],
        used: &mut Bits,
    ) -> bool {
        let after = self.parts_left(plan) - 1;
        let (a, b) = (anchor.order[0], anchor.order[1]);
        let ok = self.remdeg[u as usize] >= plan.deg[a]
            && self.remdeg[v as usize] >= plan.deg[b]
            && plan.feasible(self.remdeg[u as usize] - plan.deg[a], after)
            && plan.feasible(self.remdeg[v as usize] - plan.deg[b], after);
        cells[a] = u;
        cells[b] = v;
        used.insert(u);
        used.insert(v);
        ok
    }

    fn candidates(
        &self,
        plan: &Plan,
        anchor: &Anchor,
        idx: usize,
        cells: &[u32],
        used: &Bits,
    ) -> Bits {
        let mut cand = Bits::full(plan.host_n).and_not(used);
        for &q in &anchor.back[idx] {
            cand = cand.and(&self.avail[cells[q] as usize]);
        }
        cand
    }

    /// For each position degree, the vertices that can still take a
    /// position of that degree in the next part.
    fn fit_sets(&self, plan: &Plan) -> Vec<Bits> {
        let after = self.parts_left(plan) - 1;
        (0..=plan.max_deg)
            .map(|d| {
                let mut b = Bits::default();
                for (w, &r) in self.remdeg.iter().enumerate() {
                    if r >= d && plan.feasible(r - d, after) {
                        b.insert(w as u32);
                    }
                }
                b
            })
            .collect()
    }

    fn fits(&self, plan: &Plan, w: u32, pos: usize) -> bool {
        let r = self.remdeg[w as usize];
        r >= plan.deg[pos] && plan.feasible(r - plan.deg[pos], self.parts_left(plan) - 1)
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_prefixes(
        &self,
        plan: &Plan,
        ai: usize,
        idx: usize,
        depth: usize,
        cells: &mut [u32],
        used: &mut Bits,
        out: &mut Vec<Task>,
    ) {
        let anchor = &plan.anchors[ai];
        if idx == depth {
            out.push(Task::Prefix {
                anchor: ai,
                cells: anchor.order[..depth].iter().map(|&p| cells[p]).collect(),
            });
            return;
        }
        let pos = anchor.order[idx];
        for w in self.candidates(plan, anchor, idx, cells, used).iter() {
            if !self.fits(plan, w, pos) {
                continue;
            }
            cells[pos] = w;
            used.insert(w);
            self.collect_prefixes(plan, ai, idx + 1, depth, cells, used, out);
            used.remove(w);
        }
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    ctrl: &'a Control,
    state: State,
    task_index: usize,
    limit: usize,
    solutions: Vec<Vec<Vec<u32>>>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Worker<'a> {
    fn new(
        plan: &'a Plan,
        ctrl: &'a Control,
        state: State,
        task_index: usize,
        limit: usize,
    ) -> Self {
        Self {
            plan,
            ctrl,
            state,
            task_index,
            limit,
            solutions: Vec::new(),
            nodes: 0,
            aborted: false,
        }
    }

    fn run(&mut self, task: &Task) {
        match task {
            Task::Complete => {
                self.next_part();
            }
            Task::Prefix {
                anchor,
                cells: prefix,
            } => {
                let plan = self.plan;
                let anchor_ref = &plan.anchors[*anchor];
                let mut cells = vec![u32::MAX; plan.cells];
                let mut used = Bits::default();
                for (i, &v) in prefix.iter().enumerate() {
                    cells[anchor_ref.order[i]] = v;
                    used.insert(v);
                }
                let fit = self.state.fit_sets(plan);
                self.fill(*anchor, &fit, prefix.len(), &mut cells, &mut used);
            }
        }
    }

    fn should_stop(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if self.nodes.is_multiple_of(CHECK_INTERVAL) {
            if let Some(deadline) = self.ctrl.deadline {
                if Instant::now() >= deadline {
                    self.ctrl.timed_out.store(true, Ordering::Relaxed);
                }
            }
            if self.ctrl.timed_out.load(Ordering::Relaxed)
                || self.task_index > self.ctrl.stop_after.load(Ordering::Relaxed)
            {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// Places the next part, or records a solution. Returns true to stop.
    fn next_part(&mut self) -> bool {
        let plan = self.plan;
        if self.state.parts_left(plan) == 0 {
            self.solutions.push(self.state.parts.clone());
            return self.solutions.len() >= self.limit;
        }
        let (u, v) = self
            .state
            .smallest_uncovered()
            .expect("parts left implies uncovered pairs");
        let fit = self.state.fit_sets(plan);
        for ai in 0..plan.anchors.len() {
            let mut cells = vec![u32::MAX; plan.cells];
            let mut used = Bits::default();
            if !self
                .state
                .seed(plan, &plan.anchors[ai], u, v, &mut cells, &mut used)
            {
                continue;
            }
            if self.fill(ai, &fit, 2, &mut cells, &mut used) {
                return true;
            }
        }
        false
    }

    /// Fills the remaining positions of the current part, always branching
    /// on the frontier position with the fewest candidates.
    fn fill(
        &mut self,
        ai: usize,
        fit: &[Bits],
        filled: usize,
        cells: &mut [u32],
        used: &mut Bits,
    ) -> bool {
        self.nodes += 1;
        if self.should_stop() {
            return true;
        }
        let plan = self.plan;
        if filled == plan.cells {
            return self.complete(&plan.anchors[ai], cells);
        }
        if plan.host_n == plan.cells && !self.degree_counts_ok(fit, cells, used) {
            return false;
        }
        let mut best: Option<(u32, usize, Bits)> = None;
        for pos in (0..plan.cells).filter(|&p| cells[p] == u32::MAX) {
            let mut cand = fit[plan.deg[pos] as usize].and_not(used);
            let mut frontier = false;
            for &q in plan.nbrs[pos].iter().filter(|&&q| cells[q] != u32::MAX) {
                cand = cand.and(&self.state.avail[cells[q] as usize]);
                frontier = true;
            }
            let count = cand.count();
            if count == 0 {
                return false;
            }
            if frontier && best.as_ref().is_none_or(|b| count < b.0) {
                best = Some((count, pos, cand));
            }
        }
        let (_, pos, cand) = best.expect("grid targets are connected");
        for w in cand.iter() {
            cells[pos] = w;
            used.insert(w);
            let stop = self.fill(ai, fit, filled + 1, cells, used);
            used.remove(w);
            if stop {
                cells[pos] = u32::MAX;
                return true;
            }
        }
        cells[pos] = u32::MAX;
        false
    }

    /// Every unused vertex must land on some open position whose degree it
    /// can take. Compares, per degree, open positions against the vertices
    /// that can take it and those that can take nothing else.
    fn degree_counts_ok(&self, fit: &[Bits], cells: &[u32], used: &Bits) -> bool {
        let plan = self.plan;
        let mut open = vec![0u32; plan.max_deg as usize + 1];
        for (pos, &c) in cells.iter().enumerate() {
            if c == u32::MAX {
                open[plan.deg[pos] as usize] += 1;
            }
        }
        for &(d, _) in &plan.deg_classes {
            let can = fit[d as usize].and_not(used);
            if can.count() < open[d as usize] {
                return false;
            }
            let mut only = can;
            for &(e, _) in plan.deg_classes.iter().filter(|c| c.0 != d) {
                only = only.and_not(&fit[e as usize]);
            }
            if only.count() > open[d as usize] {
                return false;
            }
        }
        true
    }

    fn complete(&mut self, anchor: &Anchor, cells: &[u32]) -> bool {
        for g in &anchor.stabilizer {
            for (pos, &src) in g.iter().enumerate() {
                match cells[src].cmp(&cells[pos]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let plan = self.plan;
        self.state.commit(plan, cells);
        let left = self.state.parts_left(plan);
        let ok = (plan.host_n == plan.cells
            || self.state.remdeg.iter().all(|&r| plan.feasible(r, left)))
            && plan.slots_ok(&self.state.remdeg, left);
        let stop = ok && self.next_part();
        self.state.uncommit(plan);
        stop
    }
}
