//! Exact branch-and-bound for odd independence numbers, optimum counting and
//! strong odd chromatic numbers.

use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::coloring::{verify_strong_odd, Coloring};
use crate::error::{Error, Result};
use crate::graph::{build, FamilySpec, Graph};
use crate::odd::{interior_mask, is_internally_odd_independent, is_odd_independent, VertexSet};

/// Optimum counts saturate here.
pub const COUNT_CAP: u64 = 1 << 32;

const CLOCK_INTERVAL: u64 = 4096;
const MAX_MEMO_FRONTIER: usize = 58;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000_000,
            max_time: Duration::from_secs(600),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    pub count_optima: bool,
    pub threads: usize,
    /// Single-threaded, reproducible reports with the lexicographically least witness.
    pub deterministic: bool,
    /// Vertices decided before work is split across threads; `None` picks `2⌈log2 threads⌉`.
    pub split_depth: Option<usize>,
    /// Transposition table entries kept per worker.
    pub memo_capacity: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::default(),
            count_optima: false,
            threads: 1,
            deterministic: true,
            split_depth: None,
            memo_capacity: 1 << 23,
        }
    }
}

impl SolveOptions {
    pub fn counting(mut self) -> Self {
        self.count_optima = true;
        self
    }

    fn effective_threads(&self) -> usize {
        if self.deterministic {
            1
        } else {
            self.threads.max(1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Largest size found; exact when `proof_complete`.
    pub optimum: usize,
    pub witness: VertexSet,
    pub optimum_count: Option<u64>,
    pub count_overflow: bool,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub proof_complete: bool,
}

impl SolveReport {
    /// `Some(true)` when the count is exact and equal to one.
    pub fn unique(&self) -> Option<bool> {
        match (self.optimum_count, self.count_overflow) {
            (Some(c), false) => Some(c == 1),
            (Some(_), true) => Some(false),
            _ => None,
        }
    }
}

/// `α_od(g)`.
pub fn solve_alpha_od(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    let parity = vec![true; g.n()];
    let rep = solve_parity(g, &parity, opts)?;
    if rep.optimum > 0 || g.n() == 0 {
        let check = is_odd_independent(g, &rep.witness)?;
        if !check.ok {
            return Err(Error::Construction(format!(
                "solver witness fails: {:?}",
                check.violators
            )));
        }
    }
    Ok(rep)
}

/// `α_iod` of a square path grid: parity enforced at interior vertices only.
pub fn solve_alpha_iod(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    let parity = interior_mask(g)?;
    let rep = solve_parity(g, &parity, opts)?;
    let check = is_internally_odd_independent(g, &rep.witness)?;
    if !check.ok {
        return Err(Error::Construction(format!(
            "solver witness fails: {:?}",
            check.violators
        )));
    }
    Ok(rep)
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

#[derive(Clone, Copy)]
enum Memo {
    Exact(u32),
    /// No completion adds more than this many vertices.
    AtMost(i32),
}

/// Read-only data shared by every worker.
struct Problem {
    n: usize,
    nbrs: Vec<Vec<u32>>,
    parity: Vec<bool>,
    clique_of: Vec<u32>,
    n_cliques: usize,
    /// `frontier[pos]`: vertices below `pos` with a neighbour at or above `pos`.
    frontier: Vec<Vec<u32>>,
    memo_ok: bool,
}

impl Problem {
    fn new(g: &Graph, parity: &[bool]) -> Self {
        let n = g.n();
        let nbrs: Vec<Vec<u32>> = (0..n)
            .map(|v| g.neighbors(v).iter().map(|w| w as u32).collect())
            .collect();
        let mut clique_of = vec![u32::MAX; n];
        let mut n_cliques = 0;
        for v in 0..n {
            if clique_of[v] != u32::MAX {
                continue;
            }
            let id = n_cliques as u32;
            n_cliques += 1;
            clique_of[v] = id;
            let mut members = vec![v];
            for w in g.neighbors(v).iter().filter(|&w| w > v) {
                if clique_of[w] == u32::MAX && members.iter().all(|&m| g.adjacent(m, w)) {
                    clique_of[w] = id;
                    members.push(w);
                }
            }
        }
        let last_nbr: Vec<usize> = (0..n)
            .map(|v| nbrs[v].iter().map(|&w| w as usize).max().unwrap_or(0))
            .collect();
        let frontier: Vec<Vec<u32>> = (0..=n)
            .map(|pos| {
                (0..pos)
                    .filter(|&u| last_nbr[u] >= pos)
                    .map(|u| u as u32)
                    .collect()
            })
            .collect();
        let memo_ok = frontier.iter().all(|f| f.len() <= MAX_MEMO_FRONTIER);
        Problem {
            n,
            nbrs,
            parity: parity.to_vec(),
            clique_of,
            n_cliques,
            frontier,
            memo_ok,
        }
    }
}

/// Shared bookkeeping across workers.
struct Shared {
    best: AtomicI64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    start: Instant,
    budget: Budget,
}

struct Worker<'p> {
    p: &'p Problem,
    sh: &'p Shared,
    status: Vec<u8>,
    cnt: Vec<u16>,
    free_nbrs: Vec<u16>,
    clique_free: Vec<u16>,
    live_cliques: i32,
    size: i32,
    memo: FxHashMap<u128, Memo>,
    count_memo: FxHashMap<(u128, u32), u64>,
    memo_capacity: usize,
    use_global: bool,
    local_nodes: u64,
    unflushed: u64,
    aborted: bool,
    best_leaf: Option<(i32, Vec<usize>)>,
}

impl<'p> Worker<'p> {
    fn new(p: &'p Problem, sh: &'p Shared, memo_capacity: usize) -> Self {
        let mut clique_free = vec![0u16; p.n_cliques];
        for v in 0..p.n {
            clique_free[p.clique_of[v] as usize] += 1;
        }
        Worker {
            p,
            sh,
            status: vec![UNDECIDED; p.n],
            cnt: vec![0; p.n],
            free_nbrs: p.nbrs.iter().map(|l| l.len() as u16).collect(),
            clique_free,
            live_cliques: p.n_cliques as i32,
            size: 0,
            memo: FxHashMap::default(),
            count_memo: FxHashMap::default(),
            memo_capacity,
            use_global: true,
            local_nodes: 0,
            unflushed: 0,
            aborted: false,
            best_leaf: None,
        }
    }

    #[inline]
    fn make_unfree(&mut self, v: usize) {
        for &w in &self.p.nbrs[v] {
            self.free_nbrs[w as usize] -= 1;
        }
        let c = self.p.clique_of[v] as usize;
        self.clique_free[c] -= 1;
        if self.clique_free[c] == 0 {
            self.live_cliques -= 1;
        }
    }

    #[inline]
    fn make_free(&mut self, v: usize) {
        for &w in &self.p.nbrs[v] {
            self.free_nbrs[w as usize] += 1;
        }
        let c = self.p.clique_of[v] as usize;
        if self.clique_free[c] == 0 {
            self.live_cliques += 1;
        }
        self.clique_free[c] += 1;
    }

    #[inline]
    fn dead(&self, u: usize) -> bool {
        let c = self.cnt[u];
        self.p.parity[u]
            && self.status[u] != IN
            && c > 0
            && c.is_multiple_of(2)
            && self.free_nbrs[u] == 0
    }

    /// Puts a free vertex into the set; returns false if some parity became unrepairable.
    fn choose(&mut self, v: usize) -> bool {
        self.status[v] = IN;
        self.make_unfree(v);
        self.size += 1;
        let p = self.p;
        for &w in &p.nbrs[v] {
            let w = w as usize;
            self.cnt[w] += 1;
            if self.cnt[w] == 1 && self.status[w] == UNDECIDED {
                self.make_unfree(w);
            }
        }
        for &w in &p.nbrs[v] {
            let w = w as usize;
            if self.dead(w) {
                return false;
            }
            if self.cnt[w] == 1
                && self.status[w] == UNDECIDED
                && p.nbrs[w].iter().any(|&x| self.dead(x as usize))
            {
                return false;
            }
        }
        true
    }

    fn unchoose(&mut self, v: usize) {
        let p = self.p;
        for &w in p.nbrs[v].iter().rev() {
            let w = w as usize;
            if self.cnt[w] == 1 && self.status[w] == UNDECIDED {
                self.make_free(w);
            }
            self.cnt[w] -= 1;
        }
        self.size -= 1;
        self.make_free(v);
        self.status[v] = UNDECIDED;
    }

    fn exclude(&mut self, v: usize) -> bool {
        self.status[v] = OUT;
        if self.cnt[v] == 0 {
            self.make_unfree(v);
            return !self.p.nbrs[v].iter().any(|&x| self.dead(x as usize));
        }
        !self.dead(v)
    }

    fn unexclude(&mut self, v: usize) {
        if self.cnt[v] == 0 {
            self.make_free(v);
        }
        self.status[v] = UNDECIDED;
    }

    fn key(&self, pos: usize) -> u128 {
        let mut k = pos as u128;
        let mut shift = 12;
        for &u in &self.p.frontier[pos] {
            let u = u as usize;
            let code: u128 = if self.status[u] == IN {
                1
            } else if !self.p.parity[u] || self.cnt[u] == 0 {
                0
            } else if self.cnt[u] % 2 == 1 {
                2
            } else {
                3
            };
            k |= code << shift;
            shift += 2;
        }
        k
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= CLOCK_INTERVAL {
            let total = self.sh.nodes.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
            self.unflushed = 0;
            if total > self.sh.budget.max_nodes || self.sh.start.elapsed() > self.sh.budget.max_time
            {
                self.sh.aborted.store(true, Ordering::Relaxed);
            }
            if self.sh.aborted.load(Ordering::Relaxed) {
                self.aborted = true;
            }
        }
        !self.aborted
    }

    fn flush(&mut self) {
        self.sh.nodes.fetch_add(self.unflushed, Ordering::Relaxed);
        self.unflushed = 0;
    }

    fn record_leaf(&mut self) {
        if self.best_leaf.as_ref().is_none_or(|(s, _)| self.size > *s) {
            let set = (0..self.p.n).filter(|&v| self.status[v] == IN).collect();
            self.best_leaf = Some((self.size, set));
        }
    }

    /// Largest number of further vertices if it exceeds `need`, exactly; `None` otherwise.
    fn dfs(&mut self, pos: usize, mut need: i32) -> Option<u32> {
        if self.use_global {
            let global = self.sh.best.load(Ordering::Relaxed);
            need = need.max((global - self.size as i64) as i32);
        }
        if pos == self.p.n {
            self.record_leaf();
            return (0 > need).then_some(0);
        }
        if !self.tick() {
            return None;
        }
        let ub = self.live_cliques;
        if ub <= need {
            return None;
        }
        let key = if self.p.memo_ok {
            Some(self.key(pos))
        } else {
            None
        };
        if let Some(k) = key {
            match self.memo.get(&k) {
                Some(Memo::Exact(v)) => return (*v as i32 > need).then_some(*v),
                Some(Memo::AtMost(b)) if *b <= need => return None,
                _ => {}
            }
        }
        let v = pos;
        let mut best: Option<u32> = None;
        let mut floor = need;
        if self.status[v] == UNDECIDED && self.cnt[v] == 0 {
            if self.choose(v) {
                if let Some(x) = self.dfs(pos + 1, floor - 1) {
                    best = Some(x + 1);
                    floor = floor.max(x as i32 + 1);
                }
            }
            self.unchoose(v);
        }
        if !self.aborted {
            if self.exclude(v) {
                if let Some(x) = self.dfs(pos + 1, floor) {
                    best = Some(x);
                }
            }
            self.unexclude(v);
        }
        if self.aborted {
            return None;
        }
        if let Some(k) = key {
            if self.memo.len() < self.memo_capacity {
                let entry = match best {
                    Some(b) => Memo::Exact(b),
                    None => Memo::AtMost(floor),
                };
                self.memo.insert(k, entry);
            }
        }
        best
    }

    /// Vertices chosen from `pos` on in the lexicographically least completion of size `target`.
    fn reconstruct(&mut self, pos: usize, mut target: u32) -> Vec<(usize, bool)> {
        let saved = self.use_global;
        self.use_global = false;
        let mut trail = Vec::new();
        for v in pos..self.p.n {
            let mut took = false;
            if target > 0 && self.status[v] == UNDECIDED && self.cnt[v] == 0 {
                if self.choose(v) {
                    let want = target - 1;
                    if let Some(x) = self.dfs(v + 1, want as i32 - 1) {
                        took = x >= want;
                    }
                }
                if took {
                    target -= 1;
                } else {
                    self.unchoose(v);
                }
            }
            if !took {
                let ok = self.exclude(v);
                debug_assert!(ok);
            }
            trail.push((v, took));
        }
        self.use_global = saved;
        trail
    }

    fn undo(&mut self, trail: &[(usize, bool)]) {
        for &(v, took) in trail.iter().rev() {
            if took {
                self.unchoose(v);
            } else {
                self.unexclude(v);
            }
        }
    }

    /// Completions from `pos` adding exactly `target` vertices, saturating at [`COUNT_CAP`].
    fn count(&mut self, pos: usize, target: u32) -> u64 {
        if pos == self.p.n {
            return (target == 0) as u64;
        }
        if !self.tick() {
            return 0;
        }
        if self.live_cliques < target as i32 {
            return 0;
        }
        let key = if self.p.memo_ok {
            Some(self.key(pos))
        } else {
            None
        };
        if let Some(k) = key {
            match self.memo.get(&k) {
                Some(Memo::Exact(v)) if *v < target => return 0,
                Some(Memo::AtMost(b)) if *b < target as i32 => return 0,
                _ => {}
            }
            if let Some(&c) = self.count_memo.get(&(k, target)) {
                return c;
            }
        }
        let v = pos;
        let mut total = 0u64;
        if target > 0 && self.status[v] == UNDECIDED && self.cnt[v] == 0 {
            if self.choose(v) {
                total += self.count(pos + 1, target - 1);
            }
            self.unchoose(v);
        }
        if !self.aborted {
            if self.exclude(v) {
                total += self.count(pos + 1, target);
            }
            self.unexclude(v);
        }
        if self.aborted {
            return 0;
        }
        let total = total.min(COUNT_CAP);
        if let Some(k) = key {
            if self.count_memo.len() < self.memo_capacity {
                self.count_memo.insert((k, target), total);
            }
        }
        total
    }

    /// Applies a task prefix; false if it is infeasible.
    fn apply_prefix(&mut self, prefix: &[bool]) -> Option<Vec<(usize, bool)>> {
        let mut trail = Vec::new();
        for (v, &take) in prefix.iter().enumerate() {
            let ok = if take {
                if self.status[v] != UNDECIDED || self.cnt[v] != 0 {
                    self.undo(&trail);
                    return None;
                }
                self.choose(v)
            } else {
                self.exclude(v)
            };
            trail.push((v, take));
            if !ok {
                self.undo(&trail);
                return None;
            }
        }
        Some(trail)
    }
}

fn split_prefixes(n: usize, threads: usize, depth: Option<usize>) -> Vec<Vec<bool>> {
    let d = if threads <= 1 {
        0
    } else {
        depth.unwrap_or(2 * (usize::BITS - (threads - 1).leading_zeros()) as usize)
    };
    let d = d.min(n).min(20);
    (0u32..1 << d)
        .map(|m| (0..d).map(|i| m >> (d - 1 - i) & 1 == 1).collect())
        .collect()
}

fn solve_parity(g: &Graph, parity: &[bool], opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let p = Problem::new(g, parity);
    let sh = Shared {
        best: AtomicI64::new(-1),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        start,
        budget: opts.budget,
    };
    let threads = opts.effective_threads();
    let tasks = split_prefixes(p.n, threads, opts.split_depth);
    let next = AtomicUsize::new(0);
    let witness: Mutex<Option<(i64, Vec<usize>)>> = Mutex::new(None);
    let count_total = AtomicU64::new(0);

    let offer = |total: i64, set: Vec<usize>| {
        let mut w = witness.lock().unwrap();
        let better = match &*w {
            None => true,
            Some((t, s)) => total > *t || (total == *t && set < *s),
        };
        if better {
            *w = Some((total, set));
        }
    };

    let run_phase = |counting: bool, optimum: i64| {
        next.store(0, Ordering::SeqCst);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| {
                    let mut wk = Worker::new(&p, &sh, opts.memo_capacity);
                    loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        if i >= tasks.len() || sh.aborted.load(Ordering::Relaxed) {
                            break;
                        }
                        let prefix = &tasks[i];
                        let Some(trail) = wk.apply_prefix(prefix) else {
                            continue;
                        };
                        let d = prefix.len();
                        if counting {
                            let target = optimum - wk.size as i64;
                            if target >= 0 {
                                let c = wk.count(d, target as u32);
                                let _ = count_total.fetch_update(
                                    Ordering::SeqCst,
                                    Ordering::SeqCst,
                                    |x| Some((x + c).min(COUNT_CAP)),
                                );
                            }
                        } else {
                            let base = wk.size;
                            if let Some(x) = wk.dfs(d, -1) {
                                let total = (base + x as i32) as i64;
                                sh.best.fetch_max(total, Ordering::SeqCst);
                                let rest = wk.reconstruct(d, x);
                                if !wk.aborted {
                                    let set = (0..p.n).filter(|&v| wk.status[v] == IN).collect();
                                    offer(total, set);
                                }
                                wk.undo(&rest);
                            }
                        }
                        wk.undo(&trail);
                    }
                    wk.flush();
                    if let Some((s, set)) = wk.best_leaf.take() {
                        offer(s as i64, set);
                    }
                });
            }
        });
    };

    run_phase(false, 0);
    let complete = !sh.aborted.load(Ordering::SeqCst);
    let (optimum, set) = witness.lock().unwrap().take().unwrap_or((0, Vec::new()));
    let optimum = optimum.max(0);
    let mut optimum_count = None;
    let mut count_overflow = false;
    if complete && opts.count_optima {
        run_phase(true, optimum);
        if !sh.aborted.load(Ordering::SeqCst) {
            let c = count_total.load(Ordering::SeqCst);
            count_overflow = c >= COUNT_CAP;
            optimum_count = Some(c);
        }
    }
    Ok(SolveReport {
        optimum: optimum as usize,
        witness: VertexSet::from_vertices(p.n, set)?,
        optimum_count,
        count_overflow,
        nodes_explored: sh.nodes.load(Ordering::SeqCst),
        elapsed: start.elapsed(),
        proof_complete: complete,
    })
}

/// Maximum independent set by branch and bound with a clique-cover bound.
pub fn max_independent_set(g: &Graph) -> VertexSet {
    fn cover_bound(g: &Graph, cand: &Bitset) -> usize {
        let mut rest = cand.clone();
        let mut k = 0;
        while let Some(v) = rest.first() {
            k += 1;
            let mut clique = rest.clone();
            clique.intersect_with(g.neighbors(v));
            rest.remove(v);
            while let Some(w) = clique.first() {
                rest.remove(w);
                clique.remove(w);
                clique.intersect_with(g.neighbors(w));
            }
        }
        k
    }
    fn go(g: &Graph, cand: Bitset, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        let Some(v) = cand.first() else {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        };
        if cur.len() + cover_bound(g, &cand) <= best.len() {
            return;
        }
        let mut with = cand.clone();
        with.difference_with(g.neighbors(v));
        with.remove(v);
        cur.push(v);
        go(g, with, cur, best);
        cur.pop();
        let mut without = cand;
        without.remove(v);
        go(g, without, cur, best);
    }
    let mut best = Vec::new();
    go(g, Bitset::full(g.n()), &mut Vec::new(), &mut best);
    VertexSet::from_vertices(g.n(), best).expect("vertices in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromReport {
    pub chi_so: Option<usize>,
    pub coloring: Option<Coloring>,
    /// Entry `i` is true when `i + 1` colors were proven insufficient.
    pub infeasible_below: Vec<bool>,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub proof_complete: bool,
}

const UNCOLORED: u32 = u32::MAX;

struct ColorSearch<'g> {
    nbrs: Vec<Vec<usize>>,
    palette: usize,
    color: Vec<u32>,
    /// `cnt[u * palette + x]`: neighbours of `u` colored `x`.
    cnt: Vec<u16>,
    budget: Budget,
    start: Instant,
    nodes: &'g mut u64,
    aborted: bool,
}

impl ColorSearch<'_> {
    fn can_take(&self, w: usize, x: usize) -> bool {
        self.color[w] == UNCOLORED && self.cnt[w * self.palette + x] == 0
    }

    fn vertex_ok(&self, u: usize) -> bool {
        let c = self.palette;
        if self.color[u] == UNCOLORED && (0..c).all(|x| self.cnt[u * c + x] > 0) {
            return false;
        }
        (0..c).all(|y| {
            let m = self.cnt[u * c + y];
            m == 0 || m % 2 == 1 || self.nbrs[u].iter().any(|&w| self.can_take(w, y))
        })
    }

    fn assign(&mut self, v: usize, x: usize) {
        self.color[v] = x as u32;
        for &w in &self.nbrs[v] {
            self.cnt[w * self.palette + x] += 1;
        }
    }

    fn unassign(&mut self, v: usize, x: usize) {
        for &w in &self.nbrs[v] {
            self.cnt[w * self.palette + x] -= 1;
        }
        self.color[v] = UNCOLORED;
    }

    fn consistent_after(&self, v: usize) -> bool {
        self.nbrs[v]
            .iter()
            .all(|&u| self.vertex_ok(u) && self.nbrs[u].iter().all(|&w| self.vertex_ok(w)))
    }

    fn go(&mut self, v: usize, used: usize) -> bool {
        if v == self.color.len() {
            return true;
        }
        *self.nodes += 1;
        if (*self.nodes).is_multiple_of(CLOCK_INTERVAL)
            && (*self.nodes > self.budget.max_nodes || self.start.elapsed() > self.budget.max_time)
        {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        for x in 0..self.palette.min(used + 1) {
            if self.cnt[v * self.palette + x] != 0 {
                continue;
            }
            self.assign(v, x);
            if self.consistent_after(v) && self.go(v + 1, used.max(x + 1)) {
                return true;
            }
            self.unassign(v, x);
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Smallest palette up to `palette_max` that admits a strong odd coloring.
pub fn solve_chi_so(g: &Graph, palette_max: usize, budget: Budget) -> Result<ChromReport> {
    if palette_max < 1 {
        return Err(Error::param("palette_max", "must be at least 1"));
    }
    let start = Instant::now();
    let nbrs: Vec<Vec<usize>> = (0..g.n())
        .map(|v| g.neighbors(v).iter().collect())
        .collect();
    let mut nodes = 0u64;
    let mut infeasible_below = Vec::new();
    for palette in 1..=palette_max {
        let mut s = ColorSearch {
            nbrs: nbrs.clone(),
            palette,
            color: vec![UNCOLORED; g.n()],
            cnt: vec![0; g.n() * palette],
            budget,
            start,
            nodes: &mut nodes,
            aborted: false,
        };
        let found = s.go(0, 0);
        let aborted = s.aborted;
        if found {
            let c = Coloring::new(s.color.clone(), palette)?;
            let rep = verify_strong_odd(g, &c)?;
            if !rep.ok {
                return Err(Error::Construction(format!(
                    "solver coloring fails: {:?}",
                    rep.violators[0]
                )));
            }
            let complete = infeasible_below.iter().all(|&b| b);
            return Ok(ChromReport {
                chi_so: complete.then_some(palette),
                coloring: Some(c),
                infeasible_below,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
                proof_complete: complete,
            });
        }
        infeasible_below.push(!aborted);
        if aborted {
            break;
        }
    }
    let complete = infeasible_below.len() == palette_max && infeasible_below.iter().all(|&b| b);
    Ok(ChromReport {
        chi_so: None,
        coloring: None,
        infeasible_below,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        proof_complete: complete,
    })
}

/// Closed forms checked by [`verify_formula`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum Formula {
    /// `α_od = ⌈n / (2r + 1)⌉²`.
    CeilSquare { r: usize },
    /// `α_od` equal to a constant.
    Constant { value: usize },
    /// `χ_so = ⌈n² / 2⌉`.
    ChiCeilHalfSquare,
}

impl Formula {
    pub fn value(&self, n: usize) -> usize {
        match *self {
            Formula::CeilSquare { r } => n.div_ceil(2 * r + 1).pow(2),
            Formula::Constant { value } => value,
            Formula::ChiCeilHalfSquare => (n * n).div_ceil(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub size: usize,
    pub formula_value: usize,
    /// `None` when the search did not finish within budget.
    pub searched_value: Option<usize>,
    pub matched: bool,
}

/// Runs the solver on `family(n)` for every `n` in `sizes` and compares with `formula`.
pub fn verify_formula(
    family: impl Fn(usize) -> FamilySpec,
    formula: Formula,
    sizes: &[usize],
    opts: &SolveOptions,
) -> Result<Vec<FormulaCheck>> {
    sizes
        .iter()
        .map(|&n| {
            let g = build(&family(n))?;
            let expected = formula.value(n);
            let searched = match formula {
                Formula::ChiCeilHalfSquare => solve_chi_so(&g, expected, opts.budget)?.chi_so,
                _ => {
                    let rep = solve_alpha_od(&g, opts)?;
                    rep.proof_complete.then_some(rep.optimum)
                }
            };
            Ok(FormulaCheck {
                size: n,
                formula_value: expected,
                searched_value: searched,
                matched: searched == Some(expected),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn od(spec: FamilySpec) -> SolveReport {
        solve_alpha_od(&build(&spec).unwrap(), &SolveOptions::default()).unwrap()
    }

    #[test]
    fn small_grids() {
        assert_eq!(od(FamilySpec::path_grid(3)).optimum, 5);
        assert_eq!(od(FamilySpec::path_grid(5)).optimum, 12);
        assert_eq!(od(FamilySpec::torus_grid(3)).optimum, 1);
        assert_eq!(od(FamilySpec::cylinder_grid(3)).optimum, 2);
    }

    #[test]
    fn cycles_and_cliques() {
        assert_eq!(od(FamilySpec::Cycle { n: 4 }).optimum, 1);
        assert_eq!(od(FamilySpec::Cycle { n: 3 }).optimum, 1);
        assert_eq!(od(FamilySpec::Path { n: 3 }).optimum, 1);
        assert_eq!(od(FamilySpec::Path { n: 5 }).optimum, 2);
        assert_eq!(od(FamilySpec::Complete { n: 5 }).optimum, 1);
    }

    #[test]
    fn king_uniqueness() {
        let g = build(&FamilySpec::King { n: 4 }).unwrap();
        let rep = solve_alpha_od(&g, &SolveOptions::default().counting()).unwrap();
        assert_eq!(rep.optimum, 4);
        assert_eq!(rep.unique(), Some(true));
        let g = build(&FamilySpec::King { n: 5 }).unwrap();
        let rep = solve_alpha_od(&g, &SolveOptions::default().counting()).unwrap();
        assert_eq!(rep.optimum, 4);
        assert_eq!(rep.unique(), Some(false));
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let g = build(&FamilySpec::Path { n: 4 }).unwrap();
        let rep = solve_alpha_od(&g, &SolveOptions::default()).unwrap();
        assert_eq!(rep.witness.to_vec(), vec![0, 3]);
    }

    #[test]
    fn iod_small() {
        let opts = SolveOptions::default();
        for (k, want) in [(3, 5), (4, 7)] {
            let g = build(&FamilySpec::path_grid(k)).unwrap();
            assert_eq!(solve_alpha_iod(&g, &opts).unwrap().optimum, want);
        }
        let cyc = build(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert!(solve_alpha_iod(&cyc, &opts).is_err());
    }

    #[test]
    fn exhausted_budget_is_partial() {
        let g = build(&FamilySpec::path_grid(9)).unwrap();
        let opts = SolveOptions {
            budget: Budget {
                max_nodes: 5000,
                max_time: Duration::from_secs(60),
            },
            ..SolveOptions::default()
        };
        let rep = solve_alpha_od(&g, &opts).unwrap();
        assert!(!rep.proof_complete);
        assert!(rep.optimum <= 33);
    }

    #[test]
    fn parallel_matches_serial() {
        let g = build(&FamilySpec::path_grid(5)).unwrap();
        let opts = SolveOptions {
            threads: 4,
            deterministic: false,
            ..SolveOptions::default().counting()
        };
        let par = solve_alpha_od(&g, &opts).unwrap();
        let ser = solve_alpha_od(&g, &SolveOptions::default().counting()).unwrap();
        assert_eq!(par.optimum, ser.optimum);
        assert_eq!(par.optimum_count, ser.optimum_count);
    }

    #[test]
    fn mis_values() {
        let g = build(&FamilySpec::Cycle { n: 7 }).unwrap();
        assert_eq!(max_independent_set(&g).len(), 3);
        let g = build(&FamilySpec::path_grid(4)).unwrap();
        assert_eq!(max_independent_set(&g).len(), 8);
    }

    #[test]
    fn chi_small() {
        let b = Budget::default();
        let k3 = build(&FamilySpec::Complete { n: 3 }).unwrap();
        assert_eq!(solve_chi_so(&k3, 5, b).unwrap().chi_so, Some(3));
        let grid = build(&FamilySpec::PathGrid { rows: 3, cols: 4 }).unwrap();
        let rep = solve_chi_so(&grid, 5, b).unwrap();
        assert_eq!(rep.chi_so, Some(3));
        assert_eq!(rep.infeasible_below, vec![true, true]);
        let c4 = build(&FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(solve_chi_so(&c4, 4, b).unwrap().chi_so, Some(4));
        assert!(solve_chi_so(&c4, 0, b).is_err());
    }

    #[test]
    fn formulas() {
        let opts = SolveOptions::default();
        let rows = verify_formula(
            |n| FamilySpec::Rook { n },
            Formula::Constant { value: 1 },
            &[2, 3, 4],
            &opts,
        )
        .unwrap();
        assert!(rows.iter().all(|r| r.matched));
        assert_eq!(Formula::CeilSquare { r: 1 }.value(7), 9);
        assert_eq!(Formula::ChiCeilHalfSquare.value(5), 13);
    }
}
