//! Exhaustive search for semi-equivelar colored graphs of a given type.
//!
//! Colors are placed one perfect matching at a time. The target face lengths
//! `L₀, …, L_d` are assigned to the consecutive pairs `(c, c+1)` of the
//! identity cyclic order, with the longest length on the pair `(0, 1)`. The
//! `{0,1}`-cycles are then fixed without loss of generality to blocks of `L₀`
//! consecutive vertices, and each later color `c` is matched while tracking
//! the alternating `{c−1, c}` paths (and, for the last color, `{d, 0}`
//! paths): a cycle may close only at its exact target length and an open
//! path may never exceed it. Completed graphs are checked for connectivity
//! and deduplicated by canonical form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_gem, canonical_labeling, ColorMode};
use crate::embedding::{semi_equivelar_type, CyclicPermutation};
use crate::gem::Gem;
use crate::setype::SeType;
use crate::topology::{manifold_status, surface_of, Surface};

/// Default node budget.
pub const DEFAULT_MAX_NODES: u64 = 200_000_000;

/// Largest vertex count searched without `force`, by rank.
pub fn feasibility_bound(rank: usize) -> usize {
    if rank == 3 {
        24
    } else {
        8
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    pub target: SeType,
    /// Keep only graphs whose manifold status is `Manifold`.
    pub require_gem: bool,
    /// Keep only 3-colored graphs representing this surface.
    pub require_surface: Option<Surface>,
    pub color_mode: ColorMode,
    pub max_nodes: u64,
    /// Override for [`feasibility_bound`].
    pub max_vertices: Option<usize>,
    /// Search even beyond the vertex bound.
    pub force: bool,
}

impl SearchQuery {
    pub fn new(target: SeType) -> SearchQuery {
        SearchQuery {
            target,
            require_gem: false,
            require_surface: None,
            color_mode: ColorMode::Permutable,
            max_nodes: DEFAULT_MAX_NODES,
            max_vertices: None,
            force: false,
        }
    }
}

/// Counters collected during the search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Edge placements tried.
    pub nodes: u64,
    /// Complete assignments reached.
    pub leaves: u64,
    pub pruned_cycle_length: u64,
    pub pruned_path_length: u64,
    pub pruned_disconnected: u64,
    /// Leaves isomorphic to an earlier one.
    pub duplicates: u64,
    pub filtered_not_gem: u64,
    pub filtered_surface: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.pruned_cycle_length += o.pruned_cycle_length;
        self.pruned_path_length += o.pruned_path_length;
        self.pruned_disconnected += o.pruned_disconnected;
        self.duplicates += o.duplicates;
        self.filtered_not_gem += o.filtered_not_gem;
        self.filtered_surface += o.filtered_surface;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Canonical representatives, in canonical-form byte order.
    pub found: Vec<Gem>,
    /// Whether the whole space was explored.
    pub exhausted: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("BudgetExceeded: node budget exhausted after {} nodes; {} graphs found so far", .0.stats.nodes, .0.found.len())]
    BudgetExceeded(SearchResult),
    #[error("VertexBoundExceeded: p={p} exceeds the feasibility bound {bound} for this rank (use force to search anyway)")]
    VertexBoundExceeded { p: usize, bound: usize },
    #[error("InvalidQuery: {0}")]
    InvalidQuery(String),
}

/// The target lengths per consecutive pair, longest first.
fn arrangement(target: &SeType) -> Vec<usize> {
    let c = target.cycle();
    let n = c.len();
    let max = *c.iter().max().expect("nonempty");
    let mut best: Option<Vec<usize>> = None;
    for r in 0..n {
        let rot: Vec<usize> = (0..n).map(|i| c[(r + i) % n]).collect();
        let rev: Vec<usize> = (0..n).map(|i| rot[(n - i) % n]).collect();
        for s in [rot, rev] {
            if s[0] == max && best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.expect("some rotation starts with the maximum")
}

fn validate(q: &SearchQuery) -> Result<(), SearchError> {
    let t = &q.target;
    let p = t.p();
    if t.rank() < 3 {
        return Err(SearchError::InvalidQuery(format!(
            "{t}: at least three colors are needed"
        )));
    }
    if p % 2 == 1 {
        return Err(SearchError::InvalidQuery(format!(
            "{t}: the vertex count must be even"
        )));
    }
    if let Some(&bad) = t
        .cycle()
        .iter()
        .find(|&&l| l % 2 == 1 || !p.is_multiple_of(l))
    {
        return Err(SearchError::InvalidQuery(format!(
            "{t}: face length {bad} must be even and divide {p}"
        )));
    }
    if q.require_surface.is_some() && t.rank() != 3 {
        return Err(SearchError::InvalidQuery(
            "a surface filter needs a 3-colored type".into(),
        ));
    }
    if q.max_nodes == 0 {
        return Err(SearchError::InvalidQuery(
            "the node budget must be positive".into(),
        ));
    }
    let bound = q
        .max_vertices
        .unwrap_or_else(|| feasibility_bound(t.rank()));
    if p > bound && !q.force {
        return Err(SearchError::VertexBoundExceeded { p, bound });
    }
    Ok(())
}

// Paths of one tracked color pair `(a, b)` where color `a` is complete and
// `b` is being placed: for a `b`-unmatched vertex, `end` is the other end of
// its alternating path and `len` that path's vertex count.
#[derive(Clone)]
struct Tracker {
    a: usize,
    target: usize,
    end: Vec<usize>,
    len: Vec<usize>,
}

enum Step {
    Closed,
    Merged {
        x: usize,
        y: usize,
        lx: usize,
        ly: usize,
    },
}

impl Tracker {
    fn reset(&mut self, m: &[Vec<usize>]) {
        for u in 1..self.end.len() {
            self.end[u] = m[self.a][u];
            self.len[u] = 2;
        }
    }

    fn apply(&mut self, u: usize, v: usize, stats: &mut SearchStats) -> Option<Step> {
        let x = self.end[u];
        if x == v {
            if self.len[u] != self.target {
                stats.pruned_cycle_length += 1;
                return None;
            }
            return Some(Step::Closed);
        }
        let y = self.end[v];
        let total = self.len[u] + self.len[v];
        if total > self.target {
            stats.pruned_path_length += 1;
            return None;
        }
        let step = Step::Merged {
            x,
            y,
            lx: self.len[x],
            ly: self.len[y],
        };
        self.end[x] = y;
        self.end[y] = x;
        self.len[x] = total;
        self.len[y] = total;
        Some(step)
    }

    fn undo(&mut self, u: usize, v: usize, step: Step) {
        if let Step::Merged { x, y, lx, ly } = step {
            self.end[x] = u;
            self.end[y] = v;
            self.len[x] = lx;
            self.len[y] = ly;
        }
    }
}

struct Worker<'a> {
    n: usize,
    colors: usize,
    m: Vec<Vec<usize>>,
    // trackers[c] follows the pair (c−1, c); `closing` follows (0, d) for the last color
    trackers: Vec<Tracker>,
    closing: Tracker,
    stats: SearchStats,
    found: BTreeMap<Vec<u8>, Gem>,
    pending: u64,
    batch: u64,
    budget: &'a AtomicU64,
    max_nodes: u64,
    aborted: &'a AtomicBool,
}

impl Worker<'_> {
    fn new<'a>(
        lens: &[usize],
        budget: &'a AtomicU64,
        max_nodes: u64,
        aborted: &'a AtomicBool,
        n: usize,
    ) -> Worker<'a> {
        let colors = lens.len();
        let l0 = lens[0];
        let mut m = vec![vec![0usize; n + 1]; colors];
        for block in 0..n / l0 {
            let base = block * l0;
            for i in (1..=l0).step_by(2) {
                m[0][base + i] = base + i + 1;
                m[0][base + i + 1] = base + i;
            }
            for i in (2..=l0).step_by(2) {
                let j = if i == l0 { 1 } else { i + 1 };
                m[1][base + i] = base + j;
                m[1][base + j] = base + i;
            }
        }
        let tracker = |a: usize, target: usize| Tracker {
            a,
            target,
            end: vec![0; n + 1],
            len: vec![0; n + 1],
        };
        let trackers = (0..colors)
            .map(|c| tracker(c.saturating_sub(1), lens[c.saturating_sub(1)]))
            .collect();
        Worker {
            n,
            colors,
            m,
            trackers,
            closing: tracker(0, lens[colors - 1]),
            stats: SearchStats::default(),
            found: BTreeMap::new(),
            pending: 0,
            batch: max_nodes.clamp(1, 4096),
            budget,
            max_nodes,
            aborted,
        }
    }

    fn enter_color(&mut self, c: usize) {
        let (m, t) = (&self.m, &mut self.trackers[c]);
        t.reset(m);
        if c == self.colors - 1 {
            self.closing.reset(&self.m);
        }
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        self.pending += 1;
        if self.pending == self.batch {
            let total = self.budget.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            self.pending = 0;
            if total > self.max_nodes {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.budget.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }

    /// Places the `c`-edge `u–v`, returning the undo records on success.
    fn place(&mut self, c: usize, u: usize, v: usize) -> Option<(Step, Option<Step>)> {
        let s1 = self.trackers[c].apply(u, v, &mut self.stats)?;
        let s2 = if c == self.colors - 1 {
            match self.closing.apply(u, v, &mut self.stats) {
                Some(s) => Some(s),
                None => {
                    self.trackers[c].undo(u, v, s1);
                    return None;
                }
            }
        } else {
            None
        };
        self.m[c][u] = v;
        self.m[c][v] = u;
        Some((s1, s2))
    }

    fn unplace(&mut self, c: usize, u: usize, v: usize, steps: (Step, Option<Step>)) {
        self.m[c][u] = 0;
        self.m[c][v] = 0;
        if let Some(s2) = steps.1 {
            self.closing.undo(u, v, s2);
        }
        self.trackers[c].undo(u, v, steps.0);
    }

    fn dfs(&mut self, c: usize, from: usize) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        let Some(u) = (from..=self.n).find(|&u| self.m[c][u] == 0) else {
            if c + 1 == self.colors {
                self.leaf();
            } else {
                self.enter_color(c + 1);
                self.dfs(c + 1, 1);
            }
            return;
        };
        for v in u + 1..=self.n {
            if self.m[c][v] != 0 {
                continue;
            }
            if !self.tick() {
                return;
            }
            if let Some(steps) = self.place(c, u, v) {
                self.dfs(c, u + 1);
                self.unplace(c, u, v, steps);
            }
        }
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        let gem = Gem::from_raw(self.n, self.m.clone());
        if !gem.is_connected() {
            self.stats.pruned_disconnected += 1;
            return;
        }
        let code = canonical_labeling(&gem, ColorMode::Permutable).code;
        if let std::collections::btree_map::Entry::Vacant(e) = self.found.entry(code) {
            e.insert(gem);
        } else {
            self.stats.duplicates += 1;
        }
    }
}

/// Up to color permutation, every connected graph of the target type, keyed
/// by canonical form. Returns the map, the stats and whether it completed.
fn raw_search(target: &SeType, max_nodes: u64) -> (BTreeMap<Vec<u8>, Gem>, SearchStats, bool) {
    let lens = arrangement(target);
    let n = target.p();
    let l0 = lens[0];
    let budget = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    // vertex 1's color-2 partner: within its own block, or the first vertex
    // of the next block (blocks and their dihedral symmetries are
    // interchangeable)
    let firsts: Vec<usize> = (2..=n).filter(|&v| v <= l0 || v == l0 + 1).collect();
    let parts: Vec<(BTreeMap<Vec<u8>, Gem>, SearchStats)> = firsts
        .par_iter()
        .map(|&v| {
            let mut w = Worker::new(&lens, &budget, max_nodes, &aborted, n);
            w.enter_color(2);
            if w.tick() {
                if let Some(steps) = w.place(2, 1, v) {
                    w.dfs(2, 2);
                    w.unplace(2, 1, v, steps);
                }
            }
            w.flush();
            (w.found, w.stats)
        })
        .collect();
    let mut found = BTreeMap::new();
    let mut stats = SearchStats::default();
    for (f, s) in parts {
        stats.absorb(&s);
        for (k, g) in f {
            if let std::collections::btree_map::Entry::Vacant(e) = found.entry(k) {
                e.insert(g);
            } else {
                stats.duplicates += 1;
            }
        }
    }
    let exhausted = !aborted.load(Ordering::Relaxed);
    (found, stats, exhausted)
}

fn all_color_perms(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All connected colored graphs of the target type, up to isomorphism in
/// the query's color mode, after the requested filters.
pub fn search(query: &SearchQuery) -> Result<SearchResult, SearchError> {
    validate(query)?;
    let (raw, mut stats, exhausted) = raw_search(&query.target, query.max_nodes);
    let mut kept: BTreeMap<Vec<u8>, Gem> = BTreeMap::new();
    for gem in raw.into_values() {
        if query.require_gem && !manifold_status(&gem).expect("connected").is_manifold() {
            stats.filtered_not_gem += 1;
            continue;
        }
        if let Some(s) = query.require_surface {
            if surface_of(&gem).expect("3-colored, connected") != s {
                stats.filtered_surface += 1;
                continue;
            }
        }
        match query.color_mode {
            ColorMode::Permutable => {
                let lab = canonical_labeling(&gem, ColorMode::Permutable);
                kept.insert(lab.code, canonical_gem(&gem, ColorMode::Permutable));
            }
            ColorMode::Fixed => {
                for perm in all_color_perms(gem.color_count()) {
                    let h = gem.permute_colors(&perm);
                    let lab = canonical_labeling(&h, ColorMode::Fixed);
                    kept.entry(lab.code)
                        .or_insert_with(|| canonical_gem(&h, ColorMode::Fixed));
                }
            }
        }
    }
    let result = SearchResult {
        found: kept.into_values().collect(),
        exhausted,
        stats,
    };
    if exhausted {
        Ok(result)
    } else {
        Err(SearchError::BudgetExceeded(result))
    }
}

/// Whether `gem` has the target type in some cyclic class.
pub fn has_type(gem: &Gem, target: &SeType) -> bool {
    gem.is_connected()
        && gem.color_count() == target.rank()
        && CyclicPermutation::all(gem.color_count())
            .iter()
            .any(|eps| semi_equivelar_type(gem, eps).ok().flatten().as_ref() == Some(target))
}
