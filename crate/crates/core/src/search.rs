//! Exhaustive enumeration of maximal sum-free sets.
//!
//! Depth-first over elements in ascending index order. A node is a sum-free
//! set `P` together with the bitmap of elements that cannot join it
//! (`2P ∪ (P−P) ∪ {u : 2u ∈ P} ∪ {0}`), updated incrementally. With symmetry
//! on, nodes with at most `canonical_depth` elements must be canonical
//! (orderly generation) and maximal sets found below are deduplicated by
//! canonical form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, is_canonical};
use crate::group::{AddTable, GroupSpec};
use crate::set::{DenseSet, SetRecord};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_CANONICAL_DEPTH: usize = 3;
const SPLIT_DEPTH: usize = 2;

/// Worker count from `SUMFREE_THREADS`, defaulting to 1.
pub fn threads_from_env() -> usize {
    std::env::var("SUMFREE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub min_size: usize,
    pub symmetry: bool,
    pub canonical_depth: usize,
    pub budget: u64,
    pub threads: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            min_size: 1,
            symmetry: true,
            canonical_depth: DEFAULT_CANONICAL_DEPTH,
            budget: DEFAULT_NODE_BUDGET,
            threads: threads_from_env(),
        }
    }
}

impl EnumerationConfig {
    pub fn with_min_size(min_size: usize) -> Self {
        EnumerationConfig { min_size, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundSet {
    pub set: DenseSet,
    /// Number of maximal sets this entry stands for (1 without symmetry).
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRun {
    pub group: GroupSpec,
    pub min_size: usize,
    pub symmetry: bool,
    /// Canonical representatives (symmetry on) or every set found (off), in
    /// ascending lexicographic order.
    pub reps: Vec<FoundSet>,
    pub node_count: u64,
    pub exhaustive: bool,
}

impl EnumerationRun {
    pub fn total_count(&self) -> u64 {
        self.reps.iter().map(|r| r.orbit_size).sum()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.reps.iter().map(|r| r.set.len()).max()
    }

    /// Maximal-set counts keyed by size.
    pub fn size_histogram(&self) -> BTreeMap<usize, u64> {
        let mut h = BTreeMap::new();
        for r in &self.reps {
            *h.entry(r.set.len()).or_insert(0) += r.orbit_size;
        }
        h
    }

    pub fn record(&self) -> EnumerationRecord {
        EnumerationRecord {
            group: GroupRecord::from(self.group),
            min_size: self.min_size,
            symmetry: self.symmetry,
            total_count: self.total_count(),
            orbit_count: self.reps.len(),
            size_histogram: self.size_histogram(),
            reps: self
                .reps
                .iter()
                .map(|r| RepRecord { set: SetRecord::from(&r.set), orbit_size: r.orbit_size })
                .collect(),
            node_count: self.node_count,
            exhaustive: self.exhaustive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct GroupRecord {
    pub p: u32,
    pub n: u32,
}

impl From<GroupSpec> for GroupRecord {
    fn from(g: GroupSpec) -> Self {
        GroupRecord { p: g.p(), n: g.n() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct RepRecord {
    pub set: SetRecord,
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct EnumerationRecord {
    pub group: GroupRecord,
    pub min_size: usize,
    pub symmetry: bool,
    pub total_count: u64,
    pub orbit_count: usize,
    pub size_histogram: BTreeMap<usize, u64>,
    pub reps: Vec<RepRecord>,
    pub node_count: u64,
    pub exhaustive: bool,
}

/// Search node: a sum-free set and the elements it blocks.
#[derive(Clone)]
struct Node {
    members: Vec<usize>,
    blocked: Vec<u64>,
}

struct Ctx<'a> {
    group: GroupSpec,
    table: &'a AddTable,
    half: Vec<Option<usize>>,
    full_words: Vec<u64>,
}

impl<'a> Ctx<'a> {
    fn new(group: GroupSpec, table: &'a AddTable) -> Self {
        let p = group.p();
        let half = (0..group.size())
            .map(|u| (p != 2).then(|| group.smul_idx(p.div_ceil(2), u)))
            .collect();
        let full_words = DenseSet::full(group).words().to_vec();
        Ctx { group, table, half, full_words }
    }

    fn root(&self) -> Node {
        let mut blocked = vec![0u64; self.full_words.len()];
        blocked[0] |= 1;
        Node { members: Vec::new(), blocked }
    }

    #[inline]
    fn is_blocked(node: &Node, u: usize) -> bool {
        node.blocked[u / 64] >> (u % 64) & 1 == 1
    }

    fn child(&self, node: &Node, u: usize) -> Node {
        let t = self.table;
        let mut blocked = node.blocked.clone();
        let mut mark = |x: usize| blocked[x / 64] |= 1 << (x % 64);
        for &x in &node.members {
            mark(t.add(u, x));
            mark(t.sub(u, x));
            mark(t.sub(x, u));
        }
        mark(t.add(u, u));
        if let Some(h) = self.half[u] {
            mark(h);
        }
        let mut members = node.members.clone();
        members.push(u);
        Node { members, blocked }
    }

    fn candidates<'n>(&self, node: &'n Node) -> impl Iterator<Item = usize> + 'n {
        let start = node.members.last().map_or(0, |&m| m + 1);
        (start..self.group.size()).filter(move |&u| !Self::is_blocked(node, u))
    }

    /// No element outside `P` can join it.
    fn is_maximal(&self, node: &Node) -> bool {
        let mut covered = node.blocked.clone();
        for &m in &node.members {
            covered[m / 64] |= 1 << (m % 64);
        }
        covered == self.full_words
    }

    fn to_set(&self, node: &Node) -> DenseSet {
        DenseSet::from_indices_unchecked(self.group, node.members.iter().copied())
    }
}

struct Shared<'a> {
    cfg: &'a EnumerationConfig,
    nodes: AtomicU64,
    out_of_budget: AtomicBool,
}

impl Shared<'_> {
    /// Counts a node; false once the budget is spent.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.cfg.budget {
            self.out_of_budget.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Handles one node: counts it, applies pruning, records a maximal leaf and
/// returns the children to explore.
fn visit(ctx: &Ctx, shared: &Shared, node: &Node, found: &mut Vec<DenseSet>) -> Option<Vec<Node>> {
    if !shared.tick() {
        return None;
    }
    let cfg = shared.cfg;
    if cfg.symmetry && !node.members.is_empty() && node.members.len() <= cfg.canonical_depth
        && !is_canonical(&ctx.to_set(node)) {
            return Some(Vec::new());
        }
    let cands: Vec<usize> = ctx.candidates(node).collect();
    if node.members.len() + cands.len() < cfg.min_size {
        return Some(Vec::new());
    }
    if cands.is_empty() {
        if node.members.len() >= cfg.min_size && ctx.is_maximal(node) {
            found.push(ctx.to_set(node));
        }
        return Some(Vec::new());
    }
    Some(cands.into_iter().map(|u| ctx.child(node, u)).collect())
}

fn dfs(ctx: &Ctx, shared: &Shared, node: Node, found: &mut Vec<DenseSet>) {
    let mut stack = vec![node];
    while let Some(n) = stack.pop() {
        if shared.out_of_budget.load(Ordering::Relaxed) {
            return;
        }
        match visit(ctx, shared, &n, found) {
            None => return,
            Some(children) => stack.extend(children.into_iter().rev()),
        }
    }
}

/// Enumerates maximal sum-free sets of size at least `cfg.min_size`.
pub fn enumerate_maximal_sumfree(group: GroupSpec, cfg: &EnumerationConfig) -> EnumerationRun {
    let table = group.add_table();
    let ctx = Ctx::new(group, &table);
    let shared = Shared { cfg, nodes: AtomicU64::new(0), out_of_budget: AtomicBool::new(false) };

    // expand the top of the tree sequentially, then hand out subtrees
    let mut found = Vec::new();
    let mut frontier = vec![ctx.root()];
    for _ in 0..SPLIT_DEPTH {
        let mut next = Vec::new();
        for node in &frontier {
            if let Some(children) = visit(&ctx, &shared, node, &mut found) {
                next.extend(children);
            }
        }
        frontier = next;
    }

    let explore = |node: &Node| {
        let mut local = Vec::new();
        dfs(&ctx, &shared, node.clone(), &mut local);
        if cfg.symmetry {
            local
                .into_iter()
                .map(|s| {
                    let f = canonical_form(&s);
                    (f.set.clone(), f.orbit_size())
                })
                .collect::<Vec<_>>()
        } else {
            local.into_iter().map(|s| (s, 1)).collect()
        }
    };
    let results: Vec<Vec<(DenseSet, u128)>> = if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .expect("thread pool");
        pool.install(|| frontier.par_iter().map(explore).collect())
    } else {
        frontier.iter().map(explore).collect()
    };

    let mut merged: BTreeMap<DenseSet, u64> = BTreeMap::new();
    let top = found.into_iter().map(|s| {
        if cfg.symmetry {
            let f = canonical_form(&s);
            (f.set.clone(), f.orbit_size())
        } else {
            (s, 1)
        }
    });
    for (set, orbit) in top.chain(results.into_iter().flatten()) {
        let orbit = u64::try_from(orbit).unwrap_or(u64::MAX);
        merged.entry(set).or_insert(orbit);
    }
    let exhaustive = !shared.out_of_budget.load(Ordering::Relaxed);
    let node_count = shared.nodes.load(Ordering::Relaxed).min(cfg.budget);
    EnumerationRun {
        group,
        min_size: cfg.min_size,
        symmetry: cfg.symmetry,
        reps: merged.into_iter().map(|(set, orbit_size)| FoundSet { set, orbit_size }).collect(),
        node_count,
        exhaustive,
    }
}

/// Calls `visit` on every sum-free subset of the group (including the empty
/// set), in depth-first ascending order.
pub fn for_each_sum_free(group: GroupSpec, mut visit: impl FnMut(&DenseSet)) {
    let table = group.add_table();
    let ctx = Ctx::new(group, &table);
    let mut stack = vec![ctx.root()];
    while let Some(node) = stack.pop() {
        visit(&ctx.to_set(&node));
        let children: Vec<Node> = ctx.candidates(&node).map(|u| ctx.child(&node, u)).collect();
        stack.extend(children.into_iter().rev());
    }
}

/// First sum-free set of exactly `size` elements (ascending DFS order)
/// accepted by `pred`, with the number of nodes visited.
pub fn find_sum_free_of_size(
    group: GroupSpec,
    size: usize,
    budget: u64,
    mut pred: impl FnMut(&DenseSet) -> bool,
) -> (Option<DenseSet>, u64, bool) {
    let table = group.add_table();
    let ctx = Ctx::new(group, &table);
    let mut stack = vec![ctx.root()];
    let mut nodes = 0u64;
    while let Some(node) = stack.pop() {
        if nodes >= budget {
            return (None, nodes, false);
        }
        nodes += 1;
        if node.members.len() == size {
            let s = ctx.to_set(&node);
            if pred(&s) {
                return (Some(s), nodes, true);
            }
            continue;
        }
        let children: Vec<Node> = ctx.candidates(&node).map(|u| ctx.child(&node, u)).collect();
        stack.extend(children.into_iter().rev());
    }
    (None, nodes, true)
}
