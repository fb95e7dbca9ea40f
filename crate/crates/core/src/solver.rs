//! Exact maximum coclique (intersecting subset) and maximum clique
//! (semiregular subset) search on derangement graphs.
//!
//! Both run the same branch-and-bound clique engine over row bitsets: the
//! coclique search works on the complement, which is materialized up front
//! since `n <= 5000` keeps rows small. Branching is by ascending vertex
//! index and the incumbent is grown deterministically, so node counts and
//! witnesses are reproducible.

use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::derangement::ActionProfile;
use crate::perm::TransitiveAction;

/// Exact-mode vertex cap.
pub const EXACT_VERTEX_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("graph has {0} vertices, above the exact-mode cap {EXACT_VERTEX_CAP}")]
    TooLarge(usize),
}

/// The derangement graph `Cay(G, D)`: vertices are element indices, with
/// `u ~ v` when `u v^{-1}` is a derangement.
pub struct DerangementGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    degree: u64,
    action: Arc<TransitiveAction>,
}

impl DerangementGraph {
    pub fn from_profile(profile: &ActionProfile) -> Result<DerangementGraph, SolverError> {
        let action = profile.action().clone();
        let table = action.group();
        let n = table.order();
        if n > EXACT_VERTEX_CAP {
            return Err(SolverError::TooLarge(n));
        }
        let words = n.div_ceil(64);
        let mut adj = vec![0u64; n * words];
        let derangements = profile.derangement_elements();
        for u in 0..n as u32 {
            for &d in &derangements {
                // v = d u has ratio v u^{-1} = d
                let v = table.mul(d, u);
                adj[u as usize * words + v as usize / 64] |= 1u64 << (v % 64);
            }
        }
        Ok(DerangementGraph {
            n,
            words,
            adj,
            degree: profile.derangement_count(),
            action,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn action(&self) -> &Arc<TransitiveAction> {
        &self.action
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize * self.words + v as usize / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    /// Complement rows (no loops): the "fixing graph" whose cliques are the
    /// intersecting subsets.
    fn complement_rows(&self) -> Vec<u64> {
        let mut rows = vec![0u64; self.n * self.words];
        for u in 0..self.n {
            let src = self.row(u);
            let dst = &mut rows[u * self.words..(u + 1) * self.words];
            for (d, &s) in dst.iter_mut().zip(src.iter()) {
                *d = !s;
            }
            // clear the diagonal and the padding tail
            dst[u / 64] &= !(1u64 << (u % 64));
            let tail = self.n % 64;
            if tail != 0 {
                dst[self.words - 1] &= (1u64 << tail) - 1;
            }
        }
        rows
    }
}

/// Result of a clique/coclique search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_set: Vec<u32>,
    pub optimal: bool,
    pub upper_bound_used: Option<f64>,
    pub nodes_explored: u64,
    pub time_limit_hit: bool,
}

/// Maximum intersecting subset: maximum clique of the complement graph,
/// seeded through the identity vertex (valid by vertex transitivity). Pass
/// a known upper bound (Hoffman value, semiregular bound) as `prune_bound`;
/// when the incumbent reaches its floor the search stops early as optimal.
pub fn max_coclique(
    graph: &DerangementGraph,
    prune_bound: Option<f64>,
    time_limit: Duration,
    paranoia: bool,
) -> SearchResult {
    let rows = graph.complement_rows();
    clique_engine(&rows, graph.n, graph.words, prune_bound, time_limit, !paranoia)
}

/// Maximum semiregular subset: maximum clique through the identity vertex.
pub fn max_clique(
    graph: &DerangementGraph,
    prune_bound: Option<f64>,
    time_limit: Duration,
) -> SearchResult {
    // every semiregular subset contains the identity by definition
    clique_engine(&graph.adj, graph.n, graph.words, prune_bound, time_limit, true)
}

struct Ctx<'a> {
    rows: &'a [u64],
    words: usize,
    best: Vec<u32>,
    current: Vec<u32>,
    nodes: u64,
    cutoff: Option<u64>,
    deadline: Instant,
    hit_limit: bool,
    scratch_colors: Vec<Vec<u64>>,
}

fn bits(set: &[u64]) -> impl Iterator<Item = u32> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros();
                word &= word - 1;
                Some(w as u32 * 64 + b)
            }
        })
    })
}

fn popcount(set: &[u64]) -> u64 {
    set.iter().map(|w| w.count_ones() as u64).sum()
}

fn clique_engine(
    rows: &[u64],
    n: usize,
    words: usize,
    prune_bound: Option<f64>,
    time_limit: Duration,
    seed_identity: bool,
) -> SearchResult {
    let cutoff = prune_bound.map(|b| (b + 1e-9).floor() as u64);
    let mut ctx = Ctx {
        rows,
        words,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        cutoff,
        deadline: Instant::now() + time_limit,
        hit_limit: false,
        scratch_colors: Vec::new(),
    };

    // deterministic greedy incumbent from each start vertex
    let starts: Vec<u32> = if seed_identity { vec![0] } else { (0..n as u32).collect() };
    for &s in &starts {
        let mut cand = vec![0u64; words];
        cand.copy_from_slice(&rows[s as usize * words..(s as usize + 1) * words]);
        let mut cur = vec![s];
        loop {
            let Some(v) = bits(&cand).next() else { break };
            cur.push(v);
            intersect(&mut cand, &rows[v as usize * words..(v as usize + 1) * words]);
        }
        if cur.len() > ctx.best.len() {
            ctx.best = cur;
        }
        if done(&ctx) {
            break;
        }
    }

    if !done(&ctx) {
        if seed_identity {
            let mut cand = vec![0u64; words];
            cand.copy_from_slice(&rows[0..words]);
            ctx.current.push(0);
            expand(&mut ctx, &cand);
            ctx.current.pop();
        } else {
            let mut cand = vec![u64::MAX; words];
            let tail = n % 64;
            if tail != 0 {
                cand[words - 1] = (1u64 << tail) - 1;
            }
            expand(&mut ctx, &cand);
        }
    }

    let optimal = !ctx.hit_limit;
    SearchResult {
        best_set: {
            let mut b = ctx.best;
            b.sort_unstable();
            b
        },
        optimal,
        upper_bound_used: prune_bound,
        nodes_explored: ctx.nodes,
        time_limit_hit: ctx.hit_limit,
    }
}

fn done(ctx: &Ctx) -> bool {
    matches!(ctx.cutoff, Some(c) if ctx.best.len() as u64 >= c)
}

fn intersect(dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src.iter()) {
        *d &= s;
    }
}

/// Greedy sequential coloring of the candidate set in index order; the
/// number of colors bounds the largest clique inside it.
fn color_bound(ctx: &mut Ctx, cand: &[u64]) -> u64 {
    let words = ctx.words;
    let mut classes: Vec<Vec<u64>> = std::mem::take(&mut ctx.scratch_colors);
    let mut used = 0usize;
    for v in bits(cand) {
        let row = &ctx.rows[v as usize * words..(v as usize + 1) * words];
        let mut placed = false;
        for class in classes.iter_mut().take(used) {
            // independent from everything in the class?
            if class.iter().zip(row.iter()).all(|(&c, &r)| c & r == 0) {
                class[v as usize / 64] |= 1u64 << (v % 64);
                placed = true;
                break;
            }
        }
        if !placed {
            if used == classes.len() {
                classes.push(vec![0u64; words]);
            } else {
                classes[used].iter_mut().for_each(|w| *w = 0);
            }
            classes[used][v as usize / 64] |= 1u64 << (v % 64);
            used += 1;
        }
    }
    for class in classes.iter_mut() {
        class.iter_mut().for_each(|w| *w = 0);
    }
    ctx.scratch_colors = classes;
    used as u64
}

fn expand(ctx: &mut Ctx, cand: &[u64]) {
    ctx.nodes += 1;
    if ctx.nodes % 2048 == 0 && Instant::now() > ctx.deadline {
        ctx.hit_limit = true;
    }
    if ctx.hit_limit || done(ctx) {
        return;
    }
    let remaining = popcount(cand);
    if remaining == 0 {
        if ctx.current.len() > ctx.best.len() {
            ctx.best = ctx.current.clone();
        }
        return;
    }
    if ctx.current.len() as u64 + remaining <= ctx.best.len() as u64 {
        return;
    }
    let colors = color_bound(ctx, cand);
    if ctx.current.len() as u64 + colors <= ctx.best.len() as u64 {
        return;
    }
    let mut rest = cand.to_vec();
    let verts: Vec<u32> = bits(cand).collect();
    for v in verts {
        // bound with the still-unexplored candidates
        let left = popcount(&rest);
        if ctx.current.len() as u64 + left <= ctx.best.len() as u64 {
            break;
        }
        rest[v as usize / 64] &= !(1u64 << (v % 64));
        let mut child = rest.clone();
        intersect(&mut child, &ctx.rows[v as usize * ctx.words..(v as usize + 1) * ctx.words]);
        ctx.current.push(v);
        if ctx.current.len() > ctx.best.len() {
            ctx.best = ctx.current.clone();
        }
        expand(ctx, &child);
        ctx.current.pop();
        if ctx.hit_limit || done(ctx) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derangement::{is_intersecting, is_semiregular, profile};
    use crate::perm::{coset_action, find_subgroup, GroupTable, Permutation, SubgroupShape};

    fn a5() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        GroupTable::close_group(5, &[a, b]).unwrap()
    }

    #[test]
    fn regular_action_complete_graph() {
        let t = a5();
        let act = coset_action(t, &[0]).unwrap();
        let prof = profile(&act);
        let g = DerangementGraph::from_profile(&prof).unwrap();
        let co = max_coclique(&g, None, Duration::from_secs(10), false);
        assert!(co.optimal);
        assert_eq!(co.best_set.len(), 1);
        let cl = max_clique(&g, None, Duration::from_secs(10));
        assert!(cl.optimal);
        assert_eq!(cl.best_set.len(), 60);
    }

    #[test]
    fn a5_on_ten_points_coclique_12() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let g = DerangementGraph::from_profile(&prof).unwrap();
        let res = max_coclique(&g, None, Duration::from_secs(30), false);
        assert!(res.optimal);
        assert_eq!(res.best_set.len(), 12);
        assert!(is_intersecting(&prof, &res.best_set).unwrap());
        // the same size arrives faster with the semiregular prune bound
        let res2 = max_coclique(&g, Some(12.0), Duration::from_secs(30), false);
        assert!(res2.optimal);
        assert_eq!(res2.best_set.len(), 12);
    }

    #[test]
    fn a5_on_ten_points_clique_contains_z5() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let g = DerangementGraph::from_profile(&prof).unwrap();
        let res = max_clique(&g, None, Duration::from_secs(30));
        assert!(res.optimal);
        assert!(res.best_set.len() >= 5);
        assert!(is_semiregular(&prof, &res.best_set).unwrap());
        // Proposition-style sanity: clique * coclique <= |G|
        let co = max_coclique(&g, None, Duration::from_secs(30), false);
        assert!(res.best_set.len() as u64 * co.best_set.len() as u64 <= 60);
    }

    #[test]
    fn paranoia_mode_agrees() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let g = DerangementGraph::from_profile(&prof).unwrap();
        let seeded = max_coclique(&g, None, Duration::from_secs(30), false);
        let full = max_coclique(&g, None, Duration::from_secs(60), true);
        assert_eq!(seeded.best_set.len(), full.best_set.len());
    }

    #[test]
    fn vertex_degree_matches_derangement_count() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let g = DerangementGraph::from_profile(&prof).unwrap();
        for u in 0..60u32 {
            let deg = (0..60u32).filter(|&v| g.adjacent(u, v)).count() as u64;
            assert_eq!(deg, g.degree());
            assert!(!g.adjacent(u, u));
        }
        // symmetry
        for u in 0..60u32 {
            for v in 0..60u32 {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
        }
    }
}
