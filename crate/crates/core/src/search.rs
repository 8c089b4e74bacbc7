//! Bounded bidirectional search over the move graph.
//!
//! Nodes are free-reduced words keyed by `(k, letters)`; edges come from
//! [`enumerate_moves`]. A connection certificate is a replayable move path;
//! failure to connect within the caps says nothing about the links beyond
//! the caps themselves.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::moves::{apply_move, enumerate_moves, MoveApplication, MoveId};
use crate::plat::{component_count, component_homology};
use crate::word::BraidWord;

/// Caps and budget for one search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Largest strand count a node may reach (even).
    pub max_strands: u16,
    /// Longest word a node may have, in letters.
    pub max_word_length: usize,
    /// Maximum number of node expansions across both frontiers.
    pub node_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_strands: 12, max_word_length: 40, node_budget: 100_000 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_strands == 0 || self.max_word_length == 0 {
            return Err(Error::ConfigError { reason: "caps must be positive".into() });
        }
        if self.max_strands % 2 != 0 {
            return Err(Error::ConfigError {
                reason: format!("max_strands = {} must be even", self.max_strands),
            });
        }
        Ok(())
    }
}

/// Which provable obstruction separated the two closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantMismatch {
    ComponentCount { left: usize, right: usize },
    HomologyMultiset,
}

impl std::fmt::Display for InvariantMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvariantMismatch::ComponentCount { left, right } => {
                write!(f, "ComponentCount({left} vs {right})")
            }
            InvariantMismatch::HomologyMultiset => write!(f, "HomologyMultiset"),
        }
    }
}

/// Search verdict. `Connected` carries a replayable path; `Exhausted` means
/// both frontiers emptied within the caps; `BudgetExceeded` means the node
/// budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    Connected(Vec<MoveApplication>),
    Exhausted,
    BudgetExceeded,
    DistinguishedByInvariant(InvariantMismatch),
}

impl SearchVerdict {
    pub fn is_connected(&self) -> bool {
        matches!(self, SearchVerdict::Connected(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            SearchVerdict::Connected(_) => "Connected",
            SearchVerdict::Exhausted => "Exhausted",
            SearchVerdict::BudgetExceeded => "BudgetExceeded",
            SearchVerdict::DistinguishedByInvariant(_) => "DistinguishedByInvariant",
        }
    }
}

/// Verdict plus accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: SearchVerdict,
    pub nodes_expanded: usize,
    pub max_depth_reached: usize,
    pub wall_time_ms: u128,
}

impl SearchOutcome {
    /// JSON form; timing is optional so default output stays byte-stable
    /// across thread counts and machines.
    pub fn to_json(&self, include_timing: bool) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("verdict".into(), self.verdict.name().into());
        match &self.verdict {
            SearchVerdict::Connected(path) => {
                obj.insert("path".into(), serde_json::to_value(path).expect("serializable"));
            }
            SearchVerdict::DistinguishedByInvariant(reason) => {
                obj.insert("reason".into(), reason.to_string().into());
            }
            _ => {}
        }
        obj.insert("nodes_expanded".into(), self.nodes_expanded.into());
        obj.insert("max_depth_reached".into(), self.max_depth_reached.into());
        if include_timing {
            obj.insert("wall_time_ms".into(), (self.wall_time_ms as u64).into());
        }
        serde_json::Value::Object(obj)
    }
}

impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SearchOutcome", 4)?;
        s.serialize_field("verdict", self.verdict.name())?;
        match &self.verdict {
            SearchVerdict::Connected(path) => s.serialize_field("path", path)?,
            SearchVerdict::DistinguishedByInvariant(reason) => {
                s.serialize_field("reason", &reason.to_string())?
            }
            _ => s.skip_field("path")?,
        }
        s.serialize_field("nodes_expanded", &self.nodes_expanded)?;
        s.serialize_field("max_depth_reached", &self.max_depth_reached)?;
        s.end()
    }
}

fn canonical(word: &BraidWord) -> BraidWord {
    word.free_reduce()
}

fn homology_multiset(word: &BraidWord) -> Result<Vec<u8>> {
    let mut h = component_homology(word)?;
    h.sort_unstable();
    Ok(h)
}

/// Move edges out of a node that respect the caps, in deterministic order.
fn edges(word: &BraidWord, cfg: &SearchConfig) -> Result<Vec<MoveApplication>> {
    let apps = enumerate_moves(word, cfg.max_strands)?;
    Ok(apps
        .into_iter()
        .filter(|app| app.after.len() <= cfg.max_word_length)
        .collect())
}

struct Tree {
    // node -> (depth, parent node and the path-direction move into this node
    // when walking away from the root)
    visited: HashMap<BraidWord, (usize, Option<(BraidWord, MoveId)>)>,
    frontier: VecDeque<BraidWord>,
    depth_done: usize,
}

impl Tree {
    fn new(root: BraidWord) -> Self {
        let mut visited = HashMap::new();
        visited.insert(root.clone(), (0, None));
        Tree { visited, frontier: VecDeque::from([root]), depth_done: 0 }
    }
}

/// Decides bounded M-equivalence of two plat words.
///
/// Provable obstructions (component count, homology multiset) are checked
/// first; equality of canonical forms is a trivial connection. Otherwise a
/// bidirectional breadth-first search runs until the frontiers meet, both
/// empty out, or the budget is spent. The reported path is the shortest,
/// with the lexicographically least move-string sequence as the tie-break,
/// re-derived by a forward sweep within the same node budget.
pub fn m_equivalent(a: &BraidWord, b: &BraidWord, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    for word in [a, b] {
        if !word.strands().is_even() {
            return Err(Error::OddStrandCount { k: word.k() });
        }
        if word.k() > cfg.max_strands {
            return Err(Error::ConfigError {
                reason: format!("word in B_{} exceeds max_strands {}", word.k(), cfg.max_strands),
            });
        }
    }
    let started = Instant::now();
    let mut stats = (0usize, 0usize); // (nodes_expanded, max_depth)

    let count_a = component_count(a)?;
    let count_b = component_count(b)?;
    if count_a != count_b {
        return Ok(SearchOutcome {
            verdict: SearchVerdict::DistinguishedByInvariant(InvariantMismatch::ComponentCount {
                left: count_a,
                right: count_b,
            }),
            nodes_expanded: 0,
            max_depth_reached: 0,
            wall_time_ms: started.elapsed().as_millis(),
        });
    }
    if homology_multiset(a)? != homology_multiset(b)? {
        return Ok(SearchOutcome {
            verdict: SearchVerdict::DistinguishedByInvariant(InvariantMismatch::HomologyMultiset),
            nodes_expanded: 0,
            max_depth_reached: 0,
            wall_time_ms: started.elapsed().as_millis(),
        });
    }

    let start = canonical(a);
    let goal = canonical(b);
    if start == goal {
        return Ok(SearchOutcome {
            verdict: SearchVerdict::Connected(Vec::new()),
            nodes_expanded: 0,
            max_depth_reached: 0,
            wall_time_ms: started.elapsed().as_millis(),
        });
    }

    let mut fwd = Tree::new(start.clone());
    let mut bwd = Tree::new(goal.clone());
    let mut meets: HashMap<BraidWord, usize> = HashMap::new();
    let mut best_total: Option<usize> = None;
    let mut out_of_budget = false;

    while !fwd.frontier.is_empty() || !bwd.frontier.is_empty() {
        if let Some(best) = best_total {
            if fwd.depth_done + bwd.depth_done >= best {
                break;
            }
        }
        let forward_turn = match (fwd.frontier.is_empty(), bwd.frontier.is_empty()) {
            (false, true) => true,
            (true, false) => false,
            _ => fwd.frontier.len() <= bwd.frontier.len(),
        };
        let (tree, other) = if forward_turn { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };

        let level: Vec<BraidWord> = {
            let take = tree.frontier.len().min(cfg.node_budget - stats.0.min(cfg.node_budget));
            if take < tree.frontier.len() {
                out_of_budget = true;
            }
            tree.frontier.drain(..take).collect()
        };
        if level.is_empty() {
            break;
        }
        stats.0 += level.len();

        // Deterministic parallel expansion: results are merged in frontier
        // order, so first-wins parent links do not depend on scheduling.
        let expansions: Vec<Vec<(BraidWord, MoveId)>> = level
            .par_iter()
            .map(|node| {
                let apps = edges(node, cfg).unwrap_or_default();
                if forward_turn {
                    apps.into_iter().map(|app| (app.after, app.move_id)).collect()
                } else {
                    // Backward edge u -> node must replay in the path
                    // direction; keep it only when the inverse move really
                    // maps u back onto node after reduction.
                    apps.into_iter()
                        .filter_map(|app| {
                            let inv = app.move_id.inverse();
                            let back = apply_move(&app.after, &inv).ok()?.free_reduce();
                            (back == *node).then_some((app.after, inv))
                        })
                        .collect()
                }
            })
            .collect();

        for (node, outs) in level.iter().zip(expansions) {
            let depth = tree.visited[node].0;
            stats.1 = stats.1.max(depth + 1);
            for (next, move_id) in outs {
                if let Entry::Vacant(slot) = tree.visited.entry(next.clone()) {
                    slot.insert((depth + 1, Some((node.clone(), move_id))));
                    if let Some(&(other_depth, _)) = other.visited.get(&next) {
                        meets.entry(next.clone()).or_insert(depth + 1 + other_depth);
                    }
                    tree.frontier.push_back(next);
                }
            }
        }
        tree.depth_done += 1;
        if let Some(min_total) = meets.values().copied().min() {
            best_total = Some(best_total.map_or(min_total, |b| b.min(min_total)));
        }
        if out_of_budget {
            break;
        }
    }

    let Some(best) = best_total else {
        let verdict = if out_of_budget { SearchVerdict::BudgetExceeded } else { SearchVerdict::Exhausted };
        return Ok(SearchOutcome {
            verdict,
            nodes_expanded: stats.0,
            max_depth_reached: stats.1,
            wall_time_ms: started.elapsed().as_millis(),
        });
    };

    let path = canonical_move_path(&start, &goal, best, cfg)
        .unwrap_or_else(|| stitched_move_path(&pick_meet(&meets, best, &fwd, &bwd), &fwd, &bwd));
    debug_assert!(replay_moves(&start, &path).as_ref() == Some(&goal));
    Ok(SearchOutcome {
        verdict: SearchVerdict::Connected(path),
        nodes_expanded: stats.0,
        max_depth_reached: stats.1,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

fn pick_meet(
    meets: &HashMap<BraidWord, usize>,
    best: usize,
    fwd: &Tree,
    bwd: &Tree,
) -> BraidWord {
    meets
        .iter()
        .filter(|&(_, &total)| total == best)
        .map(|(node, _)| node.clone())
        .min_by(|m1, m2| {
            let p1: Vec<String> =
                stitched_move_path(m1, fwd, bwd).iter().map(|a| a.move_id.to_string()).collect();
            let p2: Vec<String> =
                stitched_move_path(m2, fwd, bwd).iter().map(|a| a.move_id.to_string()).collect();
            p1.cmp(&p2)
        })
        .expect("best total came from meets")
}

fn stitched_move_path(meet: &BraidWord, fwd: &Tree, bwd: &Tree) -> Vec<MoveApplication> {
    let mut apps = Vec::new();
    let mut cur = meet.clone();
    while let Some((_, Some((prev, move_id)))) = fwd.visited.get(&cur) {
        apps.push(MoveApplication { move_id: *move_id, before: prev.clone(), after: cur.clone() });
        cur = prev.clone();
    }
    apps.reverse();
    let mut cur = meet.clone();
    while let Some((_, Some((next, move_id)))) = bwd.visited.get(&cur) {
        apps.push(MoveApplication { move_id: *move_id, before: cur.clone(), after: next.clone() });
        cur = next.clone();
    }
    apps
}

/// Forward-only sweep bounded by the known distance; FIFO order over the
/// deterministic edge order yields the lexicographically least shortest
/// move sequence. `None` when the sweep exceeds the node budget.
fn canonical_move_path(
    start: &BraidWord,
    goal: &BraidWord,
    distance: usize,
    cfg: &SearchConfig,
) -> Option<Vec<MoveApplication>> {
    let mut visited: HashMap<BraidWord, Option<(BraidWord, MoveId)>> = HashMap::new();
    visited.insert(start.clone(), None);
    let mut frontier = VecDeque::from([(start.clone(), 0usize)]);
    let mut expanded = 0usize;
    while let Some((node, depth)) = frontier.pop_front() {
        if depth >= distance {
            continue;
        }
        if expanded >= cfg.node_budget {
            return None;
        }
        expanded += 1;
        for app in edges(&node, cfg).ok()? {
            if let Entry::Vacant(slot) = visited.entry(app.after.clone()) {
                slot.insert(Some((node.clone(), app.move_id)));
                if app.after == *goal {
                    let mut apps = Vec::new();
                    let mut cur = app.after;
                    while let Some(Some((prev, move_id))) = visited.get(&cur) {
                        apps.push(MoveApplication {
                            move_id: *move_id,
                            before: prev.clone(),
                            after: cur.clone(),
                        });
                        cur = prev.clone();
                    }
                    apps.reverse();
                    return Some(apps);
                }
                frontier.push_back((app.after, depth + 1));
            }
        }
    }
    None
}

/// Replays a move path on canonical nodes; `None` when a step fails.
pub fn replay_moves(start: &BraidWord, path: &[MoveApplication]) -> Option<BraidWord> {
    let mut word = canonical(start);
    for app in path {
        if canonical(&app.before) != word {
            return None;
        }
        word = apply_move(&word, &app.move_id).ok()?.free_reduce();
        if word != canonical(&app.after) {
            return None;
        }
    }
    Some(word)
}

/// Applies `count` seeded uniformly-random applicable moves within the caps
/// and returns the result together with the ground-truth path.
pub fn perturb(
    word: &BraidWord,
    count: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<(BraidWord, Vec<MoveApplication>)> {
    cfg.validate()?;
    if !word.strands().is_even() {
        return Err(Error::OddStrandCount { k: word.k() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = canonical(word);
    let mut path = Vec::with_capacity(count);
    for _ in 0..count {
        let options = edges(&current, cfg)?;
        if options.is_empty() {
            break;
        }
        let app = options[rng.gen_range(0..options.len())].clone();
        current = app.after.clone();
        path.push(app);
    }
    Ok((current, path))
}
