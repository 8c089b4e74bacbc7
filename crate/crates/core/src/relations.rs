//! Relation rewriting and bounded word equality in `B_k` of the sphere.
//!
//! The group is presented by far commutation (circular distance >= 2), the
//! braid relation at every circular index, and the sphere relator
//! `sigma_1 ... sigma_{k-2} sigma_{k-1}^2 sigma_{k-2} ... sigma_1 = 1`.
//! Equality checking is a bounded bidirectional search over free
//! reduction/insertion plus the enabled relation rules: sound, never
//! complete.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{BraidWord, GeneratorLetter, Sign, StrandCount};

/// Identifier of a rewriting rule drawn from the group presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationRule {
    /// `sigma_i sigma_j = sigma_j sigma_i` when the circular distance of the
    /// indices is at least 2. Signs are free.
    FarCommutation,
    /// `sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}`,
    /// applied with a uniform sign (the all-negative form is the inverse
    /// relation).
    YangBaxter,
    /// Deletes an occurrence of the sphere relator or its inverse.
    SphereRelation,
    /// Placeholder for an expansion of the wraparound generator. No sound
    /// reading of it exists, so the rule has no pattern and is disabled by
    /// default; the wraparound generator is handled as an ordinary circular
    /// generator by the other rules.
    SigmaKExpansion,
}

impl RelationRule {
    pub fn name(self) -> &'static str {
        match self {
            RelationRule::FarCommutation => "FarCommutation",
            RelationRule::YangBaxter => "YangBaxter",
            RelationRule::SphereRelation => "SphereRelation",
            RelationRule::SigmaKExpansion => "SigmaKExpansion",
        }
    }
}

/// How to read the far-commutation side condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CommutationReading {
    /// Circular distance >= 2: the geometric condition that the two
    /// crossings are disjoint.
    #[default]
    Circular,
    /// Plain `|i - j| > 2` on representatives. Exposed for experiments only;
    /// it wrongly commutes pairs that are adjacent across the wraparound.
    Literal,
}

/// Options for the bounded equality engine.
#[derive(Debug, Clone)]
pub struct EngineOptions {
    pub far_commutation: bool,
    pub yang_baxter: bool,
    pub sphere_relation: bool,
    /// Disabled by default and patternless; enabling it adds no edges.
    pub sigma_k_expansion: bool,
    pub commutation: CommutationReading,
    /// Cap on intermediate word length; `None` picks
    /// `max(len(a), len(b)) + 2(k-1) + 2`.
    pub max_word_length: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            far_commutation: true,
            yang_baxter: true,
            sphere_relation: true,
            sigma_k_expansion: false,
            commutation: CommutationReading::Circular,
            max_word_length: None,
        }
    }
}

fn commutes(strands: StrandCount, a: u16, b: u16, reading: CommutationReading) -> bool {
    match reading {
        CommutationReading::Circular => strands.distance(a, b) >= 2,
        CommutationReading::Literal => (i32::from(a) - i32::from(b)).abs() > 2,
    }
}

fn adjacent_up(strands: StrandCount, a: u16, b: u16) -> bool {
    strands.succ(a) == b || strands.succ(b) == a
}

/// Tries to match the relator (positive form) or its inverse (all-negative)
/// starting at `pos`; returns the inverted flag on success.
fn match_sphere_relator(word: &BraidWord, pos: usize) -> Option<bool> {
    let k = word.k();
    if k < 2 {
        return None;
    }
    let len = 2 * (k as usize - 1);
    let letters = word.letters();
    if pos + len > letters.len() {
        return None;
    }
    let mut indices = Vec::with_capacity(len);
    for i in 1..k - 1 {
        indices.push(i);
    }
    indices.push(k - 1);
    indices.push(k - 1);
    for i in (1..k - 1).rev() {
        indices.push(i);
    }
    let window = &letters[pos..pos + len];
    let sign = window[0].sign;
    if window
        .iter()
        .zip(&indices)
        .all(|(l, &idx)| l.index == idx && l.sign == sign)
    {
        Some(sign == Sign::Neg)
    } else {
        None
    }
}

/// Applies one relation rule at `pos` under the default circular reading.
pub fn apply_relation(word: &BraidWord, rule: RelationRule, pos: usize) -> Result<BraidWord> {
    apply_relation_with(word, rule, pos, CommutationReading::Circular)
}

/// Applies one relation rule at `pos`.
///
/// The matched subword is replaced; the induced permutation and the abelian
/// class are unchanged.
pub fn apply_relation_with(
    word: &BraidWord,
    rule: RelationRule,
    pos: usize,
    reading: CommutationReading,
) -> Result<BraidWord> {
    let mismatch = || Error::PatternMismatch { rule: rule.name(), position: pos };
    let letters = word.letters();
    match rule {
        RelationRule::FarCommutation => {
            if pos + 2 > letters.len() {
                return Err(mismatch());
            }
            let (a, b) = (letters[pos], letters[pos + 1]);
            if !commutes(word.strands(), a.index, b.index, reading) {
                return Err(mismatch());
            }
            let mut out = letters.to_vec();
            out.swap(pos, pos + 1);
            BraidWord::from_letters(word.strands(), out)
        }
        RelationRule::YangBaxter => {
            if pos + 3 > letters.len() {
                return Err(mismatch());
            }
            let (a, b, c) = (letters[pos], letters[pos + 1], letters[pos + 2]);
            let uniform = a.sign == b.sign && b.sign == c.sign;
            if !(uniform && a.index == c.index && adjacent_up(word.strands(), a.index, b.index)) {
                return Err(mismatch());
            }
            let mut out = letters.to_vec();
            out[pos] = b;
            out[pos + 1] = a;
            out[pos + 2] = b;
            BraidWord::from_letters(word.strands(), out)
        }
        RelationRule::SphereRelation => {
            if match_sphere_relator(word, pos).is_none() {
                return Err(mismatch());
            }
            let len = 2 * (word.k() as usize - 1);
            let mut out = letters.to_vec();
            out.drain(pos..pos + len);
            BraidWord::from_letters(word.strands(), out)
        }
        RelationRule::SigmaKExpansion => Err(mismatch()),
    }
}

/// One edge of the equality search: a reversible word rewrite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RewriteOp {
    /// Delete the adjacent inverse pair at the position.
    DeletePair,
    /// Insert `sigma_index^sign sigma_index^-sign` at the position.
    InsertPair { index: u16, sign: Sign },
    /// Braid relation at the position.
    YangBaxter,
    /// Far commutation at the position.
    FarCommutation,
    /// Delete the sphere relator (`inverted` selects the all-negative form).
    SphereDelete { inverted: bool },
    /// Insert the sphere relator.
    SphereInsert { inverted: bool },
}

/// A rewrite op anchored at a letter position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RewriteStep {
    pub op: RewriteOp,
    pub position: usize,
}

impl RewriteStep {
    /// The step that undoes `self`, given the word `self` was applied to.
    pub fn inverse_from(self, source: &BraidWord) -> RewriteStep {
        let op = match self.op {
            RewriteOp::DeletePair => {
                let letter = source.letters()[self.position];
                RewriteOp::InsertPair { index: letter.index, sign: letter.sign }
            }
            RewriteOp::InsertPair { .. } => RewriteOp::DeletePair,
            RewriteOp::YangBaxter => RewriteOp::YangBaxter,
            RewriteOp::FarCommutation => RewriteOp::FarCommutation,
            RewriteOp::SphereDelete { inverted } => RewriteOp::SphereInsert { inverted },
            RewriteOp::SphereInsert { inverted } => RewriteOp::SphereDelete { inverted },
        };
        RewriteStep { op, position: self.position }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op {
            RewriteOp::DeletePair => write!(f, "del@{}", self.position),
            RewriteOp::InsertPair { index, sign } => {
                write!(f, "ins{}{}@{}", sign.symbol(), index, self.position)
            }
            RewriteOp::YangBaxter => write!(f, "yang@{}", self.position),
            RewriteOp::FarCommutation => write!(f, "far@{}", self.position),
            RewriteOp::SphereDelete { inverted } => {
                write!(f, "sphdel{}@{}", if inverted { '-' } else { '+' }, self.position)
            }
            RewriteOp::SphereInsert { inverted } => {
                write!(f, "sphins{}@{}", if inverted { '-' } else { '+' }, self.position)
            }
        }
    }
}

/// Reason a bounded equality check stayed inconclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknownReason {
    /// Induced permutations or abelian classes differ: the words are
    /// certainly not equal.
    NotEqualByInvariant { permutation: bool, abelian: bool },
    BudgetExceeded,
    Exhausted,
}

/// Outcome of [`word_equal_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordEquality {
    /// Equal in the group, witnessed by a rewrite path from left to right.
    Equal(Vec<RewriteStep>),
    Unknown(UnknownReason),
}

impl WordEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, WordEquality::Equal(_))
    }
}

fn apply_step(word: &BraidWord, step: RewriteStep) -> Option<BraidWord> {
    let letters = word.letters();
    let p = step.position;
    match step.op {
        RewriteOp::DeletePair => {
            if p + 2 > letters.len() || !letters[p].is_inverse_of(letters[p + 1]) {
                return None;
            }
            let mut out = letters.to_vec();
            out.drain(p..p + 2);
            BraidWord::from_letters(word.strands(), out).ok()
        }
        RewriteOp::InsertPair { index, sign } => {
            if p > letters.len() {
                return None;
            }
            let mut out = letters.to_vec();
            out.insert(p, GeneratorLetter::new(index, sign.flip()));
            out.insert(p, GeneratorLetter::new(index, sign));
            BraidWord::from_letters(word.strands(), out).ok()
        }
        RewriteOp::YangBaxter => apply_relation(word, RelationRule::YangBaxter, p).ok(),
        RewriteOp::FarCommutation => apply_relation(word, RelationRule::FarCommutation, p).ok(),
        RewriteOp::SphereDelete { inverted } => {
            if match_sphere_relator(word, p) != Some(inverted) {
                return None;
            }
            apply_relation(word, RelationRule::SphereRelation, p).ok()
        }
        RewriteOp::SphereInsert { inverted } => {
            if p > letters.len() {
                return None;
            }
            let mut relator = crate::word::sphere_relator(word.strands()).ok()?;
            if inverted {
                relator = relator.invert();
            }
            let mut out = letters.to_vec();
            out.splice(p..p, relator.letters().iter().copied());
            BraidWord::from_letters(word.strands(), out).ok()
        }
    }
}

/// Replays a rewrite path; used to validate reported equalities.
pub fn replay_rewrites(start: &BraidWord, steps: &[RewriteStep]) -> Option<BraidWord> {
    let mut word = start.clone();
    for &step in steps {
        word = apply_step(&word, step)?;
    }
    Some(word)
}

/// Applicable steps at a node, in the deterministic step order.
fn neighbor_steps(word: &BraidWord, opts: &EngineOptions, max_len: usize) -> Vec<RewriteStep> {
    let letters = word.letters();
    let k = word.k();
    let mut steps = Vec::new();

    for p in 0..letters.len().saturating_sub(1) {
        if letters[p].is_inverse_of(letters[p + 1]) {
            steps.push(RewriteStep { op: RewriteOp::DeletePair, position: p });
        }
    }
    if letters.len() + 2 <= max_len && k >= 2 {
        for index in 1..=k {
            for sign in [Sign::Pos, Sign::Neg] {
                for p in 0..=letters.len() {
                    steps.push(RewriteStep { op: RewriteOp::InsertPair { index, sign }, position: p });
                }
            }
        }
    }
    if opts.yang_baxter {
        for p in 0..letters.len().saturating_sub(2) {
            let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
            if a.sign == b.sign
                && b.sign == c.sign
                && a.index == c.index
                && adjacent_up(word.strands(), a.index, b.index)
            {
                steps.push(RewriteStep { op: RewriteOp::YangBaxter, position: p });
            }
        }
    }
    if opts.far_commutation {
        for p in 0..letters.len().saturating_sub(1) {
            if commutes(word.strands(), letters[p].index, letters[p + 1].index, opts.commutation) {
                steps.push(RewriteStep { op: RewriteOp::FarCommutation, position: p });
            }
        }
    }
    if opts.sphere_relation && k >= 2 {
        for p in 0..=letters.len() {
            if let Some(inverted) = match_sphere_relator(word, p) {
                steps.push(RewriteStep { op: RewriteOp::SphereDelete { inverted }, position: p });
            }
        }
        let relator_len = 2 * (k as usize - 1);
        if letters.len() + relator_len <= max_len {
            for inverted in [false, true] {
                for p in 0..=letters.len() {
                    steps.push(RewriteStep { op: RewriteOp::SphereInsert { inverted }, position: p });
                }
            }
        }
    }

    steps.sort();
    steps
}

struct SideState {
    visited: HashMap<BraidWord, (usize, Option<(BraidWord, RewriteStep)>)>,
    frontier: VecDeque<BraidWord>,
    depth_done: usize,
}

impl SideState {
    fn new(root: &BraidWord) -> Self {
        let mut visited = HashMap::new();
        visited.insert(root.clone(), (0, None));
        SideState { visited, frontier: VecDeque::from([root.clone()]), depth_done: 0 }
    }
}

/// Bounded equality in `B_k` of the sphere.
///
/// Fast-fails with `NotEqualByInvariant` when the induced permutations or
/// abelian classes differ; otherwise runs a bidirectional breadth-first
/// search over free reduction/insertion and the enabled relation rules.
/// `Equal` is sound; `Unknown` claims nothing beyond the budget. The
/// reported path is the shortest, with the lexicographically least step
/// sequence as tie-break, re-derived by a forward sweep bounded by the same
/// node budget.
pub fn word_equal_bounded(a: &BraidWord, b: &BraidWord, budget: usize) -> Result<WordEquality> {
    word_equal_bounded_with(a, b, budget, &EngineOptions::default())
}

pub fn word_equal_bounded_with(
    a: &BraidWord,
    b: &BraidWord,
    budget: usize,
    opts: &EngineOptions,
) -> Result<WordEquality> {
    if a.k() != b.k() {
        return Err(Error::StrandMismatch { left: a.k(), right: b.k() });
    }
    let perm_differs = a.permutation() != b.permutation();
    let abelian_differs = a.abelian_class() != b.abelian_class();
    if perm_differs || abelian_differs {
        return Ok(WordEquality::Unknown(UnknownReason::NotEqualByInvariant {
            permutation: perm_differs,
            abelian: abelian_differs,
        }));
    }
    if a == b {
        return Ok(WordEquality::Equal(Vec::new()));
    }

    let max_len = opts
        .max_word_length
        .unwrap_or(a.len().max(b.len()) + 2 * (a.k() as usize - 1).max(1) + 2);

    let mut fwd = SideState::new(a);
    let mut bwd = SideState::new(b);
    let mut expanded = 0usize;
    // All nodes seen from both sides, with their combined distance.
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
        let (side, other) = if forward_turn { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let level = side.frontier.len();
        for _ in 0..level {
            if expanded >= budget {
                out_of_budget = true;
                break;
            }
            expanded += 1;
            let node = side.frontier.pop_front().unwrap();
            let depth = side.visited[&node].0;
            for step in neighbor_steps(&node, opts, max_len) {
                let Some(next) = apply_step(&node, step) else { continue };
                if let Entry::Vacant(slot) = side.visited.entry(next.clone()) {
                    slot.insert((depth + 1, Some((node.clone(), step))));
                    if let Some(&(other_depth, _)) = other.visited.get(&next) {
                        meets.entry(next.clone()).or_insert(depth + 1 + other_depth);
                    }
                    side.frontier.push_back(next);
                }
            }
        }
        side.depth_done += 1;
        if let Some(min_total) = meets.values().copied().min() {
            best_total = Some(best_total.map_or(min_total, |b| b.min(min_total)));
        }
        if out_of_budget {
            break;
        }
    }

    let Some(best) = best_total else {
        return Ok(WordEquality::Unknown(if out_of_budget {
            UnknownReason::BudgetExceeded
        } else {
            UnknownReason::Exhausted
        }));
    };

    // Canonical path: forward-only sweep bounded by the established distance;
    // FIFO order with sorted steps yields the lexicographically least
    // shortest sequence. Falls back to the bidirectional trees if the sweep
    // runs out of budget.
    if let Some(path) = canonical_rewrite_path(a, b, best, budget, opts, max_len) {
        return Ok(WordEquality::Equal(path));
    }
    let (meet, _) = meets
        .iter()
        .filter(|&(_, &total)| total == best)
        .min_by(|(m1, _), (m2, _)| {
            stitched_path(m1, &fwd, &bwd).cmp(&stitched_path(m2, &fwd, &bwd))
        })
        .expect("best_total came from meets");
    Ok(WordEquality::Equal(stitched_path(meet, &fwd, &bwd)))
}

fn stitched_path(meet: &BraidWord, fwd: &SideState, bwd: &SideState) -> Vec<RewriteStep> {
    let mut steps = Vec::new();
    let mut cur = meet.clone();
    while let Some((_, Some((prev, step)))) = fwd.visited.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    let mut cur = meet.clone();
    while let Some((_, Some((next, step)))) = bwd.visited.get(&cur) {
        // The stored step was applied at `next`; undoing it walks cur -> next.
        steps.push(step.inverse_from(next));
        cur = next.clone();
    }
    steps
}

fn canonical_rewrite_path(
    a: &BraidWord,
    b: &BraidWord,
    distance: usize,
    budget: usize,
    opts: &EngineOptions,
    max_len: usize,
) -> Option<Vec<RewriteStep>> {
    let mut visited: HashMap<BraidWord, Option<(BraidWord, RewriteStep)>> = HashMap::new();
    visited.insert(a.clone(), None);
    let mut frontier = VecDeque::from([(a.clone(), 0usize)]);
    let mut expanded = 0usize;
    while let Some((node, depth)) = frontier.pop_front() {
        if depth >= distance {
            continue;
        }
        if expanded >= budget {
            return None;
        }
        expanded += 1;
        for step in neighbor_steps(&node, opts, max_len) {
            let Some(next) = apply_step(&node, step) else { continue };
            if let Entry::Vacant(slot) = visited.entry(next.clone()) {
                slot.insert(Some((node.clone(), step)));
                if next == *b {
                    let mut steps = Vec::new();
                    let mut cur = next;
                    while let Some(Some((prev, step))) = visited.get(&cur) {
                        steps.push(*step);
                        cur = prev.clone();
                    }
                    steps.reverse();
                    return Some(steps);
                }
                frontier.push_back((next, depth + 1));
            }
        }
    }
    None
}
