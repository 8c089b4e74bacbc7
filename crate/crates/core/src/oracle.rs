//! Independent component-count oracle over the explicit segment graph.
//!
//! Instead of the traversal permutation, this route lays out one vertex per
//! strand position per letter slot, adds edges for strand segments and
//! crossings, closes up with the internal and residual arcs, and counts
//! connected components by union-find.

use crate::error::Result;
use crate::word::BraidWord;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let mut a = self.find(a);
        let mut b = self.find(b);
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }

    pub(crate) fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

/// Counts closure components by union-find on the explicit 1-complex.
///
/// Must always agree with the traversal-based count.
pub fn oracle_component_count(word: &BraidWord) -> Result<usize> {
    let n = word.strands().half()?;
    let k = word.k() as usize;
    let levels = word.len() + 1;
    let mut uf = UnionFind::new(levels * k);
    let at = |level: usize, pos: u16| level * k + (pos as usize - 1);

    // Strand segments between consecutive slots; a crossing exchanges the two
    // positions it touches.
    for (t, letter) in word.letters().iter().enumerate() {
        let a = letter.index;
        let b = word.strands().succ(a);
        for pos in 1..=k as u16 {
            if pos == a {
                uf.union(at(t, a), at(t + 1, b));
            } else if pos == b {
                uf.union(at(t, b), at(t + 1, a));
            } else {
                uf.union(at(t, pos), at(t + 1, pos));
            }
        }
    }

    // Internal arcs close the innermost level; residual arcs close the
    // outermost level through the antipodal identification.
    let last = word.len();
    for j in 1..=n {
        uf.union(at(last, 2 * j - 1), at(last, 2 * j));
        uf.union(at(0, j), at(0, j + n));
    }

    Ok(uf.component_count())
}
