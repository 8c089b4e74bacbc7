//! Invariants of the projective plat closure of a word in `B_{2n}`.
//!
//! A plat closure caps the inner boundary of the annulus with the internal
//! tangle (arcs joining `2j-1` to `2j`) and the outer boundary with the
//! residual tangle (arcs joining antipodal indices `i` and `i+n` through the
//! twisted side of the space). Components of the closure are read off the
//! alternation of the two matchings through the braid.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{BraidWord, StrandCount};

/// The internal-tangle matching `g`: `2j-1 <-> 2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InternalMatching {
    strands: StrandCount,
}

impl InternalMatching {
    pub fn new(strands: StrandCount) -> Result<Self> {
        strands.half()?;
        Ok(InternalMatching { strands })
    }

    pub fn apply(&self, i: u16) -> u16 {
        if i % 2 == 1 {
            i + 1
        } else {
            i - 1
        }
    }

    pub fn as_permutation(&self) -> Permutation {
        let images = (1..=self.strands.get()).map(|i| self.apply(i)).collect();
        Permutation::from_images(images).expect("pairing is a bijection")
    }
}

/// The residual-tangle matching `s`: `i <-> i+n`, antipodal indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualMatching {
    strands: StrandCount,
}

impl ResidualMatching {
    pub fn new(strands: StrandCount) -> Result<Self> {
        strands.half()?;
        Ok(ResidualMatching { strands })
    }

    pub fn apply(&self, i: u16) -> u16 {
        let n = self.strands.get() / 2;
        self.strands.shift(i, i64::from(n))
    }

    pub fn as_permutation(&self) -> Permutation {
        let images = (1..=self.strands.get()).map(|i| self.apply(i)).collect();
        Permutation::from_images(images).expect("pairing is a bijection")
    }
}

/// Label of the antipodal coset `{i, i+n}`, represented by its member in
/// `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CosetLabel(pub u16);

/// Coset label of a point index, for `k = 2n`.
pub fn coset_label(strands: StrandCount, i: u16) -> CosetLabel {
    let n = strands.get() / 2;
    CosetLabel((i - 1) % n + 1)
}

/// `F = f^-1 g f`: the fixed-point-free involution on bottom indices given by
/// travelling through the braid, across the internal tangle, and back.
pub fn internal_map(word: &BraidWord) -> Result<Permutation> {
    let g = InternalMatching::new(word.strands())?;
    let f = word.permutation();
    let f_inv = f.inverse();
    let images = (1..=word.k())
        .map(|i| f_inv.apply(g.apply(f.apply(i))))
        .collect();
    Ok(Permutation::from_images(images).expect("conjugate of a bijection"))
}

/// The traversal step `phi = s . F` on bottom indices: one passage through
/// the braid and internal tangle followed by one residual arc.
pub fn traversal_map(word: &BraidWord) -> Result<Permutation> {
    let s = ResidualMatching::new(word.strands())?;
    let f_map = internal_map(word)?;
    let images = (1..=word.k()).map(|i| s.apply(f_map.apply(i))).collect();
    Ok(Permutation::from_images(images).expect("composite of bijections"))
}

/// Number of components of the plat closure: half the orbit count of the
/// traversal map, since each component is walked once in each direction.
pub fn component_count(word: &BraidWord) -> Result<usize> {
    let phi = traversal_map(word)?;
    let orbits = phi.cycles().len();
    debug_assert!(orbits % 2 == 0, "traversal orbits pair up by direction");
    Ok(orbits / 2)
}

/// The disjoint cycles of the residual permutation in canonical form.
///
/// Canonical form: each cycle starts at its least coset label and follows the
/// traversal direction started from that label's representative in `1..=n`;
/// cycles are sorted by least label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ResidualCycleSet {
    cycles: Vec<Vec<CosetLabel>>,
}

impl ResidualCycleSet {
    pub fn cycles(&self) -> &[Vec<CosetLabel>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

impl std::fmt::Display for ResidualCycleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, label) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", label.0)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Projects each traversal orbit to its coset labels, keeping one orbit per
/// opposite pair.
pub fn residual_cycles(word: &BraidWord) -> Result<ResidualCycleSet> {
    let n = word.strands().half()?;
    let phi = traversal_map(word)?;
    let mut used = vec![false; (n + 1) as usize];
    let mut cycles = Vec::new();
    for start_label in 1..=n {
        if used[start_label as usize] {
            continue;
        }
        // The representative of the least label in 1..=n fixes both the
        // orbit of the opposite pair and the traversal direction.
        let mut cycle = Vec::new();
        let mut point = start_label;
        loop {
            let label = coset_label(word.strands(), point);
            debug_assert!(!used[label.0 as usize], "orbit projects injectively");
            used[label.0 as usize] = true;
            cycle.push(label);
            point = phi.apply(point);
            if point == start_label {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(ResidualCycleSet { cycles })
}

/// Per-component class in `H_1`: the number of residual arcs the component
/// traverses, mod 2, i.e. the traversal orbit length mod 2. Ordered like
/// [`residual_cycles`].
pub fn component_homology(word: &BraidWord) -> Result<Vec<u8>> {
    let cycles = residual_cycles(word)?;
    Ok(cycles.cycles().iter().map(|c| (c.len() % 2) as u8).collect())
}

/// Least even residue `j` such that neither `sigma_j` nor `sigma_{j+n}`
/// occurs in the word, if any.
///
/// For even `n` a witness certifies that the closure is affine (misses a
/// projective plane): a diametral line through the empty sectors after `j`
/// and `j+n` pulls back to a disjoint plane. Absence of a witness is a
/// statement about this word only, not about the link. For odd `n` the
/// criterion degenerates: the exit sector after `j+n` then splits an
/// internal pair, so the line always meets an internal arc, and e.g. the
/// empty words of `B_2` and `B_6` carry witnesses although they close to
/// class-1 curves.
pub fn affine_witness(word: &BraidWord) -> Result<Option<u16>> {
    let n = word.strands().half()?;
    let k = word.strands();
    let mut present = vec![false; (word.k() + 1) as usize];
    for letter in word.letters() {
        present[letter.index as usize] = true;
    }
    for step in 1..=n {
        let j = 2 * step;
        let partner = k.shift(j, i64::from(n));
        if !present[j as usize] && !present[partner as usize] {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Bundled invariants of one plat closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatReport {
    pub word: BraidWord,
    pub components: usize,
    pub cycles: ResidualCycleSet,
    pub homology: Vec<u8>,
    pub affine_witness: Option<u16>,
}

impl PlatReport {
    pub fn compute(word: &BraidWord) -> Result<PlatReport> {
        let cycles = residual_cycles(word)?;
        let components = component_count(word)?;
        debug_assert_eq!(components, cycles.len());
        Ok(PlatReport {
            homology: cycles.cycles().iter().map(|c| (c.len() % 2) as u8).collect(),
            affine_witness: affine_witness(word)?,
            components,
            cycles,
            word: word.clone(),
        })
    }
}

impl Serialize for PlatReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PlatReport", 6)?;
        s.serialize_field("k", &self.word.k())?;
        s.serialize_field("word", &self.word.text())?;
        s.serialize_field("components", &self.components)?;
        s.serialize_field("cycles", &self.cycles)?;
        s.serialize_field("homology", &self.homology)?;
        s.serialize_field("affine_witness", &self.affine_witness)?;
        s.end()
    }
}

/// Guards plat preconditions shared by the move layer.
pub fn require_even(word: &BraidWord) -> Result<u16> {
    word.strands().half().map_err(|_| Error::OddStrandCount { k: word.k() })
}
