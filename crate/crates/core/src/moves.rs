//! The M-move rewriting system on plat words.
//!
//! Moves act on words of even strand count and preserve the isotopy class of
//! the plat closure:
//!
//! * `M0` flips the signs of a two-letter suffix `sigma_{i-1} sigma_i`
//!   (plain variant at odd `i`, barred at even `i`);
//! * `M1` appends or removes `sigma_i^{+-1}` at the right end for odd `i`;
//! * `M2` slides the leftmost crossing out through the antipodal boundary
//!   and back in, re-indexing it by `n` in place;
//! * `M3` stabilizes into `B_{k+4}` as `alpha_l . e(word)`;
//! * `M4` (odd half only) stabilizes as the plain embedding `e`.
//!
//! `M0` and `M1` act only at the right end of the word, the internal-tangle
//! side; `M2` acts only on the leftmost letter, the only crossing adjacent
//! to the boundary.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::embed::{embed_e, invert_embed_e};
use crate::error::{Error, Result};
use crate::word::{BraidWord, GeneratorLetter, Sign, StrandCount};

/// Variant selector for the suffix sign flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum M0Variant {
    /// Odd `i`: positive suffix becomes negative left-to-right.
    Plain,
    /// Even `i`: negative suffix becomes positive left-to-right.
    Bar,
}

/// A tagged, parameterized move instance.
///
/// Compact string encoding, also used in JSON:
///
/// * `M0+@3` / `M0-@3` — flip the suffix ending at index 3 whose uniform
///   sign is `+` / `-` (the index parity selects the plain or barred
///   variant);
/// * `M1+@3`, `M1-@3` — append `sigma_3^{+-1}`; trailing `<` removes it;
/// * `M2` — slide the leftmost crossing through the boundary (self-inverse;
///   `M2>` and `M2<` are accepted as aliases);
/// * `M3@5`, `M3b@5` — stabilize with `alpha_5` / `alpha_5-bar`; trailing
///   `<` for the destabilizing direction;
/// * `M4`, `M4<` — embed / un-embed when the half-count is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveId {
    M0 { index: u16, consumed: Sign },
    M1 { index: u16, sign: Sign, remove: bool },
    M2,
    M3 { l: u16, bar: bool, backward: bool },
    M4 { backward: bool },
}

impl MoveId {
    /// Base kind name; the index parity distinguishes `M0` from `M0bar` and
    /// the sign distinguishes `M1` from `M1bar`. An `M2` on a negative
    /// leading letter plays the barred role without a separate id.
    pub fn kind(&self) -> &'static str {
        match self {
            MoveId::M0 { index, .. } => {
                if index % 2 == 1 {
                    "M0"
                } else {
                    "M0bar"
                }
            }
            MoveId::M1 { sign: Sign::Pos, .. } => "M1",
            MoveId::M1 { sign: Sign::Neg, .. } => "M1bar",
            MoveId::M2 => "M2",
            MoveId::M3 { bar: false, .. } => "M3",
            MoveId::M3 { bar: true, .. } => "M3bar",
            MoveId::M4 { .. } => "M4",
        }
    }

    /// The move undoing this one; `M2` is its own inverse.
    pub fn inverse(&self) -> MoveId {
        match *self {
            MoveId::M0 { index, consumed } => MoveId::M0 { index, consumed: consumed.flip() },
            MoveId::M1 { index, sign, remove } => MoveId::M1 { index, sign, remove: !remove },
            MoveId::M2 => MoveId::M2,
            MoveId::M3 { l, bar, backward } => MoveId::M3 { l, bar, backward: !backward },
            MoveId::M4 { backward } => MoveId::M4 { backward: !backward },
        }
    }

    fn sort_key(&self) -> (u8, u16, u8, u8) {
        fn sign_rank(s: Sign) -> u8 {
            match s {
                Sign::Pos => 0,
                Sign::Neg => 1,
            }
        }
        match *self {
            MoveId::M0 { index, consumed } => (0, index, sign_rank(consumed), 0),
            MoveId::M1 { index, sign, remove } => (1, index, sign_rank(sign), remove as u8),
            MoveId::M2 => (2, 0, 0, 0),
            MoveId::M3 { l, bar, backward } => (3, l, bar as u8, backward as u8),
            MoveId::M4 { backward } => (4, 0, 0, backward as u8),
        }
    }
}

impl PartialOrd for MoveId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MoveId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for MoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveId::M0 { index, consumed } => write!(f, "M0{}@{}", consumed.symbol(), index),
            MoveId::M1 { index, sign, remove } => {
                write!(f, "M1{}@{}{}", sign.symbol(), index, if remove { "<" } else { "" })
            }
            MoveId::M2 => write!(f, "M2"),
            MoveId::M3 { l, bar, backward } => {
                write!(f, "M3{}@{}{}", if bar { "b" } else { "" }, l, if backward { "<" } else { "" })
            }
            MoveId::M4 { backward } => write!(f, "M4{}", if backward { "<" } else { "" }),
        }
    }
}

impl FromStr for MoveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownMove { text: s.to_string() };
        let parse_index = |t: &str| t.parse::<u16>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("M0") {
            let (sign, rest) = match rest.as_bytes().first() {
                Some(b'+') => (Sign::Pos, &rest[1..]),
                Some(b'-') => (Sign::Neg, &rest[1..]),
                _ => return Err(bad()),
            };
            let idx = rest.strip_prefix('@').ok_or_else(bad)?;
            return Ok(MoveId::M0 { index: parse_index(idx)?, consumed: sign });
        }
        if let Some(rest) = s.strip_prefix("M1") {
            let (sign, rest) = match rest.as_bytes().first() {
                Some(b'+') => (Sign::Pos, &rest[1..]),
                Some(b'-') => (Sign::Neg, &rest[1..]),
                _ => return Err(bad()),
            };
            let rest = rest.strip_prefix('@').ok_or_else(bad)?;
            let (idx, remove) = match rest.strip_suffix('<') {
                Some(idx) => (idx, true),
                None => (rest, false),
            };
            return Ok(MoveId::M1 { index: parse_index(idx)?, sign, remove });
        }
        match s {
            "M2" | "M2>" | "M2<" => return Ok(MoveId::M2),
            "M4" => return Ok(MoveId::M4 { backward: false }),
            "M4<" => return Ok(MoveId::M4 { backward: true }),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("M3") {
            let (bar, rest) = match rest.strip_prefix('b') {
                Some(rest) => (true, rest),
                None => (false, rest),
            };
            let rest = rest.strip_prefix('@').ok_or_else(bad)?;
            let (l, backward) = match rest.strip_suffix('<') {
                Some(l) => (l, true),
                None => (rest, false),
            };
            return Ok(MoveId::M3 { l: parse_index(l)?, bar, backward });
        }
        Err(bad())
    }
}

impl Serialize for MoveId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// One applied move: the edge type of the search graph.
///
/// `after` is stored free-reduced so search nodes are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveApplication {
    pub move_id: MoveId,
    pub before: BraidWord,
    pub after: BraidWord,
}

impl MoveApplication {
    pub fn k_before(&self) -> u16 {
        self.before.k()
    }

    pub fn k_after(&self) -> u16 {
        self.after.k()
    }
}

impl Serialize for MoveApplication {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MoveApplication", 5)?;
        s.serialize_field("move", &self.move_id)?;
        s.serialize_field("before", &self.before.text())?;
        s.serialize_field("after", &self.after.text())?;
        s.serialize_field("k_before", &self.k_before())?;
        s.serialize_field("k_after", &self.k_after())?;
        s.end()
    }
}

fn require_even(word: &BraidWord) -> Result<u16> {
    word.strands().half()
}

/// Flips the signs of the suffix `sigma_{i-1} sigma_i`.
///
/// The plain variant (odd `i`) consumes a positive suffix when `forward`;
/// the barred variant (even `i`) consumes a negative suffix when `forward`.
pub fn apply_m0(word: &BraidWord, index: u16, variant: M0Variant, forward: bool) -> Result<BraidWord> {
    require_even(word)?;
    let odd = index % 2 == 1;
    match variant {
        M0Variant::Plain if !odd => return Err(Error::ParityMismatch { index }),
        M0Variant::Bar if odd => return Err(Error::ParityMismatch { index }),
        _ => {}
    }
    let consumed = match (variant, forward) {
        (M0Variant::Plain, true) | (M0Variant::Bar, false) => Sign::Pos,
        (M0Variant::Plain, false) | (M0Variant::Bar, true) => Sign::Neg,
    };
    apply_m0_consuming(word, index, consumed)
}

fn apply_m0_consuming(word: &BraidWord, index: u16, consumed: Sign) -> Result<BraidWord> {
    if index == 0 || index > word.k() {
        return Err(Error::SuffixMismatch { index });
    }
    let prev = word.strands().shift(index, -1);
    let letters = word.letters();
    let n = letters.len();
    let matches = n >= 2
        && letters[n - 1] == GeneratorLetter::new(index, consumed)
        && letters[n - 2] == GeneratorLetter::new(prev, consumed);
    if !matches {
        return Err(Error::SuffixMismatch { index });
    }
    let mut out = letters.to_vec();
    out[n - 1] = out[n - 1].inverse();
    out[n - 2] = out[n - 2].inverse();
    BraidWord::from_letters(word.strands(), out)
}

/// Appends `sigma_index^sign` at the right end (or removes that exact final
/// letter). The index must be odd: the internal tangle joins `i` to `i+1`.
pub fn apply_m1(word: &BraidWord, index: u16, sign: Sign, remove: bool) -> Result<BraidWord> {
    require_even(word)?;
    if index % 2 == 0 || index > word.k() {
        return Err(Error::ParityMismatch { index });
    }
    let mut out = word.letters().to_vec();
    if remove {
        if out.pop() != Some(GeneratorLetter::new(index, sign)) {
            return Err(Error::LetterMismatch);
        }
    } else {
        out.push(GeneratorLetter::new(index, sign));
    }
    BraidWord::from_letters(word.strands(), out)
}

/// Slides the leftmost crossing `sigma_l^e` out through the antipodal
/// boundary and back in: the word becomes `sigma_{l+n}^e` followed by the
/// rest. Self-inverse, since `l + 2n = l`.
///
/// The crossing abuts the residual arcs of strands `l` and `l+1`, travels
/// along them across the boundary circle, and re-enters between the
/// antipodal positions `l+n` and `l+n+1`, still outermost. The traversal map
/// afterwards is the conjugate by `t_l t_{l+n}` of the original, so the
/// residual cycle structure is preserved exactly.
pub fn apply_m2(word: &BraidWord) -> Result<BraidWord> {
    let n = require_even(word)?;
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = word.letters().to_vec();
    let shifted = word.strands().shift(out[0].index, i64::from(n));
    out[0] = GeneratorLetter::new(shifted, out[0].sign);
    BraidWord::from_letters(word.strands(), out)
}

/// The stabilization braid `alpha_l` in `B_{k+4}`, for a source word in
/// `B_k`: the run `sigma_2 ... sigma_{l-2}`, then `sigma_{l-1}`, then the
/// inverse run `sigma_{l-2}^-1 ... sigma_2^-1`. The barred form flips every
/// sign in place.
pub fn alpha_word(l: u16, source: StrandCount, bar: bool) -> Result<BraidWord> {
    let k = source.get();
    if l < 3 || l > k + 2 {
        return Err(Error::RangeError { l, max: k + 2 });
    }
    let target = StrandCount::new(k + 4)?;
    let (up, down) = if bar { (Sign::Neg, Sign::Pos) } else { (Sign::Pos, Sign::Neg) };
    let mut letters = Vec::with_capacity(2 * (l as usize) - 5);
    for i in 2..=l - 2 {
        letters.push(GeneratorLetter::new(i, up));
    }
    letters.push(GeneratorLetter::new(l - 1, up));
    for i in (2..=l - 2).rev() {
        letters.push(GeneratorLetter::new(i, down));
    }
    BraidWord::from_letters(target, letters)
}

/// Checks the stabilization parameters against the source strand count.
///
/// The move is defined for even halves only: when `n` is even the embedding
/// adds a free circle through the four still strands and the `alpha_l` band
/// merges it into the link, which preserves components for every word (the
/// band cross-reconnects two distinct components). When `n` is odd the
/// stills already splice into the link, so a band changes the closure; the
/// odd-half stabilization is the plain embedding instead. Within the even
/// case, `l = n+3` and `l = n+4` would aim the band at the still strands
/// themselves and are rejected.
fn m3_parameters(l: u16, source: StrandCount) -> Result<()> {
    let k = source.get();
    let n = source.half()?;
    if n % 2 == 1 {
        return Err(Error::OddHalfIndex { k, n });
    }
    if l < 3 || l > k + 2 || l == n + 3 || l == n + 4 {
        return Err(Error::RangeError { l, max: k + 2 });
    }
    Ok(())
}

/// Forward: `alpha_l . e(word)` in `B_{k+4}`. Backward: strips the literal
/// `alpha_l` prefix and inverts the embedding, recovering a word four
/// strands down.
///
/// Defined when the half-count `n` is even, with the band aimed at an
/// original strand (`l` outside `3..=k+2` and the still values `n+3`, `n+4`
/// are rejected). The odd-half stabilization is [`apply_m4`].
pub fn apply_m3(word: &BraidWord, l: u16, bar: bool, backward: bool) -> Result<BraidWord> {
    require_even(word)?;
    if !backward {
        m3_parameters(l, word.strands())?;
        let alpha = alpha_word(l, word.strands(), bar)?;
        return alpha.compose(&embed_e(word)?);
    }
    let k = word.k();
    if k < 6 {
        return Err(Error::RangeError { l, max: 0 });
    }
    let source = StrandCount::new(k - 4)?;
    m3_parameters(l, source)?;
    let alpha = alpha_word(l, source, bar)?;
    let letters = word.letters();
    if letters.len() < alpha.len() || &letters[..alpha.len()] != alpha.letters() {
        return Err(Error::FactorizationFailed {
            reason: format!("word does not start with alpha({l}{})", if bar { ", barred" } else { "" }),
        });
    }
    let rest = BraidWord::from_letters(word.strands(), letters[alpha.len()..].to_vec())?;
    invert_embed_e(&rest)
}

/// When the half-count `n` is odd, the stabilizing move is the plain
/// embedding; the even-half case has no closed expression and is rejected.
pub fn apply_m4(word: &BraidWord, backward: bool) -> Result<BraidWord> {
    let n = require_even(word)?;
    if !backward {
        if n % 2 == 0 {
            return Err(Error::EvenHalfIndex { k: word.k(), n });
        }
        return embed_e(word);
    }
    if word.k() < 6 {
        return Err(Error::FactorizationFailed { reason: "word has no still strands to remove".into() });
    }
    let source_n = (word.k() - 4) / 2;
    if source_n % 2 == 0 {
        return Err(Error::EvenHalfIndex { k: word.k() - 4, n: source_n });
    }
    invert_embed_e(word)
}

/// Applies a move by id; results are raw (not free-reduced).
pub fn apply_move(word: &BraidWord, id: &MoveId) -> Result<BraidWord> {
    match *id {
        MoveId::M0 { index, consumed } => apply_m0_consuming(&require_even_ok(word)?, index, consumed),
        MoveId::M1 { index, sign, remove } => apply_m1(word, index, sign, remove),
        MoveId::M2 => apply_m2(word),
        MoveId::M3 { l, bar, backward } => apply_m3(word, l, bar, backward),
        MoveId::M4 { backward } => apply_m4(word, backward),
    }
}

fn require_even_ok(word: &BraidWord) -> Result<BraidWord> {
    require_even(word)?;
    Ok(word.clone())
}

/// All applicable move instances whose results stay within `max_strands`,
/// each with its result free-reduced, in deterministic `(kind, parameters)`
/// order.
pub fn enumerate_moves(word: &BraidWord, max_strands: u16) -> Result<Vec<MoveApplication>> {
    let n = require_even(word)?;
    let k = word.k();
    let mut ids = Vec::new();

    let letters = word.letters();
    if letters.len() >= 2 {
        let last = letters[letters.len() - 1];
        let prev = letters[letters.len() - 2];
        if prev.sign == last.sign && prev.index == word.strands().shift(last.index, -1) {
            ids.push(MoveId::M0 { index: last.index, consumed: last.sign });
        }
    }
    for index in (1..=k).step_by(2) {
        for sign in [Sign::Pos, Sign::Neg] {
            ids.push(MoveId::M1 { index, sign, remove: false });
        }
    }
    if let Some(&last) = letters.last() {
        if last.index % 2 == 1 {
            ids.push(MoveId::M1 { index: last.index, sign: last.sign, remove: true });
        }
    }
    if !word.is_empty() {
        ids.push(MoveId::M2);
    }
    if k + 4 <= max_strands {
        for l in 3..=k + 2 {
            if m3_parameters(l, word.strands()).is_err() {
                continue;
            }
            for bar in [false, true] {
                ids.push(MoveId::M3 { l, bar, backward: false });
            }
        }
        if n % 2 == 1 {
            ids.push(MoveId::M4 { backward: false });
        }
    }
    if k >= 6 {
        let source = StrandCount::new(k - 4)?;
        for l in 3..=k - 2 {
            if m3_parameters(l, source).is_err() {
                continue;
            }
            for bar in [false, true] {
                let id = MoveId::M3 { l, bar, backward: true };
                if apply_move(word, &id).is_ok() {
                    ids.push(id);
                }
            }
        }
        if (k - 4) / 2 % 2 == 1 && apply_move(word, &MoveId::M4 { backward: true }).is_ok() {
            ids.push(MoveId::M4 { backward: true });
        }
    }

    ids.sort();
    ids.into_iter()
        .map(|id| {
            let after = apply_move(word, &id)?.free_reduce();
            Ok(MoveApplication { move_id: id, before: word.clone(), after })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plat::{component_count, component_homology};

    fn w(kk: u16, tokens: &[i64]) -> BraidWord {
        BraidWord::from_tokens(StrandCount::new(kk).unwrap(), tokens).unwrap()
    }

    #[test]
    fn m0_flips_suffix_signs() {
        let out = apply_m0(&w(4, &[4, 2, 3]), 3, M0Variant::Plain, true).unwrap();
        assert_eq!(out, w(4, &[4, -2, -3]));
        let back = apply_m0(&out, 3, M0Variant::Plain, false).unwrap();
        assert_eq!(back, w(4, &[4, 2, 3]));
    }

    #[test]
    fn m0_bar_reverse_direction() {
        let out = apply_m0(&w(4, &[1, 2]), 2, M0Variant::Bar, false).unwrap();
        assert_eq!(out, w(4, &[-1, -2]));
    }

    #[test]
    fn m0_wraparound_suffix() {
        let out = apply_m0(&w(4, &[3, 4, 1]), 1, M0Variant::Plain, true).unwrap();
        assert_eq!(out, w(4, &[3, -4, -1]));
    }

    #[test]
    fn m0_error_surface() {
        assert_eq!(
            apply_m0(&w(4, &[3, 1]), 3, M0Variant::Plain, true).unwrap_err(),
            Error::SuffixMismatch { index: 3 }
        );
        assert_eq!(
            apply_m0(&w(4, &[1, 2]), 2, M0Variant::Plain, true).unwrap_err(),
            Error::ParityMismatch { index: 2 }
        );
    }

    #[test]
    fn m1_appends_and_removes() {
        assert_eq!(apply_m1(&w(4, &[]), 1, Sign::Pos, false).unwrap(), w(4, &[1]));
        assert_eq!(apply_m1(&w(6, &[2]), 5, Sign::Neg, false).unwrap(), w(6, &[2, -5]));
        assert_eq!(apply_m1(&w(4, &[2, 1]), 1, Sign::Pos, true).unwrap(), w(4, &[2]));
        assert_eq!(
            apply_m1(&w(4, &[]), 2, Sign::Pos, false).unwrap_err(),
            Error::ParityMismatch { index: 2 }
        );
        assert_eq!(
            apply_m1(&w(4, &[2]), 1, Sign::Pos, true).unwrap_err(),
            Error::LetterMismatch
        );
    }

    #[test]
    fn m2_slides_leftmost_through_boundary() {
        assert_eq!(apply_m2(&w(4, &[1, 2])).unwrap(), w(4, &[3, 2]));
        assert_eq!(apply_m2(&w(4, &[4])).unwrap(), w(4, &[2]));
        assert_eq!(apply_m2(&w(4, &[-1, 2])).unwrap(), w(4, &[-3, 2]));
        assert_eq!(apply_m2(&w(4, &[])).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn m2_is_self_inverse() {
        let word = w(6, &[1, -4, 2, 6]);
        let there = apply_m2(&word).unwrap();
        assert_ne!(there, word);
        assert_eq!(apply_m2(&there).unwrap(), word);
    }

    #[test]
    fn m2_preserves_residual_index_pair() {
        // The moved letter keeps its index class {l, l+n}, so the affine
        // witness is untouched.
        let word = w(4, &[1, 3]);
        let slid = apply_m2(&word).unwrap();
        assert_eq!(
            crate::plat::affine_witness(&word).unwrap(),
            crate::plat::affine_witness(&slid).unwrap()
        );
    }

    #[test]
    fn alpha_word_formula() {
        let k4 = StrandCount::new(4).unwrap();
        assert_eq!(alpha_word(3, k4, false).unwrap(), w(8, &[2]));
        assert_eq!(alpha_word(4, k4, false).unwrap(), w(8, &[2, 3, -2]));
        assert_eq!(alpha_word(5, k4, false).unwrap(), w(8, &[2, 3, 4, -3, -2]));
        assert_eq!(alpha_word(5, k4, true).unwrap(), w(8, &[-2, -3, -4, 3, 2]));
        assert!(matches!(alpha_word(2, k4, false), Err(Error::RangeError { .. })));
        assert!(matches!(alpha_word(7, k4, false), Err(Error::RangeError { .. })));
    }

    #[test]
    fn m3_forward_examples() {
        assert_eq!(apply_m3(&w(4, &[]), 3, false, false).unwrap(), w(8, &[2]));
        assert_eq!(apply_m3(&w(4, &[1]), 4, false, false).unwrap(), w(8, &[2, 3, -2, 3]));
    }

    #[test]
    fn m3_backward_inverts_forward() {
        for tokens in [vec![], vec![1], vec![2, -3], vec![4, 1]] {
            let word = w(4, &tokens);
            for l in [3, 4] {
                for bar in [false, true] {
                    let image = apply_m3(&word, l, bar, false).unwrap();
                    let back = apply_m3(&image, l, bar, true).unwrap();
                    assert_eq!(back, word, "l = {l}, bar = {bar}");
                }
            }
        }
        assert_eq!(apply_m3(&w(8, &[2]), 3, false, true).unwrap(), w(4, &[]));
    }

    #[test]
    fn m3_rejects_still_band_targets() {
        // For a B4 source (n = 2) the still strands sit at 5 and 6; a band
        // onto them leaves the stabilizing circle split off.
        for l in [5, 6] {
            assert_eq!(
                apply_m3(&w(4, &[]), l, false, false).unwrap_err(),
                Error::RangeError { l, max: 6 }
            );
        }
    }

    #[test]
    fn m3_rejects_odd_halves() {
        // With n odd the stills splice into the link on their own, so a band
        // is not a closure move; the plain embedding covers that parity.
        for l in 3..=8 {
            assert_eq!(
                apply_m3(&w(6, &[]), l, false, false).unwrap_err(),
                Error::OddHalfIndex { k: 6, n: 3 }
            );
        }
        assert!(apply_m3(&w(8, &[]), 3, false, false).is_ok());
    }

    #[test]
    fn m3_backward_rejects_non_factors() {
        assert!(matches!(
            apply_m3(&w(8, &[3]), 3, false, true),
            Err(Error::FactorizationFailed { .. })
        ));
    }

    #[test]
    fn m4_odd_half_embeds() {
        assert_eq!(apply_m4(&w(6, &[1]), false).unwrap(), w(10, &[3]));
        assert_eq!(apply_m4(&w(2, &[]), false).unwrap(), w(6, &[]));
        assert!(matches!(
            apply_m4(&w(4, &[1]), false),
            Err(Error::EvenHalfIndex { k: 4, n: 2 })
        ));
        let word = w(6, &[1, -6, 3]);
        let image = apply_m4(&word, false).unwrap();
        assert_eq!(apply_m4(&image, true).unwrap(), word);
    }

    #[test]
    fn move_strings_round_trip() {
        let ids = [
            MoveId::M0 { index: 3, consumed: Sign::Neg },
            MoveId::M0 { index: 2, consumed: Sign::Pos },
            MoveId::M1 { index: 3, sign: Sign::Pos, remove: false },
            MoveId::M1 { index: 1, sign: Sign::Neg, remove: true },
            MoveId::M2,
            MoveId::M3 { l: 5, bar: false, backward: false },
            MoveId::M3 { l: 5, bar: true, backward: true },
            MoveId::M4 { backward: false },
            MoveId::M4 { backward: true },
        ];
        for id in ids {
            let text = id.to_string();
            assert_eq!(text.parse::<MoveId>().unwrap(), id, "{text}");
        }
        assert_eq!("M1+@3".parse::<MoveId>().unwrap().to_string(), "M1+@3");
        assert_eq!("M0-@3".parse::<MoveId>().unwrap().to_string(), "M0-@3");
        // Directional spellings are accepted for the self-inverse slide.
        assert_eq!("M2>".parse::<MoveId>().unwrap(), MoveId::M2);
        assert_eq!("M2<".parse::<MoveId>().unwrap(), MoveId::M2);
        assert!("M5".parse::<MoveId>().is_err());
        assert!("M1@3".parse::<MoveId>().is_err());
    }

    #[test]
    fn inverse_moves_undo() {
        let samples = [
            (w(4, &[1, 2]), MoveId::M0 { index: 2, consumed: Sign::Pos }),
            (w(4, &[2]), MoveId::M1 { index: 3, sign: Sign::Neg, remove: false }),
            (w(4, &[1, 2]), MoveId::M2),
            (w(4, &[1]), MoveId::M3 { l: 4, bar: false, backward: false }),
            (w(6, &[2]), MoveId::M4 { backward: false }),
        ];
        for (word, id) in samples {
            let there = apply_move(&word, &id).unwrap();
            let back = apply_move(&there, &id.inverse()).unwrap();
            assert_eq!(back, word, "{id}");
        }
    }

    #[test]
    fn enumerate_on_empty_word() {
        let apps = enumerate_moves(&w(4, &[]), 4).unwrap();
        let ids: Vec<String> = apps.iter().map(|a| a.move_id.to_string()).collect();
        assert_eq!(ids, vec!["M1+@1", "M1-@1", "M1+@3", "M1-@3"]);
    }

    #[test]
    fn enumerate_on_two_letter_word() {
        let apps = enumerate_moves(&w(4, &[1, 2]), 4).unwrap();
        let ids: Vec<String> = apps.iter().map(|a| a.move_id.to_string()).collect();
        assert_eq!(ids, vec!["M0+@2", "M1+@1", "M1-@1", "M1+@3", "M1-@3", "M2"]);
        let m2 = apps.iter().find(|a| a.move_id == MoveId::M2).unwrap();
        assert_eq!(m2.after, w(4, &[3, 2]));
    }

    #[test]
    fn enumerate_includes_valid_m3_instances() {
        let apps = enumerate_moves(&w(4, &[1]), 8).unwrap();
        let m3s: Vec<_> = apps
            .iter()
            .filter(|a| matches!(a.move_id, MoveId::M3 { .. }))
            .collect();
        assert_eq!(m3s.len(), 4); // l in {3, 4}, both variants
        assert!(!apps.iter().any(|a| matches!(a.move_id, MoveId::M4 { .. })));
        // Odd half: the plain embedding stabilizes instead of the band.
        let apps = enumerate_moves(&w(6, &[1]), 10).unwrap();
        assert!(!apps.iter().any(|a| matches!(a.move_id, MoveId::M3 { .. })));
        assert!(apps.iter().any(|a| a.move_id == MoveId::M4 { backward: false }));
        // B8 source (n = 4): stills at 7 and 8 are skipped, 9 and 10 allowed.
        let apps = enumerate_moves(&w(8, &[1]), 12).unwrap();
        let m3_ls: Vec<u16> = apps
            .iter()
            .filter_map(|a| match a.move_id {
                MoveId::M3 { l, bar: false, backward: false } => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(m3_ls, vec![3, 4, 5, 6, 9, 10]);
    }

    #[test]
    fn enumerate_results_are_free_reduced() {
        let apps = enumerate_moves(&w(4, &[-1]), 8).unwrap();
        let insert = apps
            .iter()
            .find(|a| a.move_id == MoveId::M1 { index: 1, sign: Sign::Pos, remove: false })
            .unwrap();
        assert!(insert.after.is_empty());
    }

    #[test]
    fn moves_preserve_plat_invariants() {
        for word in [w(4, &[]), w(4, &[1, 2]), w(4, &[2, -3]), w(6, &[1, 4])] {
            let before_count = component_count(&word).unwrap();
            let mut before_hom = component_homology(&word).unwrap();
            before_hom.sort_unstable();
            for app in enumerate_moves(&word, 10).unwrap() {
                let count = component_count(&app.after).unwrap();
                let mut hom = component_homology(&app.after).unwrap();
                hom.sort_unstable();
                assert_eq!(count, before_count, "{} on {:?}", app.move_id, word);
                assert_eq!(hom, before_hom, "{} on {:?}", app.move_id, word);
            }
        }
    }

    #[test]
    fn move_application_serializes_compactly() {
        let apps = enumerate_moves(&w(4, &[1, 2]), 4).unwrap();
        let m2 = apps.iter().find(|a| a.move_id == MoveId::M2).unwrap();
        assert_eq!(
            serde_json::to_string(m2).unwrap(),
            "{\"move\":\"M2\",\"before\":\"1 2\",\"after\":\"3 2\",\"k_before\":4,\"k_after\":4}"
        );
    }
}
