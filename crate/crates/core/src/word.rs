//! Circular braid words over the marked equator of the sphere.
//!
//! A word lives in `B_k`, the braid group of the sphere on `k` marked points
//! placed on an equatorial circle and indexed clockwise by residues `1..=k`.
//! The generator `sigma_i` crosses the strands at positions `i` and `i+1`,
//! indices taken mod `k`, so `sigma_k` crosses positions `k` and `1`.
//!
//! Orientation convention: the leftmost letter of a word is the outermost ring
//! of the annulus diagram (the residual-tangle side); the rightmost letter is
//! innermost (the internal-tangle side). Composing `a.compose(&b)` places `b`
//! inside `a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Number of marked points on the equator.
///
/// `k >= 2` for any word that contains a letter; `k = 1` only occurs as the
/// degenerate result of deleting all but one strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandCount(u16);

impl StrandCount {
    pub fn new(k: u16) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidStrandCount { k });
        }
        Ok(StrandCount(k))
    }

    pub fn get(self) -> u16 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    /// `n` with `k = 2n`; errors on odd `k`.
    pub fn half(self) -> Result<u16> {
        if self.is_even() {
            Ok(self.0 / 2)
        } else {
            Err(Error::OddStrandCount { k: self.0 })
        }
    }

    /// The residue after `i`, with representatives `1..=k`.
    pub fn succ(self, i: u16) -> u16 {
        i % self.0 + 1
    }

    /// `i + by` as a residue with representatives `1..=k`.
    pub fn shift(self, i: u16, by: i64) -> u16 {
        let k = i64::from(self.0);
        ((i64::from(i) - 1 + by).rem_euclid(k) + 1) as u16
    }

    /// Circular distance between two residues.
    pub fn distance(self, a: u16, b: u16) -> u16 {
        let k = i64::from(self.0);
        let d = (i64::from(a) - i64::from(b)).rem_euclid(k);
        d.min(k - d) as u16
    }
}

impl fmt::Display for StrandCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Crossing sign of a generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// One signed circular generator, `sigma_index^sign` with `index` in `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorLetter {
    pub index: u16,
    pub sign: Sign,
}

impl GeneratorLetter {
    pub fn new(index: u16, sign: Sign) -> Self {
        GeneratorLetter { index, sign }
    }

    pub fn inverse(self) -> Self {
        GeneratorLetter { index: self.index, sign: self.sign.flip() }
    }

    pub fn is_inverse_of(self, other: Self) -> bool {
        self.index == other.index && self.sign != other.sign
    }

    /// Signed-integer token of the text format.
    pub fn token(self) -> i64 {
        self.sign.as_i64() * i64::from(self.index)
    }
}

/// A circular braid word: a strand count plus an ordered letter sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: StrandCount,
    letters: Vec<GeneratorLetter>,
}

impl BraidWord {
    pub fn empty(strands: StrandCount) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Builds a word, validating every letter index against `k`.
    pub fn from_letters(strands: StrandCount, letters: Vec<GeneratorLetter>) -> Result<Self> {
        let k = strands.get();
        for letter in &letters {
            if letter.index == 0 || letter.index > k || k < 2 {
                return Err(Error::IndexOutOfRange { token: letter.token(), k });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed-integer tokens; convenient in tests.
    pub fn from_tokens(strands: StrandCount, tokens: &[i64]) -> Result<Self> {
        let mut letters = Vec::with_capacity(tokens.len());
        for &t in tokens {
            let sign = if t < 0 { Sign::Neg } else { Sign::Pos };
            let index = t.unsigned_abs();
            if t == 0 || index > u64::from(strands.get()) || strands.get() < 2 {
                return Err(Error::IndexOutOfRange { token: t, k: strands.get() });
            }
            letters.push(GeneratorLetter::new(index as u16, sign));
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses the whitespace-separated signed-integer text form.
    ///
    /// Token `t` with `|t|` in `1..=k` means `sigma_{|t|}` with the sign of
    /// `t`. The empty string is the empty word.
    pub fn parse(text: &str, strands: StrandCount) -> Result<Self> {
        let mut tokens = Vec::new();
        for raw in text.split_whitespace() {
            let t: i64 = raw
                .parse()
                .map_err(|_| Error::MalformedToken { token: raw.to_string() })?;
            tokens.push(t);
        }
        Self::from_tokens(strands, &tokens)
    }

    /// Normalized text form: tokens separated by single spaces.
    pub fn text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.token().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn strands(&self) -> StrandCount {
        self.strands
    }

    pub fn k(&self) -> u16 {
        self.strands.get()
    }

    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self` then `other`; no reduction is performed.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.k(), right: other.k() });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Reverses the letter order and flips every sign.
    pub fn invert(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Deletes adjacent inverse pairs until none remain.
    ///
    /// The result is the unique free reduction; the operation is idempotent.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<GeneratorLetter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match stack.last() {
                Some(&top) if top.is_inverse_of(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    /// The induced map from bottom indices (`C x {0}`, leftmost side) to top
    /// indices (`C x {1}`): the leftmost letter acts first, and signs are
    /// ignored.
    pub fn permutation(&self) -> Permutation {
        let k = self.k();
        let mut images: Vec<u16> = (1..=k).collect();
        for letter in &self.letters {
            let a = letter.index;
            let b = self.strands.succ(a);
            // images[i-1] is where residue i currently sits; the crossing
            // exchanges the two target slots a and b.
            for img in images.iter_mut() {
                if *img == a {
                    *img = b;
                } else if *img == b {
                    *img = a;
                }
            }
        }
        Permutation::from_images(images).expect("crossing composition is a bijection")
    }

    /// Sum of the letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    /// Exponent sum mod `2(k-1)`, the image in the abelianization.
    ///
    /// Returned as a representative in `0..2(k-1)`. Degenerate `k = 1` words
    /// are letterless and report 0.
    pub fn abelian_class(&self) -> i64 {
        let modulus = 2 * (i64::from(self.k()) - 1);
        if modulus == 0 {
            return 0;
        }
        self.exponent_sum().rem_euclid(modulus)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.k(), self.text())
    }
}

/// The relator `sigma_1 sigma_2 ... sigma_{k-2} sigma_{k-1}^2 sigma_{k-2} ... sigma_2 sigma_1`.
///
/// Its induced permutation is the identity and its exponent sum is `2(k-1)`.
pub fn sphere_relator(strands: StrandCount) -> Result<BraidWord> {
    let k = strands.get();
    if k < 2 {
        return Err(Error::InvalidStrandCount { k });
    }
    let mut letters = Vec::with_capacity(2 * (k as usize - 1));
    for i in 1..k - 1 {
        letters.push(GeneratorLetter::new(i, Sign::Pos));
    }
    letters.push(GeneratorLetter::new(k - 1, Sign::Pos));
    letters.push(GeneratorLetter::new(k - 1, Sign::Pos));
    for i in (1..k - 1).rev() {
        letters.push(GeneratorLetter::new(i, Sign::Pos));
    }
    BraidWord::from_letters(strands, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u16) -> StrandCount {
        StrandCount::new(n).unwrap()
    }

    fn w(kk: u16, tokens: &[i64]) -> BraidWord {
        BraidWord::from_tokens(k(kk), tokens).unwrap()
    }

    #[test]
    fn parse_empty() {
        let word = BraidWord::parse("", k(4)).unwrap();
        assert!(word.is_empty());
        assert_eq!(word.text(), "");
    }

    #[test]
    fn parse_signed_tokens() {
        let word = BraidWord::parse("1 -2", k(4)).unwrap();
        assert_eq!(word, w(4, &[1, -2]));
        assert_eq!(word.text(), "1 -2");
    }

    #[test]
    fn parse_roundtrips_messy_whitespace() {
        let word = BraidWord::parse("  1\t-2  4 ", k(4)).unwrap();
        assert_eq!(word.text(), "1 -2 4");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert_eq!(
            BraidWord::parse("5", k(4)).unwrap_err(),
            Error::IndexOutOfRange { token: 5, k: 4 }
        );
        assert_eq!(
            BraidWord::parse("0", k(4)).unwrap_err(),
            Error::IndexOutOfRange { token: 0, k: 4 }
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            BraidWord::parse("1 x", k(4)),
            Err(Error::MalformedToken { .. })
        ));
    }

    #[test]
    fn compose_concatenates_without_reduction() {
        assert_eq!(w(4, &[1]).compose(&w(4, &[2])).unwrap(), w(4, &[1, 2]));
        assert_eq!(w(4, &[]).compose(&w(4, &[1, -2])).unwrap(), w(4, &[1, -2]));
        assert_eq!(w(4, &[1]).compose(&w(4, &[-1])).unwrap(), w(4, &[1, -1]));
    }

    #[test]
    fn compose_checks_strands() {
        assert_eq!(
            w(4, &[1]).compose(&w(6, &[1])).unwrap_err(),
            Error::StrandMismatch { left: 4, right: 6 }
        );
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(w(4, &[1, -2]).invert(), w(4, &[2, -1]));
        assert_eq!(w(4, &[]).invert(), w(4, &[]));
        assert_eq!(w(6, &[3]).invert(), w(6, &[-3]));
        let word = w(4, &[1, -2, 4]);
        assert!(word.compose(&word.invert()).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w(4, &[1, -1]).free_reduce(), w(4, &[]));
        assert_eq!(w(4, &[2, 1, -1, 2]).free_reduce(), w(4, &[2, 2]));
        assert_eq!(w(4, &[1, 2, -2, -1]).free_reduce(), w(4, &[]));
    }

    #[test]
    fn free_reduce_is_idempotent() {
        let word = w(4, &[1, 2, -2, 3, -3, -1, 4]);
        let once = word.free_reduce();
        assert_eq!(once.free_reduce(), once);
        assert!(once.is_freely_reduced());
    }

    #[test]
    fn permutation_of_empty_is_identity() {
        assert!(w(4, &[]).permutation().is_identity());
    }

    #[test]
    fn permutation_of_wraparound_generator() {
        let p = w(4, &[4]).permutation();
        assert_eq!(p.apply(4), 1);
        assert_eq!(p.apply(1), 4);
        assert_eq!(p.apply(2), 2);
        assert_eq!(p.apply(3), 3);
    }

    #[test]
    fn permutation_applies_leftmost_first() {
        // sigma_1 sigma_2 in B4: 1 -> 3, 2 -> 1, 3 -> 2, 4 -> 4.
        let p = w(4, &[1, 2]).permutation();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(2), 1);
        assert_eq!(p.apply(3), 2);
        assert_eq!(p.apply(4), 4);
    }

    #[test]
    fn permutation_ignores_signs() {
        assert_eq!(w(4, &[1, 2]).permutation(), w(4, &[-1, -2]).permutation());
    }

    #[test]
    fn exponent_sum_and_abelian_class() {
        assert_eq!(w(4, &[1, -2]).exponent_sum(), 0);
        assert_eq!(w(4, &[]).exponent_sum(), 0);
        let relator = sphere_relator(k(4)).unwrap();
        assert_eq!(relator, w(4, &[1, 2, 3, 3, 2, 1]));
        assert_eq!(relator.exponent_sum(), 6);
        assert_eq!(relator.abelian_class(), 0);
        assert_eq!(w(4, &[1]).abelian_class(), 1);
        assert_eq!(w(4, &[-1]).abelian_class(), 5);
    }

    #[test]
    fn sphere_relator_has_identity_permutation() {
        for kk in 2..=9 {
            let relator = sphere_relator(k(kk)).unwrap();
            assert!(relator.permutation().is_identity(), "k = {kk}");
            assert_eq!(relator.abelian_class(), 0, "k = {kk}");
        }
    }

    #[test]
    fn circular_helpers() {
        let s = k(6);
        assert_eq!(s.succ(6), 1);
        assert_eq!(s.succ(2), 3);
        assert_eq!(s.shift(1, 3), 4);
        assert_eq!(s.shift(5, 3), 2);
        assert_eq!(s.shift(2, -3), 5);
        assert_eq!(s.distance(1, 3), 2);
        assert_eq!(s.distance(1, 6), 1);
        assert_eq!(s.distance(1, 4), 3);
    }
}
