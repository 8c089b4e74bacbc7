//! Strand deletion and the four-strand stabilization embedding.

use crate::error::{Error, Result};
use crate::word::{BraidWord, GeneratorLetter, Sign, StrandCount};

/// Removes the strands starting at the given bottom-side positions.
///
/// The walk tracks where the deleted strands currently sit. A letter whose
/// crossing touches a deleted strand is dropped and the tracked position
/// swaps; a letter between two survivors is kept and re-indexed by the
/// order-preserving renumbering of the surviving strands onto `1..=k-d`.
pub fn strand_deletion(word: &BraidWord, delete: &[u16]) -> Result<BraidWord> {
    let k = word.k();
    let mut deleted = vec![false; (k + 1) as usize];
    let mut count = 0u16;
    for &p in delete {
        if p == 0 || p > k {
            return Err(Error::InvalidPosition { position: p, k });
        }
        if !deleted[p as usize] {
            deleted[p as usize] = true;
            count += 1;
        }
    }
    if count >= k {
        return Err(Error::InvalidPosition { position: k, k });
    }

    let m = k - count;
    let result_strands = StrandCount::new(m)?;

    // reduced[p] = position of the survivor currently at p in the reduced
    // braid; initialized to the rank of p among surviving positions.
    let mut reduced = vec![0u16; (k + 1) as usize];
    let mut rank = 0u16;
    for p in 1..=k {
        if !deleted[p as usize] {
            rank += 1;
            reduced[p as usize] = rank;
        }
    }

    let mut letters = Vec::new();
    for &letter in word.letters() {
        let a = letter.index;
        let b = word.strands().succ(a);
        match (deleted[a as usize], deleted[b as usize]) {
            (true, true) => {}
            (true, false) => {
                // Survivor slides from b to a past the deleted strand.
                deleted[a as usize] = false;
                deleted[b as usize] = true;
                reduced[a as usize] = reduced[b as usize];
                reduced[b as usize] = 0;
            }
            (false, true) => {
                deleted[b as usize] = false;
                deleted[a as usize] = true;
                reduced[b as usize] = reduced[a as usize];
                reduced[a as usize] = 0;
            }
            (false, false) => {
                // The crossing sits in the increasing arc from a to b, so the
                // reduced index is the reduced position of the strand at a.
                letters.push(GeneratorLetter::new(reduced[a as usize], letter.sign));
            }
        }
    }

    BraidWord::from_letters(result_strands, letters)
}

/// The bottom-side positions held still by [`embed_e`] into `B_{k+4}`,
/// expressed for the *target* word: `{1, 2, n+3, n+4}` with `n = (k-4)/2`.
pub fn still_positions(target_k: u16) -> Result<[u16; 4]> {
    if target_k < 6 || target_k % 2 != 0 {
        return Err(Error::OddStrandCount { k: target_k });
    }
    let n = (target_k - 4) / 2;
    Ok([1, 2, n + 3, n + 4])
}

/// Embeds a word of `B_k` (`k = 2n` even) into `B_{k+4}` by adding two still
/// strands in each of two antipodal gaps of the equator.
///
/// Old positions relabel as `i -> i+2` on the bottom half and `i -> i+4` on
/// the top half. Interior generators map letter-for-letter; the two gap
/// generators `sigma_n` and `sigma_2n` map to five-letter band words that
/// route the moving strand in front of the still pair:
///
/// * `sigma_n^e    -> sigma_{n+2} sigma_{n+3} sigma_{n+4}^e sigma_{n+3}^-1 sigma_{n+2}^-1`
/// * `sigma_{2n}^e -> sigma_{2n+4} sigma_1 sigma_2^e sigma_1^-1 sigma_{2n+4}^-1`
///
/// Deleting the four still strands from the image free-reduces back to the
/// original word.
pub fn embed_e(word: &BraidWord) -> Result<BraidWord> {
    let n = word.strands().half()?;
    let k = word.k();
    let target = StrandCount::new(k + 4)?;

    let mut letters = Vec::with_capacity(word.len() * 5);
    for &letter in word.letters() {
        let i = letter.index;
        let e = letter.sign;
        if i < n {
            letters.push(GeneratorLetter::new(i + 2, e));
        } else if i == n {
            letters.push(GeneratorLetter::new(n + 2, Sign::Pos));
            letters.push(GeneratorLetter::new(n + 3, Sign::Pos));
            letters.push(GeneratorLetter::new(n + 4, e));
            letters.push(GeneratorLetter::new(n + 3, Sign::Neg));
            letters.push(GeneratorLetter::new(n + 2, Sign::Neg));
        } else if i < 2 * n {
            letters.push(GeneratorLetter::new(i + 4, e));
        } else {
            letters.push(GeneratorLetter::new(2 * n + 4, Sign::Pos));
            letters.push(GeneratorLetter::new(1, Sign::Pos));
            letters.push(GeneratorLetter::new(2, e));
            letters.push(GeneratorLetter::new(1, Sign::Neg));
            letters.push(GeneratorLetter::new(2 * n + 4, Sign::Neg));
        }
    }
    BraidWord::from_letters(target, letters)
}

/// Inverts [`embed_e`]: deletes the still strands and verifies the round
/// trip, returning the preimage word in `B_{k-4}`.
pub fn invert_embed_e(word: &BraidWord) -> Result<BraidWord> {
    let stills = still_positions(word.k())?;
    let candidate = strand_deletion(word, &stills)?;
    let reduced_word = word.free_reduce();
    if embed_e(&candidate)?.free_reduce() != reduced_word {
        return Err(Error::FactorizationFailed {
            reason: format!("word {word:?} is not in the image of the embedding"),
        });
    }
    Ok(candidate)
}
