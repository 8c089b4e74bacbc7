//! Bijections on the residues `1..=k`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{1..=k}`, stored as the image vector `images[i-1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `1..=images.len()`.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let k = images.len() as u16;
        let mut seen = vec![false; images.len()];
        for &img in &images {
            if img == 0 || img > k || seen[(img - 1) as usize] {
                return Err(Error::ConfigError {
                    reason: format!("images {images:?} are not a bijection of 1..={k}"),
                });
            }
            seen[(img - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: u16) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(k: u16, a: u16, b: u16) -> Self {
        let mut images: Vec<u16> = (1..=k).collect();
        images.swap((a - 1) as usize, (b - 1) as usize);
        Permutation { images }
    }

    pub fn k(&self) -> u16 {
        self.images.len() as u16
    }

    pub fn apply(&self, i: u16) -> u16 {
        self.images[(i - 1) as usize]
    }

    /// `self` applied first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.k() != other.k() {
            return Err(Error::StrandMismatch { left: self.k(), right: other.k() });
        }
        let images = self.images.iter().map(|&i| other.apply(i)).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[(img - 1) as usize] = (i + 1) as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img as usize == i + 1)
    }

    /// True when the map is an involution with no fixed point.
    pub fn is_fixed_point_free_involution(&self) -> bool {
        (1..=self.k()).all(|i| {
            let j = self.apply(i);
            j != i && self.apply(j) == i
        })
    }

    /// Disjoint cycles, each rotated to start at its least element, sorted by
    /// least element; fixed points are included as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let k = self.k();
        let mut seen = vec![false; k as usize];
        let mut cycles = Vec::new();
        for start in 1..=k {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                seen[(cur - 1) as usize] = true;
                cycle.push(cur);
                cur = self.apply(cur);
                if cur == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![3, 1]).is_err());
    }

    #[test]
    fn compose_then_order() {
        let t12 = Permutation::transposition(3, 1, 2);
        let t23 = Permutation::transposition(3, 2, 3);
        let p = t12.then(&t23).unwrap();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.apply(2), 1);
        assert_eq!(p.apply(3), 2);
    }

    #[test]
    fn inverse_undoes() {
        let p = Permutation::from_images(vec![3, 1, 2, 4]).unwrap();
        assert!(p.then(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().then(&p).unwrap().is_identity());
    }

    #[test]
    fn cycle_notation_display() {
        let p = Permutation::from_images(vec![1, 7, 2, 5, 4, 3, 6]).unwrap();
        assert_eq!(p.to_string(), "(1)(2 7 6 3)(4 5)");
    }

    #[test]
    fn fixed_point_free_involutions() {
        let swap_pairs = Permutation::from_images(vec![2, 1, 4, 3]).unwrap();
        assert!(swap_pairs.is_fixed_point_free_involution());
        assert!(!Permutation::identity(4).is_fixed_point_free_involution());
        let three_cycle = Permutation::from_images(vec![2, 3, 1, 4]).unwrap();
        assert!(!three_cycle.is_fixed_point_free_involution());
    }
}
