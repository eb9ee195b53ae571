use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection of `{1, …, n}`, extended by `σ(0) = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // map[0] == 0; map[i] = σ(i) for i in 1..=n
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..=n).collect(),
        }
    }

    /// One-line notation `[σ(1), …, σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let mut map = Vec::with_capacity(n + 1);
        map.push(0);
        map.extend_from_slice(images);
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `σ(i)` for `i` in `0..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map[1..]
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// All permutations of `{1, …, n}` in lexicographic order of their
    /// one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(move |images| {
            let mut map = Vec::with_capacity(n + 1);
            map.push(0);
            map.extend(images);
            Permutation { map }
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.images() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[3, 1]).is_err());
    }

    #[test]
    fn lexicographic_listing() {
        let all: Vec<_> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(0).count(), 1);
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in Permutation::all(4) {
            let q = p.inverse();
            for i in 0..=4 {
                assert_eq!(q.apply(p.apply(i)), i);
            }
        }
        assert_eq!(Permutation::identity(3).apply(0), 0);
    }
}
