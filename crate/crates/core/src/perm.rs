//! Permutations of `{0..n-1}` stored as image sequences.
//!
//! Composition applies the right factor first: `(p * q)(i) = p(q(i))`.

use std::fmt;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return invalid(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Build from disjoint cycles, e.g. `[[0, 1, 2]]` maps 0→1→2→0.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (pos, &from) in cycle.iter().enumerate() {
                let to = cycle[(pos + 1) % cycle.len()];
                if from >= n || to >= n {
                    return invalid(format!("cycle point out of range for degree {n}"));
                }
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn compose(&self, right: &Permutation) -> Permutation {
        assert_eq!(self.degree(), right.degree());
        Permutation(right.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut r = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            r[p] = i;
        }
        Permutation(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Position in the lexicographic order of image sequences.
    pub fn lex_rank(&self) -> usize {
        let n = self.0.len();
        let mut rank = 0;
        let mut used = vec![false; n];
        for (pos, &v) in self.0.iter().enumerate() {
            let smaller = (0..v).filter(|&u| !used[u]).count();
            rank += smaller * factorial(n - 1 - pos);
            used[v] = true;
        }
        rank
    }

    pub fn lex_unrank(n: usize, mut rank: usize) -> Permutation {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for pos in 0..n {
            let f = factorial(n - 1 - pos);
            images.push(pool.remove(rank / f));
            rank %= f;
        }
        Permutation(images)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Cycle notation, fixed points omitted; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{i}")?;
                i = self.0[i];
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}
