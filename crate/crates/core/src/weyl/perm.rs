use std::fmt;

use crate::{Error, Result};

/// A permutation of `{0, …, len-1}` in one-line notation.
///
/// Composition follows `(σ∘ρ)(i) = σ(ρ(i))`. Cycle notation, both for
/// display and parsing, is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm((0..len).collect())
    }

    pub fn from_one_line(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidElement(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `{0, …, len-1}` from 1-based cycles.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut touched = vec![false; len];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > len {
                    return Err(Error::Parse(format!("cycle entry {a} out of range 1..={len}")));
                }
                if touched[a - 1] {
                    return Err(Error::Parse(format!("cycle entry {a} repeated")));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > len {
                    return Err(Error::Parse(format!("cycle entry {b} out of range 1..={len}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Perm::from_one_line(images)
    }

    /// Parses cycle notation such as `(13)(24)`, `(1)` or `(1,10)(2,9)`.
    pub fn parse_cycles(len: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let body = open[..close].trim();
            let cycle: Vec<usize> = if body.contains(',') {
                body.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Parse(format!("{body:?}: {e}")))?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if cycle.is_empty() {
                return Err(Error::Parse(format!("empty cycle in {text:?}")));
            }
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        if cycles.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Perm::from_cycles(len, &cycles)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    /// The number of points moved.
    pub fn support(&self) -> usize {
        self.len() - self.fixed_points()
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest entry and sorted by that entry.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "(1)");
        }
        let sep = if self.len() >= 10 { "," } else { "" };
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(sep))?;
        }
        Ok(())
    }
}
