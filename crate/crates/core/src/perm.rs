//! Permutations of `0..n`, used both for vertices and for coherent components.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a bijection on {0} points")]
    NotBijective(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("unknown label {0:?} in cycle notation")]
    UnknownLabel(String),
    #[error("label {0:?} appears more than once in cycle notation")]
    RepeatedLabel(String),
}

/// A bijection of `0..n`, stored as its image vector. `images[i]` is where
/// `i` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotBijective(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Build from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = BTreeSet::new();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= n || !used.insert(a) {
                    return Err(PermError::NotBijective(n));
                }
                images[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.len());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Canonical cycle decomposition: cycles of length ≥ 2, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Like [`Permutation::cycles`] but including fixed points.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.all_cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    /// Cycle notation using `label` for points; identity renders as `()`.
    pub fn to_cycle_string(&self, label: impl Fn(usize) -> String) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&i| label(i)).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    /// Parse cycle notation such as `(a b)(c d e)`; fixed points are omitted
    /// and `""` or `()` is the identity. Labels inside a cycle are separated by
    /// whitespace or commas.
    pub fn parse_cycles(
        s: &str,
        n: usize,
        lookup: impl Fn(&str) -> Option<usize>,
    ) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut used = BTreeSet::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Malformed(s.to_string()));
            };
            let Some(close) = body.find(')') else {
                return Err(PermError::Malformed(s.to_string()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(PermError::Malformed(s.to_string()));
            }
            let mut cyc = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let i = lookup(tok).ok_or_else(|| PermError::UnknownLabel(tok.to_string()))?;
                if !used.insert(i) {
                    return Err(PermError::RepeatedLabel(tok.to_string()));
                }
                cyc.push(i);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(|i| i.to_string()))
    }
}
