//! Finite simple graphs with labelled vertices, neighbourhoods, the relation
//! `α ≺ β ⟺ Ω′(α) ⊆ Ω(β)` and permutation predicates.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph description: {0}")]
    Malformed(String),
    #[error("loop edge at vertex {0:?}")]
    Loop(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0:?}-{1:?}")]
    DuplicateEdge(String, String),
    #[error("permutation acts on {found} points but the graph has {expected} vertices")]
    PermutationSize { expected: usize, found: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A finite simple graph. Vertex order is the input order; edges are stored
/// as index pairs `(i, j)` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacent: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || "(),;".contains(c)) {
                return Err(GraphError::Malformed(format!("invalid vertex label {l:?}")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        let mut adjacent = vec![vec![false; n]; n];
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let a = *index.get(u).ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
            let b = *index.get(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
            if a == b {
                return Err(GraphError::Loop(u.to_string()));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(u.to_string(), v.to_string()));
            }
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        Ok(Graph { labels, index, adjacent, edges: set.into_iter().collect() })
    }

    /// Graph on vertices labelled `0..n` from index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| {
                let l = |i: usize| labels.get(i).cloned().unwrap_or_else(|| i.to_string());
                (l(a), l(b))
            })
            .collect();
        Self::new(&labels, &named)
    }

    /// Parse either the JSON form `{"vertices": [...], "edges": [[u, v], ...]}`
    /// or the plain-text form: vertex labels (whitespace separated, any number
    /// of lines), a line `--`, then one edge `u v` per line. `#` starts a
    /// comment in the text form.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            let g: GraphJson =
                serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
            return Self::new(&g.vertices, &g.edges);
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut in_edges = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if line == "--" {
                if in_edges {
                    return Err(GraphError::Malformed(format!("line {}: second `--`", lineno + 1)));
                }
                in_edges = true;
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if in_edges {
                if toks.len() != 2 {
                    return Err(GraphError::Malformed(format!(
                        "line {}: expected `u v`, found {line:?}",
                        lineno + 1
                    )));
                }
                edges.push((toks[0].to_string(), toks[1].to_string()));
            } else {
                vertices.extend(toks.into_iter().map(str::to_string));
            }
        }
        if !in_edges {
            return Err(GraphError::Malformed("missing `--` separator between vertices and edges".into()));
        }
        Self::new(&vertices, &edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.labels,
            "edges": self.edges.iter().map(|&(a, b)| [&self.labels[a], &self.labels[b]]).collect::<Vec<_>>(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize, GraphError> {
        self.index.get(label).copied().ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adjacent[a][b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacent[v].iter().filter(|&&x| x).count()
    }

    /// Open neighbourhood `Ω′(v)`.
    pub fn open_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        (0..self.vertex_count()).filter(|&u| self.adjacent[v][u]).collect()
    }

    /// Closed neighbourhood `Ω(v) = Ω′(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut s = self.open_neighborhood(v);
        s.insert(v);
        s
    }

    /// `(Ω′(v), Ω(v))` by label.
    pub fn neighborhoods(&self, v: &str) -> Result<(BTreeSet<String>, BTreeSet<String>), GraphError> {
        let i = self.vertex(v)?;
        let name = |s: BTreeSet<usize>| s.into_iter().map(|u| self.labels[u].clone()).collect();
        Ok((name(self.open_neighborhood(i)), name(self.closed_neighborhood(i))))
    }

    /// `a ≺ b` iff `Ω′(a) ⊆ Ω(b)`.
    pub fn prec(&self, a: usize, b: usize) -> bool {
        (0..self.vertex_count()).all(|u| !self.adjacent[a][u] || u == b || self.adjacent[b][u])
    }

    pub fn prec_by_label(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.prec(self.vertex(a)?, self.vertex(b)?))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if self.adjacent[v][u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_size(&self, p: &Permutation) -> Result<(), GraphError> {
        if p.len() != self.vertex_count() {
            return Err(GraphError::PermutationSize { expected: self.vertex_count(), found: p.len() });
        }
        Ok(())
    }

    /// True iff `p` maps edges onto edges.
    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool, GraphError> {
        self.check_size(p)?;
        Ok(self.edges.iter().all(|&(a, b)| self.adjacent[p.apply(a)][p.apply(b)]))
    }

    /// True iff `a ≺ b ⇒ p(a) ≺ p(b)` for all pairs.
    pub fn preserves_prec(&self, p: &Permutation) -> Result<bool, GraphError> {
        self.check_size(p)?;
        let n = self.vertex_count();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.prec(a, b) && !self.prec(p.apply(a), p.apply(b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parse a vertex permutation in cycle notation over this graph's labels.
    pub fn parse_permutation(&self, s: &str) -> Result<Permutation, GraphError> {
        Ok(Permutation::parse_cycles(s, self.vertex_count(), |l| self.index.get(l).copied())?)
    }

    pub fn format_permutation(&self, p: &Permutation) -> String {
        p.to_cycle_string(|i| self.labels[i].clone())
    }

    /// Sorted degree sequence, a cheap isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}
