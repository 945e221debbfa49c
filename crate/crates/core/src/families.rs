//! Parameterised graphs with a cyclic holonomy generator whose infra-nilmanifolds
//! admit Anosov diffeomorphisms.
//!
//! Vertices are named `λ{component}_{position}` and the generator maps each
//! vertex to the same position in the image component.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("a simple cycle graph on 4 vertices can not be realized as a quotient graph")]
    FourCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum FamilySpec {
    /// Path of `2m` discrete components of sizes `ℓ_1, ℓ_1, …, ℓ_m, ℓ_m`.
    #[serde(rename = "I")]
    I { sizes: Vec<usize> },
    /// Family I with complete end components of size 3.
    #[serde(rename = "I-modified")]
    IModified { m: usize },
    /// `n` discrete components of size `ℓ` arranged in a cycle.
    #[serde(rename = "II")]
    II { n: usize, l: usize },
    /// Four complete components of size `ℓ` arranged in a 4-cycle.
    #[serde(rename = "II-Z4")]
    IIZ4 { l: usize },
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub generator: Permutation,
    pub generator_order: usize,
    pub expected_dimension: usize,
}

impl FamilyInstance {
    pub fn holonomy_string(&self) -> String {
        self.graph.format_permutation(&self.generator)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "graph": self.graph.to_json(),
            "holonomy": self.holonomy_string(),
            "generator_order": self.generator_order,
            "expected_dimension": self.expected_dimension,
        })
    }
}

/// Components as `(size, complete)`, edges between component indices, and the
/// component permutation.
struct Layout {
    components: Vec<(usize, bool)>,
    joins: Vec<(usize, usize)>,
    action: Vec<usize>,
}

impl Layout {
    fn build(&self) -> (Graph, Permutation) {
        let mut offsets = Vec::new();
        let mut labels = Vec::new();
        for (ci, &(size, _)) in self.components.iter().enumerate() {
            offsets.push(labels.len());
            labels.extend((1..=size).map(|p| format!("λ{}_{}", ci + 1, p)));
        }
        let mut edges = Vec::new();
        for (ci, &(size, complete)) in self.components.iter().enumerate() {
            if complete {
                for a in 0..size {
                    for b in a + 1..size {
                        edges.push((offsets[ci] + a, offsets[ci] + b));
                    }
                }
            }
        }
        for &(i, j) in &self.joins {
            for a in 0..self.components[i].0 {
                for b in 0..self.components[j].0 {
                    edges.push((offsets[i] + a, offsets[j] + b));
                }
            }
        }
        let named: Vec<(String, String)> =
            edges.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
        let graph = Graph::new(&labels, &named).expect("family graphs are simple");
        let mut images = vec![0; labels.len()];
        for (ci, &(size, _)) in self.components.iter().enumerate() {
            let target = self.action[ci];
            for p in 0..size {
                images[offsets[ci] + p] = offsets[target] + p;
            }
        }
        (graph, Permutation::new(images).expect("position-preserving map"))
    }
}

pub fn generate(spec: &FamilySpec) -> Result<FamilyInstance, FamilyError> {
    let (layout, order, expected) = match spec {
        FamilySpec::I { sizes } => {
            let m = sizes.len();
            if m == 0 {
                return Err(FamilyError::Invalid("Family I needs at least one size".into()));
            }
            if sizes[m - 1] < 3 || sizes[..m - 1].iter().any(|&l| l < 2) {
                return Err(FamilyError::Invalid("Family I needs ℓ_m ≥ 3 and ℓ_i ≥ 2".into()));
            }
            let layout = path_layout(sizes, false);
            let expected = 2 * sizes.iter().sum::<usize>()
                + 2 * sizes.windows(2).map(|w| w[0] * w[1]).sum::<usize>()
                + sizes[m - 1] * sizes[m - 1];
            (layout, 2, expected)
        }
        FamilySpec::IModified { m } => {
            let m = *m;
            if m < 3 {
                return Err(FamilyError::Invalid("I-modified needs m ≥ 3".into()));
            }
            let mut sizes = vec![2; m];
            sizes[0] = 3;
            sizes[m - 1] = 3;
            (path_layout(&sizes, true), 2, 12 * m + 19)
        }
        FamilySpec::II { n, l } => {
            let (n, l) = (*n, *l);
            if n == 4 {
                return Err(FamilyError::FourCycle);
            }
            if n < 3 || l < 3 {
                return Err(FamilyError::Invalid("Family II needs n ≥ 3 and ℓ ≥ 3".into()));
            }
            (cycle_layout(n, l, false), n, l * n + l * l * n)
        }
        FamilySpec::IIZ4 { l } => {
            let l = *l;
            if l < 3 {
                return Err(FamilyError::Invalid("II-Z4 needs ℓ ≥ 3".into()));
            }
            (cycle_layout(4, l, true), 4, 4 * l + 2 * l * (l - 1) + 4 * l * l)
        }
    };
    let (graph, generator) = layout.build();
    Ok(FamilyInstance { spec: spec.clone(), graph, generator, generator_order: order, expected_dimension: expected })
}

/// `λ1 – λ3 – … – λ_{2m−1} – λ_{2m} – … – λ4 – λ2`, generator swapping
/// `λ_{2i−1}` and `λ_{2i}`. `complete_ends` makes `λ1, λ2` complete.
fn path_layout(sizes: &[usize], complete_ends: bool) -> Layout {
    let m = sizes.len();
    let mut components = Vec::new();
    for (i, &l) in sizes.iter().enumerate() {
        let c = complete_ends && i == 0;
        components.push((l, c));
        components.push((l, c));
    }
    let mut joins = Vec::new();
    for i in 0..m - 1 {
        joins.push((2 * i, 2 * i + 2));
        joins.push((2 * i + 1, 2 * i + 3));
    }
    joins.push((2 * m - 2, 2 * m - 1));
    let action = (0..2 * m).map(|c| c ^ 1).collect();
    Layout { components, joins, action }
}

fn cycle_layout(n: usize, l: usize, complete: bool) -> Layout {
    Layout {
        components: vec![(l, complete); n],
        joins: (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect(),
        action: (0..n).map(|i| (i + 1) % n).collect(),
    }
}
