//! Coherent components, their partial order and the quotient graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::perm::Permutation;

/// Default cap on the number of components for brute-force enumeration of
/// order-preserving component permutations.
pub const DEFAULT_ORDER_GROUP_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("permutation does not map component {component} onto a component")]
    NotComponentRespecting { component: usize },
    #[error("{count} components exceed the brute-force bound {bound}")]
    TooManyComponents { count: usize, bound: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Complete,
    Discrete,
    Singleton,
}

/// The classes of `α ∼ β ⟺ α ≺ β ∧ β ≺ α`, enumerated so that
/// `λ_i ⊑ λ_j ⇒ i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentPartition {
    components: Vec<Vec<usize>>,
    kinds: Vec<ComponentKind>,
    component_of: Vec<usize>,
    /// Strict relation: `below[i][j]` iff `i ≠ j` and `λ_i ⊑ λ_j`.
    below: Vec<Vec<bool>>,
    quotient_edges: Vec<(usize, usize)>,
}

impl CoherentPartition {
    pub fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let prec: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| g.prec(a, b)).collect()).collect();

        // Classes in order of their smallest vertex.
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if class_of[v] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (v..n).filter(|&u| prec[v][u] && prec[u][v]).collect();
            for &u in &members {
                class_of[u] = id;
            }
            classes.push(members);
        }
        let k = classes.len();
        let rel = |i: usize, j: usize| i != j && prec[classes[i][0]][classes[j][0]];

        // Kahn's algorithm, ties broken by the smallest original index.
        let mut indeg = vec![0usize; k];
        for i in 0..k {
            for j in 0..k {
                if rel(i, j) {
                    indeg[j] += 1;
                }
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = (0..k).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(k);
        while let Some(Reverse(i)) = heap.pop() {
            order.push(i);
            for j in 0..k {
                if rel(i, j) {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        heap.push(Reverse(j));
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), k, "≺ induces a partial order on classes");

        let components: Vec<Vec<usize>> = order.iter().map(|&i| classes[i].clone()).collect();
        let mut component_of = vec![0; n];
        for (ci, comp) in components.iter().enumerate() {
            for &v in comp {
                component_of[v] = ci;
            }
        }
        let kinds = components
            .iter()
            .map(|c| {
                if c.len() == 1 {
                    ComponentKind::Singleton
                } else if g.is_edge(c[0], c[1]) {
                    ComponentKind::Complete
                } else {
                    ComponentKind::Discrete
                }
            })
            .collect();
        let below = (0..k)
            .map(|i| (0..k).map(|j| i != j && prec[components[i][0]][components[j][0]]).collect())
            .collect();
        let quotient_edges = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| g.is_edge(components[i][0], components[j][0]))
            .collect();
        CoherentPartition { components, kinds, component_of, below, quotient_edges }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Vertex indices of each component, ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[usize] {
        &self.components[i]
    }

    pub fn kind(&self, i: usize) -> ComponentKind {
        self.kinds[i]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Strict order `λ_i ⊑ λ_j`, `i ≠ j`.
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| self.below[i][j]).collect()
    }

    /// Loop in the quotient graph: complete with at least two vertices.
    pub fn has_loop(&self, i: usize) -> bool {
        self.kinds[i] == ComponentKind::Complete
    }

    /// Quotient edges `{i, j}`, `i < j`.
    pub fn quotient_edges(&self) -> &[(usize, usize)] {
        &self.quotient_edges
    }

    /// Quotient adjacency, counting loops when `i == j`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.has_loop(i)
        } else {
            self.quotient_edges.contains(&(i.min(j), i.max(j)))
        }
    }

    /// Component permutation induced by a vertex permutation, or an error if
    /// some component is not mapped onto a component.
    pub fn induced_permutation(&self, p: &Permutation) -> Result<Permutation, PartitionError> {
        let images: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let target = self.component_of[p.apply(comp[0])];
                let ok = self.components[target].len() == comp.len()
                    && comp.iter().all(|&v| self.component_of[p.apply(v)] == target);
                if ok {
                    Ok(target)
                } else {
                    Err(PartitionError::NotComponentRespecting { component: ci })
                }
            })
            .collect::<Result<_, _>>()?;
        Permutation::new(images).map_err(|_| PartitionError::NotComponentRespecting { component: 0 })
    }

    /// True iff the component permutation preserves `⊑`.
    pub fn preserves_order(&self, p: &Permutation) -> bool {
        self.order_pairs().into_iter().all(|(i, j)| self.below[p.apply(i)][p.apply(j)])
    }

    /// `Perm(Λ, ⊑)` by brute force over all permutations of the components.
    pub fn order_group(&self, bound: usize) -> Result<Vec<Permutation>, PartitionError> {
        let k = self.len();
        if k > bound {
            return Err(PartitionError::TooManyComponents { count: k, bound });
        }
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        permute_all(&mut current, 0, &mut |images| {
            let p = Permutation::new(images.to_vec()).expect("bijection");
            if self.preserves_order(&p) {
                out.push(p);
            }
        });
        out.sort();
        Ok(out)
    }

    pub fn name(&self, i: usize) -> String {
        format!("λ{}", i + 1)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                serde_json::json!({
                    "index": i + 1,
                    "name": self.name(i),
                    "kind": self.kinds[i],
                    "size": c.len(),
                    "vertices": c.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                    "loop": self.has_loop(i),
                })
            })
            .collect();
        serde_json::json!({
            "components": comps,
            "order": self.order_pairs().iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
            "quotient_edges": self.quotient_edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering of the quotient graph, loops included.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut s = String::from("graph quotient {\n");
        for (i, c) in self.components.iter().enumerate() {
            let members: Vec<&str> = c.iter().map(|&v| g.label(v)).collect();
            s.push_str(&format!(
                "  c{} [label=\"{} {{{}}}\"];\n",
                i + 1,
                self.name(i),
                members.join(", ").replace('"', "\\\"")
            ));
        }
        for i in 0..self.len() {
            if self.has_loop(i) {
                s.push_str(&format!("  c{0} -- c{0};\n", i + 1));
            }
        }
        for &(i, j) in &self.quotient_edges {
            s.push_str(&format!("  c{} -- c{};\n", i + 1, j + 1));
        }
        s.push_str("}\n");
        s
    }
}

/// Heap-free recursive enumeration of all orderings of `v[start..]`.
fn permute_all(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute_all(v, start + 1, f);
        v.swap(start, i);
    }
}

/// All vertex permutations preserving `≺`, by brute force; for fixtures only.
pub fn prec_preserving_permutations(g: &Graph, bound: usize) -> Result<Vec<Permutation>, PartitionError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(PartitionError::TooManyComponents { count: n, bound });
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute_all(&mut current, 0, &mut |images| {
        let p = Permutation::new(images.to_vec()).expect("bijection");
        if g.preserves_prec(&p).expect("sizes agree") {
            out.push(p);
        }
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn sizes(p: &CoherentPartition) -> Vec<usize> {
        p.components().iter().map(Vec::len).collect()
    }

    fn labels(g: &Graph, p: &CoherentPartition, i: usize) -> Vec<String> {
        p.component(i).iter().map(|&v| g.label(v).to_string()).collect()
    }

    #[test]
    fn three_component_path() {
        let g = fixtures::three_component_path();
        let p = CoherentPartition::of(&g);
        assert_eq!(sizes(&p), vec![2, 3, 2]);
        assert_eq!(labels(&g, &p, 0), ["α1", "α2"]);
        assert_eq!(labels(&g, &p, 1), ["β1", "β2", "β3"]);
        assert_eq!(labels(&g, &p, 2), ["γ1", "γ2"]);
        assert_eq!(p.order_pairs(), vec![(0, 1)]);
        assert_eq!((0..3).map(|i| p.has_loop(i)).collect::<Vec<_>>(), [false, true, false]);
        assert_eq!(p.quotient_edges(), &[(0, 2), (1, 2)]);
        assert_eq!(p.order_group(8).unwrap(), vec![Permutation::identity(3)]);
    }

    #[test]
    fn looped_three_component() {
        let g = fixtures::looped_three_component();
        let p = CoherentPartition::of(&g);
        assert_eq!(sizes(&p), vec![2, 3, 2]);
        assert!((0..3).all(|i| p.has_loop(i)));
        assert_eq!(p.order_pairs(), vec![(0, 2), (1, 2)]);
        let grp = p.order_group(8).unwrap();
        assert_eq!(grp.len(), 2);
        assert!(grp.contains(&Permutation::new(vec![1, 0, 2]).unwrap()));
    }

    #[test]
    fn four_cycle_oracle() {
        // brute-force ∼ on 4 vertices
        let g = fixtures::cycle4();
        let n = 4;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let open = g.open_neighborhood(v);
            if let Some(c) = classes.iter_mut().find(|c| {
                let u = c[0];
                open.is_subset(&g.closed_neighborhood(u)) && g.open_neighborhood(u).is_subset(&g.closed_neighborhood(v))
            }) {
                c.push(v);
            } else {
                classes.push(vec![v]);
            }
        }
        let p = CoherentPartition::of(&g);
        assert_eq!(p.components(), classes.as_slice());
        assert_eq!(p.components(), &[vec![0, 2], vec![1, 3]]);
        assert!(p.components().iter().enumerate().all(|(i, _)| p.kind(i) == ComponentKind::Discrete));
        assert_eq!(p.quotient_edges(), &[(0, 1)]);
        assert!(!p.has_loop(0) && !p.has_loop(1));
    }

    #[test]
    fn induced_permutations() {
        let k33 = fixtures::k33();
        let p = CoherentPartition::of(&k33);
        let swap = k33.parse_permutation("(a1 b1)(a2 b2)(a3 b3)").unwrap();
        assert_eq!(p.induced_permutation(&swap).unwrap(), Permutation::new(vec![1, 0]).unwrap());
        assert!(p.induced_permutation(&Permutation::identity(6)).unwrap().is_identity());

        let g = fixtures::four_component_path();
        let p = CoherentPartition::of(&g);
        let names: Vec<String> = (0..4).map(|i| g.label(p.component(i)[0]).to_string()).collect();
        assert_eq!(names, ["α1", "β1", "γ1", "δ1"]);
        let s = g.parse_permutation(fixtures::FOUR_COMPONENT_PATH_SWAP).unwrap();
        assert_eq!(p.induced_permutation(&s).unwrap().images(), &[1, 0, 3, 2]);

        let c4 = fixtures::cycle4();
        let p = CoherentPartition::of(&c4);
        let bad = c4.parse_permutation("(v1 v2)").unwrap();
        assert!(matches!(p.induced_permutation(&bad), Err(PartitionError::NotComponentRespecting { .. })));
    }

    #[test]
    fn order_group_bounds() {
        let p = CoherentPartition::of(&fixtures::complete(4));
        assert_eq!(p.len(), 1);
        assert_eq!(p.order_group(8).unwrap().len(), 1);
        let d = CoherentPartition::of(&fixtures::five_cycle());
        assert!(matches!(d.order_group(4), Err(PartitionError::TooManyComponents { count: 5, bound: 4 })));
    }

    #[test]
    fn prec_preserving_groups_of_fixtures() {
        let c5 = fixtures::five_cycle();
        assert_eq!(prec_preserving_permutations(&c5, 8).unwrap().len(), 120);
        // every ≺-preserving permutation fixes all three components
        let g = fixtures::looped_three_component();
        let p = CoherentPartition::of(&g);
        let perms = prec_preserving_permutations(&g, 8).unwrap();
        assert!(perms.iter().all(|s| p.induced_permutation(s).unwrap().is_identity()));
        assert!(perms.iter().all(|s| g.is_automorphism(s).unwrap()));
    }

    #[test]
    fn dot_has_loops() {
        let g = fixtures::three_component_path();
        let dot = CoherentPartition::of(&g).to_dot(&g);
        assert!(dot.contains("c2 -- c2;"));
        assert!(dot.contains("c1 -- c3;"));
        assert!(dot.starts_with("graph quotient {"));
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
                let e: Vec<(usize, usize)> =
                    pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&p, _)| p).collect();
                Graph::from_index_edges(n, &e).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn prec_is_a_preorder(g in arb_graph(8)) {
            let n = g.vertex_count();
            for a in 0..n {
                prop_assert!(g.prec(a, a));
                for b in 0..n {
                    for c in 0..n {
                        if g.prec(a, b) && g.prec(b, c) {
                            prop_assert!(g.prec(a, c));
                        }
                    }
                }
            }
        }

        #[test]
        fn components_are_homogeneous(g in arb_graph(8)) {
            let p = CoherentPartition::of(&g);
            let mut covered = vec![0; g.vertex_count()];
            for (i, comp) in p.components().iter().enumerate() {
                for &v in comp { covered[v] += 1; }
                for &a in comp {
                    for &b in comp {
                        if a != b {
                            prop_assert_eq!(g.is_edge(a, b), p.kind(i) == ComponentKind::Complete);
                        }
                    }
                }
                for j in 0..p.len() {
                    if i == j { continue; }
                    let any = comp.iter().any(|&a| p.component(j).iter().any(|&b| g.is_edge(a, b)));
                    let all = comp.iter().all(|&a| p.component(j).iter().all(|&b| g.is_edge(a, b)));
                    prop_assert_eq!(any, all);
                    prop_assert_eq!(any, p.adjacent(i, j));
                    if p.precedes(i, j) {
                        prop_assert!(i < j);
                    }
                }
                prop_assert_eq!(p.has_loop(i), comp.len() >= 2 && g.is_edge(comp[0], comp[1]));
            }
            prop_assert!(covered.iter().all(|&c| c == 1));
        }
    }
}
