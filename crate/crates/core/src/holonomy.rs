//! Finite holonomy generated by graph automorphisms and its action on the
//! coherent components.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coherent::CoherentPartition;
use crate::graph::{Graph, GraphError};
use crate::lie::GraphLieAlgebra;
use crate::perm::Permutation;
use crate::{IntMatrix, RationalMatrix};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolonomyError {
    #[error("generator {index} ({cycles}) is not a graph automorphism")]
    NotAutomorphism { index: usize, cycles: String },
    #[error("holonomy group has more than {0} elements")]
    OrderBoundExceeded(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    /// Indices into [`HolonomyAction::elements`], ascending.
    pub elements: Vec<usize>,
    /// Index of a generating element when the stabilizer is cyclic.
    pub generator: Option<usize>,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyAction {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    component_action: Vec<Permutation>,
    orbits: Vec<Vec<usize>>,
    stabilizers: Vec<Stabilizer>,
    c_values: Vec<u8>,
    /// Per component, an element mapping its orbit representative onto it.
    conjugators: Vec<usize>,
}

impl HolonomyAction {
    pub fn build(
        g: &Graph,
        part: &CoherentPartition,
        gens: &[Permutation],
        max_order: usize,
    ) -> Result<Self, HolonomyError> {
        let n = g.vertex_count();
        for (index, p) in gens.iter().enumerate() {
            if !g.is_automorphism(p)? {
                return Err(HolonomyError::NotAutomorphism { index, cycles: g.format_permutation(p) });
            }
        }
        let elements = closure(n, gens, max_order)?;
        let component_action: Vec<Permutation> = elements
            .iter()
            .map(|e| part.induced_permutation(e).expect("automorphisms respect components"))
            .collect();

        let k = part.len();
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut conjugators = vec![0; k];
        for rep in 0..k {
            if orbit_of[rep] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for (ei, a) in component_action.iter().enumerate() {
                let target = a.apply(rep);
                if members.insert(target) {
                    conjugators[target] = ei;
                }
            }
            for &m in &members {
                orbit_of[m] = orbits.len();
            }
            orbits.push(members.into_iter().collect());
        }
        let stabilizers = orbits
            .iter()
            .map(|orbit| {
                let rep = orbit[0];
                let members: Vec<usize> =
                    (0..elements.len()).filter(|&ei| component_action[ei].apply(rep) == rep).collect();
                let generator = members.iter().copied().find(|&ei| elements[ei].order() == members.len());
                Stabilizer { elements: members, generator }
            })
            .collect();
        let c_values = orbits
            .iter()
            .map(|orbit| {
                let touching = orbit.iter().any(|&i| orbit.iter().any(|&j| part.adjacent(i, j)));
                if touching {
                    2
                } else {
                    1
                }
            })
            .collect();
        Ok(HolonomyAction {
            generators: gens.to_vec(),
            elements,
            component_action,
            orbits,
            stabilizers,
            c_values,
            conjugators,
        })
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All group elements, sorted by image vector; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn component_action(&self, element: usize) -> &Permutation {
        &self.component_action[element]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Representative of orbit `i`: its smallest component index.
    pub fn orbit_rep(&self, i: usize) -> usize {
        self.orbits[i][0]
    }

    pub fn stabilizer(&self, i: usize) -> &Stabilizer {
        &self.stabilizers[i]
    }

    pub fn c_value(&self, i: usize) -> u8 {
        self.c_values[i]
    }

    /// Element index `h` with `h(λ_rep) = λ` for the orbit containing `λ`.
    pub fn conjugator(&self, component: usize) -> usize {
        self.conjugators[component]
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|e| e.order() == n)
    }
}

/// Group closure by breadth-first search over right multiplication by the
/// generators.
fn closure(n: usize, gens: &[Permutation], max_order: usize) -> Result<Vec<Permutation>, HolonomyError> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.compose(s);
            if !seen.contains(&y) {
                if seen.len() == max_order {
                    return Err(HolonomyError::OrderBoundExceeded(max_order));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Eigenvalue-one test for a holonomy generator acting by its permutation
/// matrix: `v = Σ_α α` is fixed.
pub fn realizability_eigenvalue_one(alg: &GraphLieAlgebra, gen: &Permutation) -> (bool, Option<Vec<BigInt>>) {
    let p = IntMatrix::permutation(gen.images());
    let m = alg.extend(&p).expect("permutation matrices are invertible");
    let mut v = vec![BigInt::zero(); alg.dim()];
    for x in v.iter_mut().take(alg.dim_v()) {
        *x = BigInt::one();
    }
    let fixed = m.mul_vec(&v) == v;
    (fixed, fixed.then_some(v))
}

/// Diagnostic form for an arbitrary map on `V`: a vector in the kernel of
/// `φ − I` on the whole algebra, if any.
pub fn realizability_eigenvalue_one_matrix(
    alg: &GraphLieAlgebra,
    gv: &IntMatrix,
) -> Result<(bool, Option<Vec<BigRational>>), crate::lie::LieError> {
    let m: RationalMatrix = alg.extend(gv)?.to_rational();
    let shifted = m.sub(&RationalMatrix::identity(m.rows()));
    let kernel = shifted.kernel();
    Ok(match kernel.into_iter().next() {
        Some(v) => (true, Some(v)),
        None => (false, None),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn action(g: &Graph, gens: &[&str]) -> HolonomyAction {
        let part = CoherentPartition::of(g);
        let gens: Vec<Permutation> = gens.iter().map(|s| g.parse_permutation(s).unwrap()).collect();
        HolonomyAction::build(g, &part, &gens, DEFAULT_MAX_GROUP_ORDER).unwrap()
    }

    #[test]
    fn four_component_path_swap() {
        let g = fixtures::four_component_path();
        let a = action(&g, &[fixtures::FOUR_COMPONENT_PATH_SWAP]);
        assert_eq!(a.order(), 2);
        assert_eq!(a.orbits(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!((a.c_value(0), a.c_value(1)), (1, 2));
        assert!((0..2).all(|i| a.stabilizer(i).order() == 1 && a.stabilizer(i).is_cyclic()));
        assert_eq!(a.conjugator(1), 1);
        assert!(a.is_cyclic());
    }

    #[test]
    fn trivial_holonomy() {
        let g = fixtures::three_component_path();
        let a = action(&g, &[]);
        assert_eq!(a.order(), 1);
        assert_eq!(a.orbits(), &[vec![0], vec![1], vec![2]]);
        assert_eq!((0..3).map(|i| a.c_value(i)).collect::<Vec<_>>(), [1, 2, 1]);
    }

    #[test]
    fn cycle4_rotation() {
        let g = fixtures::cycle4();
        let a = action(&g, &["(v1 v2 v3 v4)"]);
        assert_eq!(a.order(), 4);
        assert_eq!(a.orbits(), &[vec![0, 1]]);
        assert_eq!(a.c_value(0), 2);
        let st = a.stabilizer(0);
        assert_eq!(st.order(), 2);
        assert_eq!(g.format_permutation(&a.elements()[st.generator.unwrap()]), "(v1 v3)(v2 v4)");
    }

    #[test]
    fn generator_errors() {
        let g = fixtures::cycle4();
        let part = CoherentPartition::of(&g);
        let bad = g.parse_permutation("(v1 v2)").unwrap();
        assert!(matches!(
            HolonomyAction::build(&g, &part, &[bad], 100),
            Err(HolonomyError::NotAutomorphism { index: 0, .. })
        ));
        let rot = g.parse_permutation("(v1 v2 v3 v4)").unwrap();
        assert_eq!(HolonomyAction::build(&g, &part, &[rot], 3), Err(HolonomyError::OrderBoundExceeded(3)));
    }

    #[test]
    fn non_cyclic_stabilizer_is_flagged() {
        // Klein four-group on a single discrete component
        let g = fixtures::discrete(4);
        let a = action(&g, &["(v1 v2)(v3 v4)", "(v1 v3)(v2 v4)"]);
        assert_eq!(a.order(), 4);
        assert!(!a.stabilizer(0).is_cyclic());
        assert!(!a.is_cyclic());
    }

    #[test]
    fn eigenvalue_one() {
        let g = fixtures::k33();
        let alg = GraphLieAlgebra::new(&g);
        let swap = g.parse_permutation("(a1 b1)(a2 b2)(a3 b3)").unwrap();
        let (ok, v) = realizability_eigenvalue_one(&alg, &swap);
        assert!(ok);
        let v = v.unwrap();
        assert!(v[..6].iter().all(|x| x.is_one()) && v[6..].iter().all(|x| x.is_zero()));
        assert!(realizability_eigenvalue_one(&alg, &Permutation::identity(6)).0);

        let d2 = GraphLieAlgebra::new(&fixtures::discrete(2));
        let minus = IntMatrix::identity(2).scale(&BigInt::from(-1));
        assert_eq!(realizability_eigenvalue_one_matrix(&d2, &minus).unwrap(), (false, None));
        assert!(realizability_eigenvalue_one_matrix(&d2, &IntMatrix::identity(2)).unwrap().0);
    }

    /// A random graph together with some of its automorphisms, found by
    /// brute force over vertex permutations.
    pub(crate) fn arb_graph_with_automorphisms(max_n: usize) -> impl Strategy<Value = (Graph, Vec<Permutation>)> {
        crate::coherent::tests::arb_graph(max_n).prop_flat_map(|g| {
            let autos = all_automorphisms(&g);
            let k = autos.len();
            (Just(g), proptest::collection::vec(0..k, 0..3)).prop_map(move |(g, picks)| {
                let gens = picks.into_iter().map(|i| autos[i].clone()).collect();
                (g, gens)
            })
        })
    }

    pub(crate) fn all_automorphisms(g: &Graph) -> Vec<Permutation> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        fn rec(v: &mut Vec<usize>, k: usize, g: &Graph, out: &mut Vec<Permutation>) {
            if k == v.len() {
                let p = Permutation::new(v.clone()).unwrap();
                if g.is_automorphism(&p).unwrap() {
                    out.push(p);
                }
                return;
            }
            for i in k..v.len() {
                v.swap(k, i);
                rec(v, k + 1, g, out);
                v.swap(k, i);
            }
        }
        rec(&mut v, 0, g, &mut out);
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn action_invariants((g, gens) in arb_graph_with_automorphisms(6)) {
            let part = CoherentPartition::of(&g);
            let a = HolonomyAction::build(&g, &part, &gens, DEFAULT_MAX_GROUP_ORDER).unwrap();
            prop_assert!(a.elements()[0].is_identity());
            let mut covered = vec![0; part.len()];
            for (i, orbit) in a.orbits().iter().enumerate() {
                for &c in orbit { covered[c] += 1; }
                prop_assert_eq!(a.stabilizer(i).order() * orbit.len(), a.order());
                // c is constant along the orbit: every member touches the orbit
                let c = a.c_value(i);
                for &m in orbit {
                    let touches = orbit.iter().any(|&j| part.adjacent(m, j));
                    prop_assert_eq!(touches, c == 2);
                }
                for &m in orbit {
                    let h = a.conjugator(m);
                    prop_assert_eq!(a.component_action(h).apply(orbit[0]), m);
                }
            }
            prop_assert!(covered.iter().all(|&c| c == 1));
            // induced action is a homomorphism
            for (x, px) in a.elements().iter().zip(0..) {
                for (y, py) in a.elements().iter().zip(0..) {
                    let xy = part.induced_permutation(&x.compose(y)).unwrap();
                    prop_assert_eq!(xy, a.component_action(px).compose(a.component_action(py)));
                }
            }
            // every automorphism preserves ≺
            for s in &gens {
                prop_assert!(g.preserves_prec(s).unwrap());
            }
        }

        #[test]
        fn cyclic_stabilizer_is_power((g, gens) in arb_graph_with_automorphisms(6)) {
            prop_assume!(gens.len() == 1);
            let part = CoherentPartition::of(&g);
            let a = HolonomyAction::build(&g, &part, &gens, DEFAULT_MAX_GROUP_ORDER).unwrap();
            let phi = &gens[0];
            let n = a.order();
            for (i, orbit) in a.orbits().iter().enumerate() {
                let o = orbit.len();
                let st = a.stabilizer(i);
                prop_assert_eq!(st.order(), n / o);
                prop_assert!(st.is_cyclic());
                let p = phi.pow(o);
                prop_assert!(st.elements.iter().any(|&e| a.elements()[e] == p));
            }
            let alg = GraphLieAlgebra::new(&g);
            prop_assert!(realizability_eigenvalue_one(&alg, phi).0);
        }
    }
}
