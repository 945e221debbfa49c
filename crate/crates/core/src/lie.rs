//! The 2-step nilpotent Lie algebra `n_G = V ⊕ W` of a graph.
//!
//! `V` has the vertices as basis, `W` the wedges `α∧β` over edges with `α`
//! before `β` in vertex order. Coordinates on `V ⊕ W` list `V` first.

use std::collections::HashMap;

use thiserror::Error;

use crate::coherent::CoherentPartition;
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::scalar::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("expected a {expected}×{expected} matrix, found {rows}×{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("map on V is singular")]
    Singular,
    #[error("image of edge {0}∧{1} leaves the span of the edge wedges")]
    WedgeSpanNotStable(String, String),
    #[error("component {component} has {expected} vertices but {found} eigenvalues were given")]
    SpectrumSize { component: usize, expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLieAlgebra {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    wedge_index: HashMap<(usize, usize), usize>,
}

impl GraphLieAlgebra {
    pub fn new(g: &Graph) -> Self {
        let edges = g.edges().to_vec();
        let wedge_index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        GraphLieAlgebra { labels: g.labels().to_vec(), edges, wedge_index }
    }

    pub fn dim_v(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_w(&self) -> usize {
        self.edges.len()
    }

    pub fn dim(&self) -> usize {
        self.dim_v() + self.dim_w()
    }

    pub fn v_basis(&self) -> &[String] {
        &self.labels
    }

    /// Wedge basis of `W` as vertex index pairs `(a, b)`, `a < b`.
    pub fn w_basis(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn wedge_label(&self, k: usize) -> String {
        let (a, b) = self.edges[k];
        format!("{}∧{}", self.labels[a], self.labels[b])
    }

    /// `[e_a, e_b]` for vertices `a, b` as `(sign, wedge index)`, or `None`
    /// when the bracket vanishes.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Option<(i8, usize)> {
        if a < b {
            self.wedge_index.get(&(a, b)).map(|&k| (1, k))
        } else {
            self.wedge_index.get(&(b, a)).map(|&k| (-1, k))
        }
    }

    /// Bracket of two vectors in `V ⊕ W` coordinates. Only the `V` parts
    /// contribute.
    pub fn bracket<T: Ring>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim_v();
        let mut out = vec![T::zero(); self.dim()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            out[n + k] = x[a].clone() * y[b].clone() - x[b].clone() * y[a].clone();
        }
        out
    }

    /// Extend `gV` on `V` to `gV ⊕ Λ²gV|_W`.
    pub fn extend<T: Ring>(&self, gv: &Matrix<T>) -> Result<Matrix<T>, LieError> {
        let n = self.dim_v();
        if gv.rows() != n || gv.cols() != n {
            return Err(LieError::Shape { expected: n, rows: gv.rows(), cols: gv.cols() });
        }
        if n > 0 && gv.determinant().is_zero() {
            return Err(LieError::Singular);
        }
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = gv[(i, j)].clone();
            }
        }
        for (col, &(a, b)) in self.edges.iter().enumerate() {
            // g(e_a) ∧ g(e_b) = Σ_{c<d} (g_ca g_db − g_da g_cb) e_c ∧ e_d
            for c in 0..n {
                for dd in c + 1..n {
                    let coef = gv[(c, a)].clone() * gv[(dd, b)].clone() - gv[(dd, a)].clone() * gv[(c, b)].clone();
                    if coef.is_zero() {
                        continue;
                    }
                    match self.wedge_index.get(&(c, dd)) {
                        Some(&row) => m[(n + row, n + col)] = coef,
                        None => {
                            return Err(LieError::WedgeSpanNotStable(
                                self.labels[a].clone(),
                                self.labels[b].clone(),
                            ))
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// True iff `m` is invertible and `m[x, y] = [mx, my]` on all basis pairs.
    pub fn is_automorphism<T: Ring>(&self, m: &Matrix<T>) -> Result<bool, LieError> {
        let d = self.dim();
        if m.rows() != d || m.cols() != d {
            return Err(LieError::Shape { expected: d, rows: m.rows(), cols: m.cols() });
        }
        if d > 0 && m.determinant().is_zero() {
            return Ok(false);
        }
        let n = self.dim_v();
        let cols: Vec<Vec<T>> = (0..d).map(|j| m.column(j)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let lhs: Vec<T> = match (i < n && j < n).then(|| self.bracket_basis(i, j)).flatten() {
                    Some((_, k)) => cols[n + k].clone(),
                    None => vec![T::zero(); d],
                };
                if self.bracket(&cols[i], &cols[j]) != lhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Double brackets `[[x, y], z]` over all basis triples; always zero for a
    /// 2-step algebra.
    pub fn double_brackets_vanish(&self) -> bool {
        let d = self.dim();
        let basis = |i: usize| -> Vec<i64> { (0..d).map(|k| i64::from(k == i)).collect() };
        (0..d).all(|i| {
            (0..d).all(|j| {
                let xy = self.bracket(&basis(i), &basis(j));
                (0..d).all(|k| self.bracket(&xy, &basis(k)).iter().all(|&c| c == 0))
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let brackets: Vec<serde_json::Value> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                serde_json::json!({
                    "x": self.labels[a],
                    "y": self.labels[b],
                    "w": k,
                })
            })
            .collect();
        serde_json::json!({
            "dim": self.dim(),
            "v_basis": self.labels,
            "w_basis": (0..self.dim_w()).map(|k| self.wedge_label(k)).collect::<Vec<_>>(),
            "brackets": brackets,
        })
    }
}

/// Eigenvalues of the `W` block of a component-preserving map, given the
/// eigenvalues of each `V_λ` block: all `μ_{λ,i} μ_{λ',j}` over quotient
/// edges `λ ≠ λ'`, then `μ_{λ,i} μ_{λ,j}` (`i < j`) for complete `λ`.
pub fn algebra_eigenvalue_products<E: Clone>(
    part: &CoherentPartition,
    spectra: &[Vec<E>],
    mul: impl Fn(&E, &E) -> E,
) -> Result<Vec<E>, LieError> {
    for (i, s) in spectra.iter().enumerate() {
        let expected = part.component(i).len();
        if s.len() != expected {
            return Err(LieError::SpectrumSize { component: i, expected, found: s.len() });
        }
    }
    if spectra.len() != part.len() {
        return Err(LieError::SpectrumSize { component: spectra.len(), expected: 0, found: 0 });
    }
    let mut out = Vec::new();
    for &(i, j) in part.quotient_edges() {
        for a in &spectra[i] {
            for b in &spectra[j] {
                out.push(mul(a, b));
            }
        }
    }
    for i in 0..part.len() {
        if part.has_loop(i) {
            let s = &spectra[i];
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    out.push(mul(&s[a], &s[b]));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::{IntMatrix, RationalMatrix};
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn dimensions() {
        assert_eq!(GraphLieAlgebra::new(&fixtures::k33()).dim(), 15);
        assert_eq!(GraphLieAlgebra::new(&fixtures::five_cycle()).dim(), 10);
        let d = GraphLieAlgebra::new(&fixtures::discrete(4));
        assert_eq!((d.dim(), d.dim_w()), (4, 0));
        assert!(d.double_brackets_vanish());
        assert!(GraphLieAlgebra::new(&fixtures::three_component_path()).double_brackets_vanish());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let alg = GraphLieAlgebra::new(&fixtures::five_cycle());
        assert_eq!(alg.bracket_basis(0, 1), Some((1, 0)));
        assert_eq!(alg.bracket_basis(1, 0), Some((-1, 0)));
        assert_eq!(alg.bracket_basis(0, 2), None);
    }

    #[test]
    fn extension_of_identity_and_k2() {
        let alg = GraphLieAlgebra::new(&fixtures::k33());
        assert_eq!(alg.extend(&IntMatrix::identity(6)).unwrap(), IntMatrix::identity(15));

        let k2 = GraphLieAlgebra::new(&fixtures::complete(2));
        let m = k2.extend(&IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(m[(2, 2)], BigInt::from(1));
        assert!(k2.is_automorphism(&m).unwrap());
    }

    #[test]
    fn extension_errors() {
        let k2 = GraphLieAlgebra::new(&fixtures::complete(2));
        assert_eq!(k2.extend(&IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]])), Err(LieError::Singular));
        assert!(matches!(k2.extend(&IntMatrix::identity(3)), Err(LieError::Shape { .. })));
        // mixing a1 into b1 sends a1∧a2... out of the edge span of K33
        let k33 = GraphLieAlgebra::new(&fixtures::k33());
        let mut g = IntMatrix::identity(6);
        g[(3, 0)] = BigInt::from(1);
        assert!(matches!(k33.extend(&g), Err(LieError::WedgeSpanNotStable(..))));
    }

    #[test]
    fn k33_block_diagonal_extension_is_kronecker() {
        let alg = GraphLieAlgebra::new(&fixtures::k33());
        let b = IntMatrix::companion(&"x^3 - x^2 - 2x + 1".parse().unwrap());
        let gv = IntMatrix::block_diagonal(&[b.clone(), b.clone()]);
        let m = alg.extend(&gv).unwrap();
        // edge (a_i, b_j) has index 3i + j; g(a_i)∧g(b_j) = Σ B_ki B_lj a_k∧b_l
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let expected = b[(k, i)].clone() * b[(l, j)].clone();
                        assert_eq!(m[(6 + 3 * k + l, 6 + 3 * i + j)], expected);
                    }
                }
            }
        }
        assert!(alg.is_automorphism(&m).unwrap());
    }

    #[test]
    fn automorphism_predicate() {
        let k2 = GraphLieAlgebra::new(&fixtures::complete(2));
        // shear e_1 ↦ e_1 + w
        let mut shear = IntMatrix::identity(3);
        shear[(2, 0)] = BigInt::from(1);
        assert!(k2.is_automorphism(&shear).unwrap());
        let mut bad = IntMatrix::identity(3);
        bad[(2, 2)] = BigInt::from(2);
        assert!(!k2.is_automorphism(&bad).unwrap());
        assert!(k2.is_automorphism(&IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn json_dump_is_stable() {
        let alg = GraphLieAlgebra::new(&fixtures::cycle4());
        let golden = r#"{"brackets":[{"w":0,"x":"v1","y":"v2"},{"w":1,"x":"v1","y":"v4"},{"w":2,"x":"v2","y":"v3"},{"w":3,"x":"v3","y":"v4"}],"dim":8,"v_basis":["v1","v2","v3","v4"],"w_basis":["v1∧v2","v1∧v4","v2∧v3","v3∧v4"]}"#;
        assert_eq!(serde_json::to_string(&alg.to_json()).unwrap(), golden);
    }

    #[test]
    fn eigenvalue_products() {
        let k2 = CoherentPartition::of(&fixtures::complete(2));
        let p = algebra_eigenvalue_products(&k2, &[vec![3.0, 1.0 / 3.0]], |a, b| a * b).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p[0] - 1.0f64).abs() < 1e-12);

        let k3 = CoherentPartition::of(&fixtures::complete(3));
        let p = algebra_eigenvalue_products(&k3, &[vec![2, 3, 5]], |a, b| a * b).unwrap();
        assert_eq!(p, vec![6, 10, 15]);

        // discrete ends contribute only cross products
        let g = fixtures::three_component_path();
        let part = CoherentPartition::of(&g);
        let spectra = vec![vec![2, 3], vec![5, 7, 11], vec![13, 17]];
        let p = algebra_eigenvalue_products(&part, &spectra, |a, b| a * b).unwrap();
        assert_eq!(p.len(), g.edge_count());
        assert!(!p.contains(&6));
        assert!(p.contains(&35) && p.contains(&26));

        assert!(matches!(
            algebra_eigenvalue_products(&k3, &[vec![1, 2]], |a, b| a * b),
            Err(LieError::SpectrumSize { .. })
        ));
    }

    fn arb_block(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect())
        })
    }

    /// Random graph whose partition has components of the given sizes, with a
    /// block-diagonal map on `V`.
    fn arb_graph_and_blocks() -> impl Strategy<Value = (Graph, IntMatrix, IntMatrix)> {
        crate::coherent::tests::arb_graph(5).prop_flat_map(|g| {
            let part = CoherentPartition::of(&g);
            let sizes: Vec<usize> = part.components().iter().map(Vec::len).collect();
            let blocks = sizes.iter().map(|&s| arb_block(s)).collect::<Vec<_>>();
            let blocks2 = sizes.iter().map(|&s| arb_block(s)).collect::<Vec<_>>();
            (Just(g), blocks, blocks2).prop_map(|(g, b1, b2)| {
                let part = CoherentPartition::of(&g);
                (g.clone(), scatter(&part, g.vertex_count(), &b1), scatter(&part, g.vertex_count(), &b2))
            })
        })
    }

    fn scatter(part: &CoherentPartition, n: usize, blocks: &[IntMatrix]) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for (ci, comp) in part.components().iter().enumerate() {
            for (a, &u) in comp.iter().enumerate() {
                for (b, &v) in comp.iter().enumerate() {
                    m[(u, v)] = blocks[ci][(a, b)].clone();
                }
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn extension_is_functorial_and_an_automorphism((g, x, y) in arb_graph_and_blocks()) {
            let alg = GraphLieAlgebra::new(&g);
            prop_assert!(alg.double_brackets_vanish());
            prop_assert_eq!(alg.dim(), g.vertex_count() + g.edge_count());
            prop_assume!(!x.determinant().is_zero() && !y.determinant().is_zero());
            let ex = alg.extend(&x).unwrap();
            let ey = alg.extend(&y).unwrap();
            prop_assert_eq!(alg.extend(&x.mul(&y)).unwrap(), ex.mul(&ey));
            prop_assert!(alg.is_automorphism(&ex).unwrap());
        }

        #[test]
        fn extended_spectrum_matches_products((g, x, _y) in arb_graph_and_blocks()) {
            use nalgebra::{Complex, DMatrix};
            prop_assume!(!x.determinant().is_zero());
            let alg = GraphLieAlgebra::new(&g);
            let part = CoherentPartition::of(&g);
            let eig = |m: &RationalMatrix| -> Vec<Complex<f64>> {
                let n = m.rows();
                if n == 0 { return vec![]; }
                let dm = DMatrix::from_fn(n, n, |i, j| crate::scalar::ToF64::to_f64_lossy(&m[(i, j)]));
                dm.complex_eigenvalues().iter().cloned().collect()
            };
            let spectra: Vec<Vec<Complex<f64>>> = part
                .components()
                .iter()
                .map(|c| eig(&x.submatrix(c, c).to_rational()))
                .collect();
            let mut expected: Vec<Complex<f64>> = spectra.iter().flatten().cloned().collect();
            expected.extend(algebra_eigenvalue_products(&part, &spectra, |a, b| a * b).unwrap());
            let actual = eig(&alg.extend(&x).unwrap().to_rational());
            prop_assert_eq!(expected.len(), actual.len());
            // match greedily within tolerance scaled by magnitude
            let mut used = vec![false; actual.len()];
            for e in &expected {
                let best = (0..actual.len())
                    .filter(|&k| !used[k])
                    .min_by(|&a, &b| (actual[a] - e).norm().partial_cmp(&(actual[b] - e).norm()).unwrap())
                    .unwrap();
                used[best] = true;
                prop_assert!((actual[best] - e).norm() < 1e-9 * (1.0 + e.norm()), "{} vs {}", actual[best], e);
            }
        }
    }
}
