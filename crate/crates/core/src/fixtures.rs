//! Small named graphs used throughout the tests, docs and CLI examples.

use crate::graph::Graph;

/// Two discrete pairs and a triangle joined in a path `λ – ν – μ`, with the
/// loop at the triangle `μ`.
pub const THREE_COMPONENT_PATH_TEXT: &str = "\
α1 α2 β1 β2 β3 γ1 γ2
--
α1 γ1
α1 γ2
α2 γ1
α2 γ2
γ1 β1
γ1 β2
γ1 β3
γ2 β1
γ2 β2
γ2 β3
β1 β2
β1 β3
β2 β3
";

/// Same vertex set, but every component is complete: `{α}` and `{β}` hang
/// off `{γ}`, and all three carry loops in the quotient.
pub const LOOPED_THREE_COMPONENT_TEXT: &str = "\
α1 α2 β1 β2 β3 γ1 γ2
--
α1 α2
α1 γ1
α1 γ2
α2 γ1
α2 γ2
γ1 γ2
γ1 β1
γ1 β2
γ1 β3
γ2 β1
γ2 β2
γ2 β3
β1 β2
β2 β3
β1 β3
";

/// Four discrete pairs in a path `α – γ – δ – β`.
pub const FOUR_COMPONENT_PATH_TEXT: &str = "\
α1 α2 β1 β2 γ1 γ2 δ1 δ2
--
α1 γ1
α1 γ2
α2 γ1
α2 γ2
γ1 δ1
γ1 δ2
γ2 δ1
γ2 δ2
δ1 β1
δ1 β2
δ2 β1
δ2 β2
";

/// Order-2 automorphism of [`four_component_path`] reflecting the path.
pub const FOUR_COMPONENT_PATH_SWAP: &str = "(α1 β1)(α2 β2)(γ1 δ1)(γ2 δ2)";

pub fn three_component_path() -> Graph {
    Graph::parse(THREE_COMPONENT_PATH_TEXT).expect("fixture parses")
}

pub fn looped_three_component() -> Graph {
    Graph::parse(LOOPED_THREE_COMPONENT_TEXT).expect("fixture parses")
}

pub fn four_component_path() -> Graph {
    Graph::parse(FOUR_COMPONENT_PATH_TEXT).expect("fixture parses")
}

/// The 5-cycle on `α β γ δ η`.
pub fn five_cycle() -> Graph {
    Graph::parse("α β γ δ η\n--\nα β\nβ γ\nγ δ\nδ η\nη α\n").expect("fixture parses")
}

/// The 4-cycle `v1 v2 v3 v4`.
pub fn cycle4() -> Graph {
    Graph::parse("v1 v2 v3 v4\n--\nv1 v2\nv2 v3\nv3 v4\nv4 v1\n").expect("fixture parses")
}

/// `K_{3,3}` with parts `a1..a3` and `b1..b3`.
pub fn k33() -> Graph {
    complete_bipartite(3)
}

/// `K_{ℓ,ℓ}` with parts `a1..aℓ` and `b1..bℓ`.
pub fn complete_bipartite(l: usize) -> Graph {
    let a: Vec<String> = (1..=l).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=l).map(|i| format!("b{i}")).collect();
    let vertices: Vec<String> = a.iter().chain(&b).cloned().collect();
    let edges: Vec<(String, String)> =
        a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect();
    Graph::new(&vertices, &edges).expect("fixture is simple")
}

/// `K_n` on `v1..vn`.
pub fn complete(n: usize) -> Graph {
    let v: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (v[i].clone(), v[j].clone()))
        .collect();
    Graph::new(&v, &edges).expect("fixture is simple")
}

/// Edgeless graph on `v1..vn`.
pub fn discrete(n: usize) -> Graph {
    let v: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    Graph::new::<String>(&v, &[]).expect("fixture is simple")
}
