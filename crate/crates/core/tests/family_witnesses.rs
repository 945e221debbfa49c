use infranil_core::families::{generate, FamilySpec};
use infranil_core::holonomy::{HolonomyAction, DEFAULT_MAX_GROUP_ORDER};
use infranil_core::repdecomp::{decide, Verdict};
use infranil_core::witness::{construct_witness, WitnessOptions};
use infranil_core::{CoherentPartition, GraphLieAlgebra, IntMatrix};

fn witness_for(spec: FamilySpec) {
    let inst = generate(&spec).unwrap();
    let g = &inst.graph;
    let part = CoherentPartition::of(g);
    let a = HolonomyAction::build(g, &part, &[inst.generator.clone()], DEFAULT_MAX_GROUP_ORDER).unwrap();
    assert_eq!(decide(&a, &part).verdict, Verdict::Yes, "{spec:?}");
    let alg = GraphLieAlgebra::new(g);
    let w = construct_witness(g, &part, &a, &alg, &WitnessOptions::default())
        .unwrap_or_else(|e| panic!("{spec:?}: {e}"));
    assert_eq!(w.full_matrix.rows(), inst.expected_dimension);
    assert!(w.certificate.valid && w.certificate.integer_like, "{spec:?}");
    assert!(alg.is_automorphism(&w.full_matrix).unwrap());
    let ext = alg.extend(&IntMatrix::permutation(inst.generator.images())).unwrap();
    assert!(w.full_matrix.commutes_with(&ext), "{spec:?}");
    assert!(w.blocks.iter().all(|b| b.matches_seed));
}

#[test]
fn family_i() {
    for m in 1..=4 {
        let mut sizes = vec![2; m];
        sizes[m - 1] = 3;
        witness_for(FamilySpec::I { sizes });
    }
    witness_for(FamilySpec::I { sizes: vec![4, 2, 3] });
}

#[test]
fn family_i_modified() {
    witness_for(FamilySpec::IModified { m: 3 });
    witness_for(FamilySpec::IModified { m: 4 });
}

#[test]
fn family_ii() {
    for n in [3, 5, 6] {
        witness_for(FamilySpec::II { n, l: 3 });
    }
    witness_for(FamilySpec::II { n: 3, l: 4 });
}

#[test]
fn family_ii_z4() {
    witness_for(FamilySpec::IIZ4 { l: 3 });
    witness_for(FamilySpec::IIZ4 { l: 4 });
}
