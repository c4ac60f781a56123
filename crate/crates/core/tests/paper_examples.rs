use coxlen_core::affine::{AffineGroup, AffineReflection, ReflectionWord};
use coxlen_core::experiments::{group, lattice_box};
use coxlen_core::length::{
    integral_expression, length_bounds, lin_ind_length, minimal_coroot_subspaces,
    move_origin_element, rewrite_factorization, translation_length, Side,
};
use coxlen_core::linalg::Vector;
use coxlen_core::oracle::{enumerate_w0, AffineOracle};
use coxlen_core::roots::LatticeVector;

fn idx(g: &AffineGroup, v: &[i64]) -> usize {
    g.root_system().root_index(&Vector::from_ints(v)).unwrap().0
}

/// `w_{ijk} = r_{α12,i} r_{α23,j} r_{α34,k}` in affine A3.
fn w_ijk(g: &AffineGroup, i: i64, j: i64, k: i64) -> ReflectionWord {
    ReflectionWord(vec![
        AffineReflection::new(idx(g, &[1, -1, 0, 0]), i),
        AffineReflection::new(idx(g, &[0, 1, -1, 0]), j),
        AffineReflection::new(idx(g, &[0, 0, 1, -1]), k),
    ])
}

#[test]
fn exact_bounds_example() {
    let g = group("A3").unwrap();
    for (i, j, k) in [(0, 0, 0), (2, -1, 5)] {
        assert_eq!(lin_ind_length(&g, &w_ijk(&g, i, j, k)), Some(3));
    }
    // t_{α12^∨} w000 sits in [3, 4]; a factorization of length 3 exists.
    let w000 = g.evaluate_word(&w_ijk(&g, 0, 0, 0)).unwrap();
    let lam = LatticeVector(g.root_system().coroot_coords(idx(&g, &[1, -1, 0, 0])).to_vec());
    let w = g.compose(&g.translation(&lam), &w000);
    let rep = length_bounds(&g, &w).unwrap();
    assert_eq!(rep.lower, 3);
    assert!(rep.upper.unwrap() <= 4);
    let oracle = AffineOracle::new(&g).unwrap();
    assert_eq!(oracle.pattern_factorization(&w, 4).unwrap().len(), 3);
}

#[test]
fn rewriting_example() {
    let g = group("A3").unwrap();
    let word = w_ijk(&g, 1, 0, 2);
    let out = rewrite_factorization(&g, &word, &[1], Side::Front).unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!(out.0[0], word.0[1]);
    assert_eq!(g.evaluate_word(&out).unwrap(), g.evaluate_word(&word).unwrap());
}

#[test]
fn non_unique_subspaces() {
    // 2e1 in D4 lies in three coroot planes spanned by e1 ± ej.
    let g = group("D4").unwrap();
    let lam = LatticeVector(vec![2, 2, 1, 1]);
    assert_eq!(integral_expression(&g, &lam).unwrap().k, 2);
    assert_eq!(minimal_coroot_subspaces(&g, &lam).len(), 3);
    let (u, word) = move_origin_element(&g, &lam).unwrap();
    assert_eq!(word.len(), 2);
    assert_eq!(g.apply(&u, &Vector::zeros(4)), Vector::from_ints(&[2, 0, 0, 0]));
}

#[test]
fn optimality_refuted_below_2k() {
    // No product of fewer than 2k reflections is a translation by λ.
    for s in ["A3", "B3"] {
        let g = group(s).unwrap();
        let oracle = AffineOracle::new(&g).unwrap();
        for lam in lattice_box(3, 1) {
            let t = g.translation(&lam);
            let exact = translation_length(&g, &lam).unwrap().value().unwrap();
            let found = oracle.pattern_factorization(&t, exact).unwrap();
            assert_eq!(found.len(), exact, "{s} {lam}");
            assert_eq!(g.evaluate_word(&found).unwrap(), t);
        }
    }
}

#[test]
fn w0_sizes() {
    for (s, n) in [("A1", 2), ("A2", 6), ("D4", 192)] {
        assert_eq!(enumerate_w0(&group(s).unwrap()).unwrap().len(), n);
    }
}
