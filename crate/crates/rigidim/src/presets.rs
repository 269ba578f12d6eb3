//! Small named algebras used throughout the test-suite and shipped as
//! fixtures. Each constructor mirrors one of the bundled `.alg` files.

use crate::algebra::{Algebra, Arrow, Quiver, Relation, DEFAULT_MAX_PATH_LENGTH};
use crate::scalar::FieldSpec;
use std::sync::Arc;

/// Cyclic Nakayama algebra on `e` vertices with Loewy length `ell`: arrows
/// a1: 1 -> 2, ..., ae: e -> 1, and every path of length `ell` set to zero.
/// With e = 1 this is k[x]/(x^ell).
pub fn cyclic(field: FieldSpec, e: usize, ell: usize) -> Arc<Algebra> {
    assert!(e >= 1 && ell >= 2);
    let quiver = Quiver {
        vertices: (1..=e).map(|i| i.to_string()).collect(),
        arrows: (0..e)
            .map(|i| Arrow { name: format!("a{}", i + 1), src: i, tgt: (i + 1) % e })
            .collect(),
    };
    let relations = (0..e)
        .map(|start| Relation {
            terms: vec![(1, (0..ell).map(|j| (start + j) % e).collect())],
        })
        .collect();
    Algebra::new(field, quiver, relations, DEFAULT_MAX_PATH_LENGTH).expect("valid preset")
}

/// Linear quiver 1 -> 2 -> ... -> n with arrows a1, ..., a(n-1).
/// `zero_pairs` lists 1-based positions i for which the length-two path
/// a_i * a_(i+1) is a relation.
pub fn line(field: FieldSpec, n: usize, zero_pairs: &[usize]) -> Arc<Algebra> {
    assert!(n >= 1);
    let quiver = Quiver {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: (0..n.saturating_sub(1))
            .map(|i| Arrow { name: format!("a{}", i + 1), src: i, tgt: i + 1 })
            .collect(),
    };
    let relations = zero_pairs
        .iter()
        .map(|&i| {
            assert!(i >= 1 && i + 1 <= n - 1, "zero pair out of range");
            Relation { terms: vec![(1, vec![i - 1, i])] }
        })
        .collect();
    Algebra::new(field, quiver, relations, DEFAULT_MAX_PATH_LENGTH).expect("valid preset")
}

/// Semisimple algebra k^n (n isolated vertices).
pub fn semisimple(field: FieldSpec, n: usize) -> Arc<Algebra> {
    let quiver = Quiver {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: Vec::new(),
    };
    Algebra::new(field, quiver, Vec::new(), DEFAULT_MAX_PATH_LENGTH).expect("valid preset")
}
