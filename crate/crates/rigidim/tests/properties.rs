//! Randomized structural invariants at the representation level. The
//! matrix-arithmetic properties live next to the matrix code; these cover
//! what must hold for every module no matter how its basis is scrambled.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidim::algebra::Algebra;
use rigidim::presets;
use rigidim::rep::Rep;
use rigidim::{FieldSpec, Matrix, Scalar};
use std::sync::Arc;

fn algebras() -> Vec<Arc<Algebra>> {
    vec![
        presets::line(FieldSpec::Q, 2, &[]),
        presets::line(FieldSpec::Q, 3, &[1]),
        presets::cyclic(FieldSpec::Q, 2, 2),
        presets::cyclic(FieldSpec::Q, 1, 3),
        presets::semisimple(FieldSpec::Q, 2),
        presets::cyclic(FieldSpec::Fp(5), 2, 2),
    ]
}

fn random_twisted_module(alg: &Arc<Algebra>, seed: u64) -> Rep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = alg.num_vertices();
    let parts: Vec<Rep> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let v = rng.gen_range(0..nv);
            match rng.gen_range(0..3) {
                0 => Rep::projective(alg, v),
                1 => Rep::injective(alg, v),
                _ => Rep::simple(alg, v),
            }
        })
        .collect();
    let refs: Vec<&Rep> = parts.iter().collect();
    let sum = Rep::direct_sum(alg, &refs);

    let field = alg.field;
    let invertible = |d: usize, rng: &mut ChaCha8Rng| loop {
        let cand = Matrix::from_rows(
            field,
            (0..d)
                .map(|_| (0..d).map(|_| Scalar::random_small(rng, field, 2)).collect())
                .collect(),
        );
        if cand.is_invertible() {
            return cand;
        }
    };
    let change: Vec<Matrix> = sum.dims().iter().map(|&d| invertible(d, &mut rng)).collect();
    let maps = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            change[arrow.tgt]
                .mul(sum.arrow_matrix(a))
                .mul(&change[arrow.src].inverse().expect("invertible"))
        })
        .collect();
    Rep::new(alg.clone(), sum.dims().to_vec(), maps).expect("twist preserves relations")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_dual_is_the_identity_on_dims_and_ranks(which in 0usize..6, seed in 0u64..10_000) {
        let alg = algebras()[which].clone();
        let m = random_twisted_module(&alg, seed);
        let dd = m.dual().dual();
        prop_assert!(Arc::ptr_eq(&dd.alg, &m.alg), "double dual lands over the original algebra");
        prop_assert_eq!(dd.dims(), m.dims());
        for a in 0..alg.quiver.arrows.len() {
            prop_assert_eq!(dd.arrow_matrix(a).rank(), m.arrow_matrix(a).rank());
        }
    }

    #[test]
    fn hom_basis_members_are_morphisms(which in 0usize..6, seed in 0u64..10_000) {
        let alg = algebras()[which].clone();
        let m = random_twisted_module(&alg, seed);
        let n = random_twisted_module(&alg, seed.wrapping_add(1));
        for f in Rep::hom_basis(&m, &n) {
            prop_assert!(f.is_morphism());
        }
    }

    #[test]
    fn projectives_represent_evaluation(which in 0usize..6, seed in 0u64..10_000) {
        let alg = algebras()[which].clone();
        let m = random_twisted_module(&alg, seed);
        for v in 0..alg.num_vertices() {
            prop_assert_eq!(Rep::hom_basis(&Rep::projective(&alg, v), &m).len(), m.dim_at(v));
            // and dually for the injectives
            prop_assert_eq!(Rep::hom_basis(&m, &Rep::injective(&alg, v)).len(), m.dim_at(v));
        }
    }

    #[test]
    fn opposite_is_an_involution(which in 0usize..6) {
        let alg = algebras()[which].clone();
        let back = alg.opposite().opposite();
        prop_assert!(Arc::ptr_eq(&alg, &back));
        prop_assert_eq!(alg.dim(), alg.opposite().dim());
    }
}
