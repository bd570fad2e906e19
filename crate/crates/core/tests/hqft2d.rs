//! Crossed algebras and block dimensions on the corpus.

use hqft_core::categories::{pointlike_category, ThinCategory};
use hqft_core::constructions::pushforward;
use hqft_core::hqft2d::{
    block_dimension, closed_surface_value, crossed_algebra, mutation_detection, splitting_suite, torus_descriptions,
    torus_fixed_points, Mark, SurfaceSpec,
};
use hqft_core::{fixtures, CycloNum, FiniteGroup, GroupHom};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn strict_corpus() -> Vec<(String, ThinCategory)> {
    let mut out: Vec<(String, ThinCategory)> =
        fixtures::categories().unwrap().into_iter().filter(|(_, c)| c.is_strict()).collect();
    out.push(("q8 over its center quotient".into(), q8_over_klein()));
    out
}

/// Pointlike Q₈ pushed forward to Q₈/{±1}: two simples over each nontrivial
/// element, swapped by conjugation with an anticommuting unit.
fn q8_over_klein() -> ThinCategory {
    let c = pointlike_category(&fixtures::q8_klein_tuple().unwrap()).unwrap();
    let q8 = c.group().clone();
    let klein = FiniteGroup::product(&[2, 2]).unwrap();
    let images = q8
        .homs_to(&klein)
        .into_iter()
        .find(|h| {
            let mut im = h.clone();
            im.sort_unstable();
            im.dedup();
            im.len() == 4
        })
        .unwrap();
    pushforward(&c, &GroupHom::finite(q8, klein, images).unwrap()).unwrap()
}

#[test]
fn crossed_algebras_of_the_corpus_verify() {
    for (name, c) in strict_corpus() {
        let a = crossed_algebra(&c).unwrap();
        let r = a.verify();
        assert!(r.passed(), "{}: {}", name, r);
    }
}

#[test]
fn inner_product_pairs_each_simple_with_its_dual() {
    for (name, c) in strict_corpus() {
        if c.units().len() != 1 {
            continue;
        }
        let a = crossed_algebra(&c).unwrap();
        for i in 0..c.len() {
            for j in 0..c.len() {
                assert_eq!(a.eta[i][j].is_one(), j == c.dual(i), "{} ({}, {})", name, i, j);
                assert!(a.eta[i][j].is_zero() || a.eta[i][j].is_one());
            }
        }
    }
}

#[test]
fn single_entry_mutations_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, c) in strict_corpus().into_iter().filter(|(_, c)| c.len() > 1) {
        let a = crossed_algebra(&c).unwrap();
        let (caught, missed) = mutation_detection(&a, 100, &mut rng);
        assert!(caught >= 99, "{}: missed {:?}", name, missed);
    }
}

#[test]
fn rescaling_the_inner_product_of_a_rank_one_algebra_is_valid() {
    let c = pointlike_category(&fixtures::cyclic_tuple(1).unwrap()).unwrap();
    let mut a = crossed_algebra(&c).unwrap();
    a.eta[0][0] = CycloNum::from_int(3);
    assert!(a.verify().passed());
}

/// Tuples (i ∈ I_α) with V_i ⊗ φ_β(V_i)* containing the unit, by direct
/// search over all simples.
fn brute_torus(c: &ThinCategory, alpha: usize, beta: usize) -> usize {
    (0..c.len())
        .filter(|&i| c.grade(i) == alpha)
        .filter(|&i| {
            let j = c.act(beta, i);
            c.tensor(i, c.dual(j)).is_some_and(|u| c.units().contains(&u))
        })
        .count()
}

#[test]
fn torus_descriptions_agree_with_fixed_points_and_brute_force() {
    for (name, c) in strict_corpus() {
        let g = c.group();
        for a in g.elements() {
            for b in g.elements() {
                if g.mul(a, b) != g.mul(b, a) {
                    continue;
                }
                let n = torus_fixed_points(&c, a, b);
                assert_eq!(torus_descriptions(&c, None, a, b).unwrap(), [n, n, n], "{} ({}, {})", name, a, b);
                assert_eq!(brute_torus(&c, a, b), n, "{} ({}, {})", name, a, b);
                assert_eq!(closed_surface_value(&c, &[a], &[b]).unwrap(), n);
            }
        }
    }
}

#[test]
fn once_marked_torus_descriptions_agree() {
    for (name, c) in strict_corpus() {
        let g = c.group();
        for u in 0..c.len() {
            for a in g.elements() {
                for b in g.elements() {
                    if g.mul(c.grade(u), g.commutator(a, b)) != g.unit() {
                        continue;
                    }
                    let d = torus_descriptions(&c, Some(Mark { positive: true, color: u }), a, b).unwrap();
                    assert!(d[0] == d[1] && d[1] == d[2], "{} color {} ({}, {}): {:?}", name, u, a, b, d);
                }
            }
        }
    }
}

#[test]
fn anticommuting_action_swaps_simples_and_kills_the_torus() {
    let c = q8_over_klein();
    let g = c.group();
    let (a, b) = (1, 2);
    assert_eq!(c.simples_of(a).len(), 2);
    for i in c.simples_of(a) {
        assert_ne!(c.act(b, i), i);
    }
    assert_eq!(closed_surface_value(&c, &[a], &[b]).unwrap(), 0);
    assert_eq!(closed_surface_value(&c, &[a], &[g.unit()]).unwrap(), 2);
}

#[test]
fn sphere_and_pointlike_tori() {
    for (name, c) in strict_corpus() {
        assert_eq!(closed_surface_value(&c, &[], &[]).unwrap(), c.units().len(), "{}", name);
    }
    let z3 = pointlike_category(&fixtures::cyclic_tuple(3).unwrap()).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(closed_surface_value(&z3, &[a], &[b]).unwrap(), 1);
        }
    }
    let e = fixtures::z3_extension().unwrap();
    assert_eq!(closed_surface_value(&e, &[0], &[0]).unwrap(), 3);
}

#[test]
fn splitting_holds_on_the_corpus() {
    for (name, c) in strict_corpus() {
        let r = splitting_suite(&c).unwrap();
        assert!(r.passed(), "{}: {}", name, r);
    }
}

fn nonabelian() -> Vec<ThinCategory> {
    vec![pointlike_category(&fixtures::s3_sign_tuple().unwrap()).unwrap(), q8_over_klein(), {
        pointlike_category(&fixtures::q8_klein_tuple().unwrap()).unwrap()
    }]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn block_dimension_is_invariant_under_conjugation(
        which in 0usize..3,
        gens in prop::collection::vec((0usize..8, 0usize..8), 0..3),
        marks in prop::collection::vec((any::<bool>(), 0usize..16), 0..3),
        d in 0usize..8,
    ) {
        let c = &nonabelian()[which];
        let g = c.group();
        let n = g.order();
        let spec = SurfaceSpec {
            marks: marks.iter().map(|&(positive, u)| Mark { positive, color: u % c.len() }).collect(),
            alphas: gens.iter().map(|&(a, _)| a % n).collect(),
            betas: gens.iter().map(|&(_, b)| b % n).collect(),
        };
        prop_assume!(spec.check_relation(c).is_ok());
        let d = d % n;
        let moved = SurfaceSpec {
            marks: spec.marks.iter().map(|m| Mark { positive: m.positive, color: c.act(d, m.color) }).collect(),
            alphas: spec.alphas.iter().map(|&a| g.conj(d, a)).collect(),
            betas: spec.betas.iter().map(|&b| g.conj(d, b)).collect(),
        };
        prop_assert_eq!(block_dimension(c, &spec).unwrap(), block_dimension(c, &moved).unwrap());
    }
}
