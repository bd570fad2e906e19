//! Invariance and monoidality of the tangle functor across the fixture corpus.

use hqft_core::categories::{pointlike_category, ThinCategory};
use hqft_core::fixtures;
use hqft_core::tangles::{all_labelings, library, ColoredTangle, Event, Move, Orient, Over, SlicedDiagram};
use hqft_core::CycloNum;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn strict_categories() -> Vec<(String, ThinCategory)> {
    fixtures::categories().unwrap().into_iter().filter(|(_, c)| c.is_strict()).collect()
}

fn closed(slices: Vec<Event>) -> SlicedDiagram {
    SlicedDiagram::closed(slices).unwrap()
}

/// A colored zero-framed circle whose single component carries simple `u`.
fn circle(slices: Vec<Event>, c: &ThinCategory, u: usize) -> CycloNum {
    let d = closed(slices);
    assert_eq!(d.analyze().writhe(0), 0);
    ColoredTangle::from_seeds(d, c, &[(0, u)]).unwrap().evaluate(c).unwrap().scalar
}

#[test]
fn reversed_cap_equals_its_expansion_through_a_crossing_and_a_kink() {
    for (name, c) in strict_categories() {
        for u in 0..c.len() {
            let direct = circle(vec![Event::Cup { pos: 0, left: Orient::Up }, Event::Cap { pos: 0 }], &c, u);
            let expanded = circle(
                vec![
                    Event::Cup { pos: 0, left: Orient::Up },
                    Event::Kink { pos: 0, sign: 1 },
                    Event::Cross { pos: 0, over: Over::Left },
                    Event::Cap { pos: 0 },
                ],
                &c,
                u,
            );
            assert_eq!(direct, expanded, "{} simple {}", name, u);
            assert!(!direct.is_zero(), "{} simple {}", name, u);
        }
    }
}

#[test]
fn reversed_cup_equals_its_expansion_through_a_crossing_and_a_kink() {
    for (name, c) in strict_categories() {
        for u in 0..c.len() {
            let direct = circle(vec![Event::Cup { pos: 0, left: Orient::Down }, Event::Cap { pos: 0 }], &c, u);
            let expanded = circle(
                vec![
                    Event::Cup { pos: 0, left: Orient::Up },
                    Event::Cross { pos: 0, over: Over::Right },
                    Event::Kink { pos: 1, sign: -1 },
                    Event::Cap { pos: 0 },
                ],
                &c,
                u,
            );
            assert_eq!(direct, expanded, "{} simple {}", name, u);
            assert!(!direct.is_zero(), "{} simple {}", name, u);
        }
    }
}

#[test]
fn both_circle_orientations_give_the_dimension() {
    for (name, c) in strict_categories() {
        for u in 0..c.len() {
            let ccw = circle(vec![Event::Cup { pos: 0, left: Orient::Up }, Event::Cap { pos: 0 }], &c, u);
            let cw = circle(vec![Event::Cup { pos: 0, left: Orient::Down }, Event::Cap { pos: 0 }], &c, u);
            let d = c.dim(u).unwrap();
            assert_eq!(ccw, d, "{} simple {}", name, u);
            assert_eq!(cw, d, "{} simple {}", name, u);
        }
    }
}

/// All fixture diagrams colored with every admissible constant seed.
fn colored_corpus(c: &ThinCategory) -> Vec<ColoredTangle> {
    let diagrams = [library::unknot(1), library::hopf_link(), library::trefoil(), library::figure_eight(), library::torus_3_3()];
    let mut out = Vec::new();
    for d in diagrams {
        let n = d.analyze().n_comps();
        for u in 0..c.len() {
            let seeds: Vec<(usize, usize)> = (0..n).map(|k| (k, u)).collect();
            if let Ok(t) = ColoredTangle::from_seeds(d.clone(), c, &seeds) {
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn random_reidemeister_moves_preserve_the_value_on_every_category() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    for (name, c) in strict_categories() {
        let corpus = colored_corpus(&c);
        assert!(!corpus.is_empty(), "{}", name);
        for t0 in corpus {
            let v0 = t0.evaluate(&c).unwrap().scalar;
            let mut t = t0;
            for _ in 0..6 {
                let mv = Move::random(&t.diagram, &mut rng).expect("some move applies");
                t = t.apply(&mv, &c).unwrap();
                assert_eq!(t.evaluate(&c).unwrap().scalar, v0, "{} {:?}", name, mv);
                total += 1;
            }
        }
    }
    assert!(total >= 1000, "only {} moves", total);
}

#[test]
fn disjoint_union_multiplies_values() {
    let c = pointlike_category(&fixtures::cyclic_tuple(3).unwrap()).unwrap();
    let ds = [library::unknot(2), library::hopf_link(), library::trefoil(), library::figure_eight()];
    for a in &ds {
        for b in &ds {
            let both = a.tensor(b).unwrap();
            for u in 0..3 {
                let seed = |d: &SlicedDiagram| -> Vec<(usize, usize)> { (0..d.analyze().n_comps()).map(|k| (k, u)).collect() };
                let f = |d: &SlicedDiagram| ColoredTangle::from_seeds(d.clone(), &c, &seed(d)).unwrap().evaluate(&c).unwrap().scalar;
                assert_eq!(f(&both), f(a) * f(b));
            }
        }
    }
}

#[test]
fn empty_diagram_evaluates_to_one() {
    let c = pointlike_category(&fixtures::cyclic_tuple(4).unwrap()).unwrap();
    let t = ColoredTangle { diagram: SlicedDiagram::empty(), labels: vec![], colors: vec![] };
    assert!(t.evaluate(&c).unwrap().scalar.is_one());
}

#[test]
fn global_action_recoloring_preserves_the_value() {
    for (name, c) in strict_categories() {
        let g = c.group().clone();
        for t in colored_corpus(&c) {
            let v = t.evaluate(&c).unwrap().scalar;
            for b in g.elements() {
                let moved = ColoredTangle {
                    diagram: t.diagram.clone(),
                    labels: t.labels.iter().map(|&l| g.conj(b, l)).collect(),
                    colors: t.colors.iter().map(|&s| c.act(b, s)).collect(),
                };
                assert!(moved.validate(&c).passed(), "{}", name);
                assert_eq!(moved.evaluate(&c).unwrap().scalar, v, "{} by {}", name, b);
            }
        }
    }
}

#[test]
fn trefoil_colorings_by_transpositions_are_invariant() {
    let c = pointlike_category(&fixtures::s3_sign_tuple().unwrap()).unwrap();
    let g = c.group();
    let d = library::trefoil();
    let an = d.analyze();
    assert!(c.group().elements().all(|x| c.grade(x) == x));
    let all = all_labelings(&an, g, &vec![None; an.n_arcs()], 1000);
    let nonabelian: Vec<&Vec<usize>> = all
        .iter()
        .filter(|l| {
            let mut s = (*l).clone();
            s.sort_unstable();
            s.dedup();
            s.len() == 3
        })
        .collect();
    assert_eq!(nonabelian.len(), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for labels in nonabelian {
        let t = ColoredTangle { diagram: d.clone(), labels: labels.clone(), colors: labels.clone() };
        assert!(t.validate(&c).passed());
        let v = t.evaluate(&c).unwrap().scalar;
        let mut cur = t;
        for _ in 0..10 {
            let mv = Move::random(&cur.diagram, &mut rng).unwrap();
            cur = cur.apply(&mv, &c).unwrap();
            assert_eq!(cur.evaluate(&c).unwrap().scalar, v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn move_sequences_preserve_torus_link_values(seed in any::<u64>(), a in 0usize..3, b in 0usize..3, d in 0usize..3) {
        let c = pointlike_category(&fixtures::cyclic_tuple(3).unwrap()).unwrap();
        let t0 = ColoredTangle::from_seeds(library::torus_3_3(), &c, &[(0, a), (1, b), (2, d)]).unwrap();
        let v0 = t0.evaluate(&c).unwrap().scalar;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = t0;
        for _ in 0..8 {
            let mv = Move::random(&t.diagram, &mut rng).unwrap();
            t = t.apply(&mv, &c).unwrap();
            prop_assert_eq!(&t.evaluate(&c).unwrap().scalar, &v0);
        }
    }

    #[test]
    fn reverse_dual_and_doubling_preserve_values(u in 0usize..5, v in 0usize..5) {
        let c = pointlike_category(&fixtures::cyclic_tuple(5).unwrap()).unwrap();
        let t = ColoredTangle::from_seeds(library::hopf_link(), &c, &[(0, u), (1, v)]).unwrap();
        let val = t.evaluate(&c).unwrap().scalar;
        let r = hqft_core::tangles::transform_reverse_dual(&t, 0, &c).unwrap();
        prop_assert_eq!(&r.evaluate(&c).unwrap().scalar, &val);
        let w = (5 + v - 1) % 5;
        let doubled = hqft_core::tangles::transform_double(&t, 1, 1, w, &c).unwrap();
        prop_assert_eq!(&doubled.evaluate(&c).unwrap().scalar, &val);
    }
}
