//! The surgery invariant on built-in presentations over every corpus category
//! that has modular data.

use hqft_core::categories::{modular_data, ThinCategory};
use hqft_core::surgery::{
    builtin_presentation, check_special, connected_sum, conjugate_labels, fenn_rourke_local_check, kirby_stabilize,
    kirby_test, reverse_orientation, signature_of_linking, tau, Builtin, SurgeryPresentation,
};
use hqft_core::tangles::Orient;
use hqft_core::{fixtures, CycloNum, FiniteGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn modular_corpus() -> Vec<(String, ThinCategory)> {
    fixtures::categories()
        .unwrap()
        .into_iter()
        .filter(|(_, c)| c.is_strict() && c.units().len() == 1 && modular_data(c, true).is_ok())
        .collect()
}

/// Every built-in presentation that is special for `g`.
fn builtins(g: &FiniteGroup) -> Vec<(Builtin, SurgeryPresentation)> {
    let mut specs = vec![Builtin::S3];
    for a in g.elements() {
        specs.push(Builtin::S1xS2(a));
        specs.push(Builtin::Trefoil(a));
        for p in [-3, -2, -1, 1, 2, 3] {
            specs.push(Builtin::Lens(p, a));
        }
    }
    specs.into_iter().filter_map(|b| builtin_presentation(&b, g).ok().map(|p| (b, p))).collect()
}

/// τ of a p-framed unknot with meridian label a, from the closed formula
/// Δ₋^{sgn p} D^{−sgn p − 2} Σ_{i ∈ I_a} dim(V_i)² θ_i^p.
fn unknot_oracle(c: &ThinCategory, positive: bool, p: i64, a: usize) -> CycloNum {
    let md = modular_data(c, positive).unwrap();
    let d = md.rank.clone();
    let neutral = c.simples_of(c.group().unit());
    let delta_minus: CycloNum =
        neutral.iter().map(|&i| c.twist(i).inv().unwrap() * c.dim(i).unwrap() * c.dim(i).unwrap()).sum();
    let f: CycloNum = c.simples_of(a).into_iter().map(|i| c.dim(i).unwrap().pow(2).unwrap() * c.twist(i).pow(p).unwrap()).sum();
    let s = p.signum();
    delta_minus.pow(s).unwrap() * d.pow(-s - 2).unwrap() * f
}

#[test]
fn three_sphere_is_inverse_rank() {
    for (name, c) in modular_corpus() {
        for positive in [true, false] {
            let p = builtin_presentation(&Builtin::S3, c.group()).unwrap();
            let t = tau(&p, &c, positive).unwrap();
            assert_eq!(t.value, t.rank.inv().unwrap(), "{} positive = {}", name, positive);
        }
    }
}

#[test]
fn unknot_surgeries_match_the_closed_formula() {
    for (name, c) in modular_corpus() {
        for (b, p) in builtins(c.group()) {
            let (framing, a) = match b {
                Builtin::S1xS2(a) => (0, a),
                Builtin::Lens(n, a) => (n, a),
                _ => continue,
            };
            for positive in [true, false] {
                let t = tau(&p, &c, positive).unwrap();
                assert_eq!(t.value, unknot_oracle(&c, positive, framing, a), "{} {:?}", name, b);
            }
        }
    }
}

#[test]
fn lens_values_over_the_ungraded_z3_category() {
    let c = fixtures::z3_neutral().unwrap();
    let p = builtin_presentation(&Builtin::Lens(3, 0), c.group()).unwrap();
    assert_eq!(tau(&p, &c, true).unwrap().value, -CycloNum::root_of_unity(12, 3));
    let z3 = fixtures::categories().unwrap().into_iter().find(|(n, _)| n == "cat_z3.toml").unwrap().1;
    let p = builtin_presentation(&Builtin::Lens(3, 1), z3.group()).unwrap();
    assert!(tau(&p, &z3, true).unwrap().value.is_one());
}

#[test]
fn s1xs2_is_one_and_component_dimension_is_rank_squared() {
    for (name, c) in modular_corpus() {
        let md = modular_data(&c, true).unwrap();
        for a in c.group().elements() {
            let d_a: CycloNum = c.simples_of(a).into_iter().map(|i| c.dim(i).unwrap().pow(2).unwrap()).sum();
            assert_eq!(d_a, md.d2, "{} component {}", name, a);
            let p = builtin_presentation(&Builtin::S1xS2(a), c.group()).unwrap();
            for positive in [true, false] {
                assert!(tau(&p, &c, positive).unwrap().value.is_one(), "{} alpha = {}", name, a);
            }
        }
    }
}

#[test]
fn hopf_link_with_zero_framings_has_zero_signature() {
    let (_, p) = fixtures::surgeries().unwrap().into_iter().find(|(n, _)| n == "hopf00.surgery").unwrap();
    let s = signature_of_linking(&p);
    assert_eq!((s.sigma, s.plus, s.minus, s.b1), (0, 1, 1, 0));
}

#[test]
fn stabilizing_the_empty_link_keeps_the_three_sphere() {
    let c = fixtures::z3_neutral().unwrap();
    let empty = builtin_presentation(&Builtin::S3, c.group()).unwrap();
    for sign in [1, -1] {
        let p = kirby_stabilize(&empty, sign, c.group()).unwrap();
        assert_eq!(signature_of_linking(&p).sigma, sign as i64);
        let t = tau(&p, &c, true).unwrap();
        assert_eq!(t.value, t.rank.inv().unwrap());
    }
}

#[test]
fn shipped_presentations_are_special() {
    let g = FiniteGroup::cyclic(3).unwrap();
    for (name, p) in fixtures::surgeries().unwrap() {
        assert!(check_special(&p, &g).passed(), "{}", name);
    }
    assert!(builtin_presentation(&Builtin::Lens(2, 1), &g).is_err());
}

#[test]
fn reversing_a_component_or_conjugating_labels_keeps_tau() {
    for (name, c) in modular_corpus() {
        let g = c.group().clone();
        for (b, p) in builtins(&g) {
            let t0 = tau(&p, &c, true).unwrap().value;
            for k in 0..p.analyze().n_comps() {
                let r = reverse_orientation(&p, k, &g).unwrap();
                assert!(check_special(&r, &g).passed());
                assert_eq!(tau(&r, &c, true).unwrap().value, t0, "{} {:?} component {}", name, b, k);
            }
            for d in g.elements() {
                let q = conjugate_labels(&p, d, &g);
                assert_eq!(tau(&q, &c, true).unwrap().value, t0, "{} {:?} by {}", name, b, d);
            }
        }
    }
}

#[test]
fn tau_prime_does_not_depend_on_the_sign_of_the_rank() {
    for (name, c) in modular_corpus() {
        for (b, p) in builtins(c.group()) {
            let plus = tau(&p, &c, true).unwrap();
            let minus = tau(&p, &c, false).unwrap();
            assert_eq!(plus.tau_prime, minus.tau_prime, "{} {:?}", name, b);
        }
    }
}

#[test]
fn connected_sum_multiplies_up_to_the_rank() {
    for (name, c) in modular_corpus() {
        let list = builtins(c.group());
        for (b1, p1) in &list {
            for (b2, p2) in &list {
                let s = connected_sum(p1, p2).unwrap();
                let t1 = tau(p1, &c, true).unwrap();
                let t2 = tau(p2, &c, true).unwrap();
                let ts = tau(&s, &c, true).unwrap();
                assert_eq!(ts.value, &t1.rank * &t1.value * &t2.value, "{} {:?} # {:?}", name, b1, b2);
            }
        }
    }
}

#[test]
fn support_of_nonvoid_components_is_a_subgroup() {
    for (name, c) in modular_corpus() {
        let g = c.group();
        let support: Vec<usize> = g
            .elements()
            .filter(|&a| {
                let p = builtin_presentation(&Builtin::S1xS2(a), g).unwrap();
                !tau(&p, &c, true).unwrap().value.is_zero()
            })
            .collect();
        assert!(g.is_subgroup(&support), "{}: {:?}", name, support);
    }
}

#[test]
fn fenn_rourke_local_identity_for_widths_up_to_three() {
    for (name, c) in modular_corpus() {
        let g = c.group();
        for width in 1..=3usize {
            for code in 0..(1usize << width) {
                let orients: Vec<Orient> =
                    (0..width).map(|k| if code >> k & 1 == 1 { Orient::Up } else { Orient::Down }).collect();
                for a in g.elements() {
                    let labels: Vec<usize> = (0..width).map(|k| g.pow(a, k as i64 + 1)).collect();
                    for sign in [1, -1] {
                        let r = fenn_rourke_local_check(&c, &orients, &labels, sign).unwrap();
                        assert!(r.passed(), "{} width {} sign {}: {}", name, width, sign, r);
                    }
                }
            }
        }
    }
}

#[test]
fn kirby_moves_preserve_tau_on_every_category() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (name, c) in modular_corpus() {
        for (b, p) in builtins(c.group()).into_iter().take(6) {
            let r = kirby_test(&p, &c, 4, &mut rng).unwrap();
            assert!(r.passed(), "{} {:?}: {}", name, b, r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kirby_sequences_on_lens_spaces(seed in any::<u64>(), p in -3i64..=3, a in 0usize..3) {
        prop_assume!(p != 0);
        let c = fixtures::z3_neutral().unwrap();
        let base = fixtures::categories().unwrap().into_iter().find(|(n, _)| n == "cat_z3.toml").unwrap().1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let neutral = builtin_presentation(&Builtin::Lens(p, 0), c.group()).unwrap();
        prop_assert!(kirby_test(&neutral, &c, 5, &mut rng).unwrap().passed());
        if let Ok(graded) = builtin_presentation(&Builtin::Lens(p, a), base.group()) {
            prop_assert!(kirby_test(&graded, &base, 5, &mut rng).unwrap().passed());
        }
    }
}
