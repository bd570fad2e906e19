//! Field axioms, group validation and the cocycle-level identities.

use hqft_core::cocycles::{
    canonical_twist, coboundary, enumerate_bicharacter_tuples, sign_characters, tuple_mirror, tuple_product, verify_all,
    verify_associator, verify_braiding, verify_twist, RibbonTuple, TwoCochain,
};
use hqft_core::{CycloNum, FiniteGroup};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cyclo(n: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-4i64..5, 1i64..4, 0i64..n as i64), 0..4).prop_map(move |terms| {
        terms.into_iter().map(|(p, q, k)| CycloNum::from_frac(p, q) * CycloNum::root_of_unity(n, k)).sum()
    })
}

fn order_of(x: &CycloNum) -> Option<u32> {
    let mut p = x.clone();
    for k in 1..=200u32 {
        if p.is_one() {
            return Some(k);
        }
        p = p * x;
    }
    None
}

proptest! {
    #[test]
    fn field_axioms_hold(a in cyclo(12), b in cyclo(12), c in cyclo(12)) {
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn inverses_in_prime_power_and_composite_orders(a in cyclo(9), b in cyclo(15)) {
        for x in [a, b] {
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn lifting_is_a_ring_homomorphism(a in cyclo(6), b in cyclo(6)) {
        prop_assert_eq!((&a * &b).lift(24), a.lift(24) * b.lift(24));
        prop_assert_eq!((&a + &b).lift(24), a.lift(24) + b.lift(24));
    }
}

#[test]
fn primitive_roots_have_exact_order() {
    for n in 1..=24u32 {
        for k in 1..n.max(2) {
            if k.gcd(&n) == 1 {
                let z = CycloNum::root_of_unity(n, k as i64);
                assert_eq!(order_of(&z), Some(n), "zeta_{}^{}", n, k);
            }
        }
    }
}

fn group_zoo() -> Vec<FiniteGroup> {
    let mut gs: Vec<FiniteGroup> = (1..=8).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
    gs.push(FiniteGroup::product(&[2, 2]).unwrap());
    gs.push(FiniteGroup::product(&[2, 4]).unwrap());
    gs.push(FiniteGroup::product(&[2, 2, 2]).unwrap());
    gs.push(FiniteGroup::symmetric3());
    gs.push(FiniteGroup::quaternion());
    gs
}

proptest! {
    #[test]
    fn one_mutated_table_entry_is_rejected(which in 0usize..13, i in 0usize..8, j in 0usize..8, shift in 1usize..8) {
        let g = &group_zoo()[which];
        let n = g.order();
        prop_assume!(n > 1);
        let mut t = g.table().to_vec();
        let (i, j) = (i % n, j % n);
        t[i][j] = (t[i][j] + 1 + shift % (n - 1)) % n;
        prop_assert!(FiniteGroup::from_table(t).is_err());
    }
}

#[test]
fn valid_tables_are_accepted() {
    for g in group_zoo() {
        assert!(FiniteGroup::from_table(g.table().to_vec()).is_ok(), "{:?}", g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn coboundaries_are_braided_cocycles(which in 0usize..13, seed in any::<u64>()) {
        let g = group_zoo()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = TwoCochain::random_invariant(g, 6, &mut rng);
        let t = coboundary(&eta).unwrap();
        prop_assert!(verify_associator(&t).passed());
        prop_assert!(verify_braiding(&t).passed());
    }
}

fn bicharacter_corpus() -> Vec<RibbonTuple> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let g = FiniteGroup::cyclic(n).unwrap();
        out.extend(enumerate_bicharacter_tuples(&g, n as u32).unwrap());
    }
    out
}

#[test]
fn canonical_twists_verify_and_differ_by_signs() {
    for t in bicharacter_corpus() {
        let g = t.group().clone();
        let chis = sign_characters(&g);
        let twists: Vec<Vec<CycloNum>> = chis.iter().map(|chi| canonical_twist(&t, chi).unwrap()).collect();
        for th in &twists {
            let tt = t.clone().with_theta(th.clone()).unwrap();
            assert!(verify_twist(&tt).passed());
        }
        for a in &twists {
            for b in &twists {
                let ratio: Vec<CycloNum> = g.elements().map(|x| &a[x] * &b[x].inv().unwrap()).collect();
                for x in g.elements() {
                    let r = &ratio[x];
                    assert!(r.is_one() || (-r).is_one());
                    for y in g.elements() {
                        assert_eq!(ratio[g.mul(x, y)], &ratio[x] * &ratio[y]);
                    }
                }
            }
        }
    }
}

#[test]
fn every_twist_of_a_bicharacter_is_canonical() {
    for t in bicharacter_corpus().into_iter().filter(|t| t.group().order() <= 4) {
        let g = t.group().clone();
        let n = t.order();
        let canon: Vec<Vec<CycloNum>> = sign_characters(&g).iter().map(|chi| canonical_twist(&t, chi).unwrap()).collect();
        let mut count = 0;
        let total = (2 * n as usize).pow(g.order() as u32);
        for code in 0..total {
            let th: Vec<CycloNum> =
                (0..g.order()).map(|i| CycloNum::root_of_unity(2 * n, ((code / (2 * n as usize).pow(i as u32)) % (2 * n as usize)) as i64)).collect();
            let tt = t.clone().with_theta(th.clone()).unwrap();
            if verify_twist(&tt).passed() {
                assert!(canon.contains(&th));
                count += 1;
            }
        }
        assert_eq!(count, canon.len(), "{:?}", t.group());
    }
}

#[test]
fn mirror_is_an_involution_and_product_is_associative() {
    let ts: Vec<RibbonTuple> = bicharacter_corpus().into_iter().filter(|t| t.group().order() == 4).collect();
    for t in &ts {
        assert_eq!(&tuple_mirror(&tuple_mirror(t)), t);
        let m = tuple_mirror(t);
        assert!(verify_all(&m).passed());
    }
    let ones = RibbonTuple::all_ones(FiniteGroup::cyclic(4).unwrap(), 4).with_theta(vec![CycloNum::one(); 4]).unwrap();
    for a in ts.iter().take(4) {
        assert_eq!(&tuple_product(a, &ones).unwrap(), a);
        assert_eq!(&tuple_product(&ones, a).unwrap(), a);
        for b in ts.iter().take(4) {
            for c in ts.iter().take(4) {
                let l = tuple_product(&tuple_product(a, b).unwrap(), c).unwrap();
                let r = tuple_product(a, &tuple_product(b, c).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}
