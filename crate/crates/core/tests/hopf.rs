//! Hopf π-coalgebras built from the shipped Hopf algebras.

use hqft_core::fixtures;
use hqft_core::hopf::{
    build_a_pi, build_r_theta_from_ribbon, drinfeld_element, group_likes, mirror_coalgebra, mirror_ribbon,
    verify_crossed, verify_hopf, verify_pi_coalgebra, verify_quasitriangular, verify_ribbon, verify_ribbon_hopf,
    HopfAction, HopfAlgebraData, PiCoalgebraData, RMatrixFamily, Tensor, Variant,
};
use hqft_core::{CycloNum, FiniteGroup};

fn inputs() -> Vec<(String, HopfAlgebraData, Tensor, Tensor)> {
    fixtures::hopf_inputs()
        .unwrap()
        .into_iter()
        .map(|(n, i)| (n, i.hopf, i.r_matrix.unwrap(), i.ribbon.unwrap()))
        .collect()
}

#[test]
fn shipped_inputs_are_ribbon_hopf_algebras() {
    for (name, h, r, v) in inputs() {
        assert!(verify_hopf(&h).passed(), "{}", name);
        let rep = verify_ribbon_hopf(&h, &r, &v);
        assert!(rep.passed(), "{}: {}", name, rep);
    }
}

#[test]
fn plain_and_barred_constructions_verify_with_neutral_component_h() {
    for (name, h, _, _) in inputs() {
        let gl = group_likes(&h).unwrap();
        assert_eq!(gl.group.order(), 2, "{}", name);
        let act = HopfAction::conjugation(&h, &gl);
        assert!(act.verify(&h).passed());
        for variant in [Variant::Plain, Variant::Bar] {
            let a = build_a_pi(&h, &act, variant).unwrap();
            assert!(verify_pi_coalgebra(&a).passed(), "{} {:?}", name, variant);
            assert!(verify_crossed(&a).passed(), "{} {:?}", name, variant);
            let one = a.neutral_component();
            assert_eq!(one, h, "{} {:?}", name, variant);
            assert!(verify_hopf(&one).passed());
        }
    }
}

#[test]
fn mirror_is_an_involution_exchanging_plain_and_bar() {
    for (name, h, _, _) in inputs() {
        let act = HopfAction::conjugation(&h, &group_likes(&h).unwrap());
        let plain = build_a_pi(&h, &act, Variant::Plain).unwrap();
        let bar = build_a_pi(&h, &act, Variant::Bar).unwrap();
        assert_eq!(mirror_coalgebra(&plain), bar, "{}", name);
        assert_eq!(mirror_coalgebra(&bar), plain, "{}", name);
        assert_eq!(mirror_coalgebra(&mirror_coalgebra(&plain)), plain, "{}", name);
    }
}

#[test]
fn ribbon_families_and_their_mirrors_verify() {
    for (name, h, r, v) in inputs() {
        for variant in [Variant::Plain, Variant::Bar] {
            let (a, rm, tw) = build_r_theta_from_ribbon(&h, &r, &v, variant).unwrap();
            let q = verify_quasitriangular(&a, &rm);
            assert!(q.passed(), "{} {:?}: {}", name, variant, q);
            let t = verify_ribbon(&a, &rm, &tw);
            assert!(t.passed(), "{} {:?}: {}", name, variant, t);
            let (m, mr, mt) = mirror_ribbon(&a, &rm, &tw);
            assert!(verify_quasitriangular(&m, &mr).passed(), "{} {:?}", name, variant);
            assert!(verify_ribbon(&m, &mr, &mt).passed(), "{} {:?}", name, variant);
            assert_eq!(mirror_ribbon(&m, &mr, &mt), (a, rm, tw), "{} {:?}", name, variant);
        }
    }
}

/// Σ s(R″)R′ computed term by term from the nonzero entries of R.
fn drinfeld_oracle(h: &HopfAlgebraData, r: &Tensor) -> Tensor {
    let n = h.dim();
    let mut u = Tensor::zeros(&[n]);
    for (idx, c) in r.nonzero() {
        let s = Tensor::vector(h.antipode[idx[1]].data().to_vec());
        u = u.add(&h.algebra.mul(&s, &h.algebra.basis(idx[0])).scale(&c));
    }
    u
}

#[test]
fn drinfeld_element_of_the_neutral_component() {
    for (name, h, r, v) in inputs() {
        let (a, rm, tw) = build_r_theta_from_ribbon(&h, &r, &v, Variant::Plain).unwrap();
        let unit = a.group.unit();
        let u = drinfeld_element(&a, &rm, unit);
        assert_eq!(u, drinfeld_oracle(&h, &r), "{}", name);
        let g = group_likes(&h).unwrap().element(&h, 1);
        assert_eq!(u, g, "{}", name);
        let s_u = Tensor::vector(
            u.nonzero().iter().fold(Tensor::zeros(&[h.dim()]), |acc, (i, c)| {
                acc.add(&Tensor::vector(h.antipode[i[0]].data().to_vec()).scale(c))
            })
            .data()
            .to_vec(),
        );
        let theta = &tw.theta[unit];
        assert_eq!(h.algebra.mul(theta, theta), h.algebra.mul(&u, &s_u), "{}", name);
    }
}

/// All R ∈ K[Z/2]⊗K[Z/2] with entries in a small coefficient set.
fn candidate_r_matrices() -> Vec<Tensor> {
    let coeffs = [CycloNum::zero(), CycloNum::one(), CycloNum::from_int(-1), CycloNum::from_frac(1, 2), CycloNum::from_frac(-1, 2)];
    let mut out = Vec::new();
    for code in 0..coeffs.len().pow(4) {
        let entries: Vec<(Vec<usize>, CycloNum)> = (0..4)
            .map(|k| (vec![k / 2, k % 2], coeffs[(code / coeffs.len().pow(k as u32)) % coeffs.len()].clone()))
            .collect();
        out.push(Tensor::from_entries(&[2, 2], &entries));
    }
    out
}

#[test]
fn yang_baxter_follows_from_the_r_matrix_axioms() {
    let h = HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2).unwrap());
    let a = PiCoalgebraData::trivial(&h);
    let axioms = [
        "R-matrix invertibility",
        "R-matrix intertwines the comultiplication",
        "R-matrix comultiplication in the second leg",
        "R-matrix comultiplication in the first leg",
        "crossing maps preserve the R-matrix",
    ];
    let mut satisfying = 0;
    for r in candidate_r_matrices() {
        let Ok(rm) = RMatrixFamily::new(&a, vec![vec![r]]) else { continue };
        let rep = verify_quasitriangular(&a, &rm);
        if axioms.iter().all(|n| rep.check(n).unwrap().passed()) {
            satisfying += 1;
            assert!(rep.check("graded Yang-Baxter identity").unwrap().passed());
        }
    }
    assert_eq!(satisfying, 2);
}
