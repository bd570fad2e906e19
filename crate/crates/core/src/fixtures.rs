//! The shipped corpus of categories, diagrams, surgery presentations and
//! Hopf algebras, generated deterministically and written through the
//! savers of [`crate::io`].

use crate::categories::{pointlike_category, ThinCategory};
use crate::cocycles::{enumerate_bicharacter_tuples, tuple_mirror, RibbonTuple};
use crate::constructions::{aut0_pointlike, canonical_extension, pushforward};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::hopf::{group_likes, ribbon_elements, z2_r_matrix, HopfAlgebraData};
use crate::io::{self, DiagramFile, HopfInput};
use crate::surgery::{builtin_presentation, Builtin, SurgeryPresentation};
use crate::tangles::{library, ColoredTangle, SlicedDiagram};

/// The standard bicharacter tuple on Z/n: c(j, k) = ζ_n^{jk}, θ_j = ζ_n^{j²}.
pub fn cyclic_tuple(n: usize) -> Result<RibbonTuple> {
    let g = FiniteGroup::cyclic(n)?;
    let c: Vec<i64> = (0..n as i64).flat_map(|j| (0..n as i64).map(move |k| j * k)).collect();
    let th: Vec<i64> = (0..n as i64).map(|j| j * j).collect();
    RibbonTuple::from_exponents(g, n as u32, &vec![0; n * n * n], &vec![0; n], &c, Some(&th))
}

/// The pullback of a bicharacter tuple along a homomorphism onto an abelian group.
fn pulled_back(src: &FiniteGroup, q: &[usize], t: &RibbonTuple) -> Result<RibbonTuple> {
    let n = src.order();
    let c: Vec<CycloNum> = src.elements().flat_map(|x| src.elements().map(move |y| t.c(q[x], q[y]).clone())).collect();
    let theta = t.theta_table().ok_or_else(|| Error::Validation("tuple has no twist".into()))?;
    RibbonTuple::new(
        src.clone(),
        t.order(),
        vec![CycloNum::one(); n * n * n],
        vec![CycloNum::one(); n],
        c,
        Some(src.elements().map(|x| theta[q[x]].clone()).collect()),
    )
}

fn surjection(src: &FiniteGroup, tgt: &FiniteGroup) -> Result<Vec<usize>> {
    src.homs_to(tgt)
        .into_iter()
        .find(|h| {
            let mut img = h.clone();
            img.sort_unstable();
            img.dedup();
            img.len() == tgt.order()
        })
        .ok_or_else(|| Error::Validation("no surjection".into()))
}

/// S₃ with the sign-pulled-back braiding of the nontrivial Z/2 bicharacter.
pub fn s3_sign_tuple() -> Result<RibbonTuple> {
    let s3 = FiniteGroup::symmetric3();
    let z2 = FiniteGroup::cyclic(2)?;
    let q = surjection(&s3, &z2)?;
    pulled_back(&s3, &q, &cyclic_tuple(2)?)
}

/// Q₈ with a braiding pulled back from its abelianization Z/2 × Z/2.
pub fn q8_klein_tuple() -> Result<RibbonTuple> {
    let q8 = FiniteGroup::quaternion();
    let klein = FiniteGroup::product(&[2, 2])?;
    let q = surjection(&q8, &klein)?;
    let base = enumerate_bicharacter_tuples(&klein, 2)?
        .into_iter()
        .find(|t| klein.elements().all(|x| x == klein.unit() || klein.elements().any(|y| !(t.c(x, y) * t.c(y, x)).is_one())))
        .ok_or_else(|| Error::Validation("no nondegenerate Klein bicharacter".into()))?;
    pulled_back(&q8, &q, &base)
}

/// The pointlike Z/3 category pushed forward to the trivial group, over Q(ζ₁₂)
/// so that D = √3 is available.
pub fn z3_neutral() -> Result<ThinCategory> {
    let c = pointlike_category(&cyclic_tuple(3)?)?;
    let triv = FiniteGroup::cyclic(1)?;
    let q = GroupHom::finite(c.group().clone(), triv, vec![0; 3])?;
    io::lift_category(&pushforward(&c, &q)?, 12)
}

/// The canonical extension of pointlike Z/3 by its full character group, over Q(ζ₁₂).
pub fn z3_extension() -> Result<ThinCategory> {
    let c = io::lift_category(&pointlike_category(&cyclic_tuple(3)?)?, 12)?;
    let (x, _) = aut0_pointlike(&c)?;
    let all: Vec<usize> = x.elements().collect();
    Ok(canonical_extension(&c, &all)?.0)
}

/// Tuple fixtures by file name.
pub fn tuples() -> Result<Vec<(String, RibbonTuple)>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("cat_z{}.toml", n), cyclic_tuple(n)?));
    }
    out.push(("cat_z3_mirror.toml".into(), tuple_mirror(&cyclic_tuple(3)?)));
    out.push(("cat_s3_sign.toml".into(), s3_sign_tuple()?));
    out.push(("cat_q8_klein.toml".into(), q8_klein_tuple()?));
    out.push(("ones.toml".into(), RibbonTuple::all_ones(FiniteGroup::symmetric3(), 1)));
    Ok(out)
}

/// Thin (non-tuple) category fixtures by file name.
pub fn thin_categories() -> Result<Vec<(String, ThinCategory)>> {
    Ok(vec![("cat_z3_neutral.toml".into(), z3_neutral()?), ("cat_z3_extended.toml".into(), z3_extension()?)])
}

/// Every category of the corpus, by file name.
pub fn categories() -> Result<Vec<(String, ThinCategory)>> {
    let mut out: Vec<(String, ThinCategory)> =
        tuples()?.into_iter().map(|(n, t)| pointlike_category(&t).map(|c| (n, c))).collect::<Result<_>>()?;
    out.extend(thin_categories()?);
    Ok(out)
}

/// Closed diagrams colored in pointlike Z/3 by the simple V1 on every component.
pub fn diagrams() -> Result<Vec<(String, ColoredTangle)>> {
    let cat = pointlike_category(&cyclic_tuple(3)?)?;
    let list: Vec<(&str, SlicedDiagram)> = vec![
        ("unknot.json", library::unknot(0)),
        ("hopf_link.json", library::hopf_link()),
        ("trefoil.json", library::trefoil()),
        ("figure_eight.json", library::figure_eight()),
        ("torus_3_3.json", library::torus_3_3()),
    ];
    list.into_iter()
        .map(|(name, d)| {
            let comps = d.analyze().n_comps();
            let seeds: Vec<(usize, usize)> = (0..comps).map(|c| (c, 1)).collect();
            ColoredTangle::from_seeds(d, &cat, &seeds).map(|t| (name.to_string(), t))
        })
        .collect()
}

/// Surgery presentations, labeled in Z/3.
pub fn surgeries() -> Result<Vec<(String, SurgeryPresentation)>> {
    let g = FiniteGroup::cyclic(3)?;
    let mut out = Vec::new();
    for (name, spec) in [
        ("s3.surgery", "S3"),
        ("s1xs2.surgery", "S1xS2(0)"),
        ("s1xs2_1.surgery", "S1xS2(1)"),
        ("lens31.surgery", "lens(3,1)"),
        ("lens21.surgery", "lens(2,0)"),
        ("trefoil0.surgery", "trefoil(0)"),
    ] {
        out.push((name.to_string(), builtin_presentation(&Builtin::parse(spec)?, &g)?));
    }
    let d = library::hopf_link();
    let n = d.analyze().n_arcs();
    out.push(("hopf00.surgery".into(), SurgeryPresentation::with_framings(d, &[0, 0], vec![0; n], &[])?));
    Ok(out)
}

/// K[Z/2] with the R-matrix ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) and the first ribbon
/// element found by [`ribbon_elements`] over coefficients {0, ±1, ±½}.
pub fn kz2_ribbon() -> Result<HopfInput> {
    let h = HopfAlgebraData::group_algebra(&FiniteGroup::cyclic(2)?);
    let r = z2_r_matrix(2, 0, 1);
    let coeffs = [CycloNum::zero(), CycloNum::one(), CycloNum::from_int(-1), CycloNum::from_frac(1, 2), CycloNum::from_frac(-1, 2)];
    let v = ribbon_elements(&h, &r, &coeffs)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Validation("no ribbon element among the candidates".into()))?;
    Ok(HopfInput { hopf: h, r_matrix: Some(r), ribbon: Some(v) })
}

/// Sweedler's H₄ with the parameter-zero R-matrix and ribbon element 1.
pub fn h4_ribbon() -> Result<HopfInput> {
    let h = HopfAlgebraData::sweedler();
    let gl = group_likes(&h)?;
    let r = z2_r_matrix(4, gl.basis_index[0], gl.basis_index[1]);
    let v = h.algebra.unit.clone();
    Ok(HopfInput { hopf: h, r_matrix: Some(r), ribbon: Some(v) })
}

pub fn hopf_inputs() -> Result<Vec<(String, HopfInput)>> {
    Ok(vec![("kz2.hopf.json".into(), kz2_ribbon()?), ("h4.hopf.json".into(), h4_ribbon()?)])
}

/// Every fixture file as (name, contents).
pub fn corpus() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, t) in tuples()? {
        out.push((n, io::save_tuple(&t)?));
    }
    for (n, c) in thin_categories()? {
        out.push((n, io::save_thin(&c)?));
    }
    for (n, t) in diagrams()? {
        out.push((n, io::save_diagram_file(&DiagramFile::from_colored(&t))?));
    }
    for (n, p) in surgeries()? {
        out.push((n, io::save_surgery(&p)?));
    }
    for (n, h) in hopf_inputs()? {
        out.push((n, io::save_hopf(&h)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{crossed_invariance_suite, modular_data};
    use crate::surgery::check_special;

    #[test]
    fn corpus_is_valid() {
        for (name, c) in categories().unwrap() {
            let r = crossed_invariance_suite(&c);
            assert!(r.passed(), "{}: {}", name, r);
            if c.is_strict() && c.unit().is_ok() {
                modular_data(&c, true).unwrap_or_else(|e| panic!("{}: {}", name, e));
            }
        }
        for (name, p) in surgeries().unwrap() {
            assert!(check_special(&p, &FiniteGroup::cyclic(3).unwrap()).passed(), "{}", name);
        }
        let files = corpus().unwrap();
        assert!(files.len() >= 20);
    }
}
