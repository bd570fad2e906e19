//! Crossed π-algebras and the block dimensions of the 2-dimensional
//! homotopy modular functor of a thin category.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::categories::ThinCategory;
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::report::Report;

/// Sparse vector over the basis.
pub type Vector = BTreeMap<usize, CycloNum>;

/// A π-graded algebra with inner product and π-action, on an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedAlgebra {
    pub group: FiniteGroup,
    pub grade: Vec<usize>,
    /// Product of basis elements i and j.
    pub mult: Vec<Vec<Vector>>,
    pub unit: Vector,
    /// Inner product on basis pairs.
    pub eta: Vec<Vec<CycloNum>>,
    /// phi[α][i] is the image of basis element i under φ_α.
    pub phi: Vec<Vec<Vector>>,
}

fn add_scaled(out: &mut Vector, v: &Vector, s: &CycloNum) {
    for (k, x) in v {
        let e = out.entry(*k).or_insert_with(CycloNum::zero);
        *e = &*e + &(x * s);
        if e.is_zero() {
            out.remove(k);
        }
    }
}

fn basis_vec(i: usize) -> Vector {
    BTreeMap::from([(i, CycloNum::one())])
}

fn clean(v: Vector) -> Vector {
    v.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

impl CrossedAlgebra {
    pub fn len(&self) -> usize {
        self.grade.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grade.is_empty()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, a) in x {
            for (j, b) in y {
                add_scaled(&mut out, &self.mult[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn act(&self, alpha: usize, x: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, a) in x {
            add_scaled(&mut out, &self.phi[alpha][*i], a);
        }
        out
    }

    pub fn pair(&self, x: &Vector, y: &Vector) -> CycloNum {
        let mut s = CycloNum::zero();
        for (i, a) in x {
            for (j, b) in y {
                if !self.eta[*i][*j].is_zero() {
                    s = s + a * b * &self.eta[*i][*j];
                }
            }
        }
        s
    }

    pub fn component(&self, alpha: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.grade[i] == alpha).collect()
    }

    /// Trace of a linear map on the span of `basis`, given the images of its
    /// elements; coordinates outside the span are ignored.
    fn trace(basis: &[usize], image: impl Fn(usize) -> Vector) -> CycloNum {
        basis.iter().map(|&i| image(i).get(&i).cloned().unwrap_or_else(CycloNum::zero)).sum()
    }

    /// The crossed algebra axioms on basis elements: graded associative
    /// algebra with unit, inner-product conditions, the π-action conditions
    /// and the trace identity.
    pub fn verify(&self) -> Report {
        let g = &self.group;
        let n = self.len();
        let mut r = Report::new("crossed algebra");
        let assoc = r.begin("associativity");
        let unit = r.begin("two-sided unit in the neutral component");
        let grading = r.begin("multiplication respects the grading");
        let eta_grade = r.begin("inner product vanishes off inverse components");
        let eta_sym = r.begin("inner product is symmetric");
        let eta_nd = r.begin("inner product is nondegenerate on each inverse pair");
        let frob = r.begin("eta(ab, c) = eta(a, bc)");
        let hom = r.begin("phi is a group homomorphism");
        let aut = r.begin("phi acts by algebra automorphisms");
        let phi_eta = r.begin("phi preserves the inner product");
        let phi_grade = r.begin("phi conjugates the grading");
        let phi_self = r.begin("phi_alpha is the identity on its own component");
        let twisted = r.begin("phi_alpha(b) a = ab for a in the alpha component");
        let trace = r.begin("trace identity for c in the commutator component");
        let in_comp = |v: &Vector, a: usize| v.keys().all(|&k| self.grade[k] == a);
        r.record(unit, in_comp(&self.unit, g.unit()), || "unit outside the neutral component".into());
        for i in 0..n {
            let bi = basis_vec(i);
            r.record(unit, self.mul(&self.unit, &bi) == bi && self.mul(&bi, &self.unit) == bi, || format!("basis {}", i));
            for j in 0..n {
                let p = &self.mult[i][j];
                r.record(grading, in_comp(p, g.mul(self.grade[i], self.grade[j])), || format!("({}, {})", i, j));
                let e = &self.eta[i][j];
                r.record(eta_grade, e.is_zero() || g.mul(self.grade[i], self.grade[j]) == g.unit(), || {
                    format!("({}, {})", i, j)
                });
                r.record(eta_sym, *e == self.eta[j][i], || format!("({}, {})", i, j));
                if self.grade[j] == self.grade[i] {
                    let lhs = self.act(self.grade[i], &basis_vec(j));
                    r.record(phi_self, lhs == basis_vec(j), || format!("alpha = {}, basis {}", self.grade[i], j));
                }
                let lhs = self.mul(&self.act(self.grade[i], &basis_vec(j)), &bi);
                r.record(twisted, lhs == *p, || format!("a = {}, b = {}", i, j));
                for k in 0..n {
                    let bk = basis_vec(k);
                    let l = self.mul(p, &bk);
                    let rr = self.mul(&bi, &self.mult[j][k]);
                    r.record(assoc, l == rr, || format!("({}, {}, {})", i, j, k));
                    let f1 = self.pair(p, &bk);
                    let f2 = self.pair(&bi, &self.mult[j][k]);
                    r.record(frob, f1 == f2, || format!("({}, {}, {})", i, j, k));
                }
            }
        }
        for a in g.elements() {
            let ca = self.component(a);
            let cb = self.component(g.inv(a));
            let m: Vec<Vec<CycloNum>> = ca.iter().map(|&i| cb.iter().map(|&j| self.eta[i][j].clone()).collect()).collect();
            let ok = ca.len() == cb.len() && (ca.is_empty() || linalg::rank(&m) == ca.len());
            r.record(eta_nd, ok, || format!("alpha = {}", a));
        }
        for a in g.elements() {
            for b in g.elements() {
                for i in 0..n {
                    let bi = basis_vec(i);
                    let l = self.act(g.mul(a, b), &bi);
                    let rr = self.act(a, &self.act(b, &bi));
                    r.record(hom, l == rr, || format!("({}, {}) on basis {}", a, b, i));
                }
            }
        }
        for a in g.elements() {
            r.record(aut, self.act(a, &self.unit) == self.unit, || format!("alpha = {} moves the unit", a));
            for i in 0..n {
                let pi = self.act(a, &basis_vec(i));
                r.record(phi_grade, in_comp(&pi, g.conj(a, self.grade[i])), || format!("alpha = {}, basis {}", a, i));
                for j in 0..n {
                    let pj = self.act(a, &basis_vec(j));
                    let l = self.act(a, &self.mult[i][j]);
                    let rr = self.mul(&pi, &pj);
                    r.record(aut, l == rr, || format!("alpha = {}, ({}, {})", a, i, j));
                    r.record(phi_eta, self.pair(&pi, &pj) == self.eta[i][j], || format!("alpha = {}, ({}, {})", a, i, j));
                }
            }
        }
        for a in g.elements() {
            let la = self.component(a);
            for b in g.elements() {
                let lb = self.component(b);
                let comm = g.commutator(a, b);
                for c in self.component(comm) {
                    let cv = basis_vec(c);
                    let t1 = Self::trace(&la, |i| self.mul(&cv, &self.act(b, &basis_vec(i))));
                    let t2 = Self::trace(&lb, |j| self.act(g.inv(a), &self.mul(&cv, &basis_vec(j))));
                    r.record(trace, t1 == t2, || format!("alpha = {}, beta = {}, c = {}: {} vs {}", a, b, c, t1, t2));
                }
            }
        }
        r
    }
}

/// Crossed algebra of a thin category: basis the simples, product the
/// tensor product, η(⟨U⟩,⟨U'⟩) = dim Hom(𝟙, U ⊗ U'), φ the π-action.
pub fn crossed_algebra(c: &ThinCategory) -> Result<CrossedAlgebra> {
    let n = c.len();
    let g = c.group().clone();
    let is_unit = |s: Option<usize>| s.is_some_and(|s| c.units().contains(&s));
    let mult = (0..n).map(|i| (0..n).map(|j| c.tensor(i, j).map(basis_vec).unwrap_or_default()).collect()).collect();
    let eta = (0..n)
        .map(|i| (0..n).map(|j| if is_unit(c.tensor(i, j)) { CycloNum::one() } else { CycloNum::zero() }).collect())
        .collect();
    let phi = g.elements().map(|a| (0..n).map(|i| basis_vec(c.act(a, i))).collect()).collect();
    let unit = c.units().iter().map(|&u| (u, CycloNum::one())).collect();
    Ok(CrossedAlgebra { group: g, grade: (0..n).map(|s| c.grade(s)).collect(), mult, unit, eta, phi })
}

/// The group algebra K[π] with η(x, y) = [xy = 1] and trivial action.
pub fn group_algebra(g: &FiniteGroup) -> CrossedAlgebra {
    let n = g.order();
    CrossedAlgebra {
        group: g.clone(),
        grade: (0..n).collect(),
        mult: (0..n).map(|i| (0..n).map(|j| basis_vec(g.mul(i, j))).collect()).collect(),
        unit: basis_vec(g.unit()),
        eta: (0..n)
            .map(|i| (0..n).map(|j| if g.mul(i, j) == g.unit() { CycloNum::one() } else { CycloNum::zero() }).collect())
            .collect(),
        phi: g.elements().map(|_| (0..n).map(basis_vec).collect()).collect(),
    }
}

/// Which table a mutation touched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MutationSite {
    Mult { i: usize, j: usize, k: usize },
    Eta { i: usize, j: usize },
    Phi { alpha: usize, i: usize, k: usize },
    Unit { k: usize },
}

/// Changes one table entry to a different value.
pub fn mutate(a: &CrossedAlgebra, rng: &mut impl Rng) -> (CrossedAlgebra, MutationSite) {
    let n = a.len();
    let mut m = a.clone();
    let bump = |old: Option<&CycloNum>, rng: &mut dyn rand::RngCore| -> CycloNum {
        let old = old.cloned().unwrap_or_else(CycloNum::zero);
        let mut d = rng.gen_range(-3i64..=3);
        if d == 0 {
            d = 1;
        }
        old + CycloNum::from_int(d)
    };
    let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
    let site = match rng.gen_range(0..4) {
        0 => {
            let v = bump(m.mult[i][j].get(&k), rng);
            m.mult[i][j].insert(k, v);
            m.mult[i][j] = clean(std::mem::take(&mut m.mult[i][j]));
            MutationSite::Mult { i, j, k }
        }
        1 => {
            m.eta[i][j] = bump(Some(&m.eta[i][j]), rng);
            MutationSite::Eta { i, j }
        }
        2 => {
            let alpha = rng.gen_range(0..a.group.order());
            let v = bump(m.phi[alpha][i].get(&k), rng);
            m.phi[alpha][i].insert(k, v);
            m.phi[alpha][i] = clean(std::mem::take(&mut m.phi[alpha][i]));
            MutationSite::Phi { alpha, i, k }
        }
        _ => {
            let v = bump(m.unit.get(&k), rng);
            m.unit.insert(k, v);
            m.unit = clean(std::mem::take(&mut m.unit));
            MutationSite::Unit { k }
        }
    };
    (m, site)
}

/// Runs `trials` independent single-entry mutations; returns the number the
/// verifier rejected and the undetected sites.
pub fn mutation_detection(a: &CrossedAlgebra, trials: usize, rng: &mut impl Rng) -> (usize, Vec<MutationSite>) {
    let mut caught = 0;
    let mut missed = Vec::new();
    for _ in 0..trials {
        let (m, site) = mutate(a, rng);
        if m.verify().passed() {
            missed.push(site);
        } else {
            caught += 1;
        }
    }
    (caught, missed)
}

/// A marked point: sign and color (its π-label is the grade of the color).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mark {
    pub positive: bool,
    pub color: usize,
}

/// Genus, marks and the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSpec {
    pub marks: Vec<Mark>,
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
}

impl SurfaceSpec {
    pub fn closed(alphas: Vec<usize>, betas: Vec<usize>) -> Self {
        SurfaceSpec { marks: Vec::new(), alphas, betas }
    }

    pub fn genus(&self) -> usize {
        self.alphas.len()
    }

    /// Π μ_r^{ε_r} Π [α_s, β_s] = 1.
    pub fn check_relation(&self, c: &ThinCategory) -> Result<()> {
        let g = c.group();
        if self.alphas.len() != self.betas.len() {
            return Err(Error::Validation("alphas and betas differ in length".into()));
        }
        let mut acc = g.unit();
        for m in &self.marks {
            let mu = c.grade(m.color);
            acc = g.mul(acc, if m.positive { mu } else { g.inv(mu) });
        }
        for (&a, &b) in self.alphas.iter().zip(&self.betas) {
            acc = g.mul(acc, g.commutator(a, b));
        }
        if acc != g.unit() {
            return Err(Error::Validation(format!("surface relation evaluates to element {} instead of the unit", acc)));
        }
        Ok(())
    }
}

/// dim Hom(𝟙, X₁ ⊗ … ⊗ X_k) in a thin category.
pub fn hom_from_unit(c: &ThinCategory, xs: &[usize]) -> Result<usize> {
    if xs.is_empty() {
        return Ok(c.units().len());
    }
    Ok(usize::from(c.tensor_all(xs)?.is_some_and(|s| c.units().contains(&s))))
}

/// Dimension of the module of the surface: the number of tuples
/// (i_s ∈ I_{α_s}) with Hom(𝟙, ⊗U_r^{ε_r} ⊗ ⊗(V_{i_s} ⊗ φ_{β_s}(V_{i_s})*)) ≠ 0.
pub fn block_dimension(c: &ThinCategory, s: &SurfaceSpec) -> Result<usize> {
    s.check_relation(c)?;
    let mut prefix: Vec<usize> =
        s.marks.iter().map(|m| if m.positive { m.color } else { c.dual(m.color) }).collect();
    let choices: Vec<Vec<usize>> = s.alphas.iter().map(|&a| c.simples_of(a)).collect();
    if s.genus() == 0 {
        return hom_from_unit(c, &prefix);
    }
    if choices.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let base = prefix.len();
    let mut idx = vec![0usize; s.genus()];
    let mut total = 0;
    loop {
        prefix.truncate(base);
        for (k, &i) in idx.iter().enumerate() {
            let v = choices[k][i];
            prefix.push(v);
            prefix.push(c.dual(c.act(s.betas[k], v)));
        }
        total += hom_from_unit(c, &prefix)?;
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Value of the closed genus-n surface: the block dimension without marks.
pub fn closed_surface_value(c: &ThinCategory, alphas: &[usize], betas: &[usize]) -> Result<usize> {
    block_dimension(c, &SurfaceSpec::closed(alphas.to_vec(), betas.to_vec()))
}

/// #{i ∈ I_α : φ_β(i) = i}: the fixed-point count for the unmarked torus.
pub fn torus_fixed_points(c: &ThinCategory, alpha: usize, beta: usize) -> usize {
    c.simples_of(alpha).into_iter().filter(|&i| c.act(beta, i) == i).count()
}

/// The three descriptions of the once-marked (or unmarked) torus module:
/// generators (a, b), (aba⁻¹, a⁻¹), and the dual form summed over I_β.
pub fn torus_descriptions(c: &ThinCategory, mark: Option<Mark>, alpha: usize, beta: usize) -> Result<[usize; 3]> {
    let g = c.group();
    let marks: Vec<Mark> = mark.into_iter().collect();
    let first = block_dimension(c, &SurfaceSpec { marks: marks.clone(), alphas: vec![alpha], betas: vec![beta] })?;
    let second = block_dimension(
        c,
        &SurfaceSpec { marks: marks.clone(), alphas: vec![g.conj(alpha, beta)], betas: vec![g.inv(alpha)] },
    )?;
    let u: Vec<usize> = marks.iter().map(|m| if m.positive { m.color } else { c.dual(m.color) }).collect();
    let mut third = 0;
    for k in c.simples_of(beta) {
        let mut xs = u.clone();
        xs.push(c.act(alpha, k));
        xs.push(c.dual(k));
        third += hom_from_unit(c, &xs)?;
    }
    Ok([first, second, third])
}

/// The splitting identity dim Hom(𝟙, V ⊗ W) = Σ_{i ∈ I_α} dim Hom(𝟙, V ⊗ V_i*)
/// · dim Hom(𝟙, V_i ⊗ W) for V, W given as products of simples.
pub fn verify_splitting(c: &ThinCategory, alpha: usize, v: &[usize], w: &[usize]) -> Result<Report> {
    let mut r = Report::new("splitting along a curve");
    let g = c.group();
    let grade = |xs: &[usize]| xs.iter().fold(g.unit(), |a, &x| g.mul(a, c.grade(x)));
    let ok_grades = grade(v) == alpha && grade(w) == g.inv(alpha);
    r.single("V and W lie in inverse components", ok_grades, || format!("grades {} and {}", grade(v), grade(w)));
    let vw: Vec<usize> = v.iter().chain(w).copied().collect();
    let lhs = hom_from_unit(c, &vw)?;
    let mut rhs = 0;
    for i in c.simples_of(alpha) {
        let mut a: Vec<usize> = v.to_vec();
        a.push(c.dual(i));
        let mut b = vec![i];
        b.extend_from_slice(w);
        rhs += hom_from_unit(c, &a)? * hom_from_unit(c, &b)?;
    }
    r.single("dimension splits over simples of the cut component", lhs == rhs, || format!("{} vs {}", lhs, rhs));
    Ok(r)
}

/// The splitting identity over all pairs of simples in inverse components.
pub fn splitting_suite(c: &ThinCategory) -> Result<Report> {
    let mut r = Report::new("splitting suite");
    let idx = r.begin("dimension splits over simples of the cut component");
    let g = c.group();
    for a in g.elements() {
        for v in c.simples_of(a) {
            for w in c.simples_of(g.inv(a)) {
                let sub = verify_splitting(c, a, &[v], &[w])?;
                r.record(idx, sub.passed(), || format!("alpha = {}, V = {}, W = {}", a, c.label(v), c.label(w)));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::pointlike_category;
    use crate::cocycles::RibbonTuple;
    use rand::SeedableRng;

    fn zn(n: usize) -> ThinCategory {
        let g = FiniteGroup::cyclic(n).unwrap();
        let n = n as i64;
        let c: Vec<i64> = (0..n).flat_map(|j| (0..n).map(move |k| j * k)).collect();
        let th: Vec<i64> = (0..n).map(|j| j * j).collect();
        let ord = n as u32;
        let a = vec![0; (n * n * n) as usize];
        pointlike_category(&RibbonTuple::from_exponents(g, ord, &a, &vec![0; n as usize], &c, Some(&th)).unwrap()).unwrap()
    }

    #[test]
    fn pointlike_crossed_algebra() {
        let c = zn(4);
        let a = crossed_algebra(&c).unwrap();
        let r = a.verify();
        assert!(r.passed(), "{}", r);
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(a.eta[j][k].is_one(), (j + k) % 4 == 0);
            }
        }
    }

    #[test]
    fn group_algebra_passes() {
        let a = group_algebra(&FiniteGroup::cyclic(3).unwrap());
        assert!(a.verify().passed());
    }

    #[test]
    fn mutations_are_caught() {
        let a = crossed_algebra(&zn(3)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let (caught, missed) = mutation_detection(&a, 100, &mut rng);
        assert_eq!(caught, 100, "{:?}", missed);
    }

    #[test]
    fn torus_counts() {
        let c = zn(3);
        assert_eq!(closed_surface_value(&c, &[], &[]).unwrap(), 1);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(closed_surface_value(&c, &[a], &[b]).unwrap(), 1);
                assert_eq!(torus_descriptions(&c, None, a, b).unwrap(), [1, 1, 1]);
            }
        }
        assert!(splitting_suite(&c).unwrap().passed());
    }
}
