//! Invariants of closed π-manifolds presented by surgery on labeled framed
//! links, and Kirby-move invariance testing.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::categories::{modular_data, ThinCategory};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::Report;
use crate::tangles::{
    self, check_labels, evaluate_raw, library, longitude, propagate_colors, solve_labels, Analysis, ArcKey, Event,
    Move, Orient, Over, SlicedDiagram,
};

/// A closed labeled framed link, optionally with a colored graph Ω whose
/// components carry fixed colors instead of canonical ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    diagram: SlicedDiagram,
    labels: Vec<usize>,
    omega: BTreeMap<ArcKey, usize>,
}

impl SurgeryPresentation {
    /// `omega` lists (arc, color) pairs; every arc of a component touching Ω
    /// must be colored, directly or by propagation.
    pub fn new(diagram: SlicedDiagram, labels: Vec<usize>, omega: &[(usize, usize)]) -> Result<Self> {
        if !diagram.inputs().is_empty() || !diagram.outputs().is_empty() {
            return Err(Error::Validation("surgery diagram must be closed".into()));
        }
        let an = diagram.analyze();
        if labels.len() != an.n_arcs() {
            return Err(Error::Validation(format!("{} labels for {} arcs", labels.len(), an.n_arcs())));
        }
        let mut map = BTreeMap::new();
        for &(a, c) in omega {
            if a >= an.n_arcs() {
                return Err(Error::Validation(format!("omega color on missing arc {}", a)));
            }
            for k in &an.arc_keys[a] {
                map.insert(*k, c);
            }
        }
        Ok(SurgeryPresentation { diagram, labels, omega: map })
    }

    /// Adds kinks after the first cup of each component so that its
    /// blackboard framing equals the requested integer.
    pub fn with_framings(diagram: SlicedDiagram, framings: &[i64], labels: Vec<usize>, omega: &[(usize, usize)]) -> Result<Self> {
        let an = diagram.analyze();
        let surgery: Vec<usize> = {
            let p = Self::new(diagram.clone(), labels.clone(), omega)?;
            p.surgery_components(&an)
        };
        if framings.len() != surgery.len() {
            return Err(Error::Validation(format!(
                "{} framings for {} link components",
                framings.len(),
                surgery.len()
            )));
        }
        let mut d = diagram.clone();
        // Insert from the last slice backwards so earlier indices stay valid.
        let mut inserts: Vec<(usize, usize, i64)> = Vec::new();
        for (&c, &f) in surgery.iter().zip(framings) {
            let delta = f - an.writhe(c);
            if delta == 0 {
                continue;
            }
            let k = (0..diagram.len())
                .find(|&k| matches!(diagram.slices()[k], Event::Cup { .. }) && an.arc_comp[an.slice_arcs[k][0]] == c)
                .ok_or_else(|| Error::Validation(format!("component {} has no cup", c)))?;
            let Event::Cup { pos, .. } = diagram.slices()[k] else { unreachable!() };
            inserts.push((k + 1, pos, delta));
        }
        inserts.sort_by(|a, b| b.0.cmp(&a.0));
        for (at, pos, delta) in inserts {
            let sign = if delta > 0 { 1 } else { -1 };
            d = d.insert_slices(at, vec![Event::Kink { pos, sign }; delta.unsigned_abs() as usize])?;
        }
        let omega_keys: Vec<(usize, usize)> = omega.to_vec();
        Self::new(d, labels, &omega_keys)
    }

    pub fn diagram(&self) -> &SlicedDiagram {
        &self.diagram
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn analyze(&self) -> Analysis {
        self.diagram.analyze()
    }

    /// Ω colors per arc (None on link arcs and on unseeded Ω arcs).
    pub fn omega_seeds(&self, an: &Analysis) -> Vec<Option<usize>> {
        an.arc_keys.iter().map(|ks| ks.iter().find_map(|k| self.omega.get(k).copied())).collect()
    }

    pub fn omega_components(&self, an: &Analysis) -> BTreeSet<usize> {
        let seeds = self.omega_seeds(an);
        let mut out: BTreeSet<usize> = (0..an.n_arcs()).filter(|&a| seeds[a].is_some()).map(|a| an.arc_comp[a]).collect();
        for c in 0..an.n_comps() {
            if !an.comp_closed[c] {
                out.insert(c);
            }
        }
        out
    }

    /// Components of the surgery link proper.
    pub fn surgery_components(&self, an: &Analysis) -> Vec<usize> {
        let om = self.omega_components(an);
        (0..an.n_comps()).filter(|c| !om.contains(c)).collect()
    }

    pub fn n_components(&self) -> usize {
        self.surgery_components(&self.analyze()).len()
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let an = self.analyze();
        an.linking_matrix(&self.surgery_components(&an))
    }

    pub fn framings(&self) -> Vec<i64> {
        let an = self.analyze();
        self.surgery_components(&an).iter().map(|&c| an.writhe(c)).collect()
    }

    /// Ω colors as (arc, simple) pairs, one per colored arc.
    pub fn omega_arcs(&self) -> Vec<(usize, usize)> {
        let an = self.analyze();
        self.omega_seeds(&an).into_iter().enumerate().filter_map(|(a, c)| c.map(|c| (a, c))).collect()
    }

    pub fn has_omega(&self) -> bool {
        !self.omega.is_empty()
    }

    /// Ω colors per arc after propagation along crossings.
    pub fn omega_colors(&self, an: &Analysis, cat: &ThinCategory) -> Result<Vec<Option<usize>>> {
        let mut known = self.omega_seeds(an);
        propagate_colors(an, cat, &self.labels, &mut known).map_err(|w| Error::Validation(format!("Ω color conflict at {}", w)))?;
        for c in self.omega_components(an) {
            if let Some(a) = an.arcs_of(c).into_iter().find(|&a| known[a].is_none()) {
                return Err(Error::Validation(format!("Ω arc {} has no color", a)));
            }
        }
        Ok(known)
    }
}

/// Label relations plus the special condition: every link component's
/// longitude maps to the unit.
pub fn check_special(p: &SurgeryPresentation, g: &FiniteGroup) -> Report {
    let an = p.analyze();
    let mut r = check_labels(&an, g, &p.labels);
    if !r.passed() {
        return r;
    }
    let idx = r.begin("longitudes map to the unit");
    for c in p.surgery_components(&an) {
        let l = longitude(&an, g, &p.labels, c);
        r.record(idx, l == Some(g.unit()), || format!("component {} longitude {:?}", c, l));
    }
    r
}

fn is_special(an: &Analysis, g: &FiniteGroup, labels: &[usize], comps: &[usize]) -> bool {
    comps.iter().all(|&c| longitude(an, g, labels, c) == Some(g.unit()))
}

/// Inertia of the linking form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub sigma: i64,
    pub plus: usize,
    pub minus: usize,
    /// Nullity of the linking matrix: the first Betti number of the manifold.
    pub b1: usize,
}

/// Positive, negative and zero counts of a symmetric integer matrix, by
/// exact congruence diagonalization over the rationals.
pub fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let (mut plus, mut minus, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                continue;
            }
            if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
                continue;
            }
            zero += 1;
            k += 1;
            continue;
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for c in 0..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut() {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        if piv.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        k += 1;
    }
    (plus, minus, zero)
}

pub fn signature_of_linking(p: &SurgeryPresentation) -> Signature {
    let (plus, minus, zero) = inertia(&p.linking_matrix());
    Signature { sigma: plus as i64 - minus as i64, plus, minus, b1: zero }
}

/// The canonical coloring expanded into weighted colorings of all arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalColoring {
    pub terms: Vec<(CycloNum, Vec<usize>)>,
}

/// Colors each link component by the canonical color of its meridian label
/// (the dimension-weighted sum of the simples of that component) and Ω by
/// its fixed colors.
pub fn canonical_coloring(p: &SurgeryPresentation, cat: &ThinCategory) -> Result<CanonicalColoring> {
    let g = cat.group();
    let rep = check_special(p, g);
    if !rep.passed() {
        return Err(Error::Validation(format!("presentation is not special:\n{}", rep)));
    }
    let an = p.analyze();
    let fixed = p.omega_colors(&an, cat)?;
    let comps = p.surgery_components(&an);
    let choices: Vec<Vec<usize>> = comps.iter().map(|&c| cat.simples_of(p.labels[an.comp_base[c]])).collect();
    let mut terms = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return Ok(CanonicalColoring { terms });
    }
    let mut idx = vec![0usize; comps.len()];
    loop {
        let seeds: Vec<(usize, usize)> = comps.iter().zip(&idx).enumerate().map(|(k, (&c, &i))| (c, choices[k][i])).collect();
        let colors = tangles::spread_colors(&an, cat, &p.labels, &seeds, &fixed).map_err(Error::Validation)?;
        let mut w = CycloNum::one();
        for &(_, s) in &seeds {
            w = w * cat.dim(s)?;
        }
        terms.push((w, colors));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(CanonicalColoring { terms });
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

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauResult {
    pub value: CycloNum,
    /// D^{b₁+1}·τ, independent of the sign of D.
    pub tau_prime: CycloNum,
    pub functor_value: CycloNum,
    pub signature: Signature,
    pub n_components: usize,
    pub rank: CycloNum,
    pub delta_minus: CycloNum,
}

/// τ = Δ₋^σ · D^{−σ−#ℓ−1} · F(ℓ_can ∪ Ω).
pub fn tau(p: &SurgeryPresentation, cat: &ThinCategory, positive_rank: bool) -> Result<TauResult> {
    let md = modular_data(cat, positive_rank)?;
    let can = canonical_coloring(p, cat)?;
    let an = p.analyze();
    let mut f = CycloNum::zero();
    for (w, colors) in &can.terms {
        f = f + w * evaluate_raw(p.diagram(), &an, cat, colors)?;
    }
    let sig = signature_of_linking(p);
    let n = p.n_components() as i64;
    let value = md.delta_minus.pow(sig.sigma)? * md.rank.pow(-sig.sigma - n - 1)? * &f;
    let tau_prime = md.rank.pow(sig.b1 as i64 + 1)? * &value;
    Ok(TauResult {
        value,
        tau_prime,
        functor_value: f,
        signature: sig,
        n_components: n as usize,
        rank: md.rank,
        delta_minus: md.delta_minus,
    })
}

/// Rebuilds a presentation on an edited diagram: labels and Ω colors of arcs
/// keeping an unedited key are kept, `forced` keys are set, the rest are
/// solved for subject to the special condition.
fn rebuild(
    p: &SurgeryPresentation,
    d2: SlicedDiagram,
    touched: &BTreeSet<u64>,
    forced: &BTreeMap<ArcKey, usize>,
    g: &FiniteGroup,
    cat: Option<&ThinCategory>,
) -> Result<SurgeryPresentation> {
    let old = p.analyze();
    let new = d2.analyze();
    let old_map = old.arc_of_key();
    let mut known: Vec<Option<usize>> = vec![None; new.n_arcs()];
    let mut omega_known: Vec<Option<usize>> = vec![None; new.n_arcs()];
    for (a, keys) in new.arc_keys.iter().enumerate() {
        for k in keys {
            if let Some(&l) = forced.get(k) {
                known[a] = Some(l);
            }
            if touched.contains(&k.uid) {
                continue;
            }
            if let Some(&oa) = old_map.get(k) {
                known[a] = Some(p.labels[oa]);
            }
            if let Some(&c) = p.omega.get(k) {
                omega_known[a] = Some(c);
            }
        }
    }
    // Ω components: those reached by an Ω key or open.
    let mut omega_comps: BTreeSet<usize> =
        (0..new.n_arcs()).filter(|&a| omega_known[a].is_some()).map(|a| new.arc_comp[a]).collect();
    omega_comps.extend((0..new.n_comps()).filter(|&c| !new.comp_closed[c]));
    let link: Vec<usize> = (0..new.n_comps()).filter(|c| !omega_comps.contains(c)).collect();
    let mut accept = |l: &[usize]| check_labels(&new, g, l).passed() && is_special(&new, g, l, &link);
    let labels = solve_labels(&new, g, &known, &mut accept)
        .ok_or_else(|| Error::Validation("no special labeling extends across the move".into()))?;
    let mut omega = BTreeMap::new();
    if omega_known.iter().any(Option::is_some) {
        let cat = cat.ok_or_else(|| Error::Unsupported("moves through Ω need the category to recolor".into()))?;
        propagate_colors(&new, cat, &labels, &mut omega_known)
            .map_err(|w| Error::Validation(format!("Ω color conflict at {}", w)))?;
        for (a, c) in omega_known.iter().enumerate() {
            if let Some(c) = c {
                for k in &new.arc_keys[a] {
                    omega.insert(*k, *c);
                }
            }
        }
    }
    Ok(SurgeryPresentation { diagram: d2, labels, omega })
}

/// Adds a distant unknot with framing `sign` (±1) labeled by the unit.
pub fn kirby_stabilize(p: &SurgeryPresentation, sign: i8, g: &FiniteGroup) -> Result<SurgeryPresentation> {
    if sign != 1 && sign != -1 {
        return Err(Error::Validation(format!("stabilization sign must be ±1, got {}", sign)));
    }
    let n = p.diagram.len();
    let d2 = p.diagram.insert_slices(
        n,
        vec![Event::Cup { pos: 0, left: Orient::Up }, Event::Kink { pos: 0, sign }, Event::Cap { pos: 0 }],
    )?;
    let cup_uid = d2.uids()[n];
    let forced = BTreeMap::from([(ArcKey { uid: cup_uid, slot: 0 }, g.unit())]);
    rebuild(p, d2, &BTreeSet::new(), &forced, g, None)
}

/// Location of a Fenn–Rourke move: `width` consecutive strands starting at
/// `pos` on the level below slice `slice`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrSite {
    pub slice: usize,
    pub pos: usize,
    pub width: usize,
}

/// Slices of a circle with framing `sign` around `width` strands at `pos`,
/// followed by a full twist of the strands of the same handedness.
pub fn fenn_rourke_slices(pos: usize, width: usize, sign: i8) -> Vec<Event> {
    let mut ev = vec![Event::Cup { pos, left: Orient::Up }];
    for j in 0..width {
        ev.push(Event::Cross { pos: pos + 1 + j, over: Over::Left });
    }
    ev.push(Event::Kink { pos, sign });
    for j in 0..width {
        ev.push(Event::Cross { pos: pos + j, over: Over::Right });
    }
    ev.push(Event::Cap { pos: pos + width });
    let over = if sign > 0 { Over::Left } else { Over::Right };
    for _ in 0..width {
        for j in 0..width.saturating_sub(1) {
            ev.push(Event::Cross { pos: pos + j, over });
        }
    }
    for j in 0..width {
        ev.push(Event::Kink { pos: pos + j, sign });
    }
    ev
}

/// Blow-up at a site: inserts a circle with framing `sign` around the site
/// strands together with a compensating full twist, labeling the circle so
/// the result stays special.
pub fn fenn_rourke(p: &SurgeryPresentation, site: FrSite, sign: i8, cat: &ThinCategory) -> Result<SurgeryPresentation> {
    if sign != 1 && sign != -1 {
        return Err(Error::Validation(format!("Fenn-Rourke sign must be ±1, got {}", sign)));
    }
    let levels = p.diagram.levels();
    if site.slice > p.diagram.len() || site.width == 0 || site.pos + site.width > levels[site.slice].len() {
        return Err(Error::Pattern(format!("invalid Fenn-Rourke site {:?}", site)));
    }
    let d2 = p.diagram.insert_slices(site.slice, fenn_rourke_slices(site.pos, site.width, sign))?;
    rebuild(p, d2, &BTreeSet::new(), &BTreeMap::new(), cat.group(), Some(cat))
}

/// The local identity behind Fenn–Rourke invariance: for every coloring of
/// the site strands, the canonically colored circle-plus-twist tangle equals
/// Δ_sign times the identity.
pub fn fenn_rourke_local_check(cat: &ThinCategory, orients: &[Orient], labels: &[usize], sign: i8) -> Result<Report> {
    let g = cat.group();
    let md = modular_data(cat, true)?;
    let delta = if sign > 0 { md.delta_plus.clone() } else { md.delta_minus.clone() };
    let w = orients.len();
    let d = SlicedDiagram::new(orients.to_vec(), fenn_rourke_slices(0, w, sign))?;
    let an = d.analyze();
    let mut known = vec![None; an.n_arcs()];
    for (i, &a) in an.input_arcs.iter().enumerate() {
        known[a] = Some(labels[i]);
    }
    let circle: Vec<usize> = (0..an.n_comps()).filter(|&c| an.comp_closed[c]).collect();
    let mut accept = |l: &[usize]| check_labels(&an, g, l).passed() && is_special(&an, g, l, &circle);
    let lab = solve_labels(&an, g, &known, &mut accept)
        .ok_or_else(|| Error::Validation("no special circle label at the site".into()))?;
    let mut r = Report::new("Fenn-Rourke local identity");
    let bnd = r.begin("boundary labels are preserved");
    for (i, &a) in an.input_arcs.iter().enumerate() {
        r.record(bnd, lab[a] == lab[an.output_arcs[i].1], || format!("strand {}", i));
    }
    let eq = r.begin("circle-plus-twist equals the Gauss sum times the identity");
    let choices: Vec<Vec<usize>> = labels.iter().map(|&l| cat.simples_of(l)).collect();
    let circle_label = lab[an.comp_base[circle[0]]];
    let mut idx = vec![0usize; w];
    if choices.iter().any(Vec::is_empty) {
        return Ok(r);
    }
    loop {
        let mut fixed = vec![None; an.n_arcs()];
        for (i, &a) in an.input_arcs.iter().enumerate() {
            fixed[a] = Some(choices[i][idx[i]]);
        }
        let mut f = CycloNum::zero();
        for s in cat.simples_of(circle_label) {
            let colors = tangles::spread_colors(&an, cat, &lab, &[(circle[0], s)], &fixed).map_err(Error::Validation)?;
            let same = an.input_arcs.iter().zip(&an.output_arcs).all(|(&a, &(_, b))| colors[a] == colors[b]);
            r.record(bnd, same, || format!("strand colors {:?} change across the site", idx));
            f = f + cat.dim(s)? * evaluate_raw(&d, &an, cat, &colors)?;
        }
        r.record(eq, f == delta, || format!("strand colors {:?}: {} vs {}", idx, f, delta));
        let mut k = 0;
        loop {
            if k == w {
                return Ok(r);
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

/// Disjoint union of presentations; presents the connected sum.
pub fn connected_sum(p1: &SurgeryPresentation, p2: &SurgeryPresentation) -> Result<SurgeryPresentation> {
    let d = p1.diagram.tensor(&p2.diagram)?;
    let mut labels = p1.labels.clone();
    labels.extend(&p2.labels);
    let a1 = p1.analyze();
    let a2 = p2.analyze();
    let mut omega: Vec<(usize, usize)> =
        p1.omega_seeds(&a1).iter().enumerate().filter_map(|(a, c)| c.map(|c| (a, c))).collect();
    omega.extend(p2.omega_seeds(&a2).iter().enumerate().filter_map(|(a, c)| c.map(|c| (a + a1.n_arcs(), c))));
    SurgeryPresentation::new(d, labels, &omega)
}

/// Standard presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    S3,
    S1xS2(usize),
    Lens(i64, usize),
    Trefoil(usize),
}

impl Builtin {
    /// Parses `S3`, `S1xS2(a)`, `lens(p,a)` or `trefoil(a)` with group elements by index.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let args = |inner: &str| -> Result<Vec<i64>> {
            inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("builtin argument '{}': {}", x, e))))
                .collect()
        };
        let (head, inner) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let a = inner.map(args).transpose()?.unwrap_or_default();
        let elem = |x: i64| usize::try_from(x).map_err(|_| Error::Parse(format!("negative element index {}", x)));
        match (head.to_ascii_lowercase().as_str(), a.as_slice()) {
            ("s3", []) => Ok(Builtin::S3),
            ("s1xs2", [x]) => Ok(Builtin::S1xS2(elem(*x)?)),
            ("lens", [p, x]) => Ok(Builtin::Lens(*p, elem(*x)?)),
            ("trefoil", [x]) => Ok(Builtin::Trefoil(elem(*x)?)),
            _ => Err(Error::Parse(format!("unknown builtin presentation '{}'", s))),
        }
    }
}

pub fn builtin_presentation(b: &Builtin, g: &FiniteGroup) -> Result<SurgeryPresentation> {
    let check = |a: usize| {
        if a >= g.order() {
            Err(Error::Validation(format!("element {} outside a group of order {}", a, g.order())))
        } else {
            Ok(a)
        }
    };
    let p = match *b {
        Builtin::S3 => SurgeryPresentation::new(SlicedDiagram::empty(), vec![], &[])?,
        Builtin::S1xS2(a) => SurgeryPresentation::new(library::unknot(0), vec![check(a)?], &[])?,
        Builtin::Lens(n, a) => SurgeryPresentation::new(library::unknot(n), vec![check(a)?], &[])?,
        Builtin::Trefoil(a) => {
            let d = library::trefoil();
            let n = d.analyze().n_arcs();
            SurgeryPresentation::new(d, vec![check(a)?; n], &[])?
        }
    };
    let rep = check_special(&p, g);
    if !rep.passed() {
        return Err(Error::Validation(format!("{:?} is not special for this labeling:\n{}", b, rep)));
    }
    Ok(p)
}

/// Reverses the orientation of a link component, inverting its labels.
pub fn reverse_orientation(p: &SurgeryPresentation, comp: usize, g: &FiniteGroup) -> Result<SurgeryPresentation> {
    let an = p.analyze();
    let d2 = tangles::reverse_component(&p.diagram, comp)?;
    let labels = (0..an.n_arcs()).map(|a| if an.arc_comp[a] == comp { g.inv(p.labels[a]) } else { p.labels[a] }).collect();
    Ok(SurgeryPresentation { diagram: d2, labels, omega: p.omega.clone() })
}

/// Conjugates every label by `d`.
pub fn conjugate_labels(p: &SurgeryPresentation, d: usize, g: &FiniteGroup) -> SurgeryPresentation {
    SurgeryPresentation { diagram: p.diagram.clone(), labels: p.labels.iter().map(|&a| g.conj(d, a)).collect(), omega: p.omega.clone() }
}

/// One step of a Kirby-move sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KirbyMove {
    Stabilize(i8),
    FennRourke { site: FrSite, sign: i8 },
    Isotopy(Move),
}

pub fn apply_kirby(p: &SurgeryPresentation, mv: &KirbyMove, cat: &ThinCategory) -> Result<SurgeryPresentation> {
    match mv {
        KirbyMove::Stabilize(s) => kirby_stabilize(p, *s, cat.group()),
        KirbyMove::FennRourke { site, sign } => fenn_rourke(p, *site, *sign, cat),
        KirbyMove::Isotopy(m) => {
            let (d2, touched) = m.apply(&p.diagram)?;
            rebuild(p, d2, &touched, &BTreeMap::new(), cat.group(), Some(cat))
        }
    }
}

/// A random Fenn–Rourke site of width at most `max_width`.
pub fn random_site(p: &SurgeryPresentation, max_width: usize, rng: &mut impl Rng) -> Option<FrSite> {
    let levels = p.diagram.levels();
    let candidates: Vec<usize> = (0..levels.len()).filter(|&k| !levels[k].is_empty()).collect();
    if candidates.is_empty() {
        return None;
    }
    let slice = candidates[rng.gen_range(0..candidates.len())];
    let w = levels[slice].len();
    let width = rng.gen_range(1..=w.min(max_width));
    let pos = rng.gen_range(0..=w - width);
    Some(FrSite { slice, pos, width })
}

pub fn random_kirby_move(p: &SurgeryPresentation, rng: &mut impl Rng) -> KirbyMove {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    match rng.gen_range(0..3) {
        0 => KirbyMove::Stabilize(sign),
        1 => match random_site(p, 3, rng) {
            Some(site) => KirbyMove::FennRourke { site, sign },
            None => KirbyMove::Stabilize(sign),
        },
        _ => match Move::random(&p.diagram, rng) {
            Some(m) => KirbyMove::Isotopy(m),
            None => KirbyMove::Stabilize(sign),
        },
    }
}

/// Applies `moves` random Kirby moves and checks τ after each.
pub fn kirby_test(p: &SurgeryPresentation, cat: &ThinCategory, moves: usize, rng: &mut impl Rng) -> Result<Report> {
    let t0 = tau(p, cat, true)?.value;
    let mut r = Report::new("Kirby-move invariance");
    let idx = r.begin("τ is unchanged by each move");
    let loc = r.begin("local Fenn-Rourke identity at each site");
    let mut cur = p.clone();
    for step in 0..moves {
        let mv = random_kirby_move(&cur, rng);
        if let KirbyMove::FennRourke { site, sign } = &mv {
            let lv = &cur.diagram.levels()[site.slice];
            let an = cur.analyze();
            let arcs = strand_arcs(&cur.diagram, &an, site.slice);
            let orients = lv[site.pos..site.pos + site.width].to_vec();
            let labels: Vec<usize> = arcs[site.pos..site.pos + site.width].iter().map(|&a| cur.labels[a]).collect();
            let rep = fenn_rourke_local_check(cat, &orients, &labels, *sign)?;
            r.record(loc, rep.passed(), || format!("step {} {:?}: {}", step, mv, rep));
        }
        cur = apply_kirby(&cur, &mv, cat)?;
        let t = tau(&cur, cat, true)?.value;
        r.record(idx, t == t0, || format!("step {} {:?}: {} != {}", step, mv, t, t0));
    }
    Ok(r)
}

/// Arc of each strand on the level below slice `k`.
pub fn strand_arcs(d: &SlicedDiagram, an: &Analysis, k: usize) -> Vec<usize> {
    let mut level: Vec<usize> = an.input_arcs.clone();
    let mut nx = 0;
    let mut nc = 0;
    for (i, e) in d.slices().iter().enumerate().take(k) {
        match e {
            Event::Identity | Event::Kink { .. } => {}
            Event::Cup { pos, .. } => {
                let a = an.slice_arcs[i][0];
                level.insert(*pos, a);
                level.insert(*pos, a);
            }
            Event::Cap { pos } => {
                level.drain(*pos..pos + 2);
            }
            Event::Cross { pos, over } => {
                let x = &an.crossings[nx];
                nx += 1;
                match over {
                    Over::Left => {
                        level[*pos] = x.under_out;
                        level[pos + 1] = x.over_arc;
                    }
                    Over::Right => {
                        level[pos + 1] = x.under_out;
                        level[*pos] = x.over_arc;
                    }
                }
            }
            Event::Coupon { pos, inputs, .. } => {
                let outs: Vec<usize> = an.coupons[nc].outputs.iter().map(|o| o.1).collect();
                nc += 1;
                level.splice(*pos..pos + inputs, outs);
            }
        }
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::pointlike_category;
    use crate::cocycles::RibbonTuple;
    use rand::SeedableRng;

    fn z3() -> ThinCategory {
        let g = FiniteGroup::cyclic(3).unwrap();
        let c: Vec<i64> = (0..3).flat_map(|j| (0..3).map(move |k| j * k)).collect();
        let th: Vec<i64> = (0..3).map(|j| j * j).collect();
        pointlike_category(&RibbonTuple::from_exponents(g, 3, &[0; 27], &[0; 3], &c, Some(&th)).unwrap()).unwrap()
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&[]), (0, 0, 0));
        assert_eq!(inertia(&[vec![1]]), (1, 0, 0));
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(inertia(&[vec![2, 1], vec![1, 2]]), (2, 0, 0));
        assert_eq!(inertia(&[vec![0, 0], vec![0, -3]]), (0, 1, 1));
    }

    #[test]
    fn builtins_and_tau() {
        let c = z3();
        let g = c.group();
        let s3 = builtin_presentation(&Builtin::S3, g).unwrap();
        let d = modular_data(&c, true).unwrap().rank;
        assert_eq!(tau(&s3, &c, true).unwrap().value, d.inv().unwrap());
        for a in 0..3 {
            let p = builtin_presentation(&Builtin::S1xS2(a), g).unwrap();
            assert!(tau(&p, &c, true).unwrap().value.is_one());
        }
        assert!(builtin_presentation(&Builtin::Lens(1, 1), g).is_err());
        let l = builtin_presentation(&Builtin::Lens(3, 1), g).unwrap();
        assert_eq!(l.framings(), vec![3]);
    }

    #[test]
    fn fenn_rourke_local_identity() {
        let c = z3();
        for sign in [1i8, -1] {
            for w in 1..=3usize {
                let orients: Vec<Orient> = (0..w).map(|i| if i % 2 == 0 { Orient::Up } else { Orient::Down }).collect();
                let labels: Vec<usize> = (0..w).map(|i| (i + 1) % 3).collect();
                let r = fenn_rourke_local_check(&c, &orients, &labels, sign).unwrap();
                assert!(r.passed(), "sign {} width {}: {}", sign, w, r);
            }
        }
    }

    #[test]
    fn kirby_moves_preserve_tau() {
        let c = z3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = builtin_presentation(&Builtin::Trefoil(1), c.group()).unwrap();
        let r = kirby_test(&p, &c, 8, &mut rng).unwrap();
        assert!(r.passed(), "{}", r);
    }
}
