//! Category-level constructions: pullback and pushforward along group
//! homomorphisms, direct and tensor products, mirror, transfer to a larger
//! group, and the canonical extension of a pointlike category by characters.

use std::collections::BTreeMap;

use crate::categories::{crossed_invariance_suite, ThinCategory, ThinData};
use crate::cocycles::character_group;
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::report::Report;

fn inv(x: &CycloNum) -> CycloNum {
    x.inv().expect("category constants are nonzero")
}

/// q*(C): the component over α′ is C_{q(α′)}; simples are pairs (α′, s).
pub fn pullback(c: &ThinCategory, q: &GroupHom) -> Result<ThinCategory> {
    let src = q
        .source_group()
        .ok_or_else(|| Error::Unsupported("pullback needs a finite source group".into()))?
        .clone();
    if q.target() != c.group() {
        return Err(Error::Mismatch("homomorphism target is not the category's group".into()));
    }
    let mut pairs = Vec::new();
    for a in src.elements() {
        for s in c.simples_of(q.apply(a)) {
            pairs.push((a, s));
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let at = |a: usize, s: usize| index[&(a, s)];
    let n = pairs.len();
    let data = ThinData {
        labels: pairs.iter().map(|&(a, s)| format!("({},{})", a, c.label(s))).collect(),
        grade: pairs.iter().map(|&(a, _)| a).collect(),
        units: c.units().iter().map(|&u| at(src.unit(), u)).collect(),
        dual: pairs.iter().map(|&(a, s)| at(src.inv(a), c.dual(s))).collect(),
        action: src
            .elements()
            .map(|b| pairs.iter().map(|&(a, s)| at(src.conj(b, a), c.act(q.apply(b), s))).collect())
            .collect(),
        tensor: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((a, s), (b, t)) = (pairs[i], pairs[j]);
                        c.tensor(s, t).map(|p| at(src.mul(a, b), p))
                    })
                    .collect()
            })
            .collect(),
        braid: (0..n)
            .map(|i| (0..n).map(|j| c.braid(pairs[i].1, pairs[j].1).cloned()).collect())
            .collect(),
        twist: pairs.iter().map(|&(_, s)| c.twist(s).clone()).collect(),
        bval: pairs.iter().map(|&(_, s)| c.bval(s).clone()).collect(),
        dval: pairs.iter().map(|&(_, s)| c.dval(s).clone()).collect(),
        strict: c.is_strict(),
        order: c.order(),
        group: src,
    };
    ThinCategory::new(data)
}

/// q_*(C) for a surjection q whose kernel acts trivially on simples.
pub fn pushforward(c: &ThinCategory, q: &GroupHom) -> Result<ThinCategory> {
    let src = q
        .source_group()
        .ok_or_else(|| Error::Unsupported("pushforward needs a finite source group".into()))?;
    if src != c.group() {
        return Err(Error::Mismatch("homomorphism source is not the category's group".into()));
    }
    if !q.is_surjective() {
        return Err(Error::Validation("pushforward requires a surjective homomorphism".into()));
    }
    let tgt = q.target().clone();
    for k in src.elements().filter(|&k| q.apply(k) == tgt.unit()) {
        if let Some(s) = (0..c.len()).find(|&s| c.act(k, s) != s) {
            return Err(Error::Validation(format!(
                "kernel element {} acts nontrivially on simple {}",
                k,
                c.label(s)
            )));
        }
    }
    let lift: Vec<usize> =
        tgt.elements().map(|a| src.elements().find(|&x| q.apply(x) == a).expect("surjective")).collect();
    let mut d = c.data().clone();
    d.grade = d.grade.iter().map(|&g| q.apply(g)).collect();
    d.action = tgt.elements().map(|a| c.data().action[lift[a]].clone()).collect();
    d.group = tgt;
    ThinCategory::new(d)
}

/// Direct product: simples (i, s) with s a simple of the i-th factor. The
/// unit decomposes into one summand per factor unit summand.
pub fn direct_product(cs: &[ThinCategory]) -> Result<ThinCategory> {
    let g = common_group(cs)?;
    let mut pairs = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        for s in 0..c.len() {
            pairs.push((i, s));
        }
    }
    let offset: Vec<usize> = cs.iter().scan(0, |acc, c| {
        let o = *acc;
        *acc += c.len();
        Some(o)
    }).collect();
    let n = pairs.len();
    let data = ThinData {
        labels: pairs.iter().map(|&(i, s)| format!("{}:{}", i, cs[i].label(s))).collect(),
        grade: pairs.iter().map(|&(i, s)| cs[i].grade(s)).collect(),
        units: cs.iter().enumerate().flat_map(|(i, c)| c.units().iter().map(move |&u| (i, u))).map(|(i, u)| offset[i] + u).collect(),
        dual: pairs.iter().map(|&(i, s)| offset[i] + cs[i].dual(s)).collect(),
        action: g.elements().map(|a| pairs.iter().map(|&(i, s)| offset[i] + cs[i].act(a, s)).collect()).collect(),
        tensor: (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let ((i, s), (j, t)) = (pairs[x], pairs[y]);
                        if i == j {
                            cs[i].tensor(s, t).map(|p| offset[i] + p)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect(),
        braid: (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let ((i, s), (j, t)) = (pairs[x], pairs[y]);
                        if i == j {
                            cs[i].braid(s, t).cloned()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect(),
        twist: pairs.iter().map(|&(i, s)| cs[i].twist(s).clone()).collect(),
        bval: pairs.iter().map(|&(i, s)| cs[i].bval(s).clone()).collect(),
        dval: pairs.iter().map(|&(i, s)| cs[i].dval(s).clone()).collect(),
        strict: cs.iter().all(ThinCategory::is_strict),
        order: cs.iter().map(ThinCategory::order).fold(1, num_integer::lcm),
        group: g,
    };
    ThinCategory::new(data)
}

/// Tensor product: simples are families (s_i) of simples of equal grade;
/// all structure is coordinatewise and constants multiply.
pub fn tensor_product(cs: &[ThinCategory]) -> Result<ThinCategory> {
    let g = common_group(cs)?;
    let mut fams: Vec<Vec<usize>> = Vec::new();
    for a in g.elements() {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for c in cs {
            let opts = c.simples_of(a);
            acc = acc
                .into_iter()
                .flat_map(|f| {
                    opts.iter().map(move |&s| {
                        let mut f2 = f.clone();
                        f2.push(s);
                        f2
                    })
                })
                .collect();
        }
        fams.extend(acc);
    }
    let index: BTreeMap<Vec<usize>, usize> = fams.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let n = fams.len();
    let map = |f: &[usize], h: &dyn Fn(usize, usize) -> usize| -> usize {
        index[&f.iter().enumerate().map(|(i, &s)| h(i, s)).collect::<Vec<_>>()]
    };
    let pair = |f: &[usize], k: &[usize]| -> Option<usize> {
        let mut out = Vec::with_capacity(f.len());
        for (i, (&s, &t)) in f.iter().zip(k).enumerate() {
            out.push(cs[i].tensor(s, t)?);
        }
        Some(index[&out])
    };
    let prod = |f: &[usize], h: &dyn Fn(usize, usize) -> CycloNum| -> CycloNum {
        f.iter().enumerate().map(|(i, &s)| h(i, s)).product()
    };
    let units: Vec<usize> = fams
        .iter()
        .enumerate()
        .filter(|(_, f)| f.iter().enumerate().all(|(i, s)| cs[i].units().contains(s)))
        .map(|(k, _)| k)
        .collect();
    let data = ThinData {
        labels: fams
            .iter()
            .map(|f| format!("({})", f.iter().enumerate().map(|(i, &s)| cs[i].label(s).to_string()).collect::<Vec<_>>().join(",")))
            .collect(),
        grade: fams.iter().map(|f| cs.first().map_or(g.unit(), |c| c.grade(f[0]))).collect(),
        units,
        dual: fams.iter().map(|f| map(f, &|i, s| cs[i].dual(s))).collect(),
        action: g.elements().map(|a| fams.iter().map(|f| map(f, &|i, s| cs[i].act(a, s))).collect()).collect(),
        tensor: (0..n).map(|x| (0..n).map(|y| pair(&fams[x], &fams[y])).collect()).collect(),
        braid: (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let mut acc = CycloNum::one();
                        for (i, (&s, &t)) in fams[x].iter().zip(&fams[y]).enumerate() {
                            acc = acc * cs[i].braid(s, t)?;
                        }
                        Some(acc)
                    })
                    .collect()
            })
            .collect(),
        twist: fams.iter().map(|f| prod(f, &|i, s| cs[i].twist(s).clone())).collect(),
        bval: fams.iter().map(|f| prod(f, &|i, s| cs[i].bval(s).clone())).collect(),
        dval: fams.iter().map(|f| prod(f, &|i, s| cs[i].dval(s).clone())).collect(),
        strict: cs.iter().all(ThinCategory::is_strict),
        order: cs.iter().map(ThinCategory::order).fold(1, num_integer::lcm),
        group: g,
    };
    ThinCategory::new(data)
}

fn common_group(cs: &[ThinCategory]) -> Result<FiniteGroup> {
    let first = cs.first().ok_or_else(|| Error::Validation("empty family of categories".into()))?;
    if cs.iter().any(|c| c.group() != first.group()) {
        return Err(Error::Mismatch("categories live over different groups".into()));
    }
    Ok(first.group().clone())
}

/// The mirror: C̄_α = C_{α⁻¹}, U ⊗̄ V = φ_{|V|}(U) ⊗ V, c̄_{U,V} = c_{V,U}⁻¹,
/// θ̄_U = θ_U⁻¹; action, duals and duality constants unchanged.
pub fn mirror_category(c: &ThinCategory) -> Result<ThinCategory> {
    if !c.is_strict() {
        return Err(Error::Unsupported("mirror requires a strict category".into()));
    }
    let g = c.group();
    let n = c.len();
    let mut d = c.data().clone();
    d.grade = (0..n).map(|s| g.inv(c.grade(s))).collect();
    d.tensor = (0..n).map(|u| (0..n).map(|v| c.tensor(c.act(c.grade(v), u), v)).collect()).collect();
    d.braid = (0..n).map(|u| (0..n).map(|v| c.braid(v, u).map(inv)).collect()).collect();
    d.twist = (0..n).map(|s| inv(c.twist(s))).collect();
    ThinCategory::new(d)
}

/// Aut₀ of a pointlike category over an abelian group: the character group
/// Hom(π, μ_N), with the exponent table of each character.
pub fn aut0_pointlike(c: &ThinCategory) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    let g = c.group();
    if !g.is_abelian() {
        return Err(Error::Unsupported("Aut0 computed only for abelian groups".into()));
    }
    if c.len() != g.order() || c.counts().iter().any(|&k| k != 1) {
        return Err(Error::Unsupported("Aut0 computed only for pointlike categories".into()));
    }
    character_group(g, c.order())
}

/// The canonical extension C^π of a pointlike category over an abelian
/// group G by a subgroup π of its character group. Simples are (V_g, χ)
/// graded by χ, with trivial action; braid((g,χ),(h,ψ)) = χ(h) c_{g,h} and
/// twist (g,χ) = χ(g) θ_g.
pub fn canonical_extension(c: &ThinCategory, subgroup: &[usize]) -> Result<(ThinCategory, Report)> {
    let (chars_group, chars) = aut0_pointlike(c)?;
    if subgroup.iter().any(|&x| x >= chars_group.order()) || !chars_group.is_subgroup(subgroup) {
        return Err(Error::Validation("requested characters do not form a subgroup of the character group".into()));
    }
    let mut sub: Vec<usize> = subgroup.to_vec();
    sub.sort_unstable();
    let pos = |x: usize| sub.iter().position(|&y| y == x).expect("closed subgroup");
    let table: Vec<Vec<usize>> = sub.iter().map(|&x| sub.iter().map(|&y| pos(chars_group.mul(x, y))).collect()).collect();
    let pi = FiniteGroup::from_table(table)?;
    let g = c.group();
    let simple_of = |x: usize| c.simples_of(x)[0];
    let n_g = g.order();
    let order = c.order();
    let chi = |k: usize, x: usize| CycloNum::root_of_unity(order, chars[sub[k]][x] as i64);
    let idx = |x: usize, k: usize| k * n_g + x;
    let mut labels = Vec::new();
    let mut grade = Vec::new();
    for k in pi.elements() {
        for x in g.elements() {
            labels.push(format!("({},chi{})", c.label(simple_of(x)), sub[k]));
            grade.push(k);
        }
    }
    let n = labels.len();
    let split = |i: usize| (i % n_g, i / n_g);
    let data = ThinData {
        labels,
        grade,
        units: vec![idx(g.unit(), pi.unit())],
        dual: (0..n).map(|i| {
            let (x, k) = split(i);
            idx(g.inv(x), pi.inv(k))
        }).collect(),
        action: pi.elements().map(|_| (0..n).collect()).collect(),
        tensor: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((x, k), (y, l)) = (split(i), split(j));
                        Some(idx(g.mul(x, y), pi.mul(k, l)))
                    })
                    .collect()
            })
            .collect(),
        braid: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ((x, k), (y, _)) = (split(i), split(j));
                        c.braid(simple_of(x), simple_of(y)).map(|b| chi(k, y) * b)
                    })
                    .collect()
            })
            .collect(),
        twist: (0..n).map(|i| {
            let (x, k) = split(i);
            chi(k, x) * c.twist(simple_of(x))
        }).collect(),
        bval: (0..n).map(|i| c.bval(simple_of(split(i).0)).clone()).collect(),
        dval: (0..n).map(|i| c.dval(simple_of(split(i).0)).clone()).collect(),
        strict: c.is_strict(),
        order,
        group: pi,
    };
    let ext = ThinCategory::new(data)?;
    let mut report = crossed_invariance_suite(&ext);
    // The neutral component reproduces C with its original constants.
    let neutral = ext.simples_of(ext.group().unit());
    let ok = neutral.len() == c.len()
        && neutral.iter().all(|&i| {
            let (x, _) = split(i);
            let s = simple_of(x);
            ext.twist(i) == c.twist(s)
                && neutral.iter().all(|&j| ext.braid(i, j) == c.braid(s, simple_of(split(j).0)))
        });
    report.single("neutral component reproduces the base", ok, || "neutral constants differ from the base".into());
    Ok((ext, report))
}

/// An object of the transfer: grade α ∈ π and a simple U_i of the base in
/// grade ω_i α ω_i⁻¹ for every coset i of its support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TransferObject {
    pub grade: usize,
    pub coords: BTreeMap<usize, usize>,
}

/// The transfer of a thin category over G ⊆ π to a π-category.
#[derive(Clone, Debug)]
pub struct TransferCategory {
    base: ThinCategory,
    pi: FiniteGroup,
    /// `embed[g]` is the image of g ∈ G in π.
    embed: Vec<usize>,
    /// Preimage of π elements lying in G.
    back: Vec<Option<usize>>,
    reps: Vec<usize>,
    /// Coset index of every π element.
    coset: Vec<usize>,
}

/// Coordinatewise scalar of a morphism: coset index → value.
pub type Coords = BTreeMap<usize, CycloNum>;

impl TransferCategory {
    pub fn new(base: ThinCategory, pi: FiniteGroup, embedding: &GroupHom, reps: Vec<usize>) -> Result<Self> {
        if embedding.source_group() != Some(base.group()) || embedding.target() != &pi {
            return Err(Error::Mismatch("embedding must map the base group into the ambient group".into()));
        }
        let embed = embedding.images().to_vec();
        let mut back = vec![None; pi.order()];
        for (g, &x) in embed.iter().enumerate() {
            if back[x].is_some() {
                return Err(Error::Validation("embedding is not injective".into()));
            }
            back[x] = Some(g);
        }
        let mut coset = vec![usize::MAX; pi.order()];
        for (i, &w) in reps.iter().enumerate() {
            if w >= pi.order() {
                return Err(Error::Validation(format!("coset representative {} out of range", w)));
            }
            for x in pi.elements() {
                if back[pi.mul(x, pi.inv(w))].is_some() {
                    if coset[x] != usize::MAX {
                        return Err(Error::Validation(format!(
                            "representatives {} and {} lie in the same coset",
                            reps[coset[x]], w
                        )));
                    }
                    coset[x] = i;
                }
            }
        }
        if let Some(x) = coset.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Validation(format!("element {} lies in no listed coset", x)));
        }
        Ok(TransferCategory { base, pi, embed, back, reps, coset })
    }

    /// One representative per right coset G·x, the unit for G itself and the
    /// smallest index otherwise.
    pub fn default_reps(pi: &FiniteGroup, embedding: &GroupHom) -> Vec<usize> {
        let img: Vec<usize> = embedding.images().to_vec();
        let mut seen = vec![false; pi.order()];
        let mut reps = Vec::new();
        let mut order: Vec<usize> = vec![pi.unit()];
        order.extend(pi.elements().filter(|&x| x != pi.unit()));
        for x in order {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &g in &img {
                seen[pi.mul(g, x)] = true;
            }
        }
        reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn base(&self) -> &ThinCategory {
        &self.base
    }

    /// Images of the base group elements in the ambient group.
    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// ω_i α ω_i⁻¹ as an element of G, if it lies in G.
    fn inner(&self, i: usize, a: usize) -> Option<usize> {
        self.back[self.pi.conj(self.reps[i], a)]
    }

    /// N(α) = {i : ω_i α ω_i⁻¹ ∈ G}.
    pub fn n_set(&self, a: usize) -> Vec<usize> {
        (0..self.index()).filter(|&i| self.inner(i, a).is_some()).collect()
    }

    /// Right action of π on cosets: i·α⁻¹.
    fn move_coset(&self, a: usize, i: usize) -> usize {
        self.coset[self.pi.mul(self.reps[i], self.pi.inv(a))]
    }

    /// α_j = ω_{α(j)} α ω_j⁻¹ ∈ G.
    fn transport(&self, a: usize, j: usize) -> usize {
        let w = self.pi.mul(self.pi.mul(self.reps[self.move_coset(a, j)], a), self.pi.inv(self.reps[j]));
        self.back[w].expect("transport element lies in G")
    }

    pub fn unit(&self) -> TransferObject {
        let u = self.base.unit().expect("transfer base has a simple unit");
        TransferObject { grade: self.pi.unit(), coords: (0..self.index()).map(|i| (i, u)).collect() }
    }

    pub fn tensor(&self, u: &TransferObject, v: &TransferObject) -> TransferObject {
        let mut coords = BTreeMap::new();
        for (i, &x) in &u.coords {
            if let Some(&y) = v.coords.get(i) {
                if let Some(p) = self.base.tensor(x, y) {
                    coords.insert(*i, p);
                }
            }
        }
        TransferObject { grade: self.pi.mul(u.grade, v.grade), coords }
    }

    pub fn dual(&self, u: &TransferObject) -> TransferObject {
        TransferObject {
            grade: self.pi.inv(u.grade),
            coords: u.coords.iter().map(|(&i, &x)| (i, self.base.dual(x))).collect(),
        }
    }

    pub fn act(&self, a: usize, v: &TransferObject) -> TransferObject {
        TransferObject {
            grade: self.pi.conj(a, v.grade),
            coords: v
                .coords
                .iter()
                .map(|(&j, &x)| (self.move_coset(a, j), self.base.act(self.transport(a, j), x)))
                .collect(),
        }
    }

    /// Braiding scalars on each coset of |U ⊗ V|.
    pub fn braid(&self, u: &TransferObject, v: &TransferObject) -> Coords {
        let mut out = BTreeMap::new();
        for (i, &x) in &u.coords {
            if let Some(&y) = v.coords.get(i) {
                if let Some(b) = self.base.braid(x, y) {
                    out.insert(*i, b.clone());
                }
            }
        }
        out
    }

    fn per_coord(&self, u: &TransferObject, f: impl Fn(usize) -> CycloNum) -> Coords {
        u.coords.iter().map(|(&i, &x)| (i, f(x))).collect()
    }

    pub fn twist(&self, u: &TransferObject) -> Coords {
        self.per_coord(u, |x| self.base.twist(x).clone())
    }

    /// Every object with support of size at most `max_support`.
    pub fn objects(&self, max_support: usize) -> Vec<TransferObject> {
        let mut out = Vec::new();
        for a in self.pi.elements() {
            let ns = self.n_set(a);
            let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
            for &i in &ns {
                let more: Vec<Vec<usize>> = subsets
                    .iter()
                    .filter(|s| s.len() < max_support)
                    .map(|s| {
                        let mut t = s.clone();
                        t.push(i);
                        t
                    })
                    .collect();
                subsets.extend(more);
            }
            for sub in subsets.into_iter().filter(|s| !s.is_empty()) {
                let mut partial: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
                for &i in &sub {
                    let g = self.inner(i, a).expect("i in N(alpha)");
                    let opts = self.base.simples_of(g);
                    partial = partial
                        .into_iter()
                        .flat_map(|m| {
                            opts.iter().map(move |&x| {
                                let mut m2 = m.clone();
                                m2.insert(i, x);
                                m2
                            })
                        })
                        .collect();
                }
                out.extend(partial.into_iter().map(|coords| TransferObject { grade: a, coords }));
            }
        }
        out
    }

    /// Crossed, braided and ribbon laws evaluated coordinatewise on all
    /// objects with support at most `max_support`.
    pub fn verify(&self, max_support: usize) -> Report {
        let pi = &self.pi;
        let objs = self.objects(max_support);
        let mut r = Report::new("transfer");
        let valid = r.begin("objects are graded correctly");
        let act_hom = r.begin("action is a group action");
        let act_tensor = r.begin("action respects tensor and duals");
        let act_braid = r.begin("action preserves braiding and twist");
        let target = r.begin("braiding target matches source");
        let mult = r.begin("braiding multiplicative in second argument");
        let twist = r.begin("twist of a tensor product");
        let twist_dual = r.begin("twist of dual equals twist");
        let unit_r = r.begin("unit is neutral and has full support");
        let unit = self.unit();
        r.record(unit_r, unit.coords.len() == self.index(), || "unit support is not all cosets".into());
        for u in &objs {
            let ok = u.coords.iter().all(|(&i, &x)| self.inner(i, u.grade) == Some(self.base.grade(x)));
            r.record(valid, ok, || format!("{:?}", u));
            r.record(unit_r, self.tensor(&unit, u) == *u && self.tensor(u, &unit) == *u, || format!("{:?}", u));
            let du = self.dual(u);
            r.record(twist_dual, self.twist(&du) == self.twist(u), || format!("{:?}", u));
            for a in pi.elements() {
                let au = self.act(a, u);
                r.record(act_tensor, self.act(a, &du) == self.dual(&au), || format!("alpha = {}, {:?}", a, u));
                let moved: Coords = self.twist(u).into_iter().map(|(j, x)| (self.move_coset(a, j), x)).collect();
                r.record(act_braid, self.twist(&au) == moved, || format!("alpha = {}, {:?}", a, u));
                for b in pi.elements() {
                    r.record(act_hom, self.act(a, &self.act(b, u)) == self.act(pi.mul(a, b), u), || {
                        format!("alpha = {}, beta = {}, {:?}", a, b, u)
                    });
                }
            }
            for v in &objs {
                let uv = self.tensor(u, v);
                let swapped = self.tensor(&self.act(u.grade, v), u);
                r.record(target, uv == swapped, || format!("{:?} {:?}", u, v));
                for a in pi.elements() {
                    let lhs = self.act(a, &uv);
                    let rhs = self.tensor(&self.act(a, u), &self.act(a, v));
                    r.record(act_tensor, lhs == rhs, || format!("alpha = {}, {:?} {:?}", a, u, v));
                    let moved: Coords = self.braid(u, v).into_iter().map(|(j, x)| (self.move_coset(a, j), x)).collect();
                    r.record(act_braid, self.braid(&self.act(a, u), &self.act(a, v)) == moved, || {
                        format!("alpha = {}, {:?} {:?}", a, u, v)
                    });
                }
                // θ_{U⊗V} = c_{φ(V),U} c_{U,V} θ_U θ_V, coordinatewise
                let tuv = self.twist(&uv);
                let fv = self.act(pi.mul(u.grade, v.grade), v);
                let c1 = self.braid(&fv, u);
                let c2 = self.braid(u, v);
                let (tu, tv) = (self.twist(u), self.twist(v));
                let rhs: Coords = tuv
                    .keys()
                    .filter_map(|i| Some((*i, c1.get(i)? * c2.get(i)? * tu.get(i)? * tv.get(i)?)))
                    .collect();
                r.record(twist, tuv == rhs, || format!("{:?} {:?}", u, v));
                for w in &objs {
                    let vw = self.tensor(v, w);
                    let lhs = self.braid(u, &vw);
                    let b1 = self.braid(u, v);
                    let b2 = self.braid(u, w);
                    let rhs: Coords = lhs.keys().filter_map(|i| Some((*i, b1.get(i)? * b2.get(i)?))).collect();
                    r.record(mult, lhs == rhs, || format!("{:?} {:?} {:?}", u, v, w));
                }
            }
        }
        r
    }

    /// Rank of End(𝟙) = number of cosets.
    pub fn unit_rank(&self) -> usize {
        self.unit().coords.len()
    }

    /// The skeleton of the transfer: simples are support-one objects, and
    /// the unit splits into one summand per coset.
    pub fn to_thin(&self) -> Result<ThinCategory> {
        let objs: Vec<TransferObject> = self.objects(1);
        let index: BTreeMap<TransferObject, usize> = objs.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let one = |o: &TransferObject| -> (usize, usize) {
            let (&i, &x) = o.coords.iter().next().expect("support one");
            (i, x)
        };
        let n = objs.len();
        let u = self.base.unit()?;
        let data = ThinData {
            labels: objs
                .iter()
                .map(|o| {
                    let (i, x) = one(o);
                    format!("({},{}@{})", o.grade, self.base.label(x), i)
                })
                .collect(),
            grade: objs.iter().map(|o| o.grade).collect(),
            units: (0..self.index())
                .map(|i| index[&TransferObject { grade: self.pi.unit(), coords: BTreeMap::from([(i, u)]) }])
                .collect(),
            dual: objs.iter().map(|o| index[&self.dual(o)]).collect(),
            action: self.pi.elements().map(|a| objs.iter().map(|o| index[&self.act(a, o)]).collect()).collect(),
            tensor: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let t = self.tensor(&objs[x], &objs[y]);
                            if t.coords.is_empty() {
                                None
                            } else {
                                Some(index[&t])
                            }
                        })
                        .collect()
                })
                .collect(),
            braid: (0..n)
                .map(|x| (0..n).map(|y| self.braid(&objs[x], &objs[y]).into_values().next()).collect())
                .collect(),
            twist: objs.iter().map(|o| self.base.twist(one(o).1).clone()).collect(),
            bval: objs.iter().map(|o| self.base.bval(one(o).1).clone()).collect(),
            dval: objs.iter().map(|o| self.base.dval(one(o).1).clone()).collect(),
            strict: self.base.is_strict(),
            order: self.base.order(),
            group: self.pi.clone(),
        };
        ThinCategory::new(data)
    }
}

/// Builds the transfer with default coset representatives and verifies it on
/// objects with support at most two.
pub fn transfer(base: &ThinCategory, pi: &FiniteGroup, embedding: &GroupHom, reps: Option<Vec<usize>>) -> Result<(TransferCategory, Report)> {
    let reps = reps.unwrap_or_else(|| TransferCategory::default_reps(pi, embedding));
    let t = TransferCategory::new(base.clone(), pi.clone(), embedding, reps)?;
    let mut r = t.verify(2);
    let rank = t.unit_rank();
    let expect = pi.order() / base.group().order();
    r.single("End(1) rank equals the index", rank == expect, || format!("rank {} vs index {}", rank, expect));
    Ok((t, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{modular_data, pointlike_category};
    use crate::cocycles::{tuple_mirror, RibbonTuple};

    fn z3_tuple(order: u32) -> RibbonTuple {
        let g = FiniteGroup::cyclic(3).unwrap();
        let k = (order / 3) as i64;
        let c: Vec<i64> = (0..3).flat_map(|j| (0..3).map(move |l| j * l * k)).collect();
        RibbonTuple::from_braiding(
            g,
            order,
            c.iter().map(|&e| CycloNum::root_of_unity(order, e)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn mirror_matches_tuple_mirror() {
        let t = z3_tuple(3);
        let c = pointlike_category(&t).unwrap();
        let m = mirror_category(&c).unwrap();
        let mt = pointlike_category(&tuple_mirror(&t)).unwrap();
        // simple V_a of C has mirror grade a⁻¹, matching V_{a⁻¹} of the mirrored tuple
        let g = c.group();
        for s in 0..3 {
            let s2 = g.inv(s);
            assert_eq!(m.grade(s), mt.grade(s2));
            assert_eq!(m.twist(s), mt.twist(s2));
            for t2 in 0..3 {
                assert_eq!(m.braid(s, t2), mt.braid(s2, g.inv(t2)));
                assert_eq!(m.tensor(s, t2).map(|p| g.inv(p)), mt.tensor(s2, g.inv(t2)));
            }
        }
        assert_eq!(mirror_category(&m).unwrap(), c);
        assert!(crossed_invariance_suite(&m).passed());
    }

    #[test]
    fn transfer_trivial_into_z2() {
        let triv = FiniteGroup::cyclic(1).unwrap();
        let base = pointlike_category(&RibbonTuple::all_ones(triv.clone(), 1)).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let emb = GroupHom::finite(triv, z2.clone(), vec![0]).unwrap();
        let (t, r) = transfer(&base, &z2, &emb, None).unwrap();
        assert!(r.passed(), "{}", r);
        assert_eq!(t.unit_rank(), 2);
        let thin = t.to_thin().unwrap();
        assert!(crossed_invariance_suite(&thin).passed());
    }

    #[test]
    fn canonical_extension_z3_is_modular() {
        let c = pointlike_category(&z3_tuple(12)).unwrap();
        let (grp, _) = aut0_pointlike(&c).unwrap();
        let all: Vec<usize> = grp.elements().collect();
        let (ext, r) = canonical_extension(&c, &all).unwrap();
        assert!(r.passed(), "{}", r);
        let m = modular_data(&ext, true).unwrap();
        assert_eq!(m.d2, CycloNum::from_int(3));
        assert_eq!(&m.rank * &m.rank, CycloNum::from_int(3));
    }

    #[test]
    fn pushforward_needs_trivial_kernel_action() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let c = pointlike_category(&RibbonTuple::all_ones(z4.clone(), 1)).unwrap();
        let q = GroupHom::finite(z4, z2, vec![0, 1, 0, 1]).unwrap();
        let p = pushforward(&c, &q).unwrap();
        assert_eq!(p.counts(), vec![2, 2]);
        assert!(crossed_invariance_suite(&p).passed());
        assert!(modular_data(&p, true).is_err());

        // S3 → S3/A3 ≅ Z/2: the kernel A3 conjugates transpositions
        let s3 = FiniteGroup::symmetric3();
        let sign: Vec<usize> = s3.elements().map(|x| usize::from(![0, 3, 4].contains(&x))).collect();
        let q = GroupHom::finite(s3.clone(), FiniteGroup::cyclic(2).unwrap(), sign).unwrap();
        let c = pointlike_category(&RibbonTuple::all_ones(s3, 1)).unwrap();
        assert!(pushforward(&c, &q).is_err());
    }
}
