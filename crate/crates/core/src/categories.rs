//! Thin crossed group-categories: every Hom space between simples has
//! dimension at most one and a tensor product of simples is simple or zero.
//! Morphism data therefore reduces to scalar braiding, twist and duality
//! constants attached to simples.

use serde::Serialize;

use crate::cocycles::{derived_identities, verify_all, RibbonTuple};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::report::Report;

/// Raw tables of a thin category. Simples are indexed 0..len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinData {
    pub group: FiniteGroup,
    pub order: u32,
    pub labels: Vec<String>,
    pub grade: Vec<usize>,
    /// Simple summands of the unit object; one for a simple unit.
    pub units: Vec<usize>,
    pub dual: Vec<usize>,
    /// `action[α][s]` is φ_α(s).
    pub action: Vec<Vec<usize>>,
    /// `tensor[s][t]` is s ⊗ t, `None` for the zero object.
    pub tensor: Vec<Vec<Option<usize>>>,
    /// Scalar of c_{s,t}, present exactly where s ⊗ t is nonzero.
    pub braid: Vec<Vec<Option<CycloNum>>>,
    pub twist: Vec<CycloNum>,
    pub bval: Vec<CycloNum>,
    pub dval: Vec<CycloNum>,
    pub strict: bool,
}

/// A validated thin crossed π-category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinCategory {
    d: ThinData,
}

impl ThinCategory {
    /// Validates shapes and the grading laws of tensor, dual and action.
    pub fn new(d: ThinData) -> Result<Self> {
        let n = d.grade.len();
        let g = &d.group;
        let bad = |m: String| Err(Error::Validation(m));
        if d.labels.len() != n
            || d.dual.len() != n
            || d.tensor.len() != n
            || d.braid.len() != n
            || d.twist.len() != n
            || d.bval.len() != n
            || d.dval.len() != n
            || d.action.len() != g.order()
        {
            return bad("table lengths disagree with the number of simples".into());
        }
        if d.units.is_empty() {
            return bad("no unit summand".into());
        }
        for &u in &d.units {
            if u >= n || d.grade[u] != g.unit() {
                return bad(format!("unit summand {} is not in the neutral component", u));
            }
        }
        for s in 0..n {
            if d.grade[s] >= g.order() {
                return bad(format!("grade of simple {} out of range", s));
            }
            let t = d.dual[s];
            if t >= n || d.dual[t] != s || d.grade[t] != g.inv(d.grade[s]) {
                return bad(format!("dual of simple {} is not a grading-compatible involution", s));
            }
            if d.tensor[s].len() != n || d.braid[s].len() != n {
                return bad(format!("row {} of tensor or braid table has wrong length", s));
            }
            for t in 0..n {
                if let Some(p) = d.tensor[s][t] {
                    if p >= n || d.grade[p] != g.mul(d.grade[s], d.grade[t]) {
                        return bad(format!("tensor {} x {} violates the grading", s, t));
                    }
                }
                if d.tensor[s][t].is_some() != d.braid[s][t].is_some() {
                    return bad(format!("braid constant for ({}, {}) present iff tensor nonzero", s, t));
                }
                if let Some(b) = &d.braid[s][t] {
                    if b.is_zero() {
                        return bad(format!("braid constant for ({}, {}) is zero", s, t));
                    }
                }
            }
            if d.twist[s].is_zero() || d.bval[s].is_zero() || d.dval[s].is_zero() {
                return bad(format!("constant of simple {} is zero", s));
            }
        }
        for (a, row) in d.action.iter().enumerate() {
            if row.len() != n {
                return bad(format!("action row {} has wrong length", a));
            }
            for s in 0..n {
                if row[s] >= n || d.grade[row[s]] != g.conj(a, d.grade[s]) {
                    return bad(format!("action of {} on simple {} violates the grading", a, s));
                }
            }
        }
        Ok(ThinCategory { d })
    }

    pub fn data(&self) -> &ThinData {
        &self.d
    }

    pub fn into_data(self) -> ThinData {
        self.d
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.d.group
    }

    pub fn order(&self) -> u32 {
        self.d.order
    }

    pub fn len(&self) -> usize {
        self.d.grade.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.grade.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.d.strict
    }

    pub fn label(&self, s: usize) -> &str {
        &self.d.labels[s]
    }

    pub fn grade(&self, s: usize) -> usize {
        self.d.grade[s]
    }

    pub fn units(&self) -> &[usize] {
        &self.d.units
    }

    /// The unit simple, for categories whose unit object is simple.
    pub fn unit(&self) -> Result<usize> {
        match self.d.units.as_slice() {
            [u] => Ok(*u),
            us => Err(Error::Unsupported(format!("unit object has {} simple summands", us.len()))),
        }
    }

    pub fn dual(&self, s: usize) -> usize {
        self.d.dual[s]
    }

    pub fn act(&self, a: usize, s: usize) -> usize {
        self.d.action[a][s]
    }

    pub fn tensor(&self, s: usize, t: usize) -> Option<usize> {
        self.d.tensor[s][t]
    }

    /// Tensor product of a sequence, `None` if it vanishes. The empty
    /// product is the unit and needs a simple unit.
    pub fn tensor_all(&self, xs: &[usize]) -> Result<Option<usize>> {
        let mut it = xs.iter();
        let Some(&first) = it.next() else {
            return Ok(Some(self.unit()?));
        };
        let mut acc = first;
        for &x in it {
            match self.tensor(acc, x) {
                Some(p) => acc = p,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    pub fn braid(&self, s: usize, t: usize) -> Option<&CycloNum> {
        self.d.braid[s][t].as_ref()
    }

    pub fn twist(&self, s: usize) -> &CycloNum {
        &self.d.twist[s]
    }

    pub fn bval(&self, s: usize) -> &CycloNum {
        &self.d.bval[s]
    }

    pub fn dval(&self, s: usize) -> &CycloNum {
        &self.d.dval[s]
    }

    /// Simples of the component C_α.
    pub fn simples_of(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.d.grade[s] == a).collect()
    }

    /// The unit summand that acts as identity on `s` from the left.
    pub fn block_of(&self, s: usize) -> usize {
        self.d.units.iter().position(|&u| self.tensor(u, s) == Some(s)).unwrap_or(0)
    }

    fn require_strict(&self) -> Result<()> {
        if self.d.strict {
            Ok(())
        } else {
            Err(Error::Unsupported("operation requires a strict category (associator identically 1)".into()))
        }
    }

    /// Categorical dimension: b_s, then θ_s ⊗ id, then c_{s,s*}, then d_s.
    pub fn dim(&self, s: usize) -> Result<CycloNum> {
        self.require_strict()?;
        let sd = self.dual(s);
        let c = self
            .braid(s, sd)
            .ok_or_else(|| Error::Validation(format!("simple {} has vanishing s x s*", s)))?;
        Ok(self.bval(s) * self.twist(s) * c * self.dval(s))
    }

    /// Counts of simples per group element.
    pub fn counts(&self) -> Vec<usize> {
        self.group().elements().map(|a| self.simples_of(a).len()).collect()
    }
}

/// The pointlike category of a verified tuple: one simple V_α per α.
pub fn pointlike_category(t: &RibbonTuple) -> Result<ThinCategory> {
    let report = verify_all(t);
    if !report.passed() {
        return Err(Error::Validation(format!("tuple rejected by verifiers:\n{}", report)));
    }
    let (_, d) = derived_identities(t);
    let g = t.group().clone();
    let n = g.order();
    let theta = t.theta_table().expect("verified tuple has a twist").to_vec();
    let data = ThinData {
        labels: g.elements().map(|x| format!("V{}", x)).collect(),
        grade: g.elements().collect(),
        units: vec![g.unit()],
        dual: g.elements().map(|x| g.inv(x)).collect(),
        action: g.elements().map(|a| g.elements().map(|x| g.conj(a, x)).collect()).collect(),
        tensor: g.elements().map(|x| g.elements().map(|y| Some(g.mul(x, y))).collect()).collect(),
        braid: (0..n).map(|x| (0..n).map(|y| Some(t.c(x, y).clone())).collect()).collect(),
        twist: theta,
        bval: t.b_table().to_vec(),
        dval: d,
        strict: t.is_strict(),
        order: t.order(),
        group: g,
    };
    ThinCategory::new(data)
}

/// Checks the crossed, braided and ribbon laws at the level of simples and
/// scalars on all simple pairs and triples.
pub fn crossed_invariance_suite(c: &ThinCategory) -> Report {
    let mut r = Report::new("crossed invariance");
    let g = c.group();
    let n = c.len();
    let e = g.unit();
    let s_all = 0..n;

    let act_id = r.begin("identity acts trivially");
    let act_hom = r.begin("action is a group action");
    let act_tensor = r.begin("action respects tensor");
    let act_dual = r.begin("action respects duals");
    let act_units = r.begin("action permutes unit summands");
    let self_act = r.begin("simple fixed by its own grade");
    let act_braid = r.begin("action preserves braiding");
    let act_twist = r.begin("action preserves twist");
    let act_dual_consts = r.begin("action preserves duality constants");
    for s in s_all.clone() {
        r.record(act_id, c.act(e, s) == s, || format!("s = {}", s));
        r.record(self_act, c.act(c.grade(s), s) == s, || format!("s = {}", s));
        for a in g.elements() {
            let fs = c.act(a, s);
            r.record(act_dual, c.act(a, c.dual(s)) == c.dual(fs), || format!("alpha = {}, s = {}", a, s));
            r.record(act_twist, c.twist(fs) == c.twist(s), || format!("alpha = {}, s = {}", a, s));
            r.record(
                act_dual_consts,
                c.bval(fs) == c.bval(s) && c.dval(fs) == c.dval(s),
                || format!("alpha = {}, s = {}", a, s),
            );
            for b in g.elements() {
                r.record(act_hom, c.act(a, c.act(b, s)) == c.act(g.mul(a, b), s), || {
                    format!("alpha = {}, beta = {}, s = {}", a, b, s)
                });
            }
            for t in s_all.clone() {
                let ft = c.act(a, t);
                let lhs = c.tensor(s, t).map(|p| c.act(a, p));
                r.record(act_tensor, lhs == c.tensor(fs, ft), || format!("alpha = {}, (s, t) = ({}, {})", a, s, t));
                r.record(act_braid, c.braid(fs, ft) == c.braid(s, t), || {
                    format!("alpha = {}, (s, t) = ({}, {})", a, s, t)
                });
            }
        }
    }
    for a in g.elements() {
        let mut moved: Vec<usize> = c.units().iter().map(|&u| c.act(a, u)).collect();
        moved.sort_unstable();
        let mut us = c.units().to_vec();
        us.sort_unstable();
        r.record(act_units, moved == us, || format!("alpha = {}", a));
    }

    let unit_law = r.begin("unit law");
    let dual_unit = r.begin("s tensor s* is a unit summand");
    let assoc = r.begin("tensor associativity");
    let target = r.begin("braiding target matches source");
    for s in s_all.clone() {
        let left = c.units().iter().filter(|&&u| c.tensor(u, s) == Some(s)).count();
        let left_zero = c.units().iter().filter(|&&u| c.tensor(u, s).is_none()).count();
        let right = c.units().iter().filter(|&&u| c.tensor(s, u) == Some(s)).count();
        let right_zero = c.units().iter().filter(|&&u| c.tensor(s, u).is_none()).count();
        let k = c.units().len();
        r.record(unit_law, left == 1 && right == 1 && left_zero == k - 1 && right_zero == k - 1, || {
            format!("s = {}", s)
        });
        let sd = c.tensor(s, c.dual(s));
        r.record(dual_unit, sd.map_or(false, |p| c.units().contains(&p)), || format!("s = {}", s));
        for t in s_all.clone() {
            if let Some(p) = c.tensor(s, t) {
                let swapped = c.tensor(c.act(c.grade(s), t), s);
                r.record(target, swapped == Some(p), || format!("(s, t) = ({}, {})", s, t));
            }
            for u in s_all.clone() {
                let l = c.tensor(s, t).and_then(|p| c.tensor(p, u));
                let rr = c.tensor(t, u).and_then(|p| c.tensor(s, p));
                r.record(assoc, l == rr, || format!("({}, {}, {})", s, t, u));
            }
        }
    }

    if !c.is_strict() {
        r.single("strict category", false, || "scalar braiding laws are checked only for strict categories".into());
        return r;
    }
    let unit_braid = r.begin("braiding with a unit summand is trivial");
    let right_mult = r.begin("braiding multiplicative in second argument");
    let left_mult = r.begin("braiding multiplicative in first argument");
    let yb = r.begin("Yang-Baxter identity");
    let twist_prod = r.begin("twist of a tensor product");
    let twist_dual = r.begin("twist of dual equals twist");
    let strict_dual = r.begin("duality constants are mutually inverse");
    let unit_twist = r.begin("twist of a unit summand is 1");
    for &u in c.units() {
        r.record(unit_twist, c.twist(u).is_one(), || format!("unit summand {}", u));
        for s in s_all.clone() {
            for v in [c.braid(u, s), c.braid(s, u)].into_iter().flatten() {
                r.record(unit_braid, v.is_one(), || format!("unit {}, s = {}", u, s));
            }
        }
    }
    for s in s_all.clone() {
        r.record(twist_dual, c.twist(c.dual(s)) == c.twist(s), || format!("s = {}", s));
        r.record(strict_dual, (c.bval(s) * c.dval(s)).is_one(), || format!("s = {}", s));
        for t in s_all.clone() {
            if let Some(p) = c.tensor(s, t) {
                let gst = g.mul(c.grade(s), c.grade(t));
                let rhs = c.braid(c.act(gst, t), s).map(|x| x * c.braid(s, t).unwrap() * c.twist(s) * c.twist(t));
                r.record(twist_prod, rhs.as_ref() == Some(c.twist(p)), || format!("(s, t) = ({}, {})", s, t));
            }
            for u in s_all.clone() {
                let Some(tu) = c.tensor(t, u) else { continue };
                let Some(stu) = c.tensor(s, tu) else { continue };
                let _ = stu;
                // c_{s, t⊗u} = c_{s,t} c_{s,u}
                let lhs = c.braid(s, tu).cloned();
                let rhs = c.braid(s, t).zip(c.braid(s, u)).map(|(x, y)| x * y);
                r.record(right_mult, lhs == rhs, || format!("({}, {}, {})", s, t, u));
                // c_{s⊗t, u} = c_{t,u} c_{s, φ_t u}
                let st = c.tensor(s, t).expect("associativity checked above");
                let lhs = c.braid(st, u).cloned();
                let rhs = c.braid(t, u).zip(c.braid(s, c.act(c.grade(t), u))).map(|(x, y)| x * y);
                r.record(left_mult, lhs == rhs, || format!("({}, {}, {})", s, t, u));
                let fs = c.grade(s);
                let lhs = [c.braid(s, t), c.braid(s, u), c.braid(c.act(fs, t), c.act(fs, u))];
                let rhs = [c.braid(s, t), c.braid(s, c.act(c.grade(t), u)), c.braid(t, u)];
                let prod = |xs: [Option<&CycloNum>; 3]| -> Option<CycloNum> {
                    Some(xs[0]? * xs[1]? * xs[2]?)
                };
                r.record(yb, prod(lhs) == prod(rhs), || format!("({}, {}, {})", s, t, u));
            }
        }
    }
    r
}

/// Basis-indexed algebra of colors of a thin category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorAlgebra {
    pub group_order: usize,
    pub grade: Vec<usize>,
    /// ⟨s⟩⟨t⟩ = ⟨s ⊗ t⟩ or 0.
    pub mult: Vec<Vec<Option<usize>>>,
    pub units: Vec<usize>,
    pub action: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    pub dims: Vec<CycloNum>,
    /// Unit summand index of the dimension value of each basis element.
    pub dim_block: Vec<usize>,
}

/// Dense element of a color algebra.
pub type ColorElement = Vec<CycloNum>;

impl ColorAlgebra {
    pub fn len(&self) -> usize {
        self.grade.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grade.is_empty()
    }

    pub fn basis(&self, s: usize) -> ColorElement {
        let mut v = vec![CycloNum::zero(); self.len()];
        v[s] = CycloNum::one();
        v
    }

    pub fn one(&self) -> ColorElement {
        let mut v = vec![CycloNum::zero(); self.len()];
        for &u in &self.units {
            v[u] = CycloNum::one();
        }
        v
    }

    pub fn mul(&self, x: &[CycloNum], y: &[CycloNum]) -> ColorElement {
        let mut out = vec![CycloNum::zero(); self.len()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(k) = self.mult[i][j] {
                    out[k] = &out[k] + &(a * b);
                }
            }
        }
        out
    }

    pub fn act(&self, a: usize, x: &[CycloNum]) -> ColorElement {
        let mut out = vec![CycloNum::zero(); self.len()];
        for (i, v) in x.iter().enumerate() {
            out[self.action[a][i]] = v.clone();
        }
        out
    }

    pub fn star(&self, x: &[CycloNum]) -> ColorElement {
        let mut out = vec![CycloNum::zero(); self.len()];
        for (i, v) in x.iter().enumerate() {
            out[self.star[i]] = v.clone();
        }
        out
    }

    /// Dimension functional, valued in K^{number of unit summands}.
    pub fn dim(&self, x: &[CycloNum]) -> Vec<CycloNum> {
        let mut out = vec![CycloNum::zero(); self.units.len()];
        for (i, v) in x.iter().enumerate() {
            if !v.is_zero() {
                let b = self.dim_block[i];
                out[b] = &out[b] + &(v * &self.dims[i]);
            }
        }
        out
    }

    /// Rank of the unit summand decomposition, i.e. dim End(𝟙).
    pub fn unit_rank(&self) -> usize {
        self.units.len()
    }

    /// Checks algebra laws, grading, the action, the involution, the
    /// dimension homomorphism and the braided-commutativity relations.
    pub fn verify(&self, group: &FiniteGroup) -> Report {
        let n = self.len();
        let mut r = Report::new("color algebra");
        let assoc = r.begin("associativity");
        let unit = r.begin("unit is two-sided");
        let grading = r.begin("grading is multiplicative");
        let act_alg = r.begin("action is by algebra automorphisms");
        let act_grade = r.begin("action shifts grading by conjugation");
        let star_grade = r.begin("involution inverts grading");
        let dim_hom = r.begin("dimension is an algebra homomorphism");
        let self_fix = r.begin("component fixed by its own grade");
        let commute = r.begin("ab = phi_alpha(b) a");
        let one = self.one();
        for i in 0..n {
            let bi = self.basis(i);
            r.record(unit, self.mul(&one, &bi) == bi && self.mul(&bi, &one) == bi, || format!("basis {}", i));
            r.record(star_grade, self.grade[self.star[i]] == group.inv(self.grade[i]), || format!("basis {}", i));
            r.record(self_fix, self.action[self.grade[i]][i] == i, || format!("basis {}", i));
            for a in group.elements() {
                r.record(act_grade, self.grade[self.action[a][i]] == group.conj(a, self.grade[i]), || {
                    format!("alpha = {}, basis {}", a, i)
                });
            }
            for j in 0..n {
                let bj = self.basis(j);
                let p = self.mul(&bi, &bj);
                if let Some(k) = self.mult[i][j] {
                    r.record(grading, self.grade[k] == group.mul(self.grade[i], self.grade[j]), || {
                        format!("({}, {})", i, j)
                    });
                }
                let dp = self.dim(&p);
                let di = self.dim(&bi);
                let dj = self.dim(&bj);
                let dd: Vec<CycloNum> = di.iter().zip(&dj).map(|(x, y)| x * y).collect();
                r.record(dim_hom, dp == dd, || format!("({}, {})", i, j));
                let rhs = self.mul(&self.act(self.grade[i], &bj), &bi);
                r.record(commute, p == rhs, || format!("({}, {})", i, j));
                for a in group.elements() {
                    let lhs = self.act(a, &p);
                    let rhs = self.mul(&self.act(a, &bi), &self.act(a, &bj));
                    r.record(act_alg, lhs == rhs, || format!("alpha = {}, ({}, {})", a, i, j));
                }
                for k in 0..n {
                    let bk = self.basis(k);
                    let l = self.mul(&p, &bk);
                    let rr = self.mul(&bi, &self.mul(&bj, &bk));
                    r.record(assoc, l == rr, || format!("({}, {}, {})", i, j, k));
                }
            }
        }
        r
    }
}

/// The algebra of colors of a strict thin category, free on the simples.
pub fn verlinde_algebra(c: &ThinCategory) -> Result<ColorAlgebra> {
    let n = c.len();
    let dims = (0..n).map(|s| c.dim(s)).collect::<Result<Vec<_>>>()?;
    Ok(ColorAlgebra {
        group_order: c.group().order(),
        grade: (0..n).map(|s| c.grade(s)).collect(),
        mult: (0..n).map(|s| (0..n).map(|t| c.tensor(s, t)).collect()).collect(),
        units: c.units().to_vec(),
        action: c.data().action.clone(),
        star: (0..n).map(|s| c.dual(s)).collect(),
        dims,
        dim_block: (0..n).map(|s| c.block_of(s)).collect(),
    })
}

/// ω_α = Σ_{i ∈ I_α} dim(V_i) ⟨V_i⟩.
pub fn canonical_color(c: &ThinCategory, a: usize) -> Result<ColorElement> {
    let mut v = vec![CycloNum::zero(); c.len()];
    for s in c.simples_of(a) {
        v[s] = c.dim(s)?;
    }
    Ok(v)
}

/// S-matrix on the neutral component, rank, Gauss sums and simple counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularData {
    pub neutral_simples: Vec<usize>,
    pub s_matrix: Vec<Vec<CycloNum>>,
    pub d2: CycloNum,
    pub rank: CycloNum,
    pub delta_plus: CycloNum,
    pub delta_minus: CycloNum,
    pub counts: Vec<usize>,
}

/// Modularity checks and the invariants D, Δ±. `positive` selects the sign
/// of D.
pub fn modular_data(c: &ThinCategory, positive: bool) -> Result<ModularData> {
    c.require_strict()?;
    c.unit()?;
    let i1 = c.simples_of(c.group().unit());
    let mut s = Vec::with_capacity(i1.len());
    for &i in &i1 {
        let mut row = Vec::with_capacity(i1.len());
        for &j in &i1 {
            let v = match (c.braid(i, j), c.braid(j, i)) {
                (Some(x), Some(y)) => x * y * c.dim(i)? * c.dim(j)?,
                _ => CycloNum::zero(),
            };
            row.push(v);
        }
        s.push(row);
    }
    if linalg::inverse(&s).is_none() {
        let shown: Vec<String> =
            s.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
        return Err(Error::Validation(format!("not modular: S-matrix is singular: {}", shown.join(" "))));
    }
    let mut d2 = CycloNum::zero();
    let mut dp = CycloNum::zero();
    let mut dm = CycloNum::zero();
    for &i in &i1 {
        let dd = c.dim(i)?;
        let sq = &dd * &dd;
        d2 = &d2 + &sq;
        dp = &dp + &(c.twist(i) * &sq);
        dm = &dm + &(c.twist(i).inv()? * &sq);
    }
    let rank = d2.sqrt(c.order(), positive).map_err(|e| match e {
        Error::Domain(m) => Error::Domain(format!("rank squared {} has no square root in Q(z{}): {}", d2, c.order(), m)),
        other => other,
    })?;
    if &dp * &dm != d2 {
        return Err(Error::Validation(format!("Gauss sums violate D+ D- = D^2: {} * {} != {}", dp, dm, d2)));
    }
    Ok(ModularData {
        neutral_simples: i1,
        s_matrix: s,
        d2,
        rank,
        delta_plus: dp,
        delta_minus: dm,
        counts: c.counts(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::RibbonTuple;

    fn z3() -> ThinCategory {
        let g = FiniteGroup::cyclic(3).unwrap();
        let c: Vec<i64> = (0..3).flat_map(|j| (0..3).map(move |k| j * k)).collect();
        let th: Vec<i64> = (0..3).map(|j| j * j).collect();
        pointlike_category(&RibbonTuple::from_exponents(g, 3, &[0; 27], &[0; 3], &c, Some(&th)).unwrap()).unwrap()
    }

    #[test]
    fn pointlike_z3() {
        let c = z3();
        assert!(c.is_strict());
        assert_eq!(*c.braid(1, 2).unwrap(), CycloNum::root_of_unity(3, 2));
        for s in 0..3 {
            assert!(c.dim(s).unwrap().is_one());
        }
        let r = crossed_invariance_suite(&c);
        assert!(r.passed(), "{}", r);
        let m = modular_data(&c, true).unwrap();
        assert_eq!(m.s_matrix, vec![vec![CycloNum::one()]]);
        assert!(m.rank.is_one() && m.delta_plus.is_one() && m.delta_minus.is_one());
    }

    #[test]
    fn twist_corruption_detected() {
        let mut d = z3().into_data();
        d.twist[1] = CycloNum::root_of_unity(3, 2);
        let c = ThinCategory::new(d).unwrap();
        let r = crossed_invariance_suite(&c);
        assert!(!r.check("twist of a tensor product").unwrap().passed());
    }

    #[test]
    fn verlinde_and_colors() {
        let c = z3();
        let l = verlinde_algebra(&c).unwrap();
        assert!(l.verify(c.group()).passed());
        let w1 = canonical_color(&c, 1).unwrap();
        assert_eq!(w1, l.basis(1));
        // ω₁⟨V₂⟩ = dim(V₂) ω₀
        assert_eq!(l.mul(&w1, &l.basis(2)), canonical_color(&c, 0).unwrap());
    }

    #[test]
    fn non_strict_refused() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let mut vals = vec![CycloNum::one(); 4];
        vals[1] = CycloNum::root_of_unity(4, 1);
        let eta = crate::cocycles::TwoCochain::new(g, vals, true).unwrap();
        let t = crate::cocycles::coboundary(&eta).unwrap();
        let t = t.clone().with_theta(crate::cocycles::canonical_twist(&t, &[CycloNum::one(), CycloNum::one()]).unwrap()).unwrap();
        let c = pointlike_category(&t).unwrap();
        assert!(!c.is_strict());
        assert!(c.dim(0).is_err());
    }
}
