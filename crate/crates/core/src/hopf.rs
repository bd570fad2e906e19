//! Finite-dimensional Hopf algebras and crossed Hopf group-coalgebras as
//! exact structure tensors: axiom verifiers, the two constructions from a
//! group action, R-matrix and twist families built from a ribbon element,
//! and the mirror.

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::report::Report;

/// Largest algebra dimension accepted by the builders.
pub const MAX_DIM: usize = 8;
/// Largest group order accepted by the builders.
pub const MAX_GROUP: usize = 8;

/// A dense tensor in V₁ ⊗ … ⊗ V_k with respect to fixed bases.
/// A zero-leg tensor is a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<CycloNum>,
}

#[derive(Serialize, Deserialize)]
struct TensorRepr {
    dims: Vec<usize>,
    entries: Vec<(Vec<usize>, CycloNum)>,
}

impl Serialize for Tensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorRepr { dims: self.dims.clone(), entries: self.nonzero() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TensorRepr::deserialize(d)?;
        let mut t = Tensor::zeros(&r.dims);
        for (idx, c) in r.entries {
            if idx.len() != r.dims.len() || idx.iter().zip(&r.dims).any(|(i, d)| i >= d) {
                return Err(serde::de::Error::custom(format!("tensor index {:?} out of range {:?}", idx, r.dims)));
            }
            let p = t.offset(&idx);
            t.data[p] += c;
        }
        Ok(t)
    }
}

impl Tensor {
    pub fn zeros(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Tensor { dims: dims.to_vec(), data: vec![CycloNum::zero(); n] }
    }

    pub fn scalar(c: CycloNum) -> Self {
        Tensor { dims: Vec::new(), data: vec![c] }
    }

    /// The basis tensor with a single 1 at `idx`.
    pub fn basis(dims: &[usize], idx: &[usize]) -> Self {
        let mut t = Self::zeros(dims);
        let p = t.offset(idx);
        t.data[p] = CycloNum::one();
        t
    }

    /// A vector from its coordinates.
    pub fn vector(v: Vec<CycloNum>) -> Self {
        Tensor { dims: vec![v.len()], data: v }
    }

    /// Builds a tensor from (index, coefficient) pairs; repeated indices add.
    pub fn from_entries(dims: &[usize], entries: &[(Vec<usize>, CycloNum)]) -> Self {
        let mut t = Self::zeros(dims);
        for (idx, c) in entries {
            let p = t.offset(idx);
            t.data[p] += c.clone();
        }
        t
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn legs(&self) -> usize {
        self.dims.len()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (i, d)| acc * d + i)
    }

    fn index(&self, mut p: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            idx[k] = p % self.dims[k];
            p /= self.dims[k];
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &CycloNum {
        &self.data[self.offset(idx)]
    }

    /// Nonzero entries with their multi-indices.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, CycloNum)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (self.index(p), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    /// The value of a zero-leg tensor.
    pub fn as_scalar(&self) -> &CycloNum {
        &self.data[0]
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Tensor { dims: self.dims.clone(), data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Tensor { dims: self.dims.clone(), data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &CycloNum) -> Tensor {
        Tensor { dims: self.dims.clone(), data: self.data.iter().map(|a| a * c).collect() }
    }

    /// self ⊗ other.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut dims = self.dims.clone();
        dims.extend(&other.dims);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(if a.is_zero() || b.is_zero() { CycloNum::zero() } else { a * b });
            }
        }
        Tensor { dims, data }
    }

    /// Applies a linear map to leg `k`. `images[i]` is the image of the
    /// i-th basis vector; it may have any number of legs, which replace leg `k`.
    pub fn map_leg(&self, k: usize, images: &[Tensor]) -> Tensor {
        assert_eq!(images.len(), self.dims[k], "map domain mismatch on leg {}", k);
        let img_dims = images.first().map(|t| t.dims.clone()).unwrap_or_default();
        let mut dims = self.dims[..k].to_vec();
        dims.extend(&img_dims);
        dims.extend(&self.dims[k + 1..]);
        let mut out = Tensor::zeros(&dims);
        let img_nz: Vec<Vec<(Vec<usize>, CycloNum)>> = images.iter().map(Tensor::nonzero).collect();
        for (idx, c) in self.nonzero() {
            for (jdx, d) in &img_nz[idx[k]] {
                let mut o = idx[..k].to_vec();
                o.extend(jdx);
                o.extend(&idx[k + 1..]);
                let p = out.offset(&o);
                out.data[p] += &c * d;
            }
        }
        out
    }

    /// Reorders legs: leg j of the result is leg `perm[j]` of self.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = Tensor::zeros(&dims);
        for (idx, c) in self.nonzero() {
            let o: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            let p = out.offset(&o);
            out.data[p] = c;
        }
        out
    }

    /// The flip of a two-leg tensor.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// Inserts a one-leg tensor as a new leg at position `pos`.
    pub fn insert_leg(&self, pos: usize, v: &Tensor) -> Tensor {
        let n = self.legs();
        let t = self.outer(v);
        let mut perm: Vec<usize> = (0..pos).collect();
        perm.push(n);
        perm.extend(pos..n);
        t.permute(&perm)
    }
}

/// A linear map given by the images of basis vectors.
pub type LinearMap = Vec<Tensor>;

fn identity_map(n: usize) -> LinearMap {
    (0..n).map(|i| Tensor::basis(&[n], &[i])).collect()
}

/// g ∘ f for maps on vectors.
fn compose(g: &[Tensor], f: &[Tensor]) -> LinearMap {
    f.iter().map(|t| t.map_leg(0, g)).collect()
}

fn map_matrix(f: &[Tensor], rows: usize) -> Vec<Vec<CycloNum>> {
    (0..rows).map(|r| f.iter().map(|t| t.data[r].clone()).collect()).collect()
}

/// A finite-dimensional unital associative algebra on a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub dim: usize,
    /// `mult[i][j]` is e_i · e_j.
    pub mult: Vec<Vec<Tensor>>,
    pub unit: Tensor,
}

impl AlgebraData {
    /// The ground field K.
    pub fn ground() -> Self {
        AlgebraData { dim: 1, mult: vec![vec![Tensor::basis(&[1], &[0])]], unit: Tensor::basis(&[1], &[0]) }
    }

    pub fn basis(&self, i: usize) -> Tensor {
        Tensor::basis(&[self.dim], &[i])
    }

    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        mul_in(&[self], a, b)
    }

    /// Left multiplication by `a` as a map.
    pub fn left_map(&self, a: &Tensor) -> LinearMap {
        (0..self.dim).map(|i| self.mul(a, &self.basis(i))).collect()
    }

    /// Right multiplication by `a` as a map.
    pub fn right_map(&self, a: &Tensor) -> LinearMap {
        (0..self.dim).map(|i| self.mul(&self.basis(i), a)).collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        if self.dim == 0 || self.dim > MAX_DIM {
            return bad(format!("algebra dimension {} outside 1..={}", self.dim, MAX_DIM));
        }
        if self.mult.len() != self.dim || self.mult.iter().any(|r| r.len() != self.dim) {
            return bad("multiplication table has the wrong shape".into());
        }
        if self.mult.iter().flatten().chain(std::iter::once(&self.unit)).any(|t| t.dims != [self.dim]) {
            return bad("multiplication or unit vector has the wrong dimension".into());
        }
        Ok(())
    }
}

/// Product in A₁ ⊗ … ⊗ A_k, legwise.
pub fn mul_in(algs: &[&AlgebraData], x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(&x.dims);
    let xs = x.nonzero();
    let ys = y.nonzero();
    for (i, a) in &xs {
        for (j, b) in &ys {
            let mut t = Tensor::scalar(a * b);
            for (k, alg) in algs.iter().enumerate() {
                t = t.outer(&alg.mult[i[k]][j[k]]);
            }
            out = out.add(&t);
        }
    }
    out
}

/// Applies the multiplication of `alg` to legs k and k+1.
fn multiply_legs(x: &Tensor, k: usize, alg: &AlgebraData) -> Tensor {
    let mut dims = x.dims[..k].to_vec();
    dims.push(alg.dim);
    dims.extend(&x.dims[k + 2..]);
    let mut out = Tensor::zeros(&dims);
    for (idx, c) in x.nonzero() {
        for (m, d) in alg.mult[idx[k]][idx[k + 1]].nonzero() {
            let mut o = idx[..k].to_vec();
            o.push(m[0]);
            o.extend(&idx[k + 2..]);
            let p = out.offset(&o);
            out.data[p] += &c * &d;
        }
    }
    out
}

fn tensor_unit(algs: &[&AlgebraData]) -> Tensor {
    algs.iter().fold(Tensor::scalar(CycloNum::one()), |t, a| t.outer(&a.unit))
}

/// Two-sided inverse in A₁ ⊗ … ⊗ A_k, if it exists.
pub fn inverse_in(algs: &[&AlgebraData], x: &Tensor) -> Option<Tensor> {
    let n = x.data.len();
    let cols: Vec<Tensor> = (0..n)
        .map(|c| {
            let mut e = Tensor::zeros(&x.dims);
            e.data[c] = CycloNum::one();
            mul_in(algs, x, &e)
        })
        .collect();
    let m = map_matrix(&cols, n);
    let one = tensor_unit(algs);
    let sol = linalg::solve(&m, &one.data)?;
    let y = Tensor { dims: x.dims.clone(), data: sol };
    (mul_in(algs, &y, x) == one).then_some(y)
}

/// A Hopf algebra as structure tensors on a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfAlgebraData {
    pub algebra: AlgebraData,
    /// Δ(e_i) as a two-leg tensor.
    pub delta: LinearMap,
    /// ε(e_i) as a zero-leg tensor.
    pub counit: LinearMap,
    pub antipode: LinearMap,
}

impl HopfAlgebraData {
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    fn validate(&self) -> Result<()> {
        self.algebra.validate()?;
        let n = self.dim();
        let ok = self.delta.len() == n
            && self.counit.len() == n
            && self.antipode.len() == n
            && self.delta.iter().all(|t| t.dims == [n, n])
            && self.counit.iter().all(|t| t.dims.is_empty())
            && self.antipode.iter().all(|t| t.dims == [n]);
        if ok {
            Ok(())
        } else {
            Err(Error::Validation("Hopf structure tensors have inconsistent shapes".into()))
        }
    }

    /// The group algebra K[G] on the basis of group elements.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let e = |i: usize| Tensor::basis(&[n], &[i]);
        HopfAlgebraData {
            algebra: AlgebraData {
                dim: n,
                mult: (0..n).map(|a| (0..n).map(|b| e(g.mul(a, b))).collect()).collect(),
                unit: e(g.unit()),
            },
            delta: (0..n).map(|a| Tensor::basis(&[n, n], &[a, a])).collect(),
            counit: (0..n).map(|_| Tensor::scalar(CycloNum::one())).collect(),
            antipode: (0..n).map(|a| e(g.inv(a))).collect(),
        }
    }

    /// Sweedler's four-dimensional algebra on the basis 1, g, x, gx with
    /// g² = 1, x² = 0, xg = −gx, Δg = g⊗g, Δx = x⊗1 + g⊗x, s(x) = −gx.
    pub fn sweedler() -> Self {
        let n = 4;
        let e = |i: usize| Tensor::basis(&[n], &[i]);
        let neg = |t: Tensor| t.scale(&CycloNum::from_int(-1));
        let z = Tensor::zeros(&[n]);
        // Words as (sign, g-power, x-power) on basis index g^a x^b = 2b + a.
        let word = |i: usize| (i % 2, i / 2);
        let mut mult = vec![vec![z.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let (a1, b1) = word(i);
                let (a2, b2) = word(j);
                if b1 + b2 > 1 {
                    continue;
                }
                // g^a1 x^b1 g^a2 x^b2 = (−1)^(b1 a2) g^(a1+a2) x^(b1+b2)
                let t = e((a1 + a2) % 2 + 2 * (b1 + b2));
                mult[i][j] = if b1 * a2 == 1 { neg(t) } else { t };
            }
        }
        let t2 = |a: usize, b: usize| Tensor::basis(&[n, n], &[a, b]);
        // Δ(gx) = Δg Δx = gx⊗g + 1⊗gx.
        let delta = vec![t2(0, 0), t2(1, 1), t2(2, 0).add(&t2(1, 2)), t2(3, 1).add(&t2(0, 3))];
        let one = || Tensor::scalar(CycloNum::one());
        let zero = || Tensor::scalar(CycloNum::zero());
        // s(gx) = s(x)s(g) = −gxg = g²x = x.
        let antipode = vec![e(0), e(1), neg(e(3)), e(2)];
        HopfAlgebraData {
            algebra: AlgebraData { dim: n, mult, unit: e(0) },
            delta,
            counit: vec![one(), one(), zero(), zero()],
            antipode,
        }
    }
}

/// Group-like elements of a Hopf algebra found among its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikes {
    pub group: FiniteGroup,
    /// Basis index of each group element.
    pub basis_index: Vec<usize>,
}

impl GroupLikes {
    pub fn element(&self, h: &HopfAlgebraData, a: usize) -> Tensor {
        h.algebra.basis(self.basis_index[a])
    }
}

/// Solves Δx = x⊗x, ε(x) = 1 over the basis vectors and returns the group
/// they form. Requires the unit to be a basis vector.
pub fn group_likes(h: &HopfAlgebraData) -> Result<GroupLikes> {
    h.validate()?;
    let n = h.dim();
    let unit_idx = (0..n)
        .find(|&i| h.algebra.unit == h.algebra.basis(i))
        .ok_or_else(|| Error::Unsupported("the unit is not a basis vector".into()))?;
    let mut idx = vec![unit_idx];
    for i in 0..n {
        if i != unit_idx && h.delta[i] == Tensor::basis(&[n, n], &[i, i]) && h.counit[i].as_scalar().is_one() {
            idx.push(i);
        }
    }
    let pos = |t: &Tensor| idx.iter().position(|&j| *t == h.algebra.basis(j));
    let mut table = vec![vec![0; idx.len()]; idx.len()];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            table[a][b] = pos(&h.algebra.mult[i][j])
                .ok_or_else(|| Error::Unsupported("group-like basis vectors are not closed under products".into()))?;
        }
    }
    if idx.len() > MAX_GROUP {
        return Err(Error::Unsupported(format!("{} group-likes exceed the cap {}", idx.len(), MAX_GROUP)));
    }
    Ok(GroupLikes { group: FiniteGroup::from_table(table)?, basis_index: idx })
}

/// An action of a finite group on a Hopf algebra by Hopf endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAction {
    pub group: FiniteGroup,
    pub maps: Vec<LinearMap>,
}

impl HopfAction {
    /// The trivial action.
    pub fn trivial(g: &FiniteGroup, h: &HopfAlgebraData) -> Self {
        HopfAction { group: g.clone(), maps: vec![identity_map(h.dim()); g.order()] }
    }

    /// The action of the group-likes by conjugation a ↦ α a α⁻¹.
    pub fn conjugation(h: &HopfAlgebraData, gl: &GroupLikes) -> Self {
        let maps = gl
            .group
            .elements()
            .map(|a| {
                let x = gl.element(h, a);
                let xi = gl.element(h, gl.group.inv(a));
                (0..h.dim()).map(|i| h.algebra.mul(&h.algebra.mul(&x, &h.algebra.basis(i)), &xi)).collect()
            })
            .collect();
        HopfAction { group: gl.group.clone(), maps }
    }

    /// Checks that every map is a Hopf endomorphism and that the maps form an action.
    pub fn verify(&self, h: &HopfAlgebraData) -> Report {
        let mut r = Report::new("group action");
        let a = &h.algebra;
        let n = a.dim;
        let g = &self.group;
        let shape = r.begin("action maps have the right shape");
        r.record(shape, self.maps.len() == g.order() && self.maps.iter().all(|m| m.len() == n && m.iter().all(|t| t.dims == [n])), || {
            "shape mismatch".into()
        });
        if !r.passed() {
            return r;
        }
        let (hom, unit, co, cu, an, act) = (
            r.begin("action maps are multiplicative"),
            r.begin("action maps preserve the unit"),
            r.begin("action maps commute with the comultiplication"),
            r.begin("action maps preserve the counit"),
            r.begin("action maps commute with the antipode"),
            r.begin("action composition law"),
        );
        for x in g.elements() {
            let f = &self.maps[x];
            for i in 0..n {
                for j in 0..n {
                    let lhs = a.mult[i][j].map_leg(0, f);
                    let rhs = a.mul(&f[i], &f[j]);
                    r.record(hom, lhs == rhs, || format!("α={} e{} e{}", x, i, j));
                }
                let lhs = h.delta[i].map_leg(0, f).map_leg(1, f);
                let rhs = f[i].map_leg(0, &h.delta);
                r.record(co, lhs == rhs, || format!("α={} e{}", x, i));
                r.record(cu, f[i].map_leg(0, &h.counit) == h.counit[i], || format!("α={} e{}", x, i));
                r.record(an, f[i].map_leg(0, &h.antipode) == h.antipode[i].map_leg(0, f), || format!("α={} e{}", x, i));
            }
            r.record(unit, a.unit.map_leg(0, f) == a.unit, || format!("α={}", x));
            for y in g.elements() {
                let lhs = &self.maps[g.mul(x, y)];
                let rhs = compose(f, &self.maps[y]);
                r.record(act, *lhs == rhs, || format!("α={} β={}", x, y));
            }
            if x == g.unit() {
                r.record(act, *f == identity_map(n), || "unit acts nontrivially".into());
            }
        }
        r
    }
}

/// A Hopf π-coalgebra: algebras A_α, comultiplications Δ_{α,β}: A_{αβ} → A_α⊗A_β,
/// counit ε on A₁, antipodes s_α: A_α → A_{α⁻¹} and crossing maps
/// φ_α: A_β → A_{αβα⁻¹}, all indexed by group element numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiCoalgebraData {
    pub group: FiniteGroup,
    pub algebras: Vec<AlgebraData>,
    /// `delta[α][β][i]` is Δ_{α,β} of the i-th basis vector of A_{αβ}.
    pub delta: Vec<Vec<LinearMap>>,
    pub counit: LinearMap,
    pub antipode: Vec<LinearMap>,
    /// `phi[α][β]` is φ_α restricted to A_β.
    pub phi: Vec<Vec<LinearMap>>,
}

/// Universal R-matrix: `r[α][β]` ∈ A_α ⊗ A_β with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixFamily {
    pub r: Vec<Vec<Tensor>>,
    pub inverse: Vec<Vec<Tensor>>,
}

/// Twist: `theta[α]` ∈ A_α with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistFamily {
    pub theta: Vec<Tensor>,
    pub inverse: Vec<Tensor>,
}

impl RMatrixFamily {
    /// Computes inverses; fails if some R_{α,β} is not invertible.
    pub fn new(a: &PiCoalgebraData, r: Vec<Vec<Tensor>>) -> Result<Self> {
        let mut inverse = Vec::new();
        for (x, row) in r.iter().enumerate() {
            let mut inv_row = Vec::new();
            for (y, t) in row.iter().enumerate() {
                let inv = inverse_in(&[&a.algebras[x], &a.algebras[y]], t)
                    .ok_or_else(|| Error::Validation(format!("R({},{}) is not invertible", x, y)))?;
                inv_row.push(inv);
            }
            inverse.push(inv_row);
        }
        Ok(RMatrixFamily { r, inverse })
    }
}

impl TwistFamily {
    pub fn new(a: &PiCoalgebraData, theta: Vec<Tensor>) -> Result<Self> {
        let inverse = theta
            .iter()
            .enumerate()
            .map(|(x, t)| inverse_in(&[&a.algebras[x]], t).ok_or_else(|| Error::Validation(format!("θ({}) is not invertible", x))))
            .collect::<Result<_>>()?;
        Ok(TwistFamily { theta, inverse })
    }
}

impl PiCoalgebraData {
    /// A Hopf algebra viewed over the trivial group.
    pub fn trivial(h: &HopfAlgebraData) -> Self {
        PiCoalgebraData {
            group: FiniteGroup::cyclic(1).expect("trivial group"),
            algebras: vec![h.algebra.clone()],
            delta: vec![vec![h.delta.clone()]],
            counit: h.counit.clone(),
            antipode: vec![h.antipode.clone()],
            phi: vec![vec![identity_map(h.dim())]],
        }
    }

    /// The neutral component (A₁, Δ_{1,1}, ε, s₁).
    pub fn neutral_component(&self) -> HopfAlgebraData {
        let e = self.group.unit();
        HopfAlgebraData {
            algebra: self.algebras[e].clone(),
            delta: self.delta[e][e].clone(),
            counit: self.counit.clone(),
            antipode: self.antipode[e].clone(),
        }
    }

    fn dim(&self, a: usize) -> usize {
        self.algebras[a].dim
    }

    /// Shape errors, if any, as a list of messages.
    fn shape_errors(&self) -> Vec<String> {
        let g = &self.group;
        let k = g.order();
        let mut errs = Vec::new();
        if self.algebras.len() != k
            || self.delta.len() != k
            || self.delta.iter().any(|r| r.len() != k)
            || self.antipode.len() != k
            || self.phi.len() != k
            || self.phi.iter().any(|r| r.len() != k)
        {
            errs.push("families are not indexed by the group".into());
            return errs;
        }
        for (x, alg) in self.algebras.iter().enumerate() {
            if let Err(e) = alg.validate() {
                errs.push(format!("A({}): {}", x, e));
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        for x in g.elements() {
            for y in g.elements() {
                let m = &self.delta[x][y];
                let want = [self.dim(x), self.dim(y)];
                if m.len() != self.dim(g.mul(x, y)) || m.iter().any(|t| t.dims != want) {
                    errs.push(format!("Δ({},{}) has the wrong shape", x, y));
                }
                let p = &self.phi[x][y];
                if p.len() != self.dim(y) || p.iter().any(|t| t.dims != [self.dim(g.conj(x, y))]) {
                    errs.push(format!("φ({}) on A({}) has the wrong shape", x, y));
                }
            }
            let s = &self.antipode[x];
            if s.len() != self.dim(x) || s.iter().any(|t| t.dims != [self.dim(g.inv(x))]) {
                errs.push(format!("s({}) has the wrong shape", x));
            }
        }
        let e = g.unit();
        if self.counit.len() != self.dim(e) || self.counit.iter().any(|t| !t.dims.is_empty()) {
            errs.push("counit has the wrong shape".into());
        }
        errs
    }
}

fn shape_report(name: &str, a: &PiCoalgebraData) -> Option<Report> {
    let errs = a.shape_errors();
    if errs.is_empty() {
        return None;
    }
    let mut r = Report::new(name);
    let i = r.begin("structure tensors have consistent shapes");
    for e in errs {
        r.record(i, false, || e);
    }
    Some(r)
}

/// Checks the Hopf algebra axioms on a basis.
pub fn verify_hopf(h: &HopfAlgebraData) -> Report {
    let mut r = verify_pi_coalgebra(&PiCoalgebraData::trivial(h));
    r.name = "Hopf algebra".into();
    r
}

/// Checks the Hopf π-coalgebra axioms: algebra structure, coassociativity,
/// counit, multiplicativity of Δ and ε, and the antipode identities.
pub fn verify_pi_coalgebra(a: &PiCoalgebraData) -> Report {
    if let Some(r) = shape_report("Hopf group-coalgebra", a) {
        return r;
    }
    let mut r = Report::new("Hopf group-coalgebra");
    let g = &a.group;
    let e = g.unit();
    let els: Vec<usize> = g.elements().collect();

    let assoc = r.begin("algebra associativity");
    let unit = r.begin("algebra unit");
    for &x in &els {
        let alg = &a.algebras[x];
        let n = alg.dim;
        for i in 0..n {
            let ei = alg.basis(i);
            r.record(unit, alg.mul(&alg.unit, &ei) == ei && alg.mul(&ei, &alg.unit) == ei, || format!("α={} e{}", x, i));
            for j in 0..n {
                for k in 0..n {
                    let lhs = alg.mul(&alg.mult[i][j], &alg.basis(k));
                    let rhs = alg.mul(&ei, &alg.mult[j][k]);
                    r.record(assoc, lhs == rhs, || format!("α={} e{} e{} e{}", x, i, j, k));
                }
            }
        }
    }

    let coassoc = r.begin("coassociativity");
    for &x in &els {
        for &y in &els {
            for &z in &els {
                let xyz = g.mul(g.mul(x, y), z);
                for i in 0..a.dim(xyz) {
                    let b = a.algebras[xyz].basis(i);
                    let lhs = b.map_leg(0, &a.delta[g.mul(x, y)][z]).map_leg(0, &a.delta[x][y]);
                    let rhs = b.map_leg(0, &a.delta[x][g.mul(y, z)]).map_leg(1, &a.delta[y][z]);
                    r.record(coassoc, lhs == rhs, || format!("α={} β={} γ={} e{}", x, y, z, i));
                }
            }
        }
    }

    let counit = r.begin("counit");
    for &x in &els {
        for i in 0..a.dim(x) {
            let b = a.algebras[x].basis(i);
            let left = b.map_leg(0, &a.delta[x][e]).map_leg(1, &a.counit);
            let right = b.map_leg(0, &a.delta[e][x]).map_leg(0, &a.counit);
            r.record(counit, left == b && right == b, || format!("α={} e{}", x, i));
        }
    }

    let dmul = r.begin("comultiplication is multiplicative");
    let dunit = r.begin("comultiplication preserves the unit");
    for &x in &els {
        for &y in &els {
            let xy = g.mul(x, y);
            let src = &a.algebras[xy];
            let algs = [&a.algebras[x], &a.algebras[y]];
            let d = &a.delta[x][y];
            for i in 0..src.dim {
                for j in 0..src.dim {
                    let lhs = src.mult[i][j].map_leg(0, d);
                    let rhs = mul_in(&algs, &d[i], &d[j]);
                    r.record(dmul, lhs == rhs, || format!("α={} β={} e{} e{}", x, y, i, j));
                }
            }
            let lhs = src.unit.map_leg(0, d);
            r.record(dunit, lhs == tensor_unit(&algs), || format!("α={} β={}: Δ(1) = {:?}", x, y, lhs.nonzero()));
        }
    }

    let emul = r.begin("counit is multiplicative");
    let one = &a.algebras[e];
    for i in 0..one.dim {
        for j in 0..one.dim {
            let lhs = one.mult[i][j].map_leg(0, &a.counit);
            let rhs = a.counit[i].as_scalar() * a.counit[j].as_scalar();
            r.record(emul, *lhs.as_scalar() == rhs, || format!("e{} e{}", i, j));
        }
    }
    r.single("counit preserves the unit", one.unit.map_leg(0, &a.counit).as_scalar().is_one(), || "ε(1) ≠ 1".into());

    let anti = r.begin("antipode identity");
    for &x in &els {
        let xi = g.inv(x);
        let alg = &a.algebras[x];
        for i in 0..one.dim {
            let b = one.basis(i);
            let want = alg.unit.scale(a.counit[i].as_scalar());
            let left = multiply_legs(&b.map_leg(0, &a.delta[xi][x]).map_leg(0, &a.antipode[xi]), 0, alg);
            let right = multiply_legs(&b.map_leg(0, &a.delta[x][xi]).map_leg(1, &a.antipode[xi]), 0, alg);
            r.record(anti, left == want && right == want, || format!("α={} e{}", x, i));
        }
    }

    let sunit = r.begin("antipode preserves the unit");
    let srev = r.begin("antipode reverses products");
    for &x in &els {
        let xi = g.inv(x);
        let s = &a.antipode[x];
        let alg = &a.algebras[x];
        r.record(sunit, alg.unit.map_leg(0, s) == a.algebras[xi].unit, || format!("α={}", x));
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = alg.mult[i][j].map_leg(0, s);
                let rhs = a.algebras[xi].mul(&s[j], &s[i]);
                r.record(srev, lhs == rhs, || format!("α={} e{} e{}", x, i, j));
            }
        }
    }
    r
}

/// Checks the crossing axioms: each φ_α is an algebra isomorphism
/// preserving ε, commuting with s and Δ, and φ is an action.
pub fn verify_crossed(a: &PiCoalgebraData) -> Report {
    if let Some(r) = shape_report("crossing", a) {
        return r;
    }
    let mut r = Report::new("crossing");
    let g = &a.group;
    let e = g.unit();
    let els: Vec<usize> = g.elements().collect();
    let (hom, unit, iso, cu, an, co, act) = (
        r.begin("crossing maps are multiplicative"),
        r.begin("crossing maps preserve the unit"),
        r.begin("crossing maps are bijective"),
        r.begin("crossing maps preserve the counit"),
        r.begin("crossing maps commute with the antipode"),
        r.begin("crossing maps commute with the comultiplication"),
        r.begin("crossing maps form an action"),
    );
    for &x in &els {
        for &y in &els {
            let f = &a.phi[x][y];
            let src = &a.algebras[y];
            let tgt_idx = g.conj(x, y);
            let tgt = &a.algebras[tgt_idx];
            for i in 0..src.dim {
                for j in 0..src.dim {
                    let lhs = src.mult[i][j].map_leg(0, f);
                    r.record(hom, lhs == tgt.mul(&f[i], &f[j]), || format!("α={} β={} e{} e{}", x, y, i, j));
                }
            }
            r.record(unit, src.unit.map_leg(0, f) == tgt.unit, || format!("α={} β={}", x, y));
            r.record(iso, src.dim == tgt.dim && linalg::rank(&map_matrix(f, tgt.dim)) == src.dim, || {
                format!("α={} β={}", x, y)
            });
            // φ_α s_β = s_{αβα⁻¹} φ_α on A_β.
            let lhs = compose(&a.phi[x][g.inv(y)], &a.antipode[y]);
            let rhs = compose(&a.antipode[tgt_idx], f);
            r.record(an, lhs == rhs, || format!("α={} β={}", x, y));
            // (φ_α⊗φ_α)Δ_{β,γ} = Δ_{αβα⁻¹,αγα⁻¹}φ_α on A_{βγ}.
            for &z in &els {
                let yz = g.mul(y, z);
                for i in 0..a.dim(yz) {
                    let b = a.algebras[yz].basis(i);
                    let lhs = b.map_leg(0, &a.delta[y][z]).map_leg(0, &a.phi[x][y]).map_leg(1, &a.phi[x][z]);
                    let rhs = b.map_leg(0, &a.phi[x][yz]).map_leg(0, &a.delta[g.conj(x, y)][g.conj(x, z)]);
                    r.record(co, lhs == rhs, || format!("α={} β={} γ={} e{}", x, y, z, i));
                }
                // φ_{αγ} = φ_α φ_γ on A_β.
                let lhs = &a.phi[g.mul(x, z)][y];
                let rhs = compose(&a.phi[x][g.conj(z, y)], &a.phi[z][y]);
                r.record(act, *lhs == rhs, || format!("α={} γ={} on A({})", x, z, y));
            }
        }
        let lhs = compose(&a.counit, &a.phi[x][e]);
        r.record(cu, lhs == a.counit, || format!("α={}", x));
    }
    for &y in &els {
        r.record(act, a.phi[e][y] == identity_map(a.dim(y)), || format!("φ(1) on A({}) is not the identity", y));
    }
    r
}

fn r_axiom_algs<'a>(a: &'a PiCoalgebraData, legs: &[usize]) -> Vec<&'a AlgebraData> {
    legs.iter().map(|&x| &a.algebras[x]).collect()
}

/// Checks the R-matrix axioms and the graded Yang-Baxter identity.
pub fn verify_quasitriangular(a: &PiCoalgebraData, rm: &RMatrixFamily) -> Report {
    let mut r = Report::new("R-matrix");
    let g = &a.group;
    let els: Vec<usize> = g.elements().collect();
    let k = g.order();
    let shape_ok = rm.r.len() == k
        && rm.inverse.len() == k
        && els.iter().all(|&x| {
            rm.r[x].len() == k
                && rm.inverse[x].len() == k
                && els.iter().all(|&y| rm.r[x][y].dims == [a.dim(x), a.dim(y)] && rm.inverse[x][y].dims == [a.dim(x), a.dim(y)])
        });
    r.single("R-matrix family has consistent shapes", shape_ok, || "shape mismatch".into());
    if !shape_ok {
        return r;
    }
    let rr = |x: usize, y: usize| &rm.r[x][y];
    let inv = r.begin("R-matrix invertibility");
    let inter = r.begin("R-matrix intertwines the comultiplication");
    let second = r.begin("R-matrix comultiplication in the second leg");
    let first = r.begin("R-matrix comultiplication in the first leg");
    let cross = r.begin("crossing maps preserve the R-matrix");
    let yb = r.begin("graded Yang-Baxter identity");
    for &x in &els {
        for &y in &els {
            let algs = r_axiom_algs(a, &[x, y]);
            let one = tensor_unit(&algs);
            let ok = mul_in(&algs, rr(x, y), &rm.inverse[x][y]) == one && mul_in(&algs, &rm.inverse[x][y], rr(x, y)) == one;
            r.record(inv, ok, || format!("α={} β={}", x, y));

            let xy = g.mul(x, y);
            let xi = g.inv(x);
            let c = g.conj(x, y);
            for i in 0..a.dim(xy) {
                let b = a.algebras[xy].basis(i);
                let lhs = mul_in(&algs, rr(x, y), &b.map_leg(0, &a.delta[x][y]));
                let t = b.map_leg(0, &a.delta[c][x]).map_leg(0, &a.phi[xi][c]).flip();
                let rhs = mul_in(&algs, &t, rr(x, y));
                r.record(inter, lhs == rhs, || format!("α={} β={} e{}", x, y, i));
            }

            for &z in &els {
                let algs3 = r_axiom_algs(a, &[x, y, z]);
                // (id⊗Δ_{β,γ})R_{α,βγ} = (R_{α,γ})_{1β3}(R_{α,β})_{12γ}
                let lhs = rr(x, g.mul(y, z)).map_leg(1, &a.delta[y][z]);
                let r13 = rr(x, z).insert_leg(1, &a.algebras[y].unit);
                let r12 = rr(x, y).insert_leg(2, &a.algebras[z].unit);
                let rhs = mul_in(&algs3, &r13, &r12);
                r.record(second, lhs == rhs, || format!("α={} β={} γ={}", x, y, z));

                // (Δ_{α,β}⊗id)R_{αβ,γ} = ((φ_β⊗id)R_{β⁻¹αβ,γ})_{1β3}(R_{β,γ})_{α23}
                let w = g.conj(g.inv(y), x);
                let lhs = rr(xy, z).map_leg(0, &a.delta[x][y]);
                let t13 = rr(w, z).map_leg(0, &a.phi[y][w]).insert_leg(1, &a.algebras[y].unit);
                let r23 = rr(y, z).insert_leg(0, &a.algebras[x].unit);
                let rhs = mul_in(&algs3, &t13, &r23);
                r.record(first, lhs == rhs, || format!("α={} β={} γ={}", x, y, z));

                // (R_{α,β})_{12γ}((φ_β⊗id)R_{β⁻¹αβ,γ})_{1β3}(R_{β,γ})_{α23}
                //   = (R_{β,γ})_{α23}(R_{α,γ})_{1β3}(R_{α,β})_{12γ}
                let r12 = rr(x, y).insert_leg(2, &a.algebras[z].unit);
                let r13 = rr(x, z).insert_leg(1, &a.algebras[y].unit);
                let lhs = mul_in(&algs3, &mul_in(&algs3, &r12, &t13), &r23);
                let rhs = mul_in(&algs3, &mul_in(&algs3, &r23, &r13), &r12);
                r.record(yb, lhs == rhs, || format!("α={} β={} γ={}", x, y, z));

                // (φ_α⊗φ_α)R_{β,γ} = R_{αβα⁻¹,αγα⁻¹}
                let lhs = rr(y, z).map_leg(0, &a.phi[x][y]).map_leg(1, &a.phi[x][z]);
                r.record(cross, lhs == *rr(g.conj(x, y), g.conj(x, z)), || format!("α={} β={} γ={}", x, y, z));
            }
        }
    }
    r
}

/// Checks the twist axioms against an R-matrix family.
pub fn verify_ribbon(a: &PiCoalgebraData, rm: &RMatrixFamily, tw: &TwistFamily) -> Report {
    let mut r = Report::new("twist");
    let g = &a.group;
    let els: Vec<usize> = g.elements().collect();
    let shape_ok = tw.theta.len() == g.order()
        && tw.inverse.len() == g.order()
        && rm.r.len() == g.order()
        && els.iter().all(|&x| tw.theta[x].dims == [a.dim(x)] && tw.inverse[x].dims == [a.dim(x)]);
    r.single("twist family has consistent shapes", shape_ok, || "shape mismatch".into());
    if !shape_ok {
        return r;
    }
    let inv = r.begin("twist invertibility");
    let conj = r.begin("twist implements the crossing");
    let anti = r.begin("antipode maps the twist");
    let delta = r.begin("twist comultiplication rule");
    let cross = r.begin("crossing maps permute the twist");
    for &x in &els {
        let alg = &a.algebras[x];
        let (t, ti) = (&tw.theta[x], &tw.inverse[x]);
        r.record(inv, alg.mul(t, ti) == alg.unit && alg.mul(ti, t) == alg.unit, || format!("α={}", x));
        for i in 0..alg.dim {
            let b = alg.basis(i);
            let lhs = b.map_leg(0, &a.phi[x][x]);
            r.record(conj, lhs == alg.mul(&alg.mul(ti, &b), t), || format!("α={} e{}", x, i));
        }
        r.record(anti, t.map_leg(0, &a.antipode[x]) == tw.theta[g.inv(x)], || format!("α={}", x));
        for &y in &els {
            let xy = g.mul(x, y);
            let algs = r_axiom_algs(a, &[x, y]);
            let lhs = tw.theta[xy].map_leg(0, &a.delta[x][y]);
            let braid = rm.r[y][x].map_leg(1, &a.phi[x][x]).flip();
            let rhs = mul_in(&algs, &mul_in(&algs, &t.outer(&tw.theta[y]), &braid), &rm.r[x][y]);
            r.record(delta, lhs == rhs, || format!("α={} β={}", x, y));
            let lhs = tw.theta[y].map_leg(0, &a.phi[x][y]);
            r.record(cross, lhs == tw.theta[g.conj(x, y)], || format!("α={} β={}", x, y));
        }
    }
    r
}

/// Checks (H, R, v) against the quasitriangular and ribbon axioms.
pub fn verify_ribbon_hopf(h: &HopfAlgebraData, r: &Tensor, v: &Tensor) -> Report {
    let mut rep = Report::new("ribbon Hopf algebra");
    let a = PiCoalgebraData::trivial(h);
    let hv = verify_hopf(h);
    let ok = hv.passed();
    rep.absorb(hv);
    if !ok {
        return rep;
    }
    match (RMatrixFamily::new(&a, vec![vec![r.clone()]]), TwistFamily::new(&a, vec![v.clone()])) {
        (Ok(rm), Ok(tw)) => {
            rep.absorb(verify_quasitriangular(&a, &rm));
            rep.absorb(verify_ribbon(&a, &rm, &tw));
        }
        (Err(e), _) | (_, Err(e)) => rep.single("invertibility of R and v", false, || e.to_string()),
    }
    rep
}

/// Which of the two constructions from a group action to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plain,
    Bar,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "bar" => Ok(Variant::Bar),
            _ => Err(Error::Parse(format!("unknown variant {:?}; expected plain or bar", s))),
        }
    }
}

fn first_failure(r: &Report) -> String {
    r.failures()
        .first()
        .map(|c| format!("{}: {}", c.name, c.witnesses.first().cloned().unwrap_or_default()))
        .unwrap_or_default()
}

/// Builds A^π (plain) or its barred companion from a group action by
/// Hopf endomorphisms. Every A_α is a copy of H.
pub fn build_a_pi(h: &HopfAlgebraData, action: &HopfAction, variant: Variant) -> Result<PiCoalgebraData> {
    h.validate()?;
    let check = action.verify(h);
    if !check.passed() {
        return Err(Error::Validation(format!("invalid action: {}", first_failure(&check))));
    }
    let g = &action.group;
    if g.order() > MAX_GROUP {
        return Err(Error::Unsupported(format!("group order {} exceeds {}", g.order(), MAX_GROUP)));
    }
    let k = g.order();
    let delta = (0..k)
        .map(|_| {
            (0..k)
                .map(|y| match variant {
                    Variant::Plain => h.delta.clone(),
                    Variant::Bar => h.delta.iter().map(|t| t.map_leg(0, &action.maps[y])).collect(),
                })
                .collect()
        })
        .collect();
    let antipode = (0..k)
        .map(|x| match variant {
            Variant::Plain => h.antipode.clone(),
            Variant::Bar => compose(&action.maps[x], &h.antipode),
        })
        .collect();
    Ok(PiCoalgebraData {
        group: g.clone(),
        algebras: vec![h.algebra.clone(); k],
        delta,
        counit: h.counit.clone(),
        antipode,
        phi: action.maps.iter().map(|m| vec![m.clone(); k]).collect(),
    })
}

/// Builds the π(H)-coalgebra with R-matrix and twist from a ribbon Hopf
/// algebra (H, R, v), where π(H) is the group of basis group-likes acting by
/// conjugation.
pub fn build_r_theta_from_ribbon(
    h: &HopfAlgebraData,
    r: &Tensor,
    v: &Tensor,
    variant: Variant,
) -> Result<(PiCoalgebraData, RMatrixFamily, TwistFamily)> {
    let check = verify_ribbon_hopf(h, r, v);
    if !check.passed() {
        return Err(Error::Validation(format!("not a ribbon Hopf algebra: {}", first_failure(&check))));
    }
    let gl = group_likes(h)?;
    let action = HopfAction::conjugation(h, &gl);
    let a = build_a_pi(h, &action, variant)?;
    let g = &gl.group;
    let alg = &h.algebra;
    let hh = [alg, alg];
    let rs = g
        .elements()
        .map(|x| {
            g.elements()
                .map(|y| match variant {
                    Variant::Plain => mul_in(&hh, &alg.unit.outer(&gl.element(h, g.inv(x))), r),
                    Variant::Bar => mul_in(&hh, r, &gl.element(h, g.inv(y)).outer(&alg.unit)),
                })
                .collect()
        })
        .collect();
    let thetas = g.elements().map(|x| alg.mul(v, &gl.element(h, g.inv(x)))).collect();
    let rm = RMatrixFamily::new(&a, rs)?;
    let tw = TwistFamily::new(&a, thetas)?;
    Ok((a, rm, tw))
}

/// The mirror: Ā_α = A_{α⁻¹}, Δ̄_{α,β} = (φ_β⊗id)Δ_{β⁻¹α⁻¹β,β⁻¹},
/// s̄_α = φ_α s_{α⁻¹}, the same counit and crossing.
pub fn mirror_coalgebra(a: &PiCoalgebraData) -> PiCoalgebraData {
    let g = &a.group;
    let els: Vec<usize> = g.elements().collect();
    let algebras = els.iter().map(|&x| a.algebras[g.inv(x)].clone()).collect();
    let delta = els
        .iter()
        .map(|&x| {
            els.iter()
                .map(|&y| {
                    let yi = g.inv(y);
                    let w = g.conj(yi, g.inv(x));
                    a.delta[w][yi].iter().map(|t| t.map_leg(0, &a.phi[y][w])).collect()
                })
                .collect()
        })
        .collect();
    let antipode = els.iter().map(|&x| compose(&a.phi[x][x], &a.antipode[g.inv(x)])).collect();
    let phi = els.iter().map(|&x| els.iter().map(|&y| a.phi[x][g.inv(y)].clone()).collect()).collect();
    PiCoalgebraData { group: g.clone(), algebras, delta, counit: a.counit.clone(), antipode, phi }
}

/// Mirror of a ribbon structure: R̄_{α,β} = (Perm R_{β⁻¹,α⁻¹})⁻¹ and
/// θ̄_α = θ_{α⁻¹}⁻¹.
pub fn mirror_ribbon(a: &PiCoalgebraData, rm: &RMatrixFamily, tw: &TwistFamily) -> (PiCoalgebraData, RMatrixFamily, TwistFamily) {
    let g = &a.group;
    let m = mirror_coalgebra(a);
    let els: Vec<usize> = g.elements().collect();
    let r = els.iter().map(|&x| els.iter().map(|&y| rm.inverse[g.inv(y)][g.inv(x)].flip()).collect()).collect();
    let inverse = els.iter().map(|&x| els.iter().map(|&y| rm.r[g.inv(y)][g.inv(x)].flip()).collect()).collect();
    let theta = els.iter().map(|&x| tw.inverse[g.inv(x)].clone()).collect();
    let theta_inv = els.iter().map(|&x| tw.theta[g.inv(x)].clone()).collect();
    (m, RMatrixFamily { r, inverse }, TwistFamily { theta, inverse: theta_inv })
}

/// Generalized Drinfeld element u_α = Σ s_{α⁻¹}(R″) R′ with R = R_{α,α⁻¹}.
pub fn drinfeld_element(a: &PiCoalgebraData, rm: &RMatrixFamily, x: usize) -> Tensor {
    let g = &a.group;
    let xi = g.inv(x);
    let t = rm.r[x][xi].map_leg(1, &a.antipode[xi]);
    multiply_legs(&t.flip(), 0, &a.algebras[x])
}

/// Checks the spherical axioms for a family w. The trace condition is
/// tested on right multiplications of the regular module only and is
/// reported as partial.
pub fn verify_spherical(a: &PiCoalgebraData, w: &[Tensor]) -> Report {
    let mut r = Report::new("spherical structure");
    let g = &a.group;
    let els: Vec<usize> = g.elements().collect();
    let shape_ok = w.len() == g.order() && els.iter().all(|&x| w[x].dims == [a.dim(x)]);
    r.single("family has consistent shapes", shape_ok, || "shape mismatch".into());
    if !shape_ok {
        return r;
    }
    let inverses: Vec<Option<Tensor>> = els.iter().map(|&x| inverse_in(&[&a.algebras[x]], &w[x])).collect();
    let inv = r.begin("w is invertible");
    for &x in &els {
        r.record(inv, inverses[x].is_some(), || format!("α={}", x));
    }
    if !r.passed() {
        return r;
    }
    let winv = |x: usize| inverses[x].as_ref().expect("checked");
    let sq = r.begin("squared antipode is conjugation by w");
    let gl = r.begin("w is group-like");
    let anti = r.begin("antipode inverts w");
    let cross = r.begin("crossing maps permute w");
    let trace = r.begin("trace symmetry on right multiplications");
    r.mark_partial(trace);
    for &x in &els {
        let alg = &a.algebras[x];
        let xi = g.inv(x);
        let s2 = compose(&a.antipode[xi], &a.antipode[x]);
        for i in 0..alg.dim {
            let b = alg.basis(i);
            r.record(sq, s2[i] == alg.mul(&alg.mul(&w[x], &b), winv(x)), || format!("α={} e{}", x, i));
            // f = right multiplication by e_i; compare Tr(f∘w) with Tr(f∘w⁻¹).
            let f = alg.right_map(&b);
            let lw = compose(&f, &alg.left_map(&w[x]));
            let lwi = compose(&f, &alg.left_map(winv(x)));
            let tr = |m: &LinearMap| linalg::trace(&map_matrix(m, alg.dim));
            r.record(trace, tr(&lw) == tr(&lwi), || format!("α={} e{}", x, i));
        }
        r.record(anti, w[x].map_leg(0, &a.antipode[x]) == *winv(xi), || format!("α={}", x));
        for &y in &els {
            let lhs = w[g.mul(x, y)].map_leg(0, &a.delta[x][y]);
            r.record(gl, lhs == w[x].outer(&w[y]), || format!("α={} β={}", x, y));
            r.record(cross, w[y].map_leg(0, &a.phi[x][y]) == w[g.conj(x, y)], || format!("α={} β={}", x, y));
        }
    }
    let e = g.unit();
    r.single("counit of w is one", w[e].map_leg(0, &a.counit).as_scalar().is_one(), || "ε(w₁) ≠ 1".into());
    r
}

/// The R-matrix ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) on a two-element group-like pair,
/// given by basis indices of 1 and g in an algebra of dimension n.
pub fn z2_r_matrix(n: usize, one: usize, g: usize) -> Tensor {
    let h = CycloNum::from_frac(1, 2);
    Tensor::from_entries(
        &[n, n],
        &[
            (vec![one, one], h.clone()),
            (vec![one, g], h.clone()),
            (vec![g, one], h.clone()),
            (vec![g, g], -h),
        ],
    )
}

/// All v with coefficients drawn from `coeffs` on each basis vector such
/// that (H, R, v) is ribbon, in lexicographic order of coefficient choices.
pub fn ribbon_elements(h: &HopfAlgebraData, r: &Tensor, coeffs: &[CycloNum]) -> Vec<Tensor> {
    let n = h.dim();
    let total = coeffs.len().pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(coeffs[c % coeffs.len()].clone());
            c /= coeffs.len();
        }
        v.reverse();
        let v = Tensor::vector(v);
        if v.is_zero() {
            continue;
        }
        if v.map_leg(0, &h.antipode) != v {
            continue;
        }
        if verify_ribbon_hopf(h, r, &v).passed() {
            out.push(v);
        }
    }
    out
}
