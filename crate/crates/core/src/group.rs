//! Finite groups as Cayley tables, homomorphisms, and the group spec grammar.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table. Element 0 need not be
/// the unit; `unit` records it.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    unit: usize,
    spec: GroupSpec,
}

/// The textual description a group was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `cyclic:<n>` or `product:<n1>x<n2>...`.
    Named(String),
    /// Row-major, 0-indexed multiplication table.
    Table(Vec<Vec<usize>>),
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.spec_string())
    }
}

impl FiniteGroup {
    /// Validates a table and builds the group.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let spec = GroupSpec::Table(mul.clone());
        Self::from_table_with_spec(mul, spec)
    }

    fn from_table_with_spec(mul: Vec<Vec<usize>>, spec: GroupSpec) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::Validation("empty multiplication table".into()));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row {} has length {}, expected {}", i, row.len(), n)));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Validation(format!("entry {} in row {} is out of range", bad, i)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at triple ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::Validation("no two-sided unit".into()))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[a][b] == unit && mul[b][a] == unit)
                .ok_or_else(|| Error::Validation(format!("element {} has no inverse", a)))?;
        }
        Ok(FiniteGroup { mul, inv, unit, spec })
    }

    /// Z/n with i·j = (i+j) mod n.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("cyclic order must be positive".into()));
        }
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table_with_spec(mul, GroupSpec::Named(format!("cyclic:{}", n)))
    }

    /// Z/n1 × … × Z/nk with mixed-radix indexing, first factor most significant.
    pub fn product(ns: &[usize]) -> Result<Self> {
        if ns.is_empty() || ns.iter().any(|&n| n == 0) {
            return Err(Error::Validation("product factors must be positive".into()));
        }
        let total: usize = ns.iter().product();
        let digits = |mut x: usize| {
            let mut d = vec![0; ns.len()];
            for k in (0..ns.len()).rev() {
                d[k] = x % ns[k];
                x /= ns[k];
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().zip(ns).fold(0, |acc, (x, n)| acc * n + x);
        let mut mul = vec![vec![0; total]; total];
        for i in 0..total {
            let di = digits(i);
            for j in 0..total {
                let dj = digits(j);
                let s: Vec<usize> = (0..ns.len()).map(|k| (di[k] + dj[k]) % ns[k]).collect();
                mul[i][j] = undigits(&s);
            }
        }
        let name = ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x");
        Self::from_table_with_spec(mul, GroupSpec::Named(format!("product:{}", name)))
    }

    /// Symmetric group on three letters, elements as permutations in
    /// lexicographic order of their images.
    pub fn symmetric3() -> Self {
        Self::permutation_group(&[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]])
    }

    fn permutation_group(perms: &[[usize; 3]]) -> Self {
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::from_table(mul).expect("permutation table is a group")
    }

    /// Quaternion group {±1, ±i, ±j, ±k}, indexed 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion() -> Self {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
        let table = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mut mul = vec![vec![0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (sx, ux) = (x % 2 == 1, x / 2);
                let (sy, uy) = (y % 2 == 1, y / 2);
                let (s, u) = table(ux, uy);
                let neg = sx ^ sy ^ s;
                mul[x][y] = 2 * u + usize::from(neg);
            }
        }
        Self::from_table(mul).expect("quaternion table is a group")
    }

    /// Parses `cyclic:<n>` or `product:<n1>x<n2>...`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("cyclic:") {
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad cyclic order {:?}: {}", rest, e)))?;
            return Self::cyclic(n);
        }
        if let Some(rest) = spec.strip_prefix("product:") {
            let ns = rest
                .split('x')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("bad product spec {:?}: {}", rest, e)))?;
            return Self::product(&ns);
        }
        Err(Error::Parse(format!("unknown group spec {:?}", spec)))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Named(s) => Self::parse(s),
            GroupSpec::Table(t) => Self::from_table(t.clone()),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn spec_string(&self) -> String {
        match &self.spec {
            GroupSpec::Named(s) => s.clone(),
            GroupSpec::Table(t) => format!("table[{}]", t.len()),
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// δ α δ⁻¹.
    pub fn conj(&self, d: usize, a: usize) -> usize {
        self.mul[self.mul[d][a]][self.inv[d]]
    }

    /// a b a⁻¹ b⁻¹.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul[self.mul[self.mul[a][b]][self.inv[a]]][self.inv[b]]
    }

    /// a^k for any integer k.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[a] } else { a };
        let mut acc = self.unit;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul[acc][base];
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    /// Subgroup generated by a set of elements, as a sorted list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.unit]);
        seen[self.unit] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// A small generating set chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = self.generated(&gens);
        while sub.len() < self.order() {
            let next = self
                .elements()
                .filter(|x| !sub.contains(x))
                .max_by_key(|&x| self.element_order(x))
                .expect("proper subgroup has a complement element");
            gens.push(next);
            sub = self.generated(&gens);
        }
        gens
    }

    /// All homomorphisms into `target`, each as a full image table.
    pub fn homs_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(map) = self.extend_images(&gens, &images, target) {
                out.push(map);
            }
            let mut k = 0;
            loop {
                if k == gens.len() {
                    return out;
                }
                images[k] += 1;
                if images[k] < target.order() {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    fn extend_images(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[self.unit] = target.unit();
        let mut queue = VecDeque::from([self.unit]);
        while let Some(x) = queue.pop_front() {
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mul[x][*g];
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul[a][b]] != target.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Subgroup test for a set of elements.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        elems.contains(&self.unit)
            && elems
                .iter()
                .all(|&a| elems.contains(&self.inv[a]) && elems.iter().all(|&b| elems.contains(&self.mul[a][b])))
    }
}

/// Source of a homomorphism: a finite group or a free group on named
/// generators (Wirtinger generators of a diagram).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSource {
    Finite(FiniteGroup),
    Free(Vec<String>),
}

/// A letter g^k of a word in named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: String,
    pub power: i64,
}

impl Letter {
    pub fn new(generator: impl Into<String>, power: i64) -> Self {
        Letter { generator: generator.into(), power }
    }
}

/// A homomorphism given by generator images. For a finite source every
/// element is treated as a generator, so the table is the full map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: HomSource,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupHom {
    /// A homomorphism between finite groups, checked on all pairs.
    pub fn finite(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::Validation("image table length differs from source order".into()));
        }
        if images.iter().any(|&x| x >= target.order()) {
            return Err(Error::Validation("image out of range".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::Validation(format!("not a homomorphism at ({}, {})", a, b)));
                }
            }
        }
        Ok(GroupHom { source: HomSource::Finite(source), target, images })
    }

    /// A homomorphism from the free group on `gens`.
    pub fn free(gens: Vec<String>, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::Validation("one image per generator required".into()));
        }
        if images.iter().any(|&x| x >= target.order()) {
            return Err(Error::Validation("image out of range".into()));
        }
        Ok(GroupHom { source: HomSource::Free(gens), target, images })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: HomSource::Finite(g.clone()), target: g.clone(), images: g.elements().collect() }
    }

    pub fn source(&self) -> &HomSource {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a single element of a finite source.
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn source_group(&self) -> Option<&FiniteGroup> {
        match &self.source {
            HomSource::Finite(g) => Some(g),
            HomSource::Free(_) => None,
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.images {
            hit[x] = true;
        }
        match &self.source {
            HomSource::Finite(_) => hit.iter().all(|&h| h),
            HomSource::Free(_) => self.target.generated(&self.images).len() == self.target.order(),
        }
    }

    /// Product of generator images along a word.
    pub fn evaluate_word(&self, word: &[Letter]) -> Result<usize> {
        let mut acc = self.target.unit();
        for l in word {
            let idx = match &self.source {
                HomSource::Free(gens) => gens.iter().position(|g| *g == l.generator),
                HomSource::Finite(g) => l.generator.parse::<usize>().ok().filter(|&i| i < g.order()),
            }
            .ok_or_else(|| Error::Validation(format!("unknown generator {:?}", l.generator)))?;
            acc = self.target.mul(acc, self.target.pow(self.images[idx], l.power));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        let t = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(t.order(), 1);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(1, 2), 0);
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!(s3.order(), 6);
        let q8 = FiniteGroup::quaternion();
        assert!(!q8.is_abelian());
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 4).count(), 6);
        let p = FiniteGroup::parse("product:2x3").unwrap();
        assert!(p.is_abelian());
        assert_eq!(p.order(), 6);
        assert_eq!(p.generators().len(), 1);
    }

    #[test]
    fn rejects_broken_table() {
        let mut t = FiniteGroup::cyclic(4).unwrap().table().to_vec();
        t[1][2] = 0;
        let err = FiniteGroup::from_table(t).unwrap_err();
        assert!(err.to_string().contains("triple") || err.to_string().contains("unit"));
    }

    #[test]
    fn hom_counts() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z4.homs_to(&z2).len(), 2);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.homs_to(&z2).len(), 2);
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.homs_to(&z2).len(), 4);
    }

    #[test]
    fn words() {
        let s3 = FiniteGroup::symmetric3();
        let h = GroupHom::free(vec!["x".into(), "y".into()], s3.clone(), vec![1, 2]).unwrap();
        assert_eq!(h.evaluate_word(&[]).unwrap(), s3.unit());
        assert_eq!(h.evaluate_word(&[Letter::new("x", 1), Letter::new("x", -1)]).unwrap(), s3.unit());
        // direct multiplication oracle
        let w = [Letter::new("x", 1), Letter::new("y", 1), Letter::new("x", -1)];
        assert_eq!(h.evaluate_word(&w).unwrap(), s3.mul(s3.mul(1, 2), s3.inv(1)));
        assert!(h.evaluate_word(&[Letter::new("z", 1)]).is_err());
    }
}
