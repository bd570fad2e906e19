//! File formats: TOML for tuples and categories, JSON for diagrams,
//! surgery presentations and Hopf data. Exact values are written as
//! Σ q_k ζ_N^k strings such as `1/2 - 3*z12^5`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::categories::{pointlike_category, ThinCategory, ThinData};
use crate::cocycles::{verify_all, RibbonTuple};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec};
use crate::hopf::{AlgebraData, HopfAlgebraData, PiCoalgebraData, RMatrixFamily, Tensor, TwistFamily};
use crate::surgery::SurgeryPresentation;
use crate::tangles::{ColoredTangle, Orient, SliceRecord, SlicedDiagram};

/// Renders a value as Σ q_k ζ_N^k.
pub fn format_value(x: &CycloNum) -> String {
    let s = x.to_string();
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {:?}", s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses Σ q_k ζ_N^k written as in [`format_value`]: terms `q`, `zN`,
/// `zN^k`, `q*zN^k` joined by `+` and `-`. All ζ terms must share N.
pub fn parse_value(s: &str) -> Result<CycloNum> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty value".into()));
    }
    let mut terms: Vec<(BigRational, i64)> = Vec::new();
    let mut order: Option<u32> = None;
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body[1.min(body.len())..].find(['+', '-']).map(|i| i + 1).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, mono) = match term.find('z') {
            Some(0) => ("1", Some(&term[1..])),
            Some(i) => {
                let c = term[..i].strip_suffix('*').ok_or_else(|| Error::Parse(format!("expected '*' in term {:?}", term)))?;
                (c, Some(&term[i + 1..]))
            }
            None => (term, None),
        };
        let mut q = parse_rational(coef)?;
        if neg {
            q = -q;
        }
        let k = match mono {
            None => 0,
            Some(m) => {
                let (n, k) = match m.split_once('^') {
                    Some((n, k)) => (n, k.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {:?}", term)))?),
                    None => (m, 1),
                };
                let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad root order in {:?}", term)))?;
                if order.is_some_and(|o| o != n) {
                    return Err(Error::Parse(format!("mixed root orders in {:?}", s)));
                }
                order = Some(n);
                k
            }
        };
        terms.push((q, k));
    }
    match order {
        None => Ok(CycloNum::from_rational(terms.into_iter().map(|(q, _)| q).sum())),
        Some(n) => CycloNum::from_terms(n, &terms),
    }
}

/// Serialized ribbon tuple: group, cyclotomic order and exponent tables of ζ_N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleFile {
    pub group: GroupSpec,
    pub order: u32,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
}

/// Serialized thin category; `-1` in `tensor` and `""` in `braid` mark the zero object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinFile {
    pub group: GroupSpec,
    pub order: u32,
    pub strict: bool,
    pub labels: Vec<String>,
    pub grade: Vec<usize>,
    pub units: Vec<usize>,
    pub dual: Vec<usize>,
    pub action: Vec<Vec<usize>>,
    pub tensor: Vec<Vec<i64>>,
    pub braid: Vec<Vec<String>>,
    pub twist: Vec<String>,
    pub bval: Vec<String>,
    pub dval: Vec<String>,
}

/// A category file: either a ribbon tuple (its pointlike category) or explicit thin tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CategoryFile {
    Tuple(TupleFile),
    Thin(ThinFile),
}

fn toml_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn to_toml<T: Serialize>(v: &T) -> Result<String> {
    toml::to_string(v).map_err(toml_err)
}

pub fn tuple_to_file(t: &RibbonTuple) -> Result<TupleFile> {
    let (a, b, c, theta) = t.to_exponents()?;
    Ok(TupleFile { group: t.group().spec().clone(), order: t.order(), a, b, c, theta })
}

pub fn tuple_from_file(f: &TupleFile) -> Result<RibbonTuple> {
    let g = FiniteGroup::from_spec(&f.group)?;
    RibbonTuple::from_exponents(g, f.order, &f.a, &f.b, &f.c, f.theta.as_deref())
}

pub fn thin_to_file(c: &ThinCategory) -> ThinFile {
    let d = c.data();
    let vals = |v: &[CycloNum]| v.iter().map(format_value).collect();
    ThinFile {
        group: d.group.spec().clone(),
        order: d.order,
        strict: d.strict,
        labels: d.labels.clone(),
        grade: d.grade.clone(),
        units: d.units.clone(),
        dual: d.dual.clone(),
        action: d.action.clone(),
        tensor: d.tensor.iter().map(|r| r.iter().map(|x| x.map_or(-1, |p| p as i64)).collect()).collect(),
        braid: d.braid.iter().map(|r| r.iter().map(|x| x.as_ref().map(format_value).unwrap_or_default()).collect()).collect(),
        twist: vals(&d.twist),
        bval: vals(&d.bval),
        dval: vals(&d.dval),
    }
}

pub fn thin_from_file(f: &ThinFile) -> Result<ThinCategory> {
    let vals = |v: &[String]| v.iter().map(|s| parse_value(s)).collect::<Result<Vec<_>>>();
    let n = f.grade.len();
    let tensor = f
        .tensor
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| match x {
                    -1 => Ok(None),
                    x if x >= 0 && (x as usize) < n => Ok(Some(x as usize)),
                    x => Err(Error::Validation(format!("tensor entry {} out of range", x))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let braid = f
        .braid
        .iter()
        .map(|r| r.iter().map(|s| if s.is_empty() { Ok(None) } else { parse_value(s).map(Some) }).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ThinCategory::new(ThinData {
        group: FiniteGroup::from_spec(&f.group)?,
        order: f.order,
        labels: f.labels.clone(),
        grade: f.grade.clone(),
        units: f.units.clone(),
        dual: f.dual.clone(),
        action: f.action.clone(),
        tensor,
        braid,
        twist: vals(&f.twist)?,
        bval: vals(&f.bval)?,
        dval: vals(&f.dval)?,
        strict: f.strict,
    })
}

pub fn parse_category_file(text: &str) -> Result<CategoryFile> {
    toml::from_str(text).map_err(toml_err)
}

pub fn save_category_file(f: &CategoryFile) -> Result<String> {
    to_toml(f)
}

pub fn save_tuple(t: &RibbonTuple) -> Result<String> {
    save_category_file(&CategoryFile::Tuple(tuple_to_file(t)?))
}

pub fn save_thin(c: &ThinCategory) -> Result<String> {
    save_category_file(&CategoryFile::Thin(thin_to_file(c)))
}

/// Loads a tuple file.
pub fn load_tuple(text: &str) -> Result<RibbonTuple> {
    match parse_category_file(text)? {
        CategoryFile::Tuple(f) => tuple_from_file(&f),
        CategoryFile::Thin(_) => Err(Error::Unsupported("expected a tuple file, found a thin category".into())),
    }
}

/// Loads a category: tuples are verified and turned into their pointlike category.
pub fn load_category(text: &str) -> Result<ThinCategory> {
    match parse_category_file(text)? {
        CategoryFile::Tuple(f) => {
            let t = tuple_from_file(&f)?;
            let r = verify_all(&t);
            if !r.passed() {
                return Err(Error::Validation(format!("tuple fails its verifiers:\n{}", r)));
            }
            pointlike_category(&t)
        }
        CategoryFile::Thin(f) => thin_from_file(&f),
    }
}

/// Re-expresses every constant of a category in Q(ζ_M).
pub fn lift_category(c: &ThinCategory, m: u32) -> Result<ThinCategory> {
    if m % c.order() != 0 {
        return Err(Error::Validation(format!("order {} is not a multiple of {}", m, c.order())));
    }
    let mut d = c.data().clone();
    let lift = |x: &mut CycloNum| -> Result<()> {
        if m % x.order() != 0 {
            return Err(Error::Validation(format!("value {} does not embed in Q(z{})", x, m)));
        }
        *x = x.lift(m);
        Ok(())
    };
    for x in d.twist.iter_mut().chain(d.bval.iter_mut()).chain(d.dval.iter_mut()) {
        lift(x)?;
    }
    for x in d.braid.iter_mut().flatten().flatten() {
        lift(x)?;
    }
    d.order = m;
    ThinCategory::new(d)
}

/// A diagram file: slices plus optional per-arc label and color tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(default)]
    pub inputs: Vec<Orient>,
    pub slices: Vec<SliceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<usize>>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(json_err)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_diagram_file(text: &str) -> Result<DiagramFile> {
    serde_json::from_str(text).map_err(json_err)
}

impl DiagramFile {
    pub fn diagram(&self) -> Result<SlicedDiagram> {
        SlicedDiagram::from_records(self.inputs.clone(), &self.slices)
    }

    /// The colored tangle; missing labels are taken from color grades.
    pub fn colored(&self, cat: &ThinCategory) -> Result<ColoredTangle> {
        let diagram = self.diagram()?;
        let colors = self.colors.clone().ok_or_else(|| Error::Validation("diagram file has no color table".into()))?;
        let n = diagram.analyze().n_arcs();
        if colors.len() != n || colors.iter().any(|&c| c >= cat.len()) {
            return Err(Error::Validation(format!("color table must name a simple for each of {} arcs", n)));
        }
        let labels = self.labels.clone().unwrap_or_else(|| colors.iter().map(|&c| cat.grade(c)).collect());
        Ok(ColoredTangle { diagram, labels, colors })
    }

    pub fn from_colored(t: &ColoredTangle) -> Self {
        DiagramFile {
            inputs: t.diagram.inputs().to_vec(),
            slices: t.diagram.records(),
            labels: Some(t.labels.clone()),
            colors: Some(t.colors.clone()),
        }
    }

    pub fn from_diagram(d: &SlicedDiagram) -> Self {
        DiagramFile { inputs: d.inputs().to_vec(), slices: d.records(), labels: None, colors: None }
    }
}

pub fn save_diagram_file(f: &DiagramFile) -> Result<String> {
    to_json(f)
}

/// A surgery file: a closed diagram, one framing per link component (kinks
/// are added where the blackboard framing differs), per-arc labels and
/// optional Ω colors as (arc, simple) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryFile {
    pub slices: Vec<SliceRecord>,
    pub framings: Vec<i64>,
    pub labels: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega: Vec<(usize, usize)>,
}

pub fn load_surgery(text: &str) -> Result<SurgeryPresentation> {
    let f: SurgeryFile = serde_json::from_str(text).map_err(json_err)?;
    let d = SlicedDiagram::from_records(Vec::new(), &f.slices)?;
    SurgeryPresentation::with_framings(d, &f.framings, f.labels, &f.omega)
}

pub fn save_surgery(p: &SurgeryPresentation) -> Result<String> {
    to_json(&SurgeryFile {
        slices: p.diagram().records(),
        framings: p.framings(),
        labels: p.labels().to_vec(),
        omega: p.omega_arcs(),
    })
}

/// Sparse Hopf algebra file. Entries are (indices..., value):
/// `mult` (i, j, k) is the e_k coefficient of e_i e_j, `delta` (i, j, k) the
/// e_j⊗e_k coefficient of Δe_i, `antipode` (i, j) the e_j coefficient of s(e_i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfFile {
    pub dimension: usize,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
    pub delta: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    pub antipode: Vec<(usize, usize, String)>,
    /// Optional R ∈ H⊗H as (i, j, value).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_matrix: Option<Vec<(usize, usize, String)>>,
    /// Optional ribbon element v as (i, value).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon: Option<Vec<(usize, String)>>,
}

/// Parsed Hopf file contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfInput {
    pub hopf: HopfAlgebraData,
    pub r_matrix: Option<Tensor>,
    pub ribbon: Option<Tensor>,
}

fn sparse(t: &Tensor) -> Vec<(Vec<usize>, String)> {
    t.nonzero().into_iter().map(|(i, c)| (i, format_value(&c))).collect()
}

fn check_index(i: &[usize], n: usize) -> Result<()> {
    if i.iter().any(|&x| x >= n) {
        Err(Error::Validation(format!("index {:?} out of range for dimension {}", i, n)))
    } else {
        Ok(())
    }
}

pub fn hopf_to_file(h: &HopfInput) -> HopfFile {
    let a = &h.hopf;
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, v) in sparse(&a.algebra.mult[i][j]) {
                mult.push((i, j, k[0], v));
            }
        }
    }
    let mut delta = Vec::new();
    let mut antipode = Vec::new();
    let mut counit = Vec::new();
    for i in 0..n {
        for (jk, v) in sparse(&a.delta[i]) {
            delta.push((i, jk[0], jk[1], v));
        }
        for (j, v) in sparse(&a.antipode[i]) {
            antipode.push((i, j[0], v));
        }
        let e = a.counit[i].as_scalar();
        if !e.is_zero() {
            counit.push((i, format_value(e)));
        }
    }
    HopfFile {
        dimension: n,
        mult,
        unit: sparse(&a.algebra.unit).into_iter().map(|(i, v)| (i[0], v)).collect(),
        delta,
        counit,
        antipode,
        r_matrix: h.r_matrix.as_ref().map(|r| sparse(r).into_iter().map(|(i, v)| (i[0], i[1], v)).collect()),
        ribbon: h.ribbon.as_ref().map(|v| sparse(v).into_iter().map(|(i, x)| (i[0], x)).collect()),
    }
}

pub fn hopf_from_file(f: &HopfFile) -> Result<HopfInput> {
    let n = f.dimension;
    if n == 0 || n > crate::hopf::MAX_DIM {
        return Err(Error::Validation(format!("dimension {} outside 1..={}", n, crate::hopf::MAX_DIM)));
    }
    let mut mult = vec![vec![Tensor::zeros(&[n]); n]; n];
    for (i, j, k, v) in &f.mult {
        check_index(&[*i, *j, *k], n)?;
        mult[*i][*j] = mult[*i][*j].add(&Tensor::from_entries(&[n], &[(vec![*k], parse_value(v)?)]));
    }
    let vec1 = |es: &[(usize, String)]| -> Result<Tensor> {
        let mut entries = Vec::new();
        for (i, v) in es {
            check_index(&[*i], n)?;
            entries.push((vec![*i], parse_value(v)?));
        }
        Ok(Tensor::from_entries(&[n], &entries))
    };
    let mut delta = vec![Tensor::zeros(&[n, n]); n];
    for (i, j, k, v) in &f.delta {
        check_index(&[*i, *j, *k], n)?;
        delta[*i] = delta[*i].add(&Tensor::from_entries(&[n, n], &[(vec![*j, *k], parse_value(v)?)]));
    }
    let mut antipode = vec![Tensor::zeros(&[n]); n];
    for (i, j, v) in &f.antipode {
        check_index(&[*i, *j], n)?;
        antipode[*i] = antipode[*i].add(&Tensor::from_entries(&[n], &[(vec![*j], parse_value(v)?)]));
    }
    let mut counit = vec![Tensor::scalar(CycloNum::zero()); n];
    for (i, v) in &f.counit {
        check_index(&[*i], n)?;
        counit[*i] = Tensor::scalar(counit[*i].as_scalar() + parse_value(v)?);
    }
    let r_matrix = match &f.r_matrix {
        None => None,
        Some(es) => {
            let mut entries = Vec::new();
            for (i, j, v) in es {
                check_index(&[*i, *j], n)?;
                entries.push((vec![*i, *j], parse_value(v)?));
            }
            Some(Tensor::from_entries(&[n, n], &entries))
        }
    };
    Ok(HopfInput {
        hopf: HopfAlgebraData { algebra: AlgebraData { dim: n, mult, unit: vec1(&f.unit)? }, delta, counit, antipode },
        r_matrix,
        ribbon: f.ribbon.as_deref().map(vec1).transpose()?,
    })
}

pub fn load_hopf(text: &str) -> Result<HopfInput> {
    let f: HopfFile = serde_json::from_str(text).map_err(json_err)?;
    hopf_from_file(&f)
}

pub fn save_hopf(h: &HopfInput) -> Result<String> {
    to_json(&hopf_to_file(h))
}

/// Serialized Hopf π-coalgebra with optional R-matrix and twist families.
/// Keys are group element indices; tensors are written sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiCoalgebraFile {
    pub group: GroupSpec,
    pub algebras: Vec<HopfLikeAlgebra>,
    pub delta: BTreeMap<String, Vec<(usize, usize, usize, String)>>,
    pub counit: Vec<(usize, String)>,
    pub antipode: Vec<Vec<(usize, usize, String)>>,
    pub phi: BTreeMap<String, Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_matrix: Option<BTreeMap<String, Vec<(usize, usize, String)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Vec<(usize, String)>>>,
}

/// Algebra tables of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfLikeAlgebra {
    pub dimension: usize,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
}

fn pair_key(x: usize, y: usize) -> String {
    format!("{},{}", x, y)
}

fn map_entries(m: &[Tensor]) -> Vec<(usize, usize, String)> {
    m.iter().enumerate().flat_map(|(i, t)| sparse(t).into_iter().map(move |(j, v)| (i, j[0], v))).collect()
}

pub fn save_pi_coalgebra(a: &PiCoalgebraData, rm: Option<&RMatrixFamily>, tw: Option<&TwistFamily>) -> Result<String> {
    let g = &a.group;
    let algebras = a
        .algebras
        .iter()
        .map(|alg| {
            let mut mult = Vec::new();
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for (k, v) in sparse(&alg.mult[i][j]) {
                        mult.push((i, j, k[0], v));
                    }
                }
            }
            HopfLikeAlgebra { dimension: alg.dim, mult, unit: sparse(&alg.unit).into_iter().map(|(i, v)| (i[0], v)).collect() }
        })
        .collect();
    let mut delta = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for x in g.elements() {
        for y in g.elements() {
            let d: Vec<(usize, usize, usize, String)> = a.delta[x][y]
                .iter()
                .enumerate()
                .flat_map(|(i, t)| sparse(t).into_iter().map(move |(jk, v)| (i, jk[0], jk[1], v)))
                .collect();
            delta.insert(pair_key(x, y), d);
            phi.insert(pair_key(x, y), map_entries(&a.phi[x][y]));
        }
    }
    let counit = a
        .counit
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.as_scalar().is_zero())
        .map(|(i, t)| (i, format_value(t.as_scalar())))
        .collect();
    let r_matrix = rm.map(|rm| {
        let mut m = BTreeMap::new();
        for x in g.elements() {
            for y in g.elements() {
                m.insert(pair_key(x, y), sparse(&rm.r[x][y]).into_iter().map(|(i, v)| (i[0], i[1], v)).collect());
            }
        }
        m
    });
    let twist = tw.map(|tw| tw.theta.iter().map(|t| sparse(t).into_iter().map(|(i, v)| (i[0], v)).collect()).collect());
    to_json(&PiCoalgebraFile {
        group: g.spec().clone(),
        algebras,
        delta,
        counit,
        antipode: a.antipode.iter().map(|m| map_entries(m)).collect(),
        phi,
        r_matrix,
        twist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_strings_round_trip() {
        let samples = [
            CycloNum::zero(),
            CycloNum::from_frac(-3, 7),
            CycloNum::root_of_unity(12, 5),
            CycloNum::from_frac(1, 2) + CycloNum::root_of_unity(3, 1) * CycloNum::from_int(-2),
        ];
        for x in samples {
            let s = format_value(&x);
            assert_eq!(parse_value(&s).unwrap(), x, "{}", s);
        }
        assert_eq!(parse_value("1 + z4").unwrap(), CycloNum::one() + CycloNum::root_of_unity(4, 1));
        assert_eq!(parse_value("-z3^2").unwrap(), -CycloNum::root_of_unity(3, 2));
        assert!(parse_value("z3 + z4").is_err());
        assert!(parse_value("").is_err());
    }
}
