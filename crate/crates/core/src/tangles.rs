//! Sliced diagrams of colored π-tangles: arc and component analysis,
//! labelings by group elements and simples, evaluation of the ribbon functor
//! on thin categories, and a local move engine.
//!
//! A diagram is a bottom-to-top sequence of elementary slices acting on a
//! row of strands. Crossings are named by which bottom strand passes over;
//! a left-over crossing of two upward strands is positive. Framing is the
//! blackboard framing, with kinks recording extra full twists.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::categories::ThinCategory;
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn is_up(self) -> bool {
        self == Orient::Up
    }

    pub fn flip(self) -> Self {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }

    pub fn sign(self) -> i64 {
        if self.is_up() {
            1
        } else {
            -1
        }
    }
}

/// Which bottom strand of a crossing passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Left,
    Right,
}

impl Over {
    pub fn flip(self) -> Self {
        match self {
            Over::Left => Over::Right,
            Over::Right => Over::Left,
        }
    }

    fn sign(self) -> i64 {
        match self {
            Over::Left => 1,
            Over::Right => -1,
        }
    }
}

/// An elementary slice. Positions index the strands of the level below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Identity,
    /// Creates two strands at `pos`, `pos + 1`; `left` is the orientation of
    /// the left one.
    Cup { pos: usize, left: Orient },
    /// Joins the strands at `pos`, `pos + 1`, which must be oppositely oriented.
    Cap { pos: usize },
    Cross { pos: usize, over: Over },
    Kink { pos: usize, sign: i8 },
    Coupon { pos: usize, inputs: usize, outputs: Vec<Orient>, value: CycloNum },
}

impl Event {
    /// (position, strands consumed, strands produced)
    pub fn footprint(&self) -> (usize, usize, usize) {
        match self {
            Event::Identity => (0, 0, 0),
            Event::Cup { pos, .. } => (*pos, 0, 2),
            Event::Cap { pos } => (*pos, 2, 0),
            Event::Cross { pos, .. } => (*pos, 2, 2),
            Event::Kink { pos, .. } => (*pos, 1, 1),
            Event::Coupon { pos, inputs, outputs, .. } => (*pos, *inputs, outputs.len()),
        }
    }

    fn shifted(&self, by: usize) -> Event {
        let mut e = self.clone();
        match &mut e {
            Event::Identity => {}
            Event::Cup { pos, .. }
            | Event::Cap { pos }
            | Event::Cross { pos, .. }
            | Event::Kink { pos, .. }
            | Event::Coupon { pos, .. } => *pos += by,
        }
        e
    }

    fn with_pos(&self, p: usize) -> Event {
        let mut e = self.clone();
        match &mut e {
            Event::Identity => {}
            Event::Cup { pos, .. }
            | Event::Cap { pos }
            | Event::Cross { pos, .. }
            | Event::Kink { pos, .. }
            | Event::Coupon { pos, .. } => *pos = p,
        }
        e
    }
}

/// Serialized form of a slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRecord {
    pub event: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Over>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<Orient>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<CycloNum>,
}

impl From<&Event> for SliceRecord {
    fn from(e: &Event) -> Self {
        let mut r = SliceRecord {
            event: String::new(),
            position: None,
            orientation: None,
            over: None,
            sign: None,
            inputs: None,
            outputs: None,
            value: None,
        };
        match e {
            Event::Identity => r.event = "identity".into(),
            Event::Cup { pos, left } => {
                r.event = "cup".into();
                r.position = Some(*pos);
                r.orientation = Some(*left);
            }
            Event::Cap { pos } => {
                r.event = "cap".into();
                r.position = Some(*pos);
            }
            Event::Cross { pos, over } => {
                r.event = "cross".into();
                r.position = Some(*pos);
                r.over = Some(*over);
            }
            Event::Kink { pos, sign } => {
                r.event = "kink".into();
                r.position = Some(*pos);
                r.sign = Some(*sign);
            }
            Event::Coupon { pos, inputs, outputs, value } => {
                r.event = "coupon".into();
                r.position = Some(*pos);
                r.inputs = Some(*inputs);
                r.outputs = Some(outputs.clone());
                r.value = Some(value.clone());
            }
        }
        r
    }
}

impl TryFrom<&SliceRecord> for Event {
    type Error = Error;

    fn try_from(r: &SliceRecord) -> Result<Event> {
        let pos = || r.position.ok_or_else(|| Error::Parse(format!("{} slice needs a position", r.event)));
        Ok(match r.event.as_str() {
            "identity" => Event::Identity,
            "cup" => Event::Cup {
                pos: pos()?,
                left: r.orientation.ok_or_else(|| Error::Parse("cup slice needs an orientation".into()))?,
            },
            "cap" => Event::Cap { pos: pos()? },
            "cross" => Event::Cross {
                pos: pos()?,
                over: r.over.ok_or_else(|| Error::Parse("cross slice needs 'over'".into()))?,
            },
            "kink" => {
                let sign = r.sign.ok_or_else(|| Error::Parse("kink slice needs a sign".into()))?;
                if sign != 1 && sign != -1 {
                    return Err(Error::Parse(format!("kink sign must be +1 or -1, got {}", sign)));
                }
                Event::Kink { pos: pos()?, sign }
            }
            "coupon" => Event::Coupon {
                pos: pos()?,
                inputs: r.inputs.ok_or_else(|| Error::Parse("coupon slice needs 'inputs'".into()))?,
                outputs: r.outputs.clone().ok_or_else(|| Error::Parse("coupon slice needs 'outputs'".into()))?,
                value: r.value.clone().unwrap_or_else(CycloNum::one),
            },
            other => return Err(Error::Parse(format!("unknown slice event '{}'", other))),
        })
    }
}

/// Stable identity of an arc-creating site: a slice uid and a slot. Input
/// strands use the reserved uid `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcKey {
    pub uid: u64,
    pub slot: u32,
}

const INPUT_UID: u64 = u64::MAX;

/// A Morse-sliced oriented tangle diagram.
#[derive(Clone, Debug)]
pub struct SlicedDiagram {
    inputs: Vec<Orient>,
    slices: Vec<Event>,
    uids: Vec<u64>,
    next_uid: u64,
}

impl PartialEq for SlicedDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.inputs == other.inputs && self.slices == other.slices
    }
}

impl Eq for SlicedDiagram {}

impl SlicedDiagram {
    pub fn new(inputs: Vec<Orient>, slices: Vec<Event>) -> Result<Self> {
        let n = slices.len() as u64;
        let d = SlicedDiagram { inputs, slices, uids: (0..n).collect(), next_uid: n };
        d.check()?;
        Ok(d)
    }

    pub fn closed(slices: Vec<Event>) -> Result<Self> {
        let d = Self::new(Vec::new(), slices)?;
        if !d.outputs().is_empty() {
            return Err(Error::Validation(format!("closed diagram ends with {} open strands", d.outputs().len())));
        }
        Ok(d)
    }

    pub fn empty() -> Self {
        SlicedDiagram { inputs: Vec::new(), slices: Vec::new(), uids: Vec::new(), next_uid: 0 }
    }

    /// Rebuilds from (uid, event) pairs, minting uids where absent.
    fn rebuild(&self, inputs: Vec<Orient>, items: Vec<(Option<u64>, Event)>) -> Result<Self> {
        let mut next = self.next_uid;
        let mut uids = Vec::with_capacity(items.len());
        let mut slices = Vec::with_capacity(items.len());
        for (u, e) in items {
            let u = u.unwrap_or_else(|| {
                next += 1;
                next - 1
            });
            uids.push(u);
            slices.push(e);
        }
        let d = SlicedDiagram { inputs, slices, uids, next_uid: next };
        d.check()?;
        Ok(d)
    }

    /// Inserts slices below slice `at`, keeping the identity of existing arcs.
    pub fn insert_slices(&self, at: usize, events: Vec<Event>) -> Result<Self> {
        let mut items = self.items();
        items.splice(at..at, events.into_iter().map(|e| (None, e)));
        self.rebuild(self.inputs.clone(), items)
    }

    /// Uids of the slices, in order.
    pub fn uids(&self) -> &[u64] {
        &self.uids
    }

    fn items(&self) -> Vec<(Option<u64>, Event)> {
        self.uids.iter().zip(&self.slices).map(|(u, e)| (Some(*u), e.clone())).collect()
    }

    fn check(&self) -> Result<()> {
        let mut level: Vec<Orient> = self.inputs.clone();
        for (k, e) in self.slices.iter().enumerate() {
            let (p, consumed, _) = e.footprint();
            if p + consumed > level.len() || (matches!(e, Event::Cup { .. }) && p > level.len()) {
                return Err(Error::Validation(format!(
                    "slice {} ({:?}) does not fit a level of width {}",
                    k,
                    e,
                    level.len()
                )));
            }
            match e {
                Event::Identity => {}
                Event::Cup { pos, left } => {
                    level.insert(*pos, left.flip());
                    level.insert(*pos, *left);
                }
                Event::Cap { pos } => {
                    if level[*pos] == level[pos + 1] {
                        return Err(Error::Validation(format!("slice {}: cap joins equally oriented strands", k)));
                    }
                    level.drain(*pos..pos + 2);
                }
                Event::Cross { pos, .. } => level.swap(*pos, pos + 1),
                Event::Kink { sign, .. } => {
                    if *sign != 1 && *sign != -1 {
                        return Err(Error::Validation(format!("slice {}: kink sign {}", k, sign)));
                    }
                }
                Event::Coupon { pos, inputs, outputs, .. } => {
                    level.splice(*pos..pos + inputs, outputs.iter().copied());
                }
            }
        }
        Ok(())
    }

    pub fn inputs(&self) -> &[Orient] {
        &self.inputs
    }

    pub fn slices(&self) -> &[Event] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty() && self.inputs.is_empty()
    }

    /// Strand orientations at every level; entry k is the level below slice k.
    pub fn levels(&self) -> Vec<Vec<Orient>> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut level = self.inputs.clone();
        out.push(level.clone());
        for e in &self.slices {
            match e {
                Event::Identity | Event::Kink { .. } => {}
                Event::Cup { pos, left } => {
                    level.insert(*pos, left.flip());
                    level.insert(*pos, *left);
                }
                Event::Cap { pos } => {
                    level.drain(*pos..pos + 2);
                }
                Event::Cross { pos, .. } => level.swap(*pos, pos + 1),
                Event::Coupon { pos, inputs, outputs, .. } => {
                    level.splice(*pos..pos + inputs, outputs.iter().copied());
                }
            }
            out.push(level.clone());
        }
        out
    }

    pub fn outputs(&self) -> Vec<Orient> {
        self.levels().pop().unwrap_or_default()
    }

    pub fn records(&self) -> Vec<SliceRecord> {
        self.slices.iter().map(SliceRecord::from).collect()
    }

    pub fn from_records(inputs: Vec<Orient>, records: &[SliceRecord]) -> Result<Self> {
        let slices = records.iter().map(Event::try_from).collect::<Result<Vec<_>>>()?;
        Self::new(inputs, slices)
    }

    /// Side-by-side juxtaposition: `other` to the right of `self`.
    pub fn tensor(&self, other: &SlicedDiagram) -> Result<Self> {
        let shift = self.outputs().len();
        let mut items = self.items();
        items.extend(other.slices.iter().map(|e| (None, e.shifted(shift))));
        let mut inputs = self.inputs.clone();
        inputs.extend(other.inputs.iter().copied());
        self.rebuild(inputs, items)
    }

    /// Stacking: `above` on top of `self`.
    pub fn compose(&self, above: &SlicedDiagram) -> Result<Self> {
        if self.outputs() != above.inputs {
            return Err(Error::Mismatch("outputs of the lower tangle differ from inputs of the upper".into()));
        }
        let mut items = self.items();
        items.extend(above.slices.iter().map(|e| (None, e.clone())));
        self.rebuild(self.inputs.clone(), items)
    }

    pub fn analyze(&self) -> Analysis {
        Analysis::new(self)
    }

    pub fn uid(&self, k: usize) -> u64 {
        self.uids[k]
    }
}

/// A crossing with its arcs. The under strand is conjugated by
/// `label[over_arc]^exp` when passing from `under_in` to `under_out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slice: usize,
    pub over: Over,
    pub over_arc: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub over_comp: usize,
    pub under_comp: usize,
    pub sign: i64,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KinkInfo {
    pub slice: usize,
    pub arc: usize,
    pub comp: usize,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouponInfo {
    pub slice: usize,
    pub inputs: Vec<(Orient, usize)>,
    pub outputs: Vec<(Orient, usize)>,
}

/// One step of a walk around a closed component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkStep {
    /// Passing under crossing `idx` in direction `dir` (+1 upward).
    Under { idx: usize, dir: i64 },
    Kink { idx: usize },
}

/// Arcs, components, crossings and walks of a diagram.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub arc_keys: Vec<Vec<ArcKey>>,
    pub arc_comp: Vec<usize>,
    pub comp_closed: Vec<bool>,
    /// Arc of the first piece of each component.
    pub comp_base: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub kinks: Vec<KinkInfo>,
    pub coupons: Vec<CouponInfo>,
    pub input_arcs: Vec<usize>,
    pub output_arcs: Vec<(Orient, usize)>,
    /// Per slice: arcs created (cup arc, crossing under-out, coupon outputs).
    pub slice_arcs: Vec<Vec<usize>>,
    pub walks: Vec<Option<Vec<WalkStep>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Boundary,
    Partner(usize),
    Through(usize, Option<WalkStep>),
}

struct Piece {
    up: bool,
    arc: usize,
    comp: usize,
    bottom: Link,
    top: Link,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }

    /// Dense class indices ordered by smallest member.
    fn classes(&mut self) -> Vec<usize> {
        let n = self.0.len();
        let mut map = BTreeMap::new();
        let mut out = vec![0; n];
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            let next = map.len();
            *slot = *map.entry(r).or_insert(next);
        }
        out
    }
}

impl Analysis {
    fn new(d: &SlicedDiagram) -> Self {
        let mut arcs = UnionFind(Vec::new());
        let mut comps = UnionFind(Vec::new());
        let mut arc_key_nodes: Vec<ArcKey> = Vec::new();
        let mut pieces: Vec<Piece> = Vec::new();
        // strand = piece index
        let mut level: Vec<usize> = Vec::new();
        let mut crossings_raw = Vec::new();
        let mut kinks_raw = Vec::new();
        let mut coupons_raw = Vec::new();
        let mut slice_arcs_raw: Vec<Vec<usize>> = Vec::new();
        let new_piece = |pieces: &mut Vec<Piece>, up: bool, arc: usize, comp: usize, bottom: Link| {
            pieces.push(Piece { up, arc, comp, bottom, top: Link::Boundary });
            pieces.len() - 1
        };
        let mut input_nodes = Vec::new();
        for (i, o) in d.inputs.iter().enumerate() {
            let a = arcs.add();
            arc_key_nodes.push(ArcKey { uid: INPUT_UID, slot: i as u32 });
            let c = comps.add();
            input_nodes.push(a);
            let p = new_piece(&mut pieces, o.is_up(), a, c, Link::Boundary);
            level.push(p);
        }
        for (k, e) in d.slices.iter().enumerate() {
            let uid = d.uids[k];
            let mut created = Vec::new();
            match e {
                Event::Identity => {}
                Event::Cup { pos, left } => {
                    let a = arcs.add();
                    arc_key_nodes.push(ArcKey { uid, slot: 0 });
                    created.push(a);
                    let c = comps.add();
                    let l = new_piece(&mut pieces, left.is_up(), a, c, Link::Boundary);
                    let r = new_piece(&mut pieces, !left.is_up(), a, c, Link::Boundary);
                    pieces[l].bottom = Link::Partner(r);
                    pieces[r].bottom = Link::Partner(l);
                    level.insert(*pos, r);
                    level.insert(*pos, l);
                }
                Event::Cap { pos } => {
                    let (l, r) = (level[*pos], level[pos + 1]);
                    arcs.union(pieces[l].arc, pieces[r].arc);
                    comps.union(pieces[l].comp, pieces[r].comp);
                    pieces[l].top = Link::Partner(r);
                    pieces[r].top = Link::Partner(l);
                    level.drain(*pos..pos + 2);
                }
                Event::Cross { pos, over } => {
                    let (l, r) = (level[*pos], level[pos + 1]);
                    let (o, u) = match over {
                        Over::Left => (l, r),
                        Over::Right => (r, l),
                    };
                    let na = arcs.add();
                    arc_key_nodes.push(ArcKey { uid, slot: 0 });
                    created.push(na);
                    let idx = crossings_raw.len();
                    let (oup, oarc, ocomp) = (pieces[o].up, pieces[o].arc, pieces[o].comp);
                    let (uup, uarc, ucomp) = (pieces[u].up, pieces[u].arc, pieces[u].comp);
                    let o2 = new_piece(&mut pieces, oup, oarc, ocomp, Link::Through(o, None));
                    pieces[o].top = Link::Through(o2, None);
                    let u2 = new_piece(&mut pieces, uup, na, ucomp, Link::Through(u, Some(WalkStep::Under { idx, dir: -1 })));
                    pieces[u].top = Link::Through(u2, Some(WalkStep::Under { idx, dir: 1 }));
                    let lsign = if pieces[l].up { 1 } else { -1 };
                    let rsign = if pieces[r].up { 1 } else { -1 };
                    let osign = if oup { 1 } else { -1 };
                    crossings_raw.push((k, *over, oarc, uarc, na, ocomp, ucomp, over.sign() * lsign * rsign, osign * over.sign()));
                    match over {
                        Over::Left => {
                            level[*pos] = u2;
                            level[pos + 1] = o2;
                        }
                        Over::Right => {
                            level[*pos] = o2;
                            level[pos + 1] = u2;
                        }
                    }
                }
                Event::Kink { pos, sign } => {
                    let p = level[*pos];
                    let idx = kinks_raw.len();
                    kinks_raw.push((k, pieces[p].arc, pieces[p].comp, i64::from(*sign)));
                    let (up, arc, comp) = (pieces[p].up, pieces[p].arc, pieces[p].comp);
                    let p2 = new_piece(&mut pieces, up, arc, comp, Link::Through(p, Some(WalkStep::Kink { idx })));
                    pieces[p].top = Link::Through(p2, Some(WalkStep::Kink { idx }));
                    level[*pos] = p2;
                }
                Event::Coupon { pos, inputs, outputs, .. } => {
                    let ins: Vec<(bool, usize)> =
                        level[*pos..pos + inputs].iter().map(|&p| (pieces[p].up, pieces[p].arc)).collect();
                    let mut outs = Vec::new();
                    let mut new_pieces = Vec::new();
                    for (j, o) in outputs.iter().enumerate() {
                        let a = arcs.add();
                        arc_key_nodes.push(ArcKey { uid, slot: j as u32 });
                        created.push(a);
                        let c = comps.add();
                        outs.push((o.is_up(), a));
                        new_pieces.push(new_piece(&mut pieces, o.is_up(), a, c, Link::Boundary));
                    }
                    coupons_raw.push((k, ins, outs));
                    level.splice(*pos..pos + inputs, new_pieces);
                }
            }
            slice_arcs_raw.push(created);
        }
        let arc_class = arcs.classes();
        let n_arcs = arc_class.iter().copied().max().map_or(0, |m| m + 1);
        let mut arc_keys = vec![Vec::new(); n_arcs];
        for (node, key) in arc_key_nodes.iter().enumerate() {
            arc_keys[arc_class[node]].push(*key);
        }
        // Components are numbered by their first piece.
        let comp_class_raw = comps.classes();
        let mut comp_map = BTreeMap::new();
        for p in &pieces {
            let raw = comp_class_raw[p.comp];
            let next = comp_map.len();
            comp_map.entry(raw).or_insert(next);
        }
        let comp_of = |node: usize| comp_map[&comp_class_raw[node]];
        let n_comps = comp_map.len();
        let mut arc_comp = vec![0; n_arcs];
        let mut comp_closed = vec![true; n_comps];
        let mut comp_base = vec![usize::MAX; n_comps];
        let mut first_piece = vec![usize::MAX; n_comps];
        for (i, p) in pieces.iter().enumerate() {
            let c = comp_of(p.comp);
            arc_comp[arc_class[p.arc]] = c;
            if p.top == Link::Boundary || p.bottom == Link::Boundary {
                comp_closed[c] = false;
            }
            if first_piece[c] == usize::MAX {
                first_piece[c] = i;
                comp_base[c] = arc_class[p.arc];
            }
        }
        let crossings: Vec<Crossing> = crossings_raw
            .into_iter()
            .map(|(slice, over, oa, ui, uo, oc, uc, sign, exp)| Crossing {
                slice,
                over,
                over_arc: arc_class[oa],
                under_in: arc_class[ui],
                under_out: arc_class[uo],
                over_comp: comp_of(oc),
                under_comp: comp_of(uc),
                sign,
                exp,
            })
            .collect();
        let kinks = kinks_raw
            .into_iter()
            .map(|(slice, a, c, sign)| KinkInfo { slice, arc: arc_class[a], comp: comp_of(c), sign })
            .collect();
        let to_orient = |up: bool| if up { Orient::Up } else { Orient::Down };
        let coupons = coupons_raw
            .into_iter()
            .map(|(slice, ins, outs)| CouponInfo {
                slice,
                inputs: ins.into_iter().map(|(u, a)| (to_orient(u), arc_class[a])).collect(),
                outputs: outs.into_iter().map(|(u, a)| (to_orient(u), arc_class[a])).collect(),
            })
            .collect();
        let output_arcs = level.iter().map(|&p| (to_orient(pieces[p].up), arc_class[pieces[p].arc])).collect();
        let walks = (0..n_comps)
            .map(|c| {
                if !comp_closed[c] {
                    return None;
                }
                let start = first_piece[c];
                let mut steps = Vec::new();
                let (mut p, mut up) = (start, pieces[start].up);
                loop {
                    let link = if up { pieces[p].top } else { pieces[p].bottom };
                    match link {
                        Link::Boundary => return None,
                        Link::Partner(q) => {
                            p = q;
                            up = !up;
                        }
                        Link::Through(q, step) => {
                            if let Some(s) = step {
                                steps.push(s);
                            }
                            p = q;
                        }
                    }
                    if p == start && up == pieces[start].up {
                        break;
                    }
                }
                Some(steps)
            })
            .collect();
        Analysis {
            arc_keys,
            arc_comp,
            comp_closed,
            comp_base,
            crossings,
            kinks,
            coupons,
            input_arcs: input_nodes.iter().map(|&a| arc_class[a]).collect(),
            output_arcs,
            slice_arcs: slice_arcs_raw.into_iter().map(|v| v.into_iter().map(|a| arc_class[a]).collect()).collect(),
            walks,
        }
    }

    pub fn n_arcs(&self) -> usize {
        self.arc_keys.len()
    }

    pub fn n_comps(&self) -> usize {
        self.comp_closed.len()
    }

    /// Blackboard framing: signed self-crossings plus kinks.
    pub fn writhe(&self, comp: usize) -> i64 {
        let x: i64 =
            self.crossings.iter().filter(|c| c.over_comp == comp && c.under_comp == comp).map(|c| c.sign).sum();
        let k: i64 = self.kinks.iter().filter(|k| k.comp == comp).map(|k| k.sign).sum();
        x + k
    }

    /// Linking matrix over the listed components with framings on the diagonal.
    pub fn linking_matrix(&self, comps: &[usize]) -> Vec<Vec<i64>> {
        let idx: BTreeMap<usize, usize> = comps.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = comps.len();
        let mut m = vec![vec![0i64; n]; n];
        for x in &self.crossings {
            if x.over_comp != x.under_comp {
                if let (Some(&i), Some(&j)) = (idx.get(&x.over_comp), idx.get(&x.under_comp)) {
                    m[i][j] += x.sign;
                    m[j][i] += x.sign;
                }
            }
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        for (i, &c) in comps.iter().enumerate() {
            m[i][i] = self.writhe(c);
        }
        m
    }

    pub fn arcs_of(&self, comp: usize) -> Vec<usize> {
        (0..self.n_arcs()).filter(|&a| self.arc_comp[a] == comp).collect()
    }

    pub fn arc_of_key(&self) -> BTreeMap<ArcKey, usize> {
        let mut m = BTreeMap::new();
        for (a, ks) in self.arc_keys.iter().enumerate() {
            for k in ks {
                m.insert(*k, a);
            }
        }
        m
    }
}

fn conjugator(g: &FiniteGroup, x: &Crossing, labels: &[usize]) -> usize {
    g.pow(labels[x.over_arc], x.exp)
}

/// Longitude image of a closed component under blackboard framing.
pub fn longitude(an: &Analysis, g: &FiniteGroup, labels: &[usize], comp: usize) -> Option<usize> {
    let walk = an.walks[comp].as_ref()?;
    let mut acc = g.unit();
    for step in walk {
        let h = match *step {
            WalkStep::Under { idx, dir } => {
                let x = &an.crossings[idx];
                g.pow(conjugator(g, x, labels), dir)
            }
            WalkStep::Kink { idx } => {
                let k = &an.kinks[idx];
                g.pow(labels[k.arc], k.sign)
            }
        };
        acc = g.mul(h, acc);
    }
    Some(acc)
}

/// Fills unknown labels from known ones through crossing relations and
/// one-to-one coupons. Returns a witness on conflict.
pub fn propagate_labels(an: &Analysis, g: &FiniteGroup, known: &mut [Option<usize>]) -> std::result::Result<(), String> {
    loop {
        let mut changed = false;
        for (i, x) in an.crossings.iter().enumerate() {
            let Some(ov) = known[x.over_arc] else { continue };
            let h = g.pow(ov, x.exp);
            match (known[x.under_in], known[x.under_out]) {
                (Some(a), Some(b)) => {
                    if g.conj(h, a) != b {
                        return Err(format!("crossing {} (slice {})", i, x.slice));
                    }
                }
                (Some(a), None) => {
                    known[x.under_out] = Some(g.conj(h, a));
                    changed = true;
                }
                (None, Some(b)) => {
                    known[x.under_in] = Some(g.conj(g.inv(h), b));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        for c in &an.coupons {
            if let ([(oi, ai)], [(oo, ao)]) = (c.inputs.as_slice(), c.outputs.as_slice()) {
                let map = |x: usize| if oi == oo { x } else { g.inv(x) };
                match (known[*ai], known[*ao]) {
                    (Some(a), Some(b)) => {
                        if map(a) != b {
                            return Err(format!("coupon at slice {}", c.slice));
                        }
                    }
                    (Some(a), None) => {
                        known[*ao] = Some(map(a));
                        changed = true;
                    }
                    (None, Some(b)) => {
                        known[*ai] = Some(map(b));
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Completes a partial labeling, branching over group elements where the
/// relations leave freedom; returns the first completion accepted by `accept`.
pub fn solve_labels(
    an: &Analysis,
    g: &FiniteGroup,
    partial: &[Option<usize>],
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let mut known = partial.to_vec();
    propagate_labels(an, g, &mut known).ok()?;
    match known.iter().position(Option::is_none) {
        None => {
            let full: Vec<usize> = known.into_iter().map(|x| x.expect("complete")).collect();
            accept(&full).then_some(full)
        }
        Some(i) => {
            for a in g.elements() {
                known[i] = Some(a);
                if let Some(s) = solve_labels(an, g, &known, accept) {
                    return Some(s);
                }
            }
            None
        }
    }
}

/// All complete labelings extending `partial` (bounded by `limit`).
pub fn all_labelings(an: &Analysis, g: &FiniteGroup, partial: &[Option<usize>], limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut collect = |l: &[usize]| {
        out.push(l.to_vec());
        false
    };
    fn rec(
        an: &Analysis,
        g: &FiniteGroup,
        partial: &[Option<usize>],
        sink: &mut dyn FnMut(&[usize]) -> bool,
        count: &mut usize,
        limit: usize,
    ) {
        if *count >= limit {
            return;
        }
        let mut known = partial.to_vec();
        if propagate_labels(an, g, &mut known).is_err() {
            return;
        }
        match known.iter().position(Option::is_none) {
            None => {
                *count += 1;
                let full: Vec<usize> = known.into_iter().map(|x| x.expect("complete")).collect();
                sink(&full);
            }
            Some(i) => {
                for a in g.elements() {
                    known[i] = Some(a);
                    rec(an, g, &known, sink, count, limit);
                }
            }
        }
    }
    let mut count = 0;
    rec(an, g, partial, &mut collect, &mut count, limit);
    out
}

/// Fills unknown colors from known ones along crossings and one-to-one coupons.
pub fn propagate_colors(
    an: &Analysis,
    cat: &ThinCategory,
    labels: &[usize],
    known: &mut [Option<usize>],
) -> std::result::Result<(), String> {
    let g = cat.group();
    loop {
        let mut changed = false;
        for (i, x) in an.crossings.iter().enumerate() {
            let h = conjugator(g, x, labels);
            match (known[x.under_in], known[x.under_out]) {
                (Some(a), Some(b)) => {
                    if cat.act(h, a) != b {
                        return Err(format!("crossing {} (slice {})", i, x.slice));
                    }
                }
                (Some(a), None) => {
                    known[x.under_out] = Some(cat.act(h, a));
                    changed = true;
                }
                (None, Some(b)) => {
                    known[x.under_in] = Some(cat.act(g.inv(h), b));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        for c in &an.coupons {
            if let ([(oi, ai)], [(oo, ao)]) = (c.inputs.as_slice(), c.outputs.as_slice()) {
                let map = |x: usize| if oi == oo { x } else { cat.dual(x) };
                match (known[*ai], known[*ao]) {
                    (Some(a), Some(b)) => {
                        if map(a) != b {
                            return Err(format!("coupon at slice {}", c.slice));
                        }
                    }
                    (Some(a), None) => {
                        known[*ao] = Some(map(a));
                        changed = true;
                    }
                    (None, Some(b)) => {
                        known[*ai] = Some(map(b));
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Label relations only: meridian conjugation at crossings and grading at coupons.
pub fn check_labels(an: &Analysis, g: &FiniteGroup, labels: &[usize]) -> Report {
    let mut r = Report::new("labeling");
    let cx = r.begin("crossing conjugation condition");
    let cp = r.begin("coupon grading condition");
    let rng = r.begin("labels are group elements");
    let in_range = labels.len() == an.n_arcs() && labels.iter().all(|&x| x < g.order());
    r.record(rng, in_range, || format!("{} labels for {} arcs", labels.len(), an.n_arcs()));
    if !in_range {
        return r;
    }
    for (i, x) in an.crossings.iter().enumerate() {
        let h = conjugator(g, x, labels);
        r.record(cx, g.conj(h, labels[x.under_in]) == labels[x.under_out], || {
            format!("crossing {} at slice {}", i, x.slice)
        });
    }
    let lv = |(o, a): &(Orient, usize)| if o.is_up() { labels[*a] } else { g.inv(labels[*a]) };
    for c in &an.coupons {
        let pin = c.inputs.iter().map(lv).fold(g.unit(), |acc, x| g.mul(acc, x));
        let pout = c.outputs.iter().map(lv).fold(g.unit(), |acc, x| g.mul(acc, x));
        r.record(cp, pin == pout, || format!("coupon at slice {}", c.slice));
    }
    r
}

/// Full validation of a colored labeling: label relations, colors in the
/// component of their labels, the color rule at crossings, coupon objects,
/// and the longitude image of every closed component (reported, not required).
pub fn validate_labeling(an: &Analysis, cat: &ThinCategory, labels: &[usize], colors: &[usize]) -> Report {
    let g = cat.group();
    let mut r = check_labels(an, g, labels);
    let grade = r.begin("arc colors lie in the component of their label");
    let rule = r.begin("crossing color condition");
    let coup = r.begin("coupon source and target objects agree");
    if labels.len() != an.n_arcs() || colors.len() != an.n_arcs() || colors.iter().any(|&c| c >= cat.len()) {
        r.record(grade, false, || format!("{} colors for {} arcs", colors.len(), an.n_arcs()));
        return r;
    }
    for a in 0..an.n_arcs() {
        r.record(grade, cat.grade(colors[a]) == labels[a], || format!("arc {}", a));
    }
    for (i, x) in an.crossings.iter().enumerate() {
        let h = conjugator(g, x, labels);
        r.record(rule, cat.act(h, colors[x.under_in]) == colors[x.under_out], || {
            format!("crossing {} at slice {}", i, x.slice)
        });
    }
    let obj = |(o, a): &(Orient, usize)| if o.is_up() { colors[*a] } else { cat.dual(colors[*a]) };
    for c in &an.coupons {
        let ins: Vec<usize> = c.inputs.iter().map(obj).collect();
        let outs: Vec<usize> = c.outputs.iter().map(obj).collect();
        let ok = match (cat.tensor_all(&ins), cat.tensor_all(&outs)) {
            (Ok(a), Ok(b)) => a == b || a.is_none() || b.is_none(),
            _ => false,
        };
        r.record(coup, ok, || format!("coupon at slice {}", c.slice));
    }
    r
}

/// Source or target boundary triple (orientation, label, color).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub orientation: Orient,
    pub label: usize,
    pub color: usize,
}

/// Value of the functor on a colored tangle between simple products: the
/// scalar multiple of the canonical morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleValue {
    pub scalar: CycloNum,
    pub source: Vec<Boundary>,
    pub target: Vec<Boundary>,
}

fn inv(x: &CycloNum) -> CycloNum {
    x.inv().expect("nonzero category constant")
}

fn require_evaluable(cat: &ThinCategory) -> Result<()> {
    if !cat.is_strict() {
        return Err(Error::Unsupported("evaluation requires a strict category (associator identically 1)".into()));
    }
    cat.unit()?;
    Ok(())
}

fn missing(what: &str, x: usize, y: usize) -> Error {
    Error::Validation(format!("{} undefined for simples {} and {}", what, x, y))
}

/// Scalar of the functor on a validated labeling, without re-validation.
pub fn evaluate_raw(d: &SlicedDiagram, an: &Analysis, cat: &ThinCategory, colors: &[usize]) -> Result<CycloNum> {
    let obj = |(o, a): (Orient, usize)| if o.is_up() { colors[a] } else { cat.dual(colors[a]) };
    let mut level: Vec<(Orient, usize)> = d.inputs.iter().copied().zip(an.input_arcs.iter().copied()).collect();
    let mut acc = CycloNum::one();
    let mut nx = 0;
    let mut nc = 0;
    if cat.tensor_all(&level.iter().map(|&s| obj(s)).collect::<Vec<_>>())?.is_none() {
        return Ok(CycloNum::zero());
    }
    for (k, e) in d.slices.iter().enumerate() {
        match e {
            Event::Identity => {}
            Event::Cup { pos, left } => {
                let a = an.slice_arcs[k][0];
                let u = colors[a];
                let ud = cat.dual(u);
                let w = if left.is_up() {
                    cat.bval(u).clone()
                } else {
                    let c = cat.braid(ud, u).ok_or_else(|| missing("braiding", ud, u))?;
                    cat.bval(u) * inv(c) * inv(cat.twist(u))
                };
                acc = acc * w;
                level.insert(*pos, (left.flip(), a));
                level.insert(*pos, (*left, a));
            }
            Event::Cap { pos } => {
                let (o, a) = level[*pos];
                let u = colors[a];
                let w = if o.is_up() {
                    let ud = cat.dual(u);
                    let c = cat.braid(u, ud).ok_or_else(|| missing("braiding", u, ud))?;
                    cat.twist(u) * c * cat.dval(u)
                } else {
                    cat.dval(u).clone()
                };
                acc = acc * w;
                level.drain(*pos..pos + 2);
            }
            Event::Cross { pos, over } => {
                let x = &an.crossings[nx];
                nx += 1;
                let (l, r) = (level[*pos], level[pos + 1]);
                let (xo, yo) = (obj(l), obj(r));
                let w = match over {
                    Over::Left => cat.braid(xo, yo).ok_or_else(|| missing("braiding", xo, yo))?.clone(),
                    Over::Right => {
                        let moved = cat.act(cat.group().inv(cat.grade(yo)), xo);
                        inv(cat.braid(yo, moved).ok_or_else(|| missing("braiding", yo, moved))?)
                    }
                };
                acc = acc * w;
                match over {
                    Over::Left => {
                        level[*pos] = (r.0, x.under_out);
                        level[pos + 1] = l;
                    }
                    Over::Right => {
                        level[*pos] = r;
                        level[pos + 1] = (l.0, x.under_out);
                    }
                }
            }
            Event::Kink { pos, sign } => {
                let u = colors[level[*pos].1];
                acc = acc * cat.twist(u).pow(i64::from(*sign))?;
            }
            Event::Coupon { pos, inputs, outputs, value } => {
                let c = &an.coupons[nc];
                nc += 1;
                acc = acc * value;
                level.splice(*pos..pos + inputs, outputs.iter().copied().zip(c.outputs.iter().map(|p| p.1)));
            }
        }
        if acc.is_zero() {
            return Ok(acc);
        }
        if cat.tensor_all(&level.iter().map(|&s| obj(s)).collect::<Vec<_>>())?.is_none() {
            return Ok(CycloNum::zero());
        }
    }
    Ok(acc)
}

/// The functor on a colored tangle diagram. Refuses non-strict categories
/// and labelings failing validation.
pub fn evaluate_tangle(d: &SlicedDiagram, cat: &ThinCategory, labels: &[usize], colors: &[usize]) -> Result<TangleValue> {
    require_evaluable(cat)?;
    let an = d.analyze();
    let rep = validate_labeling(&an, cat, labels, colors);
    if !rep.passed() {
        return Err(Error::Validation(format!("invalid labeling:\n{}", rep)));
    }
    let scalar = evaluate_raw(d, &an, cat, colors)?;
    let bd = |(o, a): &(Orient, usize)| Boundary { orientation: *o, label: labels[*a], color: colors[*a] };
    let source = d.inputs.iter().zip(&an.input_arcs).map(|(o, a)| bd(&(*o, *a))).collect();
    let target = an.output_arcs.iter().map(bd).collect();
    Ok(TangleValue { scalar, source, target })
}

/// Scalar value of a closed colored diagram.
pub fn evaluate_closed(d: &SlicedDiagram, cat: &ThinCategory, labels: &[usize], colors: &[usize]) -> Result<CycloNum> {
    if !d.inputs.is_empty() || !d.outputs().is_empty() {
        return Err(Error::Validation("diagram is not closed".into()));
    }
    Ok(evaluate_tangle(d, cat, labels, colors)?.scalar)
}

/// Colors of every arc of the given components, each seeded at its base arc
/// and propagated; fixed colors elsewhere.
pub fn spread_colors(
    an: &Analysis,
    cat: &ThinCategory,
    labels: &[usize],
    seeds: &[(usize, usize)],
    fixed: &[Option<usize>],
) -> std::result::Result<Vec<usize>, String> {
    let mut known = fixed.to_vec();
    for &(comp, color) in seeds {
        let base = an.comp_base[comp];
        if let Some(old) = known[base] {
            if old != color {
                return Err(format!("component {} already colored", comp));
            }
        }
        known[base] = Some(color);
    }
    propagate_colors(an, cat, labels, &mut known)?;
    known
        .iter()
        .enumerate()
        .map(|(a, c)| c.ok_or_else(|| format!("arc {} has no color", a)))
        .collect()
}

/// Σ over colorings of the listed components by simples of their base label,
/// weighted by dimensions (canonical colors), of the functor value.
pub fn canonical_sum(
    d: &SlicedDiagram,
    an: &Analysis,
    cat: &ThinCategory,
    labels: &[usize],
    canonical: &[usize],
    fixed: &[Option<usize>],
) -> Result<CycloNum> {
    require_evaluable(cat)?;
    let rep = check_labels(an, cat.group(), labels);
    if !rep.passed() {
        return Err(Error::Validation(format!("invalid labeling:\n{}", rep)));
    }
    let choices: Vec<Vec<usize>> = canonical.iter().map(|&c| cat.simples_of(labels[an.comp_base[c]])).collect();
    let dims: Vec<CycloNum> = (0..cat.len()).map(|s| cat.dim(s)).collect::<Result<_>>()?;
    let mut total = CycloNum::zero();
    let mut idx = vec![0usize; canonical.len()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(total);
    }
    loop {
        let seeds: Vec<(usize, usize)> = canonical.iter().zip(&idx).enumerate().map(|(k, (&c, &i))| (c, choices[k][i])).collect();
        let colors = spread_colors(an, cat, labels, &seeds, fixed).map_err(Error::Validation)?;
        let w: CycloNum = seeds.iter().map(|&(_, s)| dims[s].clone()).product();
        let v = evaluate_raw(d, an, cat, &colors)?;
        total = total + w * v;
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

/// Carries a labeling across an edit: arcs keeping a key outside `touched`
/// keep their labels and colors; the rest are propagated.
pub fn carry_labeling(
    old: &Analysis,
    labels: &[usize],
    colors: Option<&[usize]>,
    new: &Analysis,
    touched: &BTreeSet<u64>,
    renames: &BTreeMap<ArcKey, ArcKey>,
    cat: &ThinCategory,
) -> Result<(Vec<usize>, Option<Vec<usize>>)> {
    let g = cat.group();
    let old_map = old.arc_of_key();
    let mut kl: Vec<Option<usize>> = vec![None; new.n_arcs()];
    let mut kc: Vec<Option<usize>> = vec![None; new.n_arcs()];
    for (a, keys) in new.arc_keys.iter().enumerate() {
        for k in keys {
            if touched.contains(&k.uid) {
                continue;
            }
            let k = renames.get(k).copied().unwrap_or(*k);
            if let Some(&oa) = old_map.get(&k) {
                kl[a] = Some(labels[oa]);
                if let Some(c) = colors {
                    kc[a] = Some(c[oa]);
                }
            }
        }
    }
    let mut ok_check = |l: &[usize]| check_labels(new, g, l).passed();
    let labels2 = solve_labels(new, g, &kl, &mut ok_check)
        .ok_or_else(|| Error::Validation("labeling does not extend across the edit".into()))?;
    let colors2 = match colors {
        None => None,
        Some(_) => {
            propagate_colors(new, cat, &labels2, &mut kc).map_err(|w| Error::Validation(format!("color conflict at {}", w)))?;
            Some(
                kc.iter()
                    .enumerate()
                    .map(|(a, c)| c.ok_or_else(|| Error::Validation(format!("arc {} left uncolored", a))))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    Ok((labels2, colors2))
}

/// A colored π-tangle: diagram, labels and colors per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTangle {
    pub diagram: SlicedDiagram,
    pub labels: Vec<usize>,
    pub colors: Vec<usize>,
}

impl ColoredTangle {
    /// Builds a colored tangle from per-component base labels and colors,
    /// propagating along crossings.
    pub fn from_seeds(diagram: SlicedDiagram, cat: &ThinCategory, seeds: &[(usize, usize)]) -> Result<Self> {
        let an = diagram.analyze();
        let g = cat.group();
        let mut kl = vec![None; an.n_arcs()];
        let mut kc = vec![None; an.n_arcs()];
        for &(comp, color) in seeds {
            if comp >= an.n_comps() {
                return Err(Error::Validation(format!("no component {}", comp)));
            }
            kl[an.comp_base[comp]] = Some(cat.grade(color));
            kc[an.comp_base[comp]] = Some(color);
        }
        let mut accept = |l: &[usize]| check_labels(&an, g, l).passed();
        let labels = solve_labels(&an, g, &kl, &mut accept)
            .ok_or_else(|| Error::Validation("seed labels admit no consistent labeling".into()))?;
        propagate_colors(&an, cat, &labels, &mut kc).map_err(|w| Error::Validation(format!("color conflict at {}", w)))?;
        let colors = kc
            .iter()
            .enumerate()
            .map(|(a, c)| c.ok_or_else(|| Error::Validation(format!("arc {} not reached by seeds", a))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoredTangle { diagram, labels, colors })
    }

    pub fn validate(&self, cat: &ThinCategory) -> Report {
        validate_labeling(&self.diagram.analyze(), cat, &self.labels, &self.colors)
    }

    pub fn evaluate(&self, cat: &ThinCategory) -> Result<TangleValue> {
        evaluate_tangle(&self.diagram, cat, &self.labels, &self.colors)
    }

    /// Applies a local move and extends the labeling.
    pub fn apply(&self, mv: &Move, cat: &ThinCategory) -> Result<ColoredTangle> {
        let (d2, touched) = mv.apply(&self.diagram)?;
        let old = self.diagram.analyze();
        let new = d2.analyze();
        let (labels, colors) =
            carry_labeling(&old, &self.labels, Some(&self.colors), &new, &touched, &BTreeMap::new(), cat)?;
        let out = ColoredTangle { diagram: d2, labels, colors: colors.expect("colors carried") };
        let rep = out.validate(cat);
        if !rep.passed() {
            return Err(Error::Validation(format!("move produced an invalid labeling:\n{}", rep)));
        }
        Ok(out)
    }
}

/// Trace of an endomorphism tangle with one input and one output: the value
/// of its right closure.
pub fn closure_trace(t: &ColoredTangle, cat: &ThinCategory) -> Result<CycloNum> {
    let d = &t.diagram;
    let outs = d.outputs();
    if d.inputs.len() != 1 || outs.len() != 1 || d.inputs[0] != outs[0] {
        return Err(Error::Validation("closure needs exactly one input and one output of equal orientation".into()));
    }
    let an = d.analyze();
    if t.labels[an.input_arcs[0]] != t.labels[an.output_arcs[0].1] || t.colors[an.input_arcs[0]] != t.colors[an.output_arcs[0].1]
    {
        return Err(Error::Validation("source and target of the tangle differ".into()));
    }
    let o = d.inputs[0];
    let mut items: Vec<(Option<u64>, Event)> = vec![(None, Event::Cup { pos: 0, left: o })];
    items.extend(d.items());
    items.push((None, Event::Cap { pos: 0 }));
    let closed = d.rebuild(Vec::new(), items)?;
    let cup_uid = closed.uids[0];
    let new = closed.analyze();
    let renames = BTreeMap::from([(ArcKey { uid: cup_uid, slot: 0 }, ArcKey { uid: INPUT_UID, slot: 0 })]);
    let (labels, colors) =
        carry_labeling(&an, &t.labels, Some(&t.colors), &new, &BTreeSet::new(), &renames, cat)?;
    evaluate_closed(&closed, cat, &labels, &colors.expect("colors"))
}

/// Reverses the orientation of a closed component of a diagram. Arc
/// structure and keys are unchanged.
pub fn reverse_component(d: &SlicedDiagram, comp: usize) -> Result<SlicedDiagram> {
    let an = d.analyze();
    if comp >= an.n_comps() || !an.comp_closed[comp] {
        return Err(Error::Validation(format!("component {} is not a closed circle", comp)));
    }
    let items: Vec<(Option<u64>, Event)> = d
        .items()
        .into_iter()
        .enumerate()
        .map(|(k, (u, e))| match e {
            Event::Cup { pos, left } if an.arc_comp[an.slice_arcs[k][0]] == comp => {
                (u, Event::Cup { pos, left: left.flip() })
            }
            other => (u, other),
        })
        .collect();
    d.rebuild(d.inputs.clone(), items)
}

/// Reverses the orientation of a closed component and dualizes its colors.
pub fn transform_reverse_dual(t: &ColoredTangle, comp: usize, cat: &ThinCategory) -> Result<ColoredTangle> {
    let an = t.diagram.analyze();
    if comp >= an.n_comps() || !an.comp_closed[comp] {
        return Err(Error::Validation(format!("component {} is not a closed circle", comp)));
    }
    let g = cat.group();
    let d2 = reverse_component(&t.diagram, comp)?;
    let new = d2.analyze();
    let mut labels = t.labels.clone();
    let mut colors = t.colors.clone();
    for a in 0..an.n_arcs() {
        if an.arc_comp[a] == comp {
            labels[a] = g.inv(labels[a]);
            colors[a] = cat.dual(colors[a]);
        }
    }
    // Arc structure is unchanged; map by keys to be safe.
    let old_map = an.arc_of_key();
    let l2: Vec<usize> = new.arc_keys.iter().map(|ks| labels[old_map[&ks[0]]]).collect();
    let c2: Vec<usize> = new.arc_keys.iter().map(|ks| colors[old_map[&ks[0]]]).collect();
    Ok(ColoredTangle { diagram: d2, labels: l2, colors: c2 })
}

/// Replaces a closed component colored U = U₁ ⊗ U₂ by two parallel copies
/// colored U₁ and U₂ (U₁ on the left where the component runs upward).
pub fn transform_double(t: &ColoredTangle, comp: usize, u1: usize, u2: usize, cat: &ThinCategory) -> Result<ColoredTangle> {
    let d = &t.diagram;
    let an = d.analyze();
    if comp >= an.n_comps() || !an.comp_closed[comp] {
        return Err(Error::Validation(format!("component {} is not a closed circle", comp)));
    }
    let base = an.comp_base[comp];
    if cat.tensor(u1, u2) != Some(t.colors[base]) {
        return Err(Error::Validation(format!(
            "{} (x) {} is not the color {} of the component",
            cat.label(u1),
            cat.label(u2),
            cat.label(t.colors[base])
        )));
    }
    if an.coupons.iter().any(|c| c.inputs.iter().chain(&c.outputs).any(|(_, a)| an.arc_comp[*a] == comp)) {
        return Err(Error::Unsupported("doubling a component attached to coupons".into()));
    }
    // Track which strands of each level belong to the component.
    let mut in_comp: Vec<bool> = an.input_arcs.iter().map(|&a| an.arc_comp[a] == comp).collect();
    let mut items: Vec<Event> = Vec::new();
    let mut nx = 0;
    let newpos = |flags: &[bool], p: usize| -> usize { p + flags[..p].iter().filter(|&&f| f).count() };
    let levels = d.levels();
    for (k, e) in d.slices.iter().enumerate() {
        let lv = &levels[k];
        match e {
            Event::Identity => items.push(Event::Identity),
            Event::Cup { pos, left } => {
                let mine = an.arc_comp[an.slice_arcs[k][0]] == comp;
                let q = newpos(&in_comp, *pos);
                if mine {
                    items.push(Event::Cup { pos: q, left: *left });
                    items.push(Event::Cup { pos: q + 1, left: *left });
                } else {
                    items.push(Event::Cup { pos: q, left: *left });
                }
                in_comp.insert(*pos, mine);
                in_comp.insert(*pos, mine);
            }
            Event::Cap { pos } => {
                let q = newpos(&in_comp, *pos);
                if in_comp[*pos] {
                    items.push(Event::Cap { pos: q + 1 });
                    items.push(Event::Cap { pos: q });
                } else {
                    items.push(Event::Cap { pos: q });
                }
                in_comp.drain(*pos..pos + 2);
            }
            Event::Cross { pos, over } => {
                let x = &an.crossings[nx];
                nx += 1;
                let _ = x;
                let q = newpos(&in_comp, *pos);
                let (dl, dr) = (in_comp[*pos], in_comp[pos + 1]);
                let o = *over;
                let seq: Vec<usize> = match (dl, dr, o) {
                    (false, false, _) => vec![q],
                    (true, false, Over::Left) | (true, false, Over::Right) => vec![q + 1, q],
                    (false, true, _) => vec![q, q + 1],
                    (true, true, Over::Left) => vec![q + 1, q + 2, q, q + 1],
                    (true, true, Over::Right) => vec![q + 1, q, q + 2, q + 1],
                };
                for p in seq {
                    items.push(Event::Cross { pos: p, over: o });
                }
                in_comp.swap(*pos, pos + 1);
            }
            Event::Kink { pos, sign } => {
                let q = newpos(&in_comp, *pos);
                if in_comp[*pos] {
                    let o = if *sign > 0 { Over::Left } else { Over::Right };
                    items.push(Event::Cross { pos: q, over: o });
                    items.push(Event::Cross { pos: q, over: o });
                    items.push(Event::Kink { pos: q, sign: *sign });
                    items.push(Event::Kink { pos: q + 1, sign: *sign });
                } else {
                    items.push(Event::Kink { pos: q, sign: *sign });
                }
            }
            Event::Coupon { pos, inputs, outputs, value } => {
                let q = newpos(&in_comp, *pos);
                items.push(Event::Coupon { pos: q, inputs: *inputs, outputs: outputs.clone(), value: value.clone() });
                in_comp.splice(*pos..pos + inputs, outputs.iter().map(|_| false));
            }
        }
        let _ = lv;
    }
    let mut inputs = Vec::new();
    for (i, o) in d.inputs.iter().enumerate() {
        inputs.push(*o);
        if an.arc_comp[an.input_arcs[i]] == comp {
            inputs.push(*o);
        }
    }
    let d2 = SlicedDiagram::new(inputs, items)?;
    let new = d2.analyze();
    // Seed the two copies: their base arcs come from the component's first cup.
    let g = cat.group();
    let mut kl: Vec<Option<usize>> = vec![None; new.n_arcs()];
    let mut kc: Vec<Option<usize>> = vec![None; new.n_arcs()];
    // Other components keep labels through keys of untouched-type sites; since
    // slices were renumbered, seed every other component at its base arc.
    let old_comps: Vec<usize> = (0..an.n_comps()).filter(|&c| c != comp).collect();
    // Components of the new diagram in order of first piece correspond to the
    // old ones with the doubled component split into two consecutive entries.
    let mut map = Vec::new();
    for c in 0..an.n_comps() {
        if c == comp {
            map.push((c, 0));
            map.push((c, 1));
        } else {
            map.push((c, 0));
        }
    }
    if map.len() != new.n_comps() {
        return Err(Error::Validation("doubling produced an unexpected component structure".into()));
    }
    let _ = old_comps;
    // The first piece of the doubled component is its first cup; the outer
    // copy is created first and carries U₁ when the cup's left strand is up.
    let first_cup_left_up = {
        let k = (0..d.len())
            .find(|&k| matches!(d.slices[k], Event::Cup { .. }) && an.arc_comp[an.slice_arcs[k][0]] == comp)
            .ok_or_else(|| Error::Validation("component has no cup".into()))?;
        matches!(d.slices[k], Event::Cup { left: Orient::Up, .. })
    };
    let (outer, inner) = if first_cup_left_up { (u1, u2) } else { (u2, u1) };
    for (nc, &(oc, copy)) in map.iter().enumerate() {
        let b = new.comp_base[nc];
        if oc == comp {
            let u = if copy == 0 { outer } else { inner };
            kl[b] = Some(cat.grade(u));
            kc[b] = Some(u);
        } else {
            let ob = an.comp_base[oc];
            kl[b] = Some(t.labels[ob]);
            kc[b] = Some(t.colors[ob]);
        }
    }
    let mut accept = |l: &[usize]| check_labels(&new, g, l).passed();
    let labels = solve_labels(&new, g, &kl, &mut accept)
        .ok_or_else(|| Error::Validation("doubled labeling is inconsistent".into()))?;
    propagate_colors(&new, cat, &labels, &mut kc).map_err(|w| Error::Validation(format!("color conflict at {}", w)))?;
    let colors = kc.into_iter().map(|c| c.expect("colored")).collect();
    Ok(ColoredTangle { diagram: d2, labels, colors })
}

/// Local moves. Each preserves the framed isotopy class of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Insert a kink pair of opposite signs on strand `pos` below slice `at`.
    KinkPairInsert { at: usize, pos: usize },
    KinkPairRemove { at: usize },
    /// Replace the kink at slice `at` by an honest curl on the given side.
    KinkToCurl { at: usize, right_side: bool },
    /// Replace a three-slice curl starting at `at` by a kink.
    CurlToKink { at: usize },
    /// Insert two canceling crossings on strands `pos`, `pos + 1`.
    R2Insert { at: usize, pos: usize, over: Over },
    R2Remove { at: usize },
    /// Braid relation on the three crossings starting at `at`.
    R3 { at: usize },
    /// Insert a zigzag on strand `pos` below slice `at`.
    ZigzagInsert { at: usize, pos: usize, right_side: bool },
    ZigzagRemove { at: usize },
    /// Move the kink or one-to-one coupon at `at` across the adjacent crossing at `at + 1` (or from above).
    SlideThrough { at: usize },
    /// Exchange two adjacent slices with disjoint supports.
    Commute { at: usize },
}

impl Move {
    /// The rewritten diagram and the uids of slices removed or created.
    pub fn apply(&self, d: &SlicedDiagram) -> Result<(SlicedDiagram, BTreeSet<u64>)> {
        let levels = d.levels();
        let mut items = d.items();
        let mut touched = BTreeSet::new();
        let bad = |why: &str| Err(Error::Pattern(format!("{:?}: {}", self, why)));
        let width = |k: usize| levels[k].len();
        match *self {
            Move::KinkPairInsert { at, pos } => {
                if at > d.len() || pos >= width(at) {
                    return bad("no such strand");
                }
                items.splice(
                    at..at,
                    [(None, Event::Kink { pos, sign: 1 }), (None, Event::Kink { pos, sign: -1 })],
                );
            }
            Move::KinkPairRemove { at } => match (d.slices.get(at), d.slices.get(at + 1)) {
                (Some(Event::Kink { pos: p, sign: s }), Some(Event::Kink { pos: q, sign: t })) if p == q && s == &-t => {
                    touched.extend([d.uids[at], d.uids[at + 1]]);
                    items.drain(at..at + 2);
                }
                _ => return bad("no canceling kink pair"),
            },
            Move::KinkToCurl { at, right_side } => {
                let Some(Event::Kink { pos, sign }) = d.slices.get(at).cloned() else {
                    return bad("no kink");
                };
                let o = levels[at][pos];
                let over = if sign > 0 { Over::Left } else { Over::Right };
                touched.insert(d.uids[at]);
                let curl = if right_side {
                    vec![
                        (None, Event::Cup { pos: pos + 1, left: o }),
                        (None, Event::Cross { pos, over }),
                        (None, Event::Cap { pos: pos + 1 }),
                    ]
                } else {
                    vec![
                        (None, Event::Cup { pos, left: o.flip() }),
                        (None, Event::Cross { pos: pos + 1, over }),
                        (None, Event::Cap { pos }),
                    ]
                };
                items.splice(at..at + 1, curl);
            }
            Move::CurlToKink { at } => {
                if at + 3 > d.len() {
                    return bad("too few slices");
                }
                let (e0, e1, e2) = (&d.slices[at], &d.slices[at + 1], &d.slices[at + 2]);
                let kink = match (e0, e1, e2) {
                    (Event::Cup { pos: c, left }, Event::Cross { pos: x, over }, Event::Cap { pos: k })
                        if *c >= 1 && x + 1 == *c && k == c && levels[at][*x] == *left =>
                    {
                        Event::Kink { pos: *x, sign: if *over == Over::Left { 1 } else { -1 } }
                    }
                    (Event::Cup { pos: c, left }, Event::Cross { pos: x, over }, Event::Cap { pos: k })
                        if *x == c + 1 && k == c && c + 2 <= levels[at].len() && levels[at][*c] == left.flip() =>
                    {
                        Event::Kink { pos: *c, sign: if *over == Over::Left { 1 } else { -1 } }
                    }
                    _ => return bad("no curl"),
                };
                touched.extend([d.uids[at], d.uids[at + 1], d.uids[at + 2]]);
                items.splice(at..at + 3, [(None, kink)]);
            }
            Move::R2Insert { at, pos, over } => {
                if at > d.len() || pos + 1 >= width(at) {
                    return bad("needs two strands");
                }
                items.splice(
                    at..at,
                    [(None, Event::Cross { pos, over }), (None, Event::Cross { pos, over: over.flip() })],
                );
            }
            Move::R2Remove { at } => match (d.slices.get(at), d.slices.get(at + 1)) {
                (Some(Event::Cross { pos: p, over: a }), Some(Event::Cross { pos: q, over: b })) if p == q && a != b => {
                    touched.extend([d.uids[at], d.uids[at + 1]]);
                    items.drain(at..at + 2);
                }
                _ => return bad("no canceling crossing pair"),
            },
            Move::R3 { at } => {
                let cr = |k: usize| match d.slices.get(k) {
                    Some(Event::Cross { pos, over }) => Some((*pos, *over)),
                    _ => None,
                };
                let (Some((p0, a)), Some((p1, b)), Some((p2, c))) = (cr(at), cr(at + 1), cr(at + 2)) else {
                    return bad("needs three crossings");
                };
                let adjacent = p0 == p2 && (p1 + 1 == p0 || p0 + 1 == p1);
                if !adjacent || !(a == b || b == c) {
                    return bad("not a braid-relation site");
                }
                touched.extend([d.uids[at], d.uids[at + 1], d.uids[at + 2]]);
                items.splice(
                    at..at + 3,
                    [
                        (None, Event::Cross { pos: p1, over: c }),
                        (None, Event::Cross { pos: p0, over: b }),
                        (None, Event::Cross { pos: p1, over: a }),
                    ],
                );
            }
            Move::ZigzagInsert { at, pos, right_side } => {
                if at > d.len() || pos >= width(at) {
                    return bad("no such strand");
                }
                let o = levels[at][pos];
                let z = if right_side {
                    [(None, Event::Cup { pos: pos + 1, left: o.flip() }), (None, Event::Cap { pos })]
                } else {
                    [(None, Event::Cup { pos, left: o }), (None, Event::Cap { pos: pos + 1 })]
                };
                items.splice(at..at, z);
            }
            Move::ZigzagRemove { at } => match (d.slices.get(at), d.slices.get(at + 1)) {
                (Some(Event::Cup { pos: c, .. }), Some(Event::Cap { pos: k })) if c.abs_diff(*k) == 1 => {
                    touched.extend([d.uids[at], d.uids[at + 1]]);
                    items.drain(at..at + 2);
                }
                _ => return bad("no zigzag"),
            },
            Move::SlideThrough { at } => {
                let (Some(e0), Some(e1)) = (d.slices.get(at), d.slices.get(at + 1)) else {
                    return bad("needs two slices");
                };
                let one_one = |e: &Event| match e {
                    Event::Kink { pos, .. } => Some(*pos),
                    Event::Coupon { pos, inputs: 1, outputs, .. } if outputs.len() == 1 => Some(*pos),
                    _ => None,
                };
                match (one_one(e0), e1, e0, one_one(e1)) {
                    (Some(p), Event::Cross { pos: q, .. }, _, _) if p == *q || p == q + 1 => {
                        let moved = e0.with_pos(2 * q + 1 - p);
                        touched.extend([d.uids[at], d.uids[at + 1]]);
                        items.splice(at..at + 2, [(None, e1.clone()), (None, moved)]);
                    }
                    (_, _, Event::Cross { pos: q, .. }, Some(p)) if p == *q || p == q + 1 => {
                        let moved = e1.with_pos(2 * q + 1 - p);
                        touched.extend([d.uids[at], d.uids[at + 1]]);
                        items.splice(at..at + 2, [(None, moved), (None, e0.clone())]);
                    }
                    _ => return bad("no slide site"),
                }
            }
            Move::Commute { at } => {
                let (Some(e0), Some(e1)) = (d.slices.get(at), d.slices.get(at + 1)) else {
                    return bad("needs two slices");
                };
                if matches!(e0, Event::Identity) || matches!(e1, Event::Identity) {
                    return bad("identity slices do not commute meaningfully");
                }
                let (p0, i0, o0) = e0.footprint();
                let (p1, i1, o1) = e1.footprint();
                let (n0, n1) = if p1 >= p0 + o0 {
                    (e1.with_pos(p1 + i0 - o0), e0.clone())
                } else if p1 + i1 <= p0 {
                    (e1.clone(), e0.with_pos(p0 + o1 - i1))
                } else {
                    return bad("supports overlap");
                };
                // Cups sitting exactly at the boundary of the other support are ambiguous only in position.
                items.splice(at..at + 2, [(Some(d.uids[at + 1]), n0), (Some(d.uids[at]), n1)]);
            }
        }
        let d2 = d.rebuild(d.inputs.clone(), items)?;
        Ok((d2, touched))
    }

    /// Every applicable move of the given kind family on `d`.
    pub fn candidates(d: &SlicedDiagram) -> Vec<Vec<Move>> {
        let levels = d.levels();
        let n = d.len();
        let mut insertions_k = Vec::new();
        let mut insertions_r2 = Vec::new();
        let mut insertions_z = Vec::new();
        for (at, lv) in levels.iter().enumerate() {
            for pos in 0..lv.len() {
                insertions_k.push(Move::KinkPairInsert { at, pos });
                insertions_z.push(Move::ZigzagInsert { at, pos, right_side: pos % 2 == 0 });
                insertions_z.push(Move::ZigzagInsert { at, pos, right_side: pos % 2 == 1 });
                if pos + 1 < lv.len() {
                    insertions_r2.push(Move::R2Insert { at, pos, over: Over::Left });
                    insertions_r2.push(Move::R2Insert { at, pos, over: Over::Right });
                }
            }
        }
        let probe = |m: Move| -> Option<Move> { m.apply(d).ok().map(|_| m) };
        let removals: Vec<Move> = (0..n)
            .flat_map(|at| {
                [
                    Move::KinkPairRemove { at },
                    Move::R2Remove { at },
                    Move::ZigzagRemove { at },
                    Move::CurlToKink { at },
                ]
            })
            .filter_map(probe)
            .collect();
        let r3: Vec<Move> = (0..n).map(|at| Move::R3 { at }).filter_map(probe).collect();
        let slides: Vec<Move> = (0..n).map(|at| Move::SlideThrough { at }).filter_map(probe).collect();
        let commutes: Vec<Move> = (0..n).map(|at| Move::Commute { at }).filter_map(probe).collect();
        let curls: Vec<Move> = (0..n)
            .flat_map(|at| [Move::KinkToCurl { at, right_side: false }, Move::KinkToCurl { at, right_side: true }])
            .filter_map(probe)
            .collect();
        vec![insertions_k, insertions_r2, insertions_z, removals, r3, slides, commutes, curls]
            .into_iter()
            .filter(|v| !v.is_empty())
            .collect()
    }

    /// A uniformly chosen family, then a uniformly chosen site.
    pub fn random(d: &SlicedDiagram, rng: &mut impl Rng) -> Option<Move> {
        let fams = Move::candidates(d);
        if fams.is_empty() {
            return None;
        }
        let f = &fams[rng.gen_range(0..fams.len())];
        Some(f[rng.gen_range(0..f.len())].clone())
    }
}

/// Standard diagrams used by fixtures and tests.
pub mod library {
    use super::*;

    /// Counterclockwise unknot with `framing` kinks.
    pub fn unknot(framing: i64) -> SlicedDiagram {
        let mut s = vec![Event::Cup { pos: 0, left: Orient::Up }];
        let sign = if framing >= 0 { 1 } else { -1 };
        for _ in 0..framing.abs() {
            s.push(Event::Kink { pos: 0, sign });
        }
        s.push(Event::Cap { pos: 0 });
        SlicedDiagram::closed(s).expect("unknot is well formed")
    }

    /// Closure of a braid word on `strands` upward strands; generator `i > 0`
    /// is a left-over crossing at position i-1, `i < 0` its inverse.
    pub fn braid_closure(strands: usize, word: &[i64]) -> SlicedDiagram {
        let mut s = Vec::new();
        // Nested cups: strand j pairs with return strand 2·strands-1-j.
        for j in 0..strands {
            s.push(Event::Cup { pos: j, left: Orient::Up });
        }
        for &w in word {
            let p = (w.unsigned_abs() - 1) as usize;
            s.push(Event::Cross { pos: p, over: if w > 0 { Over::Left } else { Over::Right } });
        }
        for j in (0..strands).rev() {
            s.push(Event::Cap { pos: j });
        }
        // After the cups the level is [up_0 .. up_{n-1}, down_{n-1} .. down_0].
        let _ = strands;
        SlicedDiagram::closed(s).expect("braid closure is well formed")
    }

    /// Positive Hopf link (two crossings) as the closure of σ₁².
    pub fn hopf_link() -> SlicedDiagram {
        braid_closure(2, &[1, 1])
    }

    /// Right-handed trefoil as the closure of σ₁³.
    pub fn trefoil() -> SlicedDiagram {
        braid_closure(2, &[1, 1, 1])
    }

    /// Figure-eight knot as the closure of σ₁σ₂⁻¹σ₁σ₂⁻¹.
    pub fn figure_eight() -> SlicedDiagram {
        braid_closure(3, &[1, -2, 1, -2])
    }

    /// Closure of (σ₁σ₂)³ on three strands: has braid-relation sites.
    pub fn torus_3_3() -> SlicedDiagram {
        braid_closure(3, &[1, 2, 1, 2, 1, 2])
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;
    use crate::categories::pointlike_category;
    use crate::cocycles::RibbonTuple;

    fn z3() -> ThinCategory {
        let g = FiniteGroup::cyclic(3).unwrap();
        let c: Vec<i64> = (0..3).flat_map(|j| (0..3).map(move |k| j * k)).collect();
        let th: Vec<i64> = (0..3).map(|j| j * j).collect();
        pointlike_category(&RibbonTuple::from_exponents(g, 3, &[0; 27], &[0; 3], &c, Some(&th)).unwrap()).unwrap()
    }

    fn z(k: i64) -> CycloNum {
        CycloNum::root_of_unity(3, k)
    }

    #[test]
    fn unknot_and_kinks() {
        let c = z3();
        for j in 0..3 {
            let t = ColoredTangle::from_seeds(unknot(0), &c, &[(0, j)]).unwrap();
            assert!(t.evaluate(&c).unwrap().scalar.is_one());
            let t = ColoredTangle::from_seeds(unknot(1), &c, &[(0, j)]).unwrap();
            assert_eq!(t.evaluate(&c).unwrap().scalar, z((j * j) as i64));
        }
    }

    #[test]
    fn hopf_link_value() {
        let c = z3();
        let d = hopf_link();
        let an = d.analyze();
        assert_eq!(an.n_comps(), 2);
        for j in 0..3usize {
            for k in 0..3usize {
                let t = ColoredTangle::from_seeds(d.clone(), &c, &[(0, j), (1, k)]).unwrap();
                assert_eq!(t.evaluate(&c).unwrap().scalar, z(2 * (j * k) as i64));
            }
        }
        assert_eq!(an.linking_matrix(&[0, 1]), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        let an = d.analyze();
        assert_eq!(an.n_comps(), 1);
        assert_eq!(an.writhe(0), 3);
        assert_eq!(an.crossings.len(), 3);
        let g = FiniteGroup::cyclic(3).unwrap();
        let labels = vec![1; an.n_arcs()];
        assert!(check_labels(&an, &g, &labels).passed());
        assert_eq!(longitude(&an, &g, &labels, 0), Some(0));
    }

    #[test]
    fn moves_preserve_value() {
        use rand::SeedableRng;
        let c = z3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let base = ColoredTangle::from_seeds(torus_3_3(), &c, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        let v0 = base.evaluate(&c).unwrap().scalar;
        let mut t = base;
        for _ in 0..60 {
            let mv = Move::random(&t.diagram, &mut rng).unwrap();
            t = t.apply(&mv, &c).unwrap();
            assert_eq!(t.evaluate(&c).unwrap().scalar, v0, "{:?}", mv);
        }
    }

    #[test]
    fn closure_of_kinked_strand() {
        let c = z3();
        let d = SlicedDiagram::new(vec![Orient::Up], vec![Event::Kink { pos: 0, sign: 1 }]).unwrap();
        let an = d.analyze();
        let t = ColoredTangle { diagram: d, labels: vec![2; an.n_arcs()], colors: vec![2; an.n_arcs()] };
        assert_eq!(closure_trace(&t, &c).unwrap(), z(4));
    }

    #[test]
    fn reverse_and_double() {
        let c = z3();
        let t = ColoredTangle::from_seeds(hopf_link(), &c, &[(0, 1), (1, 2)]).unwrap();
        let v = t.evaluate(&c).unwrap().scalar;
        let r = transform_reverse_dual(&t, 0, &c).unwrap();
        assert_eq!(r.evaluate(&c).unwrap().scalar, v);
        let rr = transform_reverse_dual(&r, 0, &c).unwrap();
        assert_eq!(rr, t);
        let dbl = transform_double(&t, 1, 1, 1, &c).unwrap();
        assert_eq!(dbl.evaluate(&c).unwrap().scalar, v);
    }
}
