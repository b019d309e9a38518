//! Moving Souslin schemes along open maps: the pushforward of a scheme, and
//! the point map a scheme induces on branches, with its image identity.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bidirected::{up_cone, DoubleArrowPoint, Relation};
use crate::check::{CheckResult, LeftWitness, Witness};
use crate::diagonalizer::{w_node, WOracle};
use crate::rat::Rat;
use crate::scheme::{decode, encode_branch, vs_interval};
use crate::seqtree::{in_rsequences, Branch, FinSeq, Tri};
use crate::space::{SpacePoint, SpaceSet};
use crate::topology::{cut_vs, sample_rsequences};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OpenMapError {
    #[error("unsupported map descriptor {0:?}")]
    UnsupportedMap(String),
    #[error("no fruit candidate of {branch} passes the base-branch check")]
    NoBasePoint { branch: Branch, evidence: Vec<(SpacePoint, CheckResult)> },
    #[error("{branch} is a base branch of several points: {points:?}")]
    SeveralBasePoints { branch: Branch, points: Vec<SpacePoint> },
    #[error("oracle cannot answer: {0}")]
    Oracle(String),
}

/// Answer to the (S1) query: a base branch of `x` through a given node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum S1Answer {
    Found { branch: Branch },
    /// No such branch; the witness certifies it.
    Absent { certificate: Box<Witness> },
    Unknown { reason: String },
}

/// A candidate base presented through queries. Oracles must be pure.
pub trait SchemeOracle {
    fn name(&self) -> &str;

    fn node_set(&self, a: &FinSeq) -> SpaceSet;

    /// `cut(V, q, n)`.
    fn cut_set(&self, q: &Branch, n: u64) -> Result<SpaceSet, OpenMapError>;

    /// Every point that can lie in `fruit(V, q)`.
    fn fruit_members(&self, q: &Branch, depth: u64) -> Vec<SpacePoint>;

    /// Some branch whose fruit contains `x`.
    fn branch_of(&self, x: &SpacePoint) -> Option<Branch>;

    /// A base branch of `x` extending `prefix`.
    fn s1_witness(&self, x: &SpacePoint, prefix: &FinSeq, depth_budget: u64) -> S1Answer;

    /// Least `m` in `from..=until` with `cut(V, q, m) ∪ {x} ⊆ target`.
    fn shrink_index(&self, q: &Branch, x: &SpacePoint, target: &SpaceSet, from: u64, until: u64) -> Option<u64> {
        (from..=until).find(|&m| {
            self.cut_set(q, m)
                .map(|c| c.union(&x.singleton()).is_subset(target))
                .unwrap_or(false)
        })
    }

    /// A branch of `y` inside `rsequences(q, m)`.
    fn branch_in_cut(&self, y: &SpacePoint, q: &Branch, m: u64, depth_budget: u64) -> Option<Branch> {
        self.branch_of(y)
            .filter(|t| in_rsequences(t, q, m, depth_budget) == Tri::True)
    }
}

/// Bounded evidence that `q` is a base branch of `z`: every `cut(V,q,m) ∪ {z}`
/// with `m ≤ depth` is a neighbourhood of `z`, the family is nested, and it
/// gets inside the canonical neighbourhoods of index up to `depth / 2`.
pub fn base_branch_evidence(oracle: &dyn SchemeOracle, q: &Branch, z: &SpacePoint, depth: u64) -> CheckResult {
    let mut sets = Vec::new();
    for m in 0..=depth {
        let set = match oracle.cut_set(q, m) {
            Ok(c) => c.union(&z.singleton()),
            Err(e) => return CheckResult::unknown(depth, e.to_string()),
        };
        if !set.is_nbhd_of(z) {
            return match (z, no_base_certificate(oracle, q, z)) {
                (_, Some(w)) => CheckResult::fails(w),
                (SpacePoint::Real(x), None) if m >= 1 => {
                    let SpaceSet::Real(inner) = set else { unreachable!() };
                    let SpaceSet::Real(outer) = sets.last().cloned().unwrap_or(SpaceSet::Real(inner.clone())) else {
                        unreachable!()
                    };
                    CheckResult::fails(Witness::CutBase { x: x.clone(), m, outer, inner })
                }
                _ => CheckResult::unknown(depth, format!("cut set {m} is not a neighbourhood of {z}")),
            };
        }
        if let Some(prev) = sets.last() {
            if !set.is_subset(prev) {
                return CheckResult::unknown(depth, format!("cut sets {} and {m} are not nested", m - 1));
            }
        }
        sets.push(set);
    }
    for k in 0..=depth / 2 {
        let nb = z.canonical_nbhd(k);
        if !sets.iter().any(|s| s.is_subset(&nb)) {
            return CheckResult::unknown(depth, format!("no cut set inside the canonical neighbourhood {k}"));
        }
    }
    CheckResult::holds(depth)
}

/// For a side-0 point whose cut sets all lie strictly lex-above it: the
/// certificate that no cut set with the point added is a neighbourhood.
pub fn no_base_certificate(oracle: &dyn SchemeOracle, q: &Branch, z: &SpacePoint) -> Option<Witness> {
    let p = z.as_arrow()?;
    if p.side != 0 {
        return None;
    }
    let SpaceSet::Arrow(cut0) = oracle.cut_set(q, 0).ok()? else {
        return None;
    };
    if !cut0.is_subset(&up_cone(Relation::Lex, p)) {
        return None;
    }
    let left_points = (1..=8)
        .map(|k| {
            let nb = crate::bidirected::nbhd_set(p, k);
            let below = nb.side1.intersect(&crate::sets::RealSet::span(
                crate::sets::Cut::NegInf,
                crate::sets::Cut::Below(p.x.clone()),
            ));
            below.simplest_point().map(|y| LeftWitness { k, y })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Witness::NoBaseNeighborhood {
        point: p.clone(),
        nbhd: crate::bidirected::nbhd_set(p, 1),
        cut0,
        left_points,
    })
}

/// The coding scheme of the Sorgenfrey line.
#[derive(Clone, Copy, Debug, Default)]
pub struct VsOracle;

impl SchemeOracle for VsOracle {
    fn name(&self) -> &str {
        "vs"
    }

    fn node_set(&self, a: &FinSeq) -> SpaceSet {
        SpaceSet::Real(vs_interval(a).to_set())
    }

    fn cut_set(&self, q: &Branch, n: u64) -> Result<SpaceSet, OpenMapError> {
        cut_vs(q, n)
            .map(|c| SpaceSet::Real(c.to_set()))
            .map_err(|e| OpenMapError::Oracle(e.to_string()))
    }

    fn fruit_members(&self, q: &Branch, depth: u64) -> Vec<SpacePoint> {
        let d = decode(q, depth);
        if d.exact {
            vec![SpacePoint::Real(d.value)]
        } else {
            Vec::new()
        }
    }

    fn branch_of(&self, x: &SpacePoint) -> Option<Branch> {
        match x {
            SpacePoint::Real(x) => Some(encode_branch(x)),
            SpacePoint::Arrow(_) => None,
        }
    }

    fn s1_witness(&self, x: &SpacePoint, prefix: &FinSeq, _depth_budget: u64) -> S1Answer {
        let node = self.node_set(prefix);
        if !node.contains(x) {
            return S1Answer::Absent {
                certificate: Box::new(Witness::TraceInvariant {
                    step: 0,
                    invariant: "member".into(),
                    detail: format!("{x} is not in the node {prefix}"),
                    member: Some(x.clone()),
                    set: Some(node),
                    before: None,
                    after: None,
                }),
            };
        }
        match self.branch_of(x) {
            Some(branch) => S1Answer::Found { branch },
            None => S1Answer::Unknown { reason: format!("{x} is not a point of the line") },
        }
    }
}

/// The V^S coding with its cut sets shifted one level: `cut(V, q, n)` is
/// answered with the level `n - 1` set. Not a base of its own nodes; used to
/// check that the image identity notices.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShiftedVsOracle;

impl SchemeOracle for ShiftedVsOracle {
    fn name(&self) -> &str {
        "vs-shifted"
    }

    fn node_set(&self, a: &FinSeq) -> SpaceSet {
        VsOracle.node_set(a)
    }

    fn cut_set(&self, q: &Branch, n: u64) -> Result<SpaceSet, OpenMapError> {
        VsOracle.cut_set(q, n.saturating_sub(1))
    }

    fn fruit_members(&self, q: &Branch, depth: u64) -> Vec<SpacePoint> {
        VsOracle.fruit_members(q, depth)
    }

    fn branch_of(&self, x: &SpacePoint) -> Option<Branch> {
        VsOracle.branch_of(x)
    }

    fn s1_witness(&self, x: &SpacePoint, prefix: &FinSeq, depth_budget: u64) -> S1Answer {
        VsOracle.s1_witness(x, prefix, depth_budget)
    }
}

/// Built-in maps a scheme can be pushed along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapDescriptor {
    /// Baire space onto the Sorgenfrey line by decoding.
    Decode,
    /// Side-1 embedding of the unit coding into the double arrow, closed up
    /// to order-interval hulls.
    DoubleArrowW,
}

impl FromStr for MapDescriptor {
    type Err = OpenMapError;

    fn from_str(s: &str) -> Result<MapDescriptor, OpenMapError> {
        match s {
            "decode" | "vs" => Ok(MapDescriptor::Decode),
            "double-arrow-w" | "w" => Ok(MapDescriptor::DoubleArrowW),
            other => Err(OpenMapError::UnsupportedMap(other.into())),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapDescriptor::Decode => "decode",
            MapDescriptor::DoubleArrowW => "double-arrow-w",
        })
    }
}

/// Image of the cylinder of `a` under the map.
pub fn pushforward_node(map: MapDescriptor, a: &FinSeq) -> SpaceSet {
    match map {
        MapDescriptor::Decode => SpaceSet::Real(vs_interval(a).to_set()),
        MapDescriptor::DoubleArrowW => SpaceSet::Arrow(w_node(a)),
    }
}

pub fn pushforward_node_named(map: &str, a: &FinSeq) -> Result<SpaceSet, OpenMapError> {
    Ok(pushforward_node(map.parse()?, a))
}

/// The point `p` is a base branch of, with the evidence.
pub fn induced_point(
    oracle: &dyn SchemeOracle,
    p: &Branch,
    depth_budget: u64,
) -> Result<(SpacePoint, CheckResult), OpenMapError> {
    let evidence: Vec<_> = oracle
        .fruit_members(p, depth_budget)
        .into_iter()
        .map(|z| {
            let e = base_branch_evidence(oracle, p, &z, depth_budget);
            (z, e)
        })
        .collect();
    let passing: Vec<_> = evidence.iter().filter(|(_, e)| e.is_holds()).cloned().collect();
    match passing.len() {
        1 => Ok(passing.into_iter().next().expect("one")),
        0 => Err(OpenMapError::NoBasePoint { branch: p.clone(), evidence }),
        _ => Err(OpenMapError::SeveralBasePoints {
            branch: p.clone(),
            points: passing.into_iter().map(|(z, _)| z).collect(),
        }),
    }
}

/// `induced_point` with the candidate fixed to `z`.
pub fn induced_point_at(
    oracle: &dyn SchemeOracle,
    p: &Branch,
    z: &SpacePoint,
    depth_budget: u64,
) -> Result<(SpacePoint, CheckResult), OpenMapError> {
    let e = base_branch_evidence(oracle, p, z, depth_budget);
    if e.is_holds() {
        Ok((z.clone(), e))
    } else {
        Err(OpenMapError::NoBasePoint { branch: p.clone(), evidence: vec![(z.clone(), e)] })
    }
}

/// Sampled check that the induced map carries `cut(S, p, n) ∪ {p}` onto
/// `cut(V, p, n) ∪ {f(p)}`: forward by mapping sampled branches of the
/// Baire side, backward by pulling sampled points of the cut set back to
/// their branches.
pub fn image_identity_check(
    oracle: &dyn SchemeOracle,
    p: &Branch,
    n: u64,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CheckResult, OpenMapError> {
    const DEPTH: u64 = 24;
    let (fp, _) = induced_point(oracle, p, DEPTH)?;
    let target = oracle.cut_set(p, n)?.union(&fp.singleton());

    let mut branches = vec![p.clone()];
    branches.extend(sample_rsequences(p, n, samples, rng));
    for s in &branches {
        let (y, _) = induced_point(oracle, s, DEPTH)?;
        if !target.contains(&y) {
            return Ok(CheckResult::fails(Witness::ImageIdentity {
                n,
                direction: "forward".into(),
                point: y,
                target,
            }));
        }
    }

    let cut = oracle.cut_set(p, n)?;
    for y in sample_points(&cut, samples, rng) {
        let Some(t) = oracle.branch_of(&y) else {
            return Ok(CheckResult::unknown(DEPTH, format!("no branch for {y}")));
        };
        let truth = in_rsequences(&t, p, n, 4096);
        match truth {
            Tri::True => {}
            Tri::False => {
                return Ok(CheckResult::fails(Witness::Aqn {
                    item: 4,
                    q: p.clone(),
                    p: t,
                    n,
                    detail: format!("{y} lies in the cut set but its branch is not past the base branch"),
                    truth: false,
                    claimed: true,
                }))
            }
            Tri::Unknown => return Ok(CheckResult::unknown(4096, format!("membership of the branch of {y}"))),
        }
    }
    Ok(CheckResult::holds(n))
}

/// Random points of a finitely described set: rationals between the ends
/// of a random span (or near the finite end of an unbounded one).
pub fn sample_points(set: &SpaceSet, count: usize, rng: &mut impl Rng) -> Vec<SpacePoint> {
    use crate::sets::{Cut, RealSet};
    fn pick(s: &RealSet, rng: &mut impl Rng) -> Option<Rat> {
        let spans = s.spans();
        if spans.is_empty() {
            return None;
        }
        let span = &spans[rng.gen_range(0..spans.len())];
        let end = |c: &Cut| match c {
            Cut::Below(r) | Cut::Above(r) => Some(r.clone()),
            _ => None,
        };
        let (lo, hi) = match (end(&span.lo), end(&span.hi)) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a.clone(), &a + &Rat::from_int(8)),
            (None, Some(b)) => (&b - &Rat::from_int(8), b),
            (None, None) => (Rat::from_int(-8), Rat::from_int(8)),
        };
        let den = 1_000_003i64;
        let t = Rat::new(rng.gen_range(1..den), den);
        let y = &lo + &(&(&hi - &lo) * &t);
        Some(if span.contains(&y) { y } else { Rat::midpoint(&lo, &hi) })
    }
    (0..count)
        .filter_map(|_| match set {
            SpaceSet::Real(s) => pick(s, rng).map(SpacePoint::Real),
            SpaceSet::Arrow(a) => {
                let side = rng.gen_range(0..2u8);
                pick(a.side(side), rng)
                    .or_else(|| pick(a.side(1 - side), rng))
                    .map(|x| {
                        let side = if a.side(side).contains(&x) { side } else { 1 - side };
                        SpacePoint::Arrow(DoubleArrowPoint { x, side })
                    })
            }
        })
        .collect()
}

/// The W oracle under its map name, for callers choosing by descriptor.
pub fn oracle_for(map: MapDescriptor) -> Box<dyn SchemeOracle> {
    match map {
        MapDescriptor::Decode => Box::new(VsOracle),
        MapDescriptor::DoubleArrowW => Box::new(WOracle),
    }
}
