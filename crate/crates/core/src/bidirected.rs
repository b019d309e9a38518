//! The double-arrow space `M = {(x,0) : 0 < x ≤ 1} ∪ {(x,1) : 0 ≤ x < 1}`
//! under the lexicographic order topology, with two asymmetric relations:
//! the lexicographic order itself (along the whole space) and the relation
//! built from the side-1 copy of `[0, 1)` (along that copy).
//!
//! Every set that shows up (canonical neighbourhoods, relation cones, the
//! `Q` traces) is an [`ArrowSet`], so all the quantified conditions reduce
//! to exact interval algebra.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::{CheckResult, Witness};
use crate::rat::Rat;
use crate::sets::{ArrowSet, Cut, RealSet};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BidirError {
    #[error("({x},{side}) is not a point of the double-arrow space")]
    OutOfDomain { x: Rat, side: u8 },
    #[error("{0} lies on side 1; only side-0 points have a limit set")]
    WrongSide(DoubleArrowPoint),
}

/// Derived ordering is the lexicographic order (value first, then side).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoubleArrowPoint {
    pub x: Rat,
    pub side: u8,
}

impl DoubleArrowPoint {
    pub fn new(x: Rat, side: u8) -> Result<DoubleArrowPoint, BidirError> {
        let ok = match side {
            0 => x > Rat::zero() && x <= Rat::one(),
            1 => x >= Rat::zero() && x < Rat::one(),
            _ => false,
        };
        if ok {
            Ok(DoubleArrowPoint { x, side })
        } else {
            Err(BidirError::OutOfDomain { x, side })
        }
    }

    pub fn in_domain(&self) -> bool {
        DoubleArrowPoint::new(self.x.clone(), self.side).is_ok()
    }

    pub fn singleton(&self) -> ArrowSet {
        let p = RealSet::point(&self.x);
        if self.side == 0 {
            ArrowSet::new(p, RealSet::empty())
        } else {
            ArrowSet::new(RealSet::empty(), p)
        }
    }
}

impl fmt::Display for DoubleArrowPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.side)
    }
}

pub fn lex_lt(p: &DoubleArrowPoint, q: &DoubleArrowPoint) -> bool {
    p < q
}

/// One end of an order interval. The pair `(x, side)` need not be a point
/// of the space (e.g. `(1,1)` as an exclusive supremum).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexBound {
    pub x: Rat,
    pub side: u8,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderInterval {
    pub lower: Option<LexBound>,
    pub upper: Option<LexBound>,
}

impl OrderInterval {
    /// The points of the space inside the interval.
    pub fn to_set(&self) -> ArrowSet {
        let side_set = |t: u8| {
            let lo = match &self.lower {
                None => Cut::NegInf,
                Some(b) => {
                    // (w,t) ≥ (u,s) iff w > u, or w = u and t ≥ s
                    let eq_ok = if b.closed { t >= b.side } else { t > b.side };
                    if eq_ok {
                        Cut::Below(b.x.clone())
                    } else {
                        Cut::Above(b.x.clone())
                    }
                }
            };
            let hi = match &self.upper {
                None => Cut::PosInf,
                Some(b) => {
                    let eq_ok = if b.closed { t <= b.side } else { t < b.side };
                    if eq_ok {
                        Cut::Above(b.x.clone())
                    } else {
                        Cut::Below(b.x.clone())
                    }
                }
            };
            RealSet::span(lo, hi)
        };
        ArrowSet::new(side_set(0), side_set(1))
    }

    pub fn contains(&self, p: &DoubleArrowPoint) -> bool {
        p.in_domain() && self.to_set().contains(&p.x, p.side)
    }
}

impl fmt::Display for OrderInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            None => write!(f, "(-∞")?,
            Some(b) => write!(f, "{}({},{})", if b.closed { "[" } else { "(" }, b.x, b.side)?,
        }
        write!(f, ", ")?;
        match &self.upper {
            None => write!(f, "+∞)"),
            Some(b) => write!(f, "({},{}){}", b.x, b.side, if b.closed { "]" } else { ")" }),
        }
    }
}

/// Canonical neighbourhood of index `k`: `[(x,1), (b_k,1))` with
/// `b_k = x + (1-x)·2^-k` on side 1, `((a_k,0), (x,1))` with
/// `a_k = x·(1 - 2^-k)` on side 0.
pub fn nbhd_basic(z: &DoubleArrowPoint, k: u64) -> OrderInterval {
    let h = Rat::pow2_neg(k);
    if z.side == 1 {
        let b = &z.x + &(&(Rat::one() - &z.x) * &h);
        OrderInterval {
            lower: Some(LexBound { x: z.x.clone(), side: 1, closed: true }),
            upper: Some(LexBound { x: b, side: 1, closed: false }),
        }
    } else {
        let a = &z.x * &(Rat::one() - &h);
        OrderInterval {
            lower: Some(LexBound { x: a, side: 0, closed: false }),
            upper: Some(LexBound { x: z.x.clone(), side: 1, closed: false }),
        }
    }
}

pub fn nbhd_set(z: &DoubleArrowPoint, k: u64) -> ArrowSet {
    nbhd_basic(z, k).to_set()
}

/// Least `k` with `nbhd_basic(z, k) ⊆ set`, when `set` is a neighbourhood
/// of `z`. The canonical sets form a base, so this terminates.
pub fn nbhd_index_inside(z: &DoubleArrowPoint, set: &ArrowSet) -> Option<u64> {
    if !set.is_nbhd_of(&z.x, z.side) {
        return None;
    }
    (0..).find(|&k| nbhd_set(z, k).is_subset(set))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Strict lexicographic order, along the whole space.
    Lex,
    /// Real order on the side-1 copy of `[0,1)`, extended to side-0 points
    /// through their limit value; along the side-1 copy.
    Constructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Right,
    Left,
}

/// For a side-0 point `(x,0)` of the double arrow, side-1 sequences
/// converge to it exactly when their values increase to `x`, so the limit
/// set is `{x}` and both its minimum and its supremum are `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitData {
    pub limits: RealSet,
    pub min: Rat,
    pub sup: Rat,
}

pub fn limit_data(z: &DoubleArrowPoint) -> Result<LimitData, BidirError> {
    if z.side != 0 {
        return Err(BidirError::WrongSide(z.clone()));
    }
    Ok(LimitData { limits: RealSet::point(&z.x), min: z.x.clone(), sup: z.x.clone() })
}

/// `p R q`.
pub fn relates(rel: Relation, p: &DoubleArrowPoint, q: &DoubleArrowPoint) -> bool {
    match rel {
        Relation::Lex => lex_lt(p, q),
        Relation::Constructed => r_constructed(p, q),
    }
}

pub fn r_constructed(p: &DoubleArrowPoint, q: &DoubleArrowPoint) -> bool {
    match (p.side, q.side) {
        (1, 1) => p.x < q.x,
        (1, 0) => p.x < q.x,
        (0, 1) => p.x <= q.x,
        _ => false,
    }
}

/// `{y : z R y}`
pub fn up_cone(rel: Relation, z: &DoubleArrowPoint) -> ArrowSet {
    let x = &z.x;
    let gt = RealSet::span(Cut::Above(x.clone()), Cut::PosInf);
    let ge = RealSet::span(Cut::Below(x.clone()), Cut::PosInf);
    match (rel, z.side) {
        (_, 1) => ArrowSet::new(gt.clone(), gt),
        (Relation::Lex, _) => ArrowSet::new(gt, ge),
        (Relation::Constructed, _) => ArrowSet::new(RealSet::empty(), ge),
    }
}

/// `{y : y R z}`
pub fn down_cone(rel: Relation, z: &DoubleArrowPoint) -> ArrowSet {
    let x = &z.x;
    let lt = RealSet::span(Cut::NegInf, Cut::Below(x.clone()));
    let le = RealSet::span(Cut::NegInf, Cut::Above(x.clone()));
    match (rel, z.side) {
        (_, 1) => ArrowSet::new(le, lt),
        (Relation::Lex, _) => ArrowSet::new(lt.clone(), lt),
        (Relation::Constructed, _) => ArrowSet::new(RealSet::empty(), lt),
    }
}

/// The dense set the relation is taken along.
pub fn q_set(rel: Relation) -> ArrowSet {
    match rel {
        Relation::Lex => ArrowSet::whole(),
        Relation::Constructed => ArrowSet::new(RealSet::empty(), RealSet::all()),
    }
}

/// The double-arrow space with a relation and the split into a
/// right-looking part (side 1) and a left-looking part (side 0).
/// `flipped` swaps the two parts, which must break the check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleArrowSpace {
    pub relation: Relation,
    pub flipped: bool,
}

impl DoubleArrowSpace {
    pub fn new(relation: Relation) -> DoubleArrowSpace {
        DoubleArrowSpace { relation, flipped: false }
    }

    pub fn right_part(&self) -> ArrowSet {
        if self.flipped {
            side_only(0)
        } else {
            side_only(1)
        }
    }

    pub fn left_part(&self) -> ArrowSet {
        if self.flipped {
            side_only(1)
        } else {
            side_only(0)
        }
    }

    pub fn direction_of(&self, z: &DoubleArrowPoint) -> Direction {
        if self.right_part().contains(&z.x, z.side) {
            Direction::Right
        } else {
            Direction::Left
        }
    }
}

pub fn side_only(side: u8) -> ArrowSet {
    if side == 0 {
        ArrowSet::new(RealSet::all(), RealSet::empty())
    } else {
        ArrowSet::new(RealSet::empty(), RealSet::all())
    }
}

/// Second-bullet evidence at one canonical neighbourhood: `y` lies in
/// `nbhd ∖ {z}` along `Q`, and the cone of `y` contains the canonical
/// neighbourhood of index `cone_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LooksWitness {
    pub k: u64,
    pub y: DoubleArrowPoint,
    pub cone_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidirCheckReport {
    pub point: DoubleArrowPoint,
    pub direction: Direction,
    pub relation: Relation,
    /// Index of the first canonical neighbourhood that is one-sided for the
    /// relation (first bullet).
    pub one_sided_index: Option<u64>,
    pub witnesses: Vec<LooksWitness>,
    pub verdict: CheckResult,
}

/// The cone a witness `y` must supply: `y↓` when looking right, `y↑` when
/// looking left.
pub fn witness_cone(rel: Relation, dir: Direction, y: &DoubleArrowPoint) -> ArrowSet {
    match dir {
        Direction::Right => down_cone(rel, y),
        Direction::Left => up_cone(rel, y),
    }
}

/// The cone a one-sided neighbourhood must lie in (apart from `z`).
pub fn one_sided_cone(rel: Relation, dir: Direction, z: &DoubleArrowPoint) -> ArrowSet {
    match dir {
        Direction::Right => up_cone(rel, z),
        Direction::Left => down_cone(rel, z),
    }
}

/// Points of `U ∖ {z}` along `Q` that break one-sidedness.
pub fn one_sided_offenders(rel: Relation, dir: Direction, z: &DoubleArrowPoint, u: &ArrowSet) -> ArrowSet {
    u.intersect(&q_set(rel)).minus(&z.singleton()).minus(&one_sided_cone(rel, dir, z))
}

/// Whether `set` has points arbitrarily close to `z` from the side its
/// canonical neighbourhoods extend to.
pub fn accumulates_at(set: &ArrowSet, z: &DoubleArrowPoint) -> bool {
    if z.side == 1 {
        set.side0.has_right_approach(&z.x) || set.side1.has_right_approach(&z.x)
    } else {
        set.side0.has_left_approach(&z.x) || set.side1.has_left_approach(&z.x)
    }
}

/// Candidate witnesses inside `U ∖ {z}` along `Q`, nearest the point
/// first: on each side, the simplest value in the half of `U` facing the
/// direction, and the simplest value on the other half as a fallback.
pub fn witness_candidates(rel: Relation, dir: Direction, z: &DoubleArrowPoint, u: &ArrowSet) -> Vec<DoubleArrowPoint> {
    let pool = u.intersect(&q_set(rel)).minus(&z.singleton());
    let right = RealSet::span(Cut::Above(z.x.clone()), Cut::PosInf);
    let left = RealSet::span(Cut::NegInf, Cut::Below(z.x.clone()));
    let halves = match dir {
        Direction::Right => [right, left],
        Direction::Left => [left, right],
    };
    let mut out = Vec::new();
    for half in &halves {
        for side in [1u8, 0] {
            if let Some(v) = pool.side(side).intersect(half).simplest_point() {
                out.push(DoubleArrowPoint { x: v, side });
            }
        }
    }
    out
}

pub fn looks_check(z: &DoubleArrowPoint, dir: Direction, k_max: u64, rel: Relation) -> BidirCheckReport {
    let mut report = BidirCheckReport {
        point: z.clone(),
        direction: dir,
        relation: rel,
        one_sided_index: None,
        witnesses: Vec::new(),
        verdict: CheckResult::holds(k_max),
    };
    // first bullet: some canonical neighbourhood is one-sided. Shrinking
    // never hurts, so failure at k_max with offenders accumulating at z
    // means no neighbourhood at all is one-sided.
    for k in 0..=k_max {
        let u = nbhd_set(z, k);
        if one_sided_offenders(rel, dir, z, &u).is_empty() {
            report.one_sided_index = Some(k);
            break;
        }
    }
    if report.one_sided_index.is_none() {
        let u = nbhd_set(z, k_max);
        let offending = one_sided_offenders(rel, dir, z, &u);
        let reason = if accumulates_at(&offending, z) {
            "offending points accumulate at the point"
        } else {
            "no one-sided canonical neighbourhood up to k_max"
        };
        report.verdict = CheckResult::fails(Witness::Looks {
            point: z.clone(),
            direction: dir,
            relation: rel,
            bullet: 1,
            k: k_max,
            nbhd: u,
            offending,
            reason: reason.into(),
        });
        return report;
    }
    // second bullet, for every canonical neighbourhood up to k_max
    for k in 0..=k_max {
        let u = nbhd_set(z, k);
        let found = witness_candidates(rel, dir, z, &u).into_iter().find_map(|y| {
            let cone = witness_cone(rel, dir, &y);
            nbhd_index_inside(z, &cone).map(|j| LooksWitness { k, y, cone_index: j })
        });
        match found {
            Some(w) => report.witnesses.push(w),
            None => {
                let pool = u.intersect(&q_set(rel)).minus(&z.singleton());
                report.verdict = CheckResult::fails(Witness::Looks {
                    point: z.clone(),
                    direction: dir,
                    relation: rel,
                    bullet: 2,
                    k,
                    nbhd: u,
                    offending: pool,
                    reason: "no candidate point whose cone is a neighbourhood".into(),
                });
                return report;
            }
        }
    }
    report
}

/// Re-check one recorded second-bullet witness.
pub fn looks_witness_holds(z: &DoubleArrowPoint, dir: Direction, rel: Relation, w: &LooksWitness) -> bool {
    let u = nbhd_set(z, w.k);
    w.y.in_domain()
        && w.y != *z
        && u.contains(&w.y.x, w.y.side)
        && q_set(rel).contains(&w.y.x, w.y.side)
        && nbhd_set(z, w.cone_index).is_subset(&witness_cone(rel, dir, &w.y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidirectedReport {
    pub relation: Relation,
    pub flipped: bool,
    pub k_max: u64,
    pub points: Vec<BidirCheckReport>,
    pub verdict: CheckResult,
}

/// Partition, density of both parts and of `Q`, and the looks conditions
/// at every sample point (sorted by the order).
pub fn bidirected_check(space: &DoubleArrowSpace, samples: &[DoubleArrowPoint], k_max: u64) -> BidirectedReport {
    let mut pts = samples.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = BidirectedReport {
        relation: space.relation,
        flipped: space.flipped,
        k_max,
        points: Vec::new(),
        verdict: CheckResult::holds(k_max),
    };
    let q = q_set(space.relation);
    for z in &pts {
        let in_r = space.right_part().contains(&z.x, z.side);
        let in_l = space.left_part().contains(&z.x, z.side);
        if in_r == in_l {
            out.verdict = CheckResult::fails(Witness::Precondition {
                detail: format!("{z} is in both parts or in neither"),
                inner: Box::new(Witness::TraceInvariant {
                    step: 0,
                    invariant: "partition".into(),
                    detail: z.to_string(),
                    member: Some(crate::space::SpacePoint::Arrow(z.clone())),
                    set: Some(crate::space::SpaceSet::Arrow(space.right_part().union(&space.left_part()))),
                    before: None,
                    after: None,
                }),
            });
            return out;
        }
        for k in 0..=k_max {
            let u = nbhd_set(z, k);
            for (missing, part) in [("left part", space.left_part()), ("right part", space.right_part()), ("Q set", q.clone())] {
                if u.intersect(&part).is_empty() {
                    out.verdict = CheckResult::fails(Witness::Density {
                        point: crate::space::SpacePoint::Arrow(z.clone()),
                        k,
                        nbhd: crate::space::SpaceSet::Arrow(u),
                        part: crate::space::SpaceSet::Arrow(part),
                        missing: missing.into(),
                    });
                    return out;
                }
            }
        }
        let report = looks_check(z, space.direction_of(z), k_max, space.relation);
        let failed = !report.verdict.is_holds();
        let verdict = report.verdict.clone();
        out.points.push(report);
        if failed {
            out.verdict = verdict;
            return out;
        }
    }
    out
}

/// Pairs violating asymmetry (or irreflexivity, as `(p, p)`).
pub fn asymmetry_violations(rel: Relation, points: &[DoubleArrowPoint]) -> Vec<(DoubleArrowPoint, DoubleArrowPoint)> {
    let mut bad = Vec::new();
    for p in points {
        for q in points {
            if relates(rel, p, q) && relates(rel, q, p) {
                bad.push((p.clone(), q.clone()));
            }
        }
    }
    bad
}

/// `n` dyadic values of `(0, 1)` taken by increasing denominator, as
/// sorted points on both sides, plus the two points at 1/3.
pub fn sample_grid(n: usize) -> Vec<DoubleArrowPoint> {
    let mut out: Vec<DoubleArrowPoint> = dyadic_grid(n);
    for side in [0, 1] {
        out.push(DoubleArrowPoint { x: Rat::new(1, 3), side });
    }
    out.sort();
    out.dedup();
    out
}

/// The first `n` points of the sequence (1/2,0), (1/2,1), (1/4,0), (1/4,1),
/// (3/4,0), ..., sorted.
pub fn dyadic_grid(n: usize) -> Vec<DoubleArrowPoint> {
    let mut out = Vec::with_capacity(n);
    let mut level = 1u64;
    'outer: loop {
        let den = 1i64 << level;
        for num in (1..den).step_by(2) {
            for side in [0, 1] {
                if out.len() == n {
                    break 'outer;
                }
                out.push(DoubleArrowPoint { x: Rat::new(num, den), side });
            }
        }
        level += 1;
    }
    out.sort();
    out
}

/// One checked instance of the technical-lemma items at a side-0 point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TechnicalReport {
    pub point: DoubleArrowPoint,
    pub k_max: u64,
    pub verdict: CheckResult,
}

/// Items (i)–(v) about canonical neighbourhoods of `z = (x,0)` and their
/// traces on the side-1 copy of `[0,1)`, with `m(z) = M(z) = x`.
pub fn technical_lemma_check(z: &DoubleArrowPoint, k_max: u64) -> TechnicalReport {
    let verdict = match technical_lemma_failure(z, k_max) {
        Ok(None) => CheckResult::holds(k_max),
        Ok(Some(w)) => CheckResult::fails(w),
        Err(e) => CheckResult::fails(Witness::TechnicalLemma {
            point: z.clone(),
            item: 0,
            k: 0,
            detail: e.to_string(),
        }),
    };
    TechnicalReport { point: z.clone(), k_max, verdict }
}

fn technical_lemma_failure(z: &DoubleArrowPoint, k_max: u64) -> Result<Option<Witness>, BidirError> {
    let lm = limit_data(z)?;
    let x = &z.x;
    let fail = |item: u8, k: u64, detail: String| {
        Ok(Some(Witness::TechnicalLemma { point: z.clone(), item, k, detail }))
    };
    let below = |v: &Rat| RealSet::span(Cut::NegInf, Cut::Below(v.clone()));
    let above = |v: &Rat| RealSet::span(Cut::Above(v.clone()), Cut::PosInf);
    // probes y ∈ [0,1) on both sides of x
    let mut probes: Vec<Rat> = (0..6).map(|j| x - &(x * &Rat::pow2_neg(j))).collect();
    probes.push(x.clone());
    if *x < Rat::one() {
        probes.push(Rat::midpoint(x, &Rat::one()));
    }
    probes.retain(|y| *y >= Rat::zero() && *y < Rat::one());

    for k in 1..=k_max {
        let u = nbhd_set(z, k);
        let trace = &u.side1;
        // (i) the trace lies below M(z)
        if !trace.is_subset(&below(&lm.sup)) {
            return fail(1, k, format!("trace {trace} not below {}", lm.sup));
        }
        // (ii) the open neighbourhood [(a,1),(x,1)) has trace exactly [a, x),
        // so its right end must be at least M(z)
        let a = trace.inf_cut().and_then(|c| match c {
            Cut::Above(v) | Cut::Below(v) => Some(v.clone()),
            _ => None,
        });
        let Some(a) = a else {
            return fail(2, k, "empty trace".into());
        };
        let widened = OrderInterval {
            lower: Some(LexBound { x: a.clone(), side: 1, closed: true }),
            upper: Some(LexBound { x: x.clone(), side: 1, closed: false }),
        }
        .to_set();
        if !widened.is_nbhd_of(x, 0) || !is_open_arrow(&widened) {
            return fail(2, k, format!("{widened} is not an open neighbourhood"));
        }
        if widened.side1 != RealSet::closed_open(&a, x) || lm.sup > *x {
            return fail(2, k, format!("trace {} vs [{a}, {x})", widened.side1));
        }
        // (v) the trace has a point below m(z)
        if trace.intersect(&below(&lm.min)).simplest_point().is_none() {
            return fail(5, k, format!("trace {trace} has nothing below {}", lm.min));
        }
        // (iv) y below the whole trace implies y < m(z)
        for y in &probes {
            if trace.is_subset(&above(y)) && *y >= lm.min {
                return fail(4, k, format!("{y} lies below the trace but not below {}", lm.min));
            }
        }
    }
    // (iii) each y < m(z) is below the trace of some canonical neighbourhood
    for y in probes.iter().filter(|y| **y < lm.min) {
        let hit = (0..=k_max.max(64)).find(|&k| nbhd_set(z, k).side1.is_subset(&above(y)));
        if hit.is_none() {
            return fail(3, k_max, format!("no neighbourhood trace above {y}"));
        }
    }
    Ok(None)
}

/// Every point of the set has a neighbourhood inside it.
pub fn is_open_arrow(set: &ArrowSet) -> bool {
    // candidate failures sit at span ends; interior points of spans are fine
    let mut pts = Vec::new();
    for side in [0u8, 1] {
        for s in set.side(side).spans() {
            for c in [&s.lo, &s.hi] {
                if let Cut::Below(v) | Cut::Above(v) = c {
                    pts.push(v.clone());
                }
            }
        }
    }
    pts.into_iter().all(|v| {
        [0u8, 1].iter().all(|&side| !set.contains(&v, side) || set.is_nbhd_of(&v, side))
    })
}

/// Rational sequences increasing to `x` (from below) in the side-1 copy:
/// `y_i = x - c·2^-i` for a few offsets `c`.
pub fn increasing_sequences(x: &Rat, count: usize) -> Vec<Vec<Rat>> {
    (0..count)
        .map(|j| {
            let c = x * &Rat::new(1, j as i64 + 2);
            (0..40).map(|i| x - &(&c * &Rat::pow2_neg(i))).collect()
        })
        .collect()
}

/// For each sequence: the index from which it stays in every canonical
/// neighbourhood of index `≤ k_max` (sequences are monotone, so the first
/// entry inside is decisive), or `None` if some neighbourhood is missed.
pub fn eventual_entry(z: &DoubleArrowPoint, seq: &[Rat], k_max: u64) -> Option<usize> {
    let mut worst = 0;
    for k in 0..=k_max {
        let u = nbhd_set(z, k);
        let first = seq.iter().position(|y| u.contains(y, 1))?;
        if !seq[first..].iter().all(|y| u.contains(y, 1)) {
            return None;
        }
        worst = worst.max(first);
    }
    Some(worst)
}
