//! The diagonal recursion against a candidate base on a bidirected space,
//! and the W scheme on the double arrow it is demonstrated on.
//!
//! W is the unit coding carried to side 1 of the double arrow and closed up
//! to order intervals: `W_a = [(lo,1), (hi,1))` for the unit node `[lo, hi)`
//! of `a`, and the root is the double arrow without its maximum `(1,0)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bidirected::{
    looks_check, nbhd_index_inside, nbhd_set, one_sided_cone, one_sided_offenders, q_set, witness_candidates,
    witness_cone, DoubleArrowPoint, DoubleArrowSpace, Direction, Relation,
};
use crate::check::{CheckResult, Witness};
use crate::openmap::{base_branch_evidence, OpenMapError, S1Answer, SchemeOracle};
use crate::rat::Rat;
use crate::scheme::{decode_eventual, encode_branch, nodes_below, unit_interval};
use crate::seqtree::{is_prefix, lex_before, Branch, Eventual, FinSeq, Tri};
use crate::sets::{ArrowSet, Cut, RealSet};
use crate::space::{SpacePoint, SpaceSet};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum DiagError {
    #[error("depth budget exhausted at step {step}: {detail}")]
    BudgetExhausted { step: u64, detail: String, trace: Box<DiagTrace> },
}

/// `W_a` as a set of the double arrow.
pub fn w_node(a: &FinSeq) -> ArrowSet {
    if a.lh() == 0 {
        return ArrowSet::new(RealSet::open(&Rat::zero(), &Rat::one()), RealSet::closed_open(&Rat::zero(), &Rat::one()));
    }
    let (lo, hi) = unit_interval(a);
    ArrowSet::new(RealSet::open_closed(&lo, &hi), RealSet::closed_open(&lo, &hi))
}

/// The limit of the unit nodes along `q`.
pub fn unit_value(q: &Branch) -> Option<Rat> {
    q.canonical().map(|e| decode_eventual(&e.prepend(0)))
}

/// The unit-coding branch with left ends converging to `v` from the left or
/// equal to it, for `0 ≤ v < 1`.
pub fn unit_branch(v: &Rat) -> Option<Branch> {
    if *v < Rat::zero() || *v >= Rat::one() {
        return None;
    }
    let e = encode_branch(v).canonical()?;
    let rest = if e.pre.is_empty() {
        let mut cycle = e.cycle[1..].to_vec();
        cycle.push(e.cycle[0]);
        Eventual { pre: Vec::new(), cycle }
    } else {
        Eventual { pre: e.pre[1..].to_vec(), cycle: e.cycle }
    };
    Some(Branch::from_eventual(&rest))
}

/// The W scheme on the double arrow minus `(1, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct WOracle;

impl SchemeOracle for WOracle {
    fn name(&self) -> &str {
        "double-arrow-w"
    }

    fn node_set(&self, a: &FinSeq) -> SpaceSet {
        SpaceSet::Arrow(w_node(a))
    }

    /// The order-interval hull of the fruits past `q` inside `W_{q↾n}`:
    /// side 1 `(v, h)`, side 0 `(v, h]`, where `h` is the node's right end
    /// (`1`, with `(1,0)` left out, at the root).
    fn cut_set(&self, q: &Branch, n: u64) -> Result<SpaceSet, OpenMapError> {
        let v = unit_value(q).ok_or_else(|| OpenMapError::Oracle(format!("{q} has no closed form")))?;
        if n == 0 {
            let one = Rat::one();
            return Ok(SpaceSet::Arrow(ArrowSet::new(RealSet::open(&v, &one), RealSet::open(&v, &one))));
        }
        let (_, h) = unit_interval(&q.restrict(n));
        Ok(SpaceSet::Arrow(ArrowSet::new(RealSet::open_closed(&v, &h), RealSet::open(&v, &h))))
    }

    fn fruit_members(&self, q: &Branch, _depth: u64) -> Vec<SpacePoint> {
        let Some(v) = unit_value(q) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        // dyadic side-0 points sit at a right end from some level on and
        // drop out of every child below it
        if v > Rat::zero() && v < Rat::one() && !v.is_dyadic() {
            out.push(SpacePoint::Arrow(DoubleArrowPoint { x: v.clone(), side: 0 }));
        }
        if unit_branch(&v).is_some_and(|b| b.same_as(q, 64) == Tri::True) {
            out.push(SpacePoint::Arrow(DoubleArrowPoint { x: v, side: 1 }));
        }
        out
    }

    fn branch_of(&self, x: &SpacePoint) -> Option<Branch> {
        let p = x.as_arrow()?;
        if p.side == 0 && (p.x.is_dyadic() || p.x >= Rat::one()) {
            return None;
        }
        unit_branch(&p.x)
    }

    /// Side-0 points have one branch at most, so its base-branch evidence
    /// settles the query.
    fn s1_witness(&self, x: &SpacePoint, prefix: &FinSeq, depth_budget: u64) -> S1Answer {
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
        let Some(q) = self.branch_of(x) else {
            return S1Answer::Unknown { reason: format!("{x} lies on no branch") };
        };
        match base_branch_evidence(self, &q, x, depth_budget) {
            CheckResult::HoldsToDepth { .. } => S1Answer::Found { branch: q },
            CheckResult::FailsWithWitness { witness } => S1Answer::Absent { certificate: witness },
            CheckResult::Unknown { reason, .. } => S1Answer::Unknown { reason },
        }
    }
}

/// Children of each W node, up to `children` of them plus the union of the
/// rest, must cover the node exactly. Fails at the first non-root node: its
/// right end on side 0 is in no child.
pub fn w_covering_check(depth: u64, children: u64) -> CheckResult {
    for a in nodes_below(depth, children) {
        let parent = w_node(&a);
        let mut kids: Vec<ArrowSet> = (0..children).map(|i| w_node(&a.push(i))).collect();
        let (lo_c, _) = unit_interval(&a.push(children));
        let hi = if a.lh() == 0 { Rat::one() } else { unit_interval(&a).1 };
        kids.push(ArrowSet::new(RealSet::open(&lo_c, &hi), RealSet::closed_open(&lo_c, &hi)));
        for (i, x) in kids.iter().enumerate() {
            if kids[i + 1..].iter().any(|y| !x.intersect(y).is_empty()) {
                return CheckResult::unknown(depth, format!("children of {a} overlap"));
            }
        }
        let union = kids.iter().fold(ArrowSet::empty(), |u, k| u.union(k));
        if !union.is_subset(&parent) {
            return CheckResult::unknown(depth, format!("children of {a} leave the node"));
        }
        if let Some(SpacePoint::Arrow(point)) = SpaceSet::Arrow(parent.minus(&union)).simplest_point() {
            return CheckResult::fails(Witness::UncoveredPoint { node: a, point, node_set: parent, children: kids });
        }
    }
    CheckResult::holds(depth)
}

/// The space the recursion runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceInstance {
    DoubleArrow { relation: Relation, flipped: bool },
    /// The Sorgenfrey line with its order; not bidirected.
    Sorgenfrey,
}

impl SpaceInstance {
    pub fn double_arrow(relation: Relation) -> SpaceInstance {
        SpaceInstance::DoubleArrow { relation, flipped: false }
    }

    fn arrow_space(&self) -> Option<DoubleArrowSpace> {
        match *self {
            SpaceInstance::DoubleArrow { relation, flipped } => Some(DoubleArrowSpace { relation, flipped }),
            SpaceInstance::Sorgenfrey => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// One completed step of the recursion, with every set it used, so the
/// invariants can be checked from the record alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagStep {
    pub n: u64,
    pub parity: Parity,
    pub p: FinSeq,
    pub node: SpaceSet,
    pub x: SpacePoint,
    pub q: Branch,
    pub m: u64,
    pub cut_m: SpaceSet,
    pub x_n: SpacePoint,
    /// `x_n↓` on even steps, `x_n↑` on odd ones.
    pub cone: SpaceSet,
    pub t_n: Branch,
    pub k: u64,
    pub a: u64,
    pub p_next: FinSeq,
    pub node_next: SpaceSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagStatus {
    Running,
    S1Failure,
    S2RefutationReady,
    PreconditionFailed,
    OracleInconsistent,
}

/// The query that stopped the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub step: u64,
    pub query: String,
    pub point: Option<SpacePoint>,
    pub prefix: FinSeq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagTrace {
    pub oracle: String,
    pub space: SpaceInstance,
    pub depth_budget: u64,
    pub steps: Vec<DiagStep>,
    pub status: DiagStatus,
    pub failure: Option<Failure>,
    pub certificates: Vec<Witness>,
    pub notes: Vec<String>,
}

impl DiagTrace {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            DiagStatus::Running | DiagStatus::S2RefutationReady => 0,
            _ => 1,
        }
    }
}

/// Simplest rational strictly between `lo` and `hi` with an odd denominator
/// above 1.
pub fn simplest_non_dyadic(lo: &Rat, hi: &Rat) -> Option<Rat> {
    (3i64..1 << 22).step_by(2).find_map(|d| {
        let n = (lo * &Rat::from_int(d)).floor() + 1;
        let v = Rat::new(n, d);
        (v < *hi && !v.is_dyadic()).then_some(v)
    })
}

/// Policy for "take any point of the node in this part": the simplest value
/// inside the first stretch of the part, non-dyadic on odd steps so that
/// side-0 picks lie on a branch.
fn pick_point(node: &ArrowSet, part: &ArrowSet, odd: bool) -> Option<DoubleArrowPoint> {
    let s = node.intersect(part);
    [1u8, 0].into_iter().find_map(|side| {
        let span = s.side(side).spans().first()?;
        let (Some(lo), Some(hi)) = (cut_value(&span.lo), cut_value(&span.hi)) else {
            return s.side(side).simplest_point().map(|x| DoubleArrowPoint { x, side });
        };
        let x = if odd { simplest_non_dyadic(lo, hi)? } else { Rat::simplest_between(Some(lo), Some(hi)) };
        s.contains(&x, side).then_some(DoubleArrowPoint { x, side })
    })
}

fn cut_value(c: &Cut) -> Option<&Rat> {
    match c {
        Cut::Below(r) | Cut::Above(r) => Some(r),
        _ => None,
    }
}

fn arrow(s: &SpaceSet) -> &ArrowSet {
    match s {
        SpaceSet::Arrow(a) => a,
        SpaceSet::Real(_) => panic!("expected a set of the double arrow"),
    }
}

fn sorgenfrey_precondition() -> Witness {
    let zero = SpacePoint::Real(Rat::zero());
    Witness::Precondition {
        detail: "with the order as relation no point of the Sorgenfrey line looks left: every neighbourhood \
                 [x, x + e) has points above x. The left part is empty, hence not dense."
            .into(),
        inner: Box::new(Witness::Density {
            nbhd: zero.canonical_nbhd(0),
            point: zero,
            k: 0,
            part: SpaceSet::Real(RealSet::empty()),
            missing: "left part".into(),
        }),
    }
}

/// Run the diagonal recursion for up to `max_steps` steps.
///
/// Choices: the point of each step by [`pick_point`]; `m`, `k`, `a` least
/// possible; `x_n` the first candidate whose cone is a neighbourhood of the
/// point; `p_{n+1} = q↾a ⌢ (q(a) + 1)`.
pub fn diagonalize(
    oracle: &dyn SchemeOracle,
    space: SpaceInstance,
    max_steps: u64,
    depth_budget: u64,
) -> Result<DiagTrace, DiagError> {
    let mut trace = DiagTrace {
        oracle: oracle.name().into(),
        space,
        depth_budget,
        steps: Vec::new(),
        status: DiagStatus::Running,
        failure: None,
        certificates: Vec::new(),
        notes: Vec::new(),
    };
    if oracle.name() == "double-arrow-w" {
        trace.notes.push("W lives on the double arrow without its maximum (1,0)".into());
    }
    let Some(da) = space.arrow_space() else {
        trace.status = DiagStatus::PreconditionFailed;
        trace.certificates.push(sorgenfrey_precondition());
        return Ok(trace);
    };
    let rel = da.relation;
    let mut p = FinSeq::empty();
    for n in 0..max_steps {
        let odd = n % 2 == 1;
        let (dir, part) = if odd { (Direction::Left, da.left_part()) } else { (Direction::Right, da.right_part()) };
        let exhausted = |trace: &DiagTrace, detail: String| DiagError::BudgetExhausted {
            step: n,
            detail,
            trace: Box::new(trace.clone()),
        };
        let node = oracle.node_set(&p);
        let Some(x) = pick_point(arrow(&node), &part, odd) else {
            return Err(exhausted(&trace, format!("no point of the part found in node {p}")));
        };
        let verdict = looks_check(&x, dir, 4, rel).verdict;
        if let Some(w) = verdict.witness() {
            trace.status = DiagStatus::PreconditionFailed;
            trace.failure = Some(Failure {
                step: n,
                query: "looks".into(),
                point: Some(SpacePoint::Arrow(x.clone())),
                prefix: p,
            });
            trace.certificates.push(Witness::Precondition {
                detail: format!("{x} does not look {dir:?} along Q"),
                inner: Box::new(w.clone()),
            });
            return Ok(trace);
        }
        let xs = SpacePoint::Arrow(x.clone());

        let q = match oracle.s1_witness(&xs, &p, depth_budget) {
            S1Answer::Found { branch } => branch,
            S1Answer::Absent { certificate } => {
                trace.status = DiagStatus::S1Failure;
                trace.failure = Some(Failure { step: n, query: "s1_witness".into(), point: Some(xs), prefix: p });
                trace.certificates.push(*certificate);
                return Ok(trace);
            }
            S1Answer::Unknown { reason } => return Err(exhausted(&trace, reason)),
        };
        if !is_prefix(&p, &q) {
            trace.status = DiagStatus::OracleInconsistent;
            trace.failure = Some(Failure { step: n, query: "s1_witness".into(), point: Some(xs), prefix: p.clone() });
            trace.certificates.push(Witness::TraceInvariant {
                step: n,
                invariant: "prefix".into(),
                detail: "the base branch does not pass through the current node".into(),
                member: None,
                set: None,
                before: Some(p.clone()),
                after: Some(q.restrict(p.lh())),
            });
            return Ok(trace);
        }

        let lh = p.lh();
        let Some(m) = oracle.shrink_index(&q, &xs, &node, lh + 1, lh + depth_budget) else {
            return Err(exhausted(&trace, "no cut set inside the node".into()));
        };
        let cut_m = oracle
            .cut_set(&q, m)
            .map_err(|e| exhausted(&trace, e.to_string()))?;
        let u = arrow(&cut_m).union(&x.singleton());
        let picked = (0..=depth_budget).find_map(|j| {
            let shrunk = u.intersect(&nbhd_set(&x, j));
            witness_candidates(rel, dir, &x, &shrunk)
                .into_iter()
                .find(|y| nbhd_index_inside(&x, &witness_cone(rel, dir, y)).is_some())
        });
        let Some(x_n) = picked else {
            return Err(exhausted(&trace, format!("no point of the cut set whose cone is a neighbourhood of {x}")));
        };
        let cone = SpaceSet::Arrow(witness_cone(rel, dir, &x_n));
        let x_ns = SpacePoint::Arrow(x_n);
        let Some(t_n) = oracle.branch_in_cut(&x_ns, &q, m, depth_budget) else {
            return Err(exhausted(&trace, format!("no branch of {x_ns} past the base branch")));
        };
        let Some(k) = (m + 1..=m + depth_budget)
            .find(|&k| lex_before(&q.restrict(k), &t_n.restrict(k), depth_budget) == Tri::True)
        else {
            return Err(exhausted(&trace, "the branches do not separate".into()));
        };
        let Some(a) = oracle.shrink_index(&q, &xs, &cone, k + 1, k + depth_budget) else {
            return Err(exhausted(&trace, "no cut set inside the cone".into()));
        };
        let p_next = q.restrict(a).push(q.at(a) + 1);
        let node_next = oracle.node_set(&p_next);
        if !node_next.is_subset(&cone) {
            trace.status = DiagStatus::OracleInconsistent;
            trace.failure = Some(Failure { step: n, query: "node_set".into(), point: Some(x_ns), prefix: p_next });
            trace.certificates.push(Witness::TraceInvariant {
                step: n,
                invariant: "member".into(),
                detail: "the next node leaves the cone of x_n".into(),
                member: node_next.minus(&cone).simplest_point(),
                set: Some(cone),
                before: None,
                after: None,
            });
            return Ok(trace);
        }
        trace.steps.push(DiagStep {
            n,
            parity: if odd { Parity::Odd } else { Parity::Even },
            p: p.clone(),
            node,
            x: xs,
            q,
            m,
            cut_m,
            x_n: x_ns,
            cone,
            t_n,
            k,
            a,
            p_next: p_next.clone(),
            node_next,
        });
        p = p_next;
    }
    trace.status = if trace.steps.len() >= 2 { DiagStatus::S2RefutationReady } else { DiagStatus::Running };
    Ok(trace)
}

fn member_violation(step: u64, invariant: &str, member: &SpacePoint, set: &SpaceSet) -> Option<Witness> {
    (!set.contains(member)).then(|| Witness::TraceInvariant {
        step,
        invariant: "member".into(),
        detail: invariant.into(),
        member: Some(member.clone()),
        set: Some(set.clone()),
        before: None,
        after: None,
    })
}

fn subset_violation(step: u64, invariant: &str, inner: &SpaceSet, outer: &SpaceSet) -> Option<Witness> {
    let stray = inner.minus(outer).simplest_point()?;
    member_violation(step, invariant, &stray, outer)
}

fn seq_violation(step: u64, invariant: &str, before: &FinSeq, after: &FinSeq) -> Option<Witness> {
    let holds = if invariant == "lex_before" {
        lex_before(before, after, 64) == Tri::True
    } else {
        before.is_proper_prefix_of(after)
    };
    (!holds).then(|| Witness::TraceInvariant {
        step,
        invariant: invariant.into(),
        detail: format!("{before} against {after}"),
        member: None,
        set: None,
        before: Some(before.clone()),
        after: Some(after.clone()),
    })
}

/// Everything a step must satisfy, from the record alone.
fn step_violation(rel: Relation, s: &DiagStep) -> Option<Witness> {
    let n = s.n;
    let dir = if s.parity == Parity::Odd { Direction::Left } else { Direction::Right };
    let x = s.x.as_arrow()?;
    let y = s.x_n.as_arrow()?;
    let q_len = |len: u64| s.q.restrict(len);
    member_violation(n, "x lies in the node", &s.x, &s.node)
        .or_else(|| subset_violation(n, "cut(q, m) lies in the node", &s.cut_m, &s.node))
        .or_else(|| member_violation(n, "x_n lies in cut(q, m)", &s.x_n, &s.cut_m))
        .or_else(|| member_violation(n, "x_n lies in Q", &s.x_n, &SpaceSet::Arrow(q_set(rel))))
        .or_else(|| {
            let cone = SpaceSet::Arrow(witness_cone(rel, dir, y));
            (cone != s.cone).then(|| Witness::TraceInvariant {
                step: n,
                invariant: "cone".into(),
                detail: "recorded cone is not the cone of x_n".into(),
                member: None,
                set: None,
                before: None,
                after: None,
            })
        })
        .or_else(|| {
            (nbhd_index_inside(x, arrow(&s.cone)).is_none()).then(|| Witness::TraceInvariant {
                step: n,
                invariant: "cone".into(),
                detail: "the cone of x_n is not a neighbourhood of x".into(),
                member: Some(s.x.clone()),
                set: None,
                before: None,
                after: None,
            })
        })
        .or_else(|| subset_violation(n, "the next node lies in the cone", &s.node_next, &s.cone))
        .or_else(|| seq_violation(n, "prefix", &s.p, &s.t_n.restrict(s.p.lh() + 1)))
        .or_else(|| seq_violation(n, "prefix", &s.p, &s.q.restrict(s.p.lh() + 1)))
        .or_else(|| seq_violation(n, "prefix", &s.p, &s.p_next))
        .or_else(|| seq_violation(n, "lex_before", &s.p_next, &s.t_n.restrict(s.p_next.lh())))
        .or_else(|| seq_violation(n, "lex_before", &q_len(s.k), &s.t_n.restrict(s.k)))
        .or_else(|| seq_violation(n, "prefix", &q_len(s.a), &s.p_next))
        .or_else(|| seq_violation(n, "lex_before", &q_len(s.a + 1), &s.p_next))
        .or_else(|| {
            (!(s.p.lh() < s.m && s.m < s.k && s.k < s.a)).then(|| Witness::TraceInvariant {
                step: n,
                invariant: "indices".into(),
                detail: format!("need lh(p) < m < k < a, got {} {} {} {}", s.p.lh(), s.m, s.k, s.a),
                member: None,
                set: None,
                before: None,
                after: None,
            })
        })
}

/// Re-check a trace without the oracle: every step's invariants, the chain
/// `p_0 = ⟨⟩`, `p_{n+1}` feeding step `n + 1`, and every certificate.
pub fn verify_trace(trace: &DiagTrace) -> CheckResult {
    let rel = match trace.space {
        SpaceInstance::DoubleArrow { relation, .. } => Some(relation),
        SpaceInstance::Sorgenfrey => None,
    };
    let mut prev = FinSeq::empty();
    for s in &trace.steps {
        if s.p != prev {
            return CheckResult::fails(Witness::TraceInvariant {
                step: s.n,
                invariant: "chain".into(),
                detail: "step does not start where the previous one ended".into(),
                member: None,
                set: None,
                before: Some(prev),
                after: Some(s.p.clone()),
            });
        }
        let Some(rel) = rel else {
            return CheckResult::unknown(0, "steps recorded on a space without a relation");
        };
        if let Some(w) = step_violation(rel, s) {
            return CheckResult::fails(w);
        }
        prev = s.p_next.clone();
    }
    if let Some(bad) = trace.certificates.iter().find(|w| !w.reverify()) {
        return CheckResult::unknown(trace.depth_budget, format!("certificate does not re-verify: {}", bad.summary()));
    }
    if matches!(trace.status, DiagStatus::S1Failure | DiagStatus::PreconditionFailed | DiagStatus::OracleInconsistent)
        && trace.certificates.is_empty()
    {
        return CheckResult::unknown(trace.depth_budget, "failure status without a certificate");
    }
    CheckResult::holds(trace.steps.len() as u64)
}

/// For every `k < k_max`: a completed even step and a completed odd step
/// past `k` whose `x_n` lie in `cut(V, p, k)` for the limit `p` (because
/// `t_n` leaves `p` to the right above level `k`) and bracket every point of
/// the last recorded node, hence every fruit point of `p`.
pub fn verify_property5(trace: &DiagTrace, k_max: u64) -> CheckResult {
    let SpaceInstance::DoubleArrow { relation, .. } = trace.space else {
        return CheckResult::unknown(k_max, "no relation on this space");
    };
    let Some(last) = trace.steps.last() else {
        return if k_max == 0 { CheckResult::holds(0) } else { CheckResult::unknown(k_max, "no completed step") };
    };
    let fruit_hull = &last.node_next;
    let good = |s: &DiagStep, k: u64| {
        s.p.lh() >= k
            && step_violation(relation, s).is_none()
            && fruit_hull.is_subset(&s.cone)
    };
    for k in 0..k_max {
        for parity in [Parity::Even, Parity::Odd] {
            if !trace.steps.iter().any(|s| s.n > k && s.parity == parity && good(s, k)) {
                return CheckResult::unknown(k, format!("no completed {parity:?} step with index above {k}"));
            }
        }
    }
    CheckResult::holds(k_max)
}

/// Per-level evidence against `p` being a base branch of `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefuteWitness {
    pub k: u64,
    /// A point of `cut(V, p, k) ∩ Q` on the wrong side of `point`.
    pub y: DoubleArrowPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRefutation {
    pub point: DoubleArrowPoint,
    pub direction: Direction,
    pub witnesses: Vec<RefuteWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub branch: Branch,
    pub candidates: Vec<CandidateRefutation>,
    pub verdict: CheckResult,
}

/// For each fruit candidate `z` of `p` (or just `point`) and each `k ≤ k_max`,
/// a point of `cut(V, p, k)` along `Q` outside the cone `z` must keep its
/// one-sided neighbourhoods in: `cut(V,p,k) ∪ {z}` is then not R-right
/// (R-left) of `z`, and since `z` looks that way, `p` is no base branch of it.
pub fn refute_s2(
    oracle: &dyn SchemeOracle,
    space: &DoubleArrowSpace,
    p: &Branch,
    point: Option<&DoubleArrowPoint>,
    k_max: u64,
) -> Result<RefutationReport, OpenMapError> {
    let rel = space.relation;
    let zs: Vec<DoubleArrowPoint> = match point {
        Some(z) => vec![z.clone()],
        None => oracle
            .fruit_members(p, 64)
            .into_iter()
            .filter_map(|z| z.as_arrow().cloned())
            .collect(),
    };
    let mut report = RefutationReport { branch: p.clone(), candidates: Vec::new(), verdict: CheckResult::holds(k_max) };
    for z in zs {
        let dir = space.direction_of(&z);
        let mut cand = CandidateRefutation { point: z.clone(), direction: dir, witnesses: Vec::new() };
        for k in 0..=k_max {
            let cut = oracle.cut_set(p, k)?;
            let bad = one_sided_offenders(rel, dir, &z, arrow(&cut));
            match SpaceSet::Arrow(bad).simplest_point() {
                Some(SpacePoint::Arrow(y)) => cand.witnesses.push(RefuteWitness { k, y }),
                _ => {
                    if report.verdict.is_holds() {
                        report.verdict = CheckResult::fails(Witness::BaseBranchSurvives {
                            point: z.clone(),
                            k,
                            cut: arrow(&cut).intersect(&q_set(rel)).minus(&z.singleton()),
                            cone: one_sided_cone(rel, dir, &z),
                        });
                    }
                    break;
                }
            }
        }
        report.candidates.push(cand);
    }
    Ok(report)
}

/// Re-check one refutation witness against the oracle's cut set.
pub fn refute_witness_holds(
    oracle: &dyn SchemeOracle,
    space: &DoubleArrowSpace,
    p: &Branch,
    z: &DoubleArrowPoint,
    w: &RefuteWitness,
) -> bool {
    let rel = space.relation;
    let Ok(SpaceSet::Arrow(cut)) = oracle.cut_set(p, w.k) else {
        return false;
    };
    w.y != *z
        && cut.contains(&w.y.x, w.y.side)
        && q_set(rel).contains(&w.y.x, w.y.side)
        && !one_sided_cone(rel, space.direction_of(z), z).contains(&w.y.x, w.y.side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn fs(v: &[u64]) -> FinSeq {
        FinSeq(v.to_vec())
    }

    fn pt(x: &str, side: u8) -> DoubleArrowPoint {
        DoubleArrowPoint { x: rat(x), side }
    }

    #[test]
    fn w_node_examples() {
        let root = w_node(&FinSeq::empty());
        assert!(!root.contains(&rat("1"), 0) && root.contains(&rat("0"), 1) && root.contains(&rat("1/2"), 0));
        let n2 = w_node(&fs(&[2]));
        assert!(n2.contains(&rat("3/4"), 1) && !n2.contains(&rat("3/4"), 0));
        assert!(n2.contains(&rat("7/8"), 0) && !n2.contains(&rat("7/8"), 1));
        assert_eq!(w_node(&fs(&[2, 0])), ArrowSet::new(
            RealSet::open_closed(&rat("3/4"), &rat("13/16")),
            RealSet::closed_open(&rat("3/4"), &rat("13/16")),
        ));
    }

    #[test]
    fn unit_branches_decode_back() {
        for s in ["1/3", "0", "1/2", "5/7", "13/16", "2/3"] {
            let v = rat(s);
            assert_eq!(unit_value(&unit_branch(&v).unwrap()), Some(v));
        }
        assert_eq!(unit_branch(&rat("2/3")), Some(Branch::constant(FinSeq::empty(), 1)));
        assert_eq!(unit_branch(&rat("1/2")), Some(Branch::zero(fs(&[1]))));
    }

    #[test]
    fn fruit_structure() {
        for s in ["1/3", "5/7", "2/9", "10/11"] {
            let q = unit_branch(&rat(s)).unwrap();
            let f = WOracle.fruit_members(&q, 12);
            assert_eq!(f, vec![SpacePoint::Arrow(pt(s, 0)), SpacePoint::Arrow(pt(s, 1))]);
        }
        for s in ["0", "1/2", "3/4", "5/16"] {
            let q = unit_branch(&rat(s)).unwrap();
            assert_eq!(WOracle.fruit_members(&q, 12), vec![SpacePoint::Arrow(pt(s, 1))]);
        }
    }

    #[test]
    fn fruit_points_lie_in_every_node() {
        for s in ["1/3", "5/7", "1/2"] {
            let q = unit_branch(&rat(s)).unwrap();
            for z in WOracle.fruit_members(&q, 12) {
                for n in 0..12 {
                    assert!(WOracle.node_set(&q.restrict(n)).contains(&z), "{z} at {n}");
                }
            }
        }
    }

    #[test]
    fn covering_fails_at_right_ends() {
        let r = w_covering_check(1, 6);
        assert!(r.is_holds(), "{r:?}");
        let r = w_covering_check(4, 6);
        match r.witness() {
            Some(w @ Witness::UncoveredPoint { node, point, .. }) => {
                assert_eq!(*node, fs(&[0]));
                assert_eq!(*point, pt("1/2", 0));
                assert!(w.reverify());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn side0_points_have_no_base_branch() {
        let x = SpacePoint::Arrow(pt("1/3", 0));
        match WOracle.s1_witness(&x, &FinSeq::empty(), 16) {
            S1Answer::Absent { certificate } => {
                assert!(matches!(*certificate, Witness::NoBaseNeighborhood { .. }));
                assert!(certificate.reverify());
            }
            other => panic!("{other:?}"),
        }
        let x = SpacePoint::Arrow(pt("1/3", 1));
        assert!(matches!(WOracle.s1_witness(&x, &FinSeq::empty(), 16), S1Answer::Found { .. }));
    }

    #[test]
    fn diagonalize_on_w() {
        let t = diagonalize(&WOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).unwrap();
        assert_eq!(t.steps.len(), 1);
        let s = &t.steps[0];
        assert_eq!(s.x, SpacePoint::Arrow(pt("1/2", 1)));
        assert_eq!(s.q, Branch::zero(fs(&[1])));
        assert_eq!((s.m, s.k, s.a), (1, 2, 3));
        assert_eq!(s.x_n, SpacePoint::Arrow(pt("2/3", 1)));
        assert_eq!(s.t_n, Branch::constant(FinSeq::empty(), 1));
        assert_eq!(s.p_next, fs(&[1, 0, 0, 1]));
        assert_eq!(t.status, DiagStatus::S1Failure);
        let f = t.failure.as_ref().unwrap();
        assert_eq!(f.point, Some(SpacePoint::Arrow(pt("6/11", 0))));
        assert!(verify_trace(&t).is_holds());
        assert!(matches!(verify_property5(&t, 1), CheckResult::Unknown { .. }));
        assert!(verify_property5(&t, 0).is_holds());
    }

    #[test]
    fn diagonalize_edge_cases() {
        let t = diagonalize(&WOracle, SpaceInstance::double_arrow(Relation::Lex), 0, 16).unwrap();
        assert!(t.steps.is_empty() && t.status == DiagStatus::Running);
        let t = diagonalize(&crate::openmap::VsOracle, SpaceInstance::Sorgenfrey, 4, 16).unwrap();
        assert_eq!(t.status, DiagStatus::PreconditionFailed);
        assert!(t.certificates[0].reverify());
        let flipped = SpaceInstance::DoubleArrow { relation: Relation::Constructed, flipped: true };
        let t = diagonalize(&WOracle, flipped, 4, 16).unwrap();
        assert_eq!(t.status, DiagStatus::PreconditionFailed);
        assert!(t.certificates[0].reverify());
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let mut t = diagonalize(&WOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).unwrap();
        t.steps[0].p_next = fs(&[1, 0]);
        let r = verify_trace(&t);
        assert!(r.witness().is_some_and(|w| w.reverify()), "{r:?}");
    }

    #[test]
    fn refute_third() {
        let space = DoubleArrowSpace::new(Relation::Constructed);
        let p = unit_branch(&rat("1/3")).unwrap();
        let z = pt("1/3", 0);
        let r = refute_s2(&WOracle, &space, &p, Some(&z), 8).unwrap();
        assert!(r.verdict.is_holds());
        assert_eq!(r.candidates[0].witnesses.len(), 9);
        for w in &r.candidates[0].witnesses {
            assert!(w.y.side == 1 && w.y.x > rat("1/3"));
            assert!(refute_witness_holds(&WOracle, &space, &p, &z, w));
        }
        // the side-1 point survives: its cut sets stay on the right
        let r = refute_s2(&WOracle, &space, &p, Some(&pt("1/3", 1)), 8).unwrap();
        assert!(r.verdict.witness().is_some_and(|w| w.reverify()));
        let r = refute_s2(&WOracle, &space, &unit_branch(&rat("1/2")).unwrap(), None, 0).unwrap();
        assert!(matches!(r.verdict, CheckResult::FailsWithWitness { .. }));
    }
}
