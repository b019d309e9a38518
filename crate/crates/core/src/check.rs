//! Three-valued verdicts and the witness payloads attached to failures.
//!
//! Every witness carries enough data to be re-checked on its own:
//! [`Witness::reverify`] recomputes the violated predicate from the payload
//! and returns `true` when the violation is confirmed.

use serde::{Deserialize, Serialize};

use crate::bidirected::{Direction, DoubleArrowPoint, Relation};
use crate::rat::Rat;
use crate::scheme::IntervalDesc;
use crate::seqtree::{Branch, FinSeq};
use crate::sets::{ArrowSet, RealSet};
use crate::space::{SpacePoint, SpaceSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CheckResult {
    HoldsToDepth { depth: u64 },
    FailsWithWitness { witness: Box<Witness> },
    Unknown { budget: u64, reason: String },
}

impl CheckResult {
    pub fn holds(depth: u64) -> CheckResult {
        CheckResult::HoldsToDepth { depth }
    }

    pub fn fails(w: Witness) -> CheckResult {
        CheckResult::FailsWithWitness { witness: Box::new(w) }
    }

    pub fn unknown(budget: u64, reason: impl Into<String>) -> CheckResult {
        CheckResult::Unknown { budget, reason: reason.into() }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, CheckResult::HoldsToDepth { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CheckResult::FailsWithWitness { witness } => Some(witness),
            _ => None,
        }
    }

    /// 0 holds, 1 fails, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            CheckResult::HoldsToDepth { .. } => 0,
            CheckResult::FailsWithWitness { .. } => 1,
            CheckResult::Unknown { .. } => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CheckResult::HoldsToDepth { depth } => format!("holds to depth {depth}"),
            CheckResult::FailsWithWitness { witness } => format!("fails: {}", witness.summary()),
            CheckResult::Unknown { budget, reason } => format!("unknown at budget {budget}: {reason}"),
        }
    }
}

/// A left-side approach point used in emptiness certificates: the side-1
/// point `(y, 1)` lies in the canonical neighbourhood of index `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftWitness {
    pub k: u64,
    pub y: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two sibling intervals intersect.
    ChildOverlap {
        node: FinSeq,
        other: FinSeq,
        node_interval: IntervalDesc,
        other_interval: IntervalDesc,
    },
    /// A child is not a nonempty half-open interval inside its parent.
    ChildNotNested {
        parent: FinSeq,
        child: FinSeq,
        parent_interval: IntervalDesc,
        child_interval: IntervalDesc,
    },
    /// Consecutive children do not meet, or child 0 misses the parent's
    /// left end, or the residual tail is not what halving predicts.
    ChildGap {
        parent: FinSeq,
        child: FinSeq,
        expected_lo: Rat,
        found_lo: Rat,
    },
    /// A node interval or child step is longer than allowed.
    StepBound {
        node: FinSeq,
        interval: IntervalDesc,
        bound: Rat,
    },
    /// One of the rsubtree/rsequences items disagrees on a concrete branch:
    /// `truth` is whether `p ∈ rsequences(q, n)`, `claimed` is what the
    /// item's other side says.
    Aqn {
        item: u8,
        q: Branch,
        p: Branch,
        n: u64,
        detail: String,
        truth: bool,
        claimed: bool,
    },
    /// A cut-base family element fails nesting or shrinking.
    CutBase {
        x: Rat,
        m: u64,
        outer: RealSet,
        inner: RealSet,
    },
    /// Mapped point lands outside the claimed image set.
    ImageIdentity {
        n: u64,
        direction: String,
        point: SpacePoint,
        target: SpaceSet,
    },
    /// A canonical neighbourhood misses one of the parts that must be dense.
    Density {
        point: SpacePoint,
        k: u64,
        nbhd: SpaceSet,
        part: SpaceSet,
        missing: String,
    },
    /// A looks-right/looks-left condition fails at `point`. For the first
    /// bullet `offending` holds the points breaking one-sidedness of
    /// `nbhd`; for the second it is the pool no witness was found in.
    Looks {
        point: DoubleArrowPoint,
        direction: Direction,
        relation: Relation,
        bullet: u8,
        k: u64,
        nbhd: ArrowSet,
        offending: ArrowSet,
        reason: String,
    },
    /// No cut-base element of `point` fits inside its canonical
    /// neighbourhood: every cut set lies strictly to the right of `x` while
    /// the neighbourhood of index 1 contains the listed left points.
    NoBaseNeighborhood {
        point: DoubleArrowPoint,
        nbhd: ArrowSet,
        cut0: ArrowSet,
        left_points: Vec<LeftWitness>,
    },
    /// Every cut set contains a Q-point on the wrong relation side of z,
    /// except at index `k` where the wrong-side set is empty.
    BaseBranchSurvives {
        point: DoubleArrowPoint,
        k: u64,
        cut: ArrowSet,
        cone: ArrowSet,
    },
    /// A point of a node lies in none of its listed children.
    UncoveredPoint {
        node: FinSeq,
        point: DoubleArrowPoint,
        node_set: ArrowSet,
        children: Vec<ArrowSet>,
    },
    /// A diagonalizer trace invariant fails at `step`: `member ∉ set`, or
    /// `before` is not a proper prefix of `after` (not ◁-before it when
    /// the invariant is `lex_before`).
    TraceInvariant {
        step: u64,
        invariant: String,
        detail: String,
        member: Option<SpacePoint>,
        set: Option<SpaceSet>,
        before: Option<FinSeq>,
        after: Option<FinSeq>,
    },
    /// One of the technical-lemma items fails at `point`.
    TechnicalLemma { point: DoubleArrowPoint, item: u8, k: u64, detail: String },
    /// The space does not split into a right-looking and a left-looking
    /// dense part for the given relation.
    Precondition { detail: String, inner: Box<Witness> },
}

impl Witness {
    pub fn summary(&self) -> String {
        match self {
            Witness::ChildOverlap { node, other, .. } => format!("children {node} and {other} overlap"),
            Witness::ChildNotNested { child, .. } => format!("child {child} not nested in its parent"),
            Witness::ChildGap { child, .. } => format!("gap before child {child}"),
            Witness::StepBound { node, .. } => format!("step bound violated at {node}"),
            Witness::Aqn { item, q, n, .. } => format!("rsubtree item {item} fails for q={q}, n={n}"),
            Witness::CutBase { x, m, .. } => format!("cut-base family of {x} fails at m={m}"),
            Witness::ImageIdentity { n, direction, point, .. } => {
                format!("image identity fails at n={n} ({direction}) for {point}")
            }
            Witness::Density { point, k, missing, .. } => format!("nbhd {k} of {point} misses the {missing}"),
            Witness::Looks { point, direction, k, reason, .. } => {
                format!("{point} does not look {direction:?} (k={k}): {reason}")
            }
            Witness::NoBaseNeighborhood { point, .. } => format!("no cut-base neighbourhood at {point}"),
            Witness::BaseBranchSurvives { point, k, .. } => {
                format!("branch is a base branch of {point} at k={k}")
            }
            Witness::UncoveredPoint { node, point, .. } => format!("{point} in node {node} lies in no child"),
            Witness::TraceInvariant { step, invariant, .. } => format!("trace step {step}: {invariant}"),
            Witness::TechnicalLemma { point, item, k, .. } => {
                format!("technical item {item} fails at {point}, k={k}")
            }
            Witness::Precondition { detail, .. } => format!("precondition: {detail}"),
        }
    }

    /// Recompute the violated predicate from the payload alone.
    pub fn reverify(&self) -> bool {
        crate::reverify::reverify(self)
    }
}
