//! Cut sets, cut-base neighbourhoods, the σ topology on Baire space, and
//! bounded-depth checks of the rsubtree/rsequences identities.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::{CheckResult, Witness};
use crate::rat::Rat;
use crate::scheme::{decode, encode, level1_index, vs_interval, zig, IntervalDesc};
use crate::seqtree::{in_rsequences, lex_before, minimal_rsubtree_antichain, Antichain, Branch, FinSeq, SeqError, Tri};
use crate::sets::{Cut, RealSet};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("branch {0} has no decidable fruit point")]
    Undecidable(Branch),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// `cut(V, q, n)` on the line: the open interval `(x, j)` right of the
/// fruit point inside the node `q↾n` (for `n ≥ 1`), or at level 0 the part
/// of the cell of `x` right of `x` together with every cell of larger
/// level-1 index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CutDesc {
    Open { x: Rat, j: Rat },
    Union { x: Rat, set: RealSet },
}

impl CutDesc {
    pub fn to_set(&self) -> RealSet {
        match self {
            CutDesc::Open { x, j } => RealSet::open(x, j),
            CutDesc::Union { set, .. } => set.clone(),
        }
    }

    pub fn point(&self) -> &Rat {
        match self {
            CutDesc::Open { x, .. } | CutDesc::Union { x, .. } => x,
        }
    }

    /// The cut with its point added.
    pub fn with_point(&self) -> RealSet {
        self.to_set().union(&RealSet::point(self.point()))
    }
}

impl fmt::Display for CutDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_set())
    }
}

/// Integer cells with level-1 index `≤ k` form the block `[lo, hi]`.
fn excluded_block(k: u64) -> (Rat, Rat) {
    let a = Rat::from_int(zig(k));
    let b = Rat::from_int(if k == 0 { zig(0) } else { zig(k - 1) });
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn cut_vs(q: &Branch, n: u64) -> Result<CutDesc, TopologyError> {
    let d = decode(q, 64);
    if !d.exact {
        return Err(TopologyError::Undecidable(q.clone()));
    }
    let x = d.value;
    if n >= 1 {
        let node = vs_interval(&q.restrict(n));
        let j = node.hi().expect("nonroot node").clone();
        return Ok(CutDesc::Open { x, j });
    }
    let k = q.at(0);
    let cell = Rat::from_int(zig(k));
    let (lo, hi) = excluded_block(k);
    let set = RealSet::span(Cut::NegInf, Cut::Below(lo))
        .union(&RealSet::span(Cut::Below(&hi + &Rat::one()), Cut::PosInf))
        .union(&RealSet::open(&x, &(&cell + &Rat::one())));
    Ok(CutDesc::Union { x, set })
}

/// `cut(V, q, m) ∪ {x}` for the branch `q` of `x`, computed from the child
/// walk of `x` alone: `[x, j_m)` for `m ≥ 1`.
pub fn cut_base_element(x: &Rat, m: u64) -> RealSet {
    if m >= 1 {
        let node = vs_interval(&encode(x, m));
        return RealSet::closed_open(x, node.hi().expect("nonroot node"));
    }
    let k = level1_index(&x.floor());
    let (lo, hi) = excluded_block(k);
    let cell_end = Rat::from_int(x.floor()) + Rat::one();
    RealSet::span(Cut::NegInf, Cut::Below(lo))
        .union(&RealSet::span(Cut::Below(&hi + &Rat::one()), Cut::PosInf))
        .union(&RealSet::closed_open(x, &cell_end))
}

/// Membership of `z` in `cut(S, p, n) ∪ {p}`.
pub fn sigma_basic_member(z: &Branch, p: &Branch, n: u64, depth_budget: u64) -> Tri {
    z.same_as(p, depth_budget).or(in_rsequences(z, p, n, depth_budget))
}

/// Index of a σ-basic set around `x` inside both `cut(S,p,n) ∪ {p}` and
/// `cut(S,q,m) ∪ {q}`: the larger of the two indices.
pub fn base_refinement(
    p: &Branch,
    n: u64,
    q: &Branch,
    m: u64,
    x: &Branch,
    depth_budget: u64,
) -> Result<u64, TopologyError> {
    for (b, i) in [(p, n), (q, m)] {
        if sigma_basic_member(x, b, i, depth_budget) != Tri::True {
            return Err(TopologyError::PreconditionFailed(format!("{x} is not in the basic set of ({b}, {i})")));
        }
    }
    Ok(n.max(m))
}

/// Random members of `rsequences(q, n)`: leave `q` at a level `m ≥ n` with a
/// larger entry, then continue with a random finite block and a zero tail.
pub fn sample_rsequences(q: &Branch, n: u64, count: usize, rng: &mut impl Rng) -> Vec<Branch> {
    (0..count)
        .map(|_| {
            let m = n + rng.gen_range(0..4);
            let mut stem = q.restrict(m).0;
            stem.push(q.at(m) + 1 + rng.gen_range(0..3));
            for _ in 0..rng.gen_range(0..4) {
                stem.push(rng.gen_range(0..5));
            }
            Branch::zero(stem)
        })
        .collect()
}

pub type RsubtreeFn<'a> = &'a dyn Fn(&Branch, u64, u64) -> Result<Antichain, SeqError>;

/// Exhaustive check of the four rsubtree/rsequences items on Baire space,
/// over the branches with zero tails whose prefixes have length
/// `< depth_bound` and entries `< entry_bound`.
pub fn aqn_bruteforce(entry_bound: u64, depth_bound: u64) -> CheckResult {
    aqn_bruteforce_with(entry_bound, depth_bound, &minimal_rsubtree_antichain)
}

pub fn aqn_bruteforce_with(entry_bound: u64, depth_bound: u64, rsubtree: RsubtreeFn<'_>) -> CheckResult {
    let universe = zero_tail_universe(entry_bound, depth_bound);
    let d = depth_bound;
    let member = |p: &Branch, q: &Branch, n: u64| in_rsequences(p, q, n, d + 1) == Tri::True;
    // `truth` is membership of p in rsequences(q, n); `claimed` is what the
    // other description says
    let fail = |item: u8, q: &Branch, p: &Branch, n: u64, detail: &str, truth: bool, claimed: bool| {
        CheckResult::fails(Witness::Aqn { item, q: q.clone(), p: p.clone(), n, detail: detail.into(), truth, claimed })
    };
    for q in &universe {
        for n in 0..d {
            let cut: Vec<&Branch> = universe.iter().filter(|p| member(p, q, n)).collect();
            // (i) shrinking in the level
            for m in n..d {
                for p in &universe {
                    if member(p, q, m) && !member(p, q, n) {
                        return fail(1, q, p, n, &format!("in rsequences at level {m} but not {n}"), false, true);
                    }
                }
            }
            // (ii) moving the base point left with the same level-n prefix
            for r in &universe {
                let left_or_equal = lex_before(r, q, d + 1) == Tri::True || r == q;
                if !left_or_equal || r.restrict(n) != q.restrict(n) {
                    continue;
                }
                for p in &cut {
                    if !member(p, r, n) {
                        return fail(2, r, p, n, &format!("in rsequences of {q} but not of this base"), false, true);
                    }
                }
            }
            // (iii) some finite restriction lies in the brute-force rsubtree
            for p in &universe {
                let via_tree = (n + 1..=d + 1).any(|k| brute_rsubtree_member(q, n, &p.restrict(k)));
                let direct = member(p, q, n);
                if via_tree != direct {
                    return fail(3, q, p, n, "rsubtree restriction test disagrees", direct, via_tree);
                }
            }
            // (iv) fruit union, antichain union and the node predicate agree
            let antichain = match rsubtree(q, n, d) {
                Ok(a) => a,
                Err(e) => return fail(4, q, q, n, &e.to_string(), false, false),
            };
            let node = q.restrict(n);
            for p in &universe {
                let by_fruit = member(p, q, n);
                let by_antichain = antichain.covers(p);
                let by_predicate = p.restrict(n) == node && first_divergence_up(q, p, d + 1);
                if by_fruit != by_antichain {
                    return fail(4, q, p, n, "antichain union disagrees", by_fruit, by_antichain);
                }
                if by_fruit != by_predicate {
                    return fail(4, q, p, n, "node predicate disagrees", by_fruit, by_predicate);
                }
            }
        }
    }
    CheckResult::holds(depth_bound)
}

/// Zero-tail branches with prefixes of length `< depth` and entries
/// `< bound`, without trailing zeros (so each branch appears once).
pub fn zero_tail_universe(bound: u64, depth: u64) -> Vec<Branch> {
    crate::scheme::nodes_below(depth, bound)
        .into_iter()
        .filter(|s| s.entries().last() != Some(&0))
        .map(|s| Branch::zero(s.0))
        .collect()
}

/// `s ∈ rsubtree(q, n)` by definition: `s` properly extends `q↾n` and
/// leaves `q` upwards at some position of `s`.
pub fn brute_rsubtree_member(q: &Branch, n: u64, s: &FinSeq) -> bool {
    s.lh() > n && q.restrict(n).is_prefix_of(s) && {
        let head = q.restrict(s.lh());
        head.0.iter().zip(&s.0).find(|(a, b)| a != b).is_some_and(|(a, b)| a < b)
    }
}

/// Position scan: the first position where `p` and `q` differ (among the
/// first `len`) has the larger entry in `p`.
fn first_divergence_up(q: &Branch, p: &Branch, len: u64) -> bool {
    q.entries()
        .zip(p.entries())
        .take(len as usize)
        .find(|(a, b)| a != b)
        .is_some_and(|(a, b)| a < b)
}

/// Bounded evidence that `q` is a base branch of its fruit point: the
/// cut-base sets are Sorgenfrey neighbourhoods `[x, j_m)`, nested, with
/// `j_m - x ≤ 2^(1-m)`.
pub fn s2_check_vs(q: &Branch, m_max: u64) -> CheckResult {
    let d = decode(q, 64);
    if !d.exact {
        return CheckResult::unknown(64, format!("fruit point of {q} not decided"));
    }
    let x = d.value;
    let mut outer = match cut_vs(q, 0) {
        Ok(c) => c.with_point(),
        Err(e) => return CheckResult::unknown(64, e.to_string()),
    };
    for m in 1..=m_max {
        let inner = match cut_vs(q, m) {
            Ok(c) => c.with_point(),
            Err(e) => return CheckResult::unknown(64, e.to_string()),
        };
        if cut_base_violation(&x, m, &outer, &inner) {
            return CheckResult::fails(Witness::CutBase { x, m, outer, inner });
        }
        outer = inner;
    }
    CheckResult::holds(m_max)
}

/// The cut-base element `inner` (index `m ≥ 1`) fails to be a Sorgenfrey
/// neighbourhood of `x` inside `outer` with width at most `2^(1-m)`.
pub fn cut_base_violation(x: &Rat, m: u64, outer: &RealSet, inner: &RealSet) -> bool {
    let bound = x + &Rat::pow2_neg(m - 1);
    !inner.is_subset(outer)
        || !inner.is_sorgenfrey_nbhd(x)
        || !inner.is_subset(&RealSet::span(Cut::NegInf, Cut::Above(bound)))
}

/// Widths `j_m - x` of the cut-base family, for reports.
pub fn cut_base_widths(q: &Branch, m_max: u64) -> Result<Vec<Rat>, TopologyError> {
    (1..=m_max)
        .map(|m| match cut_vs(q, m)? {
            CutDesc::Open { x, j } => Ok(&j - &x),
            CutDesc::Union { .. } => unreachable!("levels ≥ 1 are intervals"),
        })
        .collect()
}

/// The node interval of `q↾n` with its exact bounds, for reports.
pub fn node_of(q: &Branch, n: u64) -> IntervalDesc {
    vs_interval(&q.restrict(n))
}
