//! Exact finite unions of rational intervals, and point sets of the
//! double-arrow space built from them.
//!
//! A [`RealSet`] is a normalized list of spans between Dedekind-style cuts.
//! Every cut sits just below or just above a rational (or at ±∞), so open,
//! closed and half-open ends are all the same shape and set equality is
//! plain vector equality after normalization.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cut {
    NegInf,
    Below(Rat),
    Above(Rat),
    PosInf,
}

impl Cut {
    fn key(&self) -> (u8, Option<&Rat>, u8) {
        match self {
            Cut::NegInf => (0, None, 0),
            Cut::Below(r) => (1, Some(r), 0),
            Cut::Above(r) => (1, Some(r), 1),
            Cut::PosInf => (2, None, 0),
        }
    }

    fn value(&self) -> Option<&Rat> {
        match self {
            Cut::Below(r) | Cut::Above(r) => Some(r),
            _ => None,
        }
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Cut) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Cut) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The reals strictly between two cuts; always nonempty once normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub lo: Cut,
    pub hi: Cut,
}

impl Span {
    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= Cut::Below(x.clone()) && Cut::Above(x.clone()) <= self.hi
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Cut::Below(a), Cut::Above(b)) = (&self.lo, &self.hi) {
            if a == b {
                return write!(f, "{{{a}}}");
            }
        }
        match &self.lo {
            Cut::NegInf => write!(f, "(-∞")?,
            Cut::Below(r) => write!(f, "[{r}")?,
            Cut::Above(r) => write!(f, "({r}")?,
            Cut::PosInf => unreachable!(),
        }
        write!(f, ", ")?;
        match &self.hi {
            Cut::PosInf => write!(f, "+∞)"),
            Cut::Below(r) => write!(f, "{r})"),
            Cut::Above(r) => write!(f, "{r}]"),
            Cut::NegInf => unreachable!(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealSet {
    spans: Vec<Span>,
}

impl RealSet {
    pub fn empty() -> RealSet {
        RealSet { spans: Vec::new() }
    }

    pub fn all() -> RealSet {
        RealSet::span(Cut::NegInf, Cut::PosInf)
    }

    pub fn span(lo: Cut, hi: Cut) -> RealSet {
        RealSet::from_spans(vec![Span { lo, hi }])
    }

    /// `[a, b)`
    pub fn closed_open(a: &Rat, b: &Rat) -> RealSet {
        RealSet::span(Cut::Below(a.clone()), Cut::Below(b.clone()))
    }

    /// `(a, b)`
    pub fn open(a: &Rat, b: &Rat) -> RealSet {
        RealSet::span(Cut::Above(a.clone()), Cut::Below(b.clone()))
    }

    /// `(a, b]`
    pub fn open_closed(a: &Rat, b: &Rat) -> RealSet {
        RealSet::span(Cut::Above(a.clone()), Cut::Above(b.clone()))
    }

    /// `[a, b]`
    pub fn closed(a: &Rat, b: &Rat) -> RealSet {
        RealSet::span(Cut::Below(a.clone()), Cut::Above(b.clone()))
    }

    pub fn point(a: &Rat) -> RealSet {
        RealSet::closed(a, a)
    }

    pub fn from_spans(mut spans: Vec<Span>) -> RealSet {
        spans.retain(|s| s.lo < s.hi);
        spans.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Span> = Vec::with_capacity(spans.len());
        for s in spans {
            match out.last_mut() {
                Some(last) if s.lo <= last.hi => {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                    }
                }
                _ => out.push(s),
            }
        }
        RealSet { spans: out }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.spans.iter().any(|s| s.contains(x))
    }

    pub fn union(&self, other: &RealSet) -> RealSet {
        let mut v = self.spans.clone();
        v.extend(other.spans.iter().cloned());
        RealSet::from_spans(v)
    }

    pub fn complement(&self) -> RealSet {
        let mut out = Vec::new();
        let mut cursor = Cut::NegInf;
        for s in &self.spans {
            out.push(Span { lo: cursor, hi: s.lo.clone() });
            cursor = s.hi.clone();
        }
        out.push(Span { lo: cursor, hi: Cut::PosInf });
        RealSet::from_spans(out)
    }

    pub fn intersect(&self, other: &RealSet) -> RealSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn minus(&self, other: &RealSet) -> RealSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &RealSet) -> bool {
        self.minus(other).is_empty()
    }

    /// Whether `[x, x + ε) ⊆ self` for some ε > 0 (Sorgenfrey interior).
    pub fn is_sorgenfrey_nbhd(&self, x: &Rat) -> bool {
        self.spans
            .iter()
            .any(|s| s.contains(x) && s.hi > Cut::Above(x.clone()))
    }

    /// Whether `(x - ε, x) ⊆ self` for some ε > 0.
    pub fn has_left_approach(&self, x: &Rat) -> bool {
        self.spans
            .iter()
            .any(|s| s.lo < Cut::Below(x.clone()) && Cut::Below(x.clone()) <= s.hi)
    }

    /// Whether `(x, x + ε) ⊆ self` for some ε > 0.
    pub fn has_right_approach(&self, x: &Rat) -> bool {
        self.spans
            .iter()
            .any(|s| s.lo <= Cut::Above(x.clone()) && Cut::Above(x.clone()) < s.hi)
    }

    /// Simplest rational in the set (smallest denominator first, then the
    /// first span).
    pub fn simplest_point(&self) -> Option<Rat> {
        self.spans
            .iter()
            .map(|s| match (&s.lo, &s.hi) {
                (Cut::Below(a), Cut::Above(b)) if a == b => a.clone(),
                (lo, hi) => {
                    let inner = Rat::simplest_between(lo.value(), hi.value());
                    // a closed endpoint may be simpler than anything inside
                    let ends = [
                        match lo {
                            Cut::Below(a) => Some(a.clone()),
                            _ => None,
                        },
                        match hi {
                            Cut::Above(b) => Some(b.clone()),
                            _ => None,
                        },
                    ];
                    ends.into_iter()
                        .flatten()
                        .fold(inner, |best, e| if e.denom() < best.denom() { e } else { best })
                }
            })
            .min_by(|a, b| a.denom().cmp(b.denom()))
    }

    /// Lower end of the infimum, if bounded.
    pub fn inf_cut(&self) -> Option<&Cut> {
        self.spans.first().map(|s| &s.lo)
    }

    pub fn sup_cut(&self) -> Option<&Cut> {
        self.spans.last().map(|s| &s.hi)
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "∅");
        }
        for (i, s) in self.spans.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A set of double-arrow points: the side-0 values and the side-1 values,
/// each clipped to its domain `(0, 1]` resp. `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrowSet {
    pub side0: RealSet,
    pub side1: RealSet,
}

impl ArrowSet {
    pub fn new(side0: RealSet, side1: RealSet) -> ArrowSet {
        ArrowSet {
            side0: side0.intersect(&side0_domain()),
            side1: side1.intersect(&side1_domain()),
        }
    }

    pub fn empty() -> ArrowSet {
        ArrowSet { side0: RealSet::empty(), side1: RealSet::empty() }
    }

    pub fn whole() -> ArrowSet {
        ArrowSet::new(RealSet::all(), RealSet::all())
    }

    pub fn side(&self, side: u8) -> &RealSet {
        if side == 0 {
            &self.side0
        } else {
            &self.side1
        }
    }

    pub fn contains(&self, x: &Rat, side: u8) -> bool {
        self.side(side).contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.side0.is_empty() && self.side1.is_empty()
    }

    pub fn union(&self, o: &ArrowSet) -> ArrowSet {
        ArrowSet { side0: self.side0.union(&o.side0), side1: self.side1.union(&o.side1) }
    }

    pub fn intersect(&self, o: &ArrowSet) -> ArrowSet {
        ArrowSet { side0: self.side0.intersect(&o.side0), side1: self.side1.intersect(&o.side1) }
    }

    pub fn minus(&self, o: &ArrowSet) -> ArrowSet {
        ArrowSet { side0: self.side0.minus(&o.side0), side1: self.side1.minus(&o.side1) }
    }

    pub fn is_subset(&self, o: &ArrowSet) -> bool {
        self.side0.is_subset(&o.side0) && self.side1.is_subset(&o.side1)
    }

    /// Order-topology interior test at `(x, side)`.
    ///
    /// `(x,1)` has the immediate predecessor `(x,0)`, so only a right
    /// approach is needed; `(x,0)` symmetrically needs only a left one.
    /// The extreme points `(0,1)` and `(1,0)` are one-sided already.
    pub fn is_nbhd_of(&self, x: &Rat, side: u8) -> bool {
        if !self.contains(x, side) {
            return false;
        }
        if side == 1 {
            self.side0.has_right_approach(x) && self.side1.has_right_approach(x)
        } else {
            self.side0.has_left_approach(x) && self.side1.has_left_approach(x)
        }
    }
}

impl fmt::Display for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "side0 {} | side1 {}", self.side0, self.side1)
    }
}

pub fn side0_domain() -> RealSet {
    RealSet::open_closed(&Rat::zero(), &Rat::one())
}

pub fn side1_domain() -> RealSet {
    RealSet::closed_open(&Rat::zero(), &Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    #[test]
    fn merging_respects_endpoints() {
        let a = RealSet::closed_open(&rat("0"), &rat("1"));
        let b = RealSet::closed_open(&rat("1"), &rat("2"));
        assert_eq!(a.union(&b), RealSet::closed_open(&rat("0"), &rat("2")));
        let c = RealSet::open(&rat("0"), &rat("1")).union(&RealSet::open(&rat("1"), &rat("2")));
        assert_eq!(c.spans().len(), 2);
        assert!(!c.contains(&rat("1")));
        let d = c.union(&RealSet::point(&rat("1")));
        assert_eq!(d, RealSet::open(&rat("0"), &rat("2")));
    }

    #[test]
    fn complement_and_intersection() {
        let a = RealSet::closed_open(&rat("0"), &rat("1"));
        let c = a.complement();
        assert!(c.contains(&rat("1")) && c.contains(&rat("-1/2")) && !c.contains(&rat("0")));
        assert_eq!(c.complement(), a);
        let b = RealSet::open_closed(&rat("1/2"), &rat("3"));
        assert_eq!(a.intersect(&b), RealSet::open(&rat("1/2"), &rat("1")));
        assert!(RealSet::open(&rat("1/4"), &rat("1/2")).is_subset(&a));
    }

    #[test]
    fn sorgenfrey_interior() {
        let a = RealSet::closed_open(&rat("0"), &rat("1"));
        assert!(a.is_sorgenfrey_nbhd(&rat("0")));
        let b = RealSet::point(&rat("0")).union(&RealSet::open(&rat("1/2"), &rat("1")));
        assert!(!b.is_sorgenfrey_nbhd(&rat("0")));
    }

    #[test]
    fn arrow_interior() {
        // [(1/2,1), (3/4,1))
        let u = ArrowSet::new(
            RealSet::open_closed(&rat("1/2"), &rat("3/4")),
            RealSet::closed_open(&rat("1/2"), &rat("3/4")),
        );
        assert!(u.is_nbhd_of(&rat("1/2"), 1));
        assert!(!u.is_nbhd_of(&rat("1/2"), 0));
        // (3/4,0) is the predecessor of the excluded (3/4,1)
        assert!(u.is_nbhd_of(&rat("3/4"), 0));
        assert!(!u.contains(&rat("3/4"), 1));
        // whole space: extremes are interior
        let w = ArrowSet::whole();
        assert!(w.is_nbhd_of(&rat("0"), 1));
        assert!(w.is_nbhd_of(&rat("1"), 0));
        assert!(!w.contains(&rat("0"), 0));
        assert!(!w.contains(&rat("1"), 1));
    }

    #[test]
    fn simplest_points() {
        assert_eq!(RealSet::open(&rat("1/2"), &rat("3/4")).simplest_point(), Some(rat("2/3")));
        assert_eq!(RealSet::closed_open(&rat("0"), &rat("1")).simplest_point(), Some(rat("0")));
        assert_eq!(RealSet::empty().simplest_point(), None);
    }

    fn arb_set() -> impl Strategy<Value = RealSet> {
        prop::collection::vec((-8i64..8, 1i64..6, 0u8..4), 0..4).prop_map(|v| {
            v.into_iter().fold(RealSet::empty(), |acc, (a, w, kind)| {
                let lo = Rat::new(a, 2);
                let hi = Rat::new(a + w, 2);
                let s = match kind {
                    0 => RealSet::closed_open(&lo, &hi),
                    1 => RealSet::open(&lo, &hi),
                    2 => RealSet::closed(&lo, &hi),
                    _ => RealSet::point(&lo),
                };
                acc.union(&s)
            })
        })
    }

    proptest! {
        #[test]
        fn set_algebra_agrees_with_pointwise(a in arb_set(), b in arb_set()) {
            let u = a.union(&b);
            let i = a.intersect(&b);
            let d = a.minus(&b);
            for q in -40i64..40 {
                let x = Rat::new(q, 4);
                prop_assert_eq!(u.contains(&x), a.contains(&x) || b.contains(&x));
                prop_assert_eq!(i.contains(&x), a.contains(&x) && b.contains(&x));
                prop_assert_eq!(d.contains(&x), a.contains(&x) && !b.contains(&x));
            }
            prop_assert_eq!(a.complement().complement(), a.clone());
        }
    }
}
