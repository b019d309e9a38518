//! Points and finitely described sets of the two supported spaces: the
//! Sorgenfrey line and the double-arrow space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bidirected::{nbhd_set, DoubleArrowPoint};
use crate::rat::Rat;
use crate::sets::{ArrowSet, RealSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpacePoint {
    Arrow(DoubleArrowPoint),
    Real(Rat),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", content = "set", rename_all = "snake_case")]
pub enum SpaceSet {
    Real(RealSet),
    Arrow(ArrowSet),
}

impl SpacePoint {
    pub fn value(&self) -> &Rat {
        match self {
            SpacePoint::Arrow(p) => &p.x,
            SpacePoint::Real(x) => x,
        }
    }

    pub fn singleton(&self) -> SpaceSet {
        match self {
            SpacePoint::Arrow(p) => SpaceSet::Arrow(p.singleton()),
            SpacePoint::Real(x) => SpaceSet::Real(RealSet::point(x)),
        }
    }

    /// The canonical basic neighbourhood of index `k`: `[x, x + 2^-k)` on
    /// the line, `nbhd_basic` on the double arrow.
    pub fn canonical_nbhd(&self, k: u64) -> SpaceSet {
        match self {
            SpacePoint::Arrow(p) => SpaceSet::Arrow(nbhd_set(p, k)),
            SpacePoint::Real(x) => SpaceSet::Real(RealSet::closed_open(x, &(x + &Rat::pow2_neg(k)))),
        }
    }

    pub fn as_arrow(&self) -> Option<&DoubleArrowPoint> {
        match self {
            SpacePoint::Arrow(p) => Some(p),
            SpacePoint::Real(_) => None,
        }
    }
}

impl fmt::Display for SpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacePoint::Arrow(p) => write!(f, "{p}"),
            SpacePoint::Real(x) => write!(f, "{x}"),
        }
    }
}

impl SpaceSet {
    pub fn contains(&self, p: &SpacePoint) -> bool {
        match (self, p) {
            (SpaceSet::Real(s), SpacePoint::Real(x)) => s.contains(x),
            (SpaceSet::Arrow(s), SpacePoint::Arrow(p)) => p.in_domain() && s.contains(&p.x, p.side),
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SpaceSet::Real(s) => s.is_empty(),
            SpaceSet::Arrow(s) => s.is_empty(),
        }
    }

    fn zip(&self, o: &SpaceSet, fr: impl Fn(&RealSet, &RealSet) -> RealSet, fa: impl Fn(&ArrowSet, &ArrowSet) -> ArrowSet) -> SpaceSet {
        match (self, o) {
            (SpaceSet::Real(a), SpaceSet::Real(b)) => SpaceSet::Real(fr(a, b)),
            (SpaceSet::Arrow(a), SpaceSet::Arrow(b)) => SpaceSet::Arrow(fa(a, b)),
            _ => panic!("mixing sets of different spaces"),
        }
    }

    pub fn union(&self, o: &SpaceSet) -> SpaceSet {
        self.zip(o, RealSet::union, ArrowSet::union)
    }

    pub fn intersect(&self, o: &SpaceSet) -> SpaceSet {
        self.zip(o, RealSet::intersect, ArrowSet::intersect)
    }

    pub fn minus(&self, o: &SpaceSet) -> SpaceSet {
        self.zip(o, RealSet::minus, ArrowSet::minus)
    }

    pub fn is_subset(&self, o: &SpaceSet) -> bool {
        self.minus(o).is_empty()
    }

    /// Interior membership: `p` has a basic neighbourhood inside the set.
    pub fn is_nbhd_of(&self, p: &SpacePoint) -> bool {
        match (self, p) {
            (SpaceSet::Real(s), SpacePoint::Real(x)) => s.is_sorgenfrey_nbhd(x),
            (SpaceSet::Arrow(s), SpacePoint::Arrow(p)) => s.is_nbhd_of(&p.x, p.side),
            _ => false,
        }
    }

    /// A simple member: smallest denominator, side 1 preferred.
    pub fn simplest_point(&self) -> Option<SpacePoint> {
        match self {
            SpaceSet::Real(s) => s.simplest_point().map(SpacePoint::Real),
            SpaceSet::Arrow(s) => {
                let one = s.side1.simplest_point().map(|x| DoubleArrowPoint { x, side: 1 });
                let zero = s.side0.simplest_point().map(|x| DoubleArrowPoint { x, side: 0 });
                match (one, zero) {
                    (Some(a), Some(b)) => Some(if b.x.denom() < a.x.denom() { b } else { a }),
                    (a, b) => a.or(b),
                }
                .map(SpacePoint::Arrow)
            }
        }
    }
}

impl fmt::Display for SpaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSet::Real(s) => write!(f, "{s}"),
            SpaceSet::Arrow(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn json_shapes() {
        let p = SpacePoint::Arrow(DoubleArrowPoint { x: rat("1/3"), side: 0 });
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"x":"1/3","side":0}"#);
        assert_eq!(serde_json::from_str::<SpacePoint>(&s).unwrap(), p);
        let r = SpacePoint::Real(rat("2"));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#""2/1""#);
        let set = SpaceSet::Real(RealSet::closed_open(&rat("0"), &rat("1")));
        let back: SpaceSet = serde_json::from_str(&serde_json::to_string(&set).unwrap()).unwrap();
        assert_eq!(back, set);
    }
}
