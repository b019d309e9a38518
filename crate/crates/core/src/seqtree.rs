//! Finite sequences of naturals, branch oracles for elements of the Baire
//! space, and the prefix / lexicographic relations between them.
//!
//! A [`Branch`] is a finite prefix followed by a total tail rule. Every tail
//! rule in this crate is eventually periodic, so equality and the strict
//! lexicographic relation are decided symbolically once a finite scan runs
//! out of budget. The one source of [`Tri::Unknown`] is an `Encoded` tail whose
//! orbit is too long to canonicalize (see [`ORBIT_CAP`]).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::Rat;
use crate::scheme::{level1_index, ChildOrbit};

/// Longest orbit scanned when canonicalizing an `Encoded` tail.
pub const ORBIT_CAP: usize = 1 << 18;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("restrict: position {n} exceeds length {len}")]
    OutOfRange { n: u64, len: u64 },
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
}

/// Three-valued outcome of a bounded decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    pub fn is_true(self) -> bool {
        self == Tri::True
    }
}

/// An element of ω^<ω.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinSeq(pub Vec<u64>);

impl FinSeq {
    pub fn empty() -> FinSeq {
        FinSeq(Vec::new())
    }

    pub fn lh(&self) -> u64 {
        self.0.len() as u64
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn restrict(&self, n: u64) -> Result<FinSeq, SeqError> {
        if n > self.lh() {
            return Err(SeqError::OutOfRange { n, len: self.lh() });
        }
        Ok(FinSeq(self.0[..n as usize].to_vec()))
    }

    /// `s⌢k`
    pub fn push(&self, k: u64) -> FinSeq {
        let mut v = self.0.clone();
        v.push(k);
        FinSeq(v)
    }

    pub fn concat(&self, other: &FinSeq) -> FinSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FinSeq(v)
    }

    pub fn is_prefix_of(&self, t: &FinSeq) -> bool {
        t.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, t: &FinSeq) -> bool {
        self.lh() < t.lh() && self.is_prefix_of(t)
    }
}

impl From<Vec<u64>> for FinSeq {
    fn from(v: Vec<u64>) -> FinSeq {
        FinSeq(v)
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "⟩")
    }
}

/// Continuation rule of a [`Branch`] after its prefix.
///
/// `Zero`, `Const` and `Periodic` are read relative to the end of the prefix.
/// `Encoded(x)` is the V^S branch of `x` read at absolute positions; the
/// prefix overrides its first entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Tail {
    Zero,
    Const { k: u64 },
    Periodic { period: Vec<u64> },
    Encoded { x: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BranchRepr")]
pub struct Branch {
    pub prefix: FinSeq,
    pub tail: Tail,
}

#[derive(Deserialize)]
struct BranchRepr {
    prefix: FinSeq,
    tail: Tail,
}

impl TryFrom<BranchRepr> for Branch {
    type Error = SeqError;

    fn try_from(r: BranchRepr) -> Result<Branch, SeqError> {
        Branch::new(r.prefix, r.tail)
    }
}

impl Branch {
    pub fn new(prefix: impl Into<FinSeq>, tail: Tail) -> Result<Branch, SeqError> {
        if let Tail::Periodic { period } = &tail {
            if period.is_empty() {
                return Err(SeqError::InvalidArgs("periodic tail needs a nonempty period".into()));
            }
        }
        Ok(Branch { prefix: prefix.into(), tail })
    }

    pub fn zero(prefix: impl Into<FinSeq>) -> Branch {
        Branch { prefix: prefix.into(), tail: Tail::Zero }
    }

    pub fn constant(prefix: impl Into<FinSeq>, k: u64) -> Branch {
        Branch { prefix: prefix.into(), tail: Tail::Const { k } }
    }

    pub fn periodic(prefix: impl Into<FinSeq>, period: Vec<u64>) -> Branch {
        Branch::new(prefix, Tail::Periodic { period }).expect("nonempty period")
    }

    pub fn encoded(x: Rat) -> Branch {
        Branch { prefix: FinSeq::empty(), tail: Tail::Encoded { x } }
    }

    pub fn from_eventual(e: &Eventual) -> Branch {
        if e.cycle.iter().all(|&c| c == 0) {
            Branch::zero(e.pre.clone())
        } else if e.cycle.iter().all(|&c| c == e.cycle[0]) {
            Branch::constant(e.pre.clone(), e.cycle[0])
        } else {
            Branch::periodic(e.pre.clone(), e.cycle.clone())
        }
    }

    pub fn entries(&self) -> BranchIter<'_> {
        let orbit = match &self.tail {
            Tail::Encoded { x } => Some((level1_index(&x.floor()), ChildOrbit::from_point(&x.fract()))),
            _ => None,
        };
        BranchIter { branch: self, pos: 0, orbit }
    }

    /// Entry at position `i`. Linear in `i` for `Encoded` tails.
    pub fn at(&self, i: u64) -> u64 {
        self.entries().nth(i as usize).expect("branches are infinite")
    }

    pub fn restrict(&self, n: u64) -> FinSeq {
        FinSeq(self.entries().take(n as usize).collect())
    }

    /// Canonical eventually periodic form; `None` when an encoded orbit does
    /// not close within [`ORBIT_CAP`] steps.
    pub fn canonical(&self) -> Option<Eventual> {
        let pre = self.prefix.0.clone();
        match &self.tail {
            Tail::Zero => Some(Eventual { pre, cycle: vec![0] }),
            Tail::Const { k } => Some(Eventual { pre, cycle: vec![*k] }),
            Tail::Periodic { period } => Some(Eventual { pre, cycle: period.clone() }),
            Tail::Encoded { x } => {
                let base = encoded_canonical(x)?;
                Some(base.override_prefix(&self.prefix.0))
            }
        }
    }

    /// Whether this branch coincides with `other` at every position.
    pub fn same_as(&self, other: &Branch, depth_budget: u64) -> Tri {
        match lex_cmp_branches(self, other, depth_budget) {
            Some(std::cmp::Ordering::Equal) => Tri::True,
            Some(_) => Tri::False,
            None => Tri::Unknown,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Tail::Zero => write!(f, "{}⌢0^ω", self.prefix),
            Tail::Const { k } => write!(f, "{}⌢{k}^ω", self.prefix),
            Tail::Periodic { period } => write!(f, "{}⌢{}^ω", self.prefix, FinSeq(period.clone())),
            Tail::Encoded { x } => write!(f, "{}|enc({x})", self.prefix),
        }
    }
}

pub struct BranchIter<'a> {
    branch: &'a Branch,
    pos: usize,
    orbit: Option<(u64, ChildOrbit)>,
}

impl Iterator for BranchIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let i = self.pos;
        self.pos += 1;
        let from_orbit = match &mut self.orbit {
            Some((first, orbit)) => Some(if i == 0 {
                *first
            } else {
                orbit.next().expect("open-right orbits never stop")
            }),
            None => None,
        };
        let plen = self.branch.prefix.0.len();
        if i < plen {
            return Some(self.branch.prefix.0[i]);
        }
        let rel = i - plen;
        Some(match &self.branch.tail {
            Tail::Zero => 0,
            Tail::Const { k } => *k,
            Tail::Periodic { period } => period[rel % period.len()],
            Tail::Encoded { .. } => from_orbit.expect("encoded tails carry an orbit"),
        })
    }
}

fn encoded_canonical(x: &Rat) -> Option<Eventual> {
    let mut entries = vec![level1_index(&x.floor())];
    let mut orbit = ChildOrbit::from_point(&x.fract());
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    for pos in 1..=ORBIT_CAP {
        if let Some(&start) = seen.get(orbit.state()) {
            let cycle = entries.split_off(start);
            return Some(Eventual { pre: entries, cycle });
        }
        seen.insert(orbit.state().clone(), pos);
        entries.push(orbit.next()?);
    }
    None
}

/// `pre ⌢ cycle^ω` with a nonempty cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eventual {
    pub pre: Vec<u64>,
    pub cycle: Vec<u64>,
}

impl Eventual {
    pub fn at(&self, i: usize) -> u64 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.cycle[(i - self.pre.len()) % self.cycle.len()]
        }
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.cycle.iter().all(|&c| c == 0)
    }

    pub fn prepend(&self, k: u64) -> Eventual {
        let mut pre = vec![k];
        pre.extend_from_slice(&self.pre);
        Eventual { pre, cycle: self.cycle.clone() }
    }

    /// Replace the first entries by `prefix`.
    pub fn override_prefix(&self, prefix: &[u64]) -> Eventual {
        let p = prefix.len();
        if p <= self.pre.len() {
            let mut pre = prefix.to_vec();
            pre.extend_from_slice(&self.pre[p..]);
            Eventual { pre, cycle: self.cycle.clone() }
        } else {
            let shift = (p - self.pre.len()) % self.cycle.len();
            let mut cycle = self.cycle[shift..].to_vec();
            cycle.extend_from_slice(&self.cycle[..shift]);
            Eventual { pre: prefix.to_vec(), cycle }
        }
    }

    /// First position where the two sequences differ, if any.
    ///
    /// Past `max(pre)` both are periodic; if they agree on `p1 + p2` more
    /// positions they share a period (Fine and Wilf) and hence coincide.
    pub fn first_divergence(&self, other: &Eventual) -> Option<usize> {
        let horizon = self.pre.len().max(other.pre.len()) + self.cycle.len() + other.cycle.len();
        (0..horizon).find(|&i| self.at(i) != other.at(i))
    }
}

/// Borrowed view over either a finite sequence or a branch.
#[derive(Clone, Copy)]
pub enum SeqRef<'a> {
    Fin(&'a FinSeq),
    Inf(&'a Branch),
}

impl<'a> From<&'a FinSeq> for SeqRef<'a> {
    fn from(s: &'a FinSeq) -> Self {
        SeqRef::Fin(s)
    }
}

impl<'a> From<&'a Branch> for SeqRef<'a> {
    fn from(b: &'a Branch) -> Self {
        SeqRef::Inf(b)
    }
}

impl SeqRef<'_> {
    fn restrict(&self, n: u64) -> Option<FinSeq> {
        match self {
            SeqRef::Fin(s) => s.restrict(n).ok(),
            SeqRef::Inf(b) => Some(b.restrict(n)),
        }
    }
}

pub fn restrict<'a>(s: impl Into<SeqRef<'a>>, n: u64) -> Result<FinSeq, SeqError> {
    match s.into() {
        SeqRef::Fin(f) => f.restrict(n),
        SeqRef::Inf(b) => Ok(b.restrict(n)),
    }
}

/// `s ⊑ t`
pub fn is_prefix<'a>(s: &FinSeq, t: impl Into<SeqRef<'a>>) -> bool {
    t.into().restrict(s.lh()).is_some_and(|r| &r == s)
}

fn lex_cmp_branches(a: &Branch, b: &Branch, depth_budget: u64) -> Option<std::cmp::Ordering> {
    let scan = depth_budget.saturating_add(1) as usize;
    for (x, y) in a.entries().zip(b.entries()).take(scan) {
        if x != y {
            return Some(x.cmp(&y));
        }
    }
    let (ca, cb) = (a.canonical()?, b.canonical()?);
    Some(match ca.first_divergence(&cb) {
        Some(i) => ca.at(i).cmp(&cb.at(i)),
        None => std::cmp::Ordering::Equal,
    })
}

/// `a ◁ b`.
///
/// Positions `0..=depth_budget` are scanned directly; if they all agree and
/// both sides are branches, the comparison is finished symbolically on the
/// canonical forms. `Unknown` only when a canonical form is unavailable.
pub fn lex_before<'a, 'b>(a: impl Into<SeqRef<'a>>, b: impl Into<SeqRef<'b>>, depth_budget: u64) -> Tri {
    use std::cmp::Ordering::*;
    match (a.into(), b.into()) {
        (SeqRef::Inf(x), SeqRef::Inf(y)) => match lex_cmp_branches(x, y, depth_budget) {
            Some(Less) => Tri::True,
            Some(_) => Tri::False,
            None => Tri::Unknown,
        },
        (x, y) => {
            let len = match (x, y) {
                (SeqRef::Fin(f), SeqRef::Fin(g)) => f.lh().min(g.lh()),
                (SeqRef::Fin(f), _) | (_, SeqRef::Fin(f)) => f.lh(),
                _ => unreachable!(),
            };
            let (rx, ry) = (x.restrict(len).expect("len fits"), y.restrict(len).expect("len fits"));
            match rx.0.iter().zip(&ry.0).find(|(p, q)| p != q) {
                Some((p, q)) => Tri::from_bool(p < q),
                None => Tri::False,
            }
        }
    }
}

/// One record `{stem⌢k : k >= from}` of a symbolic antichain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainRecord {
    pub stem: FinSeq,
    pub from: u64,
}

/// Finite description of a ⊑-antichain of finite sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Antichain {
    pub records: Vec<AntichainRecord>,
}

impl Antichain {
    /// Whether `s` is one of the denoted elements.
    pub fn contains(&self, s: &FinSeq) -> bool {
        self.records.iter().any(|r| {
            s.lh() == r.stem.lh() + 1 && r.stem.is_prefix_of(s) && s.0[r.stem.0.len()] >= r.from
        })
    }

    /// Whether `s` extends (or equals) some denoted element.
    pub fn covers<'a>(&self, s: impl Into<SeqRef<'a>>) -> bool {
        let s = s.into();
        self.records.iter().any(|r| {
            let n = r.stem.lh() + 1;
            s.restrict(n)
                .is_some_and(|head| r.stem.is_prefix_of(&head) && head.0[r.stem.0.len()] >= r.from)
        })
    }
}

/// Minimal elements of `rsubtree(q, n)` of length at most `level_max + 1`:
/// `q↾m ⌢ k` for `n <= m <= level_max` and `k > q(m)`.
pub fn minimal_rsubtree_antichain(q: &Branch, n: u64, level_max: u64) -> Result<Antichain, SeqError> {
    if n > level_max {
        return Err(SeqError::InvalidArgs(format!("n = {n} exceeds level_max = {level_max}")));
    }
    let head = q.restrict(level_max + 1);
    let records = (n..=level_max)
        .map(|m| AntichainRecord {
            stem: FinSeq(head.0[..m as usize].to_vec()),
            from: head.0[m as usize] + 1,
        })
        .collect();
    Ok(Antichain { records })
}

/// `p ∈ rsequences(q, n)`
pub fn in_rsequences(p: &Branch, q: &Branch, n: u64, depth_budget: u64) -> Tri {
    if p.restrict(n) != q.restrict(n) {
        return Tri::False;
    }
    lex_before(q, p, depth_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn fs(v: &[u64]) -> FinSeq {
        FinSeq(v.to_vec())
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(fs(&[5, 3, 7]).restrict(2).unwrap(), fs(&[5, 3]));
        assert_eq!(fs(&[5, 3, 7]).restrict(0).unwrap(), FinSeq::empty());
        assert_eq!(fs(&[5, 3, 7]).restrict(4), Err(SeqError::OutOfRange { n: 4, len: 3 }));
        assert_eq!(Branch::zero(vec![1]).restrict(3), fs(&[1, 0, 0]));
    }

    #[test]
    fn prefix_examples() {
        assert!(is_prefix(&fs(&[1, 2]), &fs(&[1, 2, 9])));
        assert!(!is_prefix(&fs(&[1, 3]), &fs(&[1, 2, 9])));
        assert!(is_prefix(&FinSeq::empty(), &fs(&[4])));
        assert!(is_prefix(&FinSeq::empty(), &Branch::constant(vec![], 7)));
        assert!(!is_prefix(&fs(&[1, 2, 3, 4]), &fs(&[1, 2])));
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_before(&fs(&[1, 2]), &fs(&[1, 3, 5]), 8), Tri::True);
        assert_eq!(lex_before(&Branch::zero(vec![]), &Branch::zero(vec![]), 8), Tri::False);
        assert_eq!(lex_before(&Branch::zero(vec![0, 2]), &Branch::constant(vec![0], 3), 8), Tri::True);
        // prefix-related finite sequences are ◁-incomparable
        assert_eq!(lex_before(&fs(&[1]), &fs(&[1, 0]), 8), Tri::False);
    }

    #[test]
    fn lex_decides_past_the_budget() {
        let a = Branch::zero(vec![0; 40]);
        let mut late = vec![0; 39];
        late.push(1);
        let b = Branch::zero(late);
        assert_eq!(lex_before(&a, &b, 3), Tri::True);
        assert_eq!(lex_before(&b, &a, 3), Tri::False);
        // same sequence, different rules
        let c = Branch::periodic(vec![1], vec![2, 2]);
        let d = Branch::constant(vec![1, 2], 2);
        assert_eq!(c.same_as(&d, 0), Tri::True);
        assert_eq!(lex_before(&c, &d, 0), Tri::False);
    }

    #[test]
    fn unknown_when_orbit_too_long() {
        // 2 is a primitive root modulo this prime, so the orbit is millions long
        let x = Rat::new(1, BigInt::from(8_388_619u64));
        let b = Branch::encoded(x);
        assert!(b.canonical().is_none());
        assert_eq!(lex_before(&b, &b.clone(), 4), Tri::Unknown);
    }

    #[test]
    fn encoded_canonical_matches_entries() {
        for s in ["3/4", "1/3", "-5/7", "22/7", "0", "-1"] {
            let b = Branch::encoded(rat(s));
            let c = b.canonical().unwrap();
            let direct = b.restrict(40);
            for i in 0..40 {
                assert_eq!(c.at(i), direct.0[i], "{s} at {i}");
            }
        }
        let with_prefix = Branch { prefix: fs(&[9, 9, 9, 9, 9]), tail: Tail::Encoded { x: rat("1/3") } };
        let c = with_prefix.canonical().unwrap();
        let direct = with_prefix.restrict(30);
        assert!((0..30).all(|i| c.at(i) == direct.0[i]));
    }

    #[test]
    fn antichain_examples() {
        let q = Branch::zero(vec![1, 0]);
        let ac = minimal_rsubtree_antichain(&q, 1, 2).unwrap();
        assert_eq!(
            ac.records,
            vec![
                AntichainRecord { stem: fs(&[1]), from: 1 },
                AntichainRecord { stem: fs(&[1, 0]), from: 1 }
            ]
        );
        let ac = minimal_rsubtree_antichain(&Branch::zero(vec![]), 0, 1).unwrap();
        assert_eq!(
            ac.records,
            vec![AntichainRecord { stem: fs(&[]), from: 1 }, AntichainRecord { stem: fs(&[0]), from: 1 }]
        );
        let q = Branch::periodic(vec![], vec![4, 1, 6]);
        let ac = minimal_rsubtree_antichain(&q, 2, 2).unwrap();
        assert_eq!(ac.records, vec![AntichainRecord { stem: fs(&[4, 1]), from: 7 }]);
        assert!(minimal_rsubtree_antichain(&q, 3, 2).is_err());
        assert_eq!(serde_json::to_string(&ac).unwrap(), r#"[{"stem":[4,1],"from":7}]"#);
    }

    /// Brute-force minimal elements of rsubtree(q, n) among sequences with
    /// entries < bound and length <= max_len.
    fn brute_minimal(q: &Branch, n: u64, bound: u64, max_len: u64) -> Vec<FinSeq> {
        let mut all = vec![FinSeq::empty()];
        let mut frontier = vec![FinSeq::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for s in &frontier {
                for k in 0..bound {
                    next.push(s.push(k));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let qn = q.restrict(n);
        let members: Vec<FinSeq> = all
            .into_iter()
            .filter(|s| qn.is_proper_prefix_of(s) && lex_before(q, s, 64) == Tri::True)
            .collect();
        members
            .iter()
            .filter(|s| !members.iter().any(|t| t.is_proper_prefix_of(s)))
            .cloned()
            .collect()
    }

    #[test]
    fn antichain_matches_brute_force() {
        let bound = 4;
        for q in [Branch::zero(vec![1, 0]), Branch::zero(vec![]), Branch::constant(vec![2], 1)] {
            for level_max in 0..3u64 {
                for n in 0..=level_max {
                    let ac = minimal_rsubtree_antichain(&q, n, level_max).unwrap();
                    let brute = brute_minimal(&q, n, bound, level_max + 1);
                    for s in &brute {
                        assert!(ac.contains(s), "{s} missing for q={q}, n={n}");
                    }
                    let from_ac: usize = ac.records.iter().map(|r| bound.saturating_sub(r.from) as usize).sum();
                    assert_eq!(from_ac, brute.len(), "q={q}, n={n}, level_max={level_max}");
                }
            }
        }
    }

    #[test]
    fn rsequences_examples() {
        let p = Branch::zero(vec![1, 5]);
        let q = Branch::zero(vec![1, 2]);
        assert_eq!(in_rsequences(&p, &q, 1, 8), Tri::True);
        assert_eq!(in_rsequences(&q, &q, 1, 8), Tri::False);
        assert_eq!(in_rsequences(&q, &q, 0, 8), Tri::False);
        assert_eq!(in_rsequences(&Branch::zero(vec![0, 5]), &q, 1, 8), Tri::False);
    }

    #[test]
    fn branch_json_shape() {
        let b = Branch::constant(vec![0], 3);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"prefix":[0],"tail":{"kind":"const","k":3}}"#);
        let e = Branch::encoded(rat("3/4"));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"prefix":[],"tail":{"kind":"encoded","x":"3/4"}}"#);
        assert_eq!(serde_json::from_str::<Branch>(&s).unwrap(), e);
        assert!(serde_json::from_str::<Branch>(r#"{"prefix":[],"tail":{"kind":"periodic","period":[]}}"#).is_err());
    }
}
