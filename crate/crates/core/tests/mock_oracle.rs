//! A permissive oracle that answers every (S1) query positively, so the
//! recursion runs past the odd steps and leaves an (S2) refutation to do.

use souslin::bidirected::Relation;
use souslin::check::CheckResult;
use souslin::diagonalizer::{
    diagonalize, unit_value, verify_property5, verify_trace, w_node, DiagStatus, SpaceInstance, WOracle,
};
use souslin::openmap::{OpenMapError, S1Answer, SchemeOracle};
use souslin::seqtree::{Branch, FinSeq};
use souslin::sets::{ArrowSet, RealSet};
use souslin::space::{SpacePoint, SpaceSet};

struct MockOracle;

impl SchemeOracle for MockOracle {
    fn name(&self) -> &str {
        "mock"
    }

    fn node_set(&self, a: &FinSeq) -> SpaceSet {
        SpaceSet::Arrow(w_node(a))
    }

    fn cut_set(&self, q: &Branch, n: u64) -> Result<SpaceSet, OpenMapError> {
        let v = unit_value(q).ok_or_else(|| OpenMapError::Oracle(format!("{q} has no closed form")))?;
        let fruit = ArrowSet::new(RealSet::point(&v), RealSet::point(&v));
        Ok(SpaceSet::Arrow(w_node(&q.restrict(n)).minus(&fruit)))
    }

    fn fruit_members(&self, q: &Branch, depth: u64) -> Vec<SpacePoint> {
        WOracle.fruit_members(q, depth)
    }

    fn branch_of(&self, x: &SpacePoint) -> Option<Branch> {
        WOracle.branch_of(x)
    }

    fn s1_witness(&self, x: &SpacePoint, prefix: &FinSeq, _depth_budget: u64) -> S1Answer {
        if !self.node_set(prefix).contains(x) {
            return S1Answer::Unknown { reason: format!("{x} is outside the node") };
        }
        match self.branch_of(x) {
            Some(branch) => S1Answer::Found { branch },
            None => S1Answer::Unknown { reason: format!("no branch for {x}") },
        }
    }

    fn branch_in_cut(&self, _y: &SpacePoint, q: &Branch, m: u64, _depth_budget: u64) -> Option<Branch> {
        Some(Branch::zero(q.restrict(m).push(q.at(m) + 1)))
    }
}

#[test]
fn mock_runs_every_step() {
    let t = diagonalize(&MockOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).unwrap();
    assert_eq!(t.steps.len(), 4, "{:?} {:?}", t.status, t.failure);
    assert_eq!(t.status, DiagStatus::S2RefutationReady);
    assert_eq!(t.exit_code(), 0);
    for (s, next) in t.steps.iter().zip(t.steps.iter().skip(1)) {
        assert_eq!(s.p_next, next.p);
        assert!(s.p.is_proper_prefix_of(&s.p_next));
    }
    assert_eq!(verify_trace(&t), CheckResult::holds(4));
}

#[test]
fn mock_trace_property5() {
    let t = diagonalize(&MockOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).unwrap();
    assert_eq!(verify_property5(&t, 1), CheckResult::holds(1));
    assert_eq!(verify_property5(&t, 0), CheckResult::holds(0));
}

#[test]
fn mock_steps_alternate_sides() {
    let t = diagonalize(&MockOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).unwrap();
    for s in &t.steps {
        let p = s.x.as_arrow().unwrap();
        let want: u8 = if s.n % 2 == 0 { 1 } else { 0 };
        assert_eq!(p.side, want, "step {}", s.n);
        assert!(w_node(&s.p).contains(&p.x, p.side));
    }
}
