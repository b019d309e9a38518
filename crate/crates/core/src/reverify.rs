//! Payload-only re-checks for [`Witness`] values.

use crate::bidirected::{
    accumulates_at, nbhd_set, one_sided_cone, q_set, technical_lemma_check, witness_candidates, witness_cone,
    nbhd_index_inside, up_cone, Relation,
};
use crate::check::Witness;
use crate::scheme::IntervalDesc;
use crate::seqtree::{in_rsequences, lex_before, Tri};

use crate::topology::cut_base_violation;

pub(crate) fn reverify(w: &Witness) -> bool {
    match w {
        Witness::ChildOverlap { node, other, node_interval, other_interval } => {
            node != other
                && node.lh() == other.lh()
                && node.lh() >= 1
                && node.restrict(node.lh() - 1) == other.restrict(other.lh() - 1)
                && node_interval.overlaps(other_interval)
        }
        Witness::ChildNotNested { parent, child, parent_interval, child_interval } => {
            if parent == child {
                return parent.lh() == 0 && *child_interval != IntervalDesc::WholeLine;
            }
            !matches!(child_interval, IntervalDesc::HalfOpen { .. }) || !child_interval.is_subset(parent_interval)
        }
        Witness::ChildGap { expected_lo, found_lo, .. } => expected_lo != found_lo,
        Witness::StepBound { interval, bound, .. } => interval.length().is_some_and(|l| l > *bound),
        Witness::Aqn { q, p, n, truth, claimed, .. } => {
            let recomputed = in_rsequences(p, q, *n, 4096) == Tri::True;
            recomputed == *truth && truth != claimed
        }
        Witness::CutBase { x, m, outer, inner } => *m >= 1 && cut_base_violation(x, *m, outer, inner),
        Witness::ImageIdentity { point, target, .. } => !target.contains(point),
        Witness::Density { point, k, nbhd, part, .. } => {
            *nbhd == point.canonical_nbhd(*k) && nbhd.contains(point) && nbhd.intersect(part).is_empty()
        }
        Witness::Looks { point, direction, relation, bullet, k, nbhd, offending, .. } => {
            if *nbhd != nbhd_set(point, *k) {
                return false;
            }
            let pool = nbhd.intersect(&q_set(*relation)).minus(&point.singleton());
            match bullet {
                1 => {
                    let cone = one_sided_cone(*relation, *direction, point);
                    !offending.is_empty()
                        && offending.is_subset(&pool)
                        && offending.intersect(&cone).is_empty()
                        && (accumulates_at(offending, point) || *k > 0)
                }
                2 => {
                    *offending == pool
                        && witness_candidates(*relation, *direction, point, nbhd).iter().all(|y| {
                            nbhd_index_inside(point, &witness_cone(*relation, *direction, y)).is_none()
                        })
                }
                _ => false,
            }
        }
        Witness::NoBaseNeighborhood { point, nbhd, cut0, left_points } => {
            // every cut set lies inside cut0, strictly above the point in the
            // order, while each listed point of the neighbourhood lies below it
            let above = up_cone(Relation::Lex, point);
            !left_points.is_empty()
                && cut0.is_subset(&above)
                && left_points.iter().all(|lw| {
                    lw.y < point.x && nbhd_set(point, lw.k).contains(&lw.y, 1) && nbhd.contains(&lw.y, 1)
                })
        }
        Witness::BaseBranchSurvives { cut, cone, .. } => cut.minus(cone).is_empty(),
        Witness::UncoveredPoint { point, node_set, children, .. } => {
            node_set.contains(&point.x, point.side) && children.iter().all(|c| !c.contains(&point.x, point.side))
        }
        Witness::TraceInvariant { invariant, member, set, before, after, .. } => match (member, set, before, after) {
            (Some(p), Some(s), _, _) => !s.contains(p),
            (_, _, Some(b), Some(a)) if invariant == "lex_before" => lex_before(b, a, 64) != Tri::True,
            (_, _, Some(b), Some(a)) => !b.is_proper_prefix_of(a),
            _ => false,
        },
        Witness::TechnicalLemma { point, k, .. } => !technical_lemma_check(point, *k).verdict.is_holds(),
        Witness::Precondition { inner, .. } => inner.reverify(),
    }
}
