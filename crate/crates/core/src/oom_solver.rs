//! Solving order-of-magnitude influence diagrams.

use std::collections::HashMap;

use crate::diagram::OomInfluenceDiagram;
use crate::elimination::{eliminate, utilities_through_decisions, EliminationStats, Oom, Valuation};
use crate::error::{DiagramError, Result};
use crate::exact::{all_policies, follows, POLICY_GUARD};
use crate::oom::OomValue;
use crate::oom_set::OomSet;
use crate::policy::{info_configs, info_index, PolicySet};

#[derive(Clone, Debug)]
pub struct OomSolution {
    pub meu: OomSet,
    pub policies: PolicySet,
    pub ordering: Vec<usize>,
    pub stats: EliminationStats,
}

/// Bucket elimination with order-of-magnitude arithmetic along the legal
/// ordering. At each decision cell every action whose value is not strictly
/// dominated by another action's value is kept.
pub fn elim_oom_id(diagram: &OomInfluenceDiagram) -> Result<OomSolution> {
    diagram.check()?;
    let ordering = diagram.legal_ordering()?;
    let result = eliminate::<Oom>(diagram, &ordering);
    let policies = result.policy_set(diagram)?;
    let meu = result.utility.scale(result.probability)?;
    Ok(OomSolution {
        meu,
        policies,
        ordering,
        stats: result.stats,
    })
}

#[derive(Clone, Debug)]
pub struct OomBruteForce {
    pub meu: OomSet,
    pub policies: PolicySet,
}

pub fn brute_force_oom(diagram: &OomInfluenceDiagram) -> Result<OomBruteForce> {
    brute_force_oom_with_guard(diagram, POLICY_GUARD)
}

/// Policy enumeration with order-of-magnitude arithmetic.
///
/// The value of a policy is the sum over joint configurations of
/// `Π P × Σ U`. For decision `k`, information configuration `c` and action
/// `d`, the cell value is the maximum over all policies taking `d` at `c` of
/// the sum over configurations extending `c` (later decisions following the
/// policy) of `Π P × Σ U`, restricted to the utilities that share a bucket
/// with the decision. Kept actions are those not strictly dominated.
pub fn brute_force_oom_with_guard(diagram: &OomInfluenceDiagram, guard: f64) -> Result<OomBruteForce> {
    diagram.check()?;
    let size = diagram.policy_space_size();
    if size > guard {
        return Err(DiagramError::GuardExceeded { size, limit: guard });
    }
    let ordering = diagram.legal_ordering()?;
    let reach = utilities_through_decisions(diagram, &ordering);
    let m = diagram.decision_order.len();

    struct Row {
        x: Vec<usize>,
        full: OomSet,
        partial: Vec<OomSet>,
    }
    let rows: Vec<Row> = diagram
        .assignments()
        .filter_map(|x| {
            let p: OomValue = diagram.cpts.iter().map(|c| diagram.cpt_entry(c, &x)).product();
            if p.is_zero() {
                return None;
            }
            let utility = |which: &mut dyn Iterator<Item = usize>| -> OomSet {
                let parts: Vec<OomSet> = which
                    .map(|j| diagram.utility_entry(&diagram.utilities[j], &x))
                    .collect();
                Oom::sum(&parts).scale(p).expect("positive probability")
            };
            let full = utility(&mut (0..diagram.utilities.len()));
            let partial = reach.iter().map(|r| utility(&mut r.iter().copied())).collect();
            Some(Row { x, full, partial })
        })
        .collect();

    let mut best: Vec<Vec<Vec<Option<OomSet>>>> = (0..m)
        .map(|k| vec![vec![None; diagram.card(diagram.decision_order[k])]; info_configs(diagram, k)])
        .collect();
    let mut totals = Vec::new();
    for policy in all_policies(diagram) {
        let total: Vec<OomSet> = rows
            .iter()
            .filter(|r| follows(diagram, &policy, &r.x, 0))
            .map(|r| r.full)
            .collect();
        totals.push(Oom::sum(&total));
        for k in 0..m {
            let mut groups: HashMap<usize, Vec<OomSet>> = HashMap::new();
            for r in rows.iter().filter(|r| follows(diagram, &policy, &r.x, k)) {
                groups.entry(info_index(diagram, k, &r.x)).or_default().push(r.partial[k]);
            }
            for (c, slot) in best[k].iter_mut().enumerate() {
                let value = groups.get(&c).map_or(OomSet::ZERO, |g| Oom::sum(g));
                let cell = &mut slot[policy.rules[k][c]];
                *cell = Some(match cell {
                    Some(prev) => prev.max(&value),
                    None => value,
                });
            }
        }
    }
    let meu = Oom::max_utility(&totals);
    let rules = best
        .into_iter()
        .map(|cells| {
            cells
                .into_iter()
                .map(|slot| {
                    let values: Vec<OomSet> = slot.into_iter().map(|v| v.expect("every action is reachable")).collect();
                    Oom::optimal(&values)
                })
                .collect()
        })
        .collect();
    Ok(OomBruteForce {
        meu,
        policies: PolicySet { rules },
    })
}
