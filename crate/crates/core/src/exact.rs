//! Exact numeric solving and policy evaluation.

use crate::diagram::{Cpt, InfluenceDiagram, VarKind};
use crate::elimination::{eliminate, EliminationStats, Real, TIE_TOLERANCE};
use crate::error::{DiagramError, Result};
use crate::factor::Configs;
use crate::policy::{info_index, Policy};

/// Default limit on the number of policies an enumeration may visit.
pub const POLICY_GUARD: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub meu: f64,
    pub policy: Policy,
    pub ordering: Vec<usize>,
    pub stats: EliminationStats,
}

/// Maximum expected utility by bucket elimination along the legal ordering.
/// With evidence the result is conditional on it.
pub fn solve_exact(diagram: &InfluenceDiagram) -> Result<ExactSolution> {
    diagram.check()?;
    let ordering = diagram.legal_ordering()?;
    let result = eliminate::<Real>(diagram, &ordering);
    let policy = result.policy_set(diagram)?.first();
    Ok(ExactSolution {
        meu: result.utility,
        policy,
        ordering,
        stats: result.stats,
    })
}

/// The diagram with every decision replaced by a chance node whose CPT puts
/// all mass on the action the policy selects.
pub fn policy_as_chance(diagram: &InfluenceDiagram, policy: &Policy) -> Result<InfluenceDiagram> {
    policy.check(diagram)?;
    let mut out = diagram.clone();
    for (k, &d) in diagram.decision_order.iter().enumerate() {
        let card = diagram.card(d);
        let mut table = Vec::with_capacity(policy.rules[k].len() * card);
        for &a in &policy.rules[k] {
            table.extend((0..card).map(|x| if x == a { 1.0 } else { 0.0 }));
        }
        out.variables[d].kind = VarKind::Chance;
        out.cpts.push(Cpt {
            child: d,
            parents: diagram.information_sets[k].clone(),
            table,
        });
    }
    out.decision_order.clear();
    out.information_sets.clear();
    Ok(out)
}

/// Expected utility of a policy, by elimination on the policy-completed diagram.
pub fn evaluate_policy(diagram: &InfluenceDiagram, policy: &Policy) -> Result<f64> {
    let fixed = policy_as_chance(diagram, policy)?;
    let ordering = fixed.legal_ordering()?;
    Ok(eliminate::<Real>(&fixed, &ordering).utility)
}

/// Expected utility of a policy by summing over every joint configuration.
pub fn evaluate_policy_exhaustive(diagram: &InfluenceDiagram, policy: &Policy) -> Result<f64> {
    policy.check(diagram)?;
    let mut total = 0.0;
    let mut mass = 0.0;
    for x in diagram.assignments() {
        if !follows(diagram, policy, &x, 0) {
            continue;
        }
        let p = joint_probability(diagram, &x);
        mass += p;
        total += p * total_utility(diagram, &x);
    }
    Ok(if diagram.evidence.is_empty() || mass == 0.0 {
        total
    } else {
        total / mass
    })
}

#[derive(Clone, Debug)]
pub struct BruteForceSolution {
    pub meu: f64,
    /// Every policy within tolerance of the maximum, in enumeration order.
    pub optimal: Vec<Policy>,
}

/// Enumerates every policy and evaluates each by exhaustive summation.
pub fn brute_force_meu(diagram: &InfluenceDiagram) -> Result<BruteForceSolution> {
    brute_force_meu_with_guard(diagram, POLICY_GUARD)
}

pub fn brute_force_meu_with_guard(diagram: &InfluenceDiagram, guard: f64) -> Result<BruteForceSolution> {
    diagram.check()?;
    let size = diagram.policy_space_size();
    if size > guard {
        return Err(DiagramError::GuardExceeded { size, limit: guard });
    }
    // weight of each joint configuration, shared by all policies
    let weighted: Vec<(Vec<usize>, f64, f64)> = diagram
        .assignments()
        .map(|x| {
            let p = joint_probability(diagram, &x);
            let u = total_utility(diagram, &x);
            (x, p, p * u)
        })
        .filter(|(_, p, _)| *p != 0.0)
        .collect();

    let mut values = Vec::new();
    let mut policies = Vec::new();
    for policy in all_policies(diagram) {
        let mut total = 0.0;
        let mut mass = 0.0;
        for (x, p, pu) in &weighted {
            if follows(diagram, &policy, x, 0) {
                total += pu;
                mass += p;
            }
        }
        if !diagram.evidence.is_empty() && mass != 0.0 {
            total /= mass;
        }
        values.push(total);
        policies.push(policy);
    }
    let meu = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = TIE_TOLERANCE * meu.abs().max(1.0);
    let optimal = policies
        .into_iter()
        .zip(&values)
        .filter(|(_, &v)| v >= meu - tol)
        .map(|(p, _)| p)
        .collect();
    Ok(BruteForceSolution { meu, optimal })
}

/// Every policy of the diagram, lexicographically.
pub fn all_policies<P, U>(diagram: &crate::diagram::Diagram<P, U>) -> impl Iterator<Item = Policy>
where
    P: crate::diagram::ProbabilityEntry,
    U: crate::diagram::UtilityEntry,
{
    let shape: Vec<(usize, usize)> = diagram
        .decision_order
        .iter()
        .zip(&diagram.information_sets)
        .map(|(&d, info)| (diagram.card(d), diagram.cards(info).iter().product()))
        .collect();
    let cells: Vec<usize> = shape.iter().flat_map(|&(card, n)| std::iter::repeat(card).take(n)).collect();
    Configs::new(&cells).map(move |flat| {
        let mut it = flat.into_iter();
        Policy {
            rules: shape
                .iter()
                .map(|&(_, n)| it.by_ref().take(n).collect())
                .collect(),
        }
    })
}

/// Whether the decisions from position `from` onwards in `x` follow `policy`.
pub(crate) fn follows<P, U>(
    diagram: &crate::diagram::Diagram<P, U>,
    policy: &Policy,
    x: &[usize],
    from: usize,
) -> bool {
    diagram
        .decision_order
        .iter()
        .enumerate()
        .skip(from)
        .all(|(k, &d)| x[d] == policy.rules[k][info_index(diagram, k, x)])
}

fn joint_probability(diagram: &InfluenceDiagram, x: &[usize]) -> f64 {
    diagram.cpts.iter().map(|c| diagram.cpt_entry(c, x)).product()
}

fn total_utility(diagram: &InfluenceDiagram, x: &[usize]) -> f64 {
    diagram.utilities.iter().map(|u| diagram.utility_entry(u, x)).sum()
}
