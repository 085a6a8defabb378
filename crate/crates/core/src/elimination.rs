//! Bucket elimination over probability and utility components.
//!
//! One engine serves both the numeric and the order-of-magnitude solvers;
//! the arithmetic comes from a [`Valuation`].

use std::fmt::Debug;

use crate::diagram::{Diagram, ProbabilityEntry, UtilityEntry};
use crate::error::{DiagramError, Result};
use crate::factor::{strides_in, Configs, Factor};
use crate::oom::OomValue;
use crate::oom_set::OomSet;
use crate::policy::PolicySet;

/// Arithmetic used by [`eliminate`].
pub trait Valuation {
    type P: ProbabilityEntry;
    type U: UtilityEntry;

    fn one() -> Self::P;
    fn mul(a: &Self::P, b: &Self::P) -> Self::P;
    fn add(a: &Self::P, b: &Self::P) -> Self::P;
    fn is_zero(p: &Self::P) -> bool;
    fn same(a: &Self::P, b: &Self::P) -> bool;
    fn max_prob(values: &[Self::P]) -> Self::P;
    /// Only called on non-zero values.
    fn inverse(p: &Self::P) -> Self::P;

    fn zero_utility() -> Self::U;
    fn sum(values: &[Self::U]) -> Self::U;
    fn scale(p: &Self::P, u: &Self::U) -> Self::U;
    fn max_utility(values: &[Self::U]) -> Self::U;
    /// Indices of the actions kept at one decision cell, ascending and non-empty.
    fn optimal(values: &[Self::U]) -> Vec<usize>;
}

/// Real arithmetic. Only the first maximizing action is kept.
#[derive(Clone, Copy, Debug)]
pub struct Real;

pub const TIE_TOLERANCE: f64 = 1e-9;

impl Valuation for Real {
    type P = f64;
    type U = f64;

    fn one() -> f64 {
        1.0
    }
    fn mul(a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn add(a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn is_zero(p: &f64) -> bool {
        *p == 0.0
    }
    fn same(a: &f64, b: &f64) -> bool {
        (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
    }
    fn max_prob(values: &[f64]) -> f64 {
        values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
    fn inverse(p: &f64) -> f64 {
        1.0 / p
    }
    fn zero_utility() -> f64 {
        0.0
    }
    fn sum(values: &[f64]) -> f64 {
        values.iter().sum()
    }
    fn scale(p: &f64, u: &f64) -> f64 {
        p * u
    }
    fn max_utility(values: &[f64]) -> f64 {
        values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
    fn optimal(values: &[f64]) -> Vec<usize> {
        let best = Self::max_utility(values);
        let tol = TIE_TOLERANCE * best.abs().max(1.0);
        let first = values
            .iter()
            .position(|&v| v >= best - tol)
            .expect("non-empty action list");
        vec![first]
    }
}

/// Order-of-magnitude arithmetic. Every action whose value is not strictly
/// dominated by another action's value is kept.
#[derive(Clone, Copy, Debug)]
pub struct Oom;

impl Valuation for Oom {
    type P = OomValue;
    type U = OomSet;

    fn one() -> OomValue {
        OomValue::ONE
    }
    fn mul(a: &OomValue, b: &OomValue) -> OomValue {
        *a * *b
    }
    fn add(a: &OomValue, b: &OomValue) -> OomValue {
        *a + *b
    }
    fn is_zero(p: &OomValue) -> bool {
        p.is_zero()
    }
    fn same(a: &OomValue, b: &OomValue) -> bool {
        a == b
    }
    fn max_prob(values: &[OomValue]) -> OomValue {
        // positive values and zero form a chain under dominance
        OomSet::canonicalize(values)
            .expect("non-empty domain")
            .first()
    }
    fn inverse(p: &OomValue) -> OomValue {
        p.inverse().expect("non-zero probability component")
    }
    fn zero_utility() -> OomSet {
        OomSet::ZERO
    }
    fn sum(values: &[OomSet]) -> OomSet {
        OomSet::sum_of(values).unwrap_or(OomSet::ZERO)
    }
    fn scale(p: &OomValue, u: &OomSet) -> OomSet {
        u.scale(*p).expect("probability components are positive or zero")
    }
    fn max_utility(values: &[OomSet]) -> OomSet {
        OomSet::max_of(values).expect("non-empty domain")
    }
    fn optimal(values: &[OomSet]) -> Vec<usize> {
        (0..values.len())
            .filter(|&i| !values.iter().any(|other| other.strictly_dominates(&values[i])))
            .collect()
    }
}

/// Kept actions of one decision, over the scope of its bucket.
#[derive(Clone, Debug, PartialEq)]
pub struct DecisionTable {
    pub decision: usize,
    pub scope: Vec<usize>,
    /// Row-major over `scope`.
    pub actions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EliminationStats {
    /// Largest bucket table, counting the bucket variable.
    pub max_table_cells: usize,
    /// Largest bucket scope without the bucket variable.
    pub induced_width: usize,
    /// Some decision bucket had a probability product that varied with the decision.
    pub nonconstant_decision_lambda: bool,
}

#[derive(Clone, Debug)]
pub struct Elimination<V: Valuation> {
    /// Product of the probability components left without variables.
    pub probability: V::P,
    /// Sum of the utility components left without variables.
    pub utility: V::U,
    pub decisions: Vec<DecisionTable>,
    pub stats: EliminationStats,
}

impl<V: Valuation> Elimination<V> {
    /// Spreads every decision table over its full information set.
    pub fn policy_set(&self, diagram: &Diagram<V::P, V::U>) -> Result<PolicySet> {
        let mut rules = Vec::with_capacity(diagram.decision_order.len());
        for (k, &d) in diagram.decision_order.iter().enumerate() {
            let table = self
                .decisions
                .iter()
                .find(|t| t.decision == d)
                .expect("every decision has a bucket");
            let info = &diagram.information_sets[k];
            let mut positions = Vec::with_capacity(table.scope.len());
            for &v in &table.scope {
                match info.iter().position(|&i| i == v) {
                    Some(p) => positions.push(p),
                    None => {
                        return Err(DiagramError::UnobservedDependency {
                            decision: diagram.variables[d].id.clone(),
                            variable: diagram.variables[v].id.clone(),
                        })
                    }
                }
            }
            let scope_cards = diagram.cards(&table.scope);
            let cells = Configs::new(&diagram.cards(info))
                .map(|c| {
                    let idx = positions
                        .iter()
                        .zip(&scope_cards)
                        .fold(0, |acc, (&p, &card)| acc * card + c[p]);
                    table.actions[idx].clone()
                })
                .collect();
            rules.push(cells);
        }
        Ok(PolicySet { rules })
    }
}

/// Runs the top-down pass of bucket elimination along `ordering` (first
/// element eliminated first) and records the kept actions of each decision.
pub fn eliminate<V: Valuation>(diagram: &Diagram<V::P, V::U>, ordering: &[usize]) -> Elimination<V> {
    let n = diagram.variables.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        pos[v] = i;
    }
    let t = ordering.len();
    let mut lambdas: Vec<Vec<Factor<V::P>>> = vec![Vec::new(); t];
    let mut thetas: Vec<Vec<Factor<V::U>>> = vec![Vec::new(); t];
    let mut const_lambdas: Vec<V::P> = Vec::new();
    let mut const_thetas: Vec<V::U> = Vec::new();

    let bucket_of = |scope: &[usize]| scope.iter().map(|&v| pos[v]).min();

    for cpt in &diagram.cpts {
        let scope = cpt.scope();
        let cards = diagram.cards(&scope);
        let mut data = cpt.table.clone();
        if let Some(&(_, observed)) = diagram.evidence.iter().find(|(v, _)| *v == cpt.child) {
            let card = diagram.card(cpt.child);
            for (i, entry) in data.iter_mut().enumerate() {
                if i % card != observed {
                    *entry = V::P::zero();
                }
            }
        }
        let b = bucket_of(&scope).expect("cpt scope holds its child");
        lambdas[b].push(Factor::new(scope, cards, data));
    }
    for u in &diagram.utilities {
        let f = Factor::new(u.scope.clone(), diagram.cards(&u.scope), u.table.clone());
        match bucket_of(&u.scope) {
            Some(b) => thetas[b].push(f),
            None => const_thetas.push(f.data[0].clone()),
        }
    }

    let mut stats = EliminationStats::default();
    let mut decisions = Vec::new();

    for p in 0..t {
        let y = ordering[p];
        let bucket_lambdas = std::mem::take(&mut lambdas[p]);
        let bucket_thetas = std::mem::take(&mut thetas[p]);
        let is_decision = diagram.is_decision(y);
        if bucket_lambdas.is_empty() && bucket_thetas.is_empty() && !is_decision {
            continue;
        }

        let mut scope: Vec<usize> = bucket_lambdas
            .iter()
            .map(|f| &f.scope)
            .chain(bucket_thetas.iter().map(|f| &f.scope))
            .flatten()
            .copied()
            .filter(|&v| v != y)
            .collect();
        scope.sort_unstable();
        scope.dedup();
        let cards = diagram.cards(&scope);
        let ny = diagram.card(y);
        let mut frame = scope.clone();
        frame.push(y);
        let mut frame_cards = cards.clone();
        frame_cards.push(ny);
        let rows: usize = cards.iter().product();
        stats.induced_width = stats.induced_width.max(scope.len());
        stats.max_table_cells = stats.max_table_cells.max(rows * ny);

        let l_strides: Vec<Vec<usize>> = bucket_lambdas
            .iter()
            .map(|f| strides_in(&f.scope, &f.cards, &frame))
            .collect();
        let t_strides: Vec<Vec<usize>> = bucket_thetas
            .iter()
            .map(|f| strides_in(&f.scope, &f.cards, &frame))
            .collect();
        let index = |strides: &[usize], config: &[usize]| -> usize {
            strides.iter().zip(config).map(|(s, c)| s * c).sum()
        };

        let mut out_lambda = Vec::with_capacity(rows);
        let mut out_theta = Vec::with_capacity(rows);
        let mut actions = Vec::new();
        let mut prods: Vec<V::P> = Vec::with_capacity(ny);
        let mut sums: Vec<V::U> = Vec::with_capacity(ny);
        let mut buffer: Vec<V::U> = Vec::with_capacity(bucket_thetas.len());
        let mut configs = Configs::new(&frame_cards);

        for _ in 0..rows {
            prods.clear();
            sums.clear();
            for _ in 0..ny {
                let config = configs.next().expect("frame configurations");
                let prod = bucket_lambdas
                    .iter()
                    .zip(&l_strides)
                    .fold(V::one(), |acc, (f, s)| V::mul(&acc, &f.data[index(s, &config)]));
                buffer.clear();
                buffer.extend(
                    bucket_thetas
                        .iter()
                        .zip(&t_strides)
                        .map(|(f, s)| f.data[index(s, &config)].clone()),
                );
                let sum = if buffer.is_empty() {
                    V::zero_utility()
                } else {
                    V::sum(&buffer)
                };
                prods.push(prod);
                sums.push(sum);
            }

            if is_decision {
                let values: Vec<V::U> = if bucket_lambdas.is_empty() {
                    sums.clone()
                } else {
                    prods.iter().zip(&sums).map(|(p, u)| V::scale(p, u)).collect()
                };
                actions.push(V::optimal(&values));
                let best = V::max_utility(&values);
                if bucket_lambdas.is_empty() {
                    out_theta.push(best);
                } else {
                    if prods.iter().any(|q| !V::same(q, &prods[0])) {
                        stats.nonconstant_decision_lambda = true;
                    }
                    let lambda = V::max_prob(&prods);
                    out_theta.push(if V::is_zero(&lambda) {
                        V::zero_utility()
                    } else {
                        V::scale(&V::inverse(&lambda), &best)
                    });
                    out_lambda.push(lambda);
                }
            } else {
                let lambda = prods
                    .iter()
                    .skip(1)
                    .fold(prods[0].clone(), |acc, q| V::add(&acc, q));
                if !bucket_thetas.is_empty() {
                    let weighted: Vec<V::U> = prods.iter().zip(&sums).map(|(p, u)| V::scale(p, u)).collect();
                    out_theta.push(if V::is_zero(&lambda) {
                        V::zero_utility()
                    } else {
                        V::scale(&V::inverse(&lambda), &V::sum(&weighted))
                    });
                }
                out_lambda.push(lambda);
            }
        }

        if is_decision {
            decisions.push(DecisionTable {
                decision: y,
                scope: scope.clone(),
                actions,
            });
        }
        let target = bucket_of(&scope);
        if !bucket_lambdas.is_empty() {
            match target {
                Some(b) => lambdas[b].push(Factor::new(scope.clone(), cards.clone(), out_lambda)),
                None => const_lambdas.push(out_lambda.pop().expect("one cell")),
            }
        }
        if !bucket_thetas.is_empty() {
            match target {
                Some(b) => thetas[b].push(Factor::new(scope, cards, out_theta)),
                None => const_thetas.push(out_theta.pop().expect("one cell")),
            }
        }
    }

    let probability = const_lambdas.iter().fold(V::one(), |acc, q| V::mul(&acc, q));
    let utility = if const_thetas.is_empty() {
        V::zero_utility()
    } else {
        V::sum(&const_thetas)
    };
    Elimination {
        probability,
        utility,
        decisions,
        stats,
    }
}

/// Scope-only replay of the bucket placement: for each decision (by
/// position in the decision order), the utility functions whose
/// components reach that decision's bucket.
pub fn utilities_through_decisions<P, U>(diagram: &Diagram<P, U>, ordering: &[usize]) -> Vec<Vec<usize>>
where
    P: ProbabilityEntry,
    U: UtilityEntry,
{
    let n = diagram.variables.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        pos[v] = i;
    }
    let t = ordering.len();
    let bucket_of = |scope: &[usize]| scope.iter().map(|&v| pos[v]).min();
    // (scope, contributing utilities); lambdas carry no utilities
    let mut lambdas: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t];
    let mut thetas: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![Vec::new(); t];
    for cpt in &diagram.cpts {
        let scope = cpt.scope();
        lambdas[bucket_of(&scope).expect("non-empty")].push(scope);
    }
    for (j, u) in diagram.utilities.iter().enumerate() {
        if let Some(b) = bucket_of(&u.scope) {
            thetas[b].push((u.scope.clone(), vec![j]));
        }
    }
    let mut reached = vec![Vec::new(); diagram.decision_order.len()];
    for p in 0..t {
        let y = ordering[p];
        let ls = std::mem::take(&mut lambdas[p]);
        let ts = std::mem::take(&mut thetas[p]);
        let mut origins: Vec<usize> = ts.iter().flat_map(|(_, o)| o.iter().copied()).collect();
        origins.sort_unstable();
        origins.dedup();
        if let Some(k) = diagram.decision_order.iter().position(|&d| d == y) {
            reached[k] = origins.clone();
        }
        let mut scope: Vec<usize> = ls
            .iter()
            .chain(ts.iter().map(|(s, _)| s))
            .flatten()
            .copied()
            .filter(|&v| v != y)
            .collect();
        scope.sort_unstable();
        scope.dedup();
        if let Some(b) = bucket_of(&scope) {
            if !ls.is_empty() {
                lambdas[b].push(scope.clone());
            }
            if !ts.is_empty() {
                thetas[b].push((scope, origins));
            }
        }
    }
    reached
}
