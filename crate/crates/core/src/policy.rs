//! Policies and sets of policies.
//!
//! Rules are stored per position in `decision_order`, as a flat table over
//! the configurations of that decision's information set (row-major in the
//! information set's order).

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::diagram::Diagram;
use crate::error::{DiagramError, Result};
use crate::factor::Configs;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Policy {
    pub rules: Vec<Vec<usize>>,
}

impl Policy {
    pub fn check<P, U>(&self, diagram: &Diagram<P, U>) -> Result<()> {
        if self.rules.len() != diagram.decision_order.len() {
            return Err(DiagramError::BadPolicy(format!(
                "{} decision rules for {} decisions",
                self.rules.len(),
                diagram.decision_order.len()
            )));
        }
        for (k, rule) in self.rules.iter().enumerate() {
            let d = diagram.decision_order[k];
            let expected = info_configs(diagram, k);
            if rule.len() != expected {
                return Err(DiagramError::BadPolicy(format!(
                    "rule for {} has {} entries, expected {expected}",
                    diagram.variables[d].id,
                    rule.len()
                )));
            }
            if let Some(&a) = rule.iter().find(|&&a| a >= diagram.variables[d].domain.len()) {
                return Err(DiagramError::BadPolicy(format!(
                    "rule for {} selects action {a}, outside its domain",
                    diagram.variables[d].id
                )));
            }
        }
        Ok(())
    }

    /// Action of decision `k` under a full assignment of all variables.
    pub fn action<P, U>(&self, diagram: &Diagram<P, U>, k: usize, assignment: &[usize]) -> usize {
        self.rules[k][info_index(diagram, k, assignment)]
    }

    /// Builds a policy from labelled rows, `rows[k][c]` naming the action label
    /// for information configuration `c` of decision `k`.
    pub fn from_labels<P, U>(diagram: &Diagram<P, U>, rows: &[Vec<&str>]) -> Result<Policy> {
        let mut rules = Vec::with_capacity(rows.len());
        for (k, row) in rows.iter().enumerate() {
            let d = *diagram
                .decision_order
                .get(k)
                .ok_or_else(|| DiagramError::BadPolicy("more rules than decisions".into()))?;
            let domain = &diagram.variables[d].domain;
            let rule = row
                .iter()
                .map(|label| {
                    domain
                        .iter()
                        .position(|l| l == label)
                        .ok_or_else(|| DiagramError::BadPolicy(format!("{label:?} is not an action of {}", diagram.variables[d].id)))
                })
                .collect::<Result<Vec<_>>>()?;
            rules.push(rule);
        }
        let policy = Policy { rules };
        policy.check(diagram)?;
        Ok(policy)
    }

    pub fn render<P, U>(&self, diagram: &Diagram<P, U>) -> String {
        let sets = PolicySet {
            rules: self
                .rules
                .iter()
                .map(|r| r.iter().map(|&a| vec![a]).collect())
                .collect(),
        };
        sets.render(diagram)
    }
}

/// Every policy choosing, in each cell, one of the listed actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolicySet {
    /// `rules[k][c]` lists the admissible actions of decision `k` at
    /// information configuration `c`, ascending.
    pub rules: Vec<Vec<Vec<usize>>>,
}

/// How a sample was drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Distinct,
    WithReplacement,
}

impl PolicySet {
    pub fn count(&self) -> BigUint {
        let mut total = BigUint::one();
        for cell in self.rules.iter().flatten() {
            total *= BigUint::from(cell.len());
        }
        total
    }

    pub fn contains(&self, policy: &Policy) -> bool {
        self.rules.len() == policy.rules.len()
            && self.rules.iter().zip(&policy.rules).all(|(cells, rule)| {
                cells.len() == rule.len() && cells.iter().zip(rule).all(|(c, a)| c.contains(a))
            })
    }

    /// The policy taking the first admissible action everywhere.
    pub fn first(&self) -> Policy {
        Policy {
            rules: self
                .rules
                .iter()
                .map(|cells| cells.iter().map(|c| c[0]).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &PolicySet) -> bool {
        self.rules.len() == other.rules.len()
            && self.rules.iter().zip(&other.rules).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.iter().all(|v| y.contains(v)))
            })
    }

    fn draw(&self, rng: &mut impl Rng) -> Policy {
        Policy {
            rules: self
                .rules
                .iter()
                .map(|cells| cells.iter().map(|c| c[rng.gen_range(0..c.len())]).collect())
                .collect(),
        }
    }

    /// Draws `s` policies, each cell chosen uniformly and independently.
    /// Policies are distinct when the set holds at least `s` of them;
    /// otherwise they are drawn with replacement.
    pub fn sample(&self, s: usize, rng: &mut impl Rng) -> (Vec<Policy>, Sampling) {
        if self.count() < BigUint::from(s) {
            return ((0..s).map(|_| self.draw(rng)).collect(), Sampling::WithReplacement);
        }
        let mut seen = HashSet::with_capacity(s);
        let mut out = Vec::with_capacity(s);
        while out.len() < s {
            let p = self.draw(rng);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        (out, Sampling::Distinct)
    }

    /// Every member, in lexicographic order. Only sensible for small sets.
    pub fn members(&self) -> impl Iterator<Item = Policy> + '_ {
        let cells: Vec<&Vec<usize>> = self.rules.iter().flatten().collect();
        let sizes: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        Configs::new(&sizes).map(move |choice| {
            let mut it = choice.into_iter().zip(&cells).map(|(i, c)| c[i]);
            Policy {
                rules: self
                    .rules
                    .iter()
                    .map(|r| r.iter().map(|_| it.next().expect("one choice per cell")).collect())
                    .collect(),
            }
        })
    }

    /// One line per decision cell: `Drill | Test=yes, Seismic=closed | {yes}`.
    pub fn render<P, U>(&self, diagram: &Diagram<P, U>) -> String {
        let mut out = String::new();
        for (k, cells) in self.rules.iter().enumerate() {
            let d = diagram.decision_order[k];
            let info = &diagram.information_sets[k];
            for (config, actions) in Configs::new(&diagram.cards(info)).zip(cells) {
                let context = if info.is_empty() {
                    "-".to_string()
                } else {
                    info.iter()
                        .zip(&config)
                        .map(|(&v, &x)| format!("{}={}", diagram.variables[v].id, diagram.value_label(v, x)))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let labels: Vec<&str> = actions.iter().map(|&a| diagram.value_label(d, a)).collect();
                let _ = writeln!(out, "{} | {} | {{{}}}", diagram.variables[d].id, context, labels.join(", "));
            }
        }
        out
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rules)
    }
}

pub(crate) fn info_configs<P, U>(diagram: &Diagram<P, U>, k: usize) -> usize {
    diagram.information_sets[k]
        .iter()
        .map(|&v| diagram.card(v))
        .product()
}

/// Index of the information configuration of decision `k` under `assignment`.
pub(crate) fn info_index<P, U>(diagram: &Diagram<P, U>, k: usize, assignment: &[usize]) -> usize {
    diagram.information_sets[k]
        .iter()
        .fold(0, |idx, &v| idx * diagram.card(v) + assignment[v])
}
