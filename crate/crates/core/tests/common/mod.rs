#![allow(dead_code)]

use oomid::diagram::{Cpt, Diagram, Utility};
use oomid::{InfluenceDiagram, OomInfluenceDiagram, OomSet, OomValue, VarKind, Variable};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const POLICY_LIMIT: f64 = 4096.0;

/// Skeleton with placeholder tables: at most eight variables, one to three
/// decisions, a few utility functions. Policy spaces stay below [`POLICY_LIMIT`].
pub fn skeleton(rng: &mut ChaCha8Rng) -> Diagram<(), ()> {
    loop {
        let n = rng.gen_range(3..=8);
        let n_d = rng.gen_range(1..=3.min(n - 1));
        let decisions: Vec<usize> = {
            let mut d = index::sample(rng, n, n_d).into_vec();
            d.sort_unstable();
            d
        };
        let variables: Vec<Variable> = (0..n)
            .map(|i| {
                let decision = decisions.contains(&i);
                Variable {
                    id: format!("{}{i}", if decision { "D" } else { "X" }),
                    kind: if decision { VarKind::Decision } else { VarKind::Chance },
                    domain: (0..rng.gen_range(2..=3)).map(|x| format!("v{x}")).collect(),
                }
            })
            .collect();
        let mut parents = vec![Vec::new(); n];
        for (i, p) in parents.iter_mut().enumerate().skip(1) {
            let count = rng.gen_range(0..=2.min(i));
            let mut chosen = index::sample(rng, i, count).into_vec();
            chosen.sort_unstable();
            *p = chosen;
        }
        let cpts = (0..n)
            .filter(|i| !decisions.contains(i))
            .map(|i| Cpt {
                child: i,
                parents: parents[i].clone(),
                table: Vec::new(),
            })
            .collect();
        let utilities = (0..rng.gen_range(1..=3))
            .map(|_| {
                let size = rng.gen_range(1..=3.min(n));
                let mut scope = index::sample(rng, n, size).into_vec();
                scope.sort_unstable();
                Utility {
                    name: None,
                    scope,
                    table: Vec::new(),
                }
            })
            .collect();
        let d = Diagram {
            variables,
            cpts,
            utilities,
            information_sets: decisions.iter().map(|&d| parents[d].clone()).collect(),
            decision_order: decisions,
            evidence: Vec::new(),
        };
        let d = close(d);
        if d.policy_space_size() <= POLICY_LIMIT {
            return d;
        }
    }
}

fn close(mut d: Diagram<(), ()>) -> Diagram<(), ()> {
    // the same appending closure the loader applies
    let mut known: Vec<usize> = Vec::new();
    for k in 0..d.decision_order.len() {
        let mut info = d.information_sets[k].clone();
        for &v in &known {
            if !info.contains(&v) {
                info.push(v);
            }
        }
        for &v in &info {
            if !known.contains(&v) {
                known.push(v);
            }
        }
        known.push(d.decision_order[k]);
        d.information_sets[k] = info;
    }
    d
}

fn sizes(d: &Diagram<(), ()>) -> (Vec<(usize, usize)>, Vec<usize>) {
    let cpt = d
        .cpts
        .iter()
        .map(|c| (c.parents.iter().map(|&p| d.card(p)).product(), d.card(c.child)))
        .collect();
    let util = d
        .utilities
        .iter()
        .map(|u| u.scope.iter().map(|&v| d.card(v)).product())
        .collect();
    (cpt, util)
}

fn fill<P, U>(
    d: &Diagram<(), ()>,
    mut row: impl FnMut(usize) -> Vec<P>,
    mut cell: impl FnMut() -> U,
) -> Diagram<P, U> {
    let (cpt_sizes, util_sizes) = sizes(d);
    Diagram {
        variables: d.variables.clone(),
        cpts: d
            .cpts
            .iter()
            .zip(cpt_sizes)
            .map(|(c, (rows, card))| Cpt {
                child: c.child,
                parents: c.parents.clone(),
                table: (0..rows).flat_map(|_| row(card)).collect(),
            })
            .collect(),
        utilities: d
            .utilities
            .iter()
            .zip(util_sizes)
            .map(|(u, size)| Utility {
                name: u.name.clone(),
                scope: u.scope.clone(),
                table: (0..size).map(|_| cell()).collect(),
            })
            .collect(),
        decision_order: d.decision_order.clone(),
        information_sets: d.information_sets.clone(),
        evidence: Vec::new(),
    }
}

pub fn numeric(seed: u64) -> InfluenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = skeleton(&mut rng);
    let mut tables = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut utils = ChaCha8Rng::seed_from_u64(seed ^ 0xface);
    fill(
        &s,
        |card| {
            let raw: Vec<f64> = (0..card).map(|_| tables.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|p| p / total).collect()
        },
        || utils.gen_range(-100.0..100.0),
    )
}

pub fn random_oom_value(rng: &mut impl Rng, lo: i64, hi: i64) -> OomValue {
    let order = rng.gen_range(lo..=hi);
    match rng.gen_range(0..3) {
        0 => OomValue::plus(order),
        1 => OomValue::minus(order),
        _ => OomValue::plus_minus(order),
    }
}

pub fn random_oom_set(rng: &mut impl Rng) -> OomSet {
    match rng.gen_range(0..10) {
        0 => OomSet::ZERO,
        1..=5 => OomSet::single(random_oom_value(rng, -3, 3)),
        _ => {
            let low = rng.gen_range(-3..=2);
            let high = random_oom_value(rng, low + 1, 3);
            OomSet::pair(low, high).expect("low below high")
        }
    }
}

/// Rows hold one `(+,0)` and finite positive orders elsewhere.
pub fn oom(seed: u64) -> OomInfluenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = skeleton(&mut rng);
    let mut tables = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut utils = ChaCha8Rng::seed_from_u64(seed ^ 0xface);
    fill(
        &s,
        |card| {
            let top = tables.gen_range(0..card);
            (0..card)
                .map(|i| OomValue::plus(if i == top { 0 } else { tables.gen_range(0..=3) }))
                .collect()
        },
        || random_oom_set(&mut utils),
    )
}

/// Every value with sign `+`, `-`, `±` and order in `lo..=hi`, plus zero.
pub fn window(lo: i64, hi: i64) -> Vec<OomValue> {
    let mut out = vec![OomValue::ZERO];
    for n in lo..=hi {
        out.extend([OomValue::plus(n), OomValue::minus(n), OomValue::plus_minus(n)]);
    }
    out
}
