//! Random diagram generation and the policy-quality experiment.
//!
//! Structure: variables are placed in a random order; `N − r` of them
//! (taken among positions with at least `p` predecessors) get exactly `p`
//! parents from earlier positions. Decisions are non-roots in sequence, each
//! one after the first having its predecessor decision as a parent, so the
//! decisions lie on one directed path. One utility function takes `a`
//! random variables as its scope.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convert::{convert, ConversionConfig};
use crate::diagram::{Cpt, InfluenceDiagram, Utility, VarKind, Variable};
use crate::error::{DiagramError, Result};
use crate::exact::{evaluate_policy, solve_exact};
use crate::oom_solver::elim_oom_id;
use crate::policy::Sampling;

/// Bounds of the extreme CPT entries.
pub const EXTREME_RANGE: (f64, f64) = (1e-5, 1e-4);
/// Share of chance nodes with extreme CPTs, rounded down.
pub const EXTREME_SHARE: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UtilityClass {
    /// Positive utilities only.
    P,
    /// Equal numbers of positive and negative utilities.
    M,
}

impl fmt::Display for UtilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UtilityClass::P => "P",
            UtilityClass::M => "M",
        })
    }
}

impl FromStr for UtilityClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "P" | "p" => Ok(UtilityClass::P),
            "M" | "m" => Ok(UtilityClass::M),
            _ => Err(format!("unknown utility class {s:?}, expected P or M")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub n_c: usize,
    pub n_d: usize,
    /// Largest domain size; sizes are uniform in `2..=k`.
    pub k: usize,
    /// Parents of each non-root variable.
    pub p: usize,
    /// Number of roots.
    pub r: usize,
    /// Scope size of the utility function.
    pub a: usize,
    pub class: UtilityClass,
    pub seed: u64,
}

impl GeneratorParams {
    /// The `⟨n − 5, 5, 2, 2, 5, 5⟩` family for `n` variables in total.
    pub fn standard(n: usize, class: UtilityClass, seed: u64) -> Self {
        GeneratorParams {
            n_c: n.saturating_sub(5),
            n_d: 5,
            k: 2,
            p: 2,
            r: 5,
            a: 5,
            class,
            seed,
        }
    }

    pub fn total(&self) -> usize {
        self.n_c + self.n_d
    }

    pub fn check(&self) -> Result<()> {
        let n = self.total();
        let mut problems = Vec::new();
        if self.k < 2 {
            problems.push("k must be at least 2".to_string());
        }
        if self.r > n {
            problems.push(format!("r = {} exceeds the {n} variables", self.r));
        }
        if self.p >= n.max(1) {
            problems.push(format!("p = {} must be below the {n} variables", self.p));
        }
        if self.a == 0 || self.a > n {
            problems.push(format!("a = {} must lie in 1..={n}", self.a));
        }
        if self.r < self.p {
            problems.push(format!("r = {} must be at least p = {}", self.r, self.p));
        }
        if self.n_d > n.saturating_sub(self.p) {
            problems.push("too few positions with enough predecessors for the decisions".to_string());
        }
        if self.n_d > 0 && n - self.r.min(n) < self.n_d - 1 {
            problems.push("too many roots to chain the decisions".to_string());
        }
        if self.n_d > 1 && self.p == 0 {
            problems.push("chaining decisions needs p ≥ 1".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(problems))
        }
    }
}

pub fn generate(params: &GeneratorParams) -> Result<InfluenceDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    generate_with(params, &mut rng)
}

pub fn generate_with(params: &GeneratorParams, rng: &mut impl Rng) -> Result<InfluenceDiagram> {
    params.check()?;
    let n = params.total();
    let p = params.p;

    // positions of the decisions, in temporal order
    let mut decision_pos: Vec<usize> = index::sample(rng, n - p, params.n_d)
        .into_iter()
        .map(|i| i + p)
        .collect();
    decision_pos.sort_unstable();
    let mut is_decision = vec![false; n];
    for &d in &decision_pos {
        is_decision[d] = true;
    }

    let mut non_root = vec![false; n];
    for &d in decision_pos.iter().skip(1) {
        non_root[d] = true;
    }
    let forced = params.n_d.saturating_sub(1);
    let mut free: Vec<usize> = (p..n).filter(|&i| !non_root[i]).collect();
    free.shuffle(rng);
    for &i in free.iter().take(n - params.r - forced) {
        non_root[i] = true;
    }

    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        if !non_root[i] {
            continue;
        }
        let mut chosen = Vec::with_capacity(p);
        if let Some(j) = decision_pos.iter().position(|&d| d == i).filter(|&j| j > 0) {
            chosen.push(decision_pos[j - 1]);
        }
        let pool: Vec<usize> = (0..i).filter(|c| !chosen.contains(c)).collect();
        let extra = p - chosen.len();
        chosen.extend(index::sample(rng, pool.len(), extra).into_iter().map(|x| pool[x]));
        chosen.sort_unstable();
        parents[i] = chosen;
    }

    let cards: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=params.k)).collect();
    let mut chance_count = 0;
    let mut decision_count = 0;
    let variables: Vec<Variable> = (0..n)
        .map(|i| {
            let (id, kind) = if is_decision[i] {
                decision_count += 1;
                (format!("D{decision_count}"), VarKind::Decision)
            } else {
                chance_count += 1;
                (format!("C{chance_count}"), VarKind::Chance)
            };
            Variable {
                id,
                kind,
                domain: (0..cards[i]).map(|x| x.to_string()).collect(),
            }
        })
        .collect();

    let chance: Vec<usize> = (0..n).filter(|&i| !is_decision[i]).collect();
    let extreme_count = (EXTREME_SHARE * params.n_c as f64).floor() as usize;
    let mut extreme = vec![false; n];
    for x in index::sample(rng, chance.len(), extreme_count.min(chance.len())) {
        extreme[chance[x]] = true;
    }
    let mut cpts = Vec::with_capacity(chance.len());
    for &i in &chance {
        let rows: usize = parents[i].iter().map(|&q| cards[q]).product();
        let mut table = Vec::with_capacity(rows * cards[i]);
        for _ in 0..rows {
            table.extend(if extreme[i] {
                extreme_row(cards[i], rng)
            } else {
                uniform_row(cards[i], rng)
            });
        }
        cpts.push(Cpt {
            child: i,
            parents: parents[i].clone(),
            table,
        });
    }

    let mut scope: Vec<usize> = index::sample(rng, n, params.a).into_vec();
    scope.sort_unstable();
    let size: usize = scope.iter().map(|&v| cards[v]).product();
    let table = (0..size)
        .map(|cell| {
            let magnitude = 10f64.powi(rng.gen_range(0..=5));
            match params.class {
                UtilityClass::P => magnitude,
                UtilityClass::M if cell % 2 == 0 => magnitude,
                UtilityClass::M => -magnitude,
            }
        })
        .collect();

    let decision_order: Vec<usize> = decision_pos.clone();
    let information_sets = decision_pos.iter().map(|&d| parents[d].clone()).collect();
    let diagram = InfluenceDiagram {
        variables,
        cpts,
        utilities: vec![Utility {
            name: Some("U".to_string()),
            scope,
            table,
        }],
        decision_order,
        information_sets,
        evidence: Vec::new(),
    }
    .with_non_forgetting();
    diagram.check()?;
    Ok(diagram)
}

fn extreme_row(card: usize, rng: &mut impl Rng) -> Vec<f64> {
    let (lo, hi) = EXTREME_RANGE;
    let mut row: Vec<f64> = (0..card).map(|_| rng.gen_range(lo..hi)).collect();
    let big = rng.gen_range(0..card);
    let rest: f64 = row.iter().enumerate().filter(|&(i, _)| i != big).map(|(_, v)| v).sum();
    row[big] = 1.0 - rest;
    row
}

fn uniform_row(card: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut row: Vec<f64> = (0..card).map(|_| rng.gen::<f64>()).collect();
    // gen() is in [0, 1); keep at least one positive entry
    if row.iter().all(|&v| v == 0.0) {
        row[0] = 1.0;
    }
    let total: f64 = row.iter().sum();
    row.iter_mut().for_each(|v| *v /= total);
    row
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub instance_id: usize,
    pub n: usize,
    pub class: UtilityClass,
    pub epsilon: f64,
    pub v: f64,
    pub v_med: f64,
    pub v_max: f64,
    pub eta_med: f64,
    pub eta_max: f64,
    pub samples: usize,
    pub policy_count: BigUint,
    /// Expected utilities of the sampled policies, in draw order.
    pub sampled: Vec<f64>,
    pub flags: Vec<String>,
    pub seed: u64,
}

/// Lower middle element of the sorted values.
pub fn lower_median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

/// Nearest-rank percentile, `q` in `(0, 100]`.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = ((q / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

/// Relative error `|v − x| / |v|`, or the absolute error when `v = 0`.
pub fn relative_error(v: f64, x: f64) -> (f64, bool) {
    if v == 0.0 {
        ((v - x).abs(), true)
    } else {
        (((v - x) / v).abs(), false)
    }
}

fn sampling_rng(seed: u64, instance: usize, eps_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1 + eps_index as u64));
    rng.set_stream(instance as u64);
    rng
}

/// Scores one diagram: exact optimum against `s` policies sampled from the
/// optimal set of each quantized diagram.
pub fn score_instance(
    diagram: &InfluenceDiagram,
    epsilons: &[f64],
    s: usize,
    seed: u64,
    instance_id: usize,
    class: UtilityClass,
) -> Result<Vec<ExperimentResult>> {
    let v = solve_exact(diagram)?.meu;
    let mut out = Vec::with_capacity(epsilons.len());
    for (e, &epsilon) in epsilons.iter().enumerate() {
        let oom = convert(diagram, &ConversionConfig::new(epsilon)?)?;
        let solution = elim_oom_id(&oom)?;
        let mut rng = sampling_rng(seed, instance_id, e);
        let (policies, how) = solution.policies.sample(s.max(1), &mut rng);
        let sampled = policies
            .iter()
            .map(|p| evaluate_policy(diagram, p))
            .collect::<Result<Vec<f64>>>()?;
        let v_med = lower_median(&sampled);
        let v_max = sampled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (eta_med, zero) = relative_error(v, v_med);
        let (eta_max, _) = relative_error(v, v_max);
        let mut flags = Vec::new();
        if how == Sampling::WithReplacement {
            flags.push("with_replacement".to_string());
        }
        if zero {
            flags.push("absolute_error".to_string());
        }
        if solution.stats.nonconstant_decision_lambda {
            flags.push("nonconstant_lambda".to_string());
        }
        out.push(ExperimentResult {
            instance_id,
            n: diagram.variables.len(),
            class,
            epsilon,
            v,
            v_med,
            v_max,
            eta_med,
            eta_max,
            samples: s,
            policy_count: solution.policies.count(),
            sampled,
            flags,
            seed,
        });
    }
    Ok(out)
}

/// Generates `instances` diagrams (instance `i` on stream `i` of `seed`)
/// and scores each. Instances run in parallel; results are in instance order.
pub fn run_experiment(
    params: &GeneratorParams,
    epsilons: &[f64],
    s: usize,
    instances: usize,
    seed: u64,
) -> Result<Vec<ExperimentResult>> {
    params.check()?;
    for &e in epsilons {
        ConversionConfig::new(e)?;
    }
    let per_instance = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let diagram = generate_with(params, &mut rng)?;
            score_instance(&diagram, epsilons, s, seed, i, params.class)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_instance.into_iter().flatten().collect())
}

pub const CSV_HEADER: &str = "instance_id,n,class,epsilon,v,v_med,v_max,eta_med,eta_max,policy_count,flags";

pub fn results_csv(results: &[ExperimentResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
            r.instance_id,
            r.n,
            r.class,
            r.epsilon,
            r.v,
            r.v_med,
            r.v_max,
            r.eta_med,
            r.eta_max,
            r.policy_count,
            r.flags.join(";")
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub class: UtilityClass,
    pub n: usize,
    pub epsilon: f64,
    pub instances: usize,
    /// 25th, 50th and 75th percentiles.
    pub eta_med: [f64; 3],
    pub eta_max: [f64; 3],
}

/// Percentiles of both errors per class, size and ε. Groups without results
/// do not appear.
pub fn summarize(results: &[ExperimentResult]) -> Vec<SummaryRow> {
    let mut keys: Vec<(UtilityClass, usize, f64)> = Vec::new();
    for r in results {
        if !keys.iter().any(|k| *k == (r.class, r.n, r.epsilon)) {
            keys.push((r.class, r.n, r.epsilon));
        }
    }
    keys.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(b.2.total_cmp(&a.2)));
    keys.into_iter()
        .map(|(class, n, epsilon)| {
            let group: Vec<&ExperimentResult> = results
                .iter()
                .filter(|r| r.class == class && r.n == n && r.epsilon == epsilon)
                .collect();
            let med: Vec<f64> = group.iter().map(|r| r.eta_med).collect();
            let max: Vec<f64> = group.iter().map(|r| r.eta_max).collect();
            let q = |v: &[f64]| [percentile(v, 25.0), percentile(v, 50.0), percentile(v, 75.0)];
            SummaryRow {
                class,
                n,
                epsilon,
                instances: group.len(),
                eta_med: q(&med),
                eta_max: q(&max),
            }
        })
        .collect()
}

pub const SUMMARY_HEADER: &str =
    "class,n,epsilon,instances,eta_med_p25,eta_med_p50,eta_med_p75,eta_max_p25,eta_max_p50,eta_max_p75";

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.class, r.n, r.epsilon, r.instances, r.eta_med[0], r.eta_med[1], r.eta_med[2], r.eta_max[0], r.eta_max[1], r.eta_max[2]
        );
    }
    out
}

/// Parses results written by [`results_csv`].
pub fn parse_results_csv(text: &str) -> Result<Vec<ExperimentResult>> {
    let bad = |line: usize, what: &str| DiagramError::Invalid(vec![format!("line {line}: {what}")]);
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(bad(1, "missing or unexpected header")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            return Err(bad(i + 1, "expected 11 fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "bad number"));
        out.push(ExperimentResult {
            instance_id: f[0].parse().map_err(|_| bad(i + 1, "bad instance id"))?,
            n: f[1].parse().map_err(|_| bad(i + 1, "bad size"))?,
            class: f[2].parse().map_err(|e: String| bad(i + 1, &e))?,
            epsilon: num(f[3])?,
            v: num(f[4])?,
            v_med: num(f[5])?,
            v_max: num(f[6])?,
            eta_med: num(f[7])?,
            eta_max: num(f[8])?,
            samples: 0,
            policy_count: f[9].parse().map_err(|_| bad(i + 1, "bad policy count"))?,
            sampled: Vec::new(),
            flags: f[10].split(';').filter(|s| !s.is_empty()).map(String::from).collect(),
            seed: 0,
        });
    }
    Ok(out)
}
