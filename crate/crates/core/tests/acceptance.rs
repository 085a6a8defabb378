//! Acceptance checks, one PASS/FAIL line each. Exits non-zero when any fails.

mod common;

use std::time::{Duration, Instant};

use oomid::bench::{run_experiment, summarize, GeneratorParams, UtilityClass};
use oomid::convert::{convert, ConversionConfig};
use oomid::exact::{brute_force_meu, evaluate_policy, solve_exact};
use oomid::oom::maximal_set;
use oomid::oom_solver::{brute_force_oom, elim_oom_id};
use oomid::oracle::equivalent_by_closure;
use oomid::{InfluenceDiagram, LoadOptions, OomSet, OomValue, Policy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXACT_TOL: f64 = 1e-9;
const WILDCATTER: &str = include_str!("../fixtures/wildcatter.json");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.2}s, limit {}s]", o.detail, took.as_secs_f64(), limit.as_secs());
    o
}

fn wildcatter() -> InfluenceDiagram {
    InfluenceDiagram::from_json(WILDCATTER, LoadOptions::default()).unwrap()
}

fn set(s: &str) -> OomSet {
    s.parse().unwrap()
}

fn val(s: &str) -> OomValue {
    s.parse().unwrap()
}

fn wildcatter_meu() -> Outcome {
    let meu = solve_exact(&wildcatter()).unwrap().meu;
    outcome((meu - 42.75).abs() <= EXACT_TOL, format!("MEU = {meu:.9}, expected 42.75"))
}

fn policy_values() -> Outcome {
    let d = wildcatter();
    let d1 = Policy::from_labels(&d, &[vec!["yes"], vec!["yes", "yes", "no", "yes", "yes", "yes"]]).unwrap();
    let d2 = Policy::from_labels(&d, &[vec!["no"], vec!["yes"; 6]]).unwrap();
    let v1 = evaluate_policy(&d, &d1).unwrap();
    let v2 = evaluate_policy(&d, &d2).unwrap();
    outcome(
        (v1 - 42.75).abs() <= EXACT_TOL && (v2 - 20.0).abs() <= EXACT_TOL,
        format!("policy values {v1:.9} / {v2:.9}, expected 42.75 / 20.00"),
    )
}

fn oom_policy_sets() -> Outcome {
    // Test?, then Drill? for (T,S) = (yes,closed) (yes,open) (yes,diffuse) (no,closed) (no,open) (no,diffuse)
    let both = vec![0, 1];
    let yes = vec![0];
    let no = vec![1];
    let cases = [
        (0.1, "{(+,-1)}", 2u32, vec![yes.clone(), yes.clone(), no, yes.clone(), yes.clone(), yes.clone()]),
        (0.01, "{(+,0)}", 4, vec![yes.clone(), yes.clone(), both.clone(), yes.clone(), yes.clone(), yes]),
        (0.001, "{(+-,0),(+-,inf)}", 128, vec![both.clone(); 6]),
    ];
    let d = wildcatter();
    let mut pass = true;
    let mut notes = Vec::new();
    for (eps, meu, count, drill) in cases {
        let s = elim_oom_id(&convert(&d, &ConversionConfig::new(eps).unwrap()).unwrap()).unwrap();
        let cells = s.policies.rules == vec![vec![both.clone()], drill];
        let counted = s.policies.count() == count.into();
        let meu_ok = s.meu.equiv(&set(meu));
        pass &= cells && counted && meu_ok;
        notes.push(format!(
            "eps {eps}: actions {}, policies {} (expected {count}), MEU {} (expected {meu})",
            if cells { "match" } else { "differ" },
            s.policies.count(),
            s.meu
        ));
    }
    outcome(pass, notes.join("; "))
}

fn wildcatter_conversion() -> Outcome {
    let d = wildcatter();
    let o = convert(&d, &ConversionConfig::new(0.1).unwrap()).unwrap();
    let cpt = |id: &str| {
        let v = o.var_index(id).unwrap();
        o.cpts.iter().find(|c| c.child == v).unwrap().table.clone()
    };
    let utility = |scope: &[&str]| {
        let vars: Vec<usize> = scope.iter().map(|s| o.var_index(s).unwrap()).collect();
        o.utilities.iter().find(|u| u.scope == vars).unwrap().table.clone()
    };
    let seismic: Vec<OomValue> = [2, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 2, 0, 0, 0]
        .into_iter()
        .map(OomValue::plus)
        .collect();
    let oil = vec![OomValue::plus(0); 3];
    let test = vec![set("{(-,-1)}"), OomSet::ZERO];
    let drill = vec![
        set("{(-,-1)}"),
        OomSet::ZERO,
        set("{(+,-1)}"),
        OomSet::ZERO,
        set("{(+,-2)}"),
        OomSet::ZERO,
    ];
    let got_s = cpt("Seismic");
    let got_o = cpt("Oil");
    let got_t = utility(&["Test"]);
    let got_d = utility(&["Oil", "Drill"]);
    let matched = got_s.iter().zip(&seismic).filter(|(a, b)| a == b).count()
        + got_o.iter().zip(&oil).filter(|(a, b)| a == b).count()
        + got_t.iter().zip(&test).filter(|(a, b)| a == b).count()
        + got_d.iter().zip(&drill).filter(|(a, b)| a == b).count();
    let sizes_ok = got_s.len() == 18 && got_o.len() == 3 && got_t.len() == 2 && got_d.len() == 6;
    outcome(sizes_ok && matched == 29, format!("{matched} of 29 entries match"))
}

fn counterexample() -> Outcome {
    let a = [val("(+-,1)"), val("(+-,4)")];
    let (q1, q2) = (val("(+,2)"), val("(+,3)"));
    let mut left: Vec<OomValue> = a.iter().map(|&x| (q1 + q2) * x).collect();
    let mut right: Vec<OomValue> = a
        .iter()
        .flat_map(|&x| a.iter().map(move |&y| q1 * x + q2 * y))
        .collect();
    left.sort();
    left.dedup();
    right.sort();
    right.dedup();
    let raw_ok = left == [val("(+-,3)"), val("(+-,6)")] && right == [val("(+-,3)"), val("(+-,4)"), val("(+-,6)")];
    let equiv = OomSet::canonicalize(&left)
        .unwrap()
        .equiv(&OomSet::canonicalize(&right).unwrap());
    outcome(
        raw_ok && equiv,
        format!("raw {} vs {}, equiv after canonicalization: {equiv}", show(&left), show(&right)),
    )
}

fn show(values: &[OomValue]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn pair_set_ops() -> Outcome {
    let a1 = set("{(+-,3),(+-,4)}");
    let a2 = set("{(+-,3),(+-,6)}");
    let max = OomSet::max_of(&[a1, a2]).unwrap();
    let sum = OomSet::sum_of(&[a1, a2]).unwrap();
    outcome(
        max == set("{(+-,3),(+-,6)}") && sum == set("{(+-,3),(+-,4)}"),
        format!("max {max}, sum {sum}"),
    )
}

/// Compact rerun of the property suites: exhaustive value laws over orders
/// [-4, 4], then 1000 random set cases against the closure oracle.
fn properties() -> Outcome {
    let vs = common::window(-4, 4);
    let mut broken = Vec::new();
    let mut literal_gaps = 0usize;
    for &a in &vs {
        if a.dominates(&a) == a.is_plus_minus() {
            broken.push(format!("reflexivity at {a}"));
        }
        if a.is_positive() && a * a.inverse().unwrap() != OomValue::ONE {
            broken.push(format!("inverse of {a}"));
        }
        for &b in &vs {
            if a + b != b + a || a * b != b * a {
                broken.push(format!("commutativity at {a} {b}"));
            }
            if a.dominates(&b) && b.dominates(&a) && a != b {
                broken.push(format!("antisymmetry at {a} {b}"));
            }
            for &c in &vs {
                if (a + b) + c != a + (b + c) || (a * b) * c != a * (b * c) {
                    broken.push(format!("associativity at {a} {b} {c}"));
                }
                if (a + b) * c != a * c + b * c {
                    broken.push(format!("distributivity at {a} {b} {c}"));
                }
                if a.dominates(&b) && b.dominates(&c) && !a.dominates(&c) {
                    broken.push(format!("transitivity at {a} {b} {c}"));
                }
                if a.dominates(&b) {
                    let (x, y) = (a + c, b + c);
                    if !x.dominates(&y) {
                        // ≿ is not reflexive on ± values; equal sums are the only gap
                        if x == y {
                            literal_gaps += 1;
                        } else {
                            broken.push(format!("additive monotonicity at {a} {b} {c}"));
                        }
                    }
                    if (c.is_positive() || c.is_zero()) && !(a * c).dominates(&(b * c)) && a * c != b * c {
                        broken.push(format!("multiplicative monotonicity at {a} {b} {c}"));
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let raw = |rng: &mut ChaCha8Rng| -> Vec<OomValue> {
        (0..rng.gen_range(1..=6))
            .map(|_| {
                if rng.gen_bool(0.1) {
                    OomValue::ZERO
                } else {
                    common::random_oom_value(rng, -4, 4)
                }
            })
            .collect()
    };
    let same = |a: &[OomValue], b: &[OomValue]| equivalent_by_closure(a, b, 13);
    for case in 0..1000 {
        let (ra, rb, rc) = (raw(&mut rng), raw(&mut rng), raw(&mut rng));
        let [a, b, c] = [&ra, &rb, &rc].map(|r| OomSet::canonicalize(r).unwrap());
        let q1 = OomValue::plus(rng.gen_range(0..=2));
        let q2 = OomValue::plus(rng.gen_range(0..=2));
        if !a.is_canonical() || !same(&ra, &a.elements()) {
            broken.push(format!("canonical form, case {case}"));
        }
        if a.equiv(&b) != same(&ra, &rb) {
            broken.push(format!("equivalence decision, case {case}"));
        }
        if !a.sum(&b).scale(q1).unwrap().equiv(&a.scale(q1).unwrap().sum(&b.scale(q1).unwrap())) {
            broken.push(format!("scaling a sum, case {case}"));
        }
        if !a.scale(q1 + q2).unwrap().equiv(&a.scale(q1).unwrap().sum(&a.scale(q2).unwrap())) {
            broken.push(format!("sum of scales, case {case}"));
        }
        if !a.max(&b).sum(&c).equiv(&a.sum(&c).max(&b.sum(&c))) {
            broken.push(format!("sum over max, case {case}"));
        }
        let union: Vec<OomValue> = ra.iter().chain(&rb).copied().collect();
        if !same(&maximal_set(&union), &a.max(&b).elements()) {
            broken.push(format!("max against union, case {case}"));
        }
    }
    let detail = format!(
        "{} violations; {} monotone pairs rely on equal ± sums",
        broken.len(),
        literal_gaps
    );
    match broken.first() {
        Some(first) => outcome(false, format!("{detail}; first: {first}")),
        None => outcome(true, detail),
    }
}

fn solver_oracles() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..30 {
        let d = common::numeric(seed);
        let s = solve_exact(&d).unwrap().meu;
        let b = brute_force_meu(&d).unwrap().meu;
        if (s - b).abs() > EXACT_TOL {
            bad.push(format!("numeric seed {seed}: {s} vs {b}"));
        }
        let o = common::oom(seed);
        let e = elim_oom_id(&o).unwrap();
        let bo = brute_force_oom(&o).unwrap();
        if !e.meu.equiv(&bo.meu) || e.policies != bo.policies {
            bad.push(format!("oom seed {seed}"));
        }
    }
    let mut detail = format!("30 numeric and 30 oom diagrams, {} disagreements", bad.len());
    if !bad.is_empty() {
        detail = format!("{detail}: {}", bad.join(", "));
    }
    outcome(bad.is_empty(), detail)
}

fn trends() -> Outcome {
    let epsilons = [0.5, 0.05, 0.005];
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [25, 35] {
        let params = GeneratorParams::standard(n, UtilityClass::P, 17);
        let results = run_experiment(&params, &epsilons, 100, 30, 17).unwrap();
        let rows = summarize(&results);
        let median = |eps: f64, f: fn(&oomid::bench::SummaryRow) -> f64| {
            f(rows.iter().find(|r| r.epsilon == eps).unwrap())
        };
        let max_ok = epsilons.iter().all(|&e| median(e, |r| r.eta_max[1]) <= 0.01);
        let med_coarse = median(0.5, |r| r.eta_med[1]);
        let med_fine = median(0.005, |r| r.eta_med[1]);
        pass &= max_ok && med_coarse <= 0.10 && med_coarse < med_fine;
        let maxes: Vec<String> = epsilons
            .iter()
            .map(|&e| format!("{:.4}", median(e, |r| r.eta_max[1])))
            .collect();
        notes.push(format!(
            "n={n}: median eta_max {}, median eta_med {med_coarse:.4} at 0.5 vs {med_fine:.4} at 0.005",
            maxes.join("/")
        ));
    }
    outcome(pass, notes.join("; "))
}

fn main() {
    let criteria: Vec<(&str, Outcome)> = vec![
        ("wildcatter exact MEU", timed(Duration::from_secs(1), wildcatter_meu)),
        ("policy values of the two named policies", timed(Duration::from_secs(1), policy_values)),
        ("optimal policy sets at three epsilons", timed(Duration::from_secs(1), oom_policy_sets)),
        ("conversion of the wildcatter at 0.1", timed(Duration::from_secs(1), wildcatter_conversion)),
        ("element-wise distributivity counterexample", timed(Duration::from_secs(1), counterexample)),
        ("max and sum of two pair sets", timed(Duration::from_secs(1), pair_set_ops)),
        ("calculus and set properties", timed(Duration::from_secs(120), properties)),
        ("solvers against enumeration", timed(Duration::from_secs(120), solver_oracles)),
        ("sampled policy quality trends", timed(Duration::from_secs(600), trends)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
