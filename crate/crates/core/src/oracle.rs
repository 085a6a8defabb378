//! Bounded convex closure, used as an independent check of set equivalence.
//!
//! The exact closure can be infinite; here coefficients `(+, k)` are limited
//! to `0 ≤ k ≤ max_coeff_order`, and any element may be left out of a
//! combination. Some included element carries `k = 0`, which is what makes
//! the coefficients sum to one.

use std::collections::BTreeSet;

use crate::oom::{maximal_set, OomValue, Order};

pub fn convex_closure_bounded(values: &[OomValue], max_coeff_order: u32) -> BTreeSet<OomValue> {
    // state: (partial sum, whether some included coefficient has order 0)
    let mut states: BTreeSet<(Option<OomValue>, bool)> = BTreeSet::new();
    states.insert((None, false));
    for &a in values {
        let mut next = states.clone();
        for &(partial, hit_one) in &states {
            for k in 0..=max_coeff_order {
                let term = OomValue::plus(k as i64) * a;
                let sum = match partial {
                    None => term,
                    Some(p) => p + term,
                };
                next.insert((Some(sum), hit_one || k == 0));
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter_map(|(sum, hit_one)| if hit_one { sum } else { None })
        .collect()
}

/// Maximal elements of the bounded closure with finite order at most
/// `cutoff`, plus zero when it is maximal.
///
/// Every closure element of order `l` is reachable with coefficient orders
/// up to `l - min_order + 1`, so with `cutoff = min_order + max_coeff_order - 1`
/// the result equals the same slice of the exact closure's maximal set.
pub fn closure_signature(values: &[OomValue], max_coeff_order: u32, cutoff: i64) -> Vec<OomValue> {
    let closure: Vec<OomValue> = convex_closure_bounded(values, max_coeff_order)
        .into_iter()
        .collect();
    maximal_set(&closure)
        .into_iter()
        .filter(|v| match v.order() {
            Order::Finite(n) => n <= cutoff,
            Order::Infinite => true,
        })
        .collect()
}

/// Equivalence of two finite sets decided through their bounded closures.
pub fn equivalent_by_closure(a: &[OomValue], b: &[OomValue], max_coeff_order: u32) -> bool {
    let min_order = a
        .iter()
        .chain(b)
        .filter_map(|v| v.order().finite())
        .min();
    let Some(min_order) = min_order else {
        // only zeros on both sides
        return a.is_empty() == b.is_empty();
    };
    let cutoff = min_order + max_coeff_order as i64 - 1;
    closure_signature(a, max_coeff_order, cutoff) == closure_signature(b, max_coeff_order, cutoff)
}
