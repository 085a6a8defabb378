//! Quantization of numeric diagrams into order-of-magnitude diagrams.
//!
//! A probability `p > 0` maps to `⟨+, k⟩` with `ε^(k+1) < p ≤ ε^k`; a
//! utility `u ≠ 0` maps to `{⟨sign(u), −k⟩}` with `ε^(−k) ≤ |u| < ε^(−(k+1))`.
//! The integer `k` is estimated from logarithms and then settled by exact
//! rational comparisons on the given floating-point values, so that exact
//! powers of `ε` land on the right side of each boundary.

use num_rational::BigRational;

use crate::diagram::{InfluenceDiagram, OomInfluenceDiagram};
use crate::error::{DiagramError, Result};
use crate::oom::{OomValue, Order, Sign};
use crate::oom_set::OomSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConversionConfig {
    epsilon: f64,
}

impl ConversionConfig {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon < 1.0 {
            Ok(ConversionConfig { epsilon })
        } else {
            Err(DiagramError::Conversion(format!("epsilon must lie in (0, 1), got {epsilon}")))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

fn power(base: &BigRational, k: i64) -> BigRational {
    let k = i32::try_from(k).expect("exponent fits in i32");
    base.pow(k)
}

/// The `k` with `ε^(k+1) < x ≤ ε^k`, for `x > 0`.
fn level(x: f64, epsilon: f64) -> i64 {
    let eps = exact(epsilon);
    let target = exact(x);
    let mut k = (x.ln() / epsilon.ln()).ceil() as i64 - 1;
    while target > power(&eps, k) {
        k -= 1;
    }
    while target <= power(&eps, k + 1) {
        k += 1;
    }
    k
}

/// The `k` with `ε^(−k) ≤ x < ε^(−(k+1))`, for `x > 0`.
fn utility_level(x: f64, epsilon: f64) -> i64 {
    let inv = exact(epsilon).recip();
    let target = exact(x);
    let mut k = (x.ln() / -epsilon.ln()).floor() as i64;
    while target < power(&inv, k) {
        k -= 1;
    }
    while target >= power(&inv, k + 1) {
        k += 1;
    }
    k
}

pub fn spohn_prob(p: f64, cfg: &ConversionConfig) -> Result<OomValue> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DiagramError::Conversion(format!("probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        return Ok(OomValue::ZERO);
    }
    Ok(OomValue::plus(level(p, cfg.epsilon)))
}

pub fn spohn_util(u: f64, cfg: &ConversionConfig) -> Result<OomSet> {
    if !u.is_finite() {
        return Err(DiagramError::Conversion(format!("utility {u} is not finite")));
    }
    if u == 0.0 {
        return Ok(OomSet::ZERO);
    }
    let sign = if u > 0.0 { Sign::Plus } else { Sign::Minus };
    let k = utility_level(u.abs(), cfg.epsilon);
    Ok(OomSet::single(OomValue::new(sign, Order::Finite(-k))))
}

/// Entry-wise conversion; structure, domains and evidence are kept.
pub fn convert(diagram: &InfluenceDiagram, cfg: &ConversionConfig) -> Result<OomInfluenceDiagram> {
    diagram.map_tables(|&p| spohn_prob(p, cfg), |&u| spohn_util(u, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(e: f64) -> ConversionConfig {
        ConversionConfig::new(e).unwrap()
    }

    #[test]
    fn probabilities() {
        assert_eq!(spohn_prob(0.01, &cfg(0.1)).unwrap(), OomValue::plus(2));
        assert_eq!(spohn_prob(1.0, &cfg(0.3)).unwrap(), OomValue::plus(0));
        assert_eq!(spohn_prob(0.5, &cfg(0.1)).unwrap(), OomValue::plus(0));
        assert_eq!(spohn_prob(0.1, &cfg(0.1)).unwrap(), OomValue::plus(1));
        assert_eq!(spohn_prob(0.0, &cfg(0.1)).unwrap(), OomValue::ZERO);
        assert!(spohn_prob(1.5, &cfg(0.1)).is_err());
        assert!(spohn_prob(-0.1, &cfg(0.1)).is_err());
    }

    #[test]
    fn utilities() {
        let c = cfg(0.1);
        assert_eq!(spohn_util(-70.0, &c).unwrap(), OomSet::single(OomValue::minus(-1)));
        assert_eq!(spohn_util(200.0, &c).unwrap(), OomSet::single(OomValue::plus(-2)));
        assert_eq!(spohn_util(0.0, &c).unwrap(), OomSet::ZERO);
        assert_eq!(spohn_util(10.0, &c).unwrap(), OomSet::single(OomValue::plus(-1)));
        assert_eq!(spohn_util(1.0, &c).unwrap(), OomSet::single(OomValue::plus(0)));
        assert_eq!(spohn_util(0.5, &c).unwrap(), OomSet::single(OomValue::plus(1)));
    }

    #[test]
    fn epsilon_must_be_below_one() {
        assert!(ConversionConfig::new(1.5).is_err());
        assert!(ConversionConfig::new(0.0).is_err());
        assert!(ConversionConfig::new(1.0).is_err());
    }
}
