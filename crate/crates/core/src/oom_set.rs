//! Finite sets of order-of-magnitude values, kept in the canonical one- or
//! two-element form.
//!
//! Every finite set is equivalent (equal maximal elements of the convex
//! closure) to either a singleton `{a}` or a pair `{(±,m), (σ,n)}` with
//! `m < n`. All operations here return that form. The form is unique except
//! that `{(±,m), (−,n)}` and `{(±,m), (±,n)}` are equivalent: both closures
//! have maximal set `{(±,l) : m ≤ l ≤ n}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::OomError;
use crate::oom::{OomValue, Order, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum OomSet {
    Single(OomValue),
    /// `{(±, low), high}` with `low < order(high)`; `high` may be zero.
    Pair { low: i64, high: OomValue },
}

/// Per-sign minimum and maximum order over a collection of values.
#[derive(Default)]
struct SignRange {
    range: Option<(Order, Order)>,
}

impl SignRange {
    fn push(&mut self, order: Order) {
        self.range = Some(match self.range {
            None => (order, order),
            Some((lo, hi)) => (lo.min(order), hi.max(order)),
        });
    }

    fn min(&self) -> Option<Order> {
        self.range.map(|r| r.0)
    }

    fn max(&self) -> Option<Order> {
        self.range.map(|r| r.1)
    }
}

impl OomSet {
    pub const ZERO: OomSet = OomSet::Single(OomValue::ZERO);

    pub fn single(value: OomValue) -> OomSet {
        OomSet::Single(value)
    }

    /// `{(±, low), high}`, collapsing to a singleton when both coincide.
    fn with_plus_minus(low: Order, high: OomValue) -> OomSet {
        match low {
            Order::Finite(m) if Order::Finite(m) < high.order() => OomSet::Pair { low: m, high },
            _ => OomSet::Single(high),
        }
    }

    /// Builds a canonical pair, checking the shape invariant.
    pub fn pair(low: i64, high: OomValue) -> Result<OomSet, OomError> {
        if Order::Finite(low) < high.order() {
            Ok(OomSet::Pair { low, high })
        } else {
            Err(OomError::parse(
                &format!("{{{},{}}}", OomValue::plus_minus(low), high),
                "pair needs the ± element strictly below the second element",
            ))
        }
    }

    /// The element with the lowest order (`a` in `{a, b}`).
    pub fn first(&self) -> OomValue {
        match *self {
            OomSet::Single(a) => a,
            OomSet::Pair { low, .. } => OomValue::plus_minus(low),
        }
    }

    /// The element with the highest order (`b` in `{a, b}`).
    pub fn second(&self) -> OomValue {
        match *self {
            OomSet::Single(a) => a,
            OomSet::Pair { high, .. } => high,
        }
    }

    pub fn elements(&self) -> Vec<OomValue> {
        match *self {
            OomSet::Single(a) => vec![a],
            OomSet::Pair { low, high } => vec![OomValue::plus_minus(low), high],
        }
    }

    pub fn len(&self) -> usize {
        match self {
            OomSet::Single(_) => 1,
            OomSet::Pair { .. } => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when the value is in canonical shape.
    pub fn is_canonical(&self) -> bool {
        match *self {
            OomSet::Single(_) => true,
            OomSet::Pair { low, high } => Order::Finite(low) < high.order(),
        }
    }

    /// Canonical form of an arbitrary non-empty collection of values.
    pub fn canonicalize(values: &[OomValue]) -> Result<OomSet, OomError> {
        if values.is_empty() {
            return Err(OomError::EmptySet);
        }
        Ok(maximize(values.iter().copied()))
    }

    /// Multiplication by a positive (or zero) weight.
    pub fn scale(&self, q: OomValue) -> Result<OomSet, OomError> {
        if !q.is_nonnegative() {
            return Err(OomError::InvalidScale(q));
        }
        if q.is_zero() {
            return Ok(OomSet::ZERO);
        }
        Ok(match *self {
            OomSet::Single(a) => OomSet::Single(q * a),
            OomSet::Pair { low, high } => {
                let shift = q.order().finite().expect("positive weight has finite order");
                OomSet::Pair {
                    low: low + shift,
                    high: q * high,
                }
            }
        })
    }

    /// Equivalent of `max(A₁, …, A_k)`, the maximal elements of the union.
    pub fn max_of(sets: &[OomSet]) -> Result<OomSet, OomError> {
        if sets.is_empty() {
            return Err(OomError::EmptySet);
        }
        Ok(maximize(sets.iter().flat_map(|s| s.elements())))
    }

    /// Equivalent of the element-wise sum `A₁ + … + A_k`.
    pub fn sum_of(sets: &[OomSet]) -> Result<OomSet, OomError> {
        if sets.is_empty() {
            return Err(OomError::EmptySet);
        }
        let a: OomValue = sets.iter().map(OomSet::first).sum();
        let b: OomValue = sets.iter().map(OomSet::second).sum();
        // {a, b} can still hold two elements of equal order, e.g. {(±,0), (-,0)}
        Ok(maximize([a, b].into_iter()))
    }

    pub fn max(&self, other: &OomSet) -> OomSet {
        maximize(self.elements().into_iter().chain(other.elements()))
    }

    pub fn sum(&self, other: &OomSet) -> OomSet {
        OomSet::sum_of(&[*self, *other]).expect("two operands")
    }

    /// `self ≿ other`: each element of `other` is dominated by some element of `self`.
    pub fn dominates(&self, other: &OomSet) -> bool {
        let mine = self.elements();
        other
            .elements()
            .iter()
            .all(|b| mine.iter().any(|a| a.dominates(b)))
    }

    /// `self ≻ other` on the set ordering.
    pub fn strictly_dominates(&self, other: &OomSet) -> bool {
        self.dominates(other) && !other.dominates(self)
    }

    /// `≡`-equivalence of canonical sets.
    pub fn equiv(&self, other: &OomSet) -> bool {
        self.equiv_key() == other.equiv_key()
    }

    fn equiv_key(&self) -> OomSet {
        match *self {
            OomSet::Pair { low, high } if high.sign() == Sign::Minus => OomSet::Pair {
                low,
                high: OomValue::new(Sign::PlusMinus, high.order()),
            },
            s => s,
        }
    }
}

/// Five-case maximization over the union of canonical sets.
///
/// Also used on raw value lists, each element read as a singleton.
fn maximize(values: impl Iterator<Item = OomValue>) -> OomSet {
    let mut plus = SignRange::default();
    let mut minus = SignRange::default();
    let mut pm = SignRange::default();
    for v in values {
        match v.sign() {
            Sign::Plus => plus.push(v.order()),
            Sign::Minus => minus.push(v.order()),
            Sign::PlusMinus => pm.push(v.order()),
        }
    }
    let out = match (plus.min(), pm.min()) {
        (None, None) => {
            let n = minus.max().expect("non-empty input");
            OomSet::Single(OomValue::new(Sign::Minus, n))
        }
        (Some(m_plus), None) => OomSet::Single(OomValue::new(Sign::Plus, m_plus)),
        (Some(m_plus), Some(m_pm)) if m_plus <= m_pm => {
            OomSet::Single(OomValue::new(Sign::Plus, m_plus))
        }
        (Some(m_plus), Some(m_pm)) => {
            OomSet::with_plus_minus(m_pm, OomValue::new(Sign::Plus, m_plus))
        }
        (None, Some(m_pm)) => {
            let n_pm = pm.max().expect("defined with min");
            match minus.max() {
                Some(n_minus) if n_pm < n_minus => {
                    OomSet::with_plus_minus(m_pm, OomValue::new(Sign::Minus, n_minus))
                }
                _ => OomSet::with_plus_minus(m_pm, OomValue::new(Sign::PlusMinus, n_pm)),
            }
        }
    };
    debug_assert!(out.is_canonical(), "{out:?}");
    out
}

impl From<OomValue> for OomSet {
    fn from(v: OomValue) -> OomSet {
        OomSet::Single(v)
    }
}

impl fmt::Display for OomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OomSet::Single(a) => write!(f, "{{{a}}}"),
            OomSet::Pair { low, high } => {
                write!(f, "{{{},{}}}", OomValue::plus_minus(*low), high)
            }
        }
    }
}

/// Parses `{(+,2)}` or `{(+-,3),(-,5)}`. Non-canonical lists are accepted and
/// canonicalized.
impl FromStr for OomSet {
    type Err = OomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| OomError::parse(s, "expected {...}"))?;
        let mut values = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let close = rest
                .find(')')
                .ok_or_else(|| OomError::parse(s, "unterminated element"))?;
            values.push(rest[..=close].parse::<OomValue>()?);
            rest = rest[close + 1..].trim_start();
            if let Some(after) = rest.strip_prefix(',') {
                rest = after.trim_start();
                if rest.is_empty() {
                    return Err(OomError::parse(s, "trailing comma"));
                }
            } else if !rest.is_empty() {
                return Err(OomError::parse(s, "expected ',' between elements"));
            }
        }
        OomSet::canonicalize(&values).map_err(|_| OomError::parse(s, "empty set"))
    }
}

impl TryFrom<String> for OomSet {
    type Error = OomError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<OomSet> for String {
    fn from(s: OomSet) -> String {
        s.to_string()
    }
}
