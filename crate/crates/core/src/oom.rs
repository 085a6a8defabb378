//! Scalar order-of-magnitude values.
//!
//! A value `(σ, n)` stands for a quantity of size `σ·εⁿ` for an unknown
//! infinitesimal `ε`. Signs are `+`, `-` or `±` (the indeterminate result of
//! adding opposite quantities of equal order). There is a single zero element,
//! `(±, ∞)`.

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::OomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    PlusMinus,
}

impl Sign {
    /// Sign multiplication (`⊗`).
    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::PlusMinus, _) | (_, Sign::PlusMinus) => Sign::PlusMinus,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    /// Sign addition (`⊕`) for terms of equal order.
    pub fn add(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Plus, Sign::Plus) => Sign::Plus,
            (Sign::Minus, Sign::Minus) => Sign::Minus,
            _ => Sign::PlusMinus,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::PlusMinus => Sign::PlusMinus,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::PlusMinus => "+-",
        }
    }
}

/// Order of magnitude: an integer exponent or infinity.
///
/// The derived ordering puts every finite order below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Order::Infinite
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// An order-of-magnitude value `(sign, order)`.
///
/// Any value of infinite order is the zero element and carries the sign `±`;
/// the constructors normalize `(+, ∞)` and `(-, ∞)` to it.
///
/// `PartialOrd`/`Ord` are a storage order for sets and maps. The dominance
/// relation is [`OomValue::dominates`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OomValue {
    sign: Sign,
    order: Order,
}

impl OomValue {
    pub const ZERO: OomValue = OomValue {
        sign: Sign::PlusMinus,
        order: Order::Infinite,
    };
    pub const ONE: OomValue = OomValue {
        sign: Sign::Plus,
        order: Order::Finite(0),
    };
    pub const MINUS_ONE: OomValue = OomValue {
        sign: Sign::Minus,
        order: Order::Finite(0),
    };

    pub const fn new(sign: Sign, order: Order) -> OomValue {
        match order {
            Order::Infinite => OomValue::ZERO,
            Order::Finite(_) => OomValue { sign, order },
        }
    }

    pub const fn plus(order: i64) -> OomValue {
        OomValue::new(Sign::Plus, Order::Finite(order))
    }

    pub const fn minus(order: i64) -> OomValue {
        OomValue::new(Sign::Minus, Order::Finite(order))
    }

    pub const fn plus_minus(order: i64) -> OomValue {
        OomValue::new(Sign::PlusMinus, Order::Finite(order))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order.is_infinite()
    }

    /// Member of `𝒪±`: indeterminate sign, including zero.
    pub fn is_plus_minus(&self) -> bool {
        self.sign == Sign::PlusMinus
    }

    /// Member of `𝒪+` proper: a positive value of finite order.
    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    /// Valid as a probability or scaling weight: positive or zero.
    pub fn is_nonnegative(&self) -> bool {
        self.is_positive() || self.is_zero()
    }

    pub fn mul(self, other: OomValue) -> OomValue {
        OomValue::new(self.sign.mul(other.sign), self.order + other.order)
    }

    pub fn add(self, other: OomValue) -> OomValue {
        match self.order.cmp(&other.order) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => OomValue::new(self.sign.add(other.sign), self.order),
        }
    }

    pub fn negate(self) -> OomValue {
        OomValue::new(self.sign.negate(), self.order)
    }

    /// `(σ, m)⁻¹ = (σ, -m)`, defined for `σ ∈ {+, -}`.
    pub fn inverse(self) -> Result<OomValue, OomError> {
        match (self.sign, self.order) {
            (Sign::PlusMinus, _) | (_, Order::Infinite) => Err(OomError::NoInverse(self)),
            (sign, Order::Finite(m)) => Ok(OomValue::new(sign, Order::Finite(-m))),
        }
    }

    pub fn div(self, divisor: OomValue) -> Result<OomValue, OomError> {
        Ok(self.mul(divisor.inverse()?))
    }

    /// The dominance relation `self ≿ other`.
    ///
    /// Two `±` values are never related, not even a value with itself.
    pub fn dominates(&self, other: &OomValue) -> bool {
        let (m, n) = (self.order, other.order);
        match (self.sign, other.sign) {
            (Sign::Plus, Sign::Plus) => m <= n,
            (Sign::Plus, Sign::PlusMinus) => m <= n,
            (Sign::Plus, Sign::Minus) => true,
            (Sign::PlusMinus, Sign::Minus) => m >= n,
            (Sign::Minus, Sign::Minus) => m >= n,
            _ => false,
        }
    }

    /// `self ≻ other`: dominates and is not dominated back.
    pub fn strictly_dominates(&self, other: &OomValue) -> bool {
        self.dominates(other) && !other.dominates(self)
    }
}

impl Mul for OomValue {
    type Output = OomValue;

    fn mul(self, rhs: OomValue) -> OomValue {
        OomValue::mul(self, rhs)
    }
}

impl Add for OomValue {
    type Output = OomValue;

    fn add(self, rhs: OomValue) -> OomValue {
        OomValue::add(self, rhs)
    }
}

impl Neg for OomValue {
    type Output = OomValue;

    fn neg(self) -> OomValue {
        self.negate()
    }
}

impl std::iter::Sum for OomValue {
    fn sum<I: Iterator<Item = OomValue>>(iter: I) -> OomValue {
        iter.fold(OomValue::ZERO, OomValue::add)
    }
}

impl std::iter::Product for OomValue {
    fn product<I: Iterator<Item = OomValue>>(iter: I) -> OomValue {
        iter.fold(OomValue::ONE, OomValue::mul)
    }
}

/// The undominated elements of `values`, deduplicated, in storage order.
pub fn maximal_set(values: &[OomValue]) -> Vec<OomValue> {
    let mut out: Vec<OomValue> = values
        .iter()
        .filter(|a| !values.iter().any(|b| b.strictly_dominates(a)))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for OomValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.sign.symbol(), self.order)
    }
}

impl FromStr for OomValue {
    type Err = OomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| OomError::parse(s, "expected (sign,order)"))?;
        let (sign, order) = inner
            .split_once(',')
            .ok_or_else(|| OomError::parse(s, "missing comma"))?;
        let sign = match sign.trim() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            "+-" | "±" => Sign::PlusMinus,
            other => return Err(OomError::parse(s, format!("unknown sign {other:?}"))),
        };
        let order = match order.trim() {
            "inf" | "∞" => Order::Infinite,
            n => Order::Finite(
                n.parse()
                    .map_err(|_| OomError::parse(s, format!("bad order {n:?}")))?,
            ),
        };
        Ok(OomValue::new(sign, order))
    }
}

impl TryFrom<String> for OomValue {
    type Error = OomError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<OomValue> for String {
    fn from(v: OomValue) -> String {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> OomValue {
        s.parse().unwrap()
    }

    /// Every value with finite order in `lo..=hi`, plus zero.
    pub(crate) fn window(lo: i64, hi: i64) -> Vec<OomValue> {
        let mut out = vec![OomValue::ZERO];
        for n in lo..=hi {
            for sign in [Sign::Plus, Sign::Minus, Sign::PlusMinus] {
                out.push(OomValue::new(sign, Order::Finite(n)));
            }
        }
        out
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(v("(+,2)") * v("(+,3)"), v("(+,5)"));
        assert_eq!(v("(-,1)") * v("(-,2)"), v("(+,3)"));
        assert_eq!(v("(+-,4)") * OomValue::ZERO, OomValue::ZERO);
        assert_eq!(v("(-,4)") * OomValue::ONE, v("(-,4)"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(v("(+,3)").inverse().unwrap(), v("(+,-3)"));
        assert_eq!(v("(-,-2)").inverse().unwrap(), v("(-,2)"));
        assert!(v("(+-,1)").inverse().is_err());
        assert!(OomValue::ZERO.inverse().is_err());
    }

    #[test]
    fn addition_examples() {
        assert_eq!(v("(+,2)") + v("(-,5)"), v("(+,2)"));
        assert_eq!(v("(+,2)") + v("(-,2)"), v("(+-,2)"));
        assert_eq!(v("(-,0)") + OomValue::ZERO, v("(-,0)"));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(-v("(+,3)"), v("(-,3)"));
        assert_eq!(-v("(+-,1)"), v("(+-,1)"));
        assert_eq!(-OomValue::ZERO, OomValue::ZERO);
        for a in window(-3, 3) {
            let s = a + (-a);
            assert_eq!(s.sign(), Sign::PlusMinus);
            assert_eq!(s.order(), a.order());
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(v("(+,1)").dominates(&v("(+,2)")));
        assert!(v("(+,5)").dominates(&v("(-,0)")));
        assert!(!v("(+-,1)").dominates(&v("(+-,2)")));
        assert!(!v("(+-,1)").dominates(&v("(+-,1)")));
        assert!(OomValue::ZERO.dominates(&v("(-,7)")));
        assert!(v("(+,7)").dominates(&OomValue::ZERO));
        assert!(!OomValue::ZERO.dominates(&OomValue::ZERO));
    }

    #[test]
    fn maximal_set_examples() {
        // (+,1) beats (+,3) by order and (-,0) by sign
        assert_eq!(
            maximal_set(&[v("(+,1)"), v("(+,3)"), v("(-,0)")]),
            vec![v("(+,1)")]
        );
        assert_eq!(
            maximal_set(&[v("(+-,1)"), v("(+-,4)")]),
            vec![v("(+-,1)"), v("(+-,4)")]
        );
        assert_eq!(maximal_set(&[v("(-,2)")]), vec![v("(-,2)")]);
    }

    #[test]
    fn infinite_order_normalizes_to_zero() {
        assert_eq!(v("(+,inf)"), OomValue::ZERO);
        assert_eq!(v("(-,inf)"), OomValue::ZERO);
        assert_eq!(OomValue::ZERO.to_string(), "(+-,inf)");
        assert_eq!(v("(-,-1)").to_string(), "(-,-1)");
        assert_eq!(v("(+-,2)").to_string(), "(+-,2)");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "(+,)", "(*,1)", "+,1", "(+,x)", "(+ 1)"] {
            assert!(bad.parse::<OomValue>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn serde_uses_text_form() {
        let json = serde_json::to_string(&v("(+-,3)")).unwrap();
        assert_eq!(json, "\"(+-,3)\"");
        let back: OomValue = serde_json::from_str("\"(+,inf)\"").unwrap();
        assert_eq!(back, OomValue::ZERO);
    }
}
