//! Values in the divisible hull of a rank-one value group (taken as ℚ), the
//! symbol ∞, and principal cuts in ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Rational helper used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = |m: &str| Error::parse(0, format!("{m}: {t:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupValue {
    Finite(Q),
    Infinity,
}

impl GroupValue {
    pub fn zero() -> Self {
        GroupValue::Finite(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        GroupValue::Finite(qi(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        GroupValue::Finite(q(n, d))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            GroupValue::Finite(x) => Some(x),
            GroupValue::Infinity => None,
        }
    }

    /// The finite value, or an error naming `what`.
    pub fn expect_finite(&self, what: &str) -> Result<Q> {
        self.finite()
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("{what} is infinite")))
    }

    /// Scaling by a positive rational; ∞ stays ∞.
    pub fn scale(&self, k: &Q) -> Self {
        match self {
            GroupValue::Finite(x) => GroupValue::Finite(x * k),
            GroupValue::Infinity => {
                assert!(k.is_positive(), "infinity scaled by a non-positive factor");
                GroupValue::Infinity
            }
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&qi(k))
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl From<Q> for GroupValue {
    fn from(x: Q) -> Self {
        GroupValue::Finite(x)
    }
}

impl Ord for GroupValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupValue::Finite(a), GroupValue::Finite(b)) => a.cmp(b),
            (GroupValue::Finite(_), GroupValue::Infinity) => Ordering::Less,
            (GroupValue::Infinity, GroupValue::Finite(_)) => Ordering::Greater,
            (GroupValue::Infinity, GroupValue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for GroupValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GroupValue {
    type Output = GroupValue;
    fn add(self, other: &GroupValue) -> GroupValue {
        match (self, other) {
            (GroupValue::Finite(a), GroupValue::Finite(b)) => GroupValue::Finite(a + b),
            _ => GroupValue::Infinity,
        }
    }
}

impl Add for GroupValue {
    type Output = GroupValue;
    fn add(self, other: GroupValue) -> GroupValue {
        &self + &other
    }
}

impl Add<&Q> for &GroupValue {
    type Output = GroupValue;
    fn add(self, other: &Q) -> GroupValue {
        match self {
            GroupValue::Finite(a) => GroupValue::Finite(a + other),
            GroupValue::Infinity => GroupValue::Infinity,
        }
    }
}

impl Sub<&Q> for &GroupValue {
    type Output = GroupValue;
    fn sub(self, other: &Q) -> GroupValue {
        match self {
            GroupValue::Finite(a) => GroupValue::Finite(a - other),
            GroupValue::Infinity => GroupValue::Infinity,
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Finite(x) => write!(f, "{}", fmt_q(x)),
            GroupValue::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for GroupValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "+inf" {
            Ok(GroupValue::Infinity)
        } else {
            parse_q(t).map(GroupValue::Finite)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutSide {
    StrictlyBelow,
    BelowOrEqual,
}

/// A cut in ℚ, named by its lower cut set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    Principal { boundary: Q, side: CutSide },
    PlusInfinity,
}

impl Cut {
    pub fn below(boundary: Q) -> Self {
        Cut::Principal { boundary, side: CutSide::StrictlyBelow }
    }

    pub fn at_most(boundary: Q) -> Self {
        Cut::Principal { boundary, side: CutSide::BelowOrEqual }
    }

    /// Lower set `{δ < γ}`, or the whole group when `γ = ∞`.
    pub fn below_value(g: &GroupValue) -> Self {
        match g {
            GroupValue::Finite(x) => Cut::below(x.clone()),
            GroupValue::Infinity => Cut::PlusInfinity,
        }
    }

    pub fn boundary(&self) -> Option<&Q> {
        match self {
            Cut::Principal { boundary, .. } => Some(boundary),
            Cut::PlusInfinity => None,
        }
    }

    /// Whether the finite value `x` lies in the lower cut set.
    pub fn contains(&self, x: &Q) -> bool {
        match self {
            Cut::Principal { boundary, side: CutSide::StrictlyBelow } => x < boundary,
            Cut::Principal { boundary, side: CutSide::BelowOrEqual } => x <= boundary,
            Cut::PlusInfinity => true,
        }
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cut::PlusInfinity, Cut::PlusInfinity) => Ordering::Equal,
            (Cut::PlusInfinity, _) => Ordering::Greater,
            (_, Cut::PlusInfinity) => Ordering::Less,
            (
                Cut::Principal { boundary: a, side: sa },
                Cut::Principal { boundary: b, side: sb },
            ) => a.cmp(b).then(sa.cmp(sb)),
        }
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cut::Principal { boundary, side: CutSide::StrictlyBelow } => {
                write!(f, "(<{})", fmt_q(boundary))
            }
            Cut::Principal { boundary, side: CutSide::BelowOrEqual } => {
                write!(f, "(<={})", fmt_q(boundary))
            }
            Cut::PlusInfinity => write!(f, "(+inf)"),
        }
    }
}

impl FromStr for Cut {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("cut must be parenthesized: {s:?}")))?;
        if inner == "+inf" {
            return Ok(Cut::PlusInfinity);
        }
        if let Some(b) = inner.strip_prefix("<=") {
            return Ok(Cut::at_most(parse_q(b)?));
        }
        if let Some(b) = inner.strip_prefix('<') {
            return Ok(Cut::below(parse_q(b)?));
        }
        Err(Error::parse(1, format!("unknown cut form: {s:?}")))
    }
}

/// The four relations between a value and a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValueCutRelation {
    /// α lies in the lower cut set.
    pub le: bool,
    /// α lies in the lower cut set and is not its last element.
    pub lt: bool,
    /// α is at least every element of the lower cut set.
    pub ge: bool,
    /// α exceeds every element of the lower cut set.
    pub gt: bool,
}

pub fn compare_value_cut(alpha: &GroupValue, cut: &Cut) -> ValueCutRelation {
    let a = match alpha {
        GroupValue::Infinity => {
            return ValueCutRelation { le: false, lt: false, ge: true, gt: true };
        }
        GroupValue::Finite(a) => a,
    };
    match cut {
        Cut::PlusInfinity => ValueCutRelation { le: true, lt: true, ge: false, gt: false },
        Cut::Principal { boundary, side: CutSide::StrictlyBelow } => {
            let inside = a < boundary;
            ValueCutRelation { le: inside, lt: inside, ge: !inside, gt: !inside }
        }
        Cut::Principal { boundary, side: CutSide::BelowOrEqual } => ValueCutRelation {
            le: a <= boundary,
            lt: a < boundary,
            ge: a >= boundary,
            gt: a > boundary,
        },
    }
}

pub fn scale_cut(n: u64, cut: &Cut) -> Result<Cut> {
    if n == 0 {
        return Err(Error::Precondition("cut scaled by zero".into()));
    }
    Ok(match cut {
        Cut::Principal { boundary, side } => {
            Cut::Principal { boundary: boundary * Q::from_integer(BigInt::from(n)), side: *side }
        }
        Cut::PlusInfinity => Cut::PlusInfinity,
    })
}

pub fn shift_cut(beta: &Q, cut: &Cut) -> Cut {
    match cut {
        Cut::Principal { boundary, side } => {
            Cut::Principal { boundary: boundary + beta, side: *side }
        }
        Cut::PlusInfinity => Cut::PlusInfinity,
    }
}

impl Neg for GroupValue {
    type Output = GroupValue;
    fn neg(self) -> GroupValue {
        match self {
            GroupValue::Finite(x) => GroupValue::Finite(-x),
            GroupValue::Infinity => panic!("negation of infinity"),
        }
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(GroupValue);
string_serde!(Cut);
