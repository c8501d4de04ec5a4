//! Truncated Hahn series over 𝔽_p with rational exponents.
//!
//! A [`Series`] is a finite sum `Σ a_q t^q` together with a precision bound
//! `P`: every term with exponent `≥ P` is unknown. Exact elements carry
//! `P = ∞`. All arithmetic propagates precision so that every stored term is
//! correct.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ordval::{fmt_q, q, qi, GroupValue, Q};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits in u64")
}

pub fn reduce_i64(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

/// An element of the residue field 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    value: u64,
    p: u64,
}

impl ResidueElem {
    pub fn new(value: i64, p: u64) -> Self {
        ResidueElem { value: reduce_i64(value, p), p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        ResidueElem { value: value % p, p }
    }

    pub fn zero(p: u64) -> Self {
        ResidueElem { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        ResidueElem { value: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| ResidueElem { value: inv_mod(self.value, self.p), p: self.p })
    }

    pub fn pow(self, e: u64) -> Self {
        ResidueElem { value: pow_mod(self.value, e, self.p), p: self.p }
    }
}

impl Add for ResidueElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.p, o.p);
        ResidueElem { value: (self.value + o.value) % self.p, p: self.p }
    }
}

impl Sub for ResidueElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        assert_eq!(self.p, o.p);
        ResidueElem { value: (self.value + self.p - o.value) % self.p, p: self.p }
    }
}

impl Mul for ResidueElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.p, o.p);
        ResidueElem { value: mul_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl Neg for ResidueElem {
    type Output = Self;
    fn neg(self) -> Self {
        ResidueElem { value: (self.p - self.value) % self.p, p: self.p }
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Which exponents a subfield admits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubfieldPredicate {
    /// ℤ
    Integers,
    /// ℤ[1/p]
    PPower { p: u64 },
    /// (1/n)ℤ
    DividesN { n: u64 },
    /// (1/n)ℤ[1/p]
    TamePPower { n: u64, p: u64 },
    /// ℚ
    Rationals,
}

fn strip_factor(mut d: BigInt, f: u64) -> BigInt {
    if f < 2 {
        return d;
    }
    let f = BigInt::from(f);
    while (&d % &f).is_zero() {
        d /= &f;
    }
    d
}

impl SubfieldPredicate {
    pub fn contains(&self, e: &Q) -> bool {
        let d = e.denom().clone();
        match self {
            SubfieldPredicate::Integers => d.is_one(),
            SubfieldPredicate::PPower { p } => strip_factor(d, *p).is_one(),
            SubfieldPredicate::DividesN { n } => (BigInt::from(*n) % d).is_zero(),
            SubfieldPredicate::TamePPower { n, p } => {
                (BigInt::from(*n) % strip_factor(d, *p)).is_zero()
            }
            SubfieldPredicate::Rationals => true,
        }
    }

    /// Short name used in JSON descriptions.
    pub fn name(&self) -> String {
        match self {
            SubfieldPredicate::Integers => "int".into(),
            SubfieldPredicate::PPower { .. } => "ppow".into(),
            SubfieldPredicate::DividesN { n } => format!("div:{n}"),
            SubfieldPredicate::TamePPower { n, .. } => format!("tame:{n}"),
            SubfieldPredicate::Rationals => "rat".into(),
        }
    }

    pub fn from_name(name: &str, p: u64) -> Result<Self> {
        let bad = || Error::parse(0, format!("unknown predicate {name:?}"));
        let n_of = |s: &str| s.parse::<u64>().ok().filter(|n| *n > 0).ok_or_else(bad);
        match name.trim() {
            "int" => Ok(SubfieldPredicate::Integers),
            "ppow" => Ok(SubfieldPredicate::PPower { p }),
            "rat" => Ok(SubfieldPredicate::Rationals),
            s => {
                if let Some(n) = s.strip_prefix("div:") {
                    Ok(SubfieldPredicate::DividesN { n: n_of(n)? })
                } else if let Some(n) = s.strip_prefix("tame:") {
                    Ok(SubfieldPredicate::TamePPower { n: n_of(n)?, p })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Outcome of [`Series::truncate_to_subfield`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    Witness(Series),
    NotRepresentable { exponent: Q },
}

fn below(e: &Q, bound: &GroupValue) -> bool {
    match bound {
        GroupValue::Finite(b) => e < b,
        GroupValue::Infinity => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    p: u64,
    terms: Vec<(Q, u64)>,
    precision: GroupValue,
}

impl Series {
    /// Builds a normalized series: coefficients reduced, duplicates merged,
    /// zeros and terms at or above `precision` dropped.
    pub fn from_terms<I>(p: u64, terms: I, precision: GroupValue) -> Self
    where
        I: IntoIterator<Item = (Q, u64)>,
    {
        let mut acc: BTreeMap<Q, u64> = BTreeMap::new();
        for (e, c) in terms {
            if !below(&e, &precision) {
                continue;
            }
            let slot = acc.entry(e).or_insert(0);
            *slot = (*slot + c % p) % p;
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Series { p, terms, precision }
    }

    fn from_sorted(p: u64, terms: Vec<(Q, u64)>, precision: GroupValue) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(e, c)| *c != 0 && below(e, &precision)));
        Series { p, terms, precision }
    }

    pub fn zero(p: u64) -> Self {
        Series { p, terms: vec![], precision: GroupValue::Infinity }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: i64) -> Self {
        Self::monomial(p, c, Q::zero())
    }

    /// `c·t^e`, exact.
    pub fn monomial(p: u64, c: i64, e: Q) -> Self {
        Self::from_terms(p, [(e, reduce_i64(c, p))], GroupValue::Infinity)
    }

    pub fn t_pow(p: u64, e: Q) -> Self {
        Self::monomial(p, 1, e)
    }

    /// The unknown element `O(t^P)`.
    pub fn big_o(p: u64, precision: Q) -> Self {
        Series { p, terms: vec![], precision: GroupValue::Finite(precision) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[(Q, u64)] {
        &self.terms
    }

    pub fn precision(&self) -> &GroupValue {
        &self.precision
    }

    pub fn is_exact(&self) -> bool {
        !self.precision.is_finite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// No known terms (exact zero or zero up to precision).
    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Q, u64)> {
        self.terms.first().map(|(e, c)| (e, *c))
    }

    pub fn coeff_at(&self, e: &Q) -> u64 {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(e))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn val(&self) -> Result<GroupValue> {
        match (self.terms.first(), &self.precision) {
            (Some((e, _)), _) => Ok(GroupValue::Finite(e.clone())),
            (None, GroupValue::Infinity) => Ok(GroupValue::Infinity),
            (None, GroupValue::Finite(pr)) => {
                Err(Error::IndeterminateValuation(fmt_q(pr)))
            }
        }
    }

    /// A lower bound for the value that is always available.
    pub fn val_lower_bound(&self) -> GroupValue {
        match self.terms.first() {
            Some((e, _)) => GroupValue::Finite(e.clone()),
            None => self.precision.clone(),
        }
    }

    pub fn check_prime(&self, other: &Series) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    /// Lowers the precision to `cap` if that is below the current one.
    pub fn with_cap(&self, cap: &GroupValue) -> Series {
        if cap >= &self.precision {
            return self.clone();
        }
        let terms = self.terms.iter().filter(|(e, _)| below(e, cap)).cloned().collect();
        Series::from_sorted(self.p, terms, cap.clone())
    }

    /// The exact series formed by the terms below `bound`.
    pub fn truncate_below(&self, bound: &GroupValue) -> Series {
        let terms = self.terms.iter().filter(|(e, _)| below(e, bound)).cloned().collect();
        Series::from_sorted(self.p, terms, GroupValue::Infinity)
    }

    /// The exact series of all known terms.
    pub fn known_part(&self) -> Series {
        Series::from_sorted(self.p, self.terms.clone(), GroupValue::Infinity)
    }

    pub fn scale(&self, c: u64) -> Series {
        let c = c % self.p;
        if c == 0 {
            return Series::zero(self.p);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), mul_mod(*a, c, self.p))).collect();
        Series::from_sorted(self.p, terms, self.precision.clone())
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: &Q) -> Series {
        let terms = self.terms.iter().map(|(x, c)| (x + e, *c)).collect();
        Series::from_sorted(self.p, terms, &self.precision + e)
    }

    /// Applies `(e, c) ↦ c'` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Q, u64) -> u64) -> Series {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(e, *c))).collect::<Vec<_>>();
        Series::from_terms(self.p, terms, self.precision.clone())
    }

    pub fn add_series(&self, other: &Series) -> Series {
        assert_eq!(self.p, other.p, "series over different primes");
        let prec = GroupValue::min(&self.precision, &other.precision);
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, _) => std::cmp::Ordering::Greater,
            };
            let (e, c) = match pick {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (a[i - 1].0.clone(), a[i - 1].1)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (b[j - 1].0.clone(), b[j - 1].1)
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0.clone(), (a[i - 1].1 + b[j - 1].1) % p)
                }
            };
            if !below(&e, &prec) {
                break;
            }
            if c != 0 {
                out.push((e, c));
            }
        }
        Series::from_sorted(p, out, prec)
    }

    pub fn neg_series(&self) -> Series {
        self.scale(self.p - 1)
    }

    pub fn sub_series(&self, other: &Series) -> Series {
        self.add_series(&other.neg_series())
    }

    /// Product with the propagated precision, additionally capped at `cap`.
    pub fn mul_capped(&self, other: &Series, cap: &GroupValue) -> Series {
        assert_eq!(self.p, other.p, "series over different primes");
        let p = self.p;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Series::zero(p);
        }
        let la = self.val_lower_bound();
        let lb = other.val_lower_bound();
        let prec = GroupValue::min(
            &GroupValue::min(&(&la + &other.precision), &(&lb + &self.precision)),
            cap,
        );
        let mut acc: BTreeMap<Q, u64> = BTreeMap::new();
        if let Some((b0, _)) = other.terms.first() {
            for (ea, ca) in &self.terms {
                if !below(&(ea + b0), &prec) {
                    break;
                }
                for (eb, cb) in &other.terms {
                    let s = ea + eb;
                    if !below(&s, &prec) {
                        break;
                    }
                    let slot = acc.entry(s).or_insert(0);
                    *slot = (*slot + mul_mod(*ca, *cb, p)) % p;
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Series::from_sorted(p, terms, prec)
    }

    pub fn mul_series(&self, other: &Series) -> Series {
        self.mul_capped(other, &GroupValue::Infinity)
    }

    /// `s ↦ s^p`: exponents and precision scale by `p`, coefficients are fixed.
    pub fn frobenius(&self) -> Series {
        let pq = qi(self.p as i64);
        let terms = self.terms.iter().map(|(e, c)| (e * &pq, *c)).collect();
        Series::from_sorted(self.p, terms, self.precision.scale(&pq))
    }

    pub fn pow(&self, k: u64) -> Series {
        self.pow_capped(k, &GroupValue::Infinity)
    }

    /// `self^k` correct below `cap` (and below the propagated precision).
    ///
    /// Multiples of `p` go through the Frobenius, which never loses precision
    /// relative to repeated multiplication.
    pub fn pow_capped(&self, k: u64, cap: &GroupValue) -> Series {
        if k == 0 {
            return Series::one(self.p);
        }
        if self.is_exact_zero() {
            return Series::zero(self.p);
        }
        if k == 1 {
            return self.with_cap(cap);
        }
        if k % self.p == 0 {
            let sub_cap = cap.scale(&q(1, self.p as i64));
            return self.pow_capped(k / self.p, &sub_cap).frobenius().with_cap(cap);
        }
        let lo = self.val_lower_bound();
        let sub_cap = match (&lo, cap) {
            (GroupValue::Finite(l), c) => c - l,
            (GroupValue::Infinity, _) => GroupValue::Infinity,
        };
        self.pow_capped(k - 1, &sub_cap).mul_capped(self, cap)
    }

    /// An inverse with `v(a·inv − 1) ≥ target − v(a)`; the result has precision
    /// `target − 2·v(a)`. Exact monomials invert exactly.
    pub fn invert(&self, target: &GroupValue) -> Result<Series> {
        let (v, a0) = match self.terms.first() {
            Some((e, c)) => (e.clone(), *c),
            None => return Err(Error::Precondition("inverse of a series with no terms".into())),
        };
        let p = self.p;
        let a0inv = inv_mod(a0, p);
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Series::from_sorted(p, vec![(-v, a0inv)], GroupValue::Infinity));
        }
        if &self.precision < target {
            return Err(Error::InsufficientPrecision(format!(
                "inverse to {target} needs input precision {target}, have {}",
                self.precision
            )));
        }
        let rel = target - &v;
        let u = self.shift(&-v.clone()).scale(a0inv).sub_series(&Series::one(p));
        let minus_u = u.neg_series();
        let mut sum = Series::one(p);
        let mut term = Series::one(p);
        loop {
            term = term.mul_capped(&minus_u, &rel);
            if term.val_lower_bound() >= rel {
                break;
            }
            sum = sum.add_series(&term);
        }
        Ok(sum.with_cap(&rel).shift(&-v).scale(a0inv))
    }

    pub fn residue(&self) -> Result<ResidueElem> {
        if let Some((e, _)) = self.terms.first() {
            if e.is_negative() {
                return Err(Error::NegativeValuation(self.to_string()));
            }
        }
        if self.precision <= GroupValue::zero() {
            return Err(Error::InsufficientPrecision(format!(
                "residue needs precision above 0, have {}",
                self.precision
            )));
        }
        Ok(ResidueElem::from_u64(self.coeff_at(&Q::zero()), self.p))
    }

    pub fn truncate_to_subfield(
        &self,
        pred: &SubfieldPredicate,
        alpha: &GroupValue,
    ) -> Result<Truncation> {
        if alpha > &self.precision {
            return Err(Error::InsufficientPrecision(format!(
                "truncation at {alpha} beyond precision {}",
                self.precision
            )));
        }
        let c = self.truncate_below(alpha);
        match c.terms.iter().find(|(e, _)| !pred.contains(e)) {
            Some((e, _)) => Ok(Truncation::NotRepresentable { exponent: e.clone() }),
            None => Ok(Truncation::Witness(c)),
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.add_series(o)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.sub_series(o)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.mul_series(o)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.neg_series()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    c.to_string()
                } else if *c == 1 {
                    format!("t^({})", fmt_q(e))
                } else {
                    format!("{c}*t^({})", fmt_q(e))
                }
            })
            .collect();
        if let GroupValue::Finite(pr) = &self.precision {
            parts.push(format!("O(t^({}))", fmt_q(pr)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
