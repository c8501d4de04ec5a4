//! Polynomials with [`Series`] coefficients.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hahn::Series;
use crate::ordval::{qi, GroupValue, Q};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `C(n, k)` reduced mod p, computed from the exact integer.
pub fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    (binomial(n, k) % BigUint::from(p)).to_u64().expect("small residue")
}

/// The p-adic valuation of `C(p^t·r, p^t)`.
pub fn binom_val(p: u64, t: u32, r: u64) -> Result<GroupValue> {
    if r <= 1 || r.gcd(&p) != 1 {
        return Err(Error::Precondition(format!("r = {r} must exceed 1 and be prime to {p}")));
    }
    let pt = p.checked_pow(t).ok_or_else(|| Error::Precondition("p^t overflows".into()))?;
    let n = pt.checked_mul(r).ok_or_else(|| Error::Precondition("p^t·r overflows".into()))?;
    let mut c = binomial(n, pt);
    let pb = BigUint::from(p);
    let mut v = 0i64;
    while (&c % &pb).is_zero() {
        c /= &pb;
        v += 1;
    }
    Ok(GroupValue::int(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValPoly {
    p: u64,
    coeffs: Vec<Series>,
}

impl ValPoly {
    /// Drops trailing exactly-zero coefficients.
    pub fn new(p: u64, mut coeffs: Vec<Series>) -> Self {
        assert!(coeffs.iter().all(|c| c.p() == p), "coefficients over a different prime");
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        ValPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ValPoly { p, coeffs: vec![] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![Series::zero(p), Series::one(p)])
    }

    pub fn constant(c: Series) -> Self {
        let p = c.p();
        Self::new(p, vec![c])
    }

    /// `c·X^k`
    pub fn monomial(c: Series, k: usize) -> Self {
        let p = c.p();
        let mut coeffs = vec![Series::zero(p); k];
        coeffs.push(c);
        Self::new(p, coeffs)
    }

    /// `X − c`
    pub fn linear(c: &Series) -> Self {
        let p = c.p();
        Self::new(p, vec![c.neg_series(), Series::one(p)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Series {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Series::zero(self.p))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Series::is_exact)
    }

    pub fn add(&self, o: &ValPoly) -> ValPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add_series(&o.coeff(k))).collect();
        ValPoly::new(self.p, coeffs)
    }

    pub fn neg(&self) -> ValPoly {
        ValPoly::new(self.p, self.coeffs.iter().map(Series::neg_series).collect())
    }

    pub fn sub(&self, o: &ValPoly) -> ValPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Series) -> ValPoly {
        ValPoly::new(self.p, self.coeffs.iter().map(|a| a.mul_series(c)).collect())
    }

    pub fn mul(&self, o: &ValPoly) -> ValPoly {
        if self.is_zero() || o.is_zero() {
            return ValPoly::zero(self.p);
        }
        let mut coeffs = vec![Series::zero(self.p); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_series(&a.mul_series(b));
            }
        }
        ValPoly::new(self.p, coeffs)
    }

    pub fn pow(&self, k: u32) -> ValPoly {
        let mut r = ValPoly::constant(Series::one(self.p));
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `self(inner(X))`
    pub fn compose(&self, inner: &ValPoly) -> ValPoly {
        let mut r = ValPoly::zero(self.p);
        for c in self.coeffs.iter().rev() {
            r = r.mul(inner).add(&ValPoly::constant(c.clone()));
        }
        r
    }

    /// `f_i(X) = Σ_{j≥i} C(j,i)·c_j·X^{j−i}`.
    pub fn formal_derivative(&self, i: usize) -> ValPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(i)
            .map(|(j, c)| c.scale(binom_mod(j as u64, i as u64, self.p)))
            .collect();
        ValPoly::new(self.p, coeffs)
    }

    /// `f_0, …, f_n`.
    pub fn derivatives(&self) -> Vec<ValPoly> {
        (0..self.coeffs.len()).map(|i| self.formal_derivative(i)).collect()
    }

    pub fn eval(&self, x: &Series) -> Series {
        self.eval_capped(x, &GroupValue::Infinity)
    }

    /// `f(x)` correct below `cap`.
    pub fn eval_capped(&self, x: &Series, cap: &GroupValue) -> Series {
        let needed: Vec<Option<GroupValue>> = self
            .coeffs
            .iter()
            .map(|a| (!a.is_exact_zero()).then(|| sub_lower(cap, a)))
            .collect();
        let table = power_table(x, &needed);
        let mut acc = Series::zero(self.p).with_cap(cap);
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            acc = acc.add_series(&a.mul_capped(&table[j], cap));
        }
        acc
    }

    /// Exact long division; the divisor's leading coefficient must be an exact
    /// monomial.
    pub fn div_rem(&self, f: &ValPoly) -> Result<(ValPoly, ValPoly)> {
        let n = f.degree().ok_or_else(|| Error::Precondition("division by zero".into()))?;
        let lc = &f.coeffs[n];
        if !(lc.is_exact() && lc.terms().len() == 1) {
            return Err(Error::Precondition(
                "divisor must have an exact monomial leading coefficient".into(),
            ));
        }
        let lc_inv = lc.invert(&GroupValue::Infinity)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Series::zero(self.p); self.coeffs.len().saturating_sub(n)];
        for k in (n..self.coeffs.len()).rev() {
            let c = rem[k].mul_series(&lc_inv);
            if c.is_exact_zero() {
                continue;
            }
            for (j, fj) in f.coeffs.iter().enumerate() {
                rem[k - n + j] = rem[k - n + j].sub_series(&c.mul_series(fj));
            }
            quot[k - n] = c;
        }
        rem.truncate(n);
        Ok((ValPoly::new(self.p, quot), ValPoly::new(self.p, rem)))
    }

    /// Digits `c_0, …, c_k` with `self = Σ c_i f^i` and `deg c_i < deg f`.
    pub fn f_adic_expand(&self, f: &ValPoly) -> Result<Vec<ValPoly>> {
        match f.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::Precondition("f-adic expansion needs deg f ≥ 1".into())),
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(f)?;
            digits.push(r);
            rest = q;
        }
        if digits.is_empty() {
            digits.push(ValPoly::zero(self.p));
        }
        Ok(digits)
    }

    pub fn from_f_adic(digits: &[ValPoly], f: &ValPoly) -> ValPoly {
        let mut r = ValPoly::zero(f.p);
        for d in digits.iter().rev() {
            r = r.mul(f).add(d);
        }
        r
    }

    /// `f_i(c)` for every `i`, each correct below `caps[i]`.
    pub fn derivative_values(&self, c: &Series, caps: &[GroupValue]) -> Vec<Series> {
        let derivs = self.derivatives();
        let mut needed: Vec<Option<GroupValue>> = vec![None; self.coeffs.len()];
        for (i, d) in derivs.iter().enumerate() {
            for (k, a) in d.coeffs.iter().enumerate() {
                if a.is_exact_zero() {
                    continue;
                }
                let want = sub_lower(&caps[i], a);
                let slot = &mut needed[k];
                *slot = Some(match slot.take() {
                    Some(old) => GroupValue::max(&old, &want),
                    None => want,
                });
            }
        }
        let table = power_table(c, &needed);
        derivs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut acc = Series::zero(self.p).with_cap(&caps[i]);
                for (k, a) in d.coeffs.iter().enumerate() {
                    if !a.is_exact_zero() {
                        acc = acc.add_series(&a.mul_capped(&table[k], &caps[i]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// `cap − (lower bound of v(a))`, treating an unknown bound as 0 offset.
fn sub_lower(cap: &GroupValue, a: &Series) -> GroupValue {
    match (cap, a.val_lower_bound()) {
        (GroupValue::Infinity, _) => GroupValue::Infinity,
        (c, GroupValue::Finite(l)) => c - &l,
        (_, GroupValue::Infinity) => GroupValue::Infinity,
    }
}

/// `x^0, …, x^n` where `x^j` is correct below `needed[j]` (if requested).
pub fn power_table(x: &Series, needed: &[Option<GroupValue>]) -> Vec<Series> {
    let n = needed.len();
    let p = x.p();
    if n == 0 {
        return vec![];
    }
    let lo = x.val_lower_bound();
    // T_j = max_{k ≥ j} (needed_k − (k − j)·v(x)) so that later powers can be
    // built from earlier ones without loss.
    let mut caps: Vec<Option<GroupValue>> = vec![None; n];
    let mut run: Option<GroupValue> = None;
    for j in (0..n).rev() {
        run = run.map(|r| match &lo {
            GroupValue::Finite(l) => &r - l,
            GroupValue::Infinity => GroupValue::Infinity,
        });
        if let Some(w) = &needed[j] {
            run = Some(match run {
                Some(r) => GroupValue::max(&r, w),
                None => w.clone(),
            });
        }
        caps[j] = run.clone();
    }
    let mut table: Vec<Series> = Vec::with_capacity(n);
    table.push(Series::one(p));
    for j in 1..n {
        let cap = caps[j].clone().unwrap_or(GroupValue::Infinity);
        if caps[j].is_none() {
            table.push(Series::zero(p));
            continue;
        }
        // The Frobenius shortcut is taken only when it is as precise as
        // multiplying by x would be.
        let by_mul = GroupValue::min(&cap, &(table[j - 1].precision() + &lo));
        let frob = (j as u64 % p == 0)
            .then(|| table[j / p as usize].frobenius())
            .filter(|f| f.precision() >= &by_mul);
        let next = match frob {
            Some(f) => f.with_cap(&cap),
            None => table[j - 1].mul_capped(x, &cap),
        };
        table.push(next);
    }
    table
}

/// Result of comparing `f(x)` with its Taylor expansion about `c`.
#[derive(Clone, Debug)]
pub struct TaylorCheck {
    pub holds: bool,
    pub lhs: Series,
    pub rhs: Series,
}

pub fn taylor_check(f: &ValPoly, c: &Series, x: &Series) -> TaylorCheck {
    let lhs = f.eval(x);
    let e = x.sub_series(c);
    let mut rhs = Series::zero(f.p());
    for (i, d) in f.derivatives().iter().enumerate() {
        rhs = rhs.add_series(&d.eval(c).mul_series(&e.pow(i as u64)));
    }
    let diff = lhs.sub_series(&rhs);
    TaylorCheck { holds: diff.has_no_terms(), lhs, rhs }
}

impl fmt::Display for ValPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            let xp = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            let plain_int = c.is_exact()
                && c.terms().len() == 1
                && c.terms()[0].0 == Q::zero();
            let part = if plain_int {
                let v = c.terms()[0].1;
                match (v, k) {
                    (1, k) if k > 0 => xp,
                    (v, 0) => v.to_string(),
                    (v, _) => format!("{v}*{xp}"),
                }
            } else if k == 0 {
                format!("({c})")
            } else {
                format!("({c})*{xp}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `X^p − X − t^{−1}`, the Artin–Schreier polynomial used by the curated examples.
pub fn artin_schreier(p: u64) -> ValPoly {
    let mut coeffs = vec![Series::zero(p); p as usize + 1];
    coeffs[0] = Series::monomial(p, -1, qi(-1));
    coeffs[1] = Series::constant(p, -1);
    coeffs[p as usize] = Series::one(p);
    ValPoly::new(p, coeffs)
}
