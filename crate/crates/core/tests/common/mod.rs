//! Random inputs shared by the property suites and the acceptance run.
#![allow(dead_code)]

pub mod laws;
pub mod oracle;

use hahnval::envelope::AffineItem;
use hahnval::ordval::{q, qi, Cut, GroupValue, Q};
use hahnval::{Series, ValPoly};
use rand::seq::SliceRandom;
use num_traits::Signed;
use rand::Rng;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rational<R: Rng>(rng: &mut R, num: i64, dens: &[i64]) -> Q {
    q(rng.gen_range(-num..=num), *dens.choose(rng).unwrap())
}

/// A series with up to `max_terms` terms, exponents in `[−3, 3]` with small
/// denominators, and optionally a finite precision above every term.
pub fn series<R: Rng>(rng: &mut R, p: u64, max_terms: usize, exact: bool) -> Series {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Q, u64)> = (0..n)
        .map(|_| (rational(rng, 12, &[1, 2, 3, 4, 6]), rng.gen_range(1..p)))
        .collect();
    let precision = if exact || rng.gen_bool(0.5) {
        GroupValue::Infinity
    } else {
        let top = terms.iter().map(|(e, _)| e.clone()).max().unwrap_or(qi(0));
        GroupValue::Finite(top + q(rng.gen_range(1..=6), 2))
    };
    Series::from_terms(p, terms, precision)
}

/// A nonzero series with exact leading term.
pub fn nonzero_series<R: Rng>(rng: &mut R, p: u64, max_terms: usize, exact: bool) -> Series {
    loop {
        let s = series(rng, p, max_terms, exact);
        if !s.has_no_terms() {
            return s;
        }
    }
}

fn coefficient<R: Rng>(rng: &mut R, p: u64) -> Series {
    let pi = p as i64;
    let exps = [qi(-2), qi(-1), q(-1, pi), qi(0), qi(0), qi(0), q(1, pi), q(1, pi * pi), qi(1), qi(2)];
    let e = exps.choose(rng).unwrap().clone();
    let c = rng.gen_range(1..p) as i64;
    let mut s = Series::monomial(p, c, e);
    if rng.gen_bool(0.2) {
        let e2 = exps.choose(rng).unwrap().clone();
        s = s.add_series(&Series::monomial(p, rng.gen_range(1..p) as i64, e2));
    }
    s
}

/// A random polynomial over `ℤ[1/p]` exponents of degree exactly `deg`, with
/// about half of its coefficients zero.
pub fn poly_of_degree<R: Rng>(rng: &mut R, p: u64, deg: usize) -> ValPoly {
    let mut cs: Vec<Series> = (0..=deg)
        .map(|_| if rng.gen_bool(0.5) { coefficient(rng, p) } else { Series::zero(p) })
        .collect();
    while cs[deg].is_exact_zero() {
        cs[deg] = coefficient(rng, p);
    }
    ValPoly::new(p, cs)
}

pub fn poly<R: Rng>(rng: &mut R, p: u64, max_deg: usize) -> ValPoly {
    let d = rng.gen_range(1..=max_deg);
    poly_of_degree(rng, p, d)
}

/// A polynomial with arbitrary exact series coefficients.
pub fn dense_poly<R: Rng>(rng: &mut R, p: u64, max_deg: usize, max_terms: usize) -> ValPoly {
    let d = rng.gen_range(0..=max_deg);
    ValPoly::new(p, (0..=d).map(|_| series(rng, p, max_terms, true)).collect())
}

pub fn cut<R: Rng>(rng: &mut R) -> Cut {
    match rng.gen_range(0..3) {
        0 => Cut::PlusInfinity,
        1 => Cut::below(rational(rng, 10, &[1, 2, 3])),
        _ => Cut::at_most(rational(rng, 10, &[1, 2, 3])),
    }
}

/// A family with distinct slopes, some infinite intercepts.
pub fn family<R: Rng>(rng: &mut R) -> Vec<AffineItem> {
    let n = rng.gen_range(1..=6);
    let mut slopes: Vec<i64> = (1..=12).collect();
    slopes.shuffle(rng);
    (0..n)
        .map(|k| {
            let intercept = if rng.gen_bool(0.1) {
                GroupValue::Infinity
            } else {
                GroupValue::Finite(rational(rng, 20, &[1, 2, 3, 4]))
            };
            AffineItem::new(k as i64 + 1, intercept, slopes[k])
        })
        .collect()
}

/// Exponents in `(1/n)·ℤ[1/p]` between −2 and 2.
pub fn tame_exponent<R: Rng>(rng: &mut R, p: u64, n: u64) -> Q {
    let den = n as i64 * (p as i64).pow(rng.gen_range(0..=2));
    q(rng.gen_range(-2 * den..=2 * den), den)
}

pub fn tame_series<R: Rng>(rng: &mut R, p: u64, n: u64, max_terms: usize) -> Series {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Q, u64)> = (0..k).map(|_| (tame_exponent(rng, p, n), rng.gen_range(1..p))).collect();
    Series::from_terms(p, terms, GroupValue::Infinity)
}

/// A value-zero element `r + (terms of positive value)`.
pub fn tame_unit<R: Rng>(rng: &mut R, p: u64, n: u64) -> Series {
    let mut terms = vec![(qi(0), rng.gen_range(1..p))];
    for _ in 0..rng.gen_range(0..3) {
        let e = tame_exponent(rng, p, n).abs();
        if e > qi(0) {
            terms.push((e, rng.gen_range(1..p)));
        }
    }
    Series::from_terms(p, terms, GroupValue::Infinity)
}

pub const TAME_CASES: [(u64, u64); 5] = [(3, 2), (5, 4), (5, 2), (7, 3), (7, 6)];
