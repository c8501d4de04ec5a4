//! Fixed, reproducible approximation types used by tests, the CLI corpus and
//! the demo.

use crate::apprtype::{ApproxType, TypeKind};
use crate::hahn::{Series, SubfieldPredicate};
use crate::ordval::{q, qi, GroupValue, Q};
use crate::valpoly::artin_schreier;

/// Terms kept in the Artin–Schreier root.
pub const THETA_TERMS: u32 = 8;

fn pp(p: u64, k: u32) -> i64 {
    (p as i64).pow(k)
}

/// `θ = Σ_{i≥1} t^(−1/p^i)`, the root of `X^p − X − t^(−1)`, truncated to
/// eight terms with precision `−1/p^9`. Approximants `c_n = Σ_{i<n} t^(−1/p^i)`
/// have gaps `−1/p^n`.
pub fn theta(p: u64) -> ApproxType {
    let terms = (1..=THETA_TERMS).map(|i| (q(-1, pp(p, i)), 1u64));
    let target = Series::from_terms(p, terms, GroupValue::ratio(-1, pp(p, THETA_TERMS + 1)));
    ApproxType::truncations(target, SubfieldPredicate::PPower { p })
        .expect("truncations of an exact prefix")
        .with_limit(GroupValue::zero())
        .with_kind(TypeKind::Algebraic(artin_schreier(p)))
}

/// Indices `2..=17` that are not perfect squares.
pub fn lacunary_indices() -> Vec<u32> {
    (2..=17u32).filter(|k| !(1..=*k).any(|r| r * r == *k)).collect()
}

/// `base + Σ_{k∈S} t^(limit − 1/p^k)` over `ℤ[1/p]` exponents, with precision
/// `limit − 1/p^18`. Transcendental by assertion: the support has no periodic
/// pattern an algebraic relation of small degree would force.
pub fn lacunary(p: u64, base: Series, limit: Q) -> ApproxType {
    let mut terms: Vec<(Q, u64)> = base.terms().to_vec();
    for k in lacunary_indices() {
        terms.push((&limit - q(1, pp(p, k)), 1));
    }
    let precision = GroupValue::Finite(&limit - q(1, pp(p, 18)));
    let target = Series::from_terms(p, terms, precision);
    ApproxType::truncations(target, SubfieldPredicate::PPower { p })
        .expect("truncations of an exact prefix")
        .with_limit(GroupValue::Finite(limit))
        .with_kind(TypeKind::Transcendental)
}

/// `x = 1 + Σ_{k∈S} t^(1/p − 1/p^k)`, a value-zero transcendental type with
/// distance `(<1/p)`.
pub fn lacunary_unit(p: u64) -> ApproxType {
    lacunary(p, Series::one(p), q(1, p as i64))
}

/// `x = t^(−1) + Σ_{k∈S} t^(−1/p^k)` with distance `(<0)`.
pub fn lacunary_polar(p: u64) -> ApproxType {
    lacunary(p, Series::t_pow(p, qi(-1)), qi(0))
}

/// `x = Σ_{k∈S} t^(5 − 1/p^k)` with distance `(<5)`.
pub fn lacunary_five(p: u64) -> ApproxType {
    lacunary(p, Series::zero(p), qi(5))
}

/// The transcendental types used for randomized checks.
pub fn transcendental_family(p: u64) -> Vec<(&'static str, ApproxType)> {
    vec![
        ("lacunary-unit", lacunary_unit(p)),
        ("lacunary-polar", lacunary_polar(p)),
        ("lacunary-five", lacunary_five(p)),
    ]
}

/// `t^(1/2)` over integer exponents: the maximum of `v(x − K)` is attained.
pub fn half_power(p: u64) -> ApproxType {
    ApproxType::truncations(Series::t_pow(p, q(1, 2)), SubfieldPredicate::Integers)
        .expect("single term")
}

/// `Σ_{i=1}^{n} t^i + O(t^(n+1))` over integer exponents.
pub fn geometric(p: u64, n: i64) -> ApproxType {
    let target = Series::from_terms(p, (1..=n).map(|i| (qi(i), 1)), GroupValue::int(n + 1));
    ApproxType::truncations(target, SubfieldPredicate::Integers).expect("exact prefix")
}

/// `x = 1 + s·Σ_{k∈S} t^(−1/3^k)` with `s = t^(1/2)`, over exponents
/// `(1/2)·ℤ[1/3]`; distance `(<1/2)`. Its conjugate under `s ↦ −s` is `2 − x`.
pub fn trace_scenario() -> ApproxType {
    let p = 3;
    let base = Series::one(p);
    let mut terms: Vec<(Q, u64)> = base.terms().to_vec();
    for k in lacunary_indices() {
        terms.push((q(1, 2) - q(1, pp(p, k)), 1));
    }
    let target = Series::from_terms(p, terms, GroupValue::Finite(q(1, 2) - q(1, pp(p, 18))));
    ApproxType::truncations(target, SubfieldPredicate::TamePPower { n: 2, p })
        .expect("exact prefix")
        .with_limit(GroupValue::ratio(1, 2))
        .with_kind(TypeKind::Transcendental)
}

/// Named types for the command line and the demo.
pub fn by_name(name: &str, p: u64) -> Option<ApproxType> {
    Some(match name {
        "theta" => theta(p),
        "lacunary-unit" => lacunary_unit(p),
        "lacunary-polar" => lacunary_polar(p),
        "lacunary-five" => lacunary_five(p),
        "half-power" => half_power(p),
        "geometric" => geometric(p, 6),
        "trace" if p == 3 => trace_scenario(),
        _ => return None,
    })
}

pub const NAMES: &[&str] =
    &["theta", "lacunary-unit", "lacunary-polar", "lacunary-five", "half-power", "geometric", "trace"];
