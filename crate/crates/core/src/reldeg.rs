//! Relative approximation degree `h_K(x:f)`, the constant `β_K(x:f)`, and the
//! constructions built on them.

use std::sync::Arc;

use crate::apprtype::{
    taylor_family, ApproxType, FixedOutcome, PolyAnalysis, Settings, Stabilized, TypeKind,
    ValueBound,
};
use crate::envelope::{eventual_order, AffineFamily, AffineItem};
use crate::error::{Error, Result};
use crate::hahn::{pow_mod, ResidueElem, Series};
use crate::ordval::{fmt_q, qi, scale_cut, shift_cut, Cut, GroupValue, Q};
use crate::valpoly::{binom_mod, ValPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelDegree {
    pub h: u64,
    pub beta: Q,
    /// `β_i` for `i = 1..=deg f`, in order.
    pub taylor_intercepts: Vec<GroupValue>,
    /// First approximant on which the law was verified.
    pub tail_start: usize,
    /// Number of approximants on which the law was verified.
    pub verified_depth: usize,
}

impl RelDegree {
    /// `β + h·dist(x, K)`.
    pub fn image_distance(&self, dist: &Cut) -> Result<Cut> {
        Ok(shift_cut(&self.beta, &scale_cut(self.h, dist)?))
    }
}

fn verify_law(an: &PolyAnalysis<'_>, n: usize, h: u64, beta: &Q) -> Result<()> {
    let predicted = GroupValue::Finite(beta + an.approx_type().gap(n) * qi(h as i64));
    match an.increment_value(0, n)? {
        ValueBound::Exact(v) if v == predicted => Ok(()),
        ValueBound::Exact(v) => Err(Error::Inconsistency(format!(
            "v(f(x) − f(c_{n})) = {v}, envelope predicts {predicted}"
        ))),
        ValueBound::AtLeast(b) if b > predicted => Err(Error::Inconsistency(format!(
            "v(f(x) − f(c_{n})) ≥ {b}, envelope predicts {predicted}"
        ))),
        ValueBound::AtLeast(b) => Err(Error::InsufficientPrecision(format!(
            "v(f(x) − f(c_{n})) only known to be ≥ {b}"
        ))),
    }
}

fn rel_degree_of(an: &PolyAnalysis<'_>) -> Result<RelDegree> {
    let ty = an.approx_type();
    let settings = an.settings();
    if an.degree() < 1 {
        return Err(Error::Precondition("relative degree needs deg f ≥ 1".into()));
    }
    ty.require_immediate()?;
    let (betas, from, items) = taylor_family(an)?.ok_or_else(|| {
        Error::MarkerViolation("some formal derivative does not have a fixed value".into())
    })?;
    let fam = AffineFamily::new(items, ty.distance()?.cut)?;
    let ord = eventual_order(&fam)?;
    let h = *ord.order.last().expect("nonempty family") as u64;
    let beta = betas[h as usize].expect_finite("β_h")?;
    let start = (from..ty.len())
        .find(|&n| ord.max_crossing.as_ref().map_or(true, |m| ty.gap(n) > m))
        .unwrap_or(ty.len());
    let depth = ty.len() - start;
    if depth < settings.tail_depth {
        return Err(Error::NotStabilized(format!(
            "law can be verified on {depth} approximants, tail depth is {}",
            settings.tail_depth
        )));
    }
    for n in start..ty.len() {
        verify_law(an, n, h, &beta)?;
    }
    Ok(RelDegree {
        h,
        beta,
        taylor_intercepts: betas[1..].to_vec(),
        tail_start: start,
        verified_depth: depth,
    })
}

pub fn rel_degree(ty: &ApproxType, f: &ValPoly, settings: &Settings) -> Result<RelDegree> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::Precondition("relative degree needs deg f ≥ 1".into()));
    }
    ty.require_immediate()?;
    let an = ty.analyze(f, settings)?;
    rel_degree_of(&an)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralLaw {
    /// The type fixes `g`; `vg(x) = vc_0(x)`.
    FixedCase { value: GroupValue },
    /// `vg(c) = beta + m·h·v(x − c)` on the tail.
    NotFixedLaw { m: u64, h: u64, beta: Q },
}

/// The value law of an arbitrary `g` through its `f`-adic digits, where `f`
/// is the polynomial whose value the type leaves unfixed.
pub fn rel_degree_general(
    ty: &ApproxType,
    g: &ValPoly,
    minpoly: &ValPoly,
    settings: &Settings,
) -> Result<GeneralLaw> {
    ty.require_immediate()?;
    let fa = ty.analyze(minpoly, settings)?;
    let (h, beta_h) = match fa.stabilize(0)? {
        Stabilized { outcome: FixedOutcome::NotFixed { h, beta }, .. } => (h, beta),
        _ => return Err(Error::Precondition("the type fixes the value of f".into())),
    };
    let digits = g.f_adic_expand(minpoly)?;
    let mut gammas = Vec::with_capacity(digits.len());
    for (i, dg) in digits.iter().enumerate() {
        if dg.is_zero() {
            gammas.push(GroupValue::Infinity);
            continue;
        }
        let an = ty.analyze(dg, settings)?;
        match an.stabilize(0) {
            Ok(Stabilized { outcome: FixedOutcome::Fixed { value }, .. }) => gammas.push(value),
            Ok(_) => {
                return Err(Error::MarkerViolation(format!("digit {i} has no fixed value")))
            }
            Err(e) => return Err(e),
        }
    }
    let cut = ty.distance()?.cut;
    let items: Vec<AffineItem> = gammas
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, gm)| AffineItem::new(i as i64, gm + &(&beta_h * qi(i as i64)), (i as u64 * h) as i64))
        .collect();
    let law = if items.iter().all(|it| !it.intercept.is_finite()) {
        GeneralLaw::FixedCase { value: gammas[0].clone() }
    } else {
        let fam = AffineFamily::new(items, cut.clone())?;
        let ord = eventual_order(&fam)?;
        let m = *ord.order.last().expect("nonempty") as u64;
        let beta = (&gammas[m as usize] + &(&beta_h * qi(m as i64))).expect_finite("law intercept")?;
        let limit = match cut.boundary() {
            Some(b) => GroupValue::Finite(&beta + b * qi((m * h) as i64)),
            None => GroupValue::Infinity,
        };
        if gammas[0] < limit {
            GeneralLaw::FixedCase { value: gammas[0].clone() }
        } else {
            GeneralLaw::NotFixedLaw { m, h, beta }
        }
    };
    let direct = ty.analyze(g, settings)?.stabilize(0)?.outcome;
    let agrees = match (&law, &direct) {
        (GeneralLaw::FixedCase { value }, FixedOutcome::Fixed { value: v }) => value == v,
        (GeneralLaw::NotFixedLaw { m, h, beta }, FixedOutcome::NotFixed { h: hd, beta: bd }) => {
            m * h == *hd && beta == bd
        }
        _ => false,
    };
    if !agrees {
        return Err(Error::Inconsistency(format!(
            "digit law {law:?} disagrees with direct evaluation {direct:?}"
        )));
    }
    Ok(law)
}

fn coefficient_values(f: &ValPoly) -> Result<Vec<(usize, GroupValue)>> {
    let mut out = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().skip(1) {
        if !c.is_exact_zero() {
            out.push((i, c.val()?));
        }
    }
    Ok(out)
}

/// `p^t` with `i = p^t·r`, where `i > 0` is the unique index of minimal
/// coefficient value. Applies when the target has value 0.
pub fn h_upper_bound_from_coeffs(f: &ValPoly) -> Result<u64> {
    let vals = coefficient_values(f)?;
    let min = vals.iter().map(|(_, v)| v.clone()).min().ok_or_else(|| {
        Error::Precondition("no nonconstant coefficient".into())
    })?;
    let at: Vec<usize> = vals.iter().filter(|(_, v)| *v == min).map(|(i, _)| *i).collect();
    if at.len() != 1 {
        return Err(Error::Precondition("no strict minimum coefficient value".into()));
    }
    let p = f.p();
    let mut i = at[0] as u64;
    let mut bound = 1;
    while i % p == 0 {
        i /= p;
        bound *= p;
    }
    Ok(bound)
}

/// `p^e` for the least `e ≥ 1` with `c_i = 0` whenever `p^e | i`, provided the
/// nonzero coefficients of positive degree have pairwise distinct values.
pub fn corollary_strict_bound(f: &ValPoly) -> Result<u64> {
    let vals = coefficient_values(f)?;
    let mut seen: Vec<&GroupValue> = vals.iter().map(|(_, v)| v).collect();
    seen.sort();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("coefficient values are not pairwise distinct".into()));
    }
    let p = f.p();
    let deg = f.degree().unwrap_or(0) as u64;
    let mut pe = p;
    loop {
        if vals.iter().all(|(i, _)| *i as u64 % pe != 0) {
            return Ok(pe);
        }
        if pe > deg {
            return Err(Error::Precondition("no such exponent".into()));
        }
        pe *= p;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxCoefficient {
    pub d: Series,
    pub rel: RelDegree,
    /// First approximant from which both certificates hold.
    pub certified_from: usize,
}

fn exceeds(s: &Series, bound: &Q) -> Option<bool> {
    match s.leading() {
        Some((e, _)) => Some(e > bound),
        None => (s.precision() > &GroupValue::Finite(bound.clone())).then_some(true),
    }
}

/// A monomial `d ∈ K` with `vd = vf_h(c) < v(f_h(c) − d)` and
/// `v(f(x) − f(c) − d(x − c)^h) > v(f(x) − f(c))` on the tail.
pub fn approx_coefficient(ty: &ApproxType, f: &ValPoly, settings: &Settings) -> Result<ApproxCoefficient> {
    let an = ty.analyze(f, settings)?;
    let rel = rel_degree_of(&an)?;
    let h = rel.h as usize;
    let last = ty.len() - 1;
    let beta = GroupValue::Finite(rel.beta.clone());
    let lead = an.derivative_at(h, last, &(&beta + &settings.margin));
    let d = match lead.leading() {
        Some((e, c)) if GroupValue::Finite(e.clone()) == beta => {
            Series::from_terms(ty.p(), [(e.clone(), c)], GroupValue::Infinity)
        }
        _ => {
            return Err(Error::InsufficientPrecision(format!(
                "no leading term of f_{h}(c) at value {beta}"
            )))
        }
    };
    let mut from = ty.len();
    for n in (rel.tail_start..ty.len()).rev() {
        let fh = an.derivative_at(h, n, &(&beta + &settings.margin));
        let ok_d = exceeds(&fh.sub_series(&d), &rel.beta);
        let inc = &rel.beta + ty.gap(n) * qi(h as i64);
        let cap = GroupValue::Finite(&inc + &settings.margin);
        let delta = an.increment(0, n, &cap)?;
        let e = ty.offset(n, &GroupValue::Finite(ty.gap(n) + &settings.margin), settings)?;
        let lin = d.mul_capped(&e.pow_capped(h as u64, &(&cap - &rel.beta)), &cap);
        let ok_ac = exceeds(&delta.sub_series(&lin), &inc);
        if ok_d == Some(true) && ok_ac == Some(true) {
            from = n;
        } else {
            break;
        }
    }
    if ty.len() - from < settings.window {
        return Err(Error::InsufficientPrecision(format!(
            "approximation coefficient certified on {} approximants",
            ty.len() - from
        )));
    }
    Ok(ApproxCoefficient { d, rel, certified_from: from })
}

/// An element `y = f(x) + r` with `v(r)` at or above `perturbation_floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementProxy {
    pub poly: ValPoly,
    pub perturbation_floor: Cut,
}

impl ElementProxy {
    pub fn exact(poly: ValPoly) -> Self {
        ElementProxy { poly, perturbation_floor: Cut::PlusInfinity }
    }

    /// Whether `other` represents the same element: `v(f(x) − g(x))` lies in
    /// both floors.
    pub fn agrees_with(&self, other: &ElementProxy, ty: &ApproxType, settings: &Settings) -> Result<bool> {
        let diff = self.poly.sub(&other.poly);
        if diff.is_zero() {
            return Ok(true);
        }
        let v = match ty.analyze(&diff, settings)?.stabilize(0)?.outcome {
            FixedOutcome::Fixed { value } => value,
            FixedOutcome::NotFixed { .. } => return Ok(false),
        };
        let floor = std::cmp::min(&self.perturbation_floor, &other.perturbation_floor);
        Ok(crate::ordval::compare_value_cut(&v, floor).ge)
    }
}

pub fn h_of_element(ty: &ApproxType, y: &ElementProxy, settings: &Settings) -> Result<RelDegree> {
    let rd = rel_degree(ty, &y.poly, settings)?;
    let dist_y = rd.image_distance(&ty.distance()?.cut)?;
    if y.perturbation_floor < dist_y {
        return Err(Error::Precondition(format!(
            "perturbation floor {} lies below dist(y, K) = {dist_y}",
            y.perturbation_floor
        )));
    }
    Ok(rd)
}

/// `appr(f(x), K)` generated by truncations of `f(c_n)` for `c_n` on the tail.
pub fn pushforward(ty: &Arc<ApproxType>, f: &ValPoly, settings: &Settings) -> Result<ApproxType> {
    for c in f.coeffs() {
        if !c.is_exact() || c.terms().iter().any(|(e, _)| !ty.ground().contains(e)) {
            return Err(Error::Precondition("coefficients must be exact elements of the ground".into()));
        }
    }
    let an = ty.analyze(f, settings)?;
    let rd = rel_degree_of(&an)?;
    let h = qi(rd.h as i64);
    let mut entries = Vec::new();
    for n in rd.tail_start..ty.len() {
        let gap = &rd.beta + ty.gap(n) * &h;
        let cap = GroupValue::Finite(&gap + &settings.margin);
        let point = f.eval_capped(ty.point(n), &cap).known_part();
        entries.push((n, point, gap));
    }
    let last = ty.len() - 1;
    let step = ty.gap(last) - ty.gap(last - 1);
    let t_cap = GroupValue::Finite(&entries.last().expect("tail").2 + &step * &h);
    let target = f.eval_capped(ty.point(last), &t_cap).add_series(&an.increment(0, last, &t_cap)?);
    let limit = match ty.distance()?.cut.boundary() {
        Some(b) => GroupValue::Finite(&rd.beta + b * &h),
        None => GroupValue::Infinity,
    };
    let kind = match ty.kind() {
        TypeKind::Transcendental => TypeKind::Transcendental,
        _ => TypeKind::Unspecified,
    };
    Ok(ApproxType::image(
        Arc::clone(ty),
        f.clone(),
        an.profile().clone(),
        target,
        entries,
        limit,
        kind,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicativity {
    pub composite: u64,
    pub inner: u64,
    pub outer: u64,
}

impl Multiplicativity {
    pub fn holds(&self) -> bool {
        self.composite == self.inner * self.outer
    }
}

/// `h(x : g∘f)` against `h(x : f)·h(f(x) : g)`, the right factor computed
/// on the pushed-forward type.
pub fn check_multiplicativity(
    ty: &Arc<ApproxType>,
    f: &ValPoly,
    g: &ValPoly,
    settings: &Settings,
) -> Result<Multiplicativity> {
    if ty.kind() != &TypeKind::Transcendental {
        return Err(Error::MarkerViolation("type is not marked transcendental".into()));
    }
    let composite = rel_degree(ty, &g.compose(f), settings)?.h;
    let inner = rel_degree(ty, f, settings)?.h;
    let image = pushforward(ty, f, settings)?;
    let outer = rel_degree(&image, g, settings)?.h;
    Ok(Multiplicativity { composite, inner, outer })
}

/// `Σ k_i·f^{[i]}` for proxies of equal `h` whose approximation coefficients
/// do not cancel: `v Σ k_i d_i = min v(k_i d_i)`.
pub fn combine_same_degree(
    ty: &ApproxType,
    proxies: &[ElementProxy],
    ks: &[Series],
    ds: &[Series],
    settings: &Settings,
) -> Result<RelDegree> {
    if proxies.is_empty() || proxies.len() != ks.len() || ks.len() != ds.len() {
        return Err(Error::Precondition("proxies, coefficients and d's must align".into()));
    }
    let mut h = None;
    for y in proxies {
        let r = h_of_element(ty, y, settings)?;
        match h {
            None => h = Some(r.h),
            Some(h0) if h0 != r.h => {
                return Err(Error::Precondition(format!("proxies have different h ({h0}, {})", r.h)))
            }
            _ => {}
        }
    }
    let h = h.expect("nonempty");
    let mut sum = Series::zero(ty.p());
    let mut min = GroupValue::Infinity;
    for (k, d) in ks.iter().zip(ds) {
        if !k.is_exact() || !d.is_exact() {
            return Err(Error::Precondition("k_i and d_i must be exact".into()));
        }
        let kd = k.mul_series(d);
        min = GroupValue::min(&min, &kd.val()?);
        sum = sum.add_series(&kd);
    }
    let v = sum.val()?;
    if !min.is_finite() || v != min {
        return Err(Error::CoefficientCancellation(format!(
            "v Σ k_i d_i = {v} but min v(k_i d_i) = {min}"
        )));
    }
    let mut combined = ValPoly::zero(ty.p());
    for (y, k) in proxies.iter().zip(ks) {
        combined = combined.add(&y.poly.scale(k));
    }
    let rd = rel_degree(ty, &combined, settings)?;
    if rd.h != h {
        return Err(Error::Inconsistency(format!("combination has h = {}, expected {h}", rd.h)));
    }
    Ok(rd)
}

/// Residue polynomial of the rescaled `F(Z)` and its comparison with `(Z − x₀v)^h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorShape {
    pub h: u64,
    /// Residues of the coefficients of `F(Z)`, constant term first.
    pub residues: Vec<ResidueElem>,
    /// `x₀v`, the residue of `d·(x − c)`.
    pub root: ResidueElem,
    /// Multiplicity of `root` in the residue polynomial.
    pub multiplicity: usize,
    /// Whether the residue polynomial equals `(Z − x₀v)^h`.
    pub matches: bool,
}

fn divide_root(coeffs: &[u64], r: u64, p: u64) -> Option<Vec<u64>> {
    // synthetic division by (Z − r), constant term first
    let n = coeffs.len();
    if n < 2 {
        return None;
    }
    let mut q = vec![0u64; n - 1];
    let mut carry = 0u64;
    for k in (1..n).rev() {
        carry = (coeffs[k] + carry * r) % p;
        q[k - 1] = carry;
    }
    let rem = (coeffs[0] + carry * r) % p;
    (rem == 0).then_some(q)
}

pub fn root_multiplicity(coeffs: &[u64], r: u64, p: u64) -> usize {
    let mut cur = coeffs.to_vec();
    while cur.len() > 1 && *cur.last().expect("nonempty") == 0 {
        cur.pop();
    }
    let mut m = 0;
    while let Some(q) = divide_root(&cur, r, p) {
        cur = q;
        m += 1;
    }
    m
}

/// Roots in `𝔽_p` by search.
pub fn residue_roots(coeffs: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&r| {
            let mut acc = 0u64;
            for c in coeffs.iter().rev() {
                acc = (acc * r + c) % p;
            }
            acc == 0
        })
        .collect()
}

/// Builds `F(Z) = (d^h / f_h(c))·(f̃(Z) − f̃(x₀))` with `f̃(Z) = f(c + Z/d)` and
/// `x₀ = d·(x − c)` at approximant `n`, and reduces it coefficientwise.
pub fn reduced_factor_shape(
    ty: &ApproxType,
    f: &ValPoly,
    n: usize,
    d: &Series,
    settings: &Settings,
) -> Result<FactorShape> {
    let p = ty.p();
    let an = ty.analyze(f, settings)?;
    let rel = rel_degree_of(&an)?;
    if n >= ty.len() {
        return Err(Error::Precondition(format!("approximant {n} does not exist")));
    }
    if !(d.is_exact() && d.terms().len() == 1) {
        return Err(Error::Precondition("d must be an exact monomial".into()));
    }
    let delta = ty.gap(n).clone();
    if d.val()? != GroupValue::Finite(-delta.clone()) {
        return Err(Error::Precondition("vd must equal −v(x − c)".into()));
    }
    let h = rel.h as usize;
    let deg = an.degree();
    let beta = GroupValue::Finite(rel.beta.clone());
    let one = qi(1);
    let fh = an.derivative_at(h, n, &(&beta + &one));
    let inv = fh.invert(&(&beta + &one))?;
    let d_inv = d.invert(&GroupValue::Infinity)?;
    let mut residues = vec![ResidueElem::zero(p); deg + 1];
    for i in 1..=deg {
        // a_i = f_i(c)·d^(h−i)/f_h(c), with d^(h−i) possibly a negative power
        let shift = &delta * qi(i as i64 - h as i64);
        let cap = &beta + &(shift.clone() + &one);
        let fi = an.derivative_at(i, n, &cap);
        let dpow = if i <= h { d.pow((h - i) as u64) } else { d_inv.pow((i - h) as u64) };
        let a = fi.mul_series(&dpow).mul_series(&inv);
        let r = a.residue().map_err(|_| {
            Error::IntegralityViolation(format!("coefficient of Z^{i} is not integral"))
        })?;
        if i != h && a.val_lower_bound() <= GroupValue::zero() {
            return Err(Error::IntegralityViolation(format!(
                "v(f_{i}(c)·d^(h−{i})/f_h(c)) is not positive"
            )));
        }
        residues[i] = r;
    }
    let e = ty.offset(n, &GroupValue::Finite(&delta + &one), settings)?;
    let x0 = d.mul_series(&e);
    let root = x0.residue()?;
    let mut c0 = ResidueElem::zero(p);
    for (i, r) in residues.iter().enumerate().skip(1) {
        c0 = c0 - *r * root.pow(i as u64);
    }
    residues[0] = c0;
    let coeffs: Vec<u64> = residues.iter().map(|r| r.value()).collect();
    let mut expected = vec![0u64; deg + 1];
    for (k, slot) in expected.iter_mut().enumerate().take(h + 1) {
        // (Z − r)^h = Σ C(h,k) Z^k (−r)^(h−k)
        let neg = (p - root.value() % p) % p;
        *slot = binom_mod(h as u64, k as u64, p) * pow_mod(neg, (h - k) as u64, p) % p;
    }
    let multiplicity = root_multiplicity(&coeffs, root.value(), p);
    Ok(FactorShape { h: rel.h, residues, root, multiplicity, matches: coeffs == expected })
}

impl std::fmt::Display for RelDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "h={} beta={} depth={}", self.h, fmt_q(&self.beta), self.verified_depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curated::theta;
    use crate::ordval::q;
    use crate::valpoly::artin_schreier;

    #[test]
    fn theta_law() {
        let s = Settings::default();
        for p in [2, 3, 5] {
            let ty = theta(p);
            let rd = rel_degree(&ty, &artin_schreier(p), &s).unwrap();
            assert_eq!((rd.h, rd.beta.clone()), (p, qi(0)));
            assert_eq!(rd.verified_depth, 8);
            let img = rd.image_distance(&ty.distance().unwrap().cut).unwrap();
            assert_eq!(img, Cut::below(qi(0)));
        }
    }

    #[test]
    fn linear_has_degree_one() {
        let s = Settings::default();
        let ty = theta(3);
        let f = ValPoly::new(3, vec![Series::one(3), Series::t_pow(3, q(1, 2))]);
        let rd = rel_degree(&ty, &f, &s).unwrap();
        assert_eq!((rd.h, rd.beta), (1, q(1, 2)));
    }

    #[test]
    fn square_of_minimal_polynomial() {
        let s = Settings::default();
        let ty = theta(3);
        let f = artin_schreier(3);
        let g = f.mul(&f);
        let law = rel_degree_general(&ty, &g, &f, &s).unwrap();
        assert_eq!(law, GeneralLaw::NotFixedLaw { m: 2, h: 3, beta: qi(0) });
        let law = rel_degree_general(&ty, &f, &f, &s).unwrap();
        assert_eq!(law, GeneralLaw::NotFixedLaw { m: 1, h: 3, beta: qi(0) });
        let c = ValPoly::constant(Series::t_pow(3, qi(2)));
        assert_eq!(
            rel_degree_general(&ty, &c, &f, &s).unwrap(),
            GeneralLaw::FixedCase { value: GroupValue::int(2) }
        );
    }

    #[test]
    fn coefficient_bounds() {
        let p = 3;
        let t = |e: Q| Series::t_pow(p, e);
        let f = ValPoly::new(p, vec![t(qi(0)), t(qi(1)), Series::zero(p), t(qi(0))]);
        assert_eq!(h_upper_bound_from_coeffs(&f).unwrap(), 3);
        let mut cs = vec![Series::zero(p); 10];
        cs[9] = t(qi(0));
        cs[1] = t(qi(1));
        assert_eq!(h_upper_bound_from_coeffs(&ValPoly::new(p, cs)).unwrap(), 9);
        let g = ValPoly::new(p, vec![Series::zero(p), t(qi(0)), t(qi(0))]);
        assert!(h_upper_bound_from_coeffs(&g).is_err());
        let g = ValPoly::new(p, vec![Series::zero(p), t(qi(0)), t(qi(1))]);
        assert_eq!(corollary_strict_bound(&g).unwrap(), 3);
    }

    #[test]
    fn theta_approximation_coefficient_and_factor_shape() {
        let s = Settings::default();
        for p in [2, 3, 5] {
            let ty = theta(p);
            let f = artin_schreier(p);
            let ac = approx_coefficient(&ty, &f, &s).unwrap();
            assert_eq!(ac.d, Series::one(p));
            for n in [3, 7] {
                let d = Series::t_pow(p, -ty.gap(n).clone());
                let shape = reduced_factor_shape(&ty, &f, n, &d, &s).unwrap();
                assert!(shape.matches);
                assert_eq!(shape.root, ResidueElem::one(p));
                assert_eq!(shape.multiplicity, p as usize);
            }
        }
    }

    #[test]
    fn residue_polynomial_helpers() {
        // (Z − 2)^2 over F_5 = Z^2 + Z + 4
        assert_eq!(root_multiplicity(&[4, 1, 1], 2, 5), 2);
        assert_eq!(residue_roots(&[4, 1, 1], 5), vec![2]);
        assert_eq!(root_multiplicity(&[1, 0, 1], 2, 5), 1);
    }

    #[test]
    fn cancellation_is_rejected() {
        let s = Settings::default();
        let ty = theta(3);
        let y = ElementProxy::exact(ValPoly::x(3));
        let ks = [Series::one(3), Series::constant(3, -1)];
        let ds = [Series::one(3), Series::one(3)];
        let r = combine_same_degree(&ty, &[y.clone(), y], &ks, &ds, &s);
        assert!(matches!(r, Err(Error::CoefficientCancellation(_))));
    }
}
