//! Approximation types `appr(x, K)` as concrete objects: a target series, a
//! ground predicate, a strictly improving sequence of approximants in `K`
//! and caller-supplied markers for the Π-statements that finite data cannot
//! decide.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};

use crate::envelope::{eventual_order, AffineFamily, AffineItem};
use crate::error::{Error, Result};
use crate::hahn::{Series, SubfieldPredicate, Truncation};
use crate::ordval::{compare_value_cut, q, qi, Cut, GroupValue, Q};
use crate::valpoly::{binom_mod, ValPoly};

/// Numeric knobs for stabilization and adaptive evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Consecutive approximants over which a value must be constant.
    pub window: usize,
    /// Approximants past stabilization on which laws are verified.
    pub tail_depth: usize,
    /// First slack above a predicted value when evaluating.
    pub margin: Q,
    /// Largest slack tried before falling back to exact evaluation.
    pub margin_limit: Q,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { window: 4, tail_depth: 6, margin: q(1, 1 << 24), margin_limit: qi(64) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cofinality {
    Undeclared,
    /// The gaps `v(x − c_n)` approach this value and never reach it.
    Limit(GroupValue),
    /// The last approximant attains the maximum of `v(x − K)`.
    Exhaustive,
    /// The target ran out of precision before its support did.
    PrecisionLimited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeKind {
    Unspecified,
    Transcendental,
    /// Algebraic with the given associated minimal polynomial (or annihilator).
    Algebraic(ValPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximant {
    /// An exact element of the ground field.
    pub point: Series,
    /// `v(x − point)`.
    pub gap: Q,
}

#[derive(Clone, Debug)]
enum Offsets {
    Stored(Vec<Series>),
    Image(Arc<ImageSource>),
}

#[derive(Debug)]
struct ImageSource {
    parent: Arc<ApproxType>,
    poly: ValPoly,
    profile: Vec<Vec<ValueBound>>,
    parent_index: Vec<usize>,
}

/// `dist(x, K)` together with a flag for precision-limited lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub cut: Cut,
    pub lower_bound_only: bool,
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.lower_bound_only {
            write!(f, ">= {}", self.cut)
        } else {
            write!(f, "{}", self.cut)
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApproxType {
    target: Series,
    ground: SubfieldPredicate,
    approximants: Vec<Approximant>,
    offsets: Offsets,
    cofinality: Cofinality,
    kind: TypeKind,
    realized: bool,
}

/// A value that is either known or only bounded below by the available precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueBound {
    Exact(GroupValue),
    AtLeast(GroupValue),
}

impl ValueBound {
    pub fn lower(&self) -> &GroupValue {
        match self {
            ValueBound::Exact(v) | ValueBound::AtLeast(v) => v,
        }
    }

    pub fn exact(&self) -> Option<&GroupValue> {
        match self {
            ValueBound::Exact(v) => Some(v),
            ValueBound::AtLeast(_) => None,
        }
    }
}

/// Evaluates at increasing caps above `lower` until a leading term appears.
fn settle(
    settings: &Settings,
    lower: &GroupValue,
    mut compute: impl FnMut(&GroupValue) -> Result<Series>,
) -> Result<ValueBound> {
    if !lower.is_finite() {
        return Ok(ValueBound::Exact(GroupValue::Infinity));
    }
    let mut m = settings.margin.clone();
    loop {
        let cap = lower + &m;
        let s = compute(&cap)?;
        if let Some((e, _)) = s.leading() {
            return Ok(ValueBound::Exact(GroupValue::Finite(e.clone())));
        }
        if s.precision() < &cap {
            return Ok(ValueBound::AtLeast(s.precision().clone()));
        }
        if m > settings.margin_limit {
            let s = compute(&GroupValue::Infinity)?;
            return Ok(match s.leading() {
                Some((e, _)) => ValueBound::Exact(GroupValue::Finite(e.clone())),
                None if s.is_exact() => ValueBound::Exact(GroupValue::Infinity),
                None => ValueBound::AtLeast(s.precision().clone()),
            });
        }
        m *= qi(8);
    }
}

fn lower_plus(a: &GroupValue, k: &Q) -> GroupValue {
    a + k
}

impl ApproxType {
    /// The default generator: successive truncations of `target` whose
    /// exponents the ground admits. Cofinality is set automatically: an
    /// inadmissible exponent makes the type exhaustive, a target realized in
    /// the ground gives the trivial type, and otherwise the type is
    /// precision-limited until a limit is declared.
    pub fn truncations(target: Series, ground: SubfieldPredicate) -> Result<Self> {
        let p = target.p();
        let mut approximants = Vec::new();
        let mut offsets = Vec::new();
        let mut prefix: Vec<(Q, u64)> = Vec::new();
        let mut cofinality = Cofinality::PrecisionLimited;
        let mut realized = false;
        for (e, c) in target.terms() {
            let point = Series::from_terms(p, prefix.clone(), GroupValue::Infinity);
            offsets.push(target.sub_series(&point));
            approximants.push(Approximant { point, gap: e.clone() });
            if !ground.contains(e) {
                cofinality = Cofinality::Exhaustive;
                break;
            }
            prefix.push((e.clone(), *c));
        }
        if cofinality == Cofinality::PrecisionLimited && target.is_exact() {
            realized = true;
            cofinality = Cofinality::Exhaustive;
        }
        Ok(ApproxType {
            target,
            ground,
            approximants,
            offsets: Offsets::Stored(offsets),
            cofinality,
            kind: TypeKind::Unspecified,
            realized,
        })
    }

    /// A type generated by explicit exact approximants.
    pub fn from_points(target: Series, ground: SubfieldPredicate, points: Vec<Series>) -> Result<Self> {
        let mut approximants = Vec::new();
        let mut offsets = Vec::new();
        for c in points {
            target.check_prime(&c)?;
            if !c.is_exact() {
                return Err(Error::Precondition("approximants must be exact".into()));
            }
            if let Some((e, _)) = c.terms().iter().find(|(e, _)| !ground.contains(e)) {
                return Err(Error::Precondition(format!(
                    "approximant has exponent {e} outside the ground"
                )));
            }
            let off = target.sub_series(&c);
            let gap = off.val()?.expect_finite("gap")?;
            if let Some(prev) = approximants.last().map(|a: &Approximant| a.gap.clone()) {
                if gap <= prev {
                    return Err(Error::Precondition("gaps must strictly increase".into()));
                }
            }
            offsets.push(off);
            approximants.push(Approximant { point: c, gap });
        }
        if approximants.is_empty() {
            return Err(Error::Precondition("no approximants".into()));
        }
        Ok(ApproxType {
            target,
            ground,
            approximants,
            offsets: Offsets::Stored(offsets),
            cofinality: Cofinality::Undeclared,
            kind: TypeKind::Unspecified,
            realized: false,
        })
    }

    pub fn with_cofinality(mut self, c: Cofinality) -> Self {
        self.cofinality = c;
        self
    }

    pub fn with_limit(self, q: GroupValue) -> Self {
        self.with_cofinality(Cofinality::Limit(q))
    }

    pub fn with_kind(mut self, k: TypeKind) -> Self {
        self.kind = k;
        self
    }

    /// Keeps only the first `n` approximants.
    pub fn limited_to(mut self, n: usize) -> Self {
        self.approximants.truncate(n);
        if let Offsets::Stored(o) = &mut self.offsets {
            o.truncate(n);
        }
        self
    }

    pub fn target(&self) -> &Series {
        &self.target
    }

    pub fn p(&self) -> u64 {
        self.target.p()
    }

    pub fn ground(&self) -> &SubfieldPredicate {
        &self.ground
    }

    pub fn approximants(&self) -> &[Approximant] {
        &self.approximants
    }

    pub fn len(&self) -> usize {
        self.approximants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.approximants.is_empty()
    }

    pub fn cofinality(&self) -> &Cofinality {
        &self.cofinality
    }

    pub fn kind(&self) -> &TypeKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.realized
    }

    pub fn gap(&self, n: usize) -> &Q {
        &self.approximants[n].gap
    }

    pub fn point(&self, n: usize) -> &Series {
        &self.approximants[n].point
    }

    /// `x − c_n`, correct below `cap`.
    pub fn offset(&self, n: usize, cap: &GroupValue, settings: &Settings) -> Result<Series> {
        match &self.offsets {
            Offsets::Stored(o) => Ok(o[n].with_cap(cap)),
            Offsets::Image(src) => {
                let an = PolyAnalysis::with_profile(
                    &src.parent,
                    src.poly.clone(),
                    settings.clone(),
                    src.profile.clone(),
                );
                let m = src.parent_index[n];
                let delta = an.increment(0, m, cap)?;
                // The point is a truncation of f(c_m); add back what was cut off.
                let full = src.poly.eval_capped(src.parent.point(m), cap);
                let tail = full.sub_series(&self.approximants[n].point).with_cap(cap);
                Ok(delta.add_series(&tail))
            }
        }
    }

    pub fn distance(&self) -> Result<Distance> {
        if self.realized {
            return Ok(Distance { cut: Cut::PlusInfinity, lower_bound_only: false });
        }
        match &self.cofinality {
            Cofinality::Undeclared => Err(Error::NotCofinal),
            Cofinality::Limit(l) => {
                if let Some(a) = self.approximants.iter().find(|a| GroupValue::Finite(a.gap.clone()) >= *l)
                {
                    return Err(Error::MarkerViolation(format!(
                        "gap {} reaches the declared limit {l}",
                        crate::ordval::fmt_q(&a.gap)
                    )));
                }
                Ok(Distance { cut: Cut::below_value(l), lower_bound_only: false })
            }
            Cofinality::Exhaustive => {
                let last = self.approximants.last().ok_or(Error::NotCofinal)?;
                Ok(Distance { cut: Cut::at_most(last.gap.clone()), lower_bound_only: false })
            }
            Cofinality::PrecisionLimited => match self.target.precision() {
                GroupValue::Finite(pr) => {
                    Ok(Distance { cut: Cut::at_most(pr.clone()), lower_bound_only: true })
                }
                GroupValue::Infinity => Err(Error::NotCofinal),
            },
        }
    }

    pub fn is_immediate(&self) -> bool {
        self.require_immediate().is_ok()
    }

    pub fn require_immediate(&self) -> Result<()> {
        if self.realized {
            return Err(Error::NotImmediate("the target lies in the ground (trivial type)".into()));
        }
        match &self.cofinality {
            Cofinality::Limit(_) if !self.approximants.is_empty() => Ok(()),
            Cofinality::Limit(_) => Err(Error::NotImmediate("no approximants".into())),
            Cofinality::Undeclared => Err(Error::NotCofinal),
            Cofinality::Exhaustive => {
                Err(Error::NotImmediate("the maximum of v(x − K) is attained".into()))
            }
            Cofinality::PrecisionLimited => Err(Error::NotImmediate(
                "the distance is known only as a precision-limited lower bound".into(),
            )),
        }
    }

    /// Whether `x'` realizes the same type: `v(x − x') ≥ dist(x, K)`.
    pub fn same_type(&self, other: &Series) -> Result<bool> {
        self.require_immediate()?;
        if other == &self.target {
            return Ok(true);
        }
        let cut = self.distance()?.cut;
        let diff = self.target.sub_series(other);
        match diff.val() {
            Ok(v) => Ok(compare_value_cut(&v, &cut).ge),
            Err(_) => {
                let lo = diff.val_lower_bound();
                if compare_value_cut(&lo, &cut).ge {
                    Ok(true)
                } else {
                    Err(Error::InsufficientPrecision(format!(
                        "v(x − x') is only known to be at least {lo}, below {cut}"
                    )))
                }
            }
        }
    }

    /// [`Self::same_type`] for `x' = x + y`, given the exact perturbation `y`.
    pub fn same_type_perturbed(&self, y: &Series) -> Result<bool> {
        self.require_immediate()?;
        let cut = self.distance()?.cut;
        let v = y.val()?;
        Ok(compare_value_cut(&v, &cut).ge)
    }

    /// Whether the ball of radius `alpha` has a truncation witness.
    pub fn support_witness(&self, alpha: &GroupValue) -> Result<Truncation> {
        self.target.truncate_to_subfield(&self.ground, alpha)
    }

    pub fn analyze(&self, g: &ValPoly, settings: &Settings) -> Result<PolyAnalysis<'_>> {
        PolyAnalysis::new(self, g.clone(), settings.clone())
    }

    pub(crate) fn image(
        parent: Arc<ApproxType>,
        poly: ValPoly,
        profile: Vec<Vec<ValueBound>>,
        target: Series,
        entries: Vec<(usize, Series, Q)>,
        limit: GroupValue,
        kind: TypeKind,
    ) -> ApproxType {
        let ground = parent.ground.clone();
        let parent_index = entries.iter().map(|(m, _, _)| *m).collect();
        let approximants =
            entries.into_iter().map(|(_, point, gap)| Approximant { point, gap }).collect();
        ApproxType {
            target,
            ground,
            approximants,
            offsets: Offsets::Image(Arc::new(ImageSource { parent, poly, profile, parent_index })),
            cofinality: Cofinality::Limit(limit),
            kind,
            realized: false,
        }
    }
}

/// Values of a polynomial and its formal derivatives along the approximants.
pub struct PolyAnalysis<'a> {
    ty: &'a ApproxType,
    g: ValPoly,
    derivs: Vec<ValPoly>,
    settings: Settings,
    /// `values[n][i]` bounds `v g_i(c_n)`.
    values: Vec<Vec<ValueBound>>,
    inc_cache: RefCell<HashMap<(usize, usize), ValueBound>>,
}

/// Whether a value stabilized or follows an affine law in the gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedOutcome {
    Fixed { value: GroupValue },
    NotFixed { h: u64, beta: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub outcome: FixedOutcome,
    /// First approximant index from which the outcome holds.
    pub from: usize,
}

fn lower_bounds(d: &ValPoly, c: &Series) -> GroupValue {
    let vc = c.val_lower_bound();
    let mut best = GroupValue::Infinity;
    for (k, a) in d.coeffs().iter().enumerate() {
        if a.is_exact_zero() {
            continue;
        }
        let term = if k == 0 { a.val_lower_bound() } else { &a.val_lower_bound() + &vc.scale_int(k as i64) };
        best = GroupValue::min(&best, &term);
    }
    best
}

fn derivative_bounds(
    derivs: &[ValPoly],
    g: &ValPoly,
    c: &Series,
    settings: &Settings,
) -> Result<Vec<ValueBound>> {
    let n = derivs.len();
    let lowers: Vec<GroupValue> = derivs.iter().map(|d| lower_bounds(d, c)).collect();
    let mut out: Vec<Option<ValueBound>> = vec![None; n];
    for (i, l) in lowers.iter().enumerate() {
        if !l.is_finite() {
            out[i] = Some(ValueBound::Exact(GroupValue::Infinity));
        }
    }
    let mut m = settings.margin.clone();
    loop {
        if out.iter().all(Option::is_some) {
            break;
        }
        let caps: Vec<GroupValue> = (0..n)
            .map(|i| if out[i].is_some() { lowers[i].clone() } else { lower_plus(&lowers[i], &m) })
            .collect();
        let vals = g.derivative_values(c, &caps);
        for i in 0..n {
            if out[i].is_some() {
                continue;
            }
            if let Some((e, _)) = vals[i].leading() {
                out[i] = Some(ValueBound::Exact(GroupValue::Finite(e.clone())));
            } else if vals[i].precision() < &caps[i] {
                out[i] = Some(ValueBound::AtLeast(vals[i].precision().clone()));
            }
        }
        if m > settings.margin_limit {
            for i in 0..n {
                if out[i].is_none() {
                    let s = derivs[i].eval(c);
                    out[i] = Some(match s.leading() {
                        Some((e, _)) => ValueBound::Exact(GroupValue::Finite(e.clone())),
                        None if s.is_exact() => ValueBound::Exact(GroupValue::Infinity),
                        None => ValueBound::AtLeast(s.precision().clone()),
                    });
                }
            }
            break;
        }
        m *= qi(8);
    }
    Ok(out.into_iter().map(|v| v.expect("filled")).collect())
}

impl<'a> PolyAnalysis<'a> {
    pub fn new(ty: &'a ApproxType, g: ValPoly, settings: Settings) -> Result<Self> {
        if g.p() != ty.p() {
            return Err(Error::PrimeMismatch(g.p(), ty.p()));
        }
        let derivs = g.derivatives();
        let mut values = Vec::with_capacity(ty.len());
        for a in &ty.approximants {
            values.push(derivative_bounds(&derivs, &g, &a.point, &settings)?);
        }
        Ok(PolyAnalysis { ty, g, derivs, settings, values, inc_cache: RefCell::new(HashMap::new()) })
    }

    fn with_profile(
        ty: &'a ApproxType,
        g: ValPoly,
        settings: Settings,
        values: Vec<Vec<ValueBound>>,
    ) -> Self {
        let derivs = g.derivatives();
        PolyAnalysis { ty, g, derivs, settings, values, inc_cache: RefCell::new(HashMap::new()) }
    }

    pub fn poly(&self) -> &ValPoly {
        &self.g
    }

    pub fn approx_type(&self) -> &ApproxType {
        self.ty
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }

    pub(crate) fn profile(&self) -> &Vec<Vec<ValueBound>> {
        &self.values
    }

    /// Bound on `v g_i(c_n)`.
    pub fn value(&self, n: usize, i: usize) -> &ValueBound {
        &self.values[n][i]
    }

    /// `g_i(c_n)` correct below `cap`.
    pub fn derivative_at(&self, i: usize, n: usize, cap: &GroupValue) -> Series {
        let c = self.ty.point(n);
        let caps: Vec<GroupValue> = (0..self.derivs.len())
            .map(|k| if k == i { cap.clone() } else { self.values[n][k].lower().clone() })
            .collect();
        self.g.derivative_values(c, &caps).swap_remove(i)
    }

    /// `g_i(x) − g_i(c_n) = Σ_{j≥1} C(i+j, i)·g_{i+j}(c_n)·(x − c_n)^j`,
    /// correct below `cap`.
    pub fn increment(&self, i: usize, n: usize, cap: &GroupValue) -> Result<Series> {
        let p = self.ty.p();
        let delta = self.ty.gap(n);
        let deg = self.derivs.len().saturating_sub(1);
        let mut wanted: Vec<(usize, u64, GroupValue)> = Vec::new();
        for j in 1..=deg.saturating_sub(i) {
            let k = i + j;
            let b = binom_mod(k as u64, i as u64, p);
            let lo = self.values[n][k].lower();
            if b == 0 || !lo.is_finite() {
                continue;
            }
            if &(lo + &(delta * qi(j as i64))) >= cap {
                continue;
            }
            wanted.push((j, b, lo.clone()));
        }
        if wanted.is_empty() {
            return Ok(Series::zero(p).with_cap(cap));
        }
        let mut e_cap = GroupValue::Finite(delta.clone());
        let mut caps: Vec<GroupValue> =
            (0..self.derivs.len()).map(|k| self.values[n][k].lower().clone()).collect();
        for (j, _, lo) in &wanted {
            let k = i + j;
            caps[k] = cap - &(delta * qi(*j as i64));
            let (mut a, mut m) = (0u32, *j as u64);
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            let need = match cap {
                GroupValue::Infinity => GroupValue::Infinity,
                GroupValue::Finite(cv) => GroupValue::Finite(
                    (cv - lo.finite().expect("finite"))
                        / qi(p.pow(a) as i64)
                        - delta * qi(m as i64 - 1),
                ),
            };
            e_cap = GroupValue::max(&e_cap, &need);
        }
        let e = self.ty.offset(n, &e_cap, &self.settings)?;
        let vals = self.g.derivative_values(self.ty.point(n), &caps);
        let mut acc = Series::zero(p).with_cap(cap);
        for (j, b, lo) in &wanted {
            let k = i + j;
            let sub_cap = match cap {
                GroupValue::Infinity => GroupValue::Infinity,
                GroupValue::Finite(cv) => GroupValue::Finite(cv - lo.finite().expect("finite")),
            };
            let term = vals[k].scale(*b).mul_capped(&e.pow_capped(*j as u64, &sub_cap), cap);
            acc = acc.add_series(&term);
        }
        Ok(acc)
    }

    /// Bound on `v(g_i(x) − g_i(c_n))`.
    pub fn increment_value(&self, i: usize, n: usize) -> Result<ValueBound> {
        if let Some(v) = self.inc_cache.borrow().get(&(i, n)) {
            return Ok(v.clone());
        }
        let p = self.ty.p();
        let delta = self.ty.gap(n);
        let deg = self.derivs.len().saturating_sub(1);
        let mut lower = GroupValue::Infinity;
        for j in 1..=deg.saturating_sub(i) {
            if binom_mod((i + j) as u64, i as u64, p) == 0 {
                continue;
            }
            let t = self.values[n][i + j].lower() + &(delta * qi(j as i64));
            lower = GroupValue::min(&lower, &t);
        }
        let v = settle(&self.settings, &lower, |cap| self.increment(i, n, cap))?;
        self.inc_cache.borrow_mut().insert((i, n), v.clone());
        Ok(v)
    }

    /// Decides `v(g_i(x) − g_i(c_n)) > bound`: `Some(true)`, `Some(false)` or
    /// undecided at the available precision.
    pub fn increment_exceeds(&self, i: usize, n: usize, bound: &Q) -> Result<Option<bool>> {
        let cap = GroupValue::Finite(bound + &self.settings.margin);
        let d = self.increment(i, n, &cap)?;
        if let Some((e, _)) = d.leading() {
            return Ok(Some(e > bound));
        }
        Ok(if d.precision() > &GroupValue::Finite(bound.clone()) { Some(true) } else { None })
    }

    /// Stabilized value or affine law of `v g_i(c_n)`.
    pub fn stabilize(&self, i: usize) -> Result<Stabilized> {
        let nlen = self.ty.len();
        if self.derivs.get(i).map_or(true, ValPoly::is_zero) {
            return Ok(Stabilized { outcome: FixedOutcome::Fixed { value: GroupValue::Infinity }, from: 0 });
        }
        let window = self.settings.window.max(2);
        if nlen < window {
            return Err(Error::NotStabilized(format!(
                "{nlen} approximants, window needs {window}"
            )));
        }
        let mut vals = Vec::with_capacity(nlen);
        for n in 0..nlen {
            match &self.values[n][i] {
                ValueBound::Exact(v) => vals.push(v.clone()),
                ValueBound::AtLeast(b) => {
                    return Err(Error::InsufficientPrecision(format!(
                        "value of derivative {i} at approximant {n} is only known to be ≥ {b}"
                    )))
                }
            }
        }
        let last = vals[nlen - 1].clone();
        let n0 = (0..nlen).rev().take_while(|&n| vals[n] == last).last().unwrap_or(nlen - 1);
        if nlen - n0 >= window {
            let bound = last.expect_finite("stabilized value")?;
            let mut from = nlen;
            for n in (n0..nlen).rev() {
                match self.increment_exceeds(i, n, &bound)? {
                    Some(true) => from = n,
                    Some(false) if n == nlen - 1 => {
                        return Err(Error::NotStabilized(format!(
                            "value {last} is constant but v(g(x) − g(c)) does not exceed it"
                        )))
                    }
                    None if n == nlen - 1 => {
                        return Err(Error::InsufficientPrecision(format!(
                            "cannot certify v(g(x) − g(c)) > {last} at the last approximant"
                        )))
                    }
                    _ => break,
                }
            }
            return Ok(Stabilized { outcome: FixedOutcome::Fixed { value: last }, from });
        }
        self.fit_law(i, &vals)
    }

    fn fit_law(&self, i: usize, vals: &[GroupValue]) -> Result<Stabilized> {
        let nlen = vals.len();
        let window = self.settings.window.max(2);
        let (v1, v0) = match (vals[nlen - 1].finite(), vals[nlen - 2].finite()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return Err(Error::NotStabilized("infinite value on the tail".into())),
        };
        let (d1, d0) = (self.ty.gap(nlen - 1).clone(), self.ty.gap(nlen - 2).clone());
        let h = (&v1 - &v0) / (&d1 - &d0);
        if !h.is_integer() || !h.is_positive() {
            return Err(Error::NotStabilized(format!(
                "values neither stabilize nor follow an integral law (slope {h})"
            )));
        }
        let beta = &v1 - &h * &d1;
        let holds = |n: usize| vals[n] == GroupValue::Finite(&beta + &h * self.ty.gap(n));
        let n1 = (0..nlen).rev().take_while(|&n| holds(n)).last().unwrap_or(nlen - 1);
        if nlen - n1 < window {
            return Err(Error::NotStabilized(format!(
                "affine law holds on {} approximants, window needs {window}",
                nlen - n1
            )));
        }
        for n in n1..nlen {
            match self.increment_value(i, n)? {
                ValueBound::Exact(v) if v == vals[n] => {}
                ValueBound::Exact(v) => {
                    return Err(Error::Inconsistency(format!(
                        "unfixed value: v(g(x) − g(c_{n})) = {v} differs from v(g(c_{n})) = {}",
                        vals[n]
                    )))
                }
                ValueBound::AtLeast(b) if b > vals[n] => {
                    return Err(Error::Inconsistency(format!(
                        "unfixed value: v(g(x) − g(c_{n})) ≥ {b} exceeds v(g(c_{n})) = {}",
                        vals[n]
                    )))
                }
                ValueBound::AtLeast(b) => {
                    return Err(Error::InsufficientPrecision(format!(
                        "v(g(x) − g(c_{n})) only known to be ≥ {b}"
                    )))
                }
            }
        }
        let h = h.to_integer().to_u64().expect("small positive integer");
        Ok(Stabilized { outcome: FixedOutcome::NotFixed { h, beta }, from: n1 })
    }
}

/// Outcome of [`fixes_value`] together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedReport {
    pub outcome: FixedOutcome,
    pub from: usize,
    /// Whether the envelope prediction from the derivatives was available and agreed.
    pub cross_checked: bool,
}

/// The Taylor family `{(i, β_i, i)}` from stabilized derivative values.
pub(crate) fn taylor_family(
    an: &PolyAnalysis<'_>,
) -> Result<Option<(Vec<GroupValue>, usize, Vec<AffineItem>)>> {
    let deg = an.degree();
    let mut betas = vec![GroupValue::Infinity];
    let mut from = 0;
    let mut items = Vec::new();
    for i in 1..=deg {
        match an.stabilize(i) {
            Ok(Stabilized { outcome: FixedOutcome::Fixed { value }, from: f }) => {
                from = from.max(f);
                items.push(AffineItem::new(i as i64, value.clone(), i as i64));
                betas.push(value);
            }
            Ok(_) => return Ok(None),
            Err(e) if e.is_inconsistency() => return Err(e),
            Err(_) => return Ok(None),
        }
    }
    Ok(Some((betas, from, items)))
}

pub fn fixes_value(ty: &ApproxType, g: &ValPoly, settings: &Settings) -> Result<FixedReport> {
    if g.is_zero() {
        return Err(Error::Precondition("the zero polynomial".into()));
    }
    if ty.is_empty() {
        return Err(Error::Precondition("type has no approximants".into()));
    }
    let an = ty.analyze(g, settings)?;
    let main = an.stabilize(0)?;
    let cut = match ty.distance() {
        Ok(d) if an.degree() >= 1 => d.cut,
        _ => return Ok(FixedReport { outcome: main.outcome, from: main.from, cross_checked: false }),
    };
    let Some((betas, from_d, items)) = taylor_family(&an)? else {
        return Ok(FixedReport { outcome: main.outcome, from: main.from, cross_checked: false });
    };
    let fam = AffineFamily::new(items, cut)?;
    let ord = eventual_order(&fam)?;
    let h = *ord.order.last().expect("nonempty") as usize;
    let beta_h = betas[h].clone();
    match &main.outcome {
        FixedOutcome::NotFixed { h: hl, beta } => {
            if *hl as usize != h || GroupValue::Finite(beta.clone()) != beta_h {
                return Err(Error::Inconsistency(format!(
                    "sampled law (h={hl}, β={}) disagrees with envelope (h={h}, β={beta_h})",
                    crate::ordval::fmt_q(beta)
                )));
            }
        }
        FixedOutcome::Fixed { .. } => {
            let bh = beta_h.expect_finite("β_h")?;
            for n in from_d..ty.len() {
                if let Some(m) = &ord.max_crossing {
                    if ty.gap(n) <= m {
                        continue;
                    }
                }
                let predicted = GroupValue::Finite(&bh + ty.gap(n) * qi(h as i64));
                match an.increment_value(0, n)? {
                    ValueBound::Exact(v) if v == predicted => {}
                    ValueBound::AtLeast(b) if b <= predicted => {}
                    other => {
                        return Err(Error::Inconsistency(format!(
                            "v(g(x) − g(c_{n})) = {other:?}, envelope predicts {predicted}"
                        )))
                    }
                }
            }
        }
    }
    Ok(FixedReport { outcome: main.outcome, from: main.from, cross_checked: true })
}

/// The value `vg(x) := vg(c)` for `c ↗ x` on a type marked transcendental.
pub fn kaplansky_extend(ty: &ApproxType, g: &ValPoly, settings: &Settings) -> Result<GroupValue> {
    if ty.kind() != &TypeKind::Transcendental {
        return Err(Error::MarkerViolation("type is not marked transcendental".into()));
    }
    ty.require_immediate()?;
    if g.is_zero() {
        return Ok(GroupValue::Infinity);
    }
    let an = ty.analyze(g, settings)?;
    match an.stabilize(0) {
        Ok(Stabilized { outcome: FixedOutcome::Fixed { value }, .. }) => Ok(value),
        Ok(Stabilized { outcome: FixedOutcome::NotFixed { h, beta }, .. }) => {
            Err(Error::MarkerViolation(format!(
                "not fixed at this depth: v g(c) = {} + {h}·v(x − c)",
                crate::ordval::fmt_q(&beta)
            )))
        }
        Err(e) => Err(e),
    }
}

/// Whether the type leaves the value of its (declared) minimal polynomial unfixed.
pub fn verify_not_fixed_for_minpoly(
    ty: &ApproxType,
    g: &ValPoly,
    settings: &Settings,
) -> Result<bool> {
    ty.require_immediate()?;
    let an = ty.analyze(g, settings)?;
    let last = ty.len() - 1;
    let at_target = match an.value(last, 0) {
        ValueBound::Exact(v) => {
            let v = v.expect_finite("v g(c)")?;
            an.increment_exceeds(0, last, &v)?
        }
        ValueBound::AtLeast(_) => None,
    };
    if at_target == Some(false) {
        // g(x) has the value of g(c_N); it does not vanish to precision.
        let d = an.increment_value(0, last)?;
        if let (ValueBound::Exact(a), ValueBound::Exact(b)) = (&d, an.value(last, 0)) {
            if a != b {
                return Err(Error::Precondition("g(target) is not zero to precision".into()));
            }
        }
    }
    Ok(matches!(fixes_value(ty, g, settings)?.outcome, FixedOutcome::NotFixed { .. }))
}

impl ValueBound {
    pub fn to_text(&self) -> String {
        match self {
            ValueBound::Exact(v) => v.to_string(),
            ValueBound::AtLeast(v) => format!(">={v}"),
        }
    }
}
