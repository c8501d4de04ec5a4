//! Algebraic laws as checkers returning the first violation found. The
//! property suites drive them through proptest and the acceptance run drives
//! them at larger counts.

use hahnval::ordval::{compare_value_cut, fmt_q, scale_cut, shift_cut, Cut, GroupValue, Q};
use hahnval::tamegal::{GaloisElem, TameCyclic};
use hahnval::{parse_poly, parse_series, Series, ValPoly};

use super::oracle;

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Equal below the smaller of the two precisions.
pub fn agree(x: &Series, y: &Series) -> bool {
    let cap = GroupValue::min(x.precision(), y.precision());
    x.with_cap(&cap) == y.with_cap(&cap)
}

pub fn ultrametric(a: &Series, b: &Series) -> Check {
    let (va, vb) = match (a.val(), b.val()) {
        (Ok(va), Ok(vb)) => (va, vb),
        _ => return Ok(()),
    };
    let sum = a.add_series(b);
    let min = GroupValue::min(&va, &vb);
    match sum.val() {
        Ok(v) => ensure(v >= min, || format!("v({a} + {b}) = {v} < {min}"))?,
        Err(_) => ensure(sum.precision() >= &min, || format!("v({a} + {b}) undetermined below {min}"))?,
    }
    if va != vb {
        ensure(sum.val().ok() == Some(min.clone()), || format!("v({a} + {b}) ≠ {min} with va ≠ vb"))?;
    }
    let prod = a.mul_series(b);
    ensure(prod.val().ok() == Some(&va + &vb), || format!("v({a}·{b}) ≠ {va} + {vb}"))
}

pub fn ring(a: &Series, b: &Series, c: &Series) -> Check {
    let p = a.p();
    ensure(a.add_series(b) == b.add_series(a), || format!("{a} + {b} not commutative"))?;
    ensure(a.mul_series(b) == b.mul_series(a), || format!("{a}·{b} not commutative"))?;
    let l = a.add_series(b).add_series(c);
    let r = a.add_series(&b.add_series(c));
    ensure(l == r, || format!("addition not associative: {l} vs {r}"))?;
    let l = a.mul_series(b).mul_series(c);
    let r = a.mul_series(&b.mul_series(c));
    ensure(agree(&l, &r), || format!("multiplication not associative: {l} vs {r}"))?;
    let l = a.mul_series(&b.add_series(c));
    let r = a.mul_series(b).add_series(&a.mul_series(c));
    ensure(agree(&l, &r), || format!("not distributive: {l} vs {r}"))?;
    ensure(a.add_series(&Series::zero(p)) == *a, || format!("{a} + 0 ≠ {a}"))?;
    ensure(a.mul_series(&Series::one(p)) == *a, || format!("{a}·1 ≠ {a}"))?;
    ensure(a.sub_series(a).has_no_terms(), || format!("{a} − {a} has terms"))?;
    let sum = a.add_series(b);
    let frob = a.frobenius().add_series(&b.frobenius());
    ensure(agree(&sum.pow(p), &frob), || format!("(a + b)^p ≠ a^p + b^p for {a}, {b}"))?;
    ensure(agree(&sum.frobenius(), &sum.pow(p)), || format!("frobenius({sum}) ≠ {sum}^p"))
}

/// `mul_capped` and `pow_capped` agree with the full products below the cap.
pub fn capped_products(a: &Series, b: &Series, cap: &GroupValue) -> Check {
    let full = a.mul_series(b).with_cap(cap);
    let capped = a.mul_capped(b, cap);
    ensure(agree(&full, &capped) && capped.precision() >= full.precision(), || {
        format!("mul_capped({a}, {b}, {cap}) = {capped}, full product {full}")
    })?;
    for k in 0..4 {
        let full = a.pow(k).with_cap(cap);
        let capped = a.pow_capped(k, cap);
        ensure(agree(&full, &capped) && capped.precision() >= full.precision(), || {
            format!("pow_capped({a}, {k}, {cap}) = {capped}, full power {full}")
        })?;
    }
    Ok(())
}

/// `v(a·inv − 1) ≥ target − v(a)`.
pub fn inversion(a: &Series, extra: &Q) -> Check {
    let va = match a.val() {
        Ok(GroupValue::Finite(v)) => v,
        _ => return Ok(()),
    };
    let target = match a.precision() {
        GroupValue::Finite(pr) => GroupValue::Finite(std::cmp::min(pr.clone(), &va + extra)),
        GroupValue::Infinity => GroupValue::Finite(&va + extra),
    };
    let inv = a.invert(&target).map_err(|e| format!("invert({a}): {e}"))?;
    let bound = &target - &va;
    let err = a.mul_series(&inv).sub_series(&Series::one(a.p()));
    ensure(err.precision() >= &bound && err.with_cap(&bound).has_no_terms(), || {
        format!("{a}·{inv} − 1 = {err}, expected value ≥ {bound}")
    })
}

/// `f(x) = Σ f_i(c)·(x − c)^i` with the `f_i` from the Pascal-triangle oracle.
pub fn taylor(f: &ValPoly, c: &Series, x: &Series) -> Check {
    let oracle_derivs = oracle::derivatives(f);
    for (i, d) in oracle_derivs.iter().enumerate() {
        ensure(f.formal_derivative(i) == *d, || format!("f_{i} of {f} is {}, expected {d}", f.formal_derivative(i)))?;
    }
    let e = x.sub_series(c);
    let mut rhs = Series::zero(f.p());
    let mut e_pow = Series::one(f.p());
    for d in &oracle_derivs {
        rhs = rhs.add_series(&oracle::horner(d, c).mul_series(&e_pow));
        e_pow = e_pow.mul_series(&e);
    }
    let lhs = f.eval(x);
    ensure(agree(&lhs, &rhs), || format!("Taylor expansion of {f} about {c}: {lhs} vs {rhs}"))
}

/// Evaluation below a cap agrees with Horner evaluation.
pub fn capped_eval(f: &ValPoly, x: &Series, cap: &GroupValue) -> Check {
    let full = oracle::horner(f, x).with_cap(cap);
    let capped = f.eval_capped(x, cap);
    ensure(agree(&full, &capped) && capped.precision() >= full.precision(), || {
        format!("{f} at {x} below {cap}: {capped}, Horner gives {full}")
    })
}

pub fn f_adic(g: &ValPoly, f: &ValPoly) -> Check {
    let digits = g.f_adic_expand(f).map_err(|e| format!("f-adic expansion of {g} by {f}: {e}"))?;
    let df = f.degree().unwrap_or(0);
    for (i, d) in digits.iter().enumerate() {
        ensure(d.degree().map_or(true, |k| k < df), || format!("digit {i} = {d} has degree ≥ {df}"))?;
    }
    let mut back = ValPoly::zero(g.p());
    for d in digits.iter().rev() {
        back = back.mul(f).add(d);
    }
    ensure(back == *g, || format!("Σ digits·f^i = {back}, expected {g}"))
}

pub fn series_text(s: &Series) -> Check {
    let text = s.to_string();
    let back = parse_series(&text, s.p()).map_err(|e| format!("parse {text:?}: {e}"))?;
    ensure(back == *s, || format!("{text:?} parsed as {back}"))
}

pub fn poly_text(f: &ValPoly) -> Check {
    let text = f.to_string();
    let back = parse_poly(&text, f.p()).map_err(|e| format!("parse {text:?}: {e}"))?;
    ensure(back == *f, || format!("{text:?} parsed as {back}"))
}

pub fn value_text(v: &GroupValue, c: &Cut) -> Check {
    let back: GroupValue = v.to_string().parse().map_err(|e| format!("{v}: {e}"))?;
    ensure(back == *v, || format!("{v} parsed as {back}"))?;
    let back: Cut = c.to_string().parse().map_err(|e| format!("{c}: {e}"))?;
    ensure(back == *c, || format!("{c} parsed as {back}"))?;
    if let GroupValue::Finite(q) = v {
        let back = hahnval::ordval::parse_q(&fmt_q(q)).map_err(|e| e.to_string())?;
        ensure(back == *q, || format!("{q} parsed as {back}"))?;
    }
    Ok(())
}

/// The four relations are consistent with each other and invariant under
/// shifting and scaling value and cut together.
pub fn value_cut(alpha: &GroupValue, cut: &Cut, beta: &Q, n: u64) -> Check {
    let r = compare_value_cut(alpha, cut);
    ensure(r.le == !r.gt && r.lt == !r.ge, || format!("{alpha} vs {cut}: {r:?}"))?;
    ensure(!r.lt || r.le, || format!("{alpha} vs {cut}: lt without le"))?;
    ensure(!r.gt || r.ge, || format!("{alpha} vs {cut}: gt without ge"))?;
    let shifted = compare_value_cut(&(alpha + beta), &shift_cut(beta, cut));
    ensure(shifted == r, || format!("shift by {beta} changes {alpha} vs {cut}"))?;
    let scaled = compare_value_cut(&alpha.scale_int(n as i64), &scale_cut(n, cut).map_err(|e| e.to_string())?);
    ensure(scaled == r, || format!("scaling by {n} changes {alpha} vs {cut}"))?;
    if let GroupValue::Finite(a) = alpha {
        ensure(cut.contains(a) == r.le, || format!("contains({a}) disagrees with le for {cut}"))?;
    }
    Ok(())
}

/// Ultrametric and order laws on values with `∞`.
pub fn value_order(a: &GroupValue, b: &GroupValue, c: &GroupValue) -> Check {
    ensure(&(a + b) == &(b + a), || format!("{a} + {b} not commutative"))?;
    ensure(&(&(a + b) + c) == &(a + &(b + c)), || format!("{a} + {b} + {c} not associative"))?;
    if a <= b {
        ensure(&(a + c) <= &(b + c), || format!("{a} ≤ {b} but {a} + {c} > {b} + {c}"))?;
    }
    let m = GroupValue::min(a, b);
    ensure(m <= *a && m <= *b && (m == *a || m == *b), || format!("min({a}, {b}) = {m}"))?;
    Ok(())
}

/// The Galois action is a value-preserving ring automorphism compatible with
/// composition, fixing the ground, with `χ` matching the direct quotient.
pub fn galois(g: &TameCyclic, sigma: GaloisElem, tau: GaloisElem, a: &Series, b: &Series) -> Check {
    let ap = |s: GaloisElem, x: &Series| g.apply(s, x).map_err(|e| format!("apply: {e}"));
    let sa = ap(sigma, a)?;
    let sb = ap(sigma, b)?;
    ensure(agree(&ap(sigma, &a.add_series(b))?, &sa.add_series(&sb)), || format!("σ not additive on {a}, {b}"))?;
    ensure(agree(&ap(sigma, &a.mul_series(b))?, &sa.mul_series(&sb)), || format!("σ not multiplicative on {a}, {b}"))?;
    ensure(ap(sigma.compose(tau), a)? == ap(sigma, &ap(tau, a)?)?, || format!("σ∘τ ≠ σ(τ(·)) on {a}"))?;
    ensure(ap(sigma.pow(g.n()), a)? == *a, || format!("σ^n ≠ id on {a}"))?;
    ensure(ap(g.identity(), a)? == *a, || "identity acts nontrivially".to_string())?;
    if let (Ok(v), Ok(w)) = (a.val(), sa.val()) {
        ensure(v == w, || format!("v(σ({a})) = {w} ≠ {v}"))?;
    }
    let ground = oracle::ground_part(a);
    ensure(ap(sigma, &ground)? == ground, || format!("σ moves the ground element {ground}"))?;
    if a.val().is_ok() && !a.has_no_terms() {
        let chi = g.chi(sigma, a).map_err(|e| format!("chi: {e}"))?;
        let direct = oracle::chi(g, sigma, a)?;
        ensure(chi == direct, || format!("χ_σ({a}) = {chi}, direct quotient gives {direct}"))?;
        let crossed = g.crossed_hom_check(sigma, tau, a).map_err(|e| e.to_string())?;
        ensure(crossed, || format!("crossed homomorphism law fails for {a}"))?;
    }
    Ok(())
}

/// The witness search succeeds and its `d` satisfies the defining equality,
/// recomputed here from the action alone.
pub fn witness(g: &TameCyclic, sigmas: &[GaloisElem], ds: &[Series]) -> Check {
    let w = g.valuation_independence_witness(sigmas, ds).map_err(|e| format!("witness search: {e}"))?;
    let mut total = Series::zero(g.p());
    let mut min = GroupValue::Infinity;
    for (s, d) in sigmas.iter().zip(ds) {
        let term = g.apply(*s, &w.d).map_err(|e| e.to_string())?.mul_series(d);
        min = GroupValue::min(&min, &term.val().map_err(|e| e.to_string())?);
        total = total.add_series(&term);
    }
    let v = total.val().map_err(|e| e.to_string())?;
    ensure(v == min && w.value == v, || format!("d = {}: v Σ = {v}, min = {min}, reported {}", w.d, w.value))
}

/// `a = Σ c_i s^i` with ground components, and no ground element found by
/// truncation search approximates `a` better than `c_0`.
pub fn decomposition(g: &TameCyclic, a: &Series, extra: &[Series]) -> Check {
    let dec = g.standard_basis_decompose(a).map_err(|e| format!("decompose {a}: {e}"))?;
    ensure(g.recompose(&dec) == *a, || format!("recomposition of {a} gives {}", g.recompose(&dec)))?;
    for (i, c) in dec.components.iter().enumerate() {
        ensure(c.terms().iter().all(|(e, _)| oracle::in_p_power_ground(e, g.p())), || {
            format!("component {i} = {c} leaves the ground")
        })?;
    }
    let best = a.sub_series(dec.best()).val().map_err(|e| e.to_string())?;
    ensure(dec.best_value.exact() == Some(&best), || format!("reported best value {:?}, actual {best}", dec.best_value))?;
    let ground = oracle::ground_part(a);
    let mut candidates: Vec<Series> = vec![Series::zero(g.p())];
    for k in 0..=ground.terms().len() {
        let prefix = Series::from_terms(g.p(), ground.terms()[..k].iter().cloned(), GroupValue::Infinity);
        for e in extra {
            candidates.push(prefix.add_series(e));
        }
        candidates.push(prefix);
    }
    for c in candidates {
        let v = a.sub_series(&c).val().map_err(|e| e.to_string())?;
        ensure(v <= best, || format!("ground element {c} gives v(a − c) = {v} > {best}"))?;
    }
    Ok(())
}
