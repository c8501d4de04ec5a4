//! Independent reference computations. None of these call the routine they
//! are used to check.

use hahnval::envelope::AffineItem;
use hahnval::ordval::{q, qi, Cut, CutSide, GroupValue, Q};
use hahnval::tamegal::{GaloisElem, TameCyclic};
use hahnval::{ResidueElem, Series, ValPoly};
use num_traits::{One, Signed, Zero};

/// Rows of Pascal's triangle mod p.
pub fn pascal(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut row = vec![1u64; j + 1];
        for i in 1..j {
            row[i] = (rows[j - 1][i - 1] + rows[j - 1][i]) % p;
        }
        rows.push(row);
    }
    rows
}

/// `f_i = Σ_j C(j, i)·c_j·X^{j−i}` from Pascal's triangle.
pub fn derivatives(f: &ValPoly) -> Vec<ValPoly> {
    let p = f.p();
    let n = f.coeffs().len();
    let tri = pascal(n, p);
    (0..n)
        .map(|i| {
            let cs = (i..n).map(|j| f.coeffs()[j].scale(tri[j][i])).collect();
            ValPoly::new(p, cs)
        })
        .collect()
}

pub fn horner(f: &ValPoly, x: &Series) -> Series {
    let mut acc = Series::zero(f.p());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul_series(x).add_series(c);
    }
    acc
}

/// `v_p(C(p^t·r, p^t))` as the number of carries when adding `p^t` and
/// `p^t·(r − 1)` in base p.
pub fn kummer(p: u64, t: u32, r: u64) -> u32 {
    let (mut a, mut b) = (p.pow(t), p.pow(t) * (r - 1));
    let (mut carry, mut carries) = (0, 0);
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    carries
}

/// Whether the denominator of `e` is a power of p.
pub fn in_p_power_ground(e: &Q, p: u64) -> bool {
    let mut d = e.denom().clone();
    let pb = num_bigint::BigInt::from(p);
    while (&d % &pb).is_zero() {
        d /= &pb;
    }
    d.is_one()
}

pub fn ground_part(a: &Series) -> Series {
    let p = a.p();
    let terms = a.terms().iter().filter(|(e, _)| in_p_power_ground(e, p)).cloned();
    Series::from_terms(p, terms, GroupValue::Infinity)
}

/// `χ_σ(d)` from the leading term: `σ` scales `t^e` by `ζ^{k·m}` where
/// `e − m/n ∈ ℤ[1/p]`.
pub fn chi(g: &TameCyclic, sigma: GaloisElem, d: &Series) -> Result<ResidueElem, String> {
    let (e, _) = d.leading().ok_or("no leading term")?;
    let n = g.n();
    let m = (0..n)
        .find(|&m| in_p_power_ground(&(e - q(m as i64, n as i64)), g.p()))
        .ok_or_else(|| format!("exponent {e} outside the tame domain"))?;
    Ok(g.zeta().pow(sigma.exponent() * m % n))
}

/// The order obtained by evaluating every item at each γ, or `None` when two
/// items tie or the order changes between samples.
pub fn sampled_order(items: &[AffineItem], cut: &Cut) -> Option<Vec<i64>> {
    let gammas = admissible_gammas(items, cut);
    let mut seen: Option<Vec<i64>> = None;
    for g in &gammas {
        let mut vals: Vec<(GroupValue, i64)> = items.iter().map(|it| (it.value_at(g), it.index)).collect();
        vals.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let finite: Vec<&GroupValue> = vals.iter().map(|(v, _)| v).filter(|v| v.is_finite()).collect();
        if finite.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let order: Vec<i64> = vals.into_iter().map(|(_, i)| i).collect();
        match &seen {
            Some(o) if *o != order => return None,
            _ => seen = Some(order),
        }
    }
    seen
}

/// Five values of γ in the cut, all above every pairwise crossing that lies
/// in the cut.
pub fn admissible_gammas(items: &[AffineItem], cut: &Cut) -> Vec<Q> {
    let finite: Vec<(&Q, i64)> = items.iter().filter_map(|it| it.intercept.finite().map(|a| (a, it.slope))).collect();
    let mut crossings = Vec::new();
    for (i, (a, s)) in finite.iter().enumerate() {
        for (b, u) in &finite[i + 1..] {
            crossings.push((*b - *a) / qi(s - u));
        }
    }
    let inside = |c: &Q| match cut {
        Cut::PlusInfinity => true,
        Cut::Principal { boundary, side: CutSide::StrictlyBelow } => c < boundary,
        Cut::Principal { boundary, side: CutSide::BelowOrEqual } => c <= boundary,
    };
    let top = crossings.into_iter().filter(|c| inside(c)).max();
    match cut {
        Cut::PlusInfinity => {
            let base = top.unwrap_or_else(Q::zero);
            (1..=5).map(|k| &base + qi(k * 7)).collect()
        }
        Cut::Principal { boundary, side } => {
            let lo = top.unwrap_or_else(|| boundary - qi(3));
            let width = boundary - &lo;
            let mut out: Vec<Q> = (1..=5).map(|k| boundary - &width / qi(1 << (2 * k))).collect();
            if *side == CutSide::BelowOrEqual {
                out[4] = boundary.clone();
            }
            out
        }
    }
}

/// `v(f(x) − f(c))` by direct evaluation below `cap`, `None` when every
/// term of the difference lies at or above `cap`.
pub fn increment_value(f: &ValPoly, x: &Series, c: &Series, cap: &GroupValue) -> Option<Q> {
    let d = f.eval_capped(x, cap).sub_series(&f.eval_capped(c, cap));
    d.leading().map(|(e, _)| e.clone())
}

/// Checks `v(f(x) − f(c_n)) = β + h·v(x − c_n)` on the last `count`
/// approximants by evaluating `f` directly. The target is replaced by its
/// exact known part, which has the same approximants; evaluating at a series
/// with finite precision would lose the `h`-fold gain that the law describes.
pub fn tail_law(ty: &hahnval::ApproxType, f: &ValPoly, h: u64, beta: &Q, count: usize) -> Result<(), String> {
    let x = ty.target().known_part();
    for n in ty.len().saturating_sub(count)..ty.len() {
        let predicted = beta + ty.gap(n) * qi(h as i64);
        let cap = GroupValue::Finite(&predicted + q(1, 1 << 30));
        let v = increment_value(f, &x, ty.point(n), &cap);
        if v.as_ref() != Some(&predicted) {
            return Err(format!("n = {n}: direct v(f(x) − f(c_n)) = {v:?}, law gives {predicted}"));
        }
    }
    Ok(())
}

pub fn is_power_of(h: u64, p: u64) -> bool {
    let mut h = h;
    while h > 1 && h % p == 0 {
        h /= p;
    }
    h == 1
}

/// `(Z − r)^h` mod p, constant term first.
pub fn root_power(r: u64, h: usize, p: u64) -> Vec<u64> {
    let tri = pascal(h, p);
    (0..=h)
        .map(|k| {
            let sign_pow = (h - k) as u32;
            let mut c = tri[h][k] * mod_pow((p - r % p) % p, sign_pow as u64, p) % p;
            if h == 0 {
                c = 1;
            }
            c
        })
        .collect()
}

pub fn mod_pow(b: u64, e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    for _ in 0..e {
        r = r * b % p;
    }
    r
}

/// Roots in `𝔽_p` counted with multiplicity through repeated synthetic division.
pub fn multiplicity(coeffs: &[u64], r: u64, p: u64) -> usize {
    let mut cur: Vec<u64> = coeffs.to_vec();
    while cur.len() > 1 && cur.last() == Some(&0) {
        cur.pop();
    }
    let mut m = 0;
    loop {
        if cur.len() < 2 {
            return m;
        }
        let mut quot = vec![0u64; cur.len() - 1];
        let mut carry = 0u64;
        for k in (1..cur.len()).rev() {
            carry = (cur[k] + carry * r) % p;
            quot[k - 1] = carry;
        }
        if (cur[0] + carry * r) % p != 0 {
            return m;
        }
        cur = quot;
        m += 1;
    }
}

/// The support value set `{v(x − c_n)}` for an increasing sequence with a
/// declared limit gives the cut `(<limit)`.
pub fn cut_of_increasing(values: &[Q], limit: &Q) -> Option<Cut> {
    let increasing = values.windows(2).all(|w| w[0] < w[1]);
    let below = values.iter().all(|v| v < limit);
    (increasing && below).then(|| Cut::below(limit.clone()))
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}
