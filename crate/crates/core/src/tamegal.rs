//! Tame cyclic extensions `L = K(s)`, `s^n = t` with `n | p − 1`, acting on
//! series whose exponents lie in `(1/n)·ℤ[1/p]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::apprtype::{ApproxType, Settings};
use crate::error::{Error, Result};
use crate::hahn::{is_prime, mul_mod, pow_mod, ResidueElem, Series};
use crate::ordval::{fmt_q, GroupValue, Q};
use crate::reldeg::{approx_coefficient, combine_same_degree, h_of_element, ElementProxy};
use crate::valpoly::ValPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TameCyclic {
    p: u64,
    n: u64,
    zeta: ResidueElem,
}

/// `σ_k: s ↦ ζ^k·s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisElem {
    k: u64,
    n: u64,
}

impl GaloisElem {
    pub fn exponent(self) -> u64 {
        self.k
    }

    pub fn is_identity(self) -> bool {
        self.k == 0
    }

    /// `self ∘ other`.
    pub fn compose(self, other: GaloisElem) -> GaloisElem {
        GaloisElem { k: (self.k + other.k) % self.n, n: self.n }
    }

    pub fn pow(self, e: u64) -> GaloisElem {
        GaloisElem { k: mul_mod(self.k, e % self.n, self.n), n: self.n }
    }
}

fn order(z: u64, p: u64) -> u64 {
    let mut k = 1;
    let mut acc = z % p;
    while acc != 1 {
        acc = mul_mod(acc, z, p);
        k += 1;
    }
    k
}

impl TameCyclic {
    /// Uses the least primitive `n`-th root of unity in `𝔽_p`.
    pub fn new(p: u64, n: u64) -> Result<Self> {
        Self::check(p, n)?;
        let z = (1..p).find(|&z| order(z, p) == n).expect("n divides p − 1");
        Ok(TameCyclic { p, n, zeta: ResidueElem::from_u64(z, p) })
    }

    pub fn with_zeta(p: u64, n: u64, zeta: u64) -> Result<Self> {
        Self::check(p, n)?;
        if zeta % p == 0 || order(zeta, p) != n {
            return Err(Error::Precondition(format!("{zeta} is not a primitive {n}-th root of unity mod {p}")));
        }
        Ok(TameCyclic { p, n, zeta: ResidueElem::from_u64(zeta, p) })
    }

    fn check(p: u64, n: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if n == 0 || (p - 1) % n != 0 {
            return Err(Error::Precondition(format!("{n} does not divide {p} − 1")));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn zeta(&self) -> ResidueElem {
        self.zeta
    }

    /// `s = t^(1/n)`.
    pub fn s(&self) -> Series {
        Series::t_pow(self.p, Q::new(BigInt::one(), BigInt::from(self.n)))
    }

    pub fn s_pow(&self, m: u64) -> Series {
        Series::t_pow(self.p, Q::new(BigInt::from(m), BigInt::from(self.n)))
    }

    pub fn elem(&self, k: u64) -> GaloisElem {
        GaloisElem { k: k % self.n, n: self.n }
    }

    pub fn identity(&self) -> GaloisElem {
        self.elem(0)
    }

    pub fn generator(&self) -> GaloisElem {
        self.elem(1)
    }

    pub fn elements(&self) -> Vec<GaloisElem> {
        (0..self.n).map(|k| self.elem(k)).collect()
    }

    /// `m mod n` with `e − m/n ∈ ℤ[1/p]`.
    pub fn exponent_class(&self, e: &Q) -> Result<u64> {
        let mut den = e.denom().clone();
        let pb = BigInt::from(self.p);
        let mut pk = BigInt::one();
        while (&den % &pb).is_zero() {
            den /= &pb;
            pk *= &pb;
        }
        let n = BigInt::from(self.n);
        if !(&n % &den).is_zero() {
            return Err(Error::ExponentDomain(format!(
                "exponent {} has denominator outside (1/{})·ℤ[1/{}]",
                fmt_q(e),
                self.n,
                self.p
            )));
        }
        // e·n·p^K is an integer; p ≡ 1 mod n makes the p-part irrelevant.
        let scaled = e.numer() * (&n / &den);
        Ok(scaled.mod_floor(&n).try_into().expect("reduced mod n"))
    }

    pub fn apply(&self, sigma: GaloisElem, a: &Series) -> Result<Series> {
        let classes = a
            .terms()
            .iter()
            .map(|(e, _)| self.exponent_class(e))
            .collect::<Result<Vec<_>>>()?;
        let mut it = classes.into_iter();
        let z = self.zeta.value();
        Ok(a.map_coeffs(|_, c| {
            let m = it.next().expect("one class per term");
            mul_mod(c, pow_mod(z, mul_mod(sigma.k, m, self.n), self.p), self.p)
        }))
    }

    /// `χ_σ(d)`, the residue of `σ(d)/d`.
    pub fn chi(&self, sigma: GaloisElem, d: &Series) -> Result<ResidueElem> {
        let vd = d.val()?.expect_finite("v(d)")?;
        let target = GroupValue::min(&GroupValue::Finite(vd + Q::one()), d.precision());
        let inv = d.invert(&target)?;
        self.apply(sigma, d)?.mul_series(&inv).residue()
    }

    /// `χ_{στ}(d) = χ_σ(τd)·χ_τ(d)`.
    pub fn crossed_hom_check(&self, sigma: GaloisElem, tau: GaloisElem, d: &Series) -> Result<bool> {
        let lhs = self.chi(sigma.compose(tau), d)?;
        let rhs = self.chi(sigma, &self.apply(tau, d)?)? * self.chi(tau, d)?;
        Ok(lhs == rhs)
    }

    /// Elements `σ` with `χ_σ(s^m) = 1` for every `m < n`.
    pub fn character_kernel(&self) -> Result<Vec<GaloisElem>> {
        let mut out = Vec::new();
        for sigma in self.elements() {
            let mut all = true;
            for m in 0..self.n {
                if self.chi(sigma, &self.s_pow(m))? != ResidueElem::one(self.p) {
                    all = false;
                    break;
                }
            }
            if all {
                out.push(sigma);
            }
        }
        Ok(out)
    }

    fn candidates(&self) -> Vec<Series> {
        let mut out: Vec<Series> = (0..self.n).map(|k| self.s_pow(k)).collect();
        for j in 0..self.n {
            for k in j + 1..self.n {
                for c in 1..self.p {
                    out.push(self.s_pow(j).add_series(&self.s_pow(k).scale(c)));
                }
            }
        }
        out
    }

    /// A `d` with `v Σ σ_i(d)·d_i = min_i v(σ_i(d)·d_i)`.
    pub fn valuation_independence_witness(&self, sigmas: &[GaloisElem], ds: &[Series]) -> Result<Witness> {
        if sigmas.is_empty() || sigmas.len() != ds.len() {
            return Err(Error::Precondition("need matching nonempty σ and d lists".into()));
        }
        let mut sorted = sigmas.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("σ_i must be pairwise distinct".into()));
        }
        let mut residues = Vec::with_capacity(ds.len());
        for d in ds {
            if d.val()? != GroupValue::zero() {
                return Err(Error::Precondition("every d_i must have value 0".into()));
            }
            residues.push(d.residue()?);
        }
        let mut tried = 0;
        for d in self.candidates() {
            tried += 1;
            let mut sum = ResidueElem::zero(self.p);
            for (sigma, r) in sigmas.iter().zip(&residues) {
                sum = sum + *r * self.chi(*sigma, &d)?;
            }
            if sum.is_zero() {
                continue;
            }
            let mut total = Series::zero(self.p);
            let mut min = GroupValue::Infinity;
            for (sigma, di) in sigmas.iter().zip(ds) {
                let term = self.apply(*sigma, &d)?.mul_series(di);
                min = GroupValue::min(&min, &term.val()?);
                total = total.add_series(&term);
            }
            let v = total.val()?;
            if v != min {
                return Err(Error::Inconsistency(format!(
                    "residue sum {sum} ≠ 0 but v Σ σ_i(d)d_i = {v} ≠ {min}"
                )));
            }
            return Ok(Witness { d, residue_sum: sum, value: v, candidates_tried: tried });
        }
        Err(Error::WitnessSearchFailed)
    }

    /// `a = Σ c_i s^i` with `c_i` over `ℤ[1/p]` exponents; `c_0` is a best
    /// approximation of `a` from the ground.
    pub fn standard_basis_decompose(&self, a: &Series) -> Result<Decomposition> {
        let mut parts: Vec<Vec<(Q, u64)>> = vec![Vec::new(); self.n as usize];
        for (e, c) in a.terms() {
            let m = self.exponent_class(e)?;
            let shift = Q::new(BigInt::from(m), BigInt::from(self.n));
            parts[m as usize].push((e - shift, *c));
        }
        let components: Vec<Series> = parts
            .into_iter()
            .enumerate()
            .map(|(m, terms)| {
                let shift = Q::new(BigInt::from(m as u64), BigInt::from(self.n));
                Series::from_terms(self.p, terms, a.precision() - &shift)
            })
            .collect();
        let rest = a.sub_series(&components[0]);
        let best_value = match rest.val() {
            Ok(v) => crate::apprtype::ValueBound::Exact(v),
            Err(_) => crate::apprtype::ValueBound::AtLeast(rest.precision().clone()),
        };
        Ok(Decomposition { components, best_value })
    }

    pub fn recompose(&self, d: &Decomposition) -> Series {
        let mut acc = Series::zero(self.p);
        for (m, c) in d.components.iter().enumerate() {
            acc = acc.add_series(&c.mul_series(&self.s_pow(m as u64)));
        }
        acc
    }

    /// `Tr(d·x) = Σ_k ρ_k(d)·ρ_k(x)`.
    pub fn trace_generator(&self, x: &Series, d: &Series) -> Result<Series> {
        let mut acc = Series::zero(self.p);
        for sigma in self.elements() {
            acc = acc.add_series(&self.apply(sigma, d)?.mul_series(&self.apply(sigma, x)?));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub d: Series,
    pub residue_sum: ResidueElem,
    /// `v Σ σ_i(d)·d_i`.
    pub value: GroupValue,
    pub candidates_tried: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `c_0, …, c_{n−1}`.
    pub components: Vec<Series>,
    /// `v(a − c_0)`.
    pub best_value: crate::apprtype::ValueBound,
}

impl Decomposition {
    pub fn best(&self) -> &Series {
        &self.components[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub coefficients: Vec<Series>,
    pub witness: Witness,
    pub trace: Series,
    pub proxy: ValPoly,
    /// `h_K(x : Tr(d·x))` through the element proxy.
    pub h: u64,
    /// The same degree through the linear-combination rule.
    pub h_combined: u64,
}

/// Pulls `x` down by a trace: each conjugate `σ(x)` is given as a polynomial
/// in `x`, its approximation coefficient feeds the witness search, and the
/// resulting `Tr(d·x)` is checked to have relative degree 1.
pub fn trace_pull_down(
    g: &TameCyclic,
    ty: &ApproxType,
    conjugates: &[(GaloisElem, ValPoly)],
    settings: &Settings,
) -> Result<TraceReport> {
    let x = ty.target();
    let mut sigmas = Vec::new();
    let mut coefficients = Vec::new();
    for (sigma, f) in conjugates {
        let direct = g.apply(*sigma, x)?;
        let via_poly = f.eval(x);
        let diff = direct.sub_series(&via_poly);
        if !diff.has_no_terms() {
            return Err(Error::Precondition(format!(
                "polynomial for σ_{} does not reproduce the conjugate",
                sigma.exponent()
            )));
        }
        coefficients.push(approx_coefficient(ty, f, settings)?.d);
        sigmas.push(*sigma);
    }
    let witness = g.valuation_independence_witness(&sigmas, &coefficients)?;
    let trace = g.trace_generator(x, &witness.d)?;
    let mut proxy = ValPoly::zero(g.p());
    let mut ks = Vec::new();
    let mut proxies = Vec::new();
    for (sigma, f) in conjugates {
        let k = g.apply(*sigma, &witness.d)?;
        proxy = proxy.add(&f.scale(&k));
        ks.push(k);
        proxies.push(ElementProxy::exact(f.clone()));
    }
    if !trace.sub_series(&proxy.eval(x)).has_no_terms() {
        return Err(Error::Inconsistency("trace disagrees with its polynomial proxy".into()));
    }
    let h = h_of_element(ty, &ElementProxy::exact(proxy.clone()), settings)?.h;
    let h_combined = combine_same_degree(ty, &proxies, &ks, &coefficients, settings)?.h;
    Ok(TraceReport { coefficients, witness, trace, proxy, h, h_combined })
}
