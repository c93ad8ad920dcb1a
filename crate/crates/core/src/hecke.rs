//! Expansions of the Hecke triangle functions `J_m` at the cusp.
//!
//! `J_m` is realized through the hypergeometric equation with exponent
//! differences `0` (cusp), `1/2` and `1/m`: `c = 1`, `a + b = 1/2` and
//! `ab = 1/16 - 1/(4m^2)`. With `y1` the analytic Frobenius solution and
//! `y1 log t + h` the logarithmic one, the local uniformizer is
//! `q = t exp(h / y1)`. Reverting gives `t(q)`, and `J = 1/t` has leading
//! coefficient 1. Every quantity involved is rational, although `a` and `b`
//! themselves are not.
//!
//! The rescaled normalization `j_m` substitutes `X -> 64 m^3 X` and divides by
//! the new leading coefficient. For `m = 3` it is Klein's `j`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::{rational, Rational};
use crate::series::LaurentSeries;
use crate::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParameters {
    m: u32,
    scale: Rational,
    ab: Rational,
}

impl HeckeParameters {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(invalid(format!("Hecke index m must be at least 3, got {m}")));
        }
        let m3 = BigInt::from(m).pow(3);
        let scale = Rational::from_integer(m3 * 64);
        let ab = rational(1, 16) - Rational::new(1.into(), BigInt::from(4) * BigInt::from(m).pow(2));
        Ok(Self { m, scale, ab })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `s = 2^6 m^3`, the rescaling of the uniformizer.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// `ab = 1/16 - 1/(4m^2)`.
    pub fn ab(&self) -> &Rational {
        &self.ab
    }

    pub fn a_plus_b(&self) -> Rational {
        rational(1, 2)
    }
}

/// Frobenius data at the cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusTables {
    /// Coefficients `c_n` of the analytic solution `y1`.
    pub analytic: Vec<Rational>,
    /// Coefficients `e_n` of the non-logarithmic part of the second solution.
    pub log_partner: Vec<Rational>,
}

impl FrobeniusTables {
    pub fn order(&self) -> usize {
        self.analytic.len() - 1
    }
}

/// Tables through index `order`:
///
/// ```text
/// u_n     = ab + n/2 + n^2
/// c_{n+1} = c_n u_n / (n+1)^2
/// e_{n+1} = c_{n+1} * sum_{k=0..n} ((1/2 + 2k)/u_k - 2/(k+1))
/// ```
pub fn frobenius_tables(params: &HeckeParameters, order: usize) -> Result<FrobeniusTables> {
    if order < 2 {
        return Err(invalid("Frobenius tables need order at least 2"));
    }
    let half = rational(1, 2);
    let mut analytic = vec![Rational::from_integer(1.into())];
    let mut log_partner = vec![Rational::zero()];
    let mut harmonic = Rational::zero();
    for n in 0..order as i64 {
        let nr = Rational::from_integer(n.into());
        let u = params.ab() + &half * &nr + &nr * &nr;
        let c_next = analytic[n as usize].clone() * &u / Rational::from_integer(((n + 1) * (n + 1)).into());
        harmonic += (&half + &nr * BigInt::from(2)) / &u - rational(2, n + 1);
        log_partner.push(&c_next * &harmonic);
        analytic.push(c_next);
    }
    Ok(FrobeniusTables { analytic, log_partner })
}

/// `q(t) = t exp(h(t) / y1(t))`, known through `t^order`.
pub fn nome_relation(params: &HeckeParameters, order: usize) -> Result<LaurentSeries> {
    if order < 2 {
        return Err(invalid("nome relation needs order at least 2"));
    }
    let tables = frobenius_tables(params, order.max(3) - 1)?;
    let known = order as i64 - 1;
    let y1 = LaurentSeries::with_order(0, tables.analytic, known)?;
    let h = LaurentSeries::with_order(0, tables.log_partner, known)?;
    Ok(h.divide(&y1)?.exponential()?.shift(1))
}

/// `J_m` and `j_m` known through `X^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalExpansion {
    pub m: u32,
    pub j: LaurentSeries,
    pub j_bar: LaurentSeries,
}

impl CanonicalExpansion {
    pub fn order(&self) -> i64 {
        self.j.order()
    }

    pub fn series(&self, family: Family) -> &LaurentSeries {
        match family {
            Family::K => &self.j,
            Family::KBar => &self.j_bar,
        }
    }

    pub fn truncate(&self, order: i64) -> Result<Self> {
        Ok(Self {
            m: self.m,
            j: self.j.truncate(order)?,
            j_bar: self.j_bar.truncate(order)?,
        })
    }

    /// Rebuilds an expansion from a stored `J` coefficient list.
    pub fn from_j(m: u32, j: LaurentSeries) -> Result<Self> {
        let params = HeckeParameters::new(m)?;
        let j_bar = bar_transform(&j, &params)?;
        Ok(Self { m, j, j_bar })
    }

    /// Coefficient of `X^n` in the `k`-th power of the chosen family member.
    pub fn power_coefficient(&self, family: Family, k: u32, n: i64) -> Result<Rational> {
        let f = self.series(family);
        // Each factor starts at X^-1, so J^k is known through order - (k - 1).
        let needed = n + i64::from(k) - 1;
        let f = f.truncate(needed.min(f.order()))?;
        f.power(i64::from(k))?.coefficient(n)
    }
}

pub fn canonical_expansion(m: u32, order: i64) -> Result<CanonicalExpansion> {
    let params = HeckeParameters::new(m)?;
    if order < 1 {
        return Err(invalid(format!("expansion order must be at least 1, got {order}")));
    }
    // t(q) known through q^(order+2) makes 1/t known through q^order.
    let q = nome_relation(&params, order as usize + 2)?;
    let t = q.revert()?;
    let j = t.reciprocal()?;
    debug_assert_eq!(j.order(), order);
    let j_bar = bar_transform(&j, &params)?;
    Ok(CanonicalExpansion { m, j, j_bar })
}

/// Substitutes `X -> sX` and divides by the new leading coefficient, so the
/// output has leading coefficient 1: `k_n s^n / (k_a s^a)`.
pub fn bar_transform(f: &LaurentSeries, params: &HeckeParameters) -> Result<LaurentSeries> {
    rescale_normalize(f, params.scale())
}

pub fn rescale_normalize(f: &LaurentSeries, scale: &Rational) -> Result<LaurentSeries> {
    if f.is_zero() {
        return Err(invalid("cannot normalize the zero series"));
    }
    let g = f.substitute_scaled(scale)?;
    let lead = g.leading_coefficient().clone();
    Ok(g.scale(&lead.recip()))
}

/// `K = {J_3, J_4, ...}`; `KBar = {j_3, j_4, ...}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    K,
    KBar,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::KBar => "Kbar",
        }
    }
}

/// Window used for constant terms of `k`-th powers: indices `-1..=k+1`.
pub fn constant_term_order(k: u32) -> i64 {
    i64::from(k) + 1
}

/// `A_{F,k,m}(0)`: the constant term of the `k`-th power.
pub fn constant_term(family: Family, k: u32, m: u32) -> Result<Rational> {
    constant_term_from(&DirectSource, family, k, m)
}

pub fn constant_term_from<S: ExpansionSource + ?Sized>(
    source: &S,
    family: Family,
    k: u32,
    m: u32,
) -> Result<Rational> {
    power_coefficient_from(source, family, k, m, 0)
}

/// `A_{F,k,m}(n)` for any `n >= -k`.
pub fn power_coefficient_from<S: ExpansionSource + ?Sized>(
    source: &S,
    family: Family,
    k: u32,
    m: u32,
    n: i64,
) -> Result<Rational> {
    if k == 0 {
        return Err(invalid("power exponent k must be positive"));
    }
    let order = constant_term_order(k).max(n + i64::from(k) + 1);
    source.expansion(m, order)?.power_coefficient(family, k, n)
}

/// Anything that can hand out canonical expansions: direct computation, an
/// in-memory memo, or a persistent cache.
pub trait ExpansionSource: Sync {
    /// An expansion known through at least `order`.
    fn expansion(&self, m: u32, order: i64) -> Result<CanonicalExpansion>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DirectSource;

impl ExpansionSource for DirectSource {
    fn expansion(&self, m: u32, order: i64) -> Result<CanonicalExpansion> {
        canonical_expansion(m, order.max(1))
    }
}

/// Keeps the longest expansion seen for each `m`.
#[derive(Debug, Default)]
pub struct Memoized<S> {
    inner: S,
    memo: Mutex<HashMap<u32, CanonicalExpansion>>,
}

impl<S: ExpansionSource> Memoized<S> {
    pub fn new(inner: S) -> Self {
        Self {
            inner,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl<S: ExpansionSource> ExpansionSource for Memoized<S> {
    fn expansion(&self, m: u32, order: i64) -> Result<CanonicalExpansion> {
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&m) {
            if hit.order() >= order {
                return Ok(hit.clone());
            }
        }
        let fresh = self.inner.expansion(m, order)?;
        let mut memo = self.memo.lock().expect("memo poisoned");
        let keep = memo.get(&m).is_none_or(|old| old.order() < fresh.order());
        if keep {
            memo.insert(m, fresh.clone());
        }
        Ok(fresh)
    }
}

impl<S: ExpansionSource + ?Sized> ExpansionSource for &S {
    fn expansion(&self, m: u32, order: i64) -> Result<CanonicalExpansion> {
        (**self).expansion(m, order)
    }
}
