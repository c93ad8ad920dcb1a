//! Truncated formal Laurent series over the rationals.
//!
//! A [`LaurentSeries`] stores the coefficients of `X^lower ..= X^order`
//! densely. Everything below `lower` is zero; everything above `order` is
//! unknown. Operations only ever report coefficients that are fully determined
//! by the known coefficients of their inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    lower: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Series with `coeffs[i]` at `X^(lower + i)`, exact through the last
    /// supplied index.
    pub fn new(lower: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("a series needs at least one known coefficient"));
        }
        Ok(Self::normalized(lower, coeffs))
    }

    /// Like [`LaurentSeries::new`] but known through `order`, padding with
    /// zeros. Coefficients past `order` are dropped.
    pub fn with_order(lower: i64, mut coeffs: Vec<Rational>, order: i64) -> Result<Self> {
        if order < lower {
            return Err(invalid(format!("order {order} below lower index {lower}")));
        }
        coeffs.resize((order - lower + 1) as usize, Rational::zero());
        Ok(Self::normalized(lower, coeffs))
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(lower: i64, coeffs: &[i64], order: i64) -> Result<Self> {
        let coeffs = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        Self::with_order(lower, coeffs, order)
    }

    pub fn zero(order: i64) -> Self {
        Self::normalized(order, vec![Rational::zero()])
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(0, Rational::one(), order)
    }

    /// `c X^n`, known through `order` (which must be at least `n`).
    pub fn monomial(n: i64, c: Rational, order: i64) -> Self {
        let mut coeffs = vec![Rational::zero(); (order - n + 1).max(1) as usize];
        coeffs[0] = c;
        Self::normalized(n, coeffs)
    }

    // Leading zeros are absorbed into `lower`; an all-zero window collapses to
    // `lower = 0` when the window reaches index 0.
    fn normalized(lower: i64, coeffs: Vec<Rational>) -> Self {
        let order = lower + coeffs.len() as i64 - 1;
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => Self { lower, coeffs },
            Some(skip) => Self {
                lower: lower + skip as i64,
                coeffs: coeffs[skip..].to_vec(),
            },
            None => {
                let lower = order.min(0);
                Self {
                    lower,
                    coeffs: vec![Rational::zero(); (order - lower + 1) as usize],
                }
            }
        }
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn order(&self) -> i64 {
        self.lower + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The coefficient at `lower`, zero only for the zero series.
    pub fn leading_coefficient(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// `(index, coefficient)` pairs over the known window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lower + i as i64, c))
    }

    /// Exact coefficient of `X^n`; indices outside the window are an error.
    pub fn coefficient(&self, n: i64) -> Result<Rational> {
        if n < self.lower || n > self.order() {
            return Err(Error::OutOfRange {
                index: n,
                lower: self.lower,
                order: self.order(),
            });
        }
        Ok(self.coeffs[(n - self.lower) as usize].clone())
    }

    /// Forgets every coefficient past `order`.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.order() {
            return Err(invalid(format!(
                "cannot extend a series known through {} to order {order}",
                self.order()
            )));
        }
        if order < self.lower {
            return Ok(Self::zero(order));
        }
        Ok(Self::normalized(self.lower, self.coeffs[..(order - self.lower + 1) as usize].to_vec()))
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lower: self.lower + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.lower, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Coefficientwise map `c_n -> c_n * s^n`, i.e. the substitution `X -> sX`.
    pub fn substitute_scaled(&self, s: &Rational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut factor = pow_signed(s, self.lower);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &factor;
                factor *= s;
                v
            })
            .collect();
        Ok(Self::normalized(self.lower, coeffs))
    }

    /// Product truncated to `min(f.order + g.lower, g.order + f.lower)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let lower = self.lower + other.lower;
        let coeffs = truncated_product(&self.coeffs, &other.coeffs, len);
        Self::normalized(lower, coeffs)
    }

    /// `self^k` for `k >= 1` by binary exponentiation.
    pub fn power(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(invalid(format!("power exponent must be positive, got {k}")));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.multiply(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        Ok(result.expect("k >= 1"))
    }

    /// Multiplicative inverse. For `g = X^b (g_0 + ...)` known through `M`, the
    /// inverse is known through `M - 2b`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = &self.coeffs;
        let inv0 = g[0].recip();
        let mut r: Vec<Rational> = Vec::with_capacity(g.len());
        r.push(inv0.clone());
        for n in 1..g.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !g[k].is_zero() {
                    acc += &g[k] * &r[n - k];
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(Self::normalized(-self.lower, r))
    }

    /// `self / other`, known through `min(f.order - b, g.order - 2b + f.lower)`
    /// where `b = g.lower`.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        Ok(self.multiply(&other.reciprocal()?))
    }

    /// `sum f^j / j!` for a series with no constant or principal part.
    pub fn exponential(&self) -> Result<Self> {
        let order = self.order();
        if self.is_zero() {
            return Ok(Self::one(order.max(0)));
        }
        if self.lower < 1 {
            return Err(invalid("exponential needs a series with lower index at least 1"));
        }
        if order < 0 {
            return Err(invalid("exponential of a series known only below index 0"));
        }
        // n E_n = sum_{k=1..n} k f_k E_{n-k}
        let f = |k: i64| -> Option<&Rational> {
            if k < self.lower {
                None
            } else {
                Some(&self.coeffs[(k - self.lower) as usize])
            }
        };
        let mut e: Vec<Rational> = vec![Rational::one()];
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in self.lower..=n {
                if let Some(fk) = f(k) {
                    if !fk.is_zero() {
                        acc += fk * Rational::from_integer(k.into()) * &e[(n - k) as usize];
                    }
                }
            }
            e.push(acc / Rational::from_integer(n.into()));
        }
        Ok(Self::normalized(0, e))
    }

    /// Compositional inverse of a series `X + f_2 X^2 + ...`, via Lagrange
    /// inversion: `[X^n] g = (1/n) [X^(n-1)] (X/f)^n`.
    pub fn revert(&self) -> Result<Self> {
        if self.lower != 1 || !self.coeffs[0].is_one() {
            return Err(invalid("reversion needs a series of the form X + O(X^2)"));
        }
        let n_max = self.coeffs.len();
        // X/f as a power series with n_max known coefficients.
        let phi = Self::normalized(0, self.coeffs.clone()).reciprocal()?.coeffs;
        let mut out = Vec::with_capacity(n_max);
        let mut pow = phi.clone();
        for n in 1..=n_max {
            if n > 1 {
                pow = truncated_product(&pow, &phi, n_max);
            }
            out.push(&pow[n - 1] / Rational::from_integer(BigInt::from(n)));
        }
        Ok(Self::normalized(1, out))
    }
}

/// Raises to a possibly negative integer power; `s` must be nonzero when
/// `e < 0`.
fn pow_signed(s: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(s.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Brings rationals to a common denominator: `(numerators, denominator)`.
fn common_denominator(xs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (nums, den)
}

/// First `len` coefficients of the Cauchy product. Works on integer
/// numerators over a common denominator so that only `len` reductions happen.
fn truncated_product(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let (na, da) = common_denominator(&a[..len.min(a.len())]);
    let (nb, db) = common_denominator(&b[..len.min(b.len())]);
    let den = da * db;
    (0..len)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..=i {
                if j < na.len() && i - j < nb.len() {
                    let (x, y) = (&na[j], &nb[i - j]);
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
            }
            Rational::new(acc, den.clone())
        })
        .collect()
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            lower: self.lower,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    /// Sum, known through the smaller of the two orders.
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order().min(rhs.order());
        let lower = self.lower.min(rhs.lower).min(order);
        let coeffs = (lower..=order)
            .map(|n| {
                let pick = |s: &LaurentSeries| s.coefficient(n).unwrap_or_else(|_| Rational::zero());
                pick(self) + pick(rhs)
            })
            .collect();
        LaurentSeries::normalized(lower, coeffs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.multiply(rhs)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(X^{})", self.order() + 1)
    }
}
