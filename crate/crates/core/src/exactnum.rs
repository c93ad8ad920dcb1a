//! Exact numbers and the number-theoretic helpers the divisibility checks are
//! phrased in.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{invalid, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Exponent of a prime in a rational number; `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PAdicOrder {
    Finite(i64),
    Infinite,
}

impl PAdicOrder {
    pub fn finite(self) -> Option<i64> {
        match self {
            PAdicOrder::Finite(v) => Some(v),
            PAdicOrder::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == PAdicOrder::Infinite
    }
}

impl From<i64> for PAdicOrder {
    fn from(v: i64) -> Self {
        PAdicOrder::Finite(v)
    }
}

impl Add for PAdicOrder {
    type Output = PAdicOrder;

    fn add(self, rhs: PAdicOrder) -> PAdicOrder {
        match (self, rhs) {
            (PAdicOrder::Finite(a), PAdicOrder::Finite(b)) => PAdicOrder::Finite(a + b),
            _ => PAdicOrder::Infinite,
        }
    }
}

impl Add<i64> for PAdicOrder {
    type Output = PAdicOrder;

    fn add(self, rhs: i64) -> PAdicOrder {
        self + PAdicOrder::Finite(rhs)
    }
}

impl Sub<i64> for PAdicOrder {
    type Output = PAdicOrder;

    fn sub(self, rhs: i64) -> PAdicOrder {
        self + PAdicOrder::Finite(-rhs)
    }
}

impl fmt::Display for PAdicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicOrder::Finite(v) => write!(f, "{v}"),
            PAdicOrder::Infinite => f.write_str("inf"),
        }
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("{p} is not a prime")))
    }
}

/// Strips all factors of `p` from `n` in place and returns how many there were.
fn strip_prime(n: &mut BigUint, p: &BigUint) -> i64 {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

/// p-adic order of an integer.
pub fn ord_p_int(n: &BigInt, p: u64) -> Result<PAdicOrder> {
    check_prime(p)?;
    if n.is_zero() {
        return Ok(PAdicOrder::Infinite);
    }
    let mut mag = n.magnitude().clone();
    Ok(PAdicOrder::Finite(strip_prime(&mut mag, &BigUint::from(p))))
}

/// p-adic order of a rational: the `e` with `x = p^e * u/v`, `p` dividing
/// neither `u` nor `v`.
pub fn ord_p(x: &Rational, p: u64) -> Result<PAdicOrder> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(PAdicOrder::Infinite);
    }
    let prime = BigUint::from(p);
    let mut num = x.numer().abs().magnitude().clone();
    let mut den = x.denom().magnitude().clone();
    // Reduced form: at most one of these is nonzero.
    Ok(PAdicOrder::Finite(
        strip_prime(&mut num, &prime) - strip_prime(&mut den, &prime),
    ))
}

/// Sum of the base-`b` digits of `n`.
pub fn digit_sum(n: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(invalid(format!("digit base must be at least 2, got {b}")));
    }
    let mut n = n;
    let mut sum = 0;
    while n > 0 {
        sum += n % b;
        n /= b;
    }
    Ok(sum)
}

/// `C_n = (2n)! / ((n+1)! n!)`, evaluated as a running binomial product.
pub fn catalan(n: u32) -> BigUint {
    // binom(2n, n) = prod_{i=1..n} (n+i)/i, exact at every step.
    let n64 = u64::from(n);
    let mut binom = BigUint::one();
    for i in 1..=n64 {
        binom *= n64 + i;
        binom /= i;
    }
    binom / (n64 + 1)
}

/// The `n`-th (1-indexed) Catalan number among `C_1, C_2, ...` whose 2-adic
/// order is exactly 1, together with its position in the Catalan sequence.
pub fn catalan_ord2_one_indexed(n: u32) -> Result<(u32, BigUint)> {
    if n == 0 {
        return Err(invalid("catalan_ord2_one is 1-indexed"));
    }
    let two = BigUint::from(2u32);
    let mut seen = 0;
    let mut index = 0u32;
    loop {
        index += 1;
        let c = catalan(index);
        let mut mag = c.clone();
        if strip_prime(&mut mag, &two) == 1 {
            seen += 1;
            if seen == n {
                return Ok((index, c));
            }
        }
    }
}

/// The `n`-th (1-indexed) Catalan number `c != C_0` with `ord_2(c) = 1`.
pub fn catalan_ord2_one(n: u32) -> Result<BigUint> {
    catalan_ord2_one_indexed(n).map(|(_, c)| c)
}

/// Position of `k` among the positive integers with binary digit sum `weight`
/// (1-indexed), or `None` when `k` itself has a different digit sum.
pub fn position_with_binary_weight(k: u64, weight: u32) -> Option<u32> {
    if k == 0 || k.count_ones() != weight {
        return None;
    }
    Some((1..=k).filter(|i| i.count_ones() == weight).count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_p(&integer(744), 2).unwrap(), PAdicOrder::Finite(3));
        assert_eq!(ord_p(&integer(1), 3).unwrap(), PAdicOrder::Finite(0));
        assert_eq!(ord_p(&rational(31, 72), 3).unwrap(), PAdicOrder::Finite(-2));
        assert_eq!(ord_p(&rational(31, 72), 2).unwrap(), PAdicOrder::Finite(-3));
        assert_eq!(ord_p(&rational(-1664, 1), 2).unwrap(), PAdicOrder::Finite(7));
        assert_eq!(ord_p(&Rational::zero(), 5).unwrap(), PAdicOrder::Infinite);
    }

    #[test]
    fn ord_rejects_non_primes() {
        assert!(ord_p(&integer(8), 4).is_err());
        assert!(ord_p(&integer(8), 1).is_err());
        assert!(ord_p(&integer(8), 0).is_err());
        assert!(ord_p_int(&BigInt::from(8), 9).is_err());
    }

    #[test]
    fn infinite_order_arithmetic() {
        assert_eq!(PAdicOrder::Infinite + 3, PAdicOrder::Infinite);
        assert_eq!(PAdicOrder::Finite(2) - 5, PAdicOrder::Finite(-3));
        assert_eq!(PAdicOrder::Infinite.to_string(), "inf");
        assert!(PAdicOrder::Finite(i64::MAX) < PAdicOrder::Infinite);
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(0, 2).unwrap(), 0);
        assert_eq!(digit_sum(3, 2).unwrap(), 2);
        assert_eq!(digit_sum(2488, 10).unwrap(), 22);
        assert_eq!(digit_sum(26, 3).unwrap(), 6);
        assert!(digit_sum(5, 1).is_err());
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(2), BigUint::from(2u32));
        assert_eq!(catalan(8), BigUint::from(1430u32));
        for n in 0..30 {
            let direct = factorial(2 * n) / (factorial(n + 1) * factorial(n));
            assert_eq!(catalan(n), direct, "n = {n}");
        }
    }

    #[test]
    fn catalan_ord2_one_examples() {
        assert_eq!(catalan_ord2_one(1).unwrap(), BigUint::from(2u32));
        assert_eq!(catalan_ord2_one(2).unwrap(), BigUint::from(14u32));
        assert_eq!(catalan_ord2_one(3).unwrap(), BigUint::from(42u32));
        assert_eq!(catalan_ord2_one_indexed(4).unwrap().0, 8);
        assert!(catalan_ord2_one(0).is_err());
    }

    #[test]
    fn binary_weight_positions() {
        let weight_two: Vec<_> = (1..=12u64)
            .filter_map(|k| position_with_binary_weight(k, 2).map(|n| (k, n)))
            .collect();
        assert_eq!(weight_two, vec![(3, 1), (5, 2), (6, 3), (9, 4), (10, 5), (12, 6)]);
        assert_eq!(position_with_binary_weight(7, 2), None);
    }

    proptest! {
        #[test]
        fn ord_is_additive(a in 1i64..100_000, b in 1i64..100_000, c in 1i64..100_000, d in 1i64..100_000,
                           p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            let x = rational(a, b);
            let y = rational(-c, d);
            let ox = ord_p(&x, p).unwrap().finite().unwrap();
            let oy = ord_p(&y, p).unwrap().finite().unwrap();
            prop_assert_eq!(ord_p(&(&x * &y), p).unwrap(), PAdicOrder::Finite(ox + oy));
            prop_assert_eq!(ord_p(&(&x / &y), p).unwrap(), PAdicOrder::Finite(ox - oy));
        }

        #[test]
        fn digit_sum_properties(n in 0u64..1_000_000_000, b in 2u64..40, j in 0u32..10) {
            let s = digit_sum(n, b).unwrap();
            prop_assert_eq!(s % (b - 1), n % (b - 1));
            prop_assert_eq!(digit_sum(b * n, b).unwrap(), s);
            prop_assert!(s <= n);
            prop_assert_eq!(digit_sum(b.pow(j), b).unwrap(), 1);
        }

        #[test]
        fn catalan_recurrence(n in 0u32..200) {
            prop_assert_eq!(catalan(n + 1) * (n + 2), catalan(n) * (4 * n + 2));
        }

        #[test]
        fn catalan_ord2_one_has_order_one(n in 1u32..12) {
            let (index, c) = catalan_ord2_one_indexed(n).unwrap();
            prop_assert!(index >= 1);
            prop_assert_eq!(ord_p_int(&BigInt::from(c), 2).unwrap(), PAdicOrder::Finite(1));
        }
    }
}
