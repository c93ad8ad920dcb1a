//! Exact interpolation of coefficient data across `m`.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::{invalid, Error, Result};

/// Dense polynomial over the rationals, constant term first, with no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || i == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree below `points.len()` through every point,
/// built from the Lagrange basis.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<RationalPolynomial> {
    if points.is_empty() {
        return Err(invalid("interpolation needs at least one point"));
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateAbscissa(xi.to_string()));
        }
    }
    let n = points.len();
    // W(x) = prod (x - x_j), constant term first.
    let mut w = vec![Rational::one()];
    for (xj, _) in points {
        let mut next = vec![Rational::zero(); w.len() + 1];
        for (i, c) in w.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * xj;
        }
        w = next;
    }
    let mut acc = vec![Rational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // W(x) / (x - x_i) by synthetic division from the top.
        let mut basis = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for d in (0..n).rev() {
            carry = &w[d + 1] + &carry * xi;
            basis[d] = carry.clone();
        }
        let denom = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Rational::one(), |acc, (_, (xj, _))| acc * (xi - xj));
        let weight = yi / denom;
        for (a, b) in acc.iter_mut().zip(&basis) {
            *a += b * &weight;
        }
    }
    Ok(RationalPolynomial::new(acc))
}

/// Outcome of [`stabilized_fit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedFit {
    pub polynomial: RationalPolynomial,
    /// Smallest `M` for which the windows `start..=M` and `start..=M+2`
    /// interpolate to the same polynomial.
    pub window_end: u32,
    pub samples: Vec<(u32, Rational)>,
}

pub const DEFAULT_STABILIZATION_CAP: u32 = 120;

/// Interpolates `sampler` over `m = start, start+1, ...` until two more
/// points leave the interpolant unchanged.
///
/// The interpolant grows in Newton form: adding points only appends divided
/// differences, so the windows ending at `M` and `M + 2` agree exactly when
/// the two new divided differences vanish.
pub fn stabilized_fit<F>(mut sampler: F, start: u32, cap: u32) -> Result<StabilizedFit>
where
    F: FnMut(u32) -> Result<Rational>,
{
    let mut xs: Vec<Rational> = Vec::new();
    let mut samples: Vec<(u32, Rational)> = Vec::new();
    let mut newton: Vec<Rational> = Vec::new();
    // Last row of the divided-difference table, f[x_i..x_last] for each i.
    let mut diagonal: Vec<Rational> = Vec::new();

    let mut m = start;
    while m <= cap.saturating_add(2) {
        let y = sampler(m)?;
        let x = Rational::from_integer(m.into());
        let mut row = Vec::with_capacity(diagonal.len() + 1);
        row.push(y.clone());
        for (j, prev) in diagonal.iter().enumerate() {
            let x_far = &xs[xs.len() - 1 - j];
            let d = (&row[j] - prev) / (&x - x_far);
            row.push(d);
        }
        newton.push(row.last().expect("row is nonempty").clone());
        diagonal = row;
        xs.push(x);
        samples.push((m, y));

        // newton[N] and newton[N+1] vanish for a window of N points.
        let len = newton.len();
        if len >= 3 && newton[len - 1].is_zero() && newton[len - 2].is_zero() {
            let points = len - 2;
            let window_end = start + points as u32 - 1;
            if window_end <= cap {
                samples.truncate(len);
                return Ok(StabilizedFit {
                    polynomial: newton_to_monomial(&newton[..points], &xs[..points]),
                    window_end,
                    samples,
                });
            }
        }
        m += 1;
    }
    Err(Error::StabilizationFailed { cap })
}

fn newton_to_monomial(coeffs: &[Rational], xs: &[Rational]) -> RationalPolynomial {
    // Horner on the nested form c_0 + (x - x_0)(c_1 + (x - x_1)(...)).
    let mut acc: Vec<Rational> = Vec::new();
    for i in (0..coeffs.len()).rev() {
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &xs[i];
        }
        next[0] += &coeffs[i];
        acc = next;
    }
    RationalPolynomial::new(acc)
}

/// `p = nu * monic_part` with `nu` the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub nu: Rational,
    pub monic_part: RationalPolynomial,
}

pub fn decompose(p: &RationalPolynomial) -> Result<Decomposition> {
    let nu = p
        .leading_coefficient()
        .cloned()
        .ok_or_else(|| invalid("cannot decompose the zero polynomial"))?;
    Ok(Decomposition {
        monic_part: p.scale(&nu.recip()),
        nu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{integer, rational};
    use proptest::prelude::*;

    fn pts(ps: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        ps.iter().map(|&(x, y)| (integer(x), integer(y))).collect()
    }

    fn j3_constant_poly() -> RationalPolynomial {
        RationalPolynomial::from_ints(&[0, 32, 0, 24])
    }

    #[test]
    fn interpolation_examples() {
        let p = lagrange_interpolate(&pts(&[(1, 1), (2, 4), (3, 9)])).unwrap();
        assert_eq!(p, RationalPolynomial::from_ints(&[0, 0, 1]));
        let p = lagrange_interpolate(&pts(&[(3, 744)])).unwrap();
        assert_eq!(p, RationalPolynomial::from_ints(&[744]));
        assert!(matches!(
            lagrange_interpolate(&pts(&[(1, 1), (1, 2)])),
            Err(Error::DuplicateAbscissa(_))
        ));
        assert!(lagrange_interpolate(&[]).is_err());
        let zero = lagrange_interpolate(&pts(&[(1, 0), (2, 0)])).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn stabilized_examples() {
        let cubic = j3_constant_poly();
        let fit = stabilized_fit(|m| Ok(cubic.evaluate(&integer(m))), 3, DEFAULT_STABILIZATION_CAP).unwrap();
        assert_eq!(fit.polynomial, cubic);
        // Four points pin the cubic; two more confirm it.
        assert_eq!(fit.window_end, 6);
        assert_eq!(fit.samples.last().unwrap().0, 8);

        let fit = stabilized_fit(|_| Ok(integer(7)), 3, DEFAULT_STABILIZATION_CAP).unwrap();
        assert_eq!(fit.polynomial, RationalPolynomial::from_ints(&[7]));
        assert_eq!(fit.window_end, 3);

        let err = stabilized_fit(|m| Ok(rational(1, m.into())), 3, DEFAULT_STABILIZATION_CAP);
        assert_eq!(err, Err(Error::StabilizationFailed { cap: 120 }));
    }

    #[test]
    fn stabilized_propagates_sampler_errors() {
        let err = stabilized_fit(|m| if m < 5 { Ok(integer(1)) } else { Err(invalid("boom")) }, 3, 20);
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&j3_constant_poly()).unwrap();
        assert_eq!(d.nu, integer(24));
        assert_eq!(d.monic_part.coefficients(), &[integer(0), rational(4, 3), integer(0), integer(1)]);
        let d = decompose(&RationalPolynomial::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(d.nu, integer(1));
        let d = decompose(&RationalPolynomial::from_ints(&[7])).unwrap();
        assert_eq!((d.nu, d.monic_part), (integer(7), RationalPolynomial::from_ints(&[1])));
        assert!(decompose(&RationalPolynomial::zero()).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(j3_constant_poly().evaluate(&integer(3)), integer(744));
        let monic = decompose(&j3_constant_poly()).unwrap().monic_part;
        assert_eq!(monic.evaluate(&integer(3)), integer(31));
        assert_eq!(j3_constant_poly().evaluate(&integer(4)), integer(1664));
    }

    #[test]
    fn display() {
        assert_eq!(j3_constant_poly().to_string(), "24x^3 + 32x");
        let monic = decompose(&j3_constant_poly()).unwrap().monic_part;
        assert_eq!(monic.to_string(), "x^3 + (4/3)x");
        assert_eq!(RationalPolynomial::from_ints(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = RationalPolynomial> {
        prop::collection::vec((-50i64..50, 1i64..8), 0..8)
            .prop_map(|cs| RationalPolynomial::new(cs.into_iter().map(|(n, d)| rational(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn interpolant_reproduces_samples(ys in prop::collection::vec((-100i64..100, 1i64..9), 1..10)) {
            let points: Vec<_> = ys.iter().enumerate()
                .map(|(i, &(n, d))| (integer(3 * i as i64 - 4), rational(n, d)))
                .collect();
            let p = lagrange_interpolate(&points).unwrap();
            prop_assert!(p.degree().is_none_or(|d| d < points.len()));
            for (x, y) in &points {
                prop_assert_eq!(&p.evaluate(x), y);
            }
        }

        #[test]
        fn stabilized_recovers_polynomials(p in arb_poly(), start in 1u32..6) {
            let fit = stabilized_fit(|m| Ok(p.evaluate(&integer(m))), start, 60).unwrap();
            prop_assert_eq!(&fit.polynomial, &p);
            let xs: Vec<_> = fit.samples.iter().take((fit.window_end - start + 1) as usize)
                .map(|(m, y)| (integer(*m), y.clone())).collect();
            prop_assert_eq!(lagrange_interpolate(&xs).unwrap(), p);
        }

        #[test]
        fn decompose_round_trip(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let d = decompose(&p).unwrap();
            prop_assert!(d.monic_part.leading_coefficient().unwrap().is_one());
            prop_assert_eq!(d.monic_part.scale(&d.nu), p);
        }
    }
}
