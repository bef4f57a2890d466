//! Laurent polynomials in the Jacobi-form variable `y`.
//!
//! A `YLaurent` is a finite sum `Σ_k c_k y^k` with rational coefficients and
//! integer exponents of either sign. It is the coefficient ring of the
//! two-variable expansions: a Jacobi-form q-expansion is a `QSeries<YLaurent>`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Finite-support Laurent polynomial in `y` over the rationals.
///
/// No zero coefficient is ever stored, so the zero polynomial has empty
/// support.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct YLaurent {
    support: BTreeMap<i64, Rational>,
}

impl YLaurent {
    pub fn zero() -> Self {
        YLaurent {
            support: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        YLaurent::monomial(0, Rational::one())
    }

    /// The monomial `c * y^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut support = BTreeMap::new();
        if !c.is_zero() {
            support.insert(k, c);
        }
        YLaurent { support }
    }

    pub fn constant(c: Rational) -> Self {
        YLaurent::monomial(0, c)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut support: BTreeMap<i64, Rational> = BTreeMap::new();
        for (k, c) in terms {
            let entry = support.entry(k).or_insert_with(Rational::zero);
            *entry += c;
        }
        support.retain(|_, c| !c.is_zero());
        YLaurent { support }
    }

    /// `y - 2 + y^{-1}`, the square of `y^{1/2} - y^{-1/2}`.
    pub fn theta_weight() -> Self {
        YLaurent::from_terms([
            (1, Rational::one()),
            (0, Rational::from(-2i64)),
            (-1, Rational::one()),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// The coefficient of `y^k` (zero when absent).
    pub fn coefficient(&self, k: i64) -> Rational {
        self.support.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.support.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.support.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.support.keys().next_back().copied()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return YLaurent::zero();
        }
        YLaurent {
            support: self.support.iter().map(|(&k, c)| (k, c * r)).collect(),
        }
    }

    /// Substitutes `y -> y^{-1}`.
    pub fn substitute_invert(&self) -> Self {
        YLaurent {
            support: self.support.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Substitutes `y -> -y`: the coefficient of `y^k` picks up `(-1)^k`.
    pub fn substitute_negate(&self) -> Self {
        YLaurent {
            support: self
                .support
                .iter()
                .map(|(&k, c)| (k, if k.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// True when invariant under `y -> y^{-1}`.
    pub fn is_symmetric(&self) -> bool {
        self == &self.substitute_invert()
    }

    /// The value at `y = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in self.support.values() {
            acc += c.clone();
        }
        acc
    }

    /// Inverse when the polynomial is a single monomial `c * y^k`; units of
    /// the Laurent ring are exactly these.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.support.len() != 1 {
            return None;
        }
        let (&k, c) = self.support.iter().next().unwrap();
        Some(YLaurent::monomial(-k, c.try_recip()?))
    }
}

impl From<Rational> for YLaurent {
    fn from(c: Rational) -> Self {
        YLaurent::constant(c)
    }
}

impl From<i64> for YLaurent {
    fn from(n: i64) -> Self {
        YLaurent::constant(Rational::from(n))
    }
}

impl Add for YLaurent {
    type Output = YLaurent;
    fn add(self, rhs: YLaurent) -> YLaurent {
        &self + &rhs
    }
}

impl Add for &YLaurent {
    type Output = YLaurent;
    fn add(self, rhs: &YLaurent) -> YLaurent {
        let mut support = self.support.clone();
        for (&k, c) in &rhs.support {
            let entry = support.entry(k).or_insert_with(Rational::zero);
            *entry += c.clone();
        }
        support.retain(|_, c| !c.is_zero());
        YLaurent { support }
    }
}

impl Sub for YLaurent {
    type Output = YLaurent;
    fn sub(self, rhs: YLaurent) -> YLaurent {
        &self + &(-&rhs)
    }
}

impl Sub for &YLaurent {
    type Output = YLaurent;
    fn sub(self, rhs: &YLaurent) -> YLaurent {
        self + &(-rhs)
    }
}

impl Neg for YLaurent {
    type Output = YLaurent;
    fn neg(self) -> YLaurent {
        -&self
    }
}

impl Neg for &YLaurent {
    type Output = YLaurent;
    fn neg(self) -> YLaurent {
        YLaurent {
            support: self.support.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for YLaurent {
    type Output = YLaurent;
    fn mul(self, rhs: YLaurent) -> YLaurent {
        &self * &rhs
    }
}

impl Mul for &YLaurent {
    type Output = YLaurent;
    fn mul(self, rhs: &YLaurent) -> YLaurent {
        let mut support: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&ka, ca) in &self.support {
            for (&kb, cb) in &rhs.support {
                let entry = support.entry(ka + kb).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        support.retain(|_, c| !c.is_zero());
        YLaurent { support }
    }
}

impl fmt::Display for YLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "y")?,
                1 => write!(f, "{mag}*y")?,
                _ if mag.is_one() => write!(f, "y^{k}")?,
                _ => write!(f, "{mag}*y^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn no_zero_coefficients_survive() {
        let a = YLaurent::from_terms([(2, q(1, 1)), (0, q(3, 1))]);
        let b = YLaurent::from_terms([(2, q(-1, 1)), (1, q(5, 1))]);
        let sum = &a + &b;
        assert_eq!(sum.coefficient(2), Rational::zero());
        assert_eq!(sum.min_exponent(), Some(0));
        assert_eq!(sum.max_exponent(), Some(1));
    }

    #[test]
    fn product_support_within_minkowski_sum() {
        let a = YLaurent::from_terms([(-1, q(1, 1)), (2, q(1, 2))]);
        let b = YLaurent::from_terms([(-3, q(2, 1)), (1, q(1, 3))]);
        let p = &a * &b;
        assert!(p.min_exponent().unwrap() >= -4);
        assert!(p.max_exponent().unwrap() <= 3);
        assert_eq!(p.coefficient(-4), q(2, 1));
        assert_eq!(p.coefficient(3), q(1, 6));
    }

    #[test]
    fn theta_weight_times_singular_part_is_one() {
        // (y - 2 + y^{-1}) * y / (1-y)^2 = 1, checked as
        // (y - 2 + y^{-1}) * y = (1-y)^2.
        let w = YLaurent::theta_weight();
        let y = YLaurent::monomial(1, Rational::one());
        let lhs = &w * &y;
        let one_minus_y = YLaurent::from_terms([(0, Rational::one()), (1, Rational::from(-1i64))]);
        assert_eq!(lhs, &one_minus_y * &one_minus_y);
    }

    #[test]
    fn substitute_negate_is_involution() {
        let a = YLaurent::from_terms([(-3, q(1, 2)), (0, q(7, 1)), (2, q(-4, 1))]);
        assert_eq!(a.substitute_negate().substitute_negate(), a);
        assert_eq!(a.substitute_negate().coefficient(-3), q(-1, 2));
        assert_eq!(a.substitute_negate().coefficient(2), q(-4, 1));
    }

    #[test]
    fn units_are_monomials() {
        let m = YLaurent::monomial(-2, q(3, 4));
        assert_eq!(m.try_inverse().unwrap(), YLaurent::monomial(2, q(4, 3)));
        let not_unit = YLaurent::theta_weight();
        assert!(not_unit.try_inverse().is_none());
        assert!(YLaurent::zero().try_inverse().is_none());
    }
}
