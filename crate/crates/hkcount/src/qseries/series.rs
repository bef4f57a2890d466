//! Truncated Laurent series in `q`, generic over the coefficient ring.
//!
//! A `QSeries<C>` stores the coefficients of `q^v, ..., q^{N-1}` densely,
//! where `v` is the valuation and `N` the exclusive truncation order. The
//! order is data, not global state: every operation computes the largest
//! order the inputs support and never silently extends a truncation.
//!
//! Negative exponents are first-class; `1/Δ(q)` starts at `q^{-1}` and the
//! Γ₀(4) quotient `1/(F·ϑ·Δ(q^4))` at `q^{-5}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::{Rational, YLaurent};

/// Errors raised by series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// The leading coefficient is not a unit of the coefficient ring, so the
    /// series has no multiplicative inverse.
    #[error("leading coefficient at q^{valuation} is not a unit; series cannot be inverted")]
    NonUnitLeadingCoefficient { valuation: i64 },
    /// A coefficient beyond the tracked truncation order was requested.
    #[error("coefficient of q^{exponent} requested, but series is only known below q^{order}")]
    OrderExceeded { exponent: i64, order: i64 },
}

/// Coefficient rings a `QSeries` can be built over: the rationals themselves
/// and Laurent polynomials in `y`.
pub trait CoeffRing:
    Clone
    + PartialEq
    + fmt::Display
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplication by a rational scalar.
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse, when the element is a unit.
    fn try_inverse(&self) -> Option<Self>;
}

impl CoeffRing for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_inverse(&self) -> Option<Self> {
        self.try_recip()
    }
}

impl CoeffRing for YLaurent {
    fn zero() -> Self {
        YLaurent::zero()
    }
    fn one() -> Self {
        YLaurent::one()
    }
    fn is_zero(&self) -> bool {
        YLaurent::is_zero(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        YLaurent::scale(self, r)
    }
    fn try_inverse(&self) -> Option<Self> {
        YLaurent::try_inverse(self)
    }
}

/// Truncated Laurent series `Σ_{n=v}^{N-1} c_n q^n + O(q^N)`.
///
/// Stored normalized: either the coefficient at the valuation is nonzero, or
/// the series is zero up to its order and the coefficient vector is empty
/// (in which case `valuation == order`).
#[derive(Clone, PartialEq)]
pub struct QSeries<C: CoeffRing> {
    valuation: i64,
    order: i64,
    coeffs: Vec<C>,
}

impl<C: CoeffRing> QSeries<C> {
    /// Builds a series from the dense coefficient run `valuation..order`.
    pub fn new(valuation: i64, coeffs: Vec<C>) -> Self {
        let order = valuation + coeffs.len() as i64;
        let mut s = QSeries {
            valuation,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    /// The zero series, known to be zero below `order`.
    pub fn zero(order: i64) -> Self {
        QSeries {
            valuation: order,
            order,
            coeffs: Vec::new(),
        }
    }

    /// The constant-one series with truncation order `order > 0`.
    pub fn one(order: i64) -> Self {
        QSeries::monomial(0, C::one(), order)
    }

    /// The single term `c * q^exp`, truncated at `order > exp`.
    pub fn monomial(exp: i64, c: C, order: i64) -> Self {
        assert!(order > exp, "monomial order must exceed its exponent");
        let mut coeffs = vec![C::zero(); (order - exp) as usize];
        coeffs[0] = c;
        QSeries::new(exp, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.order;
            }
        }
    }

    /// Lowest stored exponent; equals `order` for a zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exclusive truncation bound: coefficients of `q^n` are known for `n < order`.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `q^n`: zero below the valuation, an error at or
    /// beyond the truncation order.
    pub fn coefficient(&self, n: i64) -> Result<C, SeriesError> {
        if n >= self.order {
            return Err(SeriesError::OrderExceeded {
                exponent: n,
                order: self.order,
            });
        }
        if n < self.valuation {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(n - self.valuation) as usize].clone())
    }

    fn coeff_at(&self, n: i64) -> C {
        if n < self.valuation || n >= self.order {
            C::zero()
        } else {
            self.coeffs[(n - self.valuation) as usize].clone()
        }
    }

    /// Known `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.valuation + i as i64, c))
    }

    /// Lowers the truncation order to `min(order, new_order)`. Truncation is
    /// only ever tightened, never extended.
    pub fn truncated(&self, new_order: i64) -> Self {
        if new_order >= self.order {
            return self.clone();
        }
        let keep = (new_order - self.valuation).max(0) as usize;
        let mut s = QSeries {
            valuation: self.valuation.min(new_order),
            order: new_order,
            coeffs: self.coeffs[..keep].to_vec(),
        };
        if s.coeffs.is_empty() {
            s.valuation = new_order;
        }
        s.normalize();
        s
    }

    /// Multiplies by `q^k`, shifting valuation and order.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            valuation: self.valuation + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Scales every coefficient by a rational constant.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return QSeries::zero(self.order);
        }
        QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Scales every coefficient by a ring element.
    pub fn scale_coeff(&self, c: &C) -> Self {
        let mut s = QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        };
        s.normalize();
        s
    }

    /// Adds a constant term.
    pub fn add_constant(&self, c: &C) -> Self {
        self + &QSeries::monomial(0, c.clone(), self.order)
    }

    /// The multiplicative inverse up to the tracked relative precision.
    ///
    /// Requires the leading coefficient to be a unit; the result has
    /// valuation `-v` and satisfies `self * inv = 1` up to the order
    /// propagated by the product rule.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().and_then(|c| c.try_inverse()).ok_or(
            SeriesError::NonUnitLeadingCoefficient {
                valuation: self.valuation,
            },
        )?;
        // Relative precision is preserved: m = order - valuation terms.
        let m = (self.order - self.valuation) as usize;
        let mut inv: Vec<C> = Vec::with_capacity(m);
        inv.push(lead.clone());
        for n in 1..m {
            // a_v * b_n = -(a_{v+1} b_{n-1} + ... + a_{v+n} b_0)
            let mut acc = C::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if a.is_zero() || inv[n - i].is_zero() {
                    continue;
                }
                acc = acc + a.clone() * inv[n - i].clone();
            }
            inv.push(-(acc * lead.clone()));
        }
        Ok(QSeries::new(-self.valuation, inv))
    }

    /// Applies `q d/dq`: the coefficient of `q^n` becomes `n * c_n`.
    pub fn q_derivative(&self) -> Self {
        let mut s = QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Rational::from(self.valuation + i as i64)))
                .collect(),
        };
        s.normalize();
        s
    }

    /// Substitutes `q -> q^m` for `m >= 1`; valuation and order scale by `m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        let m = m as i64;
        if self.is_zero() {
            return QSeries::zero(self.order * m);
        }
        let mut coeffs = vec![C::zero(); ((self.order - self.valuation - 1) * m + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        let mut s = QSeries {
            valuation: self.valuation * m,
            order: self.valuation * m + coeffs.len() as i64,
            coeffs,
        };
        // All of q^{m(N-1)+1} .. q^{mN - 1} vanish as well.
        s.order = self.order * m;
        s.coeffs.resize((s.order - s.valuation) as usize, C::zero());
        s.normalize();
        s
    }

    /// Substitutes `q -> -q`: the coefficient of `q^n` picks up `(-1)^n`.
    pub fn substitute_negate(&self) -> Self {
        let minus_one = Rational::from(-1i64);
        QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if (self.valuation + i as i64).rem_euclid(2) == 1 {
                        c.scale(&minus_one)
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        }
    }

    /// True when both series agree on every coefficient below `upto`.
    /// Panics if either side is not known that far.
    pub fn agrees_up_to(&self, other: &Self, upto: i64) -> bool {
        assert!(
            self.order >= upto && other.order >= upto,
            "agreement check beyond tracked order"
        );
        let lo = self.valuation.min(other.valuation);
        (lo..upto).all(|n| self.coeff_at(n) == other.coeff_at(n))
    }
}

impl<C: CoeffRing> Add for &QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: &QSeries<C>) -> QSeries<C> {
        let order = self.order.min(rhs.order);
        let valuation = self.valuation.min(rhs.valuation).min(order);
        let coeffs = (valuation..order)
            .map(|n| self.coeff_at(n) + rhs.coeff_at(n))
            .collect();
        QSeries::new(valuation, coeffs)
    }
}

impl<C: CoeffRing> Sub for &QSeries<C> {
    type Output = QSeries<C>;
    fn sub(self, rhs: &QSeries<C>) -> QSeries<C> {
        self + &(-rhs)
    }
}

impl<C: CoeffRing> Neg for &QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        QSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: CoeffRing> Mul for &QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: &QSeries<C>) -> QSeries<C> {
        // Each factor is only known relative to its own truncation, so the
        // product is known below min(a.order + b.valuation, b.order + a.valuation).
        let order = (self.order + rhs.valuation).min(rhs.order + self.valuation);
        let valuation = self.valuation + rhs.valuation;
        if self.is_zero() || rhs.is_zero() {
            return QSeries::zero(order);
        }
        let len = (order - valuation).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        QSeries::new(valuation, coeffs)
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident, $method:ident;)*) => {$(
        impl<C: CoeffRing> $trait for QSeries<C> {
            type Output = QSeries<C>;
            fn $method(self, rhs: QSeries<C>) -> QSeries<C> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned_ops! {
    Add, add;
    Sub, sub;
    Mul, mul;
}

impl<C: CoeffRing> Neg for QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        -&self
    }
}

/// Expands `∏_{m>=1} (1 - q^m)^{e_m}` up to the given truncation order.
///
/// Exponents may be negative (inverse factors). The expansion uses the
/// logarithmic-derivative recurrence
/// `n f_n = Σ_{j=1}^{n} L_j f_{n-j}` with `L_j = -Σ_{m|j} m e_m`,
/// which stays in exact rational arithmetic throughout. Prefactors such as
/// the leading `q` of `Δ` are the caller's business.
pub fn product_expansion(exponents: impl Fn(u32) -> i64, order: i64) -> QSeries<Rational> {
    assert!(order >= 1, "product expansion needs order >= 1");
    let n = order as usize;
    let mut log_deriv = vec![Rational::zero(); n];
    for m in 1..n {
        let e = exponents(m as u32);
        if e == 0 {
            continue;
        }
        let term = Rational::from(-(m as i64) * e);
        let mut j = m;
        while j < n {
            log_deriv[j] += term.clone();
            j += m;
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[0] = Rational::one();
    for k in 1..n {
        let mut acc = Rational::zero();
        for j in 1..=k {
            if log_deriv[j].is_zero() || coeffs[k - j].is_zero() {
                continue;
            }
            acc += &log_deriv[j] * &coeffs[k - j];
        }
        coeffs[k] = acc / Rational::from(k as i64);
    }
    QSeries::new(0, coeffs)
}

/// Lifts a rational series into the Laurent-polynomial coefficient ring.
pub fn lift_to_ylaurent(s: &QSeries<Rational>) -> QSeries<YLaurent> {
    let coeffs = (s.valuation()..s.order())
        .map(|n| YLaurent::constant(s.coeff_at(n)))
        .collect();
    QSeries::new(s.valuation(), coeffs)
}

/// The coefficient of `q^n y^k` in a two-variable expansion.
pub fn y_coefficient(s: &QSeries<YLaurent>, n: i64, k: i64) -> Result<Rational, SeriesError> {
    Ok(s.coefficient(n)?.coefficient(k))
}

/// Substitutes `y -> -y` in every coefficient.
pub fn substitute_y_negate(s: &QSeries<YLaurent>) -> QSeries<YLaurent> {
    let coeffs = (s.valuation()..s.order())
        .map(|n| s.coeff_at(n).substitute_negate())
        .collect();
    QSeries::new(s.valuation(), coeffs)
}

impl<C: CoeffRing> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.terms() {
            if wrote {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

impl<C: CoeffRing> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn series(valuation: i64, coeffs: &[i64]) -> QSeries<Rational> {
        QSeries::new(valuation, coeffs.iter().map(|&c| r(c)).collect())
    }

    #[test]
    fn addition_identities() {
        // (1 + q + O(q^3)) + 0 = 1 + q + O(q^3)
        let a = series(0, &[1, 1, 0]);
        let zero = QSeries::zero(5);
        let sum = &a + &zero;
        assert_eq!(sum, a);
        // q^{-1} + (-q^{-1}) = 0
        let b = series(-1, &[1]);
        let c = series(-1, &[-1]);
        assert!((&b + &c).is_zero());
        // cancellation keeps the min order
        let d = series(0, &[1, 24]);
        let e = series(0, &[1, -24]);
        let f = &d + &e;
        assert_eq!(f, series(0, &[2, 0]));
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn multiplication_identities() {
        // (1 - q)(1 + q + q^2 + q^3 + O(q^4)) = 1 + O(q^4)
        let a = series(0, &[1, -1, 0, 0]);
        let b = series(0, &[1, 1, 1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, series(0, &[1, 0, 0, 0]));
        // q^{-1} * q = 1
        let qinv = series(-1, &[1]);
        let q1 = series(1, &[1]);
        let one = &qinv * &q1;
        assert_eq!(one.coefficient(0).unwrap(), r(1));
        assert_eq!(one.order(), 1);
    }

    #[test]
    fn product_order_rule_uses_valuations() {
        // a known to O(q^3) with valuation 1, b known to O(q^2) with valuation -1:
        // the product order is min(3 + (-1), 2 + 1) = 2.
        let a = series(1, &[1, 5]);
        let b = series(-1, &[2, 0, 7]);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn coefficient_contract() {
        let a = series(-1, &[1, 24, 324]);
        assert_eq!(a.coefficient(-3).unwrap(), r(0));
        assert_eq!(a.coefficient(1).unwrap(), r(324));
        assert_eq!(
            a.coefficient(2),
            Err(SeriesError::OrderExceeded {
                exponent: 2,
                order: 2
            })
        );
    }

    #[test]
    fn invert_long_division() {
        // invert(q - 24 q^2 + O(q^3)) = q^{-1} + 24 + O(q)
        let a = series(1, &[1, -24]);
        let inv = a.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.order(), 1);
        assert_eq!(inv.coefficient(-1).unwrap(), r(1));
        assert_eq!(inv.coefficient(0).unwrap(), r(24));
        // invert(1) = 1
        let one = QSeries::<Rational>::one(6);
        assert_eq!(one.invert().unwrap(), one);
        // non-unit leading coefficient is an error
        assert_eq!(
            QSeries::<Rational>::zero(4).invert(),
            Err(SeriesError::NonUnitLeadingCoefficient { valuation: 4 })
        );
    }

    #[test]
    fn q_derivative_basics() {
        let a = series(-1, &[3]);
        assert_eq!(a.q_derivative(), series(-1, &[-3]));
        let c = series(0, &[5]);
        assert!(c.q_derivative().is_zero());
    }

    #[test]
    fn substitutions() {
        // (1 + q) with m = 4 -> 1 + q^4
        let a = series(0, &[1, 1]);
        let sub = a.substitute_power(4);
        assert_eq!(sub.coefficient(0).unwrap(), r(1));
        assert_eq!(sub.coefficient(4).unwrap(), r(1));
        assert_eq!(sub.order(), 8);
        // substitute_negate twice is the identity
        let b = series(-2, &[1, 2, 3, 4]);
        assert_eq!(b.substitute_negate().substitute_negate(), b);
        assert_eq!(b.substitute_negate(), series(-2, &[1, -2, 3, -4]));
        // 1 + q + q^2 -> 1 - q + q^2
        let c = series(0, &[1, 1, 1]);
        assert_eq!(c.substitute_negate(), series(0, &[1, -1, 1]));
        // power composition
        assert_eq!(
            b.substitute_power(2).substitute_power(3),
            b.substitute_power(6)
        );
    }

    #[test]
    fn product_expansion_delta_prefix() {
        // ∏ (1-q^m)^{24} = 1 - 24q + 252q^2 - 1472q^3 + ...
        let f = product_expansion(|_| 24, 5);
        assert_eq!(f.coefficient(0).unwrap(), r(1));
        assert_eq!(f.coefficient(1).unwrap(), r(-24));
        assert_eq!(f.coefficient(2).unwrap(), r(252));
        assert_eq!(f.coefficient(3).unwrap(), r(-1472));
        // ∏ (1-q^m)^{-24} = 1 + 24q + 324q^2 + 3200q^3 + ...
        let g = product_expansion(|_| -24, 4);
        assert_eq!(g.coefficient(1).unwrap(), r(24));
        assert_eq!(g.coefficient(2).unwrap(), r(324));
        assert_eq!(g.coefficient(3).unwrap(), r(3200));
        // empty exponent map gives 1
        let one = product_expansion(|_| 0, 6);
        assert_eq!(one, QSeries::one(6));
    }

    #[test]
    fn product_expansion_matches_naive_factor_multiplication() {
        // Independent oracle: multiply the factors (1 - q^m)^{e_m} out
        // directly, one factor at a time.
        let order = 18usize;
        let exponents = |m: u32| -> i64 {
            match m {
                1 => 3,
                2 => -5,
                3 => 24,
                7 => -2,
                _ => 0,
            }
        };
        let mut oracle = vec![Rational::zero(); order];
        oracle[0] = Rational::one();
        for m in 1..order {
            let e = exponents(m as u32);
            for _ in 0..e.abs() {
                if e > 0 {
                    // multiply by (1 - q^m): c_n -= c_{n-m}, descending
                    for n in (m..order).rev() {
                        let prev = oracle[n - m].clone();
                        oracle[n] -= prev;
                    }
                } else {
                    // multiply by 1/(1 - q^m): c_n += c_{n-m}, ascending
                    for n in m..order {
                        let prev = oracle[n - m].clone();
                        oracle[n] += prev;
                    }
                }
            }
        }
        let fast = product_expansion(exponents, order as i64);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&fast.coefficient(n as i64).unwrap(), expected, "q^{n}");
        }
    }

    #[test]
    fn lift_and_y_coefficient() {
        let a = series(-1, &[2, 0, 5]);
        let lifted = lift_to_ylaurent(&a);
        assert_eq!(y_coefficient(&lifted, -1, 0).unwrap(), r(2));
        assert_eq!(y_coefficient(&lifted, 1, 0).unwrap(), r(5));
        assert_eq!(y_coefficient(&lifted, 1, 3).unwrap(), r(0));
        assert!(y_coefficient(&lifted, 2, 0).is_err());
    }
}
