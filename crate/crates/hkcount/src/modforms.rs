//! Constructors for the named (quasi-)modular and Jacobi-form expansions.
//!
//! One-variable series, all with rational coefficients:
//!
//! - `Δ(q) = q ∏_{m≥1} (1-q^m)^{24}`, the discriminant form, and `1/Δ`;
//! - Eisenstein series `E_k = 1 - (2k/B_k) Σ_{n≥1} σ_{k-1}(n) q^n`;
//! - the Γ₀(4) forms: the theta nullwert `ϑ(q) = Σ_{n∈ℤ} q^{n²}`, the
//!   odd-divisor sum `F(q) = Σ_{odd n>0} σ₁(n) q^n`, and the rescaled
//!   Eisenstein series `G_k(q) = E_k(q⁴)` built directly from its divisor
//!   sum.
//!
//! Two-variable series, with [`YLaurent`] coefficients:
//!
//! - `P(q,y)²` where `P = ∏_{m≥1} (1-q^m y)(1-q^m y^{-1})(1-q^m)^{-2}`,
//!   so that the square of the Jacobi theta function is
//!   `Θ² = (y - 2 + y^{-1})·P²`;
//! - `℘̃ = (y - 2 + y^{-1})·℘` for the Weierstraß expansion
//!   `℘ = 1/12 + y/(1-y)² + Σ_{d≥1} (Σ_{k|d} k (y^k - 2 + y^{-k})) q^d`.
//!
//! `℘` alone has the infinite-support term `y/(1-y)²`, so it is never
//! materialized; multiplying by `y - 2 + y^{-1}` collapses that term to `1`
//! exactly, which keeps every coefficient a finite Laurent polynomial.
//! Likewise only `Θ²` is exposed, never `Θ`, so half-integer powers of `y`
//! never arise.
//!
//! The conventions are pinned by exact identities that the test suite
//! verifies to high order: `q dΔ/dq = E₂ Δ`, `12 q dE₂/dq = E₂² - E₄`, and
//! `G_k(q) = E_k(q⁴)`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::qseries::{product_expansion, QSeries, Rational, YLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModformsError {
    /// Eisenstein-type series are only defined here for positive even weight.
    #[error("unsupported Eisenstein weight {k}; positive even weight required")]
    UnsupportedWeight { k: u32 },
}

/// Names of every series constructor, for dispatch from the CLI and FFI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    Delta,
    InvDelta,
    Eisenstein(u32),
    Theta4,
    F,
    G(u32),
    ThetaSq,
    WpTilde,
    ProdPartSq,
}

impl SeriesName {
    /// Parses the CLI spelling of a series name.
    pub fn parse(name: &str) -> Option<SeriesName> {
        Some(match name {
            "delta" => SeriesName::Delta,
            "invdelta" => SeriesName::InvDelta,
            "e2" => SeriesName::Eisenstein(2),
            "e4" => SeriesName::Eisenstein(4),
            "theta4" => SeriesName::Theta4,
            "f" => SeriesName::F,
            "g2" => SeriesName::G(2),
            "g4" => SeriesName::G(4),
            "thetasq" => SeriesName::ThetaSq,
            "wptilde" => SeriesName::WpTilde,
            "prodpartsq" => SeriesName::ProdPartSq,
            _ => return None,
        })
    }

    pub fn is_two_variable(&self) -> bool {
        matches!(
            self,
            SeriesName::ThetaSq | SeriesName::WpTilde | SeriesName::ProdPartSq
        )
    }

    /// The one-variable expansion, when this name has one.
    pub fn scalar_series(&self, order: i64) -> Option<Result<QSeries<Rational>, ModformsError>> {
        Some(match *self {
            SeriesName::Delta => Ok(delta(order)),
            SeriesName::InvDelta => Ok(inv_delta(order)),
            SeriesName::Eisenstein(k) => eisenstein(k, order),
            SeriesName::Theta4 => Ok(theta4(order)),
            SeriesName::F => Ok(f_series(order)),
            SeriesName::G(k) => g_series(k, order),
            _ => return None,
        })
    }

    /// The two-variable expansion, when this name has one.
    pub fn two_variable_series(&self, order: i64) -> Option<QSeries<YLaurent>> {
        Some(match *self {
            SeriesName::ThetaSq => theta_sq(order),
            SeriesName::WpTilde => wp_tilde(order),
            SeriesName::ProdPartSq => prodpart_sq(order),
            _ => return None,
        })
    }
}

/// The discriminant form `Δ = q ∏_{m≥1} (1-q^m)^{24}`, truncated at `order >= 2`.
pub fn delta(order: i64) -> QSeries<Rational> {
    assert!(order >= 2, "delta needs order >= 2");
    product_expansion(|_| 24, order - 1).shift(1)
}

/// `1/Δ`, a Laurent series with valuation -1, truncated at `order`.
pub fn inv_delta(order: i64) -> QSeries<Rational> {
    // Inversion keeps relative precision, so Δ needs two extra terms for the
    // result to reach `order` past its valuation -1.
    delta(order + 2)
        .invert()
        .expect("delta has unit leading coefficient")
}

/// Bernoulli number `B_k` in the convention `B_1 = -1/2` (so `B_2 = 1/6`,
/// `B_4 = -1/30`).
fn bernoulli(k: u32) -> Rational {
    // The weights that actually occur are hard-wired; anything else falls
    // back to the defining recurrence.
    match k {
        2 => return Rational::new(1, 6),
        4 => return Rational::new(-1, 30),
        _ => {}
    }
    let mut b: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    for m in 0..=k as usize {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        // sum_{j<m} C(m+1, j) B_j = -(m+1) B_m
        let mut acc = Rational::zero();
        let mut binom = Rational::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += &binom * bj;
            // C(m+1, j+1) = C(m+1, j) * (m+1-j)/(j+1)
            binom *= Rational::new((m + 1 - j) as i64, (j + 1) as i64);
        }
        b.push(-(acc / Rational::from((m + 1) as i64)));
    }
    b.pop().unwrap()
}

/// `σ_p(n) = Σ_{d|n} d^p` as an exact rational.
fn divisor_power_sum(n: u32, p: u32) -> Rational {
    let mut acc = BigInt::from(0);
    for d in 1..=n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(p);
        }
    }
    Rational::from_bigint(acc)
}

/// Eisenstein series `E_k = 1 - (2k/B_k) Σ_{n≥1} σ_{k-1}(n) q^n` for positive
/// even weight `k`.
pub fn eisenstein(k: u32, order: i64) -> Result<QSeries<Rational>, ModformsError> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(ModformsError::UnsupportedWeight { k });
    }
    let factor = -(Rational::from(2 * k as i64) / bernoulli(k));
    let mut coeffs = vec![Rational::zero(); order.max(1) as usize];
    coeffs[0] = Rational::one();
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = &factor * &divisor_power_sum(n as u32, k - 1);
    }
    Ok(QSeries::new(0, coeffs))
}

/// The theta nullwert `ϑ(q) = Σ_{n∈ℤ} q^{n²} = 1 + 2q + 2q⁴ + 2q⁹ + …`,
/// a modular form for Γ₀(4).
pub fn theta4(order: i64) -> QSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); order.max(1) as usize];
    coeffs[0] = Rational::one();
    let mut n: i64 = 1;
    while n * n < order {
        coeffs[(n * n) as usize] = Rational::from(2i64);
        n += 1;
    }
    QSeries::new(0, coeffs)
}

/// `F(q) = Σ_{odd n > 0} σ₁(n) q^n`, a Γ₀(4) form with valuation 1.
pub fn f_series(order: i64) -> QSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); order.max(1) as usize];
    for n in (1..coeffs.len()).step_by(2) {
        coeffs[n] = divisor_power_sum(n as u32, 1);
    }
    QSeries::new(0, coeffs)
}

/// `G_k(q) = 1 - (2k/B_k) Σ_{n≥1} σ_{k-1}(n) q^{4n}`, built directly from
/// its divisor sum; equals `E_k(q⁴)` as the tests verify.
pub fn g_series(k: u32, order: i64) -> Result<QSeries<Rational>, ModformsError> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(ModformsError::UnsupportedWeight { k });
    }
    let factor = -(Rational::from(2 * k as i64) / bernoulli(k));
    let mut coeffs = vec![Rational::zero(); order.max(1) as usize];
    coeffs[0] = Rational::one();
    let mut n = 1u32;
    while (4 * n as usize) < coeffs.len() {
        coeffs[4 * n as usize] = &factor * &divisor_power_sum(n, k - 1);
        n += 1;
    }
    Ok(QSeries::new(0, coeffs))
}

/// `P(q,y)²` with `P = ∏_{m≥1} (1-q^m y)(1-q^m y^{-1})(1-q^m)^{-2}`; the
/// square of the Jacobi theta function is `(y-2+y^{-1})` times this.
///
/// Every coefficient has finite `y`-support: at `q^n` the support of `P`
/// lies in `[-n, n]`.
pub fn prodpart_sq(order: i64) -> QSeries<YLaurent> {
    let n = order.max(1) as usize;
    let mut p = vec![YLaurent::zero(); n];
    p[0] = YLaurent::one();
    let y = YLaurent::monomial(1, Rational::one());
    let y_inv = YLaurent::monomial(-1, Rational::one());
    for m in 1..n {
        // multiply by (1 - q^m y): c_i -= y * c_{i-m}, descending
        for i in (m..n).rev() {
            let sub = &y * &p[i - m];
            p[i] = &p[i] - &sub;
        }
        // multiply by (1 - q^m y^{-1})
        for i in (m..n).rev() {
            let sub = &y_inv * &p[i - m];
            p[i] = &p[i] - &sub;
        }
        // multiply twice by 1/(1 - q^m): c_i += c_{i-m}, ascending
        for _ in 0..2 {
            for i in m..n {
                let add = p[i - m].clone();
                p[i] = &p[i] + &add;
            }
        }
    }
    let p = QSeries::new(0, p);
    &p * &p
}

/// `Θ² = (y - 2 + y^{-1}) · P²`, the square of the Jacobi theta function.
pub fn theta_sq(order: i64) -> QSeries<YLaurent> {
    prodpart_sq(order).scale_coeff(&YLaurent::theta_weight())
}

/// `℘̃ = (y - 2 + y^{-1}) · ℘`. The `q⁰` term is `1 + (y-2+y^{-1})/12`
/// because `(y-2+y^{-1}) · y/(1-y)² = 1` exactly; the `q^d` coefficient is
/// `(y-2+y^{-1}) Σ_{k|d} k(y^k - 2 + y^{-k})`.
pub fn wp_tilde(order: i64) -> QSeries<YLaurent> {
    let w = YLaurent::theta_weight();
    let n = order.max(1) as usize;
    let mut coeffs = vec![YLaurent::zero(); n];
    coeffs[0] = &YLaurent::one() + &w.scale(&Rational::new(1, 12));
    for (d, c) in coeffs.iter_mut().enumerate().skip(1) {
        let mut inner = YLaurent::zero();
        for k in 1..=d {
            if d % k == 0 {
                let k_i = k as i64;
                inner = &inner
                    + &YLaurent::from_terms([
                        (k_i, Rational::from(k_i)),
                        (0, Rational::from(-2 * k_i)),
                        (-k_i, Rational::from(k_i)),
                    ]);
            }
        }
        *c = &w * &inner;
    }
    QSeries::new(0, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::y_coefficient;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn delta_leading_coefficients() {
        let d = delta(6);
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.coefficient(1).unwrap(), r(1));
        assert_eq!(d.coefficient(2).unwrap(), r(-24));
        assert_eq!(d.coefficient(3).unwrap(), r(252));
        assert_eq!(d.coefficient(4).unwrap(), r(-1472));
        assert_eq!(d.coefficient(5).unwrap(), r(4830));
    }

    #[test]
    fn inv_delta_is_laurent_with_known_expansion() {
        let f = inv_delta(3);
        assert_eq!(f.valuation(), -1);
        assert_eq!(f.order(), 3);
        assert_eq!(f.coefficient(-1).unwrap(), r(1));
        assert_eq!(f.coefficient(0).unwrap(), r(24));
        assert_eq!(f.coefficient(1).unwrap(), r(324));
        assert_eq!(f.coefficient(2).unwrap(), r(3200));
        // Δ · (1/Δ) = 1 up to the propagated order
        let prod = &delta(8) * &inv_delta(8);
        assert!(prod.agrees_up_to(&QSeries::one(prod.order()), prod.order()));
        // inverting 1/Δ recovers the product expansion of Δ
        let back = inv_delta(8).invert().unwrap();
        assert!(back.agrees_up_to(&delta(back.order()), back.order()));
        // q d/dq (1/Δ) starts -q^{-1} + 0 + 324 q + ...
        let der = f.q_derivative();
        assert_eq!(der.coefficient(-1).unwrap(), r(-1));
        assert_eq!(der.coefficient(0).unwrap(), r(0));
        assert_eq!(der.coefficient(1).unwrap(), r(324));
    }

    #[test]
    fn eisenstein_expansions() {
        let e2 = eisenstein(2, 4).unwrap();
        assert_eq!(e2.coefficient(0).unwrap(), r(1));
        assert_eq!(e2.coefficient(1).unwrap(), r(-24));
        assert_eq!(e2.coefficient(2).unwrap(), r(-72));
        assert_eq!(e2.coefficient(3).unwrap(), r(-96));
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(e4.coefficient(1).unwrap(), r(240));
        assert_eq!(e4.coefficient(2).unwrap(), r(2160));
        assert_eq!(
            eisenstein(3, 5),
            Err(ModformsError::UnsupportedWeight { k: 3 })
        );
        assert_eq!(
            eisenstein(0, 5),
            Err(ModformsError::UnsupportedWeight { k: 0 })
        );
        // substitute_negate(E2) flips the sign of the q^1 coefficient
        assert_eq!(e2.substitute_negate().coefficient(1).unwrap(), r(24));
    }

    #[test]
    fn bernoulli_recurrence_matches_classical_values() {
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
        assert_eq!(bernoulli(6), Rational::new(1, 42));
        assert_eq!(bernoulli(8), Rational::new(-1, 30));
        assert_eq!(bernoulli(12), Rational::new(-691, 2730));
        // E6 through the recurrence path: 1 - 504 q - ...
        let e6 = eisenstein(6, 2).unwrap();
        assert_eq!(e6.coefficient(1).unwrap(), r(-504));
    }

    #[test]
    fn ramanujan_convention_pins() {
        // q dΔ/dq = E2 · Δ
        let n = 20;
        let d = delta(n);
        let e2 = eisenstein(2, n).unwrap();
        let lhs = d.q_derivative();
        let rhs = &e2 * &d;
        assert!(lhs.agrees_up_to(&rhs, rhs.order()));
        // 12 q dE2/dq = E2² - E4
        let e4 = eisenstein(4, n).unwrap();
        let lhs = e2.q_derivative().scale(&r(12));
        let rhs = &(&e2 * &e2) - &e4;
        assert!(lhs.agrees_up_to(&rhs, n));
    }

    #[test]
    fn theta_nullwert_squares_only() {
        let t = theta4(11);
        let expected = [1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(t.coefficient(n as i64).unwrap(), r(*e), "q^{n}");
        }
    }

    #[test]
    fn f_series_odd_divisor_sums() {
        let f = f_series(8);
        assert_eq!(f.valuation(), 1);
        assert_eq!(f.coefficient(1).unwrap(), r(1));
        assert_eq!(f.coefficient(2).unwrap(), r(0));
        assert_eq!(f.coefficient(3).unwrap(), r(4));
        assert_eq!(f.coefficient(5).unwrap(), r(6));
        assert_eq!(f.coefficient(7).unwrap(), r(8));
    }

    #[test]
    fn g_series_is_eisenstein_at_q4() {
        for k in [2u32, 4] {
            let n = 26;
            let g = g_series(k, n).unwrap();
            let e_sub = eisenstein(k, (n + 3) / 4).unwrap().substitute_power(4);
            assert!(
                g.agrees_up_to(&e_sub.truncated(n), n),
                "G_{k} != E_{k}(q^4)"
            );
        }
        let g2 = g_series(2, 12).unwrap();
        assert_eq!(g2.coefficient(4).unwrap(), r(-24));
        assert_eq!(g2.coefficient(8).unwrap(), r(-72));
        let g4 = g_series(4, 5).unwrap();
        assert_eq!(g4.coefficient(4).unwrap(), r(240));
    }

    #[test]
    fn prodpart_sq_first_coefficients_and_support() {
        let n = 9;
        let p2 = prodpart_sq(n);
        assert_eq!(p2.coefficient(0).unwrap(), YLaurent::one());
        // P = 1 + (2 - y - y^{-1}) q + ..., so P² at q^1 is 2(2 - y - y^{-1}).
        assert_eq!(
            p2.coefficient(1).unwrap(),
            YLaurent::from_terms([(1, r(-2)), (0, r(4)), (-1, r(-2))])
        );
        // y-support of P² at q^n stays within [-2n, 2n] (in fact [-n, n]).
        for d in 0..n {
            let c = p2.coefficient(d).unwrap();
            if let (Some(lo), Some(hi)) = (c.min_exponent(), c.max_exponent()) {
                assert!(lo >= -d && hi <= d, "support escaped at q^{d}: {c}");
            }
        }
    }

    #[test]
    fn theta_sq_structure() {
        let t2 = theta_sq(8);
        assert_eq!(t2.coefficient(0).unwrap(), YLaurent::theta_weight());
        for d in 0..8 {
            let c = t2.coefficient(d).unwrap();
            assert!(c.is_symmetric(), "not y <-> 1/y symmetric at q^{d}");
            assert_eq!(c.eval_at_one(), Rational::zero(), "nonzero at y=1, q^{d}");
        }
    }

    #[test]
    fn wp_tilde_structure() {
        let wp = wp_tilde(8);
        let w = YLaurent::theta_weight();
        assert_eq!(
            wp.coefficient(0).unwrap(),
            &YLaurent::one() + &w.scale(&Rational::new(1, 12))
        );
        assert_eq!(wp.coefficient(1).unwrap(), &w * &w);
        for d in 0..8 {
            let c = wp.coefficient(d).unwrap();
            assert!(c.is_symmetric(), "not y <-> 1/y symmetric at q^{d}");
            let expected = if d == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            assert_eq!(c.eval_at_one(), expected, "wp_tilde - 1 at y=1, q^{d}");
        }
    }

    #[test]
    fn series_name_dispatch() {
        assert_eq!(SeriesName::parse("delta"), Some(SeriesName::Delta));
        assert_eq!(SeriesName::parse("g4"), Some(SeriesName::G(4)));
        assert_eq!(SeriesName::parse("nope"), None);
        assert!(SeriesName::ThetaSq.is_two_variable());
        assert!(!SeriesName::InvDelta.is_two_variable());
        let d = SeriesName::Delta.scalar_series(4).unwrap().unwrap();
        assert_eq!(d.coefficient(2).unwrap(), r(-24));
        assert!(SeriesName::Delta.two_variable_series(4).is_none());
        let t = SeriesName::ThetaSq.two_variable_series(3).unwrap();
        assert_eq!(y_coefficient(&t, 0, 1).unwrap(), r(1));
    }
}
