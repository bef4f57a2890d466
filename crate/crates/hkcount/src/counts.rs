//! The enumerative generating series and their coefficient-lookup semantics.
//!
//! K3 surfaces: with `(β,β) = 2h - 2`, the count of elliptic curves of fixed
//! general j-invariant is the `q^{h-1}` coefficient of
//!
//! ```text
//! Σ_h n_{K3,h} q^{h-1} = 1/Δ + q d/dq (1/Δ),
//! ```
//!
//! the bridge `n = (N - C)/2` between the two Gromov–Witten series
//! `N = 2 q d/dq (1/Δ)` (Yau–Zaslow side) and `C = -2/Δ`.
//!
//! K3^\[2\]-type fourfolds: with `(β,β) = s/2`, `s ≡ 0, 3 (mod 4)`, the counts
//! are the coefficients of a weak Jacobi form of index 1, computed along two
//! independent routes that the tests force to agree:
//!
//! - [`n_k3two_jacobi`]: the two-variable expansion `Σ c(n,k) q^n y^k` whose
//!   coefficient depends only on `s = 4n - k²`, assembled from `Θ²/Δ` and a
//!   quasi-modular bracket in `℘`, `E₂`, `E₄`;
//! - [`n_k3two_gamma0`]: the one-variable series `Σ_s n_s q^s` obtained from
//!   the index-1 correspondence, a quotient of Γ₀(4) forms in `ϑ`, `F`,
//!   `G₂`, `G₄` with `q -> -q` applied once at the end.
//!
//! The Jacobi route is assembled in the finite-support rearrangement
//! `(P²/Δ)·[54 ℘̃ (E₂-1) + (y-2+y⁻¹)·(-(9/4)E₂² + (3/4)E₄ + (15/2)E₂ - 6)]`,
//! then normalized by `y -> -y` and an overall factor `-1/2`. That last
//! normalization bridges the theta/Weierstraß convention used by the
//! primitives to the counting series itself; it is pinned by the degree-0
//! value 648 and cross-checked coefficientwise against the Γ₀(4) route.

use thiserror::Error;

use crate::modforms;
use crate::qseries::{
    lift_to_ylaurent, substitute_y_negate, y_coefficient, QSeries, Rational, SeriesError, YLaurent,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountsError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    /// The Γ₀(4) bracket must vanish to exactly the order of the denominator
    /// `F·ϑ·Δ(q⁴)`; anything else signals a transcription error.
    #[error("Γ₀(4) bracket has q-valuation {found:?}, expected exactly {expected}")]
    BracketValuationMismatch { expected: i64, found: Option<i64> },
    /// No representative `(n, k)` with `4n - k² = s` fits under the computed
    /// q-order.
    #[error("no representative (n,k) with 4n - k^2 = {s} fits below q-order {order}")]
    RepresentativeOutOfRange { s: i64, order: i64 },
    /// Two representatives of the same square disagreed: the series is not a
    /// Jacobi form of index 1, which can only be an internal error.
    #[error(
        "index-1 violation at s = {s}: coefficient {first} at (n,k) = {rep_a:?} \
         but {second} at {rep_b:?}"
    )]
    JacobiIndexViolation {
        s: i64,
        rep_a: (i64, i64),
        rep_b: (i64, i64),
        first: Box<Rational>,
        second: Box<Rational>,
    },
    /// A count came out non-integral; values are never rounded.
    #[error("count for {context} is not an integer: {value}")]
    NonIntegerCount {
        context: String,
        value: Box<Rational>,
    },
}

/// One row of the K3 table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Row {
    pub h: u32,
    /// Beauville–Bogomolov square `(β,β) = 2h - 2`.
    pub bb_square: i64,
    pub count: Rational,
}

/// One row of the K3^\[2\] table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3TwoRow {
    /// Normalized square: `(β,β) = s/2`.
    pub s: i64,
    /// The representative `(n, k)` with `4n - k² = s` used for the lookup.
    pub representative: (i64, i64),
    pub count: Rational,
}

/// Which K3^\[2\] evaluation route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Jacobi,
    Gamma0,
    /// Run both and insist they agree.
    Both,
}

/// The three K3 series: counts `n`, and the two virtual-count series they
/// bridge, `N = 2 q d/dq (1/Δ)` and `C = -2/Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct K3Series {
    /// `Σ_h n_{K3,h} q^{h-1}`.
    pub counts: QSeries<Rational>,
    /// `Σ_h N_{K3,h} q^{h-1} = 2 q d/dq (1/Δ)`.
    pub genus_one: QSeries<Rational>,
    /// `Σ_h C_{K3,h} q^{h-1} = -2/Δ`.
    pub contracted: QSeries<Rational>,
}

/// Builds the K3 series to the given truncation order (`order >= 1`) and
/// verifies the bridge identity `n = (N - C)/2` term by term.
pub fn k3_series(order: i64) -> K3Series {
    assert!(order >= 1, "k3_series needs order >= 1");
    let inv_delta = modforms::inv_delta(order);
    let counts = &inv_delta + &inv_delta.q_derivative();
    let genus_one = inv_delta.q_derivative().scale(&Rational::from(2i64));
    let contracted = inv_delta.scale(&Rational::from(-2i64));
    let bridge = (&genus_one - &contracted).scale(&Rational::new(1, 2));
    assert!(
        counts.agrees_up_to(&bridge, order),
        "bridge identity n = (N - C)/2 failed"
    );
    K3Series {
        counts,
        genus_one,
        contracted,
    }
}

/// `Σ_h n_{K3,h} q^{h-1}` to the given order.
pub fn n_k3_series(order: i64) -> QSeries<Rational> {
    k3_series(order).counts
}

/// The K3 count for a single `h`.
pub fn n_k3(h: u32, order: i64) -> Result<Rational, CountsError> {
    let series = n_k3_series(order.max(h as i64 + 1));
    let value = series.coefficient(h as i64 - 1)?;
    expect_integer(&value, &format!("n_K3 at h = {h}"))?;
    Ok(value)
}

/// Table of K3 counts for `h = 0..=hmax`.
pub fn table1(hmax: u32) -> Result<Vec<K3Row>, CountsError> {
    let series = n_k3_series(hmax as i64 + 2);
    (0..=hmax)
        .map(|h| {
            let count = series.coefficient(h as i64 - 1)?;
            expect_integer(&count, &format!("n_K3 at h = {h}"))?;
            Ok(K3Row {
                h,
                bb_square: 2 * h as i64 - 2,
                count,
            })
        })
        .collect()
}

/// The two-variable K3^\[2\] series `Σ_{n,k} c(n,k) q^n y^k`, where `c(n,k)`
/// is the count for `(β,β) = (4n-k²)/2`, truncated at the given q-order.
pub fn n_k3two_jacobi(order: i64) -> QSeries<YLaurent> {
    assert!(order >= 1, "n_k3two_jacobi needs order >= 1");
    // Two orders of headroom so the final truncation is exact.
    let n = order + 2;
    let p_sq = modforms::prodpart_sq(n);
    let wp = modforms::wp_tilde(n);
    let e2 = lift_to_ylaurent(&modforms::eisenstein(2, n).expect("even weight"));
    let e4 = lift_to_ylaurent(&modforms::eisenstein(4, n).expect("even weight"));
    let inv_delta = lift_to_ylaurent(&modforms::inv_delta(n));
    let one = QSeries::<YLaurent>::one(n);

    // 54 ℘̃ (E₂ - 1): the q⁰ singular part of ℘ only ever meets E₂ - 1 = O(q).
    let wp_part = (&wp * &(&e2 - &one)).scale(&Rational::from(54i64));
    // (y - 2 + y⁻¹) · ( -(9/4)E₂² + (3/4)E₄ + (15/2)E₂ - 6 )
    let scalar_part = &(&(&e2 * &e2).scale(&Rational::new(-9, 4))
        + &e4.scale(&Rational::new(3, 4)))
        + &(&e2.scale(&Rational::new(15, 2)) - &one.scale(&Rational::from(6i64)));
    let bracket = &wp_part + &scalar_part.scale_coeff(&YLaurent::theta_weight());
    debug_assert!(
        bracket.valuation() >= 1,
        "bracket q^0 term must cancel exactly"
    );

    let assembled = &(&p_sq * &bracket) * &inv_delta;
    // Normalization onto the counting series: y -> -y and a factor -1/2.
    substitute_y_negate(&assembled)
        .scale(&Rational::new(-1, 2))
        .truncated(order)
}

/// The one-variable K3^\[2\] series `Σ_s n_s q^s` via the Γ₀(4) presentation;
/// `order` bounds the exponent `s` exclusively.
pub fn n_k3two_gamma0(order: i64) -> Result<QSeries<Rational>, CountsError> {
    assert!(order >= 1, "n_k3two_gamma0 needs order >= 1");
    // The quotient loses 5 orders to the valuation of the denominator.
    let n = order + 7;
    let theta = modforms::theta4(n);
    let f = modforms::f_series(n);
    let g2 = modforms::g_series(2, n).expect("even weight");
    let g4 = modforms::g_series(4, n).expect("even weight");
    let delta_q4 = modforms::delta(n / 4 + 2).substitute_power(4).truncated(n);
    let one = QSeries::<Rational>::one(n);

    // -(9/4) (ϑ⁴ + 4F)(G₂ - 1) - (3/8) G₄ + (9/8) G₂² - (15/4) G₂ + 3
    let theta4th = &(&theta * &theta) * &(&theta * &theta);
    let bracket = &(&(&theta4th + &f.scale(&Rational::from(4i64))) * &(&g2 - &one))
        .scale(&Rational::new(-9, 4))
        + &(&(&(&g4.scale(&Rational::new(-3, 8)) + &(&g2 * &g2).scale(&Rational::new(9, 8)))
            - &g2.scale(&Rational::new(15, 4)))
            + &one.scale(&Rational::from(3i64)));

    // The denominator F·ϑ·Δ(q⁴) has valuation 1 + 0 + 4 = 5; the bracket
    // must vanish to exactly that order for the quotient to be regular.
    let expected = 5;
    if bracket.is_zero() || bracket.valuation() != expected {
        return Err(CountsError::BracketValuationMismatch {
            expected,
            found: (!bracket.is_zero()).then(|| bracket.valuation()),
        });
    }
    let denominator = &(&f * &theta) * &delta_q4;
    debug_assert_eq!(denominator.valuation(), expected);
    let quotient = &bracket * &denominator.invert()?;
    // The display gives n(-q); undo the sign substitution once, at the end.
    Ok(quotient.substitute_negate().truncated(order))
}

/// The minimal-`n` representative `(n, k >= 0)` with `4n - k² = s`, or
/// `None` when `s ≡ 1, 2 (mod 4)` (no representative exists).
pub fn jacobi_representative(s: i64) -> Option<(i64, i64)> {
    let mut k = match s.rem_euclid(4) {
        0 => 0,
        3 => 1,
        _ => return None,
    };
    loop {
        let n4 = s + k * k;
        debug_assert!(n4 % 4 == 0);
        if n4 >= 0 {
            return Some((n4 / 4, k));
        }
        k += 2;
    }
}

/// The K3^\[2\] count for `(β,β) = s/2`, looked up in the two-variable series
/// at the minimal representative and cross-checked at further ones.
///
/// Squares `s ≡ 1, 2 (mod 4)` carry no curve class and count zero.
pub fn n_k3two(s: i64, order: i64) -> Result<Rational, CountsError> {
    let series = n_k3two_jacobi(order);
    n_k3two_from_series(&series, s)
}

/// As [`n_k3two`], reusing an already computed Jacobi series.
pub fn n_k3two_from_series(series: &QSeries<YLaurent>, s: i64) -> Result<Rational, CountsError> {
    let order = series.order();
    let Some((n, k)) = jacobi_representative(s) else {
        return Ok(Rational::zero());
    };
    if n >= order {
        return Err(CountsError::RepresentativeOutOfRange { s, order });
    }
    let value = y_coefficient(series, n, k)?;
    // Cross-check every further representative that fits under the order:
    // (n', k') = (n + k + 1, k + 2), and the mirror (n, -k).
    let mirror = y_coefficient(series, n, -k)?;
    if mirror != value {
        return Err(CountsError::JacobiIndexViolation {
            s,
            rep_a: (n, k),
            rep_b: (n, -k),
            first: Box::new(value),
            second: Box::new(mirror),
        });
    }
    let (mut n2, mut k2) = (n + k + 1, k + 2);
    while n2 < order {
        let other = y_coefficient(series, n2, k2)?;
        if other != value {
            return Err(CountsError::JacobiIndexViolation {
                s,
                rep_a: (n, k),
                rep_b: (n2, k2),
                first: Box::new(value),
                second: Box::new(other),
            });
        }
        (n2, k2) = (n2 + k2 + 1, k2 + 2);
    }
    expect_integer(&value, &format!("n_K3[2] at s = {s}"))?;
    Ok(value)
}

/// Default q-order for the Jacobi route so every representative needed for
/// squares up to `smax` fits, with two orders of cross-check headroom.
pub fn jacobi_order_for(smax: i64) -> i64 {
    (smax.max(0) + 4) / 4 + 3
}

/// Table of K3^\[2\] counts for `s = 0..=smax`, `s ≡ 0, 3 (mod 4)`.
///
/// With [`Method::Both`] the Jacobi and Γ₀(4) routes are evaluated
/// independently and any disagreement is an error.
pub fn table2(smax: i64, method: Method) -> Result<Vec<K3TwoRow>, CountsError> {
    let squares: Vec<i64> = (0..=smax)
        .filter(|s| matches!(s.rem_euclid(4), 0 | 3))
        .collect();
    let jacobi = match method {
        Method::Jacobi | Method::Both => Some(n_k3two_jacobi(jacobi_order_for(smax))),
        Method::Gamma0 => None,
    };
    let gamma0 = match method {
        Method::Gamma0 | Method::Both => Some(n_k3two_gamma0(smax + 1)?),
        Method::Jacobi => None,
    };
    let mut rows = Vec::with_capacity(squares.len());
    for s in squares {
        let representative = jacobi_representative(s).expect("s = 0, 3 mod 4");
        let jacobi_value = jacobi
            .as_ref()
            .map(|series| n_k3two_from_series(series, s))
            .transpose()?;
        let gamma0_value = gamma0
            .as_ref()
            .map(|series| -> Result<Rational, CountsError> {
                let v = series.coefficient(s)?;
                expect_integer(&v, &format!("n_K3[2] at s = {s} (gamma0)"))?;
                Ok(v)
            })
            .transpose()?;
        let count = match (jacobi_value, gamma0_value) {
            (Some(a), Some(b)) => {
                if a != b {
                    return Err(CountsError::JacobiIndexViolation {
                        s,
                        rep_a: representative,
                        rep_b: (s, 0),
                        first: Box::new(a),
                        second: Box::new(b),
                    });
                }
                a
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };
        rows.push(K3TwoRow {
            s,
            representative,
            count,
        });
    }
    Ok(rows)
}

fn expect_integer(value: &Rational, context: &str) -> Result<(), CountsError> {
    if value.is_integer() {
        Ok(())
    } else {
        Err(CountsError::NonIntegerCount {
            context: context.to_string(),
            value: Box::new(value.clone()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    /// Printed first values of the K3 table, indexed by h.
    const TABLE1: [i64; 8] = [0, 24, 648, 9600, 102600, 881280, 6442320, 41513472];

    /// Printed first values of the K3^\[2\] table, as (s, count).
    const TABLE2: [(i64, i64); 7] = [
        (0, 648),
        (3, 3780),
        (4, 23760),
        (7, 129600),
        (8, 470880),
        (11, 2396520),
        (12, 6629040),
    ];

    #[test]
    fn k3_table_first_values() {
        let rows = table1(7).unwrap();
        for (h, expected) in TABLE1.iter().enumerate() {
            assert_eq!(rows[h].count, r(*expected), "h = {h}");
            assert_eq!(rows[h].bb_square, 2 * h as i64 - 2);
        }
        // counts are h times the 1/Δ coefficient, e.g. 2·324 = 648
        assert_eq!(rows[2].count, r(2 * 324));
    }

    #[test]
    fn k3_series_shape_and_bridge() {
        let series = k3_series(10);
        // n_{K3,0} sits at q^{-1} and vanishes by cancellation
        assert_eq!(series.counts.coefficient(-1).unwrap(), r(0));
        assert_eq!(series.counts.valuation(), 0);
        assert_eq!(series.genus_one.valuation(), -1);
        assert_eq!(series.contracted.valuation(), -1);
        assert_eq!(series.genus_one.coefficient(-1).unwrap(), r(-2));
        assert_eq!(series.contracted.coefficient(-1).unwrap(), r(-2));
        assert_eq!(series.genus_one.coefficient(1).unwrap(), r(648));
        assert_eq!(series.contracted.coefficient(1).unwrap(), r(-648));
    }

    #[test]
    fn jacobi_expansion_matches_printed_rows() {
        let series = n_k3two_jacobi(3);
        // q⁰ coefficient: the constant 648
        assert_eq!(series.coefficient(0).unwrap(), YLaurent::constant(r(648)));
        // q¹ coefficient: 648 y² + 3780 y + 23760 + 3780 y⁻¹ + 648 y⁻²
        assert_eq!(
            series.coefficient(1).unwrap(),
            YLaurent::from_terms([
                (2, r(648)),
                (1, r(3780)),
                (0, r(23760)),
                (-1, r(3780)),
                (-2, r(648)),
            ])
        );
    }

    #[test]
    fn gamma0_series_first_values_and_forced_zeros() {
        let series = n_k3two_gamma0(13).unwrap();
        for (s, expected) in TABLE2 {
            assert_eq!(series.coefficient(s).unwrap(), r(expected), "s = {s}");
        }
        for s in 0..13i64 {
            if matches!(s.rem_euclid(4), 1 | 2) {
                assert_eq!(series.coefficient(s).unwrap(), r(0), "s = {s}");
            }
        }
    }

    #[test]
    fn representative_selection() {
        assert_eq!(jacobi_representative(0), Some((0, 0)));
        assert_eq!(jacobi_representative(3), Some((1, 1)));
        assert_eq!(jacobi_representative(-1), Some((0, 1)));
        assert_eq!(jacobi_representative(-4), Some((0, 2)));
        assert_eq!(jacobi_representative(12), Some((3, 0)));
        assert_eq!(jacobi_representative(1), None);
        assert_eq!(jacobi_representative(2), None);
        assert_eq!(jacobi_representative(-2), None);
    }

    #[test]
    fn lookup_with_cross_checks() {
        let order = jacobi_order_for(12);
        let series = n_k3two_jacobi(order);
        for (s, expected) in TABLE2 {
            assert_eq!(n_k3two_from_series(&series, s).unwrap(), r(expected));
        }
        // negative squares vanish; s = -1 cross-checks at (2, 3)
        assert_eq!(n_k3two_from_series(&series, -1).unwrap(), r(0));
        assert_eq!(n_k3two_from_series(&series, -4).unwrap(), r(0));
        // no-representative classes count zero
        assert_eq!(n_k3two_from_series(&series, 1).unwrap(), r(0));
        assert_eq!(n_k3two_from_series(&series, 2).unwrap(), r(0));
        // out of range
        assert!(matches!(
            n_k3two_from_series(&series, 4 * order),
            Err(CountsError::RepresentativeOutOfRange { .. })
        ));
    }

    #[test]
    fn degree_zero_matches_k3_square_two() {
        // n_{K3[2], (β,β)=0} = n_{K3, (β,β)=2}
        let k3two = n_k3two(0, 3).unwrap();
        let k3 = n_k3(2, 4).unwrap();
        assert_eq!(k3two, k3);
        assert_eq!(k3, r(648));
    }

    #[test]
    fn cross_method_agreement_to_s24() {
        let jacobi = n_k3two_jacobi(jacobi_order_for(24));
        let gamma0 = n_k3two_gamma0(25).unwrap();
        for s in 0..=24 {
            let a = n_k3two_from_series(&jacobi, s).unwrap();
            let b = gamma0.coefficient(s).unwrap();
            assert_eq!(a, b, "methods disagree at s = {s}");
        }
    }

    #[test]
    fn jacobi_index_one_and_symmetry_properties() {
        let order = 8;
        let series = n_k3two_jacobi(order);
        // collect c(n, k) over the whole computed grid
        let mut by_square: std::collections::BTreeMap<i64, (i64, i64, Rational)> =
            std::collections::BTreeMap::new();
        for n in 0..order {
            let coeff = series.coefficient(n).unwrap();
            let bound = 2 * n + 2;
            for k in -bound..=bound {
                let c = coeff.coefficient(k);
                let s = 4 * n - k * k;
                // vanishing for negative Beauville-Bogomolov square
                if s < 0 {
                    assert_eq!(c, r(0), "nonzero count at 4n-k² = {s}, (n,k)=({n},{k})");
                }
                // y <-> y⁻¹ symmetry
                assert_eq!(c, coeff.coefficient(-k), "k-symmetry at ({n},{k})");
                // index-1: coefficients depend on s only
                if let Some((n0, k0, c0)) = by_square.get(&s) {
                    assert_eq!(
                        &c, c0,
                        "index-1 violated: ({n},{k}) vs ({n0},{k0}) at s = {s}"
                    );
                } else {
                    by_square.insert(s, (n, k, c));
                }
            }
        }
    }

    #[test]
    fn tables_agree_across_methods() {
        let jac = table2(12, Method::Jacobi).unwrap();
        let gam = table2(12, Method::Gamma0).unwrap();
        let both = table2(12, Method::Both).unwrap();
        assert_eq!(jac.len(), both.len());
        for ((a, b), c) in jac.iter().zip(&gam).zip(&both) {
            assert_eq!(a.s, b.s);
            assert_eq!(a.count, b.count);
            assert_eq!(a.count, c.count);
        }
        // the s = 12 row
        let last = both.last().unwrap();
        assert_eq!(last.s, 12);
        assert_eq!(last.count, r(6629040));
        assert_eq!(last.representative, (3, 0));
    }
}
