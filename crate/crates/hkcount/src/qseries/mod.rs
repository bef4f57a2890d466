//! Exact truncated Laurent-series arithmetic in one variable `q`.
//!
//! The module provides the three layers of scalar data used everywhere else:
//!
//! - [`Rational`]: arbitrary-precision exact rationals, the sole scalar type;
//! - [`YLaurent`]: finite-support Laurent polynomials in the Jacobi variable `y`;
//! - [`QSeries`]: truncated Laurent series in `q`, generic over either
//!   coefficient ring through [`CoeffRing`].
//!
//! Truncation orders are explicit data carried by each series; binary
//! operations take the minimum of the information the operands actually
//! carry. All values are immutable after construction and all operations are
//! pure, so everything here is safe to share across threads.

mod rational;
mod series;
mod ylaurent;

pub use rational::Rational;
pub use series::{
    lift_to_ylaurent, product_expansion, substitute_y_negate, y_coefficient, CoeffRing, QSeries,
    SeriesError,
};
pub use ylaurent::YLaurent;

#[cfg(test)]
mod proptests {
    //! Randomized algebraic-law checks with fixed seeds.

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::*;

    fn random_rational(rng: &mut StdRng) -> Rational {
        Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
    }

    fn random_series(rng: &mut StdRng) -> QSeries<Rational> {
        let valuation = rng.gen_range(-3..=2);
        let len = rng.gen_range(1..=6);
        let coeffs = (0..len).map(|_| random_rational(rng)).collect();
        QSeries::new(valuation, coeffs)
    }

    /// Equality of the coefficients both sides actually know.
    fn agree(a: &QSeries<Rational>, b: &QSeries<Rational>) -> bool {
        let upto = a.order().min(b.order());
        a.agrees_up_to(b, upto)
    }

    #[test]
    fn ring_laws_hold_on_random_samples() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0001);
        for _ in 0..200 {
            let a = random_series(&mut rng);
            let b = random_series(&mut rng);
            let c = random_series(&mut rng);
            assert!(agree(&(&a + &b), &(&b + &a)));
            assert!(agree(&(&a * &b), &(&b * &a)));
            assert!(agree(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
            assert!(agree(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
            assert!(agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        }
    }

    #[test]
    fn invert_then_multiply_gives_one() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0002);
        let mut tried = 0;
        while tried < 100 {
            let a = random_series(&mut rng);
            if a.is_zero() {
                continue;
            }
            tried += 1;
            let inv = a.invert().expect("nonzero rational lead is a unit");
            let prod = &a * &inv;
            let one = QSeries::one(prod.order());
            assert!(agree(&prod, &one), "a = {a}, a^-1 = {inv}");
        }
    }

    #[test]
    fn q_derivative_satisfies_leibniz() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0003);
        for _ in 0..100 {
            let a = random_series(&mut rng);
            let b = random_series(&mut rng);
            let lhs = (&a * &b).q_derivative();
            let rhs = &(&a.q_derivative() * &b) + &(&a * &b.q_derivative());
            assert!(agree(&lhs, &rhs));
        }
    }

    #[test]
    fn truncation_coherence() {
        // Truncating an input only lowers the tracked order of a composite
        // expression; every coefficient still known must be unchanged. So
        // computing at high order and truncating agrees with computing from
        // truncated inputs directly.
        let mut rng = StdRng::seed_from_u64(0x5eed_0004);
        for _ in 0..200 {
            let a = random_series(&mut rng);
            let b = random_series(&mut rng);
            let c = random_series(&mut rng);
            let full = &(&a * &b) + &c;
            let delta = rng.gen_range(0..=2);
            let reduced = &(&a.truncated(a.order() - delta) * &b) + &c;
            assert!(reduced.order() <= full.order());
            assert!(full.agrees_up_to(&reduced, reduced.order()));
        }
    }

    #[test]
    fn substitution_composition_laws() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0005);
        for _ in 0..100 {
            let a = random_series(&mut rng);
            assert_eq!(a.substitute_negate().substitute_negate(), a);
            let m = rng.gen_range(1..=3u32);
            let mp = rng.gen_range(1..=3u32);
            assert_eq!(
                a.substitute_power(m).substitute_power(mp),
                a.substitute_power(m * mp)
            );
        }
    }
}
