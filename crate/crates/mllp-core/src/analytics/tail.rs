//! Large-argument expansions for the marginal tail and related integrals.
//!
//! The marginal Laplace transform `(lambda/(lambda + u^alpha))^T` expands at
//! small `u` into `sum_j (-1)^j C(T+j-1, j) (u^alpha / lambda)^j`; formal
//! term-by-term inversion (Watson's lemma for the survival function, valid
//! as an asymptotic expansion with error bounded by the first omitted term's
//! envelope) gives, with `z = lambda x^alpha`:
//!
//! ```text
//! P(X > x) ~ sum_{j>=1} (-1)^(j+1) C(T+j-1, j) z^(-j)
//!            Gamma(alpha j) sin(pi alpha j) / pi .
//! ```
//!
//! The series is divergent; the optimal truncation index grows like
//! `z^(1/alpha) / alpha`, at which point the envelope term
//! `C(T+j-1, j) z^(-j) Gamma(alpha j) / pi` has decayed to roughly
//! `exp(-z^(1/alpha))`. That is precisely the regime where the convergent
//! power series breaks down on the f64 cancellation floor, so the two
//! representations hand over with overlapping accuracy around
//! `z^(1/alpha) ~ 35` decimal digits of budget.
//!
//! Density tails and partial-moment tails reuse the same terms with an extra
//! per-`j` factor, provided through [`TailKind`].

use crate::specfun::lgamma_raw;

/// Which tail functional to expand; each multiplies term `j` by a factor.
#[derive(Debug, Clone, Copy)]
pub(crate) enum TailKind {
    /// `P(X > x)`: factor 1.
    Survival,
    /// `f(x) * x`: factor `alpha j` (the caller divides by `x`).
    Density,
    /// `integral_x^inf y^q f(y) dy / x^q`: factor `alpha j / (alpha j - q)`,
    /// requiring `q < alpha`.
    PartialMoment(f64),
}

/// Result of a truncated tail expansion: the value, an error scale (the
/// safety-scaled envelope of the first omitted term plus the rounding
/// floor of the summed terms), and the number of terms kept.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailEval {
    pub(crate) value: f64,
    pub(crate) bound: f64,
    pub(crate) terms: usize,
}

const MAX_TAIL_TERMS: usize = 500;

/// Safety factor on the minimum-envelope truncation bound.
///
/// The first-omitted-term envelope is sharp only for strictly alternating
/// remainders. Here the sign pattern follows `sin(pi alpha j)`, which holds
/// runs of like-signed terms of length ~`1/alpha`, so the realized error can
/// exceed the single-term envelope. Measured against 60-digit references the
/// worst excess is ~2.5x (alpha = 0.9, long sign runs); 6x covers it with
/// margin while staying within an order of magnitude of sharp.
const ENVELOPE_SAFETY: f64 = 6.0;

/// Evaluates the tail expansion at `z = lambda x^alpha` for shape `t_shape`,
/// stopping at the envelope minimum (optimal truncation).
///
/// The returned `bound` is the best achievable error scale at this `z`; the
/// caller decides whether it is acceptable. For `alpha = 1` every
/// `sin(pi j)` vanishes and the expansion correctly returns 0 with a bound
/// at the envelope minimum (the gamma marginal has no power tail).
pub(crate) fn tail_expansion(z: f64, t_shape: f64, alpha: f64, kind: TailKind) -> TailEval {
    let ln_z = z.ln();
    let lg_t = lgamma_raw(t_shape);
    let pi = std::f64::consts::PI;

    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut best_env = f64::INFINITY;
    for j in 1..=MAX_TAIL_TERMS {
        let jf = j as f64;
        // Per-kind factor folded into the envelope so that both the optimal
        // truncation point and the reported bound refer to the series that
        // is actually summed (the density kind grows an extra alpha*j per
        // term, which shifts the envelope minimum and its height).
        let ln_factor = match kind {
            TailKind::Survival => 0.0,
            TailKind::Density => (alpha * jf).ln(),
            TailKind::PartialMoment(q) => (alpha * jf / (alpha * jf - q)).ln(),
        };
        // Envelope: C(T+j-1, j) z^-j Gamma(alpha j) / pi * factor, sign-free.
        let ln_env = lgamma_raw(t_shape + jf) - lg_t - lgamma_raw(jf + 1.0) - jf * ln_z
            + lgamma_raw(alpha * jf)
            - pi.ln()
            + ln_factor;
        let env = ln_env.exp();
        if env >= best_env {
            // Divergence onset: stop before this term, report the envelope
            // minimum as the attainable accuracy.
            return TailEval {
                value: sum,
                bound: ENVELOPE_SAFETY * best_env + f64::EPSILON * abs_sum,
                terms: j - 1,
            };
        }
        best_env = env;

        // sin(pi alpha j) carries the sign and the near-pole damping; an
        // exactly integral alpha j must give exactly 0 (f64 sin(pi) does
        // not), which is what kills every term at alpha = 1.
        let r = (alpha * jf).rem_euclid(2.0);
        let s = if r == r.trunc() { 0.0 } else { (pi * r).sin() };
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * env * s;
        sum += term;
        abs_sum += term.abs();

        if env < 1e-3 * f64::EPSILON * abs_sum.max(sum.abs()) {
            // Far below the rounding floor; nothing more to gain.
            return TailEval {
                value: sum,
                bound: env + f64::EPSILON * abs_sum,
                terms: j,
            };
        }
    }
    TailEval {
        value: sum,
        bound: ENVELOPE_SAFETY * best_env + f64::EPSILON * abs_sum,
        terms: MAX_TAIL_TERMS,
    }
}

/// Survival function of the marginal with shape `t_shape` at `x`, for
/// `z = lambda x^alpha` large enough that the expansion's bound is tight.
pub(crate) fn survival(x: f64, alpha: f64, lambda: f64, t_shape: f64) -> TailEval {
    let z = lambda * x.powf(alpha);
    tail_expansion(z, t_shape, alpha, TailKind::Survival)
}

/// Density of the marginal with shape `t_shape` at large `x`.
pub(crate) fn density(x: f64, alpha: f64, lambda: f64, t_shape: f64) -> TailEval {
    let z = lambda * x.powf(alpha);
    let e = tail_expansion(z, t_shape, alpha, TailKind::Density);
    TailEval {
        value: e.value / x,
        bound: e.bound / x,
        terms: e.terms,
    }
}

/// `integral_x^inf y^q f(y) dy` for `0 < q < alpha`, at large `x`.
pub(crate) fn partial_moment(x: f64, q: f64, alpha: f64, lambda: f64, t_shape: f64) -> TailEval {
    let z = lambda * x.powf(alpha);
    let e = tail_expansion(z, t_shape, alpha, TailKind::PartialMoment(q));
    let scale = x.powf(q);
    TailEval {
        value: e.value * scale,
        bound: e.bound * scale,
        terms: e.terms,
    }
}

/// One-parameter Mittag-Leffler on the deep negative axis:
/// `E_alpha(-y) = survival at z = y, shape 1`.
pub(crate) fn ml_neg_large(y: f64, alpha: f64) -> TailEval {
    tail_expansion(y, 1.0, alpha, TailKind::Survival)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_rel(actual: f64, expect: f64, tol: f64) {
        let err = (actual - expect).abs() / expect.abs();
        assert!(
            err <= tol,
            "value {actual:e} vs expected {expect:e}: rel err {err:e} > {tol:e}"
        );
    }

    /// Survival references computed with mpmath at 60-120 digits via the
    /// complementary convergent series / quadrature.
    #[test]
    fn survival_reference_values() {
        // (x, alpha, lambda, T, expected survival)
        let cases = [
            (100.0, 0.5, 1.0, 1.0, 0.056_140_992_743_822_586),
            (400.0, 0.5, 1.0, 1.0, 0.028_174_348_741_051_319),
            (100.0, 0.5, 1.0, 2.0, 0.111_734_114_934_431_15),
            (8.0, 0.3, 2.0, 1.0, 0.176_637_946_571_616_72),
            (8.0, 0.3, 2.0, 2.0, 0.326_385_853_716_663_07),
        ];
        for (x, alpha, lambda, t, expect) in cases {
            let e = survival(x, alpha, lambda, t);
            assert_rel(e.value, expect, 1e-10);
            assert!(e.bound < 1e-10, "bound too loose: {:e}", e.bound);
        }
    }

    #[test]
    fn ml_neg_matches_reference() {
        // mpmath: E_0.9(-67.3) = 1.6017044306710057e-3 (deep tail),
        //         E_0.3(-10)   = 7.2649729078620451e-2.
        assert_rel(
            ml_neg_large(67.3, 0.9).value,
            1.601_704_430_671_005_7e-3,
            1e-12,
        );
        assert_rel(
            ml_neg_large(10.0, 0.3).value,
            7.264_972_907_862_045_1e-2,
            1e-9,
        );
    }

    #[test]
    fn bound_grows_as_z_shrinks() {
        // The expansion must advertise its own breakdown: bounds increase
        // monotonically in accuracy terms as z decreases.
        let b_far = survival(1000.0, 0.5, 1.0, 1.0).bound;
        let b_mid = survival(50.0, 0.5, 1.0, 1.0).bound;
        let b_near = survival(10.0, 0.5, 1.0, 1.0).bound;
        assert!(b_far < b_mid && b_mid < b_near);
        // Near the series handover (z ~ 3-5) the bound is still ~1e-9.
        let e = survival(30.0, 0.5, 1.0, 1.0); // z = sqrt(30) = 5.48
        assert!(e.bound < 1e-9, "handover bound {:e}", e.bound);
    }

    #[test]
    fn alpha_one_power_tail_vanishes() {
        let e = survival(30.0, 1.0, 1.0, 1.0);
        assert_eq!(e.value, 0.0);
        assert!(e.bound < 1e-10);
    }

    #[test]
    fn tail_mass_decreases_in_x() {
        let mut prev = f64::INFINITY;
        for &x in &[10.0, 20.0, 40.0, 80.0, 160.0, 320.0] {
            let e = survival(x, 0.7, 2.0, 1.5);
            assert!(e.value > 0.0 && e.value < prev);
            prev = e.value;
        }
    }

    #[test]
    fn partial_moment_consistent_with_survival_bounds() {
        // For 0 < q < alpha the partial moment sits between
        // x^q * P(X > x) and the full fractional moment; crude sanity.
        let (x, q, alpha, lambda, t) = (50.0, 0.2, 0.5, 1.0, 1.0);
        let pm = partial_moment(x, q, alpha, lambda, t).value;
        let sv = survival(x, alpha, lambda, t).value;
        assert!(pm > x.powf(q) * sv);
        assert!(pm.is_finite() && pm > 0.0);
    }
}
