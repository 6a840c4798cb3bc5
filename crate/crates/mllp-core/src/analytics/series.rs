//! Cached power-series evaluator for the marginal densities.
//!
//! Both the base and the tempered marginal density at shape `T = beta t`
//! share one series form. Writing `w = mu^alpha - lambda` (so `w = -lambda`
//! for the untempered case, `mu = 0`):
//!
//! ```text
//! f(x) = lambda^T e^(-mu x)
//!        * sum_{k>=0} w^k C(T+k-1, k)-style weights
//!          x^(alpha(T+k) - 1) / Gamma(alpha(T+k)),
//! with weight_k = Gamma(T+k) / (Gamma(T) k!).
//! ```
//!
//! The `k`-coefficients depend only on the parameters, not on `x`, so a
//! [`DensitySeries`] precomputes their logs once and each evaluation is a
//! sign-tracked compensated sum of `exp(ln c_k + p_k ln x)` terms.

use crate::compensated::KahanSum;
use crate::specfun::{lgamma_raw, SeriesConfig, TERM_NOISE};

use super::{AnalyticsError, DensityEval};

/// Per-term precomputed data: `ln_c + pow * ln x` is the term's log
/// magnitude (before the `e^(-mu x)` damping).
#[derive(Debug, Clone, Copy)]
struct TermCoeff {
    ln_c: f64,
    pow: f64,
}

/// Precomputed series for one `(alpha, lambda, mu, T)` parameter set.
#[derive(Debug, Clone)]
pub(crate) struct DensitySeries {
    mu: f64,
    /// Sign of `w = mu^alpha - lambda`; alternating series when negative.
    w_negative: bool,
    coeffs: Vec<TermCoeff>,
    tolerance: f64,
}

impl DensitySeries {
    /// Builds the coefficient table for shape `t_shape` (= `beta * t`).
    /// Caller guarantees validated parameters.
    pub(crate) fn new(alpha: f64, lambda: f64, mu: f64, t_shape: f64, cfg: &SeriesConfig) -> Self {
        let w = if mu > 0.0 {
            mu.powf(alpha) - lambda
        } else {
            -lambda
        };
        let ln_abs_w = w.abs().ln();
        let lg_t = lgamma_raw(t_shape);
        let log_pref = t_shape * lambda.ln();
        let mut coeffs = Vec::with_capacity(cfg.max_terms);
        for k in 0..cfg.max_terms {
            let kf = k as f64;
            // k = 0 avoids 0 * ln|w|, which is NaN when w = 0 (the tempered
            // boundary mu^alpha = lambda, where only the k = 0 term remains).
            let w_pow = if k == 0 { 0.0 } else { kf * ln_abs_w };
            // ln |w^k Gamma(T+k)/(Gamma(T) k!) / Gamma(alpha(T+k))| + T ln lambda
            let ln_c = log_pref + w_pow + lgamma_raw(t_shape + kf)
                - lg_t
                - lgamma_raw(kf + 1.0)
                - lgamma_raw(alpha * (t_shape + kf));
            let pow = alpha * (t_shape + kf) - 1.0;
            coeffs.push(TermCoeff { ln_c, pow });
        }
        Self {
            mu,
            w_negative: w < 0.0,
            coeffs,
            tolerance: cfg.tolerance,
        }
    }

    /// Evaluates the density at `x > 0` with full error reporting.
    pub(crate) fn eval(&self, x: f64) -> Result<DensityEval, AnalyticsError> {
        let ln_x = x.ln();
        let damp = -self.mu * x;
        let mut sum = KahanSum::new();
        let mut abs_sum = 0.0f64;
        let mut prev_abs = f64::INFINITY;
        for (k, c) in self.coeffs.iter().enumerate() {
            let abs_term = (c.ln_c + c.pow * ln_x + damp).exp();
            let term = if self.w_negative && k % 2 == 1 {
                -abs_term
            } else {
                abs_term
            };
            sum.add(term);
            abs_sum += abs_term;
            let decreasing = abs_term < prev_abs;
            let small = abs_term <= self.tolerance * sum.value().abs();
            if k > 0 && small && (decreasing || !self.w_negative) {
                return self.finish(x, sum.value(), abs_sum, abs_term, k + 1);
            }
            if abs_term == 0.0 && k > 0 {
                return self.finish(x, sum.value(), abs_sum, abs_term, k + 1);
            }
            prev_abs = abs_term;
        }
        Err(AnalyticsError::TermCapExceeded {
            terms: self.coeffs.len(),
            reason: format!(
                "density series did not meet tolerance {} at x = {x}; \
                 the argument is beyond plain-series reach",
                self.tolerance
            ),
        })
    }

    fn finish(
        &self,
        x: f64,
        value: f64,
        abs_sum: f64,
        last_abs: f64,
        terms: usize,
    ) -> Result<DensityEval, AnalyticsError> {
        // Term-formation noise floor: scales with the gross magnitude
        // summed, not the single largest term (see [`TERM_NOISE`]).
        let floor = TERM_NOISE * abs_sum;
        if floor > 0.1 * value.abs() {
            return Err(AnalyticsError::TermCapExceeded {
                terms,
                reason: format!(
                    "cancellation floor {floor:.3e} exceeds 10% of density {value:.3e} \
                     at x = {x}; the argument is beyond plain-series reach"
                ),
            });
        }
        Ok(DensityEval {
            x,
            value,
            terms_used: terms,
            truncation_bound: last_abs + floor,
        })
    }
}
