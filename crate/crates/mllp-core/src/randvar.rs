//! Seeded random source and exact samplers for the process building blocks.
//!
//! All randomness flows through [`RandomSource`], a thin wrapper over the
//! ChaCha8 counter-based generator: the same seed yields the same variate
//! stream on every platform and build, which the verification layer relies
//! on for reproducible reports. The samplers are exact (distributionally
//! correct for every parameter value, not asymptotic approximations):
//!
//! * uniform on the open interval `(0, 1)`,
//! * exponential and gamma (Marsaglia-Tsang squeeze),
//! * positive `alpha`-stable via Kanter's representation,
//! * exponentially tempered stable via rejection,
//! * Mittag-Leffler scale mixtures,
//! * Poisson (inversion / transformed rejection) and negative binomial
//!   (gamma-Poisson mixture).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::specfun::lgamma_raw;

/// Errors from the sampling layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RandVarError {
    /// A parameter is outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The tempered-stable rejection loop exceeded its proposal budget; the
    /// requested tempering strength makes acceptance astronomically small.
    #[error(
        "tempered-stable rejection made {proposals} proposals without accepting; \
         expected acceptance exp(-t_scale * mu^alpha) is too small for rejection sampling"
    )]
    LowAcceptance {
        /// Proposals consumed by the failed call.
        proposals: u64,
    },
}

/// Hard per-call proposal budget for the tempered-stable rejection loop.
const MAX_REJECTION_PROPOSALS: u64 = 20_000_000;

/// Rolling acceptance rate below this marks the tempered sampler as
/// inefficient (tracked, not fatal).
const LOW_ACCEPTANCE_RATE: f64 = 1e-6;

/// Deterministic random source: ChaCha8 stream addressed by a `u64` seed.
///
/// Cloning is deliberately not provided; a source represents one consumable
/// stream, and accidental forks would silently correlate samples.
#[derive(Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    seed: u64,
    tempered_proposals: u64,
    tempered_accepts: u64,
}

impl RandomSource {
    /// Creates a source whose entire stream is determined by `seed`.
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            tempered_proposals: 0,
            tempered_accepts: 0,
        }
    }

    /// The seed this source was built from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform variate on the *open* interval `(0, 1)`.
    ///
    /// Maps the top 53 bits of a ChaCha8 word to `(k + 0.5) * 2^-53`, so the
    /// endpoints `0` and `1` are unreachable and `ln(u)` is always finite.
    pub fn uniform01(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Exponential variate with the given `rate` (mean `1 / rate`).
    ///
    /// # Errors
    /// [`RandVarError::Domain`] unless `rate` is finite and positive.
    pub fn exponential(&mut self, rate: f64) -> Result<f64, RandVarError> {
        check_positive("rate", rate)?;
        Ok(-self.uniform01().ln() / rate)
    }

    /// Standard normal variate (Marsaglia polar method; the paired value is
    /// discarded to keep the stream position a pure function of call count).
    fn standard_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.uniform01() - 1.0;
            let v = 2.0 * self.uniform01() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }

    /// Gamma variate with the given `rate` and `shape` (density
    /// `rate^shape x^(shape-1) e^(-rate x) / Gamma(shape)`).
    ///
    /// Uses the Marsaglia-Tsang squeeze for `shape >= 1` and the
    /// `U^(1/shape)` boost for `shape < 1`. The result is clamped to the
    /// smallest positive f64 so that callers can rely on strict positivity
    /// even when tiny shapes drive the sampler into the subnormal range.
    ///
    /// # Errors
    /// [`RandVarError::Domain`] unless both parameters are finite and
    /// positive.
    pub fn gamma_variate(&mut self, rate: f64, shape: f64) -> Result<f64, RandVarError> {
        check_positive("rate", rate)?;
        check_positive("shape", shape)?;
        let boosted = shape < 1.0;
        let d_shape = if boosted { shape + 1.0 } else { shape };

        let d = d_shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        let mut x;
        let mut v;
        loop {
            loop {
                x = self.standard_normal();
                v = 1.0 + c * x;
                if v > 0.0 {
                    break;
                }
            }
            v = v * v * v;
            let u = self.uniform01();
            if u < 1.0 - 0.0331 * (x * x) * (x * x) {
                break;
            }
            if u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
                break;
            }
        }
        let mut g = d * v;
        if boosted {
            g *= self.uniform01().powf(1.0 / shape);
        }
        Ok((g / rate).max(f64::MIN_POSITIVE))
    }

    /// Standard positive `alpha`-stable variate (Laplace transform
    /// `exp(-u^alpha)`), via Kanter's representation
    ///
    /// ```text
    /// S = sin(a pi U) * sin((1-a) pi U)^((1-a)/a)
    ///       * sin(pi U)^(-1/a) * W^(-(1-a)/a),
    /// ```
    ///
    /// with `U` uniform on `(0,1)` and `W` unit exponential. The product is
    /// assembled in log-space so extreme `U` cannot overflow intermediates.
    /// At `alpha = 1` the representation degenerates exactly to the point
    /// mass at `1` (the correct boundary law, since `exp(-u)` is the
    /// transform of the unit constant).
    ///
    /// # Errors
    /// [`RandVarError::Domain`] unless `alpha` is in `(0, 1]`.
    pub fn stable_variate(&mut self, alpha: f64) -> Result<f64, RandVarError> {
        check_alpha(alpha)?;
        if alpha == 1.0 {
            // Exact degenerate boundary; evaluating the representation here
            // would form 0 * ln(sin 0) = NaN.
            return Ok(1.0);
        }
        let u = self.uniform01();
        let w = -self.uniform01().ln();
        let frac = (1.0 - alpha) / alpha;
        let pi = std::f64::consts::PI;
        // sin arguments all lie in (0, pi), so every log below is finite.
        let ln_s = (alpha * pi * u).sin().ln() + frac * ((1.0 - alpha) * pi * u).sin().ln()
            - (pi * u).sin().ln() / alpha
            - frac * w.ln();
        Ok(ln_s.exp().max(f64::MIN_POSITIVE))
    }

    /// Exponentially tempered positive stable variate: the law with density
    /// proportional to `exp(-mu * y) * f_S(y)`, where `f_S` is the positive
    /// stable law scaled to Laplace transform `exp(-t_scale * u^alpha)`.
    ///
    /// Rejection from the untempered law: propose
    /// `Y = t_scale^(1/alpha) * S`, accept with probability `exp(-mu Y)`.
    /// The overall acceptance rate is `exp(-t_scale * mu^alpha)`; the source
    /// tracks proposals and accepts across calls (see
    /// [`tempered_acceptance`](Self::tempered_acceptance)).
    ///
    /// # Errors
    /// * [`RandVarError::Domain`] unless `alpha` is in `(0, 1]` and `mu`,
    ///   `t_scale` are finite and positive.
    /// * [`RandVarError::LowAcceptance`] if one call burns through the
    ///   proposal budget (acceptance below ~5e-8), rather than spinning
    ///   forever.
    pub fn tempered_stable_variate(
        &mut self,
        alpha: f64,
        mu: f64,
        t_scale: f64,
    ) -> Result<f64, RandVarError> {
        check_alpha(alpha)?;
        check_positive("mu", mu)?;
        check_positive("t_scale", t_scale)?;
        let scale = t_scale.powf(1.0 / alpha);
        let mut used: u64 = 0;
        loop {
            used += 1;
            self.tempered_proposals += 1;
            let y = scale * self.stable_variate(alpha)?;
            if self.uniform01() <= (-mu * y).exp() {
                self.tempered_accepts += 1;
                return Ok(y.max(f64::MIN_POSITIVE));
            }
            if used >= MAX_REJECTION_PROPOSALS {
                return Err(RandVarError::LowAcceptance { proposals: used });
            }
        }
    }

    /// Observed acceptance rate of the tempered-stable rejection sampler
    /// over the lifetime of this source, or `None` before the first
    /// proposal.
    pub fn tempered_acceptance(&self) -> Option<f64> {
        if self.tempered_proposals == 0 {
            None
        } else {
            Some(self.tempered_accepts as f64 / self.tempered_proposals as f64)
        }
    }

    /// True once the observed tempered-stable acceptance rate has dropped
    /// below `1e-6` with at least a million proposals on record. Advisory
    /// only; sampling keeps working (subject to the per-call budget).
    pub fn tempered_efficiency_warning(&self) -> bool {
        self.tempered_proposals >= 1_000_000
            && (self.tempered_accepts as f64) < LOW_ACCEPTANCE_RATE * self.tempered_proposals as f64
    }

    /// Mittag-Leffler variate: the marginal of the process at unit time with
    /// parameters `(alpha, lambda)`, i.e. Laplace transform
    /// `lambda / (lambda + u^alpha)`. Sampled exactly as
    /// `Exp(lambda)^(1/alpha) * S_alpha`.
    ///
    /// # Errors
    /// [`RandVarError::Domain`] unless `alpha` is in `(0, 1]` and `lambda`
    /// is finite and positive.
    pub fn ml_variate(&mut self, alpha: f64, lambda: f64) -> Result<f64, RandVarError> {
        check_alpha(alpha)?;
        check_positive("lambda", lambda)?;
        let g = self.exponential(lambda)?;
        let s = self.stable_variate(alpha)?;
        Ok((g.powf(1.0 / alpha) * s).max(f64::MIN_POSITIVE))
    }

    /// Poisson variate: pmf inversion for small means, Hormann's
    /// transformed-rejection (PTRS) for `mean >= 10`.
    fn poisson(&mut self, mean: f64) -> u64 {
        if mean < 10.0 {
            // Inversion by walking the pmf recurrence.
            let mut p = (-mean).exp();
            let mut cum = p;
            let u = self.uniform01();
            let mut k: u64 = 0;
            while u > cum && k < 2000 {
                k += 1;
                p *= mean / k as f64;
                cum += p;
            }
            k
        } else {
            self.poisson_ptrs(mean)
        }
    }

    /// Hormann (1993) PTRS transformed-rejection Poisson sampler.
    fn poisson_ptrs(&mut self, mean: f64) -> u64 {
        let slam = mean.sqrt();
        let loglam = mean.ln();
        let b = 0.931 + 2.53 * slam;
        let a = -0.059 + 0.02483 * b;
        let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        let v_r = 0.9277 - 3.6224 / (b - 2.0);
        loop {
            let u = self.uniform01() - 0.5;
            let v = self.uniform01();
            let us = 0.5 - u.abs();
            let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
            if us >= 0.07 && v <= v_r {
                return k as u64;
            }
            if k < 0.0 || (us < 0.013 && v > us) {
                continue;
            }
            if (v * inv_alpha / (a / (us * us) + b)).ln() <= k * loglam - mean - lgamma_raw(k + 1.0)
            {
                return k as u64;
            }
        }
    }

    /// Negative binomial variate with shape `t_shape > 0` and success
    /// probability `p` in `(0, 1)`: pmf
    /// `Gamma(t + j) / (Gamma(t) j!) * p^t * (1 - p)^j` on `j = 0, 1, ...`.
    ///
    /// Sampled as a gamma-Poisson mixture: `J | L ~ Poisson(L)` with
    /// `L ~ Gamma(rate p/(1-p), shape t_shape)`.
    ///
    /// # Errors
    /// [`RandVarError::Domain`] unless `t_shape` is finite positive and `p`
    /// lies strictly inside `(0, 1)`.
    pub fn negbin_variate(&mut self, t_shape: f64, p: f64) -> Result<u64, RandVarError> {
        check_positive("t_shape", t_shape)?;
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(RandVarError::Domain(format!(
                "negbin_variate requires p strictly inside (0, 1), got {p}"
            )));
        }
        let lam = self.gamma_variate(p / (1.0 - p), t_shape)?;
        Ok(self.poisson(lam))
    }
}

fn check_positive(name: &str, value: f64) -> Result<(), RandVarError> {
    if !value.is_finite() || value <= 0.0 {
        return Err(RandVarError::Domain(format!(
            "{name} must be finite and > 0, got {value}"
        )));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<(), RandVarError> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
        return Err(RandVarError::Domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, v)
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::from_seed(987);
        let mut b = RandomSource::from_seed(987);
        for _ in 0..64 {
            assert_eq!(a.uniform01().to_bits(), b.uniform01().to_bits());
        }
        let mut c = RandomSource::from_seed(988);
        let first: Vec<f64> = (0..8).map(|_| c.uniform01()).collect();
        let mut a2 = RandomSource::from_seed(987);
        let other: Vec<f64> = (0..8).map(|_| a2.uniform01()).collect();
        assert_ne!(first, other);
    }

    #[test]
    fn uniform_is_strictly_inside_unit_interval() {
        let mut src = RandomSource::from_seed(7);
        let mut min = 1.0f64;
        let mut max = 0.0f64;
        for _ in 0..200_000 {
            let u = src.uniform01();
            assert!(u > 0.0 && u < 1.0);
            min = min.min(u);
            max = max.max(u);
        }
        // With 2e5 draws the extremes should approach the ends.
        assert!(min < 1e-4 && max > 1.0 - 1e-4);
    }

    #[test]
    fn uniform_moments() {
        let mut src = RandomSource::from_seed(11);
        let xs: Vec<f64> = (0..200_000).map(|_| src.uniform01()).collect();
        let (m, v) = mean_var(&xs);
        assert!((m - 0.5).abs() < 3.0 * (1.0f64 / 12.0 / 2e5).sqrt());
        assert!((v - 1.0 / 12.0).abs() < 2e-3);
    }

    #[test]
    fn exponential_moments_and_positivity() {
        let mut src = RandomSource::from_seed(13);
        let rate = 2.5;
        let xs: Vec<f64> = (0..200_000)
            .map(|_| src.exponential(rate).unwrap())
            .collect();
        assert!(xs.iter().all(|&x| x > 0.0));
        let (m, v) = mean_var(&xs);
        let se_m = (1.0 / (rate * rate) / 2e5).sqrt();
        assert!((m - 1.0 / rate).abs() < 4.0 * se_m, "mean {m}");
        assert!((v - 1.0 / (rate * rate)).abs() < 0.01, "var {v}");
    }

    #[test]
    fn gamma_moments_across_shapes() {
        // Mean shape/rate, variance shape/rate^2; includes boosted shapes < 1.
        let cases = [
            (0.5f64, 0.3f64),
            (1.0, 1.0),
            (2.0, 0.05),
            (0.7, 4.2),
            (1.3, 9.0),
        ];
        for (i, &(rate, shape)) in cases.iter().enumerate() {
            let mut src = RandomSource::from_seed(100 + i as u64);
            let n = 200_000;
            let xs: Vec<f64> = (0..n)
                .map(|_| src.gamma_variate(rate, shape).unwrap())
                .collect();
            assert!(xs.iter().all(|&x| x > 0.0));
            let (m, v) = mean_var(&xs);
            let mean = shape / rate;
            let var = shape / (rate * rate);
            // SE of the mean is sqrt(var/n); 4 sigma keeps flakes out.
            let se_m = (var / n as f64).sqrt();
            assert!((m - mean).abs() < 4.0 * se_m, "gamma mean {m} vs {mean}");
            // SE of the sample variance ~ var * sqrt((kurt_excess + 2)/n);
            // gamma excess kurtosis is 6/shape.
            let se_v = var * ((6.0 / shape + 2.0) / n as f64).sqrt();
            assert!((v - var).abs() < 5.0 * se_v, "gamma var {v} vs {var}");
        }
    }

    #[test]
    fn gamma_small_shape_stays_positive() {
        let mut src = RandomSource::from_seed(5);
        for _ in 0..20_000 {
            let x = src.gamma_variate(1.0, 1e-3).unwrap();
            assert!(x > 0.0 && x.is_finite());
        }
    }

    #[test]
    fn stable_fractional_moments() {
        // E[S^q] = Gamma(1 - q/alpha) / Gamma(1 - q) for 0 < q < alpha.
        // mpmath: E[S_0.5^0.25] = 1.4464090846320771, E[S_0.7^0.3] =
        // 1.2007046184414498.
        let cases = [
            (0.5f64, 0.25f64, 1.446_409_084_632_077_1),
            (0.7, 0.3, 1.200_704_618_441_449_8),
        ];
        for (i, &(alpha, q, expect)) in cases.iter().enumerate() {
            let mut src = RandomSource::from_seed(200 + i as u64);
            let n = 400_000;
            let xs: Vec<f64> = (0..n)
                .map(|_| src.stable_variate(alpha).unwrap().powf(q))
                .collect();
            let (m, v) = mean_var(&xs);
            let se = (v / n as f64).sqrt();
            assert!(
                (m - expect).abs() < 4.0 * se,
                "alpha={alpha} q={q}: {m} vs {expect} (se {se})"
            );
        }
    }

    #[test]
    fn stable_degenerates_to_unit_at_alpha_one() {
        let mut src = RandomSource::from_seed(3);
        for _ in 0..100 {
            assert_eq!(src.stable_variate(1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn stable_laplace_transform() {
        // Empirical E[exp(-u S)] vs exp(-u^alpha) at a few u.
        let alpha = 0.5;
        let mut src = RandomSource::from_seed(17);
        let n = 400_000;
        let s: Vec<f64> = (0..n).map(|_| src.stable_variate(alpha).unwrap()).collect();
        for &u in &[0.25f64, 1.0, 4.0] {
            let vals: Vec<f64> = s.iter().map(|&x| (-u * x).exp()).collect();
            let (m, v) = mean_var(&vals);
            let expect = (-u.powf(alpha)).exp();
            let se = (v / n as f64).sqrt();
            assert!(
                (m - expect).abs() < 4.0 * se,
                "u={u}: {m} vs {expect} (se {se})"
            );
        }
    }

    #[test]
    fn tempered_stable_matches_tilted_transform() {
        // LT of the tempered law: exp(t((mu^a) - (mu+u)^a)) ... normalised:
        // E[exp(-uY*)] = exp(-t((mu+u)^alpha - mu^alpha)).
        let (alpha, mu, t_scale) = (0.5, 1.0, 1.0);
        let mut src = RandomSource::from_seed(23);
        let n = 200_000;
        let ys: Vec<f64> = (0..n)
            .map(|_| src.tempered_stable_variate(alpha, mu, t_scale).unwrap())
            .collect();
        for &u in &[0.5f64, 2.0] {
            let vals: Vec<f64> = ys.iter().map(|&y| (-u * y).exp()).collect();
            let (m, v) = mean_var(&vals);
            let expect = (-t_scale * ((mu + u).powf(alpha) - mu.powf(alpha))).exp();
            let se = (v / n as f64).sqrt();
            assert!((m - expect).abs() < 4.0 * se, "u={u}: {m} vs {expect}");
        }
        // Acceptance bookkeeping: expected rate exp(-1) ~ 0.37.
        let acc = src.tempered_acceptance().unwrap();
        assert!((acc - (-1.0f64).exp()).abs() < 0.01, "acceptance {acc}");
        assert!(!src.tempered_efficiency_warning());
    }

    #[test]
    fn ml_variate_matches_marginal_transform() {
        // E[exp(-u X)] = lambda / (lambda + u^alpha).
        let (alpha, lambda) = (0.5, 1.0);
        let mut src = RandomSource::from_seed(29);
        let n = 400_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| src.ml_variate(alpha, lambda).unwrap())
            .collect();
        for &u in &[0.25f64, 1.0, 4.0] {
            let vals: Vec<f64> = xs.iter().map(|&x| (-u * x).exp()).collect();
            let (m, v) = mean_var(&vals);
            let expect = lambda / (lambda + u.powf(alpha));
            let se = (v / n as f64).sqrt();
            assert!((m - expect).abs() < 4.0 * se, "u={u}: {m} vs {expect}");
        }
    }

    #[test]
    fn poisson_moments_small_and_large_mean() {
        for (i, &mean) in [0.3f64, 4.0, 9.99, 10.0, 47.5, 300.0].iter().enumerate() {
            let mut src = RandomSource::from_seed(400 + i as u64);
            let n = 200_000;
            let xs: Vec<f64> = (0..n).map(|_| src.poisson(mean) as f64).collect();
            let (m, v) = mean_var(&xs);
            let se_m = (mean / n as f64).sqrt();
            assert!((m - mean).abs() < 4.0 * se_m, "poisson mean {m} vs {mean}");
            assert!((v / mean - 1.0).abs() < 0.05, "poisson var {v} vs {mean}");
        }
    }

    #[test]
    fn negbin_pmf_head_and_moments() {
        // NB(t, p): P(J=0) = p^t; mean t(1-p)/p; var t(1-p)/p^2.
        let (t_shape, p) = (1.0, 0.5);
        let mut src = RandomSource::from_seed(31);
        let n = 200_000usize;
        let js: Vec<u64> = (0..n)
            .map(|_| src.negbin_variate(t_shape, p).unwrap())
            .collect();
        let p0 = js.iter().filter(|&&j| j == 0).count() as f64 / n as f64;
        let expect_p0 = p.powf(t_shape);
        let se0 = (expect_p0 * (1.0 - expect_p0) / n as f64).sqrt();
        assert!(
            (p0 - expect_p0).abs() < 4.0 * se0,
            "P(J=0) {p0} vs {expect_p0}"
        );
        let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
        let (m, v) = mean_var(&xs);
        let mean = t_shape * (1.0 - p) / p;
        let var = t_shape * (1.0 - p) / (p * p);
        assert!((m - mean).abs() < 4.0 * (var / n as f64).sqrt());
        assert!((v / var - 1.0).abs() < 0.05);
    }

    #[test]
    fn domain_errors() {
        let mut src = RandomSource::from_seed(1);
        assert!(matches!(src.exponential(0.0), Err(RandVarError::Domain(_))));
        assert!(matches!(
            src.exponential(f64::NAN),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.gamma_variate(-1.0, 1.0),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.gamma_variate(1.0, 0.0),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.stable_variate(0.0),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.stable_variate(1.1),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.tempered_stable_variate(0.5, 0.0, 1.0),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.ml_variate(0.5, -2.0),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.negbin_variate(0.0, 0.5),
            Err(RandVarError::Domain(_))
        ));
        assert!(matches!(
            src.negbin_variate(1.0, 1.0),
            Err(RandVarError::Domain(_))
        ));
    }

    /// First draws from a few samplers at seed 42, frozen at build time.
    /// These protect against silent changes to the variate streams (a new
    /// sampler algorithm or uniform mapping would break reproducibility of
    /// published runs).
    #[test]
    fn golden_stream_seed_42() {
        let mut src = RandomSource::from_seed(42);
        let u: Vec<u64> = (0..4).map(|_| src.uniform01().to_bits()).collect();
        assert_eq!(
            u,
            vec![
                4604317194420431788,
                4606734539489062706,
                4601373070768303509,
                4603825980764259020,
            ]
        );
        assert_eq!(src.exponential(1.0).unwrap().to_bits(), 4608275599342486528);
        assert_eq!(
            src.gamma_variate(1.0, 2.0).unwrap().to_bits(),
            4605442109238791905
        );
        assert_eq!(
            src.stable_variate(0.5).unwrap().to_bits(),
            4609032864951096837
        );
        assert_eq!(
            src.ml_variate(0.5, 1.0).unwrap().to_bits(),
            4637528255964656481
        );
    }
}
