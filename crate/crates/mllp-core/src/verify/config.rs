//! Suite configuration: which checks run, over which parameter grids, at
//! which sample sizes and significance levels.
//!
//! The checked-in default lives at `config/verify.toml` in the repository
//! root and is compiled into the library, so `SuiteConfig::default_config`
//! never touches the filesystem. Unknown keys are rejected rather than
//! ignored: a typo in a grid name must fail loudly, not silently skip a
//! check.

use serde::Deserialize;

use super::VerifyError;

/// Default suite configuration shipped with the crate.
const DEFAULT_TOML: &str = include_str!("../../../../config/verify.toml");

/// Laplace-transform identity check grid: empirical transform of marginal
/// draws against the closed form, one z-score check per (alpha, lambda, u).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LtIdentityConfig {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub us: Vec<f64>,
    pub n_samples: u64,
}

/// One-sample KS of unit-time marginal draws against the numeric CDF.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityKsConfig {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub n_samples: u64,
}

/// Fractional-moment check: empirical mean of `X^q` at `q = alpha/4`
/// against the closed form, one z-score check per (alpha, lambda, t).
/// The exponent stays below `alpha/2` so `X^q` has finite variance and
/// the central-limit band is valid.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentConfig {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub times: Vec<f64>,
    pub n_samples: u64,
}

/// Long-time rescaled endpoints against the one-sided stable law, plus a
/// short-time negative control that must fail.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitTheoremConfig {
    /// (alpha, lambda) pairs to test.
    pub pairs: Vec<(f64, f64)>,
    pub t: f64,
    pub n_samples: u64,
    /// Horizon for the negative control; far too short for the limit to
    /// have set in, so the KS comparison is expected to reject.
    pub negative_control_t: f64,
}

/// Normalized sums of i.i.d. marginal draws against the stable law.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableAttractionConfig {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub n_summands: u64,
    pub n_samples: u64,
}

/// Random time change by a geometric-sum clock against the rescaled
/// marginal, plus a wrong-rescaling negative control.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfSimilarityConfig {
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// Clock scale factors; each must exceed 1.
    pub cs: Vec<f64>,
    /// Transform arguments for the side check that the time-changed draws
    /// match the rescaled transform closed form.
    pub us: Vec<f64>,
    pub n_samples: u64,
    /// When true, also run the deliberately wrong rescaling exponent
    /// (half the correct one) and require that comparison to reject.
    pub wrong_index_control: bool,
}

/// Exponentially tempered draws: empirical mean, variance, and transform
/// against their closed forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperedConfig {
    pub alpha: f64,
    pub lambda: f64,
    pub mu: f64,
    pub t: f64,
    pub us: Vec<f64>,
    pub n_samples: u64,
}

/// Full suite configuration. Sections are optional: a missing section
/// skips that family of checks; an empty grid inside a section produces
/// no reports for it. Check order is fixed by the section order here
/// (not by the file), so two runs from the same config and seed produce
/// byte-identical reports.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Significance level shared by every KS check and translated into a
    /// three-standard-error band for the z-score checks.
    pub level: f64,
    pub lt_identity: Option<LtIdentityConfig>,
    pub density_ks: Option<DensityKsConfig>,
    pub moments: Option<MomentConfig>,
    pub limit_theorem: Option<LimitTheoremConfig>,
    pub stable_attraction: Option<StableAttractionConfig>,
    pub self_similarity: Option<SelfSimilarityConfig>,
    pub tempered: Option<TemperedConfig>,
}

impl SuiteConfig {
    /// Parse a configuration from TOML text.
    ///
    /// # Errors
    /// [`VerifyError::Config`] naming the offending key or syntax problem.
    pub fn from_toml(text: &str) -> Result<Self, VerifyError> {
        let cfg: SuiteConfig =
            toml::from_str(text).map_err(|e| VerifyError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load a configuration file from disk.
    ///
    /// # Errors
    /// [`VerifyError::Config`] if the file cannot be read or parsed.
    pub fn from_path(path: &std::path::Path) -> Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VerifyError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// The checked-in default configuration.
    pub fn default_config() -> Self {
        Self::from_toml(DEFAULT_TOML).expect("bundled default configuration must parse")
    }

    fn validate(&self) -> Result<(), VerifyError> {
        if !self.level.is_finite() || self.level <= 0.0 || self.level >= 1.0 {
            return Err(VerifyError::Config(format!(
                "level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if let Some(ss) = &self.self_similarity {
            if let Some(c) = ss.cs.iter().find(|&&c| c <= 1.0) {
                return Err(VerifyError::Config(format!(
                    "self_similarity.cs entries must exceed 1, got {c}"
                )));
            }
        }
        if let Some(lt) = &self.limit_theorem {
            if lt.t <= 0.0 || lt.negative_control_t <= 0.0 {
                return Err(VerifyError::Config(
                    "limit_theorem horizons must be positive".to_string(),
                ));
            }
        }
        if let Some(sa) = &self.stable_attraction {
            if sa.n_summands < 100 {
                return Err(VerifyError::Config(format!(
                    "stable_attraction.n_summands must be at least 100, got {}",
                    sa.n_summands
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_default_parses() {
        let cfg = SuiteConfig::default_config();
        assert!(cfg.level > 0.0 && cfg.level < 1.0);
        assert!(cfg.lt_identity.is_some());
        assert!(cfg.density_ks.is_some());
        assert!(cfg.limit_theorem.is_some());
        assert!(cfg.self_similarity.is_some());
    }

    #[test]
    fn unknown_key_is_named_in_error() {
        let err = SuiteConfig::from_toml("level = 0.01\nbogus_section = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus_section"), "error was: {msg}");
    }

    #[test]
    fn unknown_nested_key_is_named() {
        let text = r#"
level = 0.01
[density_ks]
alphas = [0.5]
lambdas = [1.0]
n_samples = 100
typo_field = 7
"#;
        let err = SuiteConfig::from_toml(text).unwrap_err();
        assert!(err.to_string().contains("typo_field"));
    }

    #[test]
    fn bad_level_rejected() {
        assert!(SuiteConfig::from_toml("level = 1.5\n").is_err());
        assert!(SuiteConfig::from_toml("level = 0.0\n").is_err());
    }

    #[test]
    fn small_scale_factor_rejected() {
        let text = r#"
level = 0.01
[self_similarity]
alphas = [0.5]
lambdas = [1.0]
cs = [0.5]
us = [1.0]
n_samples = 100
wrong_index_control = false
"#;
        let err = SuiteConfig::from_toml(text).unwrap_err();
        assert!(err.to_string().contains("exceed 1"));
    }

    #[test]
    fn missing_sections_are_allowed() {
        let cfg = SuiteConfig::from_toml("level = 0.05\n").unwrap();
        assert!(cfg.lt_identity.is_none());
        assert!(cfg.tempered.is_none());
    }

    #[test]
    fn few_summands_rejected() {
        let text = r#"
level = 0.01
[stable_attraction]
alphas = [0.5]
lambdas = [1.0]
n_summands = 50
n_samples = 100
"#;
        let err = SuiteConfig::from_toml(text).unwrap_err();
        assert!(err.to_string().contains("at least 100"));
    }
}
