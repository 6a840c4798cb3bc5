//! Kolmogorov-Smirnov machinery: statistics, asymptotic critical values,
//! and report assembly for one- and two-sample tests.
//!
//! All distribution-equality claims in the suite run through KS because it
//! is distribution-free and robust to heavy tails, which moment-based tests
//! are not. Critical values use the asymptotic Kolmogorov distribution
//! `P(sup|B(F)| > c) = gamma`, i.e. `c(gamma) = sqrt(-ln(gamma/2)/2)`;
//! sample sizes of 10^4 and above make small-sample corrections
//! unnecessary (error of the asymptotic level is O(1/sqrt(n))).

use super::{CheckReport, VerifyError};

/// Asymptotic Kolmogorov critical coefficient `c(level)` such that the
/// one-sample rejection threshold is `c / sqrt(n)` and the two-sample one
/// is `c * sqrt((n + m) / (n m))`.
///
/// # Errors
/// [`VerifyError::Domain`] unless `level` lies in `(0, 1)`.
pub fn kolmogorov_critical(level: f64) -> Result<f64, VerifyError> {
    if !level.is_finite() || level <= 0.0 || level >= 1.0 {
        return Err(VerifyError::Domain(format!(
            "significance level must lie in (0, 1), got {level}"
        )));
    }
    Ok((-(level / 2.0).ln() / 2.0).sqrt())
}

fn sorted_copy(sample: &[f64], what: &str) -> Result<Vec<f64>, VerifyError> {
    if sample.is_empty() {
        return Err(VerifyError::EmptySample(what.to_string()));
    }
    if sample.iter().any(|x| x.is_nan()) {
        return Err(VerifyError::Domain(format!("{what} contains NaN")));
    }
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(s)
}

/// One-sample KS statistic from CDF values already evaluated at the sorted
/// sample: `max_i max(F_i - i/n, (i+1)/n - F_i)`. Validates that the
/// supplied values behave like a CDF (within `[0, 1]`, nondecreasing up to
/// a 1e-12 slack for evaluation noise).
pub(crate) fn ks_statistic_sorted(fs: &[f64]) -> Result<f64, VerifyError> {
    let n = fs.len() as f64;
    let mut d = 0.0f64;
    let mut prev = 0.0f64;
    for (i, &f) in fs.iter().enumerate() {
        if !(-1e-9..=1.0 + 1e-9).contains(&f) {
            return Err(VerifyError::NonMonotoneCdf(format!(
                "cdf value {f} at index {i} is outside [0, 1]"
            )));
        }
        if f < prev - 1e-12 {
            return Err(VerifyError::NonMonotoneCdf(format!(
                "cdf decreases from {prev} to {f} at index {i}"
            )));
        }
        prev = prev.max(f);
        let i = i as f64;
        d = d.max(f - i / n).max((i + 1.0) / n - f);
    }
    Ok(d)
}

/// One-sample Kolmogorov-Smirnov test of `sample` against the CDF handle.
///
/// # Errors
/// [`VerifyError::EmptySample`], [`VerifyError::Domain`] for NaN data or a
/// bad level, [`VerifyError::NonMonotoneCdf`] if the handle's values
/// decrease or leave `[0, 1]`.
pub fn ks_one_sample(
    name: &str,
    sample: &[f64],
    cdf: impl Fn(f64) -> f64,
    level: f64,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let sorted = sorted_copy(sample, "sample")?;
    let fs: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    report_one_sample(name, &fs, level, seed)
}

/// Report assembly shared by [`ks_one_sample`] and suite checks that
/// evaluate the CDF in one batched sweep instead of pointwise.
pub(crate) fn report_one_sample(
    name: &str,
    fs_at_sorted: &[f64],
    level: f64,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let c = kolmogorov_critical(level)?;
    let n = fs_at_sorted.len();
    if n == 0 {
        return Err(VerifyError::EmptySample("cdf values".to_string()));
    }
    let statistic = ks_statistic_sorted(fs_at_sorted)?;
    let threshold = c / (n as f64).sqrt();
    Ok(CheckReport {
        name: name.to_string(),
        statistic,
        threshold,
        passed: statistic <= threshold,
        n_samples: n as u64,
        seed,
        details: format!("one-sample KS at level {level}"),
    })
}

/// Two-sample Kolmogorov-Smirnov test.
///
/// # Errors
/// [`VerifyError::EmptySample`] for an empty side, [`VerifyError::Domain`]
/// for NaN data or a bad level.
pub fn ks_two_sample(
    name: &str,
    a: &[f64],
    b: &[f64],
    level: f64,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let c = kolmogorov_critical(level)?;
    let a = sorted_copy(a, "first sample")?;
    let b = sorted_copy(b, "second sample")?;
    let (n, m) = (a.len(), b.len());

    // Merge scan over both order statistics tracking the empirical-CDF gap.
    // At a tied value both pointers advance past all copies before the gap
    // is measured, since the CDF difference is only observable between
    // distinct data values.
    let mut statistic = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < n && j < m {
        let v = a[i].min(b[j]);
        while i < n && a[i] == v {
            i += 1;
        }
        while j < m && b[j] == v {
            j += 1;
        }
        let gap = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        statistic = statistic.max(gap);
    }

    let threshold = c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt();
    Ok(CheckReport {
        name: name.to_string(),
        statistic,
        threshold,
        passed: statistic <= threshold,
        n_samples: n.min(m) as u64,
        seed,
        details: format!("two-sample KS at level {level}, sizes {n}/{m}"),
    })
}
