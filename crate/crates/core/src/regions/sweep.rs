//! Randomized validation harness for the disk theorems.
//!
//! Each sample draws admissible data (sector half-angle, element pairs, and
//! an in-region seed), evaluates the alternating two-step expression by
//! direct nested arithmetic, and checks the disk conclusion. The nested
//! route is deliberately independent of the recurrence engine so the two
//! evaluation paths cross-check each other elsewhere in the suite.
//!
//! Samples use independent generators derived from one fixed seed, so runs
//! are reproducible and order-independent.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::{origin_disk_constant, shifted_disk_constant, DEFAULT_SLACK};
use crate::error::{Error, Result};

/// Fixed default seed recorded in every sweep report.
pub const DEFAULT_SWEEP_SEED: u64 = 42;

const DEFAULT_MAX_PAIRS: usize = 10;

/// Parameters of one randomized theorem sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    /// Sector half-angles are drawn uniformly from `[0, theta_max]`.
    pub theta_max: f64,
    /// Pair counts are drawn uniformly from `1..=max_pairs`.
    pub max_pairs: usize,
    pub slack: f64,
}

impl SweepConfig {
    /// Origin-disk defaults: half-angles up to `pi/4 - 0.01`.
    pub fn origin(samples: usize) -> Self {
        Self {
            samples,
            seed: DEFAULT_SWEEP_SEED,
            theta_max: FRAC_PI_4 - 0.01,
            max_pairs: DEFAULT_MAX_PAIRS,
            slack: DEFAULT_SLACK,
        }
    }

    /// Shifted-disk defaults: half-angles up to `pi/2 - 0.01`.
    pub fn shifted(samples: usize) -> Self {
        Self {
            samples,
            seed: DEFAULT_SWEEP_SEED,
            theta_max: FRAC_PI_2 - 0.01,
            max_pairs: DEFAULT_MAX_PAIRS,
            slack: DEFAULT_SLACK,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_theta_max(mut self, theta_max: f64) -> Self {
        self.theta_max = theta_max;
        self
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = slack;
        self
    }

    fn validate(&self, theta_limit: f64) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Domain("sweep needs at least one sample".into()));
        }
        if self.max_pairs == 0 {
            return Err(Error::Domain("sweep needs at least one pair".into()));
        }
        if !self.theta_max.is_finite() || self.theta_max < 0.0 {
            return Err(Error::Domain(format!(
                "theta_max must be a nonnegative angle, got {}",
                self.theta_max
            )));
        }
        if self.theta_max >= theta_limit {
            if theta_limit == FRAC_PI_4 {
                return Err(Error::SectorTooWide {
                    half_angle: self.theta_max,
                });
            }
            return Err(Error::Domain(format!(
                "theta_max must stay below {theta_limit}, got {}",
                self.theta_max
            )));
        }
        Ok(())
    }
}

/// Aggregate outcome of a sweep. A violation is a sample whose evaluated
/// value escapes the disk (or sector, for origin disks) beyond the slack.
#[derive(Debug, Clone, Copy)]
pub struct SweepReport {
    pub samples: usize,
    pub violations: usize,
    /// Largest membership margin observed across all samples.
    pub worst_margin: f64,
    /// Sample index attaining the worst margin.
    pub worst_sample: usize,
    pub seed: u64,
    pub slack: f64,
}

fn sample_rng(seed: u64, index: u64) -> StdRng {
    StdRng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn log_uniform_magnitude(rng: &mut StdRng) -> f64 {
    10f64.powf(rng.random_range(-2.0..=2.0))
}

/// `1/(q_1 + 1/(p_1 + 1/(q_2 + ... + 1/(p_n + z))))` by direct backward
/// arithmetic.
fn nested_two_step(ps: &[Complex64], qs: &[Complex64], z: Complex64) -> Complex64 {
    let mut value = z;
    for (p, q) in ps.iter().zip(qs).rev() {
        value = (q + (p + value).inv()).inv();
    }
    value
}

/// Randomized origin-disk theorem sweep; the expected violation count is
/// zero for every admissible draw.
pub fn origin_disk_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate(FRAC_PI_4)?;
    let mut report = SweepReport {
        samples: config.samples,
        violations: 0,
        worst_margin: f64::NEG_INFINITY,
        worst_sample: 0,
        seed: config.seed,
        slack: config.slack,
    };
    for i in 0..config.samples {
        let mut rng = sample_rng(config.seed, i as u64);
        let theta = rng.random_range(0.0..=config.theta_max);
        let pairs = rng.random_range(1..=config.max_pairs);
        let mut draw = || {
            Complex64::from_polar(
                log_uniform_magnitude(&mut rng),
                rng.random_range(-theta..=theta),
            )
        };
        let ps: Vec<Complex64> = (0..pairs).map(|_| draw()).collect();
        let qs: Vec<Complex64> = (0..pairs).map(|_| draw()).collect();
        let radius = origin_disk_constant(&ps, &qs, theta)?;
        let z = Complex64::from_polar(
            rng.random_range(0.0..=radius),
            rng.random_range(-theta..=theta),
        );
        let value = nested_two_step(&ps, &qs, z);
        let margin = ((value.norm() - radius) / radius).max(value.arg().abs() - theta);
        if margin > report.worst_margin {
            report.worst_margin = margin;
            report.worst_sample = i;
        }
        if margin > config.slack {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Randomized shifted-disk theorem sweep for Stieltjes-type data (elements
/// with positive real part, half-angles up to pi/2).
pub fn shifted_disk_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate(FRAC_PI_2)?;
    let mut report = SweepReport {
        samples: config.samples,
        violations: 0,
        worst_margin: f64::NEG_INFINITY,
        worst_sample: 0,
        seed: config.seed,
        slack: config.slack,
    };
    for i in 0..config.samples {
        let mut rng = sample_rng(config.seed, i as u64);
        let theta = rng.random_range(0.0..=config.theta_max);
        let pairs = rng.random_range(1..=config.max_pairs);
        let mut draw = || {
            Complex64::from_polar(
                log_uniform_magnitude(&mut rng),
                rng.random_range(-theta..=theta),
            )
        };
        let ps: Vec<Complex64> = (0..pairs).map(|_| draw()).collect();
        let qs: Vec<Complex64> = (0..pairs).map(|_| draw()).collect();
        let radius = shifted_disk_constant(&ps, &qs)?;
        let center = Complex64::new(radius, 0.0);
        let z = center
            + Complex64::from_polar(
                rng.random_range(0.0..=radius),
                rng.random_range(0.0..2.0 * PI),
            );
        let value = nested_two_step(&ps, &qs, z);
        let margin = ((value - center).norm() - radius) / radius;
        if margin > report.worst_margin {
            report.worst_margin = margin;
            report.worst_sample = i;
        }
        if margin > config.slack {
            report.violations += 1;
        }
    }
    Ok(report)
}
