//! Boltzmann rejection samplers for closable and uniquely closable skeletons.
//!
//! Each run grows a skeleton top-down, drawing a uniform real in `[0,1)` per
//! constructor decision and comparing it against fixed thresholds tuned to the
//! dominant singularity. A run is cut short as soon as it would exceed
//! `max_size`, and thrown away if it finishes below `min_size`. Conditioned on
//! size, the output is uniform.
//!
//! The draw sequence is fixed: one draw for the root; a unary node draws one
//! value for its child; a binary node draws two values (left, then right)
//! before expanding either child. In the Motzkin phase one draw is compared
//! against the leaf threshold and then against the unary threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::size::SIZE_POLICY;
use crate::term::{Builder, Shape, Skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleFamily {
    Closable,
    UniquelyClosable,
}

impl SampleFamily {
    pub fn name(self) -> &'static str {
        match self {
            SampleFamily::Closable => "closable",
            SampleFamily::UniquelyClosable => "uniquely_closable",
        }
    }

    pub fn accepts(self, skeleton: &Skeleton) -> bool {
        match self {
            SampleFamily::Closable => skeleton.is_closable(),
            SampleFamily::UniquelyClosable => skeleton.is_uniquely_closable(),
        }
    }
}

/// Probability thresholds. A decision takes the named branch when the draw is
/// `<=` the threshold; the Motzkin thresholds are cumulative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Closable root: lambda over a Motzkin tree, else application.
    pub closable_lambda: f64,
    /// Motzkin phase: leaf.
    pub motzkin_leaf: f64,
    /// Motzkin phase: leaf or lambda.
    pub motzkin_unary: f64,
    /// Uniquely closable root: lambda over a lambda-free tree, else application.
    pub unique_lambda: f64,
    /// Lambda-free phase: leaf, else application.
    pub closed_above_leaf: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            closable_lambda: 0.8730398709632761,
            motzkin_leaf: 0.3341408333975344,
            motzkin_unary: 0.667473848839429,
            unique_lambda: 0.5001253328728457,
            closed_above_leaf: 0.5001253328728457,
        }
    }
}

/// When the remaining budget is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BudgetGuard {
    /// Overflow only when a constructor does not fit in what is left.
    #[default]
    Fit,
    /// Additionally refuse every threshold branch while nothing has been
    /// spent, which forces an application at the root.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub family: SampleFamily,
    pub min_size: usize,
    pub max_size: usize,
    pub tries_budget: u64,
    pub seed: u64,
    pub thresholds: Thresholds,
    pub guard: BudgetGuard,
}

impl SamplerConfig {
    pub const DEFAULT_TRIES: u64 = 100_000;

    pub fn new(family: SampleFamily, min_size: usize, max_size: usize, seed: u64) -> Self {
        SamplerConfig {
            family,
            min_size,
            max_size,
            tries_budget: Self::DEFAULT_TRIES,
            seed,
            thresholds: Thresholds::default(),
            guard: BudgetGuard::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        let t = &self.thresholds;
        let all = [
            ("closable_lambda", t.closable_lambda),
            ("motzkin_leaf", t.motzkin_leaf),
            ("motzkin_unary", t.motzkin_unary),
            ("unique_lambda", t.unique_lambda),
            ("closed_above_leaf", t.closed_above_leaf),
        ];
        for (name, p) in all {
            if !(p > 0.0 && p < 1.0) {
                return Err(SamplerError::InvalidConfig(format!(
                    "threshold {name} = {p} is not strictly between 0 and 1"
                )));
            }
        }
        if t.motzkin_leaf > t.motzkin_unary {
            return Err(SamplerError::InvalidConfig(
                "motzkin_leaf exceeds motzkin_unary".into(),
            ));
        }
        if self.min_size > self.max_size {
            return Err(SamplerError::InvalidConfig(format!(
                "min_size {} exceeds max_size {}",
                self.min_size, self.max_size
            )));
        }
        if self.tries_budget == 0 {
            return Err(SamplerError::InvalidConfig(
                "tries_budget must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Why a single run was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("size budget exhausted")]
    Overflow,
    #[error("finished at size {size}, below the window")]
    Underflow { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("invalid sampler config: {0}")]
    InvalidConfig(String),
    #[error("no sample in the size window after {tries} tries")]
    BudgetExhausted { tries: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub skeleton: Skeleton,
    /// 1-based index of the accepted run.
    pub attempts: u64,
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    Closable,
    Motzkin,
    Unique,
    ClosedAbove,
}

/// One generation run.
pub fn sample_once<R: Rng + ?Sized>(
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<Skeleton, Rejection> {
    let t = &cfg.thresholds;
    let max = cfg.max_size;
    let mut left = max;
    let root = match cfg.family {
        SampleFamily::Closable => Phase::Closable,
        SampleFamily::UniquelyClosable => Phase::Unique,
    };
    let mut stack = vec![(root, rng.gen::<f64>())];
    let mut builder = Builder::<()>::new();

    while let Some((phase, r)) = stack.pop() {
        let open = match cfg.guard {
            BudgetGuard::Fit => true,
            BudgetGuard::Strict => left < max,
        };
        let below = |p: f64| open && r <= p;
        let shape = match phase {
            Phase::Closable if below(t.closable_lambda) => Shape::Unary,
            Phase::Motzkin if below(t.motzkin_leaf) => Shape::Leaf(()),
            Phase::Motzkin if below(t.motzkin_unary) => Shape::Unary,
            Phase::Unique if below(t.unique_lambda) => Shape::Unary,
            Phase::ClosedAbove if below(t.closed_above_leaf) => Shape::Leaf(()),
            _ => Shape::Binary,
        };
        let cost = match shape {
            Shape::Leaf(()) => SIZE_POLICY.variable_cost,
            Shape::Unary => SIZE_POLICY.lambda_cost,
            Shape::Binary => SIZE_POLICY.application_cost,
        };
        left = left.checked_sub(cost).ok_or(Rejection::Overflow)?;
        match shape {
            Shape::Leaf(()) => {}
            Shape::Unary => {
                let child = match phase {
                    Phase::Closable | Phase::Motzkin => Phase::Motzkin,
                    Phase::Unique | Phase::ClosedAbove => Phase::ClosedAbove,
                };
                stack.push((child, rng.gen()));
            }
            Shape::Binary => {
                let r1 = rng.gen();
                let r2 = rng.gen();
                stack.push((phase, r2));
                stack.push((phase, r1));
            }
        }
        builder.push(shape);
    }

    let skeleton = builder.finish().expect("generation completes the tree");
    let size = max - left;
    if size < cfg.min_size {
        return Err(Rejection::Underflow { size });
    }
    Ok(skeleton)
}

/// Repeats [`sample_once`] until a run lands in the window.
pub fn sample<R: Rng + ?Sized>(cfg: &SamplerConfig, rng: &mut R) -> Result<Sample, SamplerError> {
    cfg.validate()?;
    for attempts in 1..=cfg.tries_budget {
        if let Ok(skeleton) = sample_once(cfg, rng) {
            return Ok(Sample { skeleton, attempts });
        }
    }
    Err(SamplerError::BudgetExhausted {
        tries: cfg.tries_budget,
    })
}

/// A config together with its own generator, seeded from `cfg.seed`.
#[derive(Debug, Clone)]
pub struct Sampler {
    cfg: SamplerConfig,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(cfg: SamplerConfig) -> Result<Self, SamplerError> {
        cfg.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Ok(Sampler { cfg, rng })
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.cfg
    }

    pub fn sample_once(&mut self) -> Result<Skeleton, Rejection> {
        sample_once(&self.cfg, &mut self.rng)
    }

    pub fn sample(&mut self) -> Result<Sample, SamplerError> {
        sample(&self.cfg, &mut self.rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_satisfy_family_and_window() {
        for family in [SampleFamily::Closable, SampleFamily::UniquelyClosable] {
            let mut s = Sampler::new(SamplerConfig::new(family, 0, 10, 7)).unwrap();
            for _ in 0..500 {
                let got = s.sample().unwrap();
                assert!(family.accepts(&got.skeleton), "{}", got.skeleton);
                assert!(got.skeleton.size() <= 10);
            }
        }
    }

    #[test]
    fn forced_unary_overflows() {
        let mut cfg = SamplerConfig::new(SampleFamily::Closable, 0, 50, 1);
        cfg.thresholds.closable_lambda = 1.0;
        cfg.thresholds.motzkin_leaf = 0.0;
        cfg.thresholds.motzkin_unary = 1.0;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert_eq!(sample_once(&cfg, &mut rng), Err(Rejection::Overflow));
        }
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn underflow_reports_size() {
        let mut cfg = SamplerConfig::new(SampleFamily::UniquelyClosable, 5, 10, 0);
        cfg.thresholds.unique_lambda = 0.999;
        cfg.thresholds.closed_above_leaf = 0.999;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            sample_once(&cfg, &mut rng),
            Err(Rejection::Underflow { size: 1 })
        );
    }

    #[test]
    fn same_seed_same_output() {
        let cfg = SamplerConfig::new(SampleFamily::Closable, 200, 2000, 42);
        let a = Sampler::new(cfg.clone()).unwrap().sample().unwrap();
        let b = Sampler::new(cfg).unwrap().sample().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn strict_guard_forces_application_root() {
        let mut cfg = SamplerConfig::new(SampleFamily::UniquelyClosable, 0, 20, 9);
        cfg.guard = BudgetGuard::Strict;
        let mut s = Sampler::new(cfg).unwrap();
        for _ in 0..200 {
            let got = s.sample().unwrap().skeleton;
            assert!(matches!(got, Skeleton::Binary(..)), "{got}");
            assert!(got.is_uniquely_closable());
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = SamplerConfig::new(SampleFamily::Closable, 5, 4, 0);
        assert!(cfg.validate().is_err());
        cfg.max_size = 5;
        cfg.tries_budget = 0;
        assert!(matches!(
            sample(&cfg, &mut ChaCha8Rng::seed_from_u64(0)),
            Err(SamplerError::InvalidConfig(_))
        ));
    }
}
