use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{qserde, rat, Rational, Vector};

pub const DEFAULT_SZ_TRIALS: usize = 20;

/// Half-width `B` of the integer sample box `[-B, B]` used for a given
/// degree bound: `B = 16 * degree_bound`.
pub fn sample_bound(degree_bound: usize) -> i64 {
    16 * degree_bound.max(1) as i64
}

/// Outcome of a randomized polynomial identity test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SzOutcome {
    /// Every trial evaluated to zero. The probability that a nonzero
    /// polynomial of the stated degree survives all trials is at most
    /// `error_bound = (degree_bound / (2B + 1))^trials`.
    IdenticallyZero {
        degree_bound: usize,
        sample_bound: i64,
        trials: usize,
        error_bound: f64,
    },
    /// A point where the polynomial does not vanish.
    NonzeroWitness {
        trial: usize,
        #[serde(with = "qserde::vector")]
        point: Vector,
        #[serde(with = "qserde::rational")]
        value: Rational,
    },
}

impl SzOutcome {
    pub fn is_identically_zero(&self) -> bool {
        matches!(self, SzOutcome::IdenticallyZero { .. })
    }
}

/// Schwartz–Zippel test: evaluates at `trials` points drawn uniformly from
/// `[-B, B]^num_vars` with `B = 16 * degree_bound`, stopping at the first
/// nonzero value. Deterministic for a given seed.
pub fn sz_zero_test<F>(
    num_vars: usize,
    degree_bound: usize,
    trials: usize,
    seed: u64,
    mut evaluator: F,
) -> SzOutcome
where
    F: FnMut(&[Rational]) -> Rational,
{
    let bound = sample_bound(degree_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let point: Vector = (0..num_vars)
            .map(|_| rat(rng.gen_range(-bound..=bound)))
            .collect();
        let value = evaluator(&point);
        if !value.is_zero() {
            return SzOutcome::NonzeroWitness {
                trial,
                point,
                value,
            };
        }
    }
    let per_trial = degree_bound as f64 / (2 * bound + 1) as f64;
    SzOutcome::IdenticallyZero {
        degree_bound,
        sample_bound: bound,
        trials,
        error_bound: per_trial.powi(trials as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_evaluator() {
        let out = sz_zero_test(3, 7, DEFAULT_SZ_TRIALS, 1, |_| Rational::zero());
        match out {
            SzOutcome::IdenticallyZero {
                error_bound,
                sample_bound,
                ..
            } => {
                assert_eq!(sample_bound, 112);
                assert!(error_bound < 1e-30);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn linear_form_found_nonzero() {
        let out = sz_zero_test(2, 1, 20, 3, |p| p[0].clone());
        match out {
            SzOutcome::NonzeroWitness { point, value, .. } => {
                assert_eq!(value, point[0]);
                assert!(!value.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let f = |p: &[Rational]| &p[0] * &p[1] - rat(3);
        assert_eq!(sz_zero_test(2, 2, 5, 77, f), sz_zero_test(2, 2, 5, 77, f));
    }
}
