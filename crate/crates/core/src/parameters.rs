//! Torus-valued parameters and the twist identity
//! `(r_L ∘ φ) ⊗ |·|^{−d/2} = r_C ∘ φ̃`, checked on exact rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cgroup::{CCharacter, CGroupDatum};
use crate::error::{Error, Result};
use crate::highest_weight::FormalCharacter;
use crate::scalar::Scalar;
use crate::shimura::ShimuraData;

/// A point `(t, s)` of `T̂ × GL₁`: `values[i]` is the `i`-th standard
/// character of `T̂` at `t`, and `half_norm` stands for `|w|^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusParameter<T> {
    values: Vec<T>,
    half_norm: T,
}

impl<T: Scalar> TorusParameter<T> {
    pub fn new(values: Vec<T>, half_norm: T) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidDatum(
                "torus parameter values must be nonzero".into(),
            ));
        }
        if !half_norm.is_positive() {
            return Err(Error::InvalidDatum("half norm must be positive".into()));
        }
        Ok(Self { values, half_norm })
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            values: vec![T::one(); rank],
            half_norm: T::one(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn half_norm(&self) -> &T {
        &self.half_norm
    }

    /// Componentwise product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "parameters of rank {} and {}",
                self.values.len(),
                other.values.len()
            )));
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
            half_norm: self.half_norm.clone() * other.half_norm.clone(),
        })
    }

    /// Draws values with numerators and denominators in `[1, 50]`, random
    /// signs on `t`, and `s > 0`.
    pub fn random<R: Rng>(rng: &mut R, rank: usize) -> Self {
        let mut draw = |signed: bool| {
            let n = rng.random_range(1..=50i64);
            let d = rng.random_range(1..=50i64);
            let sign = if signed && rng.random_bool(0.5) {
                -1
            } else {
                1
            };
            T::from_fraction(sign * n, d)
        };
        let values = (0..rank).map(|_| draw(true)).collect();
        Self {
            values,
            half_norm: draw(false),
        }
    }
}

/// `∏ values_i^{exponents_i}`.
pub fn evaluate_monomial<T: Scalar>(exponents: &[i64], values: &[T]) -> T {
    exponents
        .iter()
        .zip(values)
        .fold(T::one(), |acc, (&e, v)| acc * v.powi(e))
}

fn check_len(weight: &[i64], rank: usize) -> Result<()> {
    if weight.len() == rank {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "weight {weight:?} has length {}, expected {rank}",
            weight.len()
        )))
    }
}

/// Multiset `{ λ(t) · s^{exponent} }`, sorted.
pub fn evaluate_with_twist<T: Scalar>(
    rl: &FormalCharacter,
    p: &TorusParameter<T>,
    exponent: i64,
) -> Result<Vec<T>> {
    let twist = p.half_norm.powi(exponent);
    let mut out = Vec::with_capacity(rl.dimension() as usize);
    for (lambda, &m) in &rl.entries {
        check_len(lambda, p.values.len())?;
        let v = evaluate_monomial(lambda, &p.values) * twist.clone();
        out.extend(std::iter::repeat_n(v, m as usize));
    }
    out.sort();
    Ok(out)
}

/// `(r_L ∘ φ) ⊗ |·|^{−d/2}` at `p`, as a sorted multiset.
pub fn evaluate_twisted_rl<T: Scalar>(
    rl: &FormalCharacter,
    p: &TorusParameter<T>,
    d: usize,
) -> Result<Vec<T>> {
    evaluate_with_twist(rl, p, -(d as i64))
}

/// Image of `(t, s)` in the quotient torus: the value of each character
/// lattice basis vector `(λ, k)` at it, `λ(t) · s^k`.
pub fn embed_parameter<T: Scalar>(c: &CGroupDatum<T>, p: &TorusParameter<T>) -> Result<Vec<T>> {
    let rank = c.rank();
    if p.values.len() != rank {
        return Err(Error::DimensionMismatch(format!(
            "parameter of rank {}, datum of rank {rank}",
            p.values.len()
        )));
    }
    Ok(c.char_basis()
        .iter()
        .map(|b| evaluate_monomial(&b[..rank], &p.values) * p.half_norm.powi(b[rank]))
        .collect())
}

/// `r_C` at an embedded point, using only quotient-lattice coordinates.
pub fn evaluate_rc<T: Scalar>(rc: &CCharacter, embedded: &[T]) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(rc.character.dimension() as usize);
    for (w, &m) in &rc.character.entries {
        let coords = rc
            .coordinates
            .get(w)
            .ok_or_else(|| Error::CoordinateExpressionFailed(w.clone()))?;
        check_len(coords, embedded.len())?;
        let v = evaluate_monomial(coords, embedded);
        out.extend(std::iter::repeat_n(v, m as usize));
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryCheck<T> {
    pub side_a: Vec<T>,
    pub side_b: Vec<T>,
    pub passed: bool,
}

pub fn verify_corollary<T: Scalar>(
    s: &ShimuraData,
    c: &CGroupDatum<T>,
    rl: &FormalCharacter,
    rc: &CCharacter,
    p: &TorusParameter<T>,
) -> Result<CorollaryCheck<T>> {
    verify_corollary_with_twist(c, rl, rc, p, -(s.d as i64))
}

/// Same comparison with an arbitrary exponent of `s` on the `r_L` side.
pub fn verify_corollary_with_twist<T: Scalar>(
    c: &CGroupDatum<T>,
    rl: &FormalCharacter,
    rc: &CCharacter,
    p: &TorusParameter<T>,
    exponent: i64,
) -> Result<CorollaryCheck<T>> {
    let side_a = evaluate_with_twist(rl, p, exponent)?;
    let side_b = evaluate_rc(rc, &embed_parameter(c, p)?)?;
    let passed = side_a == side_b;
    Ok(CorollaryCheck {
        side_a,
        side_b,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialTranscript {
    pub trial: u64,
    pub values: Vec<String>,
    pub half_norm: String,
    pub side_a: Vec<String>,
    pub side_b: Vec<String>,
    pub passed: bool,
    /// The `s^{−d+1}` comparison; `None` when `s = 1`, where it cannot fail.
    pub negative_control_failed: Option<bool>,
}

impl TrialTranscript {
    /// Whether this trial behaves as expected in both comparisons.
    pub fn ok(&self) -> bool {
        self.passed && self.negative_control_failed != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub seed: u64,
    pub trials: u64,
    pub failures: u64,
    /// Trials with `s ≠ 1`.
    pub negative_controls: u64,
    /// Trials with `s ≠ 1` where the perturbed exponent was rejected.
    pub negative_controls_rejected: u64,
    pub transcripts: Vec<TrialTranscript>,
}

impl TrialSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.negative_controls_rejected == self.negative_controls
    }
}

fn strings<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Parameter for trial `trial` under `seed`; trials are independent streams.
pub fn trial_parameter<T: Scalar>(seed: u64, trial: u64, rank: usize) -> TorusParameter<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    TorusParameter::random(&mut rng, rank)
}

pub fn run_single_trial<T: Scalar>(
    s: &ShimuraData,
    c: &CGroupDatum<T>,
    rl: &FormalCharacter,
    rc: &CCharacter,
    seed: u64,
    trial: u64,
) -> Result<TrialTranscript> {
    let p = trial_parameter::<T>(seed, trial, c.rank());
    let check = verify_corollary(s, c, rl, rc, &p)?;
    let negative_control_failed = if p.half_norm.is_one() {
        None
    } else {
        Some(!verify_corollary_with_twist(c, rl, rc, &p, 1 - s.d as i64)?.passed)
    };
    Ok(TrialTranscript {
        trial,
        values: strings(&p.values),
        half_norm: p.half_norm.to_string(),
        side_a: strings(&check.side_a),
        side_b: strings(&check.side_b),
        passed: check.passed,
        negative_control_failed,
    })
}

/// Runs `trials` seeded trials in parallel. With `keep_all` false only
/// misbehaving trials keep their transcripts.
pub fn run_corollary_trials<T: Scalar>(
    s: &ShimuraData,
    c: &CGroupDatum<T>,
    rl: &FormalCharacter,
    rc: &CCharacter,
    seed: u64,
    trials: u64,
    keep_all: bool,
) -> Result<TrialSummary> {
    let transcripts = (0..trials)
        .into_par_iter()
        .map(|k| run_single_trial(s, c, rl, rc, seed, k))
        .collect::<Result<Vec<_>>>()?;
    let failures = transcripts.iter().filter(|t| !t.passed).count() as u64;
    let negative_controls = transcripts
        .iter()
        .filter(|t| t.negative_control_failed.is_some())
        .count() as u64;
    let negative_controls_rejected = transcripts
        .iter()
        .filter(|t| t.negative_control_failed == Some(true))
        .count() as u64;
    let transcripts = if keep_all {
        transcripts
    } else {
        transcripts.into_iter().filter(|t| !t.ok()).collect()
    };
    Ok(TrialSummary {
        seed,
        trials,
        failures,
        negative_controls,
        negative_controls_rejected,
        transcripts,
    })
}
