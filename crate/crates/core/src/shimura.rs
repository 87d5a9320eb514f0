//! Shimura cocharacters: normalization, the dimension `d`, and the check
//! that `⟨χ, μ⟩ = −d` and that `e = χ(−1)` acts on `V_μ` by `(−1)^d`.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highest_weight::{central_scalar, irreducible_character, FormalCharacter};
use crate::root_datum::{RootDatum, Side, WeightVector};

/// A root datum for `G` with its antidominant Shimura cocharacter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShimuraData {
    pub datum: RootDatum,
    /// Antidominant, with `⟨α, μ⟩ ∈ {0, −1}` for every positive root `α`.
    pub mu: WeightVector,
    pub d: usize,
}

impl ShimuraData {
    /// `d = 0`: a zero-dimensional Shimura variety (e.g. `μ = 0`, or a torus).
    pub fn is_degenerate(&self) -> bool {
        self.d == 0
    }

    /// The dual group `Ĝ`.
    pub fn dual_datum(&self) -> Result<RootDatum> {
        self.datum.dual()
    }

    /// `χ`, the sum of the positive roots of `G`.
    pub fn chi(&self) -> Result<WeightVector> {
        self.datum.sum_positive_roots()
    }

    /// Character of `V_μ`: the irreducible representation of `Ĝ` with `μ̂`
    /// as an extreme weight.
    pub fn v_mu(&self) -> Result<FormalCharacter> {
        irreducible_character(&self.dual_datum()?, &self.mu.dualize())
    }
}

/// Replaces `mu_in` by its antidominant Weyl conjugate and checks that every
/// positive root pairs with it to `0` or `−1`.
pub fn normalize_mu(datum: &RootDatum, mu_in: &WeightVector) -> Result<ShimuraData> {
    mu_in.expect_side(Side::Cocharacter)?;
    datum.ensure_valid()?;
    let mu = datum.antidominant_conjugate(mu_in)?;
    let mut d = 0;
    for p in datum.positive_system()? {
        match datum.pair(&p.root, &mu.coords) {
            0 => {}
            -1 => d += 1,
            pairing => {
                return Err(Error::AxiomViolation {
                    root: p.root,
                    pairing,
                })
            }
        }
    }
    Ok(ShimuraData {
        datum: datum.clone(),
        mu,
        d,
    })
}

/// Number of positive roots on which `μ(z)` acts as `z⁻¹`.
pub fn dimension_d(s: &ShimuraData) -> usize {
    s.datum
        .roots
        .iter()
        .filter(|r| {
            s.datum
                .simple_coordinates(r)
                .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
        })
        .filter(|r| s.datum.pair(r, &s.mu.coords) == -1)
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub datum: String,
    pub mu: Vec<i64>,
    pub chi: Vec<i64>,
    /// `⟨χ, μ⟩` from the summed vector.
    pub pairing: i64,
    /// `d` from the per-root count.
    pub d: usize,
    /// Sign by which `e = χ(−1)` acts on `V_μ`.
    pub scalar: i64,
    pub dim_v_mu: u64,
    pub degenerate: bool,
    pub pairing_passed: bool,
    pub scalar_passed: bool,
    /// `⟨λ, χ⟩ ≡ d (mod 2)` for every weight `λ` of `V_μ`.
    pub parity_passed: bool,
    pub passed: bool,
}

pub fn verify_lemma1(s: &ShimuraData) -> Result<LemmaReport> {
    let chi = s.chi()?;
    let pairing = s.datum.pair(&chi.coords, &s.mu.coords);
    let d = dimension_d(s);

    let dual = s.dual_datum()?;
    let v_mu = irreducible_character(&dual, &s.mu.dualize())?;
    let chi_hat = chi.dualize();
    let scalar = central_scalar(&dual, &v_mu, &chi_hat)?;
    let parity_passed = v_mu
        .entries
        .keys()
        .all(|w| (dual.pair(w, &chi_hat.coords) - d as i64).rem_euclid(2) == 0);

    let pairing_passed = pairing == -(d as i64);
    let scalar_passed = scalar == if d.is_multiple_of(2) { 1 } else { -1 };
    Ok(LemmaReport {
        datum: s.datum.name.clone(),
        mu: s.mu.coords.clone(),
        chi: chi.coords,
        pairing,
        d,
        scalar,
        dim_v_mu: v_mu.dimension(),
        degenerate: s.is_degenerate(),
        pairing_passed,
        scalar_passed,
        parity_passed,
        passed: pairing_passed && scalar_passed && parity_passed,
    })
}
