//! Irreducible characters by Freudenthal's recursion, the Weyl dimension
//! formula, and the scalar by which a central element `c(−1)` acts.
//!
//! For reductive data the weights are carried as full vectors of `X`. The
//! recursion only ever looks at differences `Λ − μ`, which lie in the root
//! span, so the central directions ride along unchanged. The invariant form
//! is `B(x, y) = Σ_{β>0} ⟨x, β∨⟩⟨y, β∨⟩`, the pullback of the dot product
//! along the positive coroots; it vanishes on the central directions and is
//! Weyl-invariant because `W` permutes the coroots up to sign.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::root_datum::{RootDatum, Side, WeightVector, DEFAULT_WEYL_BOUND};
use crate::scalar::Scalar;
use crate::Rational;

/// A finite multiset of weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalCharacter {
    pub datum_name: String,
    pub side: Side,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<Vec<i64>, u64>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<Vec<i64>, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        weight: &'a [i64],
        multiplicity: u64,
    }
    s.collect_seq(entries.iter().map(|(w, &m)| Entry {
        weight: w,
        multiplicity: m,
    }))
}

impl FormalCharacter {
    pub fn new(datum_name: impl Into<String>, side: Side) -> Self {
        Self {
            datum_name: datum_name.into(),
            side,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, weight: Vec<i64>, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(weight).or_insert(0) += multiplicity;
        }
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, weight: &[i64]) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = WeightVector> + '_ {
        self.entries.keys().map(move |w| WeightVector {
            side: self.side,
            coords: w.clone(),
        })
    }

    /// Image of the multiset under a linear map.
    pub fn transform(&self, a: &IntMatrix) -> FormalCharacter {
        let mut out = FormalCharacter::new(self.datum_name.clone(), self.side);
        for (w, &m) in &self.entries {
            out.add(a.apply(w), m);
        }
        out
    }

    /// Whether every simple reflection maps the multiset to itself.
    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        datum.simple.iter().all(|&i| {
            self.entries.iter().all(|(w, &m)| {
                let image = match self.side {
                    Side::Character => datum.reflect_character(w, i),
                    Side::Cocharacter => datum.reflect_cocharacter(w, i),
                };
                self.multiplicity(&image) == m
            })
        })
    }
}

/// Killing-type invariant form on `X`.
struct InvariantForm {
    positive_coroots: Vec<Vec<i64>>,
}

impl InvariantForm {
    fn eval(&self, datum: &RootDatum, x: &[i64], y: &[i64]) -> i64 {
        self.positive_coroots
            .iter()
            .map(|c| datum.pair(x, c) * datum.pair(y, c))
            .sum()
    }
}

/// Whether `weight` occurs in the irreducible representation with dominant
/// highest weight `highest`: its dominant conjugate must lie below `highest`
/// in the dominance order.
fn occurs_below(datum: &RootDatum, highest: &WeightVector, weight: &WeightVector) -> Result<bool> {
    let dom = datum.dominant_conjugate(weight)?;
    let diff: Vec<i64> = highest
        .coords
        .iter()
        .zip(&dom.coords)
        .map(|(a, b)| a - b)
        .collect();
    Ok(match datum.simple_coordinates(&diff) {
        Some(c) => c.iter().all(|x| x.is_integral() && !x.is_negative()),
        None => false,
    })
}

/// Character of the irreducible representation of `datum` having `extreme`
/// as an extreme weight, by Freudenthal's multiplicity recursion.
pub fn irreducible_character(datum: &RootDatum, extreme: &WeightVector) -> Result<FormalCharacter> {
    irreducible_character_bounded(datum, extreme, DEFAULT_WEYL_BOUND)
}

pub fn irreducible_character_bounded(
    datum: &RootDatum,
    extreme: &WeightVector,
    bound: usize,
) -> Result<FormalCharacter> {
    extreme.expect_side(Side::Character)?;
    datum.ensure_valid()?;
    datum.weyl_group_order(bound)?;
    let highest = datum.dominant_conjugate(extreme)?;
    let positive = datum.positive_system()?;
    let form = InvariantForm {
        positive_coroots: positive.iter().map(|p| p.coroot.clone()).collect(),
    };
    let mut two_rho = vec![0; datum.rank];
    for p in &positive {
        for (s, c) in two_rho.iter_mut().zip(&p.root) {
            *s += c;
        }
    }
    let simple_roots: Vec<&Vec<i64>> = datum.simple_roots().collect();

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(highest.coords.clone(), 1)]);
    let mut frontier = vec![highest.coords.clone()];
    while !frontier.is_empty() {
        let candidates: BTreeSet<Vec<i64>> = frontier
            .iter()
            .flat_map(|w| {
                simple_roots
                    .iter()
                    .map(move |a| w.iter().zip(a.iter()).map(|(x, y)| x - y).collect())
            })
            .collect();
        let mut next = Vec::new();
        for mu in candidates {
            if !occurs_below(datum, &highest, &WeightVector::character(mu.clone()))? {
                continue;
            }
            let eta: Vec<i64> = highest.coords.iter().zip(&mu).map(|(a, b)| a - b).collect();
            let denom = 2 * form.eval(datum, &highest.coords, &eta)
                + form.eval(datum, &two_rho, &eta)
                - form.eval(datum, &eta, &eta);
            let mut numer = 0i64;
            for p in &positive {
                let mut k = 1;
                loop {
                    let shifted: Vec<i64> =
                        mu.iter().zip(&p.root).map(|(x, r)| x + k * r).collect();
                    let Some(&m) = mult.get(&shifted) else { break };
                    numer += 2 * form.eval(datum, &shifted, &p.root) * m as i64;
                    k += 1;
                }
            }
            if denom <= 0 || numer % denom != 0 || numer / denom <= 0 {
                return Err(Error::NonIntegralWeight(mu));
            }
            mult.insert(mu.clone(), (numer / denom) as u64);
            next.push(mu);
        }
        frontier = next;
    }
    Ok(FormalCharacter {
        datum_name: datum.name.clone(),
        side: Side::Character,
        entries: mult,
    })
}

/// Dimension of the irreducible representation with dominant highest weight
/// `highest`: `∏_{β>0} ⟨highest + ρ, β∨⟩ / ⟨ρ, β∨⟩`.
pub fn weyl_dimension(datum: &RootDatum, highest: &WeightVector) -> Result<u64> {
    highest.expect_side(Side::Character)?;
    if !datum.is_dominant(highest) {
        return Err(Error::NotDominant(highest.coords.clone()));
    }
    let positive = datum.positive_system()?;
    let mut two_rho = vec![0; datum.rank];
    for p in &positive {
        for (s, c) in two_rho.iter_mut().zip(&p.root) {
            *s += c;
        }
    }
    let two = Rational::from_i64(2);
    let mut dim = Rational::one();
    for p in &positive {
        let rho = Rational::from_i64(datum.pair(&two_rho, &p.coroot)) / two.clone();
        let shifted = Rational::from_i64(datum.pair(&highest.coords, &p.coroot)) + rho.clone();
        dim = dim * shifted / rho;
    }
    dim.to_int()
        .and_then(|d| u64::try_from(d).ok())
        .ok_or_else(|| Error::NonIntegralWeight(highest.coords.clone()))
}

/// The sign by which `c(−1)` acts on a representation with character `ch`,
/// where `c` is on the side opposite to the weights. `c(−1)` is central
/// exactly when every root pairs evenly with `c`; the sign is then
/// `(−1)^⟨λ, c⟩`, checked to be the same for every weight `λ`.
pub fn central_scalar(datum: &RootDatum, ch: &FormalCharacter, c: &WeightVector) -> Result<i64> {
    c.expect_side(ch.side.opposite())?;
    let roots = match ch.side {
        Side::Character => &datum.roots,
        Side::Cocharacter => &datum.coroots,
    };
    let pair = |w: &[i64]| -> i64 {
        match ch.side {
            Side::Character => datum.pair(w, &c.coords),
            Side::Cocharacter => datum.pair(&c.coords, w),
        }
    };
    if let Some(root) = roots.iter().find(|r| pair(r) % 2 != 0) {
        return Err(Error::NotCentral {
            root: root.clone(),
            pairing: pair(root),
        });
    }
    let mut weights = ch.entries.keys();
    let Some(first) = weights.next() else {
        return Ok(1);
    };
    let parity = pair(first).rem_euclid(2);
    if let Some(other) = weights.find(|w| pair(w).rem_euclid(2) != parity) {
        return Err(Error::NotScalar {
            first: first.clone(),
            second: other.clone(),
        });
    }
    Ok(if parity == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl2() -> RootDatum {
        RootDatum::new(
            "gl2",
            2,
            vec![vec![1, -1], vec![-1, 1]],
            vec![vec![1, -1], vec![-1, 1]],
            vec![0],
        )
    }

    /// Dual of GSp(4): roots are the GSp(4) coroots.
    fn gsp4_dual() -> RootDatum {
        let roots = vec![vec![1, -1, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, 0]];
        let coroots = vec![
            vec![1, -1, 0],
            vec![0, 2, -1],
            vec![1, 1, -1],
            vec![2, 0, -1],
        ];
        let neg = |v: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            v.iter().map(|r| r.iter().map(|c| -c).collect()).collect()
        };
        let mut r = roots.clone();
        r.extend(neg(&roots));
        let mut c = coroots.clone();
        c.extend(neg(&coroots));
        RootDatum::new("gsp4^", 3, r, c, vec![0, 1])
    }

    fn gl3() -> RootDatum {
        let pos = [vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        let mut roots: Vec<Vec<i64>> = pos.to_vec();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        RootDatum::new("gl3", 3, roots.clone(), roots, vec![0, 1])
    }

    #[test]
    fn gl2_standard_character() {
        let ch = irreducible_character(&gl2(), &WeightVector::character(vec![-1, 0])).unwrap();
        let expected = BTreeMap::from([(vec![-1, 0], 1), (vec![0, -1], 1)]);
        assert_eq!(ch.entries, expected);
    }

    #[test]
    fn trivial_character() {
        let ch =
            irreducible_character(&gsp4_dual(), &WeightVector::zero(Side::Character, 3)).unwrap();
        assert_eq!(ch.entries, BTreeMap::from([(vec![0, 0, 0], 1)]));
        assert_eq!(
            weyl_dimension(&gsp4_dual(), &WeightVector::zero(Side::Character, 3)).unwrap(),
            1
        );
    }

    #[test]
    fn spin_character_of_gsp4_dual() {
        let d = gsp4_dual();
        let ch = irreducible_character(&d, &WeightVector::character(vec![-1, -1, -1])).unwrap();
        assert_eq!(ch.entries.len(), 4);
        assert!(ch.entries.values().all(|&m| m == 1));
        let top = d
            .dominant_conjugate(&WeightVector::character(vec![-1, -1, -1]))
            .unwrap();
        assert_eq!(weyl_dimension(&d, &top).unwrap(), 4);
        assert!(ch.is_weyl_invariant(&d));
    }

    #[test]
    fn adjoint_of_gl3_has_multiplicity_two_at_zero() {
        // highest weight e1 − e3: the 8-dimensional adjoint representation
        let d = gl3();
        let ch = irreducible_character(&d, &WeightVector::character(vec![1, 0, -1])).unwrap();
        assert_eq!(ch.multiplicity(&[0, 0, 0]), 2);
        assert_eq!(ch.dimension(), 8);
        assert_eq!(
            weyl_dimension(&d, &WeightVector::character(vec![1, 0, -1])).unwrap(),
            8
        );
        assert!(ch.is_weyl_invariant(&d));
    }

    #[test]
    fn gl3_symmetric_square() {
        let d = gl3();
        let ch = irreducible_character(&d, &WeightVector::character(vec![2, 0, 0])).unwrap();
        assert_eq!(ch.dimension(), 6);
        assert_eq!(
            weyl_dimension(&d, &WeightVector::character(vec![2, 0, 0])).unwrap(),
            6
        );
    }

    #[test]
    fn weyl_dimension_rejects_non_dominant() {
        assert!(matches!(
            weyl_dimension(&gl2(), &WeightVector::character(vec![-1, 0])),
            Err(Error::NotDominant(_))
        ));
        assert_eq!(
            weyl_dimension(&gl2(), &WeightVector::character(vec![0, -1])).unwrap(),
            2
        );
    }

    #[test]
    fn central_scalar_examples() {
        let g = gl2();
        let ch = irreducible_character(&g, &WeightVector::character(vec![-1, 0])).unwrap();
        assert_eq!(
            central_scalar(&g, &ch, &WeightVector::cocharacter(vec![1, -1])).unwrap(),
            -1
        );
        let trivial = irreducible_character(&g, &WeightVector::zero(Side::Character, 2)).unwrap();
        assert_eq!(
            central_scalar(&g, &trivial, &WeightVector::cocharacter(vec![1, -1])).unwrap(),
            1
        );

        let d = gsp4_dual();
        let spin = irreducible_character(&d, &WeightVector::character(vec![-1, -1, -1])).unwrap();
        assert_eq!(
            central_scalar(&d, &spin, &WeightVector::cocharacter(vec![4, 2, -3])).unwrap(),
            -1
        );
    }

    #[test]
    fn central_scalar_errors() {
        let g = gl2();
        let ch = irreducible_character(&g, &WeightVector::character(vec![-1, 0])).unwrap();
        assert!(matches!(
            central_scalar(&g, &ch, &WeightVector::cocharacter(vec![1, 0])),
            Err(Error::NotCentral { .. })
        ));
        let mut mixed = FormalCharacter::new("gl2", Side::Character);
        mixed.add(vec![0, 0], 1);
        mixed.add(vec![1, 0], 1);
        assert!(matches!(
            central_scalar(&g, &mixed, &WeightVector::cocharacter(vec![1, 1])),
            Err(Error::NotScalar { .. })
        ));
        assert!(matches!(
            central_scalar(&g, &ch, &WeightVector::character(vec![1, -1])),
            Err(Error::WrongSide { .. })
        ));
    }

    #[test]
    fn weights_differ_by_root_lattice() {
        let d = gl3();
        let ch = irreducible_character(&d, &WeightVector::character(vec![2, 1, 0])).unwrap();
        let ws: Vec<_> = ch.entries.keys().collect();
        for a in &ws {
            for b in &ws {
                let diff: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                assert!(d.in_root_lattice(&diff));
            }
        }
    }
}
