//! Based root data, Langlands duality and Weyl group actions.
//!
//! A [`RootDatum`] lives in two paired copies of `ℤ^rank`: the character
//! lattice `X` holding the roots and the cocharacter lattice `Y` holding the
//! coroots. The pairing `⟨x, y⟩ = xᵀ · P · y` is the dot product unless a
//! unimodular `P` is supplied.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Matrix};
use crate::scalar::Scalar;
use crate::Rational;

/// Default cap on explicitly enumerated Weyl groups.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

/// Cap on the number of roots produced by reflection closure.
pub const ROOT_CLOSURE_BOUND: usize = 100_000;

/// Which lattice of a root datum a vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Character,
    Cocharacter,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Character => Side::Cocharacter,
            Side::Cocharacter => Side::Character,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Character => "character",
            Side::Cocharacter => "cocharacter",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    pub side: Side,
    pub coords: Vec<i64>,
}

impl WeightVector {
    pub fn character(coords: Vec<i64>) -> Self {
        Self {
            side: Side::Character,
            coords,
        }
    }

    pub fn cocharacter(coords: Vec<i64>) -> Self {
        Self {
            side: Side::Cocharacter,
            coords,
        }
    }

    pub fn zero(side: Side, rank: usize) -> Self {
        Self {
            side,
            coords: vec![0; rank],
        }
    }

    /// The same coordinates read in the dual datum, where `X` and `Y` trade
    /// places.
    pub fn dualize(&self) -> Self {
        Self {
            side: self.side.opposite(),
            coords: self.coords.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn expect_side(&self, side: Side) -> Result<()> {
        if self.side == side {
            Ok(())
        } else {
            Err(Error::WrongSide {
                expected: side.name(),
                found: self.side.name(),
            })
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::lattice::fmt_vec(&self.coords))
    }
}

/// A positive root with its coroot and its coordinates in the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub simple_coords: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub invariant: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub datum: String,
    pub passed: bool,
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, invariant: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.invariant == invariant)
    }

    fn summary(&self) -> String {
        let parts: Vec<String> = self
            .failures()
            .map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.invariant),
                None => c.invariant.to_string(),
            })
            .collect();
        format!("{}: {}", self.datum, parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    /// Pinned automorphisms, acting on `X` as `x ↦ A·x`.
    pub automorphisms: Vec<IntMatrix>,
    pub pairing: IntMatrix,
}

impl RootDatum {
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
    ) -> Self {
        Self {
            name: name.into(),
            rank,
            roots,
            coroots,
            simple,
            automorphisms: Vec::new(),
            pairing: IntMatrix::identity(rank),
        }
    }

    /// A split torus of the given rank: no roots at all.
    pub fn torus(name: impl Into<String>, rank: usize) -> Self {
        Self::new(name, rank, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn with_automorphisms(mut self, automorphisms: Vec<IntMatrix>) -> Self {
        self.automorphisms = automorphisms;
        self
    }

    pub fn with_pairing(mut self, pairing: IntMatrix) -> Self {
        self.pairing = pairing;
        self
    }

    /// `⟨x, y⟩` for `x ∈ X`, `y ∈ Y`.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let py = self.pairing.apply(y);
        x.iter().zip(&py).map(|(a, b)| a * b).sum()
    }

    /// Pairs two weight vectors on opposite sides, in either order.
    pub fn pair_weights(&self, a: &WeightVector, b: &WeightVector) -> Result<i64> {
        match (a.side, b.side) {
            (Side::Character, Side::Cocharacter) => Ok(self.pair(&a.coords, &b.coords)),
            (Side::Cocharacter, Side::Character) => Ok(self.pair(&b.coords, &a.coords)),
            _ => Err(Error::WrongSide {
                expected: a.side.opposite().name(),
                found: b.side.name(),
            }),
        }
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.simple.iter().map(|&i| &self.roots[i])
    }

    pub fn simple_coroots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.simple.iter().map(|&i| &self.coroots[i])
    }

    /// `s_α(x) = x − ⟨x, α∨⟩ α` on `X`.
    pub fn reflect_character(&self, x: &[i64], root: usize) -> Vec<i64> {
        let n = self.pair(x, &self.coroots[root]);
        x.iter()
            .zip(&self.roots[root])
            .map(|(a, r)| a - n * r)
            .collect()
    }

    /// `s_α∨(y) = y − ⟨α, y⟩ α∨` on `Y`.
    pub fn reflect_cocharacter(&self, y: &[i64], root: usize) -> Vec<i64> {
        let n = self.pair(&self.roots[root], y);
        y.iter()
            .zip(&self.coroots[root])
            .map(|(a, r)| a - n * r)
            .collect()
    }

    pub fn reflect(&self, w: &WeightVector, root: usize) -> WeightVector {
        let coords = match w.side {
            Side::Character => self.reflect_character(&w.coords, root),
            Side::Cocharacter => self.reflect_cocharacter(&w.coords, root),
        };
        WeightVector {
            side: w.side,
            coords,
        }
    }

    /// The automorphism of `Y` dual to `a` on `X`: `P⁻¹ · a⁻ᵀ · P`.
    pub fn dual_automorphism(&self, a: &IntMatrix) -> Option<IntMatrix> {
        let p_inv = self.pairing.unimodular_inverse()?;
        let a_inv_t = a.unimodular_inverse()?.transpose();
        Some(&(&p_inv * &a_inv_t) * &self.pairing)
    }

    /// Coordinates of `x` in the simple roots, if `x` lies in their span.
    pub fn simple_coordinates(&self, x: &[i64]) -> Option<Vec<Rational>> {
        if self.simple.is_empty() {
            return x.iter().all(|&c| c == 0).then(Vec::new);
        }
        let m = Matrix::from_rows(
            self.simple_roots()
                .map(|r| r.iter().map(|&c| Rational::from_i64(c)).collect())
                .collect(),
        )
        .ok()?;
        let target: Vec<Rational> = x.iter().map(|&c| Rational::from_i64(c)).collect();
        m.row_combination(&target)
    }

    /// Whether `x ∈ X` lies in the root lattice.
    pub fn in_root_lattice(&self, x: &[i64]) -> bool {
        self.simple_coordinates(x)
            .is_some_and(|c| c.iter().all(Scalar::is_integral))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let shape = self.shape_problem();
        checks.push(InvariantCheck {
            invariant: "shape",
            passed: shape.is_none(),
            detail: shape.clone(),
        });
        if shape.is_some() {
            return ValidationReport {
                datum: self.name.clone(),
                passed: false,
                checks,
            };
        }
        let mut push = |invariant: &'static str, problem: Option<String>| {
            checks.push(InvariantCheck {
                invariant,
                passed: problem.is_none(),
                detail: problem,
            });
        };

        push(
            "pairing_unimodular",
            match self.pairing.unimodular_inverse() {
                Some(_) => None,
                None => Some("pairing matrix is not invertible over the integers".into()),
            },
        );
        push("distinct_nonzero_roots", self.distinct_roots_problem());
        push("root_coroot_pairing", self.pairing_two_problem());
        push("root_reflection_closure", self.root_closure_problem());
        push("coroot_reflection_closure", self.coroot_closure_problem());
        push("simple_independent", self.simple_independence_problem());
        push("simple_positivity", self.simple_positivity_problem());
        push("pinned_automorphisms", self.automorphism_problem());

        let passed = checks.iter().all(|c| c.passed);
        ValidationReport {
            datum: self.name.clone(),
            passed,
            checks,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.passed {
            Ok(())
        } else {
            Err(Error::InvalidDatum(report.summary()))
        }
    }

    fn shape_problem(&self) -> Option<String> {
        if self.rank == 0 {
            return Some("rank must be positive".into());
        }
        if self.roots.len() != self.coroots.len() {
            return Some(format!(
                "{} roots but {} coroots",
                self.roots.len(),
                self.coroots.len()
            ));
        }
        for (kind, list) in [("root", &self.roots), ("coroot", &self.coroots)] {
            if let Some(i) = list.iter().position(|v| v.len() != self.rank) {
                return Some(format!(
                    "{kind} {i} has length {}, expected {}",
                    list[i].len(),
                    self.rank
                ));
            }
        }
        if let Some(&i) = self.simple.iter().find(|&&i| i >= self.roots.len()) {
            return Some(format!("simple index {i} out of range"));
        }
        let distinct: HashSet<_> = self.simple.iter().collect();
        if distinct.len() != self.simple.len() {
            return Some("simple indices repeat".into());
        }
        if let Some(i) = self
            .automorphisms
            .iter()
            .position(|a| a.nrows() != self.rank || a.ncols() != self.rank)
        {
            return Some(format!("automorphism {i} is not {0}x{0}", self.rank));
        }
        if self.pairing.nrows() != self.rank || self.pairing.ncols() != self.rank {
            return Some(format!("pairing is not {0}x{0}", self.rank));
        }
        None
    }

    fn distinct_roots_problem(&self) -> Option<String> {
        if let Some(r) = self.roots.iter().find(|r| r.iter().all(|&c| c == 0)) {
            return Some(format!("zero root {r:?}"));
        }
        let mut seen = HashSet::new();
        self.roots
            .iter()
            .find(|r| !seen.insert(*r))
            .map(|r| format!("root {r:?} listed twice"))
    }

    fn pairing_two_problem(&self) -> Option<String> {
        self.roots.iter().zip(&self.coroots).find_map(|(r, c)| {
            let p = self.pair(r, c);
            (p != 2).then(|| format!("<{r:?}, {c:?}> = {p}"))
        })
    }

    fn root_closure_problem(&self) -> Option<String> {
        let index: HashMap<&Vec<i64>, usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        for i in 0..self.roots.len() {
            for j in 0..self.roots.len() {
                let image = self.reflect_character(&self.roots[j], i);
                match index.get(&image) {
                    None => {
                        return Some(format!(
                            "s_{:?} maps root {:?} to {image:?}, which is not a root",
                            self.roots[i], self.roots[j]
                        ))
                    }
                    Some(&k) => {
                        let co_image = self.reflect_cocharacter(&self.coroots[j], i);
                        if self.coroots[k] != co_image {
                            return Some(format!(
                                "coroot of {image:?} is {:?}, reflection gives {co_image:?}",
                                self.coroots[k]
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    fn coroot_closure_problem(&self) -> Option<String> {
        let coroots: HashSet<&Vec<i64>> = self.coroots.iter().collect();
        for i in 0..self.roots.len() {
            for c in &self.coroots {
                let image = self.reflect_cocharacter(c, i);
                if !coroots.contains(&image) {
                    return Some(format!(
                        "s_{:?} maps coroot {c:?} to {image:?}, which is not a coroot",
                        self.coroots[i]
                    ));
                }
            }
        }
        None
    }

    fn simple_independence_problem(&self) -> Option<String> {
        let k = self.simple.len();
        if k == 0 {
            return (!self.roots.is_empty()).then(|| "roots present but no simple roots".into());
        }
        for (kind, list) in [("roots", &self.roots), ("coroots", &self.coroots)] {
            let m: Matrix<Rational> = Matrix::from_rows(
                self.simple
                    .iter()
                    .map(|&i| list[i].iter().map(|&c| Rational::from_i64(c)).collect())
                    .collect(),
            )
            .expect("shape checked");
            if m.rank() < k {
                return Some(format!("simple {kind} are linearly dependent"));
            }
        }
        None
    }

    fn simple_positivity_problem(&self) -> Option<String> {
        for r in &self.roots {
            let Some(coords) = self.simple_coordinates(r) else {
                return Some(format!(
                    "root {r:?} is outside the span of the simple roots"
                ));
            };
            if !coords.iter().all(Scalar::is_integral) {
                return Some(format!(
                    "root {r:?} is not an integral combination of simple roots"
                ));
            }
            let nonneg = coords.iter().all(|c| !c.is_negative());
            let nonpos = coords.iter().all(|c| !c.is_positive());
            if !nonneg && !nonpos {
                return Some(format!("root {r:?} has mixed-sign simple coordinates"));
            }
        }
        None
    }

    fn automorphism_problem(&self) -> Option<String> {
        let simple_roots: BTreeSet<&Vec<i64>> = self.simple_roots().collect();
        let simple_coroots: BTreeSet<&Vec<i64>> = self.simple_coroots().collect();
        for (k, a) in self.automorphisms.iter().enumerate() {
            let Some(b) = self.dual_automorphism(a) else {
                return Some(format!("automorphism {k} is not unimodular"));
            };
            let images: BTreeSet<Vec<i64>> = self.simple_roots().map(|r| a.apply(r)).collect();
            if images.iter().collect::<BTreeSet<_>>() != simple_roots {
                return Some(format!(
                    "automorphism {k} does not permute the simple roots"
                ));
            }
            let co_images: BTreeSet<Vec<i64>> = self.simple_coroots().map(|c| b.apply(c)).collect();
            if co_images.iter().collect::<BTreeSet<_>>() != simple_coroots {
                return Some(format!(
                    "automorphism {k} does not permute the simple coroots"
                ));
            }
        }
        None
    }

    /// The Langlands dual datum: roots and coroots exchanged, pairing
    /// transposed, automorphisms replaced by their duals. The name gains or
    /// loses a trailing `^` so that dualizing twice is the identity.
    pub fn dual(&self) -> Result<RootDatum> {
        self.ensure_valid()?;
        let automorphisms = self
            .automorphisms
            .iter()
            .map(|a| {
                self.dual_automorphism(a)
                    .expect("validated automorphisms are unimodular")
            })
            .collect();
        let name = match self.name.strip_suffix('^') {
            Some(base) => base.to_string(),
            None => format!("{}^", self.name),
        };
        let dual = RootDatum {
            name,
            rank: self.rank,
            roots: self.coroots.clone(),
            coroots: self.roots.clone(),
            simple: self.simple.clone(),
            automorphisms,
            pairing: self.pairing.transpose(),
        };
        dual.ensure_valid()?;
        Ok(dual)
    }

    /// Positive roots with coroots and simple coordinates, generated from the
    /// simple system by reflection closure and checked against the listed
    /// roots. Sorted by height, then by simple coordinates (descending).
    pub fn positive_system(&self) -> Result<Vec<PositiveRoot>> {
        let simple_coroots: Vec<&Vec<i64>> = self.simple_coroots().collect();
        let mut seen: HashMap<Vec<i64>, (Vec<i64>, Vec<i64>)> = HashMap::new();
        let mut queue = VecDeque::new();
        for (k, &i) in self.simple.iter().enumerate() {
            let mut coords = vec![0; self.simple.len()];
            coords[k] = 1;
            seen.insert(self.roots[i].clone(), (self.coroots[i].clone(), coords));
            queue.push_back(self.roots[i].clone());
        }
        while let Some(root) = queue.pop_front() {
            let (coroot, coords) = seen[&root].clone();
            for (k, &i) in self.simple.iter().enumerate() {
                let n = self.pair(&root, simple_coroots[k]);
                if n == 0 {
                    continue;
                }
                let image = self.reflect_character(&root, i);
                if seen.contains_key(&image) {
                    continue;
                }
                let co_image = self.reflect_cocharacter(&coroot, i);
                let mut c = coords.clone();
                c[k] -= n;
                seen.insert(image.clone(), (co_image, c));
                if seen.len() > ROOT_CLOSURE_BOUND {
                    return Err(Error::NonTerminating {
                        bound: ROOT_CLOSURE_BOUND,
                    });
                }
                queue.push_back(image);
            }
        }

        if seen.len() != self.roots.len() {
            return Err(Error::InvalidDatum(format!(
                "{}: simple system generates {} roots, {} listed",
                self.name,
                seen.len(),
                self.roots.len()
            )));
        }
        let mut positive = Vec::new();
        for (root, (coroot, coords)) in seen {
            match self.roots.iter().position(|r| *r == root) {
                Some(i) if self.coroots[i] == coroot => {}
                _ => {
                    return Err(Error::InvalidDatum(format!(
                        "{}: generated root {root:?} with coroot {coroot:?} is not listed",
                        self.name
                    )))
                }
            }
            if coords.iter().all(|&c| c >= 0) {
                positive.push(PositiveRoot {
                    root,
                    coroot,
                    simple_coords: coords,
                });
            } else if !coords.iter().all(|&c| c <= 0) {
                return Err(Error::InvalidDatum(format!(
                    "{}: root {root:?} has mixed-sign simple coordinates",
                    self.name
                )));
            }
        }
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.simple_coords.cmp(&a.simple_coords))
        });
        Ok(positive)
    }

    /// Positive roots, as character-side vectors.
    pub fn positive_closure(&self) -> Result<Vec<WeightVector>> {
        Ok(self
            .positive_system()?
            .into_iter()
            .map(|p| WeightVector::character(p.root))
            .collect())
    }

    /// `χ`, the sum of the positive roots.
    pub fn sum_positive_roots(&self) -> Result<WeightVector> {
        let mut sum = vec![0; self.rank];
        for p in self.positive_system()? {
            for (s, c) in sum.iter_mut().zip(&p.root) {
                *s += c;
            }
        }
        Ok(WeightVector::character(sum))
    }

    /// Order of the Weyl group, counted as the orbit of the regular element
    /// `2ρ`. Fails once the count passes `bound`.
    pub fn weyl_group_order(&self, bound: usize) -> Result<usize> {
        let two_rho = self.sum_positive_roots()?;
        let orbit = self.orbit_unchecked(&two_rho, bound)?;
        Ok(orbit.len())
    }

    /// All Weyl group elements as matrices acting on the given side.
    pub fn weyl_group(&self, side: Side, bound: usize) -> Result<Vec<IntMatrix>> {
        let gens: Vec<IntMatrix> = self
            .simple
            .iter()
            .map(|&i| self.reflection_matrix(side, i))
            .collect();
        let identity = IntMatrix::identity(self.rank);
        let mut seen: HashSet<IntMatrix> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(w) = queue.pop_front() {
            for s in &gens {
                let ws = &w * s;
                if seen.insert(ws.clone()) {
                    if seen.len() > bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    elements.push(ws.clone());
                    queue.push_back(ws);
                }
            }
        }
        Ok(elements)
    }

    fn reflection_matrix(&self, side: Side, root: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for j in 0..self.rank {
            let mut e = vec![0; self.rank];
            e[j] = 1;
            let image = match side {
                Side::Character => self.reflect_character(&e, root),
                Side::Cocharacter => self.reflect_cocharacter(&e, root),
            };
            for (i, v) in image.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// The Weyl orbit of `w`, with the default group-size bound.
    pub fn weyl_orbit(&self, w: &WeightVector) -> Result<BTreeSet<WeightVector>> {
        self.weyl_orbit_bounded(w, DEFAULT_WEYL_BOUND)
    }

    pub fn weyl_orbit_bounded(
        &self,
        w: &WeightVector,
        bound: usize,
    ) -> Result<BTreeSet<WeightVector>> {
        self.check_len(w)?;
        self.weyl_group_order(bound)?;
        self.orbit_unchecked(w, bound)
    }

    fn orbit_unchecked(&self, w: &WeightVector, bound: usize) -> Result<BTreeSet<WeightVector>> {
        let mut orbit = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for &i in &self.simple {
                let image = self.reflect(&v, i);
                if orbit.insert(image.clone()) {
                    if orbit.len() > bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    queue.push_back(image);
                }
            }
        }
        Ok(orbit)
    }

    fn check_len(&self, w: &WeightVector) -> Result<()> {
        if w.len() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "vector of length {} used with rank-{} datum {}",
                w.len(),
                self.rank,
                self.name
            )))
        }
    }

    /// Pairing of `w` against the `k`-th simple root (for cocharacters) or
    /// simple coroot (for characters).
    fn simple_pairing(&self, w: &WeightVector, k: usize) -> i64 {
        let i = self.simple[k];
        match w.side {
            Side::Character => self.pair(&w.coords, &self.coroots[i]),
            Side::Cocharacter => self.pair(&self.roots[i], &w.coords),
        }
    }

    pub fn is_dominant(&self, w: &WeightVector) -> bool {
        (0..self.simple.len()).all(|k| self.simple_pairing(w, k) >= 0)
    }

    pub fn is_antidominant(&self, w: &WeightVector) -> bool {
        (0..self.simple.len()).all(|k| self.simple_pairing(w, k) <= 0)
    }

    /// The unique dominant Weyl conjugate of `w`.
    pub fn dominant_conjugate(&self, w: &WeightVector) -> Result<WeightVector> {
        self.conjugate_into_chamber(w, 1)
    }

    /// The unique antidominant Weyl conjugate of `w`.
    pub fn antidominant_conjugate(&self, w: &WeightVector) -> Result<WeightVector> {
        self.conjugate_into_chamber(w, -1)
    }

    fn conjugate_into_chamber(&self, w: &WeightVector, sign: i64) -> Result<WeightVector> {
        self.check_len(w)?;
        let mut v = w.clone();
        // each step strictly increases height in the target direction
        for _ in 0..DEFAULT_WEYL_BOUND {
            match (0..self.simple.len()).find(|&k| sign * self.simple_pairing(&v, k) < 0) {
                Some(k) => v = self.reflect(&v, self.simple[k]),
                None => return Ok(v),
            }
        }
        Err(Error::GroupTooLarge {
            bound: DEFAULT_WEYL_BOUND,
        })
    }
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

    fn sl2() -> RootDatum {
        RootDatum::new(
            "sl2",
            1,
            vec![vec![2], vec![-2]],
            vec![vec![1], vec![-1]],
            vec![0],
        )
    }

    fn gsp4() -> RootDatum {
        let roots = vec![
            vec![1, -1, 0],
            vec![0, 2, -1],
            vec![1, 1, -1],
            vec![2, 0, -1],
        ];
        let coroots = vec![vec![1, -1, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, 0]];
        let neg = |v: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            v.iter().map(|r| r.iter().map(|c| -c).collect()).collect()
        };
        let mut all_roots = roots.clone();
        all_roots.extend(neg(&roots));
        let mut all_coroots = coroots.clone();
        all_coroots.extend(neg(&coroots));
        RootDatum::new("gsp4", 3, all_roots, all_coroots, vec![0, 1])
    }

    fn gl3() -> RootDatum {
        let pos = [vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        let mut roots: Vec<Vec<i64>> = pos.to_vec();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        RootDatum::new("gl3", 3, roots.clone(), roots, vec![0, 1])
    }

    #[test]
    fn gl2_validates() {
        let r = gl2().validate();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn bad_pairing_is_reported() {
        let mut d = gl2();
        d.coroots = vec![vec![2, -1], vec![-2, 1]];
        let r = d.validate();
        assert!(!r.passed);
        assert!(!r.check("root_coroot_pairing").unwrap().passed);
    }

    #[test]
    fn missing_reflected_root_is_reported() {
        let mut d = gl2();
        d.roots.pop();
        d.coroots.pop();
        let r = d.validate();
        assert!(!r.check("root_reflection_closure").unwrap().passed);
    }

    #[test]
    fn non_pinned_automorphism_is_reported() {
        let swap = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let d = gl2().with_automorphisms(vec![swap]);
        let r = d.validate();
        assert!(!r.check("pinned_automorphisms").unwrap().passed);
    }

    #[test]
    fn shape_errors_short_circuit() {
        let mut d = gl2();
        d.simple = vec![7];
        let r = d.validate();
        assert!(!r.passed);
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn dual_examples() {
        let g = gl2();
        let gd = g.dual().unwrap();
        assert_eq!(gd.roots, g.roots);
        assert_eq!(gd.name, "gl2^");
        let s = sl2().dual().unwrap();
        assert_eq!(s.roots, vec![vec![1], vec![-1]]);
        assert_eq!(s.coroots, vec![vec![2], vec![-2]]);
        assert_eq!(s.dual().unwrap(), sl2());
    }

    #[test]
    fn positive_closure_examples() {
        assert_eq!(
            gl2().positive_closure().unwrap(),
            vec![WeightVector::character(vec![1, -1])]
        );
        let c2: Vec<Vec<i64>> = gsp4()
            .positive_closure()
            .unwrap()
            .into_iter()
            .map(|w| w.coords)
            .collect();
        assert_eq!(
            c2,
            vec![
                vec![1, -1, 0],
                vec![0, 2, -1],
                vec![1, 1, -1],
                vec![2, 0, -1]
            ]
        );
        assert_eq!(gl3().positive_closure().unwrap().len(), 3);
    }

    #[test]
    fn sum_positive_roots_examples() {
        assert_eq!(gl2().sum_positive_roots().unwrap().coords, vec![1, -1]);
        assert_eq!(gsp4().sum_positive_roots().unwrap().coords, vec![4, 2, -3]);
        assert_eq!(
            RootDatum::torus("t", 1)
                .sum_positive_roots()
                .unwrap()
                .coords,
            vec![0]
        );
    }

    #[test]
    fn weyl_orbit_examples() {
        let o = gl2()
            .weyl_orbit(&WeightVector::cocharacter(vec![-1, 0]))
            .unwrap();
        let coords: Vec<_> = o.into_iter().map(|w| w.coords).collect();
        assert_eq!(coords, vec![vec![-1, 0], vec![0, -1]]);
        let zero = WeightVector::zero(Side::Cocharacter, 3);
        assert_eq!(gsp4().weyl_orbit(&zero).unwrap().len(), 1);
        let o = gsp4()
            .weyl_orbit(&WeightVector::cocharacter(vec![-1, -1, -1]))
            .unwrap();
        assert_eq!(o.len(), 4);
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(gsp4().weyl_group_order(DEFAULT_WEYL_BOUND).unwrap(), 8);
        assert_eq!(
            gsp4()
                .weyl_group(Side::Cocharacter, DEFAULT_WEYL_BOUND)
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            gl3()
                .weyl_group(Side::Character, DEFAULT_WEYL_BOUND)
                .unwrap()
                .len(),
            6
        );
        assert!(matches!(
            gsp4().weyl_orbit_bounded(&WeightVector::cocharacter(vec![0, 0, 1]), 5),
            Err(Error::GroupTooLarge { bound: 5 })
        ));
    }

    #[test]
    fn coroot_pairing_with_chi_is_even() {
        for d in [gl2(), gsp4(), gl3(), sl2()] {
            let chi = d.sum_positive_roots().unwrap();
            for c in &d.coroots {
                assert_eq!(d.pair(&chi.coords, c).rem_euclid(2), 0, "{}", d.name);
            }
        }
    }

    #[test]
    fn gl3_duality_automorphism_is_pinned() {
        // x ↦ −w₀x reverses and negates coordinates
        let a = IntMatrix::from_rows(vec![vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]).unwrap();
        let d = gl3().with_automorphisms(vec![a.clone()]);
        assert!(d.validate().passed);
        let chi = d.sum_positive_roots().unwrap();
        assert_eq!(a.apply(&chi.coords), chi.coords);
        let dd = d.dual().unwrap().dual().unwrap();
        assert_eq!(dd, d);
    }

    #[test]
    fn antidominant_conjugate_of_gl2() {
        let w = gl2()
            .antidominant_conjugate(&WeightVector::cocharacter(vec![0, -1]))
            .unwrap();
        assert_eq!(w.coords, vec![-1, 0]);
        let w = gl2()
            .dominant_conjugate(&WeightVector::character(vec![-1, 0]))
            .unwrap();
        assert_eq!(w.coords, vec![0, -1]);
    }

    #[test]
    fn root_lattice_membership() {
        assert!(gl2().in_root_lattice(&[2, -2]));
        assert!(!gl2().in_root_lattice(&[1, 0]));
        assert!(!sl2().in_root_lattice(&[1]));
    }
}
