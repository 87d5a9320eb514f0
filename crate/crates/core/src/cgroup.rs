//! The dual side of the C-group: `(Ĝ × GL₁) / ⟨(e, −1)⟩` at the level of
//! torus lattices, and the representation `r_C` on it.
//!
//! With `χ ∈ Y(T̂)` and `n = rank`, the quotient torus has
//!
//! * characters `{(λ, k) ∈ X(T̂) ⊕ ℤ : ⟨λ, χ⟩ + k even}`, and
//! * cocharacters `(Y(T̂) ⊕ ℤ) + ℤ · (χ, 1)/2`.
//!
//! The element `(χ, 1)/2` of the cocharacter lattice exponentiates to
//! `(χ(−1), −1) = (e, −1)`, the generator of the isogeny kernel.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highest_weight::FormalCharacter;
use crate::lattice::{
    fmt_vec, integral_dual, quotient_index, quotient_invariants, Lattice, PairingForm,
};
use crate::matrix::{IntMatrix, Matrix};
use crate::root_datum::{RootDatum, Side, WeightVector};
use crate::scalar::Scalar;
use crate::shimura::ShimuraData;

/// Shape of the isogeny `Ĝ × GL₁ → Ĝ̃` as seen on the torus lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyKernel<T> {
    /// `[X(T̂) ⊕ ℤ : char_lattice]`
    pub char_index: u64,
    /// `[cochar_lattice : Y(T̂) ⊕ ℤ]`
    pub cochar_index: u64,
    /// Order of the kernel, i.e. of the character group of
    /// `(X(T̂) ⊕ ℤ) / char_lattice`.
    pub order: u64,
    /// `(χ, 1)/2`, whose exponential is `(e, −1)`.
    pub generator: Vec<T>,
    /// Whether `e = χ(−1)` is already trivial in `Ĝ`.
    pub e_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGroupDatum<T> {
    pub dual_datum: RootDatum,
    /// `χ`, read in `Y(T̂)`.
    pub chi: WeightVector,
    pub d: usize,
    pub char_lattice: Lattice<T>,
    pub cochar_lattice: Lattice<T>,
    /// Pairing of `X(T̂) ⊕ ℤ` with `Y(T̂) ⊕ ℤ`.
    pub form: PairingForm<T>,
    pub quotient_roots: Vec<Vec<i64>>,
    pub quotient_coroots: Vec<Vec<i64>>,
    pub kernel: IsogenyKernel<T>,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::IsogenyCheckFailed(msg()))
    }
}

fn to_scalars<T: Scalar>(v: &[i64]) -> Vec<T> {
    v.iter().map(|&x| T::from_i64(x)).collect()
}

fn extend(v: &[i64], last: i64) -> Vec<i64> {
    let mut out = v.to_vec();
    out.push(last);
    out
}

fn index_u64<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>) -> Result<u64> {
    quotient_index(sub, sup)?
        .to_u64()
        .ok_or_else(|| Error::IsogenyCheckFailed("lattice index does not fit in u64".into()))
}

/// Builds the quotient datum and checks the isogeny: both indices are 2, the
/// pairing between the new lattices is perfect, the kernel is the order-2
/// group generated by `(e, −1)`, and the roots of `Ĝ` descend.
pub fn build_c_group<T: Scalar>(s: &ShimuraData) -> Result<CGroupDatum<T>> {
    let dual = s.dual_datum()?;
    let chi = s.chi()?.dualize();
    let n = dual.rank;
    let form =
        PairingForm::new(dual.pairing.to_scalar::<T>())?.direct_sum(&PairingForm::standard(1));

    // parity functional (λ, k) ↦ ⟨λ, χ⟩ + k
    let parity: Vec<i64> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            dual.pair(&e, &chi.coords)
        })
        .chain(std::iter::once(1))
        .collect();

    let mut char_gens = Vec::new();
    for i in 0..=n {
        let mut v = vec![0; n + 1];
        v[i] = 2;
        char_gens.push(v);
    }
    for i in 0..n {
        let mut v = vec![0; n + 1];
        v[i] = 1;
        v[n] = -parity[i];
        char_gens.push(v);
    }
    let char_lattice = Lattice::from_generators(&Matrix::from_rows(
        char_gens.iter().map(|v| to_scalars(v)).collect(),
    )?)?;

    let half = T::one() / T::from_i64(2);
    let generator: Vec<T> = extend(&chi.coords, 1)
        .iter()
        .map(|&x| T::from_i64(x) * half.clone())
        .collect();
    let mut cochar_gens: Vec<Vec<T>> = Matrix::<T>::identity(n + 1).to_rows();
    cochar_gens.push(generator.clone());
    let cochar_lattice = Lattice::from_generators(&Matrix::from_rows(cochar_gens)?)?;

    let standard = Lattice::<T>::standard(n + 1);
    let char_index = index_u64(&char_lattice, &standard)?;
    let cochar_index = index_u64(&standard, &cochar_lattice)?;
    check(char_index == 2, || {
        format!("character lattice has index {char_index}, expected 2")
    })?;
    check(cochar_index == 2, || {
        format!("cocharacter lattice has index {cochar_index}, expected 2")
    })?;

    let gram = char_lattice.gram(&cochar_lattice, &form);
    check(gram.rows().flatten().all(Scalar::is_integral), || {
        "pairing between quotient lattices is not integral".into()
    })?;
    check(gram.determinant()?.abs().is_one(), || {
        "pairing between quotient lattices is not perfect".into()
    })?;
    check(
        integral_dual(&char_lattice, &form)?.same_lattice(&cochar_lattice),
        || "cocharacter lattice is not the integral dual of the character lattice".into(),
    )?;

    // Kernel: characters of (X ⊕ ℤ)/char_lattice.
    let invariants = quotient_invariants(&char_lattice, &standard)?;
    let nontrivial: Vec<_> = invariants.iter().filter(|d| !d.is_one()).collect();
    check(
        nontrivial.len() == 1 && nontrivial[0].to_u64() == Some(2),
        || format!("kernel invariants are {invariants:?}, expected a single factor 2"),
    )?;
    let parity_t = to_scalars::<T>(&parity);
    let even = |v: &[T]| -> bool {
        crate::matrix::dot(v, &parity_t)
            .to_int()
            .is_some_and(|x| x.is_even())
    };
    check(char_lattice.basis().rows().all(even), || {
        "(e, −1) does not act trivially on the character lattice".into()
    })?;
    check(!standard.basis().rows().all(even), || {
        "(e, −1) is trivial on X(T̂) ⊕ ℤ".into()
    })?;
    check(
        cochar_lattice.contains(&generator) && !standard.contains(&generator),
        || format!("{} does not generate the kernel", fmt_vec(&generator)),
    )?;

    let quotient_roots: Vec<Vec<i64>> = dual.roots.iter().map(|r| extend(r, 0)).collect();
    let quotient_coroots: Vec<Vec<i64>> = dual.coroots.iter().map(|c| extend(c, 0)).collect();
    for (r, c) in quotient_roots.iter().zip(&quotient_coroots) {
        let (rt, ct) = (to_scalars::<T>(r), to_scalars::<T>(c));
        check(char_lattice.contains(&rt), || {
            format!("root {r:?} is not in the character lattice")
        })?;
        check(cochar_lattice.contains(&ct), || {
            format!("coroot {c:?} is not in the cocharacter lattice")
        })?;
        check(form.pair(&rt, &ct) == T::from_i64(2), || {
            format!("root {r:?} does not pair to 2")
        })?;
        for b in char_lattice.basis().rows() {
            let k = form.pair(b, &ct);
            let image: Vec<T> = b
                .iter()
                .zip(&rt)
                .map(|(x, a)| x.clone() - k.clone() * a.clone())
                .collect();
            check(char_lattice.contains(&image), || {
                format!("reflection in {r:?} leaves the character lattice")
            })?;
        }
        for b in cochar_lattice.basis().rows() {
            let k = form.pair(&rt, b);
            let image: Vec<T> = b
                .iter()
                .zip(&ct)
                .map(|(y, a)| y.clone() - k.clone() * a.clone())
                .collect();
            check(cochar_lattice.contains(&image), || {
                format!("reflection in {c:?} leaves the cocharacter lattice")
            })?;
        }
    }

    let e_trivial = parity[..n].iter().all(|p| p % 2 == 0);
    Ok(CGroupDatum {
        dual_datum: dual,
        chi,
        d: s.d,
        char_lattice,
        cochar_lattice,
        form,
        quotient_roots,
        quotient_coroots,
        kernel: IsogenyKernel {
            char_index,
            cochar_index,
            order: 2,
            generator,
            e_trivial,
        },
    })
}

impl<T: Scalar> CGroupDatum<T> {
    /// Replaces the character lattice basis by another basis of the same
    /// lattice.
    pub fn with_char_basis(mut self, rows: Vec<Vec<i64>>) -> Result<Self> {
        let lattice = Lattice::from_rows(rows.iter().map(|r| to_scalars(r)).collect())?;
        if !lattice.same_lattice(&self.char_lattice) {
            return Err(Error::NotASublattice(
                "basis does not span the character lattice".into(),
            ));
        }
        self.char_lattice = lattice;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.dual_datum.rank
    }

    /// Character lattice basis as integer rows.
    pub fn char_basis(&self) -> Vec<Vec<i64>> {
        self.char_lattice
            .basis()
            .rows()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.to_int()
                            .and_then(|i| i.to_i64())
                            .expect("character lattice is integral")
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentCheck {
    pub automorphism: usize,
    pub fixes_chi: bool,
    pub preserves_char_lattice: bool,
    pub preserves_cochar_lattice: bool,
    pub permutes_positive_roots: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub checks: Vec<DescentCheck>,
    pub passed: bool,
}

fn preserves<T: Scalar>(lattice: &Lattice<T>, a: &Matrix<T>, a_inv: &Matrix<T>) -> bool {
    lattice
        .basis()
        .rows()
        .all(|b| lattice.contains(&a.apply(b)) && lattice.contains(&a_inv.apply(b)))
}

/// Checks that each automorphism of `Ĝ`, extended by the identity on the
/// `GL₁` factor, descends to the quotient torus and fixes `χ`.
pub fn galois_descent_check<T: Scalar>(c: &CGroupDatum<T>, autos: &[IntMatrix]) -> DescentReport {
    let dual = &c.dual_datum;
    let positive: Option<Vec<Vec<i64>>> = dual
        .positive_system()
        .ok()
        .map(|p| p.into_iter().map(|r| r.root).collect());
    let one = IntMatrix::identity(1);
    let checks: Vec<DescentCheck> = autos
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let fail = DescentCheck {
                automorphism: k,
                fixes_chi: false,
                preserves_char_lattice: false,
                preserves_cochar_lattice: false,
                permutes_positive_roots: false,
                passed: false,
            };
            if a.nrows() != dual.rank || a.ncols() != dual.rank {
                return fail;
            }
            let (Some(a_inv), Some(a_y)) = (a.unimodular_inverse(), dual.dual_automorphism(a))
            else {
                return fail;
            };
            let a_y_inv = a_y
                .unimodular_inverse()
                .expect("dual of a unimodular map is unimodular");
            let ext = |m: &IntMatrix| m.direct_sum(&one, 0).to_scalar::<T>();
            let fixes_chi = a_y.apply(&c.chi.coords) == c.chi.coords;
            let preserves_char_lattice = preserves(&c.char_lattice, &ext(a), &ext(&a_inv));
            let preserves_cochar_lattice = preserves(&c.cochar_lattice, &ext(&a_y), &ext(&a_y_inv));
            let permutes_positive_roots = positive.as_ref().is_some_and(|pos| {
                let mut images: Vec<Vec<i64>> = pos.iter().map(|r| a.apply(r)).collect();
                let mut sorted = pos.clone();
                images.sort();
                sorted.sort();
                images == sorted
            });
            DescentCheck {
                automorphism: k,
                fixes_chi,
                preserves_char_lattice,
                preserves_cochar_lattice,
                permutes_positive_roots,
                passed: fixes_chi && preserves_char_lattice && preserves_cochar_lattice,
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    DescentReport { checks, passed }
}

/// `r_C`: the character of `(g, z) ↦ r(g) z^{−d}`, with each weight also
/// written in the basis of the quotient character lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CCharacter {
    pub character: FormalCharacter,
    #[serde(skip)]
    pub coordinates: BTreeMap<Vec<i64>, Vec<i64>>,
}

/// Builds `r_C` from the character of `r_L` on `X(T̂)`. Every weight
/// `(λ, −d)` must lie in the quotient character lattice; a failure here
/// would mean `(e, −1)` acts nontrivially.
pub fn build_rc<T: Scalar>(c: &CGroupDatum<T>, rl: &FormalCharacter) -> Result<CCharacter> {
    rl.weights()
        .try_for_each(|w| w.expect_side(Side::Character))?;
    let twist = -(c.d as i64);
    let mut character = FormalCharacter::new(format!("{}~C", c.dual_datum.name), Side::Character);
    let mut coordinates = BTreeMap::new();
    for (lambda, &m) in &rl.entries {
        if lambda.len() != c.rank() {
            return Err(Error::DimensionMismatch(format!(
                "weight {lambda:?} has length {}, expected {}",
                lambda.len(),
                c.rank()
            )));
        }
        let w = extend(lambda, twist);
        let coords = c
            .char_lattice
            .coordinates(&to_scalars::<T>(&w))
            .ok_or_else(|| Error::WeightNotInQuotientLattice(w.clone()))?;
        let coords = coords
            .iter()
            .map(ToPrimitive::to_i64)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::CoordinateExpressionFailed(w.clone()))?;
        character.add(w.clone(), m);
        coordinates.insert(w, coords);
    }
    Ok(CCharacter {
        character,
        coordinates,
    })
}
