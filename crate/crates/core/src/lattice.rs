//! Full-rank lattices in a rational ambient space.
//!
//! A [`Lattice`] is stored as a square basis matrix whose rows are the basis
//! vectors. Integer normal forms (Smith and Hermite) run over the integer
//! ring of the scalar type, so containment and index computations are exact.

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::{Scalar, ScalarInt};

/// `left · m · right = diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<I> {
    pub left: Matrix<I>,
    pub diagonal: Matrix<I>,
    pub right: Matrix<I>,
}

impl<I: ScalarInt> SmithDecomposition<I> {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<I> {
        let n = self.diagonal.nrows().min(self.diagonal.ncols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form<I: ScalarInt>(m: &Matrix<I>) -> SmithDecomposition<I> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut left = Matrix::<I>::identity(rows);
    let mut right = Matrix::<I>::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = a.get(i, j);
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithDecomposition {
                    left,
                    diagonal: a,
                    right,
                };
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).clone() / pivot.clone();
                if !q.is_zero() {
                    a.add_row_multiple(i, t, -q.clone());
                    left.add_row_multiple(i, t, -q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).clone() / pivot.clone();
                if !q.is_zero() {
                    a.add_col_multiple(j, t, -q.clone());
                    right.add_col_multiple(j, t, -q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, I::one());
                    left.add_row_multiple(t, i, I::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithDecomposition {
        left,
        diagonal: a,
        right,
    }
}

/// Row Hermite normal form of a generating set with full column rank:
/// upper triangular, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Returns the square basis, or `None` if the rows do not span
/// a full-rank lattice.
pub fn hermite_normal_form<I: ScalarInt>(generators: &Matrix<I>) -> Option<Matrix<I>> {
    let (rows, cols) = (generators.nrows(), generators.ncols());
    let mut a = generators.clone();
    for c in 0..cols {
        if c >= rows {
            return None;
        }
        // Euclid on column c below the current row.
        loop {
            let pivot_row = (c..rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by(|&x, &y| a.get(x, c).abs().cmp(&a.get(y, c).abs()));
            let p = pivot_row?;
            a.swap_rows(c, p);
            let pivot = a.get(c, c).clone();
            let mut done = true;
            for i in c + 1..rows {
                let q = a.get(i, c).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row_multiple(i, c, -q);
                }
                done &= a.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(c, c).is_negative() {
            a.negate_row(c);
        }
        let pivot = a.get(c, c).clone();
        for i in 0..c {
            let q = a.get(i, c).div_floor(&pivot);
            if !q.is_zero() {
                a.add_row_multiple(i, c, -q);
            }
        }
    }
    Some(Matrix::from_fn(cols, cols, |i, j| a.get(i, j).clone()))
}

/// Nondegenerate bilinear form `⟨x, y⟩ = xᵀ · matrix · y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> PairingForm<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(
                "pairing form must be square".into(),
            ));
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { matrix })
    }

    /// The dot product.
    pub fn standard(n: usize) -> Self {
        Self {
            matrix: Matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn pair(&self, x: &[T], y: &[T]) -> T {
        dot(x, &self.matrix.apply(y))
    }

    pub fn transpose(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.direct_sum(&other.matrix, T::zero()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice<T> {
    basis: Matrix<T>,
}

impl<T: Scalar> Lattice<T> {
    /// Lattice spanned by the rows of a square, nonsingular basis matrix.
    pub fn new(basis: Matrix<T>) -> Result<Self> {
        if !basis.is_square() || basis.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "lattice basis must be square and nonempty, got {}x{}",
                basis.nrows(),
                basis.ncols()
            )));
        }
        if basis.rank() < basis.nrows() {
            return Err(Error::NotFullRank);
        }
        Ok(Self { basis })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Lattice generated by an arbitrary set of rows, in Hermite normal form.
    pub fn from_generators(generators: &Matrix<T>) -> Result<Self> {
        let (scaled, denom) = clear_denominators(generators);
        let hnf = hermite_normal_form(&scaled).ok_or(Error::NotFullRank)?;
        let d = T::from_int(denom);
        Ok(Self {
            basis: hnf.map(|x| T::from_int(x.clone()) / d.clone()),
        })
    }

    /// `ℤⁿ`.
    pub fn standard(n: usize) -> Self {
        Self {
            basis: Matrix::identity(n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Same lattice, basis in Hermite normal form.
    pub fn canonical(&self) -> Self {
        Self::from_generators(&self.basis).expect("a basis always spans a full-rank lattice")
    }

    /// Integral coordinates of `v` in this basis, or `None` if `v` is not a
    /// lattice vector.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T::Int>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        self.basis
            .row_combination(v)?
            .iter()
            .map(Scalar::to_int)
            .collect()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice<T>) -> bool {
        other.basis.rows().all(|row| self.contains(row))
    }

    pub fn same_lattice(&self, other: &Lattice<T>) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.contains_lattice(other)
            && other.contains_lattice(self)
    }

    /// Gram matrix `⟨self_i, other_j⟩` between the two bases.
    pub fn gram(&self, other: &Lattice<T>, form: &PairingForm<T>) -> Matrix<T> {
        &(&self.basis * form.matrix()) * &other.basis.transpose()
    }

    /// Change-of-basis matrix `C` with `sub_basis = C · self_basis`; integral
    /// exactly when `sub ⊆ self`.
    fn change_of_basis(&self, sub: &Lattice<T>) -> Result<Matrix<T::Int>> {
        if sub.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                sub.ambient_dim(),
                self.ambient_dim()
            )));
        }
        let rows = sub
            .basis
            .rows()
            .map(|row| {
                self.coordinates(row).ok_or_else(|| {
                    Error::NotASublattice(format!(
                        "vector {} is not an integral combination of the basis",
                        fmt_vec(row)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

/// `[sup : sub]`, computed as the product of the Smith invariant factors of
/// the change-of-basis matrix.
pub fn quotient_index<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>) -> Result<T::Int> {
    let change = sup.change_of_basis(sub)?;
    let snf = smith_normal_form(&change);
    Ok(snf
        .invariant_factors()
        .into_iter()
        .fold(T::Int::one(), |acc, d| acc * d))
}

/// Invariant factors of `sup / sub`.
pub fn quotient_invariants<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>) -> Result<Vec<T::Int>> {
    let change = sup.change_of_basis(sub)?;
    Ok(smith_normal_form(&change).invariant_factors())
}

/// `{y : ⟨x, y⟩ ∈ ℤ for all x ∈ lattice}`, in Hermite normal form.
///
/// Dualizing twice with the same form returns the original lattice when the
/// form is symmetric; for a general form use `form.transpose()` the second
/// time.
pub fn integral_dual<T: Scalar>(lattice: &Lattice<T>, form: &PairingForm<T>) -> Result<Lattice<T>> {
    if form.dim() != lattice.ambient_dim() {
        return Err(Error::DimensionMismatch(
            "pairing form and lattice dimensions differ".into(),
        ));
    }
    let dual_basis = (&lattice.basis * form.matrix()).inverse()?.transpose();
    Lattice::from_generators(&dual_basis)
}

/// Scales a rational matrix to an integer one; returns it with the common
/// denominator.
fn clear_denominators<T: Scalar>(m: &Matrix<T>) -> (Matrix<T::Int>, T::Int) {
    let mut denom = T::Int::one();
    for row in m.rows() {
        for x in row {
            denom = denom.lcm(&x.denom_int());
        }
    }
    let d = T::from_int(denom.clone());
    let scaled = m.map(|x| {
        (x.clone() * d.clone())
            .to_int()
            .expect("multiplying by the common denominator yields integers")
    });
    (scaled, denom)
}

pub(crate) fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn imat(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn lattice(rows: &[&[(i64, i64)]]) -> Lattice<Q> {
        Lattice::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| Q::new(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn snf_identity_and_diag() {
        let id = smith_normal_form(&imat(&[&[1, 0], &[0, 1]]));
        assert_eq!(id.invariant_factors(), vec![1, 1]);
        let d = smith_normal_form(&imat(&[&[2, 0], &[0, 3]]));
        assert_eq!(d.invariant_factors(), vec![1, 6]);
        assert_eq!(
            &(&d.left * &imat(&[&[2, 0], &[0, 3]])) * &d.right,
            d.diagonal
        );
    }

    #[test]
    fn snf_of_rank_deficient_matrix() {
        let m = imat(&[&[2, 4, 6], &[1, 2, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), vec![1, 0]);
        assert_eq!(&(&s.left * &m) * &s.right, s.diagonal);
    }

    #[test]
    fn hnf_of_parity_lattice() {
        // {(a, b, k) : a - b + k even}
        let gens = imat(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 0], &[0, 1, 1]]);
        let h = hermite_normal_form(&gens).unwrap();
        assert_eq!(h, imat(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 2]]));
        assert!(hermite_normal_form(&imat(&[&[1, 0], &[2, 0]])).is_none());
    }

    #[test]
    fn index_examples() {
        let z2 = Lattice::<Q>::standard(2);
        assert_eq!(quotient_index(&z2, &z2).unwrap(), 1);
        let two = lattice(&[&[(2, 1), (0, 1)], &[(0, 1), (2, 1)]]);
        assert_eq!(quotient_index(&two, &z2).unwrap(), 4);
        assert!(matches!(
            quotient_index(&z2, &two),
            Err(Error::NotASublattice(_))
        ));
    }

    #[test]
    fn dual_of_parity_lattice_is_half_integral_extension() {
        let parity = lattice(&[
            &[(1, 1), (1, 1), (0, 1)],
            &[(0, 1), (1, 1), (1, 1)],
            &[(0, 1), (0, 1), (2, 1)],
        ]);
        let dual = integral_dual(&parity, &PairingForm::standard(3)).unwrap();
        let expected = Lattice::from_generators(
            &Matrix::from_rows(vec![
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
                vec![q(0), q(0), q(1)],
                vec![Q::new(1, 2), Q::new(-1, 2), Q::new(1, 2)],
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(dual.same_lattice(&expected));
        assert_eq!(dual, expected);
        let back = integral_dual(&dual, &PairingForm::standard(3)).unwrap();
        assert!(back.same_lattice(&parity));
        assert_eq!(quotient_index(&parity, &back).unwrap(), 1);
    }

    #[test]
    fn nonsymmetric_form_double_dual_uses_transpose() {
        let form =
            PairingForm::new(Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]]).unwrap())
                .unwrap();
        let l = lattice(&[&[(1, 1), (1, 1)], &[(0, 1), (2, 1)]]);
        let dual = integral_dual(&l, &form).unwrap();
        let back = integral_dual(&dual, &form.transpose()).unwrap();
        assert!(back.same_lattice(&l));
    }

    #[test]
    fn singular_form_rejected() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
        assert!(PairingForm::new(m).is_err());
    }
}
