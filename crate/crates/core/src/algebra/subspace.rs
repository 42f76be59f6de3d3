use num_traits::Zero;

use super::{Rational, RationalMatrix};
use crate::{Error, Result};

/// A linear subspace of `Q^ambient`, held as a matrix whose columns form a
/// basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RationalMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RationalMatrix::identity(ambient),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let m = RationalMatrix::from_columns(ambient, vectors)?;
        Ok(Self::column_space(&m))
    }

    /// Column space of `m`.
    pub fn column_space(m: &RationalMatrix) -> Self {
        let (_, pivots) = m.rref();
        let cols: Vec<Vec<Rational>> = pivots.iter().map(|&j| m.column(j)).collect();
        Self {
            ambient: m.rows(),
            basis: RationalMatrix::from_columns(m.rows(), &cols).expect("columns of m"),
        }
    }

    /// Wraps a basis matrix, rejecting dependent columns.
    pub fn from_basis(basis: RationalMatrix) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidInput(
                "basis columns are linearly dependent".into(),
            ));
        }
        Ok(Self {
            ambient: basis.rows(),
            basis,
        })
    }

    /// Null space of `m`, a subspace of `Q^{m.cols()}`.
    pub fn kernel_of(m: &RationalMatrix) -> Self {
        Self {
            ambient: m.cols(),
            basis: m.kernel(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let col = RationalMatrix::from_columns(self.ambient, &[v.to_vec()]).expect("length checked");
        let aug = self.basis.hstack(&col).expect("same ambient");
        aug.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && self.basis.hstack(&other.basis).expect("same ambient").rank() == self.dim()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::column_space(&self.basis.hstack(&other.basis)?))
    }

    /// `A ∩ B`, from the kernel of `[A | −B]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let joint = self.basis.hstack(&other.basis.scale(&-Rational::from_integer(1.into())))?;
        let k = joint.kernel();
        let da = self.dim();
        let coeffs = RationalMatrix::from_fn(da, k.cols(), |i, j| k[(i, j)].clone());
        // injective since the basis columns are independent
        let basis = self.basis.checked_mul(&coeffs)?;
        Ok(Self {
            ambient: self.ambient,
            basis,
        })
    }

    /// Vectors `w` with `w · v = 0` for every `v` in the subspace, under the
    /// standard pairing of `Q^n` with its dual.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Self::full(self.ambient);
        }
        Self {
            ambient: self.ambient,
            basis: self.basis.transpose().kernel(),
        }
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}
