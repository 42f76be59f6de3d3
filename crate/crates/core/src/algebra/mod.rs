//! Exact algebra over the rationals: ternary forms, matrices, subspaces and
//! elimination.
//!
//! Group elements act on forms by substitution on the right of the row
//! vector of variables: `substitute(f, M)(x) = f(x · M)`. Passing `M⁻¹`
//! gives the inverse action. Every module uses this one convention.

mod elimination;
mod matrix;
mod poly;
mod subspace;
mod univariate;

pub use elimination::{
    binary_form_rational_roots, det_linear_matrix, det_poly_matrix, gcd_forms,
    nonvanishing_point, resultant_eliminate,
};
pub use matrix::RationalMatrix;
pub use poly::{Exponent, HomogeneousPolynomial};
pub use subspace::Subspace;
pub use univariate::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// One of the three homogeneous coordinates. For forms on the dual plane
/// the same indices name the dual coordinates `a₀, a₁, a₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    X,
    Y,
    Z,
}

impl Variable {
    pub const ALL: [Variable; 3] = [Variable::X, Variable::Y, Variable::Z];

    pub fn index(self) -> usize {
        match self {
            Variable::X => 0,
            Variable::Y => 1,
            Variable::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Variable> {
        Variable::ALL.get(i).copied()
    }

    /// The two remaining variables, in increasing index order.
    pub fn others(self) -> [Variable; 2] {
        match self {
            Variable::X => [Variable::Y, Variable::Z],
            Variable::Y => [Variable::X, Variable::Z],
            Variable::Z => [Variable::X, Variable::Y],
        }
    }
}

/// Standard bilinear pairing of two coordinate triples.
pub fn dot3(u: &[Rational; 3], v: &[Rational; 3]) -> Rational {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

pub fn cross3(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// True when the two triples span the same line through the origin.
/// Both must be nonzero.
pub fn proportional3(u: &[Rational; 3], v: &[Rational; 3]) -> bool {
    cross3(u, v).iter().all(Zero::is_zero)
}

/// A determinant-1 matrix whose last row is `p` (nonzero). Under the
/// substitution convention, `substitute(f, M)` takes the value of `f` at `p`
/// to the point `(0:0:1)`.
pub fn frame_with_last_row(p: &[Rational; 3]) -> RationalMatrix {
    let k = p
        .iter()
        .position(|c| !c.is_zero())
        .expect("frame_with_last_row needs a nonzero vector");
    let mut m = RationalMatrix::zeros(3, 3);
    if k == 2 {
        m[(0, 0)] = one();
        m[(1, 1)] = one();
    } else {
        // unit rows placed so that a coordinate point gives a signed swap
        let other = 1 - k;
        m[(k, 2)] = one();
        m[(other, other)] = one();
    }
    for j in 0..3 {
        m[(2, j)] = p[j].clone();
    }
    let det = m.det().expect("square");
    let inv = det.recip();
    for j in 0..3 {
        let v = &m[(0, j)] * &inv;
        m[(0, j)] = v;
    }
    m
}
