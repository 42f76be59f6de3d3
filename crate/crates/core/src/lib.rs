//! Exact geometric-invariant-theory toolkit for the projective plane.
//!
//! The crate certifies SL(3)-instability of plane curves and of sheaves on
//! P² given either as point configurations with extension coefficients
//! (rank-2 bundles) or as monad pairs `(K, L)`. All arithmetic is exact over
//! the rationals.
//!
//! Module map:
//!
//! - [`algebra`]: rationals, ternary forms, matrices, subspaces, elimination.
//! - [`curves`]: multiplicities, one-parameter subgroup weights, the
//!   multiplicity-above-`2n/3` certificate, singular points.
//! - [`sheaves`]: Riemann-Roch, reduced Hilbert polynomials, Gieseker order.
//! - [`hulsbergen`]: rank-2 bundles from points, jump curves, splitting types.
//! - [`monads`]: Kronecker pairs, restriction to lines, jump divisors,
//!   SL(V) instability and pair weights.
//! - [`io`]: the JSON formats shared by every module.

pub mod algebra;
pub mod curves;
mod error;
pub mod hulsbergen;
pub mod io;
pub mod monads;
pub mod random;
pub mod sheaves;

pub use algebra::{HomogeneousPolynomial, Rational, RationalMatrix, Subspace, Variable};
pub use curves::{DiagonalOnePS, InstabilityCertificate, PlaneCurve, ProjectivePoint};
pub use error::{Error, Result};
pub use hulsbergen::{DualLinePoint, HulsbergenDatum, PointConfiguration};
pub use monads::{LineFunctional, MonadPair, PairOnePS};
pub use sheaves::{ChernData, ReducedHilbertPolynomial};

/// Outcome of a sufficient instability criterion. `Inconclusive` says
/// nothing about stability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unstable,
    Inconclusive,
}

impl Verdict {
    pub fn from_unstable(unstable: bool) -> Self {
        if unstable {
            Verdict::Unstable
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn is_unstable(self) -> bool {
        self == Verdict::Unstable
    }
}
