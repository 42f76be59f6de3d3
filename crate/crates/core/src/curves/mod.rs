//! Plane curves under SL(3): multiplicities, weights of diagonal
//! one-parameter subgroups, and the multiplicity-above-`2n/3` instability
//! certificate.
//!
//! A point of multiplicity `m` with `3m > 2n` is moved to `(0:0:1)`; in
//! those coordinates every monomial `X^a Y^b Z^c` of the curve has
//! `a + b ≥ m`, so its weight `a + b − 2c` under the subgroup with weights
//! `(1, 1, −2)` is positive and `μ < 0`.

mod singular;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{frame_with_last_row, proportional3, Exponent, HomogeneousPolynomial, Rational, RationalMatrix};
use crate::{Error, Result};

pub use singular::{common_rational_zeros, find_rational_singular_points, is_nonsingular, SingularLocus};

/// Weights `(1, 1, −2)` of the destabilising subgroup fixing `(0:0:1)`.
pub const DESTABILIZING_WEIGHTS: [i64; 3] = [1, 1, -2];

/// A point of P² with the canonical representative whose first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PointRecord", into = "crate::io::PointRecord")]
pub struct ProjectivePoint {
    coords: [Rational; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        let Some(k) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
        };
        let inv = coords[k].recip();
        Ok(Self {
            coords: coords.map(|c| c * &inv),
        })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new([x, y, z].map(|v| Rational::from_integer(v.into())))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    pub fn lies_on(&self, f: &HomogeneousPolynomial) -> bool {
        f.eval(&self.coords).is_zero()
    }

    /// Image under `x ↦ x · M` (row-vector convention).
    pub fn transform_row(&self, m: &RationalMatrix) -> Result<Self> {
        let row = RationalMatrix::from_rows(vec![self.coords.to_vec()])?.checked_mul(m)?;
        Self::new([row[(0, 0)].clone(), row[(0, 1)].clone(), row[(0, 2)].clone()])
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A plane curve of degree `n ≥ 1`, given by a nonzero form up to scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    form: HomogeneousPolynomial,
}

impl PlaneCurve {
    pub fn new(form: HomogeneousPolynomial) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::InvalidInput("the zero form does not define a curve".into()));
        }
        if form.degree() == 0 {
            return Err(Error::Degree("a curve needs degree at least 1".into()));
        }
        Ok(Self { form })
    }

    pub fn form(&self) -> &HomogeneousPolynomial {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        p.lies_on(&self.form)
    }

    pub fn substitute(&self, m: &RationalMatrix) -> Result<Self> {
        Ok(Self {
            form: self.form.substitute(m)?,
        })
    }
}

/// A one-parameter subgroup acting diagonally with integer weights in the
/// coordinates given by `frame`: the curve is first replaced by
/// `substitute(C, frame)`, then monomial `X^a Y^b Z^c` gets weight
/// `a·w_X + b·w_Y + c·w_Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalOnePS {
    weights: [i64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<RationalMatrix>,
}

impl DiagonalOnePS {
    pub fn new(weights: [i64; 3], frame: Option<RationalMatrix>) -> Result<Self> {
        if weights.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(format!("weights {weights:?} do not sum to zero")));
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(Error::InvalidInput("trivial one-parameter subgroup".into()));
        }
        if let Some(m) = &frame {
            if m.rows() != 3 || m.cols() != 3 {
                return Err(Error::DimensionMismatch("frame must be 3x3".into()));
            }
            if m.det()?.is_zero() {
                return Err(Error::SingularMatrix("frame is not invertible".into()));
            }
        }
        Ok(Self { weights, frame })
    }

    pub fn diagonal(weights: [i64; 3]) -> Result<Self> {
        Self::new(weights, None)
    }

    pub fn weights(&self) -> [i64; 3] {
        self.weights
    }

    pub fn frame(&self) -> Option<&RationalMatrix> {
        self.frame.as_ref()
    }

    pub fn negated(&self) -> Self {
        Self {
            weights: self.weights.map(|w| -w),
            frame: self.frame.clone(),
        }
    }
}

/// Replayable evidence that a curve is unstable: the frame of the subgroup
/// moves `witness_point` to `(0:0:1)` and `mu_value < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstabilityCertificate {
    pub witness_point: ProjectivePoint,
    pub multiplicity: u32,
    pub degree: u32,
    pub one_ps: DiagonalOnePS,
    pub mu_value: i64,
}

impl InstabilityCertificate {
    /// Recomputes every field against `curve`.
    pub fn verify(&self, curve: &PlaneCurve) -> bool {
        let Some(frame) = self.one_ps.frame() else {
            return false;
        };
        // deserialised certificates bypass the constructor checks
        if DiagonalOnePS::new(self.one_ps.weights, Some(frame.clone())).is_err() {
            return false;
        }
        let last = [frame[(2, 0)].clone(), frame[(2, 1)].clone(), frame[(2, 2)].clone()];
        if last.iter().all(Zero::is_zero) || !proportional3(&last, self.witness_point.coords()) {
            return false;
        }
        if self.degree != curve.degree() || self.multiplicity != multiplicity_at(curve, &self.witness_point) {
            return false;
        }
        3 * self.multiplicity > 2 * self.degree
            && self.mu_value < 0
            && mu_curve(curve, &self.one_ps) == self.mu_value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointVerdict {
    Unstable(InstabilityCertificate),
    /// The criterion does not apply; says nothing about stability.
    Inconclusive { multiplicity: u32 },
}

/// Overall verdict for a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveStatus {
    Unstable(InstabilityCertificate),
    /// Nonsingular of degree at least 3, hence stable by the classical
    /// theorem; no weight computation is involved.
    StableByNonsingularity,
    Inconclusive,
}

/// A determinant-1 matrix `M` with `substitute(f, M)` moving `p` to
/// `(0:0:1)`; its last row is the canonical representative of `p`.
pub fn move_point_matrix(p: &ProjectivePoint) -> RationalMatrix {
    frame_with_last_row(p.coords())
}

/// Order of vanishing of the curve at `p`: 0 off the curve, the degree for
/// a cone of lines through `p`.
pub fn multiplicity_at(curve: &PlaneCurve, p: &ProjectivePoint) -> u32 {
    let moved = curve.form.substitute_unchecked(&move_point_matrix(p));
    moved
        .terms()
        .map(|(e, _)| e[0] + e[1])
        .min()
        .expect("curve form is nonzero")
}

pub fn monomial_weight(e: &Exponent, lambda: &DiagonalOnePS) -> i64 {
    e.iter()
        .zip(lambda.weights.iter())
        .map(|(&a, &w)| a as i64 * w)
        .sum()
}

/// Hilbert–Mumford weight `μ(C, λ) = −min{weight of a monomial of C}` after
/// passing to the frame of `λ`. The curve is λ-unstable iff this is
/// negative.
pub fn mu_curve(curve: &PlaneCurve, lambda: &DiagonalOnePS) -> i64 {
    mu_form(&curve.form, lambda).expect("curve form is nonzero")
}

/// [`mu_curve`] on a bare form; rejects the zero form.
pub fn mu_form(f: &HomogeneousPolynomial, lambda: &DiagonalOnePS) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::InvalidInput("mu of the zero form is undefined".into()));
    }
    let f = match &lambda.frame {
        Some(m) => f.substitute_unchecked(m),
        None => f.clone(),
    };
    Ok(-f
        .terms()
        .map(|(e, _)| monomial_weight(e, lambda))
        .min()
        .expect("nonzero form"))
}

pub fn check_point_instability(curve: &PlaneCurve, p: &ProjectivePoint) -> PointVerdict {
    let m = multiplicity_at(curve, p);
    let n = curve.degree();
    if 3 * m <= 2 * n {
        return PointVerdict::Inconclusive { multiplicity: m };
    }
    let one_ps = DiagonalOnePS::new(DESTABILIZING_WEIGHTS, Some(move_point_matrix(p)))
        .expect("determinant-1 frame and zero-sum weights");
    let mu_value = mu_curve(curve, &one_ps);
    assert!(mu_value < 0, "multiplicity {m} > 2n/3 must give a negative weight");
    PointVerdict::Unstable(InstabilityCertificate {
        witness_point: p.clone(),
        multiplicity: m,
        degree: n,
        one_ps,
        mu_value,
    })
}

/// Runs the certificate search over the rational singular points (and the
/// spanning points of a singular line component), falling back to the
/// nonsingularity theorem for `n ≥ 3`.
pub fn classify_curve(curve: &PlaneCurve) -> Result<CurveStatus> {
    if curve.degree() >= 2 {
        let locus = find_rational_singular_points(curve)?;
        for p in locus.candidate_points() {
            if let PointVerdict::Unstable(cert) = check_point_instability(curve, &p) {
                return Ok(CurveStatus::Unstable(cert));
            }
        }
    }
    if curve.degree() >= 3 && is_nonsingular(curve) {
        return Ok(CurveStatus::StableByNonsingularity);
    }
    Ok(CurveStatus::Inconclusive)
}

/// Convenience for tests and examples: `Σ c · X^a Y^b Z^c` from integer
/// coefficients.
pub fn form_from_i64(degree: u32, terms: &[([u32; 3], i64)]) -> Result<HomogeneousPolynomial> {
    HomogeneousPolynomial::from_terms(
        degree,
        terms.iter().map(|(e, c)| (*e, Rational::from_integer((*c).into()))),
    )
}
