//! Rank-2 bundles with `c₁ = 0`, `c₂ = n` given by `n + 1` points of P² and
//! extension coefficients `(a₁, …, a_{n+1})`.
//!
//! Each point `x` has a dual line `L_x(ξ) = ξ₀x₀ + ξ₁x₁ + ξ₂x₂` in the dual
//! plane. The jump curve is `Σᵢ aᵢ Πⱼ≠ᵢ L_{xⱼ}`, a form of degree `n`.
//!
//! Group action: `g` moves points by `x ↦ g·x` and dual points by the
//! inverse transpose. Then `L_{g·x} = substitute(L_x, g)`, so the jump curve
//! of the moved configuration is `substitute(J, g)` with the same
//! coefficients. Point representatives are kept exactly as given because
//! rescaling a point rescales the meaning of its coefficient.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{cross3, dot3, proportional3, HomogeneousPolynomial, Rational, RationalMatrix};
use crate::curves::{is_nonsingular, multiplicity_at, PlaneCurve, ProjectivePoint};
use crate::io::{Coordinate, RationalPair};
use crate::sheaves::ChernData;
use crate::{Error, Result, Verdict};

/// An ordered list of at least two pairwise distinct points of P².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<[Rational; 3]>,
}

impl PointConfiguration {
    pub fn new(points: Vec<[Rational; 3]>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a configuration needs at least 2 points, got {}",
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput(format!("point {i} has all coordinates zero")));
            }
            if let Some(j) = points[..i].iter().position(|q| proportional3(p, q)) {
                return Err(Error::InvalidInput(format!("points {j} and {i} coincide")));
            }
        }
        Ok(Self { points })
    }

    pub fn from_i64(points: &[[i64; 3]]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.map(|c| Rational::from_integer(c.into())))
                .collect(),
        )
    }

    pub fn points(&self) -> &[[Rational; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `n = |Z| − 1`, the second Chern class of the bundle.
    pub fn n(&self) -> u32 {
        (self.points.len() - 1) as u32
    }

    /// Image under `x ↦ g·x`.
    pub fn transform(&self, g: &RationalMatrix) -> Result<Self> {
        check_invertible_3x3(g)?;
        let points = self
            .points
            .iter()
            .map(|p| {
                let v = g.mul_vec(p).expect("3x3 times a 3-vector");
                [v[0].clone(), v[1].clone(), v[2].clone()]
            })
            .collect();
        Self::new(points)
    }
}

/// A configuration together with its extension coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigRecord", into = "ConfigRecord")]
pub struct HulsbergenDatum {
    config: PointConfiguration,
    coefficients: Vec<Rational>,
}

impl HulsbergenDatum {
    pub fn new(config: PointConfiguration, coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() != config.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} points",
                coefficients.len(),
                config.len()
            )));
        }
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("all extension coefficients are zero".into()));
        }
        Ok(Self { config, coefficients })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `(r, c₁, c₂) = (2, 0, n)`.
    pub fn chern(&self) -> ChernData {
        ChernData::new(2, 0, self.config.n() as i64).expect("small Chern data")
    }
}

/// Wire form: `{"points": [[x, y, z], ..], "coefficients": [[num, den], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub points: Vec<[Coordinate; 3]>,
    pub coefficients: Vec<RationalPair>,
}

impl From<HulsbergenDatum> for ConfigRecord {
    fn from(d: HulsbergenDatum) -> Self {
        Self {
            points: d
                .config
                .points
                .iter()
                .map(|p| [(&p[0]).into(), (&p[1]).into(), (&p[2]).into()])
                .collect(),
            coefficients: d.coefficients.iter().map(RationalPair::from).collect(),
        }
    }
}

impl TryFrom<ConfigRecord> for HulsbergenDatum {
    type Error = Error;

    fn try_from(r: ConfigRecord) -> Result<Self> {
        let points = r
            .points
            .into_iter()
            .map(|[x, y, z]| Ok([x.try_into()?, y.try_into()?, z.try_into()?]))
            .collect::<Result<Vec<[Rational; 3]>>>()?;
        let coefficients = r
            .coefficients
            .into_iter()
            .map(Rational::try_from)
            .collect::<Result<Vec<_>>>()?;
        HulsbergenDatum::new(PointConfiguration::new(points)?, coefficients)
    }
}

/// A point of the dual plane, that is, a line of P².
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DualRecord", into = "DualRecord")]
pub struct DualLinePoint {
    coords: [Rational; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualRecord {
    #[serde(with = "crate::io::triple")]
    pub line: [Rational; 3],
}

impl From<DualLinePoint> for DualRecord {
    fn from(l: DualLinePoint) -> Self {
        Self { line: l.coords }
    }
}

impl TryFrom<DualRecord> for DualLinePoint {
    type Error = Error;

    fn try_from(r: DualRecord) -> Result<Self> {
        DualLinePoint::new(r.line)
    }
}

impl DualLinePoint {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("line with all coefficients zero".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([a, b, c].map(|v| Rational::from_integer(v.into())))
    }

    /// The line through two distinct points.
    pub fn through(p: &[Rational; 3], q: &[Rational; 3]) -> Result<Self> {
        Self::new(cross3(p, q))
            .map_err(|_| Error::InvalidInput("a line needs two distinct points".into()))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    pub fn contains(&self, p: &[Rational; 3]) -> bool {
        dot3(&self.coords, p).is_zero()
    }

    pub fn as_point(&self) -> ProjectivePoint {
        ProjectivePoint::new(self.coords.clone()).expect("nonzero")
    }
}

fn check_invertible_3x3(g: &RationalMatrix) -> Result<()> {
    if g.rows() != 3 || g.cols() != 3 {
        return Err(Error::DimensionMismatch(format!("expected a 3x3 matrix, got {}x{}", g.rows(), g.cols())));
    }
    if g.det()?.is_zero() {
        return Err(Error::SingularMatrix("group element is singular".into()));
    }
    Ok(())
}

/// Not all points on one line, i.e. the coordinate matrix has rank 3.
pub fn is_stable_config(z: &PointConfiguration) -> bool {
    let rows = z.points.iter().map(|p| p.to_vec()).collect();
    RationalMatrix::from_rows(rows).expect("rows of length 3").rank() == 3
}

/// `L_x = x₀ξ₀ + x₁ξ₁ + x₂ξ₂` in the dual variables.
pub fn dual_line(x: &[Rational; 3]) -> HomogeneousPolynomial {
    HomogeneousPolynomial::linear(x)
}

/// `Σᵢ aᵢ Πⱼ≠ᵢ L_{xⱼ}`, a curve of degree `n` in the dual plane.
///
/// Errors with [`Error::Degenerate`] if the sum cancels to zero. For
/// distinct points this cannot happen: at a general point of `L_{xᵢ} = 0`
/// only the `i`-th term survives.
pub fn jump_curve(d: &HulsbergenDatum) -> Result<PlaneCurve> {
    let lines: Vec<HomogeneousPolynomial> = d.config.points.iter().map(dual_line).collect();
    let k = lines.len();
    // prefix and suffix products avoid recomputing Πⱼ≠ᵢ
    let mut prefix = vec![HomogeneousPolynomial::one()];
    for l in &lines {
        let next = prefix.last().expect("nonempty") * l;
        prefix.push(next);
    }
    let mut suffix = vec![HomogeneousPolynomial::one(); k + 1];
    for i in (0..k).rev() {
        suffix[i] = &lines[i] * &suffix[i + 1];
    }
    let mut form = HomogeneousPolynomial::zero(k as u32 - 1);
    for (i, a) in d.coefficients.iter().enumerate() {
        if !a.is_zero() {
            form = &form + &(&prefix[i] * &suffix[i + 1]).scale(a);
        }
    }
    if form.is_zero() {
        return Err(Error::Degenerate(
            "the jump-curve formula vanishes identically for this datum".into(),
        ));
    }
    PlaneCurve::new(form)
}

/// Splitting type `F|_l = O(d) ⊕ O(−d)` read off from the number `k` of
/// points of the configuration on `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub points_on_line: usize,
    pub d: u32,
}

impl Splitting {
    pub fn is_jump_line(&self) -> bool {
        self.d >= 1
    }
}

/// `d = k − 1` for `k ≥ 1` points of `Z` on `l`, and `d = 0` otherwise.
pub fn splitting_on_line(z: &PointConfiguration, l: &DualLinePoint) -> Splitting {
    let k = z.points.iter().filter(|p| l.contains(p)).count();
    Splitting {
        points_on_line: k,
        d: k.saturating_sub(1) as u32,
    }
}

/// Outcome of the `d > 2n/3` test on one line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Check {
    pub line: DualLinePoint,
    pub n: u32,
    pub splitting: Splitting,
    pub verdict: Verdict,
    /// When unstable: the jump curve has multiplicity at least `d` at the
    /// dual point of the line.
    pub jump_multiplicity_lower_bound: Option<u32>,
}

impl Rank2Check {
    /// Recomputes the splitting and the threshold against `z`.
    pub fn verify(&self, z: &PointConfiguration) -> bool {
        let again = rank2_unstable_check(z, &self.line);
        again == *self
    }
}

pub fn rank2_unstable_check(z: &PointConfiguration, l: &DualLinePoint) -> Rank2Check {
    let n = z.n();
    let splitting = splitting_on_line(z, l);
    let unstable = 3 * splitting.d > 2 * n;
    Rank2Check {
        line: l.clone(),
        n,
        splitting,
        verdict: Verdict::from_unstable(unstable),
        jump_multiplicity_lower_bound: unstable.then_some(splitting.d),
    }
}

/// Multiplicity of the jump curve at the dual point of `l`.
pub fn jump_multiplicity(d: &HulsbergenDatum, l: &DualLinePoint) -> Result<u32> {
    Ok(multiplicity_at(&jump_curve(d)?, &l.as_point()))
}

/// Every jump line contains two points of `Z`, so the secant lines are a
/// complete candidate list. Returns the secant line with the largest `d`
/// (first in pair order on ties), or `None` for fewer than two points.
pub fn best_secant_line(z: &PointConfiguration) -> Option<(DualLinePoint, Splitting)> {
    let mut best: Option<(DualLinePoint, Splitting)> = None;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let l = DualLinePoint::through(&z.points[i], &z.points[j]).expect("distinct points");
            let s = splitting_on_line(z, &l);
            if best.as_ref().is_none_or(|(_, b)| s.d > b.d) {
                best = Some((l, s));
            }
        }
    }
    best
}

/// Dual points of all lines `x_i x_j`, `i < j`.
pub fn secant_dual_points(z: &PointConfiguration) -> Vec<[Rational; 3]> {
    let mut out = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            out.push(cross3(&z.points[i], &z.points[j]));
        }
    }
    out
}

/// `jump_curve(g·Z, a)` against `substitute(jump_curve(Z, a), g)`, compared
/// up to scale. Any invertible `g` is accepted.
pub fn equivariance_check(d: &HulsbergenDatum, g: &RationalMatrix) -> Result<bool> {
    check_invertible_3x3(g)?;
    let moved = HulsbergenDatum::new(d.config.transform(g)?, d.coefficients.clone())?;
    let lhs = jump_curve(&moved)?;
    let rhs = jump_curve(d)?.substitute(g)?;
    Ok(lhs.form().is_proportional_to(rhs.form()))
}

/// Whether the jump curve is smooth; a convenience for reports.
pub fn jump_curve_is_nonsingular(d: &HulsbergenDatum) -> Result<bool> {
    Ok(is_nonsingular(&jump_curve(d)?))
}
