//! Singular points of plane curves: exact nonsingularity test and rational
//! singular-point search.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use super::{PlaneCurve, ProjectivePoint};
use crate::algebra::{
    binary_form_rational_roots, frame_with_last_row, gcd_forms, resultant_eliminate,
    Exponent, HomogeneousPolynomial, Rational, RationalMatrix, Subspace, UniPoly, Variable,
};
use crate::{Error, Result};

/// Rational part of the singular locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    /// Isolated rational singular points, sorted.
    pub points: Vec<ProjectivePoint>,
    /// The gcd of the partial derivatives when it is not constant: every
    /// point of this curve is singular.
    pub component: Option<HomogeneousPolynomial>,
    /// Two points spanning `component` when it is a line.
    pub component_line_points: Option<[ProjectivePoint; 2]>,
}

impl SingularLocus {
    pub fn non_isolated(&self) -> bool {
        self.component.is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.component.is_none()
    }

    /// Isolated points followed by the spanning points of a singular line.
    pub fn candidate_points(&self) -> Vec<ProjectivePoint> {
        let mut out = self.points.clone();
        if let Some(pair) = &self.component_line_points {
            out.extend(pair.iter().cloned());
        }
        out
    }
}

/// True when the partial derivatives have no common zero over the algebraic
/// closure.
///
/// For `n ≥ 2` the partials are three forms of degree `n − 1`. They have no
/// common projective zero iff they form a regular sequence, and then the
/// quotient ring vanishes from degree `3n − 5` on. So the test is whether
/// the partials generate every form of degree `3n − 5`: a rank computation
/// on the multiplication (Macaulay) matrix. A common zero `P` would make
/// every generated form vanish at `P`, so the rank test is exact both ways.
pub fn is_nonsingular(curve: &PlaneCurve) -> bool {
    let n = curve.degree();
    if n == 1 {
        return true;
    }
    let partials = curve.form().partials().expect("degree at least 1");
    let target = 3 * n - 5;
    let mult = target - (n - 1);
    let rows = monomials(target);
    let index: HashMap<Exponent, usize> = rows.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let shifts = monomials(mult);
    let mut columns = Vec::with_capacity(3 * shifts.len());
    for p in &partials {
        for s in &shifts {
            let mut col = vec![Rational::zero(); rows.len()];
            for (e, c) in p.terms() {
                col[index[&[e[0] + s[0], e[1] + s[1], e[2] + s[2]]]] = c.clone();
            }
            columns.push(col);
        }
    }
    let m = RationalMatrix::from_columns(rows.len(), &columns).expect("uniform column length");
    m.rank() == rows.len()
}

fn monomials(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Rational points where all three partials vanish.
///
/// The common factor `G` of the partials (if any) is split off and
/// reported as a non-isolated component. The isolated points are common
/// zeros of the cofactors: two generic combinations are eliminated with a
/// Sylvester resultant, rational roots of the resultant are lifted back by
/// univariate gcds, and each candidate is checked exactly. Complete for
/// rational points; irrational singular points are not reported.
pub fn find_rational_singular_points(curve: &PlaneCurve) -> Result<SingularLocus> {
    if curve.degree() < 2 {
        return Err(Error::Degree(
            "singular-point search needs degree at least 2".into(),
        ));
    }
    let partials = curve.form().partials()?;
    let g = gcd_forms(&gcd_forms(&partials[0], &partials[1]), &partials[2]);
    let (component, cofactors) = if g.degree() >= 1 {
        let cof: Vec<HomogeneousPolynomial> = partials
            .iter()
            .map(|p| p.div_exact(&g).expect("gcd divides each partial"))
            .collect();
        (Some(g), cof)
    } else {
        (None, partials.to_vec())
    };

    let mut points = BTreeSet::new();
    for p in common_rational_zeros(&cofactors)? {
        let on_partials = partials.iter().all(|f| p.lies_on(f));
        let on_component = component.as_ref().is_some_and(|c| p.lies_on(c));
        if on_partials && !on_component {
            points.insert(p);
        }
    }

    let component_line_points = match &component {
        Some(c) if c.degree() == 1 => {
            let coeffs = Variable::ALL.map(|v| c.coeff(&unit_exponent(v)));
            let ann = Subspace::span(3, &[coeffs.to_vec()])?.annihilator();
            let b = ann.basis_vectors();
            Some([point_of(&b[0])?, point_of(&b[1])?])
        }
        _ => None,
    };
    Ok(SingularLocus {
        points: points.into_iter().collect(),
        component,
        component_line_points,
    })
}

fn unit_exponent(v: Variable) -> Exponent {
    let mut e = [0; 3];
    e[v.index()] = 1;
    e
}

fn point_of(v: &[Rational]) -> Result<ProjectivePoint> {
    ProjectivePoint::new([v[0].clone(), v[1].clone(), v[2].clone()])
}

/// Rational common zeros of forms of one degree with no common factor.
/// Zero forms are ignored; a nonzero constant means no zeros. Errors if the
/// remaining forms share a component (infinitely many zeros).
pub fn common_rational_zeros(forms: &[HomogeneousPolynomial]) -> Result<Vec<ProjectivePoint>> {
    let nonzero: Vec<&HomogeneousPolynomial> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidInput("common zeros of the zero system".into()));
    }
    if nonzero.iter().any(|f| f.degree() == 0) {
        return Ok(Vec::new());
    }
    if nonzero.len() == 1 {
        return Err(Error::Degenerate("a single form has infinitely many zeros".into()));
    }
    let d = nonzero[0].degree();
    if nonzero.iter().any(|f| f.degree() != d) {
        return Err(Error::Degree("common zeros need forms of equal degree".into()));
    }

    for attempt in 0..64u32 {
        let a = combination(&nonzero, attempt, 0);
        let b = combination(&nonzero, attempt, 1);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let p = crate::algebra::nonvanishing_point(&(&a * &b));
        let frame = frame_with_last_row(&p);
        let a_s = a.substitute_unchecked(&frame);
        let b_s = b.substitute_unchecked(&frame);
        let res = resultant_eliminate(&a_s, &b_s, Variable::Z)?;
        if res.is_zero() {
            continue;
        }
        let moved: Vec<HomogeneousPolynomial> =
            nonzero.iter().map(|f| f.substitute_unchecked(&frame)).collect();
        let mut found = BTreeSet::new();
        let roots = binary_form_rational_roots(&res, [Variable::X, Variable::Y])
            .expect("nonzero resultant");
        for [u, v] in roots {
            // (0:0:1) is not a zero of a after the frame change, so the fibre
            // over (u:v) is the affine line (u, v, z)
            let mut g = UniPoly::zero();
            for f in &moved {
                g = g.gcd(&restrict_to_fibre(f, &u, &v));
            }
            if g.is_zero() {
                continue;
            }
            for z in g.rational_roots() {
                let q = ProjectivePoint::new([u.clone(), v.clone(), z])?;
                let orig = q.transform_row(&frame)?;
                if nonzero.iter().all(|f| orig.lies_on(f)) {
                    found.insert(orig);
                }
            }
        }
        return Ok(found.into_iter().collect());
    }
    Err(Error::Degenerate(
        "the forms share a common component; no finite zero set".into(),
    ))
}

/// `Σ_i c_i f_i` with small integer coefficients drawn from a fixed
/// sequence; `which` selects one of two independent combinations.
fn combination(forms: &[&HomogeneousPolynomial], attempt: u32, which: u32) -> HomogeneousPolynomial {
    let mut out = HomogeneousPolynomial::zero(forms[0].degree());
    for (i, f) in forms.iter().enumerate() {
        let c: i64 = if i == 0 {
            1
        } else {
            let s = (attempt as i64 + 1) * 7 + i as i64 * 13 + which as i64 * 29;
            (s * s) % 37 - 18
        };
        out = &out + &f.scale(&Rational::from_integer(c.into()));
    }
    out
}

fn restrict_to_fibre(f: &HomogeneousPolynomial, u: &Rational, v: &Rational) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); f.degree() as usize + 1];
    for (e, c) in f.terms() {
        coeffs[e[2] as usize] += c * pow(u, e[0]) * pow(v, e[1]);
    }
    UniPoly::new(coeffs)
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::from_integer(1.into()), |acc, _| acc * x)
}
