//! Determinants of polynomial matrices, Sylvester resultants and gcds of
//! ternary forms.

use num_traits::{One, Zero};

use super::{frame_with_last_row, HomogeneousPolynomial, Rational, UniPoly, Variable};
use crate::{Error, Result};

/// Determinant of a square matrix of forms by Bareiss elimination with exact
/// polynomial division. Entries must be weighted-homogeneous (every minor
/// homogeneous), which holds for Sylvester matrices and matrices of linear
/// forms. The zero determinant is returned with nominal degree 0.
pub fn det_poly_matrix(rows: &[Vec<HomogeneousPolynomial>]) -> Result<HomogeneousPolynomial> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a non-square matrix with {n} rows"
        )));
    }
    if n == 0 {
        return Ok(HomogeneousPolynomial::one());
    }
    let mut m: Vec<Vec<HomogeneousPolynomial>> = rows.to_vec();
    let mut negate = false;
    let mut prev = HomogeneousPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(HomogeneousPolynomial::zero(0)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant of a square matrix whose entries are linear forms (or zero).
/// The result is homogeneous of degree equal to the size.
pub fn det_linear_matrix(rows: &[Vec<HomogeneousPolynomial>]) -> Result<HomogeneousPolynomial> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::DimensionMismatch("matrix of linear forms is not square".into()));
        }
        if let Some(bad) = row.iter().find(|e| !e.is_zero() && e.degree() != 1) {
            return Err(Error::Degree(format!(
                "entry of degree {} in a matrix of linear forms",
                bad.degree()
            )));
        }
    }
    let d = det_poly_matrix(rows)?;
    Ok(if d.is_zero() {
        HomogeneousPolynomial::zero(n as u32)
    } else {
        d
    })
}

/// Sylvester resultant of `f` and `g` with respect to `var`: a form in the
/// two remaining variables vanishing at `(x, y)` exactly when the
/// specialisations share a root in `var` or both leading coefficients vanish.
pub fn resultant_eliminate(
    f: &HomogeneousPolynomial,
    g: &HomogeneousPolynomial,
    var: Variable,
) -> Result<HomogeneousPolynomial> {
    let m = f.degree_in(var) as usize;
    let k = g.degree_in(var) as usize;
    if m == 0 || k == 0 {
        return Err(Error::Degree(format!(
            "both forms need positive degree in {var:?} (got {m} and {k})"
        )));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let size = m + k;
    let mut rows = vec![vec![HomogeneousPolynomial::zero(0); size]; size];
    for i in 0..k {
        for j in 0..=m {
            rows[i][i + j] = fc[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=k {
            rows[k + i][i + j] = gc[k - j].clone();
        }
    }
    let r = det_poly_matrix(&rows)?;
    if r.is_zero() {
        let (df, dg) = (f.degree() as usize, g.degree() as usize);
        return Ok(HomogeneousPolynomial::zero((df * k + dg * m - m * k) as u32));
    }
    Ok(r)
}

/// Rational zeros `(u : v)` of a binary form in the variables `vars`, with
/// `v = 1` or `(1 : 0)`. Returns `None` for the zero form.
pub fn binary_form_rational_roots(
    form: &HomogeneousPolynomial,
    vars: [Variable; 2],
) -> Option<Vec<[Rational; 2]>> {
    if form.is_zero() {
        return None;
    }
    let d = form.degree();
    let (u, v) = (vars[0].index(), vars[1].index());
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    for (e, c) in form.terms() {
        debug_assert_eq!(e[u] + e[v], d, "form involves a third variable");
        coeffs[e[u] as usize] = c.clone();
    }
    let mut roots: Vec<[Rational; 2]> = UniPoly::new(coeffs.clone())
        .rational_roots()
        .into_iter()
        .map(|t| [t, Rational::one()])
        .collect();
    if coeffs[d as usize].is_zero() {
        roots.push([Rational::one(), Rational::zero()]);
    }
    Some(roots)
}

/// Greatest common divisor of two forms, normalised to leading coefficient
/// one. `gcd(f, 0) = f`.
///
/// After a coordinate change making `f` monic in `Z`, the gcd is monic in
/// `Z` too; it is recovered by interpolating univariate gcds along the lines
/// `X = x₀, Y = 1` and then verified by exact division. Specialisations with
/// a too-large gcd are finitely many and are discarded.
pub fn gcd_forms(f: &HomogeneousPolynomial, g: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.degree() == 0 || g.degree() == 0 {
        return HomogeneousPolynomial::one();
    }
    let (f, g) = if f.degree() <= g.degree() { (f, g) } else { (g, f) };
    let p = nonvanishing_point(f);
    let frame = frame_with_last_row(&p);
    let back = frame.inverse().expect("frame is invertible");
    let fs = f.substitute_unchecked(&frame);
    let gs = g.substitute_unchecked(&frame);

    let budget = (f.degree() * g.degree() + f.degree()) as usize * 2 + 8;
    let mut samples: Vec<(Rational, UniPoly)> = Vec::new();
    let mut best = usize::MAX;
    for step in 0..budget {
        let x0 = sample_point(step);
        let h = specialize_z(&fs, &x0).gcd(&specialize_z(&gs, &x0));
        let d = h.degree().expect("f specialises to a nonzero polynomial");
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            samples.clear();
        }
        samples.push((x0, h));
        if samples.len() == best + 1 {
            if let Some(gz) = interpolate_monic_in_z(&samples, best as u32) {
                if fs.div_exact(&gz).is_some() && gs.div_exact(&gz).is_some() {
                    return gz.substitute_unchecked(&back).normalized();
                }
            }
            // every kept sample was unlucky; wait for a smaller degree
            samples.remove(0);
        }
    }
    panic!("gcd interpolation did not converge within its sample budget");
}

/// First point of `{0..=d}³` where `f` does not vanish.
pub fn nonvanishing_point(f: &HomogeneousPolynomial) -> [Rational; 3] {
    let d = f.degree() as i64;
    for s in 0..=3 * d {
        for a in 0..=d.min(s) {
            for b in 0..=d.min(s - a) {
                let c = s - a - b;
                if c > d {
                    continue;
                }
                let p = [a, b, c].map(|v| Rational::from_integer(v.into()));
                if !f.eval(&p).is_zero() {
                    return p;
                }
            }
        }
    }
    unreachable!("a nonzero form of degree d does not vanish on the whole grid {{0..d}}^3")
}

fn sample_point(step: usize) -> Rational {
    // 0, 1, -1, 2, -2, ...
    let k = step.div_ceil(2) as i64;
    Rational::from_integer(if step % 2 == 1 { k } else { -k }.into())
}

/// `f(x₀, 1, Z)` as a polynomial in `Z`.
fn specialize_z(f: &HomogeneousPolynomial, x0: &Rational) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); f.degree() as usize + 1];
    for (e, c) in f.terms() {
        coeffs[e[2] as usize] += c * pow(x0, e[0]);
    }
    UniPoly::new(coeffs)
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// Rebuilds `Z^d + Σ_k c_k(X, Y) Z^{d-k}` from values at `(x₀, 1)`.
fn interpolate_monic_in_z(samples: &[(Rational, UniPoly)], d: u32) -> Option<HomogeneousPolynomial> {
    let xs: Vec<Rational> = samples.iter().map(|(x, _)| x.clone()).collect();
    let mut terms = Vec::new();
    for k in 0..=d {
        let ys: Vec<Rational> = samples
            .iter()
            .map(|(_, h)| h.coeffs().get((d - k) as usize).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let ck = lagrange(&xs, &ys);
        if ck.degree().is_some_and(|deg| deg > k as usize) {
            return None;
        }
        for (j, c) in ck.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push(([j as u32, k - j as u32, d - k], c.clone()));
            }
        }
    }
    HomogeneousPolynomial::from_terms(d, terms).ok()
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut acc = vec![Rational::zero(); n];
    for i in 0..n {
        if ys[i].is_zero() {
            continue;
        }
        // basis polynomial for node i
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] += b;
                next[t] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (t, b) in basis.iter().enumerate() {
            acc[t] += b * &scale;
        }
    }
    UniPoly::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn x() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::X)
    }
    fn y() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::Y)
    }
    fn z() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::Z)
    }

    #[test]
    fn resultant_of_two_lines() {
        let r = resultant_eliminate(&(&z() - &x()), &(&z() - &y()), Variable::Z).unwrap();
        assert!(r.is_proportional_to(&(&x() - &y())));
    }

    #[test]
    fn resultant_with_common_factor_vanishes() {
        let common = &z() - &(&x() + &y());
        let f = &common * &(&z() + &x());
        let g = &common * &(&z() - &y().scale(&int(3)));
        let r = resultant_eliminate(&f, &g, Variable::Z).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 4);
    }

    #[test]
    fn resultant_square_against_line() {
        let r = resultant_eliminate(&z().pow(2), &(&z() - &x()), Variable::Z).unwrap();
        assert_eq!(r, x().pow(2));
    }

    #[test]
    fn resultant_needs_the_variable() {
        assert!(resultant_eliminate(&x(), &z(), Variable::Z).is_err());
    }

    #[test]
    fn linear_determinants() {
        let l1 = x();
        let l2 = &y() + &z();
        let l3 = &x() - &z();
        assert_eq!(det_linear_matrix(&[vec![l1.clone()]]).unwrap(), l1);
        let diag = vec![
            vec![l1.clone(), HomogeneousPolynomial::zero(1)],
            vec![HomogeneousPolynomial::zero(1), l1.clone()],
        ];
        assert_eq!(det_linear_matrix(&diag).unwrap(), l1.pow(2));
        let sym = vec![vec![l1.clone(), l2.clone()], vec![l2.clone(), l3.clone()]];
        assert_eq!(det_linear_matrix(&sym).unwrap(), &(&l1 * &l3) - &l2.pow(2));
    }

    #[test]
    fn linear_determinant_rejects_bad_entries() {
        let bad = vec![vec![x().pow(2)]];
        assert!(matches!(det_linear_matrix(&bad), Err(Error::Degree(_))));
        let ragged = vec![vec![x(), y()]];
        assert!(det_linear_matrix(&ragged).is_err());
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let common = &(&x().pow(2) + &(&y() * &z())) - &z().pow(2).scale(&int(2));
        let f = &common * &(&x() + &y());
        let g = &common * &(&(&z() - &x()) * &y());
        assert_eq!(gcd_forms(&f, &g), common.normalized());
        assert_eq!(gcd_forms(&(&x() + &y()), &(&x() - &y())), HomogeneousPolynomial::one());
        assert_eq!(gcd_forms(&x().pow(2), &HomogeneousPolynomial::zero(1)), x().pow(2));
    }

    #[test]
    fn binary_roots() {
        // X (2X - 3Y) Y^0 ... plus the point at infinity from Y^2 missing
        let f = &x() * &(&x().scale(&int(2)) - &y().scale(&int(3)));
        let roots = binary_form_rational_roots(&f, [Variable::X, Variable::Y]).unwrap();
        assert_eq!(roots.len(), 2);
        let g = &y() * &x();
        let roots = binary_form_rational_roots(&g, [Variable::X, Variable::Y]).unwrap();
        assert_eq!(roots, vec![[int(0), int(1)], [int(1), int(0)]]);
    }
}
