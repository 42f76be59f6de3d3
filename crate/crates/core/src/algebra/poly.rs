use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, RationalMatrix, Variable};
use crate::{Error, Result};

/// Exponents `(a, b, c)` of the monomial `X^a Y^b Z^c`.
pub type Exponent = [u32; 3];

/// A homogeneous form in three variables with exact rational coefficients.
///
/// Stored coefficients are never zero. The zero form keeps a nominal degree
/// so degree preconditions stay total; arithmetic treats a zero operand as
/// compatible with any degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PolynomialRecord", into = "crate::io::PolynomialRecord")]
pub struct HomogeneousPolynomial {
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Variable) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponent: Exponent, coeff: Rational) -> Self {
        let degree = exponent.iter().sum();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { degree, terms }
    }

    /// The linear form `c₀X + c₁Y + c₂Z`.
    pub fn linear(coeffs: &[Rational; 3]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0; 3];
                e[i] = 1;
                terms.insert(e, c.clone());
            }
        }
        Self { degree: 1, terms }
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Degree(format!(
                    "exponent {:?} does not sum to declared degree {}",
                    e, degree
                )));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { degree, terms: map })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents (`X > Y > Z`).
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Highest power of `v` occurring in a term; 0 for the zero form.
    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms
            .keys()
            .map(|e| e[v.index()])
            .max()
            .unwrap_or(0)
    }

    /// Splits `f = Σ_k c_k · v^k`; entry `k` is `c_k`, a form of degree
    /// `deg f − k` free of `v`. The vector has length `degree_in(v) + 1`.
    pub fn coefficients_in(&self, v: Variable) -> Vec<HomogeneousPolynomial> {
        let top = self.degree_in(v);
        let mut out: Vec<HomogeneousPolynomial> = (0..=top)
            .map(|k| HomogeneousPolynomial::zero(self.degree - k))
            .collect();
        for (e, c) in &self.terms {
            let k = e[v.index()];
            let mut rest = *e;
            rest[v.index()] = 0;
            out[k as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        // powers of each coordinate up to the degree
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(self.degree as usize + 1);
                let mut acc = Rational::one();
                for _ in 0..=self.degree {
                    p.push(acc.clone());
                    acc = &acc * x;
                }
                p
            })
            .collect();
        self.terms.iter().fold(Rational::zero(), |sum, (e, c)| {
            sum + c
                * &powers[0][e[0] as usize]
                * &powers[1][e[1] as usize]
                * &powers[2][e[2] as usize]
        })
    }

    /// `f(x · M)` for the row vector `x = (X, Y, Z)`: variable `j` is
    /// replaced by `Σ_i M[i][j] · x_i`. Composition is
    /// `substitute(f, M₁M₂) = substitute(substitute(f, M₂), M₁)`.
    pub fn substitute(&self, m: &RationalMatrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimensionMismatch(format!(
                "substitution needs a 3x3 matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.det()?.is_zero() {
            return Err(Error::SingularMatrix(
                "substitution matrix is not invertible".into(),
            ));
        }
        Ok(self.substitute_unchecked(m))
    }

    pub(crate) fn substitute_unchecked(&self, m: &RationalMatrix) -> Self {
        let images: Vec<Self> = (0..3)
            .map(|j| Self::linear(&[m[(0, j)].clone(), m[(1, j)].clone(), m[(2, j)].clone()]))
            .collect();
        let powers: Vec<Vec<Self>> = images
            .iter()
            .map(|l| {
                let mut p = Vec::with_capacity(self.degree as usize + 1);
                let mut acc = Self::one();
                for _ in 0..=self.degree {
                    p.push(acc.clone());
                    acc = &acc * l;
                }
                p
            })
            .collect();
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let t = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            out.add_scaled(&t, c);
        }
        out
    }

    /// Pulls back along the line `s·p + t·q`: the result is the binary form
    /// `f(s·p + t·q)` in the first two variables.
    pub fn restrict_to_line(&self, p: &[Rational; 3], q: &[Rational; 3]) -> Self {
        let m = RationalMatrix::from_rows(vec![p.to_vec(), q.to_vec(), vec![Rational::zero(); 3]])
            .expect("3x3");
        self.substitute_unchecked(&m)
    }

    /// `∂f/∂v`, a form of degree `deg f − 1`.
    pub fn partial(&self, v: Variable) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree("cannot differentiate a degree-0 form".into()));
        }
        let i = v.index();
        let mut out = Self::zero(self.degree - 1);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                out.terms.insert(d, c * Rational::from_integer(e[i].into()));
            }
        }
        Ok(out)
    }

    pub fn partials(&self) -> Result<[Self; 3]> {
        Ok([
            self.partial(Variable::X)?,
            self.partial(Variable::Y)?,
            self.partial(Variable::Z)?,
        ])
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. A single divisor has a unique remainder, so the first
    /// non-divisible leading term settles it.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Self::zero(self.degree.saturating_sub(divisor.degree)));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let qdeg = self.degree - divisor.degree;
        let mut rem = self.clone();
        let mut quot = Self::zero(qdeg);
        while let Some((e, c)) = rem.leading_term() {
            if !(0..3).all(|i| e[i] >= lead_e[i]) {
                return None;
            }
            let qe = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let qc = c / lead_c;
            let t = Self::monomial(qe, qc.clone());
            rem.add_scaled(&(&t * divisor), &-Rational::one());
            quot.terms.insert(qe, qc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient; the zero form is returned as is.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// `self = c · other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.degree == other.degree && self.normalized() == other.normalized()
    }

    /// Multiplies through by the lcm of denominators and divides by the gcd
    /// of numerators, making the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut s = Rational::new(l, g);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        self.scale(&s)
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(
            self.degree, other.degree,
            "adding forms of different degrees"
        );
        for (e, x) in &other.terms {
            let entry = self.terms.entry(*e).or_insert_with(Rational::zero);
            *entry += x * c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// Renders with custom variable names, e.g. `["a0", "a1", "a2"]`.
    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| {
                    if e[i] == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], e[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["X", "Y", "Z"]))
    }
}

impl Add for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn add(self, rhs: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn sub(self, rhs: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn neg(self) -> HomogeneousPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn mul(self, rhs: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let degree = self.degree + rhs.degree;
        let mut terms: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogeneousPolynomial { degree, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HomogeneousPolynomial {
            type Output = HomogeneousPolynomial;
            fn $m(self, rhs: HomogeneousPolynomial) -> HomogeneousPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn neg(self) -> HomogeneousPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::X)
    }
    fn y() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::Y)
    }
    fn z() -> HomogeneousPolynomial {
        HomogeneousPolynomial::var(Variable::Z)
    }

    fn mat(rows: [[i64; 3]; 3]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn swap_permutation_sends_x_to_y() {
        let swap = mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(x().substitute(&swap).unwrap(), y());
    }

    #[test]
    fn fermat_is_permutation_invariant() {
        let f = &(&x().pow(3) + &y().pow(3)) + &z().pow(3);
        for rows in [
            [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
            [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        ] {
            assert_eq!(f.substitute(&mat(rows)).unwrap(), f);
        }
    }

    #[test]
    fn unipotent_substitution_row_convention() {
        // M has its (0,1) entry set: the new Y is X + Y.
        let f = &(&x() + &y()) + &z();
        let m = mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let expected = &(&x().scale(&int(2)) + &y()) + &z();
        assert_eq!(f.substitute(&m).unwrap(), expected);
    }

    #[test]
    fn singular_substitution_rejected() {
        let m = mat([[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert!(matches!(x().substitute(&m), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn partials_of_examples() {
        let f = &(&x().pow(3) + &y().pow(3)) + &z().pow(3);
        let [fx, fy, fz] = f.partials().unwrap();
        assert_eq!(fx, x().pow(2).scale(&int(3)));
        assert_eq!(fy, y().pow(2).scale(&int(3)));
        assert_eq!(fz, z().pow(2).scale(&int(3)));

        let g = &(&x() * &y()) * &z();
        let [gx, gy, gz] = g.partials().unwrap();
        assert_eq!(gx, &y() * &z());
        assert_eq!(gy, &x() * &z());
        assert_eq!(gz, &x() * &y());

        let h = &(&x().pow(2) * &z()) + &y().pow(3);
        let [hx, hy, hz] = h.partials().unwrap();
        assert_eq!(hx, (&x() * &z()).scale(&int(2)));
        assert_eq!(hy, y().pow(2).scale(&int(3)));
        assert_eq!(hz, x().pow(2));
        let euler = &(&(&x() * &hx) + &(&y() * &hy)) + &(&z() * &hz);
        assert_eq!(euler, h.scale(&int(3)));
    }

    #[test]
    fn degree_zero_partial_rejected() {
        let c = HomogeneousPolynomial::constant(int(5));
        assert!(c.partials().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &x() - &z().scale(&rat(1, 2));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&z()), None);
        assert_eq!(HomogeneousPolynomial::zero(3).div_exact(&a), Some(HomogeneousPolynomial::zero(2)));
    }

    #[test]
    fn from_terms_checks_degree() {
        assert!(HomogeneousPolynomial::from_terms(2, [([1, 1, 1], int(1))]).is_err());
        let f = HomogeneousPolynomial::from_terms(2, [([1, 1, 0], int(1)), ([1, 1, 0], int(-1))]).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn display_is_readable() {
        let h = &(&x().pow(2) * &z()) - &y().pow(3).scale(&rat(3, 2));
        assert_eq!(h.to_string(), "X^2*Z - 3/2*Y^3");
    }
}
