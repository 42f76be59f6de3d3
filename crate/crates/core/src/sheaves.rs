//! Chern-class arithmetic for sheaves on P²: Riemann–Roch, reduced Hilbert
//! polynomials, the Gieseker order, and the cohomology table of a
//! semistable sheaf with `c₁ = 0`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::{Error, Result};

/// Chern classes are kept below this bound so every derived quantity fits
/// an `i64`.
const CHERN_BOUND: i64 = 1 << 31;

/// Rank and Chern classes of a sheaf on P².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChernRecord", into = "ChernRecord")]
pub struct ChernData {
    r: u32,
    c1: i64,
    c2: i64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ChernRecord {
    pub r: u32,
    pub c1: i64,
    pub c2: i64,
}

impl ChernData {
    pub fn new(r: u32, c1: i64, c2: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if c1.abs() >= CHERN_BOUND || c2.abs() >= CHERN_BOUND {
            return Err(Error::InvalidInput(format!(
                "Chern classes must be below 2^31 in absolute value (got c1={c1}, c2={c2})"
            )));
        }
        Ok(Self { r, c1, c2 })
    }

    pub fn rank(&self) -> u32 {
        self.r
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.c1.into(), self.r.into())
    }
}

impl From<ChernData> for ChernRecord {
    fn from(c: ChernData) -> Self {
        Self {
            r: c.r,
            c1: c.c1,
            c2: c.c2,
        }
    }
}

impl TryFrom<ChernRecord> for ChernData {
    type Error = Error;

    fn try_from(c: ChernRecord) -> Result<Self> {
        ChernData::new(c.r, c.c1, c.c2)
    }
}

/// `p(m) = ½m² + (3/2 + μ)m + χ/r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedHilbertPolynomial {
    #[serde(with = "crate::io::rational")]
    pub quadratic: Rational,
    #[serde(with = "crate::io::rational")]
    pub linear: Rational,
    #[serde(with = "crate::io::rational")]
    pub constant: Rational,
}

impl ReducedHilbertPolynomial {
    pub fn eval(&self, m: &Rational) -> Rational {
        (&self.quadratic * m + &self.linear) * m + &self.constant
    }
}

impl PartialOrd for ReducedHilbertPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedHilbertPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        gieseker_compare(self, other)
    }
}

/// Riemann–Roch: `χ = r + c₁(c₁ + 3)/2 − c₂`. The product `c₁(c₁ + 3)` is
/// always even.
pub fn euler_characteristic(c: &ChernData) -> i64 {
    c.r as i64 + c.c1 * (c.c1 + 3) / 2 - c.c2
}

pub fn reduced_hilbert_polynomial(c: &ChernData) -> ReducedHilbertPolynomial {
    let r = Rational::from_integer(c.r.into());
    ReducedHilbertPolynomial {
        quadratic: Rational::new(1.into(), 2.into()),
        linear: Rational::new(3.into(), 2.into()) + c.slope(),
        constant: Rational::from_integer(euler_characteristic(c).into()) / r,
    }
}

/// Lexicographic order on coefficients, highest degree first. The
/// quadratic coefficient is always ½ on P², so this compares slopes and
/// then `χ/r`.
pub fn gieseker_compare(p: &ReducedHilbertPolynomial, q: &ReducedHilbertPolynomial) -> Ordering {
    p.quadratic
        .cmp(&q.quadratic)
        .then_with(|| p.linear.cmp(&q.linear))
        .then_with(|| p.constant.cmp(&q.constant))
}

/// Cohomology of a semistable sheaf with `c₁ = 0`: the three `h¹` values
/// and the groups that vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub h1_f_minus_2: i64,
    pub h1_f_minus_1: i64,
    pub h1_f: i64,
    /// `H⁰(F(−1)) = H⁰(F) = H²(F(−1)) = H²(F) = 0`.
    pub h0_h2_vanish: bool,
}

/// `(h¹(F(−2)), h¹(F(−1)), h¹(F)) = (c₂, c₂, c₂ − r)` for a non-trivial
/// semistable sheaf of rank `r` with `c₁ = 0`. Evaluates the formula; the
/// semistability hypothesis is the caller's.
pub fn semistable_h1_table(r: u32, c2: i64) -> Result<CohomologyTable> {
    let c = ChernData::new(r, 0, c2)?;
    if c2 < r as i64 {
        return Err(Error::Hypothesis(format!(
            "c2 = {c2} < r = {r}: a semistable sheaf with c1 = 0 has c2 >= r"
        )));
    }
    Ok(CohomologyTable {
        h1_f_minus_2: c.c2,
        h1_f_minus_1: c.c2,
        h1_f: c.c2 - c.r as i64,
        h0_h2_vanish: true,
    })
}

/// [`semistable_h1_table`] for full Chern data; only `c₁ = 0` is covered.
pub fn h1_table(c: &ChernData) -> Result<CohomologyTable> {
    if c.c1 != 0 {
        return Err(Error::Hypothesis(format!(
            "the cohomology table is only known for c1 = 0 (got c1 = {})",
            c.c1
        )));
    }
    semistable_h1_table(c.r, c.c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn chern(r: u32, c1: i64, c2: i64) -> ChernData {
        ChernData::new(r, c1, c2).unwrap()
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&chern(2, 0, 5)), -3);
        assert_eq!(euler_characteristic(&chern(4, 0, 0)), 4);
        assert_eq!(euler_characteristic(&chern(2, -1, 2)), -1);
    }

    #[test]
    fn reduced_polynomials() {
        let p = reduced_hilbert_polynomial(&chern(2, 0, 7));
        assert_eq!((p.quadratic.clone(), p.linear.clone(), p.constant.clone()), (rat(1, 2), rat(3, 2), rat(-5, 2)));
        let o = reduced_hilbert_polynomial(&chern(1, 0, 0));
        assert_eq!(o.constant, rat(1, 1));
        // the structure sheaf has h⁰(O(m)) = (m+1)(m+2)/2
        assert_eq!(o.eval(&rat(3, 1)), rat(10, 1));
        assert_eq!(reduced_hilbert_polynomial(&chern(3, 0, 3)).constant, rat(0, 1));
    }

    #[test]
    fn gieseker_order() {
        let with = |r: u32, c1: i64, c2: i64| reduced_hilbert_polynomial(&chern(r, c1, c2));
        // equal slopes, χ/r = 1 against χ/r = 0
        assert_eq!(gieseker_compare(&with(1, 0, 0), &with(1, 0, 1)), Ordering::Greater);
        assert_eq!(gieseker_compare(&with(2, 0, 5), &with(2, 0, 5)), Ordering::Equal);
        assert_eq!(gieseker_compare(&with(1, -1, -100), &with(1, 0, 100)), Ordering::Less);
    }

    #[test]
    fn h1_table() {
        let t = semistable_h1_table(2, 5).unwrap();
        assert_eq!((t.h1_f_minus_2, t.h1_f_minus_1, t.h1_f), (5, 5, 3));
        let t = semistable_h1_table(3, 3).unwrap();
        assert_eq!((t.h1_f_minus_2, t.h1_f_minus_1, t.h1_f), (3, 3, 0));
        assert!(matches!(semistable_h1_table(2, 1), Err(Error::Hypothesis(_))));
        assert!(super::h1_table(&chern(2, 1, 5)).is_err());
    }

    #[test]
    fn chern_json() {
        let c: ChernData = serde_json::from_str(r#"{"r":2,"c1":0,"c2":5}"#).unwrap();
        assert_eq!(c, chern(2, 0, 5));
        assert!(serde_json::from_str::<ChernData>(r#"{"r":0,"c1":0,"c2":5}"#).is_err());
    }
}
