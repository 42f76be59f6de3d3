//! JSON formats shared by every module.
//!
//! Rationals are `{"num": .., "den": ..}` integer pairs and never floats.
//! Integers that do not fit in an `i64` are written as decimal strings;
//! either spelling is accepted on input.
//!
//! | value | shape |
//! |---|---|
//! | form | `{"degree": n, "terms": [{"a","b","c","num","den"}, ..]}` |
//! | matrix | row-major array of rows of `{"num","den"}` |
//! | point | `{"x": [num, den], "y": [..], "z": [..]}` |

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{HomogeneousPolynomial, Rational, RationalMatrix};
use crate::curves::ProjectivePoint;
use crate::{Error, Result};

/// An arbitrary-precision integer on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(v.into())
    }
}

fn ratio(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

/// `{"num": .., "den": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl From<&Rational> for RationalRecord {
    fn from(r: &Rational) -> Self {
        Self {
            num: JsonInt(r.numer().clone()),
            den: JsonInt(r.denom().clone()),
        }
    }
}

impl TryFrom<RationalRecord> for Rational {
    type Error = Error;

    fn try_from(r: RationalRecord) -> Result<Self> {
        ratio(r.num.0, r.den.0)
    }
}

/// `[num, den]`, the pair form used by points and coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair(pub JsonInt, pub JsonInt);

impl From<&Rational> for RationalPair {
    fn from(r: &Rational) -> Self {
        Self(JsonInt(r.numer().clone()), JsonInt(r.denom().clone()))
    }
}

impl TryFrom<RationalPair> for Rational {
    type Error = Error;

    fn try_from(r: RationalPair) -> Result<Self> {
        ratio(r.0 .0, r.1 .0)
    }
}

/// A coordinate given either as an integer or as `[num, den]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Integer(JsonInt),
    Fraction(RationalPair),
}

impl From<&Rational> for Coordinate {
    fn from(r: &Rational) -> Self {
        if r.is_integer() {
            Coordinate::Integer(JsonInt(r.numer().clone()))
        } else {
            Coordinate::Fraction(r.into())
        }
    }
}

impl TryFrom<Coordinate> for Rational {
    type Error = Error;

    fn try_from(c: Coordinate) -> Result<Self> {
        match c {
            Coordinate::Integer(n) => Ok(Rational::from_integer(n.0)),
            Coordinate::Fraction(p) => p.try_into(),
        }
    }
}

/// Serde adapter for a single `Rational` field: `#[serde(with = "io::rational")]`.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRecord::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRecord::deserialize(d)?
            .try_into()
            .map_err(de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of `[num, den]` pairs.
pub mod rational_pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(RationalPair::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalPair>::deserialize(d)?
            .into_iter()
            .map(|p| p.try_into().map_err(de::Error::custom))
            .collect()
    }
}

/// Serde adapter for a triple of rationals written as coordinates.
pub mod triple {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational; 3], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(Coordinate::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 3], D::Error> {
        let v = <[Coordinate; 3]>::deserialize(d)?;
        let [a, b, c] = v.map(Rational::try_from);
        Ok([
            a.map_err(de::Error::custom)?,
            b.map_err(de::Error::custom)?,
            c.map_err(de::Error::custom)?,
        ])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub num: JsonInt,
    pub den: JsonInt,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub degree: u32,
    pub terms: Vec<TermRecord>,
}

impl From<HomogeneousPolynomial> for PolynomialRecord {
    fn from(f: HomogeneousPolynomial) -> Self {
        Self {
            degree: f.degree(),
            terms: f
                .terms()
                .map(|(e, c)| TermRecord {
                    a: e[0],
                    b: e[1],
                    c: e[2],
                    num: JsonInt(c.numer().clone()),
                    den: JsonInt(c.denom().clone()),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialRecord> for HomogeneousPolynomial {
    type Error = Error;

    fn try_from(r: PolynomialRecord) -> Result<Self> {
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok(([t.a, t.b, t.c], ratio(t.num.0, t.den.0)?)))
            .collect::<Result<Vec<_>>>()?;
        HomogeneousPolynomial::from_terms(r.degree, terms)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixRecord(pub Vec<Vec<RationalRecord>>);

impl From<RationalMatrix> for MatrixRecord {
    fn from(m: RationalMatrix) -> Self {
        MatrixRecord(
            m.to_rows()
                .iter()
                .map(|row| row.iter().map(RationalRecord::from).collect())
                .collect(),
        )
    }
}

impl TryFrom<MatrixRecord> for RationalMatrix {
    type Error = Error;

    fn try_from(r: MatrixRecord) -> Result<Self> {
        let rows = r
            .0
            .into_iter()
            .map(|row| row.into_iter().map(Rational::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_rows(rows)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: RationalPair,
    pub y: RationalPair,
    pub z: RationalPair,
}

impl From<ProjectivePoint> for PointRecord {
    fn from(p: ProjectivePoint) -> Self {
        let [x, y, z] = p.coords();
        Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }
}

impl TryFrom<PointRecord> for ProjectivePoint {
    type Error = Error;

    fn try_from(r: PointRecord) -> Result<Self> {
        ProjectivePoint::new([r.x.try_into()?, r.y.try_into()?, r.z.try_into()?])
    }
}

/// Parses a comma-separated list of rationals such as `1,-2,3/4`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (num, den) = t.split_once('/').unwrap_or((t, "1"));
            let parse = |x: &str| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
            };
            ratio(parse(num)?, parse(den)?)
        })
        .collect()
}

/// [`parse_rational_list`] requiring exactly three entries.
pub fn parse_triple(s: &str) -> Result<[Rational; 3]> {
    let v = parse_rational_list(s)?;
    <[Rational; 3]>::try_from(v)
        .map_err(|v| Error::Parse(format!("expected 3 comma-separated values, got {}", v.len())))
}
