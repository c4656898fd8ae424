//! Exact text forms used on the command line and in JSON/CSV payloads.
//!
//! * rationals print as `p/q` with `q > 0`, always with the slash; on input
//!   a bare integer `p` is accepted too
//! * `∞` on the projective line is the string `inf`
//! * points are `x,y` (optionally parenthesized)

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::projective::Projective;
use crate::error::{Error, Result};
use crate::point::Point2;
use crate::Rational;

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("malformed rational '{token}'"));
    let s = token.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    super::rational::rational_make(num, den)
        .map_err(|_| Error::invalid(format!("zero denominator in '{token}'")))
}

pub fn format_projective(p: &Projective<Rational>) -> String {
    match p {
        Projective::Finite(q) => format_rational(q),
        Projective::Infinity => "inf".to_string(),
    }
}

pub fn parse_projective(token: &str) -> Result<Projective<Rational>> {
    match token.trim() {
        "inf" | "∞" => Ok(Projective::Infinity),
        s => parse_rational(s).map(Projective::Finite),
    }
}

pub fn parse_point(token: &str) -> Result<Point2<Rational>> {
    let s = token.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::invalid(format!("malformed point '{token}', expected x,y")));
    }
    Ok(Point2::new(parse_rational(parts[0])?, parse_rational(parts[1])?))
}

/// Comma-separated rational tuple.
pub fn parse_tuple(token: &str) -> Result<Vec<Rational>> {
    token
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(parse_rational)
        .collect()
}

/// `#[serde(with = "rational")]` for a single [`Rational`] field.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "rational_seq")]` for `Vec<Rational>`.
pub mod rational_seq {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "rational_rows")]` for `Vec<Vec<Rational>>`.
pub mod rational_rows {
    use super::*;

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl Serialize for Projective<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_projective(self))
    }
}

impl<'de> Deserialize<'de> for Projective<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_projective(&s).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PointText {
    #[serde(with = "rational")]
    x: Rational,
    #[serde(with = "rational")]
    y: Rational,
}

impl Serialize for Point2<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointText {
            x: self.x.clone(),
            y: self.y.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = PointText::deserialize(d)?;
        Ok(Point2::new(p.x, p.y))
    }
}
