//! Exact rationals and their `"p/q"` string form.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

/// Formats as `"p/q"` with `q > 0`, always including the denominator.
pub fn format(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"`, `"p"`, with optional surrounding whitespace.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i128 = p
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
    let q: i128 = q
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
    if q == 0 {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Serde adapter for a single rational as a `"p/q"` string.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a fixed-size array of rationals.
pub mod serde_array {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer, const N: usize>(
        v: &[Rational; N],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for q in v {
            seq.serialize_element(&format(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        d: D,
    ) -> std::result::Result<[Rational; N], D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        if raw.len() != N {
            return Err(serde::de::Error::custom(format!(
                "expected {N} entries, got {}",
                raw.len()
            )));
        }
        let mut out = [Rational::zero(); N];
        for (slot, s) in out.iter_mut().zip(&raw) {
            *slot = parse(s).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// Serde adapter for a square matrix of rationals stored as nested arrays.
pub mod serde_matrix {
    use super::*;

    pub fn serialize<S: Serializer, const N: usize>(
        m: &[[Rational; N]; N],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format).collect()).collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        d: D,
    ) -> std::result::Result<[[Rational; N]; N], D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        if raw.len() != N || raw.iter().any(|r| r.len() != N) {
            return Err(serde::de::Error::custom(format!("expected a {N}x{N} matrix")));
        }
        let mut out = [[Rational::zero(); N]; N];
        for (i, row) in raw.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out[i][j] = parse(s).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse(" -4 ").unwrap(), int(-4));
        assert_eq!(parse("1/-2").unwrap(), frac(-1, 2));
        assert_eq!(format(&frac(-1, 2)), "-1/2");
        assert_eq!(format(&int(3)), "3/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
