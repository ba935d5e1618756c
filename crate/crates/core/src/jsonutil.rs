//! Serde helpers: arbitrary-precision integers encode as plain JSON numbers
//! when they fit in an `i64` and as decimal strings otherwise, so fixtures
//! stay hand-writable.

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Unexpected};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn of(v: &BigInt) -> IntRepr {
        match i64::try_from(v.clone()) {
            Ok(small) => IntRepr::Small(small),
            Err(_) => IntRepr::Big(v.to_string()),
        }
    }

    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(text) => BigInt::from_str(text.trim()).map_err(|_| {
                de::Error::invalid_value(Unexpected::Str(&text), &"a decimal integer")
            }),
        }
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::of(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_bigint()
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let repr: Vec<IntRepr> = v.iter().map(IntRepr::of).collect();
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let repr: Vec<IntRepr> = Vec::deserialize(d)?;
        repr.into_iter().map(IntRepr::into_bigint).collect()
    }
}

/// Nested-array encoding for integer matrices: `[[1, 2], [3, 4]]`.
pub mod matrix_rows {
    use super::*;
    use crate::matrix::IntMatrix;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<IntRepr>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| IntRepr::of(m.at(i, j))).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows: Vec<Vec<IntRepr>> = Vec::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(de::Error::custom("ragged matrix rows"));
            }
            for cell in row {
                entries.push(cell.into_bigint()?);
            }
        }
        IntMatrix::new(nrows, ncols, entries).map_err(|e| de::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use num_bigint::BigInt;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "bigint")]
        v: BigInt,
        #[serde(with = "bigint_vec")]
        list: Vec<BigInt>,
        #[serde(with = "matrix_rows")]
        m: IntMatrix,
    }

    #[test]
    fn roundtrip_mixed_sizes() {
        let huge = BigInt::from(10).pow(30);
        let w = Wrap {
            v: huge.clone(),
            list: vec![BigInt::from(-5), huge],
            m: IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]),
        };
        let text = serde_json::to_string(&w).unwrap();
        let back: Wrap = serde_json::from_str(&text).unwrap();
        assert_eq!(w, back);
        let small: Wrap =
            serde_json::from_str(r#"{"v": 12, "list": [1, "2"], "m": [[7]]}"#).unwrap();
        assert_eq!(small.v, BigInt::from(12));
        assert_eq!(small.m.at(0, 0), &BigInt::from(7));
    }
}

