//! Serde adapters that write big numbers as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

pub mod big_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// `Vec<BigRational>` as `["3", "-1/2", ...]`.
pub mod rationals {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|q| q.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "big_int")]
        n: BigInt,
        #[serde(with = "rationals")]
        q: Vec<BigRational>,
    }

    #[test]
    fn round_trip() {
        let w = Wrap {
            n: "-98765432109876543210".parse().unwrap(),
            q: vec![BigRational::new(3.into(), 6.into()), BigRational::from_integer((-4).into())],
        };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"n":"-98765432109876543210","q":["1/2","-4"]}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&json).unwrap(), w);
        assert!(parse_rational("1/0").is_none());
    }
}
