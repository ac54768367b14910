use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Formats as `n` or `n/d`.
pub fn to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Small-denominator random rational: numerator in [-5, 5], denominator in [1, 4].
pub fn random_small<R: Rng>(rng: &mut R) -> Scalar {
    let n: i64 = rng.gen_range(-5..=5);
    let d: i64 = rng.gen_range(1..=4);
    frac(n, d)
}

pub fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}

/// Serde adapter that writes scalars as strings.
pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

pub mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
            .collect()
    }
}
