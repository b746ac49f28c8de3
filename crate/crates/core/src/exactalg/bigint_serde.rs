//! JSON encoding for big integers: plain numbers when they fit in 64 bits,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Unsigned(u64),
    Text(String),
}

fn to_repr(x: &BigInt) -> Repr {
    match x.to_i64() {
        Some(v) => Repr::Small(v),
        None => match x.to_u64() {
            Some(v) => Repr::Unsigned(v),
            None => Repr::Text(x.to_string()),
        },
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(v) => Ok(BigInt::from(v)),
        Repr::Unsigned(v) => Ok(BigInt::from(v)),
        Repr::Text(s) => s.trim().parse().map_err(|_| E::custom(format!("not an integer: {s:?}"))),
    }
}

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(x).serialize(s)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(to_repr))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr::<D::Error>).collect()
    }
}
