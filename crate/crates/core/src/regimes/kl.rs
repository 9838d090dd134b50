use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative quantity that may be `+inf`, such as a KL divergence
/// between Bernoulli laws with disjoint support. Ordering is total with
/// `Infinite` above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn from_f64(v: f64) -> Self {
        if v == f64::INFINITY {
            Extended::Infinite
        } else {
            Extended::Finite(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Extended::Finite(v) => v,
            Extended::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// Multiplies by a positive finite factor.
    pub fn scale(self, k: f64) -> Self {
        match self {
            Extended::Finite(v) => Extended::Finite(v * k),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v:.6}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Extended::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(Extended::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}

/// `x * ln(x / y)` with `0 * ln(0 / y) = 0`; infinite when `x > 0 = y`.
fn xlogx_over_y(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if y == 0.0 {
        f64::INFINITY
    } else {
        x * (x / y).ln()
    }
}

/// KL divergence `D(u || v)` between Bernoulli(u) and Bernoulli(v), in nats.
pub fn bernoulli_kl(u: f64, v: f64) -> Result<Extended> {
    for (name, x) in [("u", u), ("v", v)] {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidParams(format!("{name} = {x} is not a probability")));
        }
    }
    if u == v {
        return Ok(Extended::Finite(0.0));
    }
    let d = xlogx_over_y(u, v) + xlogx_over_y(1.0 - u, 1.0 - v);
    Ok(Extended::from_f64(d.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(bernoulli_kl(0.3, 0.3).unwrap(), Extended::Finite(0.0));
        let d = bernoulli_kl(1.0, 0.5).unwrap().to_f64();
        assert!((d - std::f64::consts::LN_2).abs() < 1e-15);
        // 0.5 ln 2 + 0.5 ln(2/3), evaluated to 20 digits independently.
        let d = bernoulli_kl(0.5, 0.25).unwrap().to_f64();
        assert!((d - 0.143_841_036_225_890_2).abs() < 1e-15, "{d}");
        assert_eq!(bernoulli_kl(1.0, 0.0).unwrap(), Extended::Infinite);
        assert_eq!(bernoulli_kl(0.2, 1.0).unwrap(), Extended::Infinite);
        assert_eq!(bernoulli_kl(0.0, 0.0).unwrap(), Extended::Finite(0.0));
        assert!(bernoulli_kl(1.5, 0.5).is_err());
    }

    #[test]
    fn ordering_and_json() {
        assert!(Extended::Infinite > Extended::Finite(1e300));
        assert!(Extended::Finite(1.0) < Extended::Finite(2.0));
        assert_eq!(serde_json::to_string(&Extended::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Extended>("\"inf\"").unwrap(), Extended::Infinite);
        assert_eq!(serde_json::from_str::<Extended>("2.5").unwrap(), Extended::Finite(2.5));
    }
}
