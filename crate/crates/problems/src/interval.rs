use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{ProblemError, Result};

/// Nested rational intervals `[a_n, b_n] ⊆ [0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalShrink {
    #[serde(with = "rational_vec")]
    pub lower: Vec<BigRational>,
    #[serde(with = "rational_vec")]
    pub upper: Vec<BigRational>,
}

impl IntervalShrink {
    pub fn new(lower: Vec<BigRational>, upper: Vec<BigRational>) -> Result<Self> {
        let s = Self { lower, upper };
        s.validate()?;
        Ok(s)
    }

    /// `a_n ≤ a_{n+1} < b_{n+1} ≤ b_n`, every value in `[0,1]`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ProblemError::BadInterval(m));
        if self.lower.len() != self.upper.len() || self.lower.is_empty() {
            return bad("lower and upper must be non-empty and of equal length".into());
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        for (i, (a, b)) in self.lower.iter().zip(&self.upper).enumerate() {
            if *a < zero || *b > one {
                return bad(format!("stage {i} leaves [0,1]"));
            }
            if a >= b {
                return bad(format!("stage {i}: a_n = {a} is not below b_n = {b}"));
            }
            if i > 0 && (self.lower[i - 1] > *a || self.upper[i - 1] < *b) {
                return bad(format!("stage {i} is not nested in stage {}", i - 1));
            }
        }
        Ok(())
    }

    pub fn stages(&self) -> usize {
        self.lower.len()
    }

    /// Does `x` lie in the last listed interval?
    pub fn admits(&self, x: &BigRational) -> bool {
        let n = self.stages() - 1;
        self.lower[n] <= *x && *x <= self.upper[n]
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || ProblemError::BadInterval(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| err())?, q.trim().parse::<BigInt>().map_err(|_| err())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| err())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

pub(crate) mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub(crate) mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn invariants() {
        assert!(IntervalShrink::new(vec![q(0, 1), q(1, 4)], vec![q(1, 1), q(1, 2)]).is_ok());
        assert!(IntervalShrink::new(vec![q(0, 1), q(1, 2)], vec![q(1, 1), q(1, 2)]).is_err());
        assert!(IntervalShrink::new(vec![q(1, 4), q(0, 1)], vec![q(1, 1), q(1, 2)]).is_err());
        assert!(IntervalShrink::new(vec![q(0, 1)], vec![q(3, 2)]).is_err());
    }

    #[test]
    fn serde_as_strings() {
        let i = IntervalShrink::new(vec![q(0, 1), q(1, 3)], vec![q(1, 1), q(2, 3)]).unwrap();
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"lower":["0","1/3"],"upper":["1","2/3"]}"#);
        assert_eq!(serde_json::from_str::<IntervalShrink>(&s).unwrap(), i);
    }
}
