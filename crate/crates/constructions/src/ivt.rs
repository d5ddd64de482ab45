use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use wlab_encodings::{pair, unpair, Behavior, Stream};
use wlab_problems::{Instance, IntervalShrink, Problem, Solution};

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// Nonzero code of a non-negative rational: `1 + ⟨p, q⟩` in lowest terms.
pub fn encode_rational(x: &BigRational) -> Result<u64> {
    let overflow = || ConstructionError::Overflow(format!("rational {x} has no 64-bit code"));
    if x.is_negative() {
        return Err(shape("negative rationals have no code"));
    }
    let p = x.numer().to_u64().ok_or_else(overflow)?;
    let q = x.denom().to_u64().ok_or_else(overflow)?;
    pair(p, q).ok().and_then(|c| c.checked_add(1)).ok_or_else(overflow)
}

/// Inverse of [`encode_rational`]; `None` for 0 and for codes with a zero
/// denominator.
pub fn decode_rational(code: u64) -> Option<BigRational> {
    let (p, q) = unpair(code.checked_sub(1)?);
    (q != 0).then(|| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn below_threshold(a: &BigRational, b: &BigRational, k: u32) -> bool {
    let scale = BigRational::from_integer(BigInt::one() << (k + 1));
    (b - a) * scale < BigRational::one()
}

/// The staged code sequence `(c_n)`.
///
/// Stage `n` emits 0 and bumps `k` when `b_n - a_n < 2^{-k-1}`; otherwise it
/// emits the previous nonzero code if that rational is still strictly inside
/// `(a_n, b_n)`, else the code of the midpoint. Past the listed stages the
/// last interval is repeated until a nonzero code appears, after which the
/// sequence is constant; the stream is annotated accordingly.
pub fn ivt_to_cluster(iv: &IntervalShrink) -> Result<Stream> {
    iv.validate()?;
    let last = iv.stages() - 1;
    let mut k = 0u32;
    let mut prev: Option<(u64, BigRational)> = None;
    let mut out = Vec::new();
    let mut n = 0usize;
    loop {
        let (a, b) = (&iv.lower[n.min(last)], &iv.upper[n.min(last)]);
        let code = if below_threshold(a, b, k) {
            k += 1;
            0
        } else {
            match &prev {
                Some((c, q)) if a < q && q < b => *c,
                _ => {
                    let mid = a + (b - a) / BigRational::from_integer(BigInt::from(2));
                    let c = encode_rational(&mid)?;
                    prev = Some((c, mid));
                    c
                }
            }
        };
        out.push(code);
        if n >= last && code != 0 {
            let from = out.len() as u64 - 1;
            return Ok(Stream::new(out, Behavior::EventuallyConstant { value: code, from })?);
        }
        n += 1;
    }
}

/// `H`: code 0 yields the midpoint of the last interval, any other code its
/// rational.
pub fn ivt_decode(iv: &IntervalShrink, code: u64) -> Result<BigRational> {
    if code == 0 {
        let last = iv.stages() - 1;
        let (a, b) = (&iv.lower[last], &iv.upper[last]);
        return Ok(a + (b - a) / BigRational::from_integer(BigInt::from(2)));
    }
    decode_rational(code).ok_or_else(|| shape(format!("{code} codes no rational")))
}

/// `B_I ≤W CL_ℕ` on nested rational intervals.
pub struct IvtToCluster;

impl Reduction for IvtToCluster {
    fn info(&self) -> ReductionInfo {
        ReductionInfo { name: "prop5.9-ivt", source: "B_I", target: "CL_N", strength: Strength::Weak, anchor: "Proposition 5.9" }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Interval(iv) => Ok(Instance::Stream(ivt_to_cluster(iv)?)),
            _ => Err(shape("expected nested intervals")),
        }
    }

    fn backward(&self, original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        let Some(Instance::Interval(iv)) = original else {
            return Err(shape("the original intervals are required"));
        };
        match s {
            Solution::Natural(c) => Ok(Solution::Rational(ivt_decode(iv, *c)?)),
            _ => Err(shape("expected a natural number")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Interval(_) => Ok(Problem::Boundedness),
            _ => Err(shape("expected nested intervals")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn codes_round_trip() {
        for (p, d) in [(0, 1), (1, 2), (1, 3), (7, 16)] {
            let c = encode_rational(&q(p, d)).unwrap();
            assert!(c > 0);
            assert_eq!(decode_rational(c), Some(q(p, d)));
        }
        assert_eq!(decode_rational(0), None);
    }

    #[test]
    fn unit_interval_keeps_the_half() {
        let iv = IntervalShrink::new(vec![q(0, 1); 5], vec![q(1, 1); 5]).unwrap();
        let s = ivt_to_cluster(&iv).unwrap();
        let half = encode_rational(&q(1, 2)).unwrap();
        assert_eq!(s.prefix, vec![half; 5]);
        assert_eq!(s.cluster_points(), Some(vec![half]));
        assert_eq!(ivt_decode(&iv, half).unwrap(), q(1, 2));
    }

    #[test]
    fn dyadic_squeeze_on_a_third() {
        // a_n ↗ 1/3 and b_n ↘ 1/3 through dyadic bounds.
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for n in 1..=20u32 {
            let den = BigInt::one() << (n + 1);
            let a = BigRational::new(&den / 3, den.clone());
            let b = BigRational::new(&den / 3 + 1, den);
            lo.push(a);
            hi.push(b);
        }
        let iv = IntervalShrink::new(lo, hi).unwrap();
        let s = ivt_to_cluster(&iv).unwrap();
        assert!(s.prefix[..20].iter().filter(|&&c| c == 0).count() >= 10);
        let cp = s.cluster_points().unwrap();
        let x = ivt_decode(&iv, cp[0]).unwrap();
        assert!(iv.admits(&x));
        let third = q(1, 3);
        let err = if x > third { &x - &third } else { &third - &x };
        assert!(err * BigRational::from_integer(BigInt::one() << 20u32) < BigRational::one());
        assert!(iv.admits(&ivt_decode(&iv, 0).unwrap()));
    }
}
