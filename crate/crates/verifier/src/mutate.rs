use num_bigint::BigInt;
use num_rational::BigRational;
use wlab_problems::{HomSet, Solution};

/// A deliberately wrong copy of `s` for harness sanity checks.
///
/// Homogeneous sets repeat their second-to-last element in place of the
/// last and flip the colour; naturals flip their lowest bit; sets are
/// replaced by their complement below their maximum plus one; words bump
/// their last symbol; rationals move by 2; composites corrupt their first
/// component.
pub fn corrupt(s: &Solution) -> Solution {
    match s {
        Solution::HomSet(m) => {
            let mut e = m.elements.clone();
            match e.len() {
                0 => e.push(0),
                1 => e.push(e[0]),
                l => e[l - 1] = e[l - 2],
            }
            Solution::HomSet(HomSet::new(e, m.color ^ 1))
        }
        Solution::Natural(v) => Solution::Natural(v ^ 1),
        Solution::Set(xs) => {
            let top = xs.last().map_or(0, |m| m + 1);
            Solution::Set((0..=top).filter(|x| !xs.contains(x)).collect())
        }
        Solution::Word(w) => {
            let mut w = w.clone();
            match w.last_mut() {
                Some(x) => *x += 1,
                None => w.push(0),
            }
            Solution::Word(w)
        }
        Solution::Rational(x) => Solution::Rational(x + BigRational::from_integer(BigInt::from(2))),
        Solution::Pair(a, b) => Solution::Pair(Box::new(corrupt(a)), b.clone()),
        Solution::Tagged(side, x) => Solution::Tagged(*side, Box::new(corrupt(x))),
        Solution::Parallel(xs) => {
            let mut xs = xs.clone();
            if let Some(x) = xs.first_mut() {
                *x = corrupt(x);
            }
            Solution::Parallel(xs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corruption_changes_every_shape() {
        let cases = vec![
            Solution::HomSet(HomSet::new(vec![1, 4, 6], 0)),
            Solution::Natural(3),
            Solution::Set(vec![0, 2]),
            Solution::Word(vec![1, 1]),
            Solution::Rational(BigRational::new(1.into(), 3.into())),
            Solution::Pair(Box::new(Solution::Natural(0)), Box::new(Solution::Natural(0))),
            Solution::Parallel(vec![Solution::Natural(1)]),
        ];
        for s in cases {
            assert_ne!(corrupt(&s), s);
        }
        assert_eq!(corrupt(&Solution::Set(vec![0, 2])), Solution::Set(vec![1, 3]));
    }
}
