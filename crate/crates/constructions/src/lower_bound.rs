use wlab_encodings::{tuple, untuple, Stream};
use wlab_problems::{Colors, Coloring, HomSet, Instance, Problem, ProblemError, Solution};

use crate::chain::build_chain;
use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// Largest prefix materialised for an interleaved array.
const MAX_ARRAY: u64 = 5_000_000;

/// Value of a nested approximation structure at `p⟨outer…, i_0⟩`.
///
/// `x` is a `Jump` nested `outer.len()` times around a stream; `outer[0]`
/// indexes the outermost approximation sequence. Indices past the listed
/// approximations read the limit.
pub fn nested_value(x: &Instance, outer: &[u64], i0: u64) -> Result<u64> {
    match (x, outer.split_first()) {
        (Instance::Stream(s), None) => s
            .value_at(i0)
            .ok_or(ConstructionError::Encoding(wlab_encodings::EncodingError::InsufficientPrefix {
                stream: 0,
                needed: i0,
            })),
        (Instance::Jump(j), Some((&i, rest))) => {
            let a = j.approximations.get(i as usize).unwrap_or(&j.limit);
            nested_value(a, rest, i0)
        }
        _ => Err(shape("expected approximations nested around a stream")),
    }
}

/// Nesting depth of jumps around the innermost stream, and that stream.
fn spine(x: &Instance) -> Result<(usize, &Stream)> {
    match x {
        Instance::Stream(s) => Ok((0, s)),
        Instance::Jump(j) => spine(&j.limit).map(|(d, s)| (d + 1, s)),
        _ => Err(shape("expected approximations nested around a stream")),
    }
}

/// Materialise `p` with `p⟨i_{n-1},…,i_0⟩` read from the nested structure, for
/// every code up to that of the largest decreasing tuple in the window.
/// Codes that are not decreasing tuples inside the window hold 0 when the
/// structure leaves them undetermined.
pub fn interleave_array(x: &Instance, n: usize, window: u64) -> Result<Stream> {
    if n == 0 || window < n as u64 {
        return Err(shape("need n ≥ 1 and a window of at least n"));
    }
    let top: Vec<u64> = (0..n as u64).map(|t| window - 1 - t).collect();
    let len = tuple(&top)? + 1;
    if len > MAX_ARRAY {
        return Err(ConstructionError::Overflow(format!("interleaved array of {len} entries")));
    }
    let mut prefix = Vec::with_capacity(len as usize);
    for code in 0..len {
        let t = untuple(code, n)?;
        let relevant = t.windows(2).all(|w| w[0] > w[1]) && t[0] < window;
        match nested_value(x, &t[..n - 1], t[n - 1]) {
            Ok(v) => prefix.push(v),
            Err(e) if relevant => return Err(e),
            Err(_) => prefix.push(0),
        }
    }
    Ok(Stream::unknown(prefix))
}

/// `c{i_0<…<i_{n-1}} := p⟨i_{n-1},…,i_1,i_0⟩`, a 2-colouring.
pub fn lower_bound_coloring(p: &Stream, n: usize, window: u64) -> Result<Coloring> {
    let mut failure: Option<ConstructionError> = None;
    let mut rev = vec![0u64; n];
    let c = Coloring::from_fn(n, Colors::Finite(2), window, |s| {
        for (r, v) in rev.iter_mut().zip(s.iter().rev()) {
            *r = *v;
        }
        let got = tuple(&rev).map_err(ConstructionError::from).and_then(|code| {
            p.get(code).ok_or(ConstructionError::Encoding(wlab_encodings::EncodingError::InsufficientPrefix {
                stream: 0,
                needed: code,
            }))
        });
        match got {
            Ok(v) if v < 2 => v as u32,
            Ok(v) => {
                failure.get_or_insert(ProblemError::BadColor { value: v as u32, colors: 2 }.into());
                0
            }
            Err(e) => {
                failure.get_or_insert(e);
                0
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(c),
    }
}

/// `BWT_2^{(n-1)} ≤sW CSRT_{n,2}` through the lower-bound colouring.
///
/// The source instance is `p` as `n-1` nested approximation sequences around
/// the stream `q`; the produced colouring carries the limit chain read off
/// the source, so its annotation is checked against the table.
pub struct LowerBound;

impl Reduction for LowerBound {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "thm3.2-lower-bound",
            source: "BWT_2^(n-1)",
            target: "CSRT_{n,2}",
            strength: Strength::Strong,
            anchor: "Theorem 3.2",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        let (depth, q) = spine(x)?;
        let n = depth + 1;
        let window = q.prefix.len() as u64;
        let p = interleave_array(x, n, window)?;
        let base = lower_bound_coloring(&p, n, window)?;
        let mut levels: Vec<&Instance> = vec![x];
        for _ in 1..n {
            match levels.last().copied() {
                Some(Instance::Jump(j)) => levels.push(&j.limit),
                _ => return Err(shape("expected nested approximations")),
            }
        }
        let mut horizon = 0u64;
        for l in &levels {
            if let Instance::Jump(j) = l {
                horizon = horizon.max(j.stable_from as u64);
            }
        }
        let bottom = q.limit();
        if bottom.is_some() {
            if let wlab_encodings::Behavior::EventuallyConstant { from, .. }
            | wlab_encodings::Behavior::EventuallyPeriodic { from, .. } = &q.behavior
            {
                horizon = horizon.max(*from);
            }
        }
        let depth = if bottom.is_some() { n } else { n - 1 };
        let mut failure: Option<ConstructionError> = None;
        let mut outer = Vec::with_capacity(n);
        let c = build_chain(n, Colors::Finite(2), window, depth, horizon, |s, j| {
            if j == 0 {
                return base.color_of(s);
            }
            if j == n {
                return bottom.unwrap_or(0) as u32;
            }
            outer.clear();
            outer.extend(s[1..].iter().rev());
            match nested_value(levels[j], &outer, s[0]) {
                Ok(v) => v as u32,
                Err(e) => {
                    failure.get_or_insert(e);
                    0
                }
            }
        })?;
        match failure {
            Some(e) => Err(e),
            None => Ok(Instance::Coloring(c)),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::HomSet(HomSet { color, .. }) => Ok(Solution::Natural(*color as u64)),
            _ => Err(shape("expected a homogeneous set")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        let (depth, _) = spine(x)?;
        let mut p = Problem::Bwt { k: 2 };
        for _ in 0..depth {
            p = Problem::Jump(Box::new(p));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_encodings::Behavior;
    use wlab_problems::{check, JumpInstance};

    /// `n = 2`: approximations `q_{i_1}(i_0) = f(i_1, i_0)` converging to `q`.
    fn two_level(window: u64, stable_from: usize, f: impl Fn(u64, u64) -> u64, q: Stream) -> Instance {
        let approximations = (0..window)
            .map(|i1| {
                if i1 as usize >= stable_from {
                    Instance::Stream(q.clone())
                } else {
                    Instance::Stream(Stream::unknown((0..window).map(|i0| f(i1, i0)).collect()))
                }
            })
            .collect();
        Instance::Jump(Box::new(JumpInstance { approximations, limit: Box::new(Instance::Stream(q)), stable_from }))
    }

    #[test]
    fn constant_input() {
        let w = 8;
        let x = two_level(w, 0, |_, _| 1, Stream::constant(1, w as usize));
        let Instance::Coloring(c) = LowerBound.forward(&x).unwrap() else { panic!() };
        assert!(c.table().iter().all(|&v| v == 1));
        let h = LowerBound.backward(None, &Solution::HomSet(HomSet::new(vec![0, 1, 2], 1))).unwrap();
        assert_eq!(h, Solution::Natural(1));
        let prob = LowerBound.source_problem(&x).unwrap();
        assert!(check(&prob, &x, &h).unwrap().is_accept());
    }

    #[test]
    fn indicator_of_order() {
        // p⟨i1,i0⟩ = 1 iff i1 ≥ i0: every pair is coloured 1 and q ≡ 1.
        let w = 10u64;
        let f = |i1: u64, i0: u64| (i1 >= i0) as u64;
        let p = Stream::unknown((0..200).map(|code| {
            let t = untuple(code, 2).unwrap();
            f(t[0], t[1])
        }).collect());
        let c = lower_bound_coloring(&p, 2, w).unwrap();
        assert!(c.table().iter().all(|&v| v == 1));
        // The nested form agrees with the direct stream.
        let x = two_level(w, w as usize, f, Stream::constant(1, w as usize));
        let q = interleave_array(&x, 2, w).unwrap();
        let len = q.prefix.len();
        assert_eq!(q.prefix[..len], p.prefix[..len]);
    }

    #[test]
    fn nonconvergent_limit_accepts_both_colours() {
        let w = 8;
        let q = Stream::new((0..w).map(|i| i % 2).collect(), Behavior::EventuallyPeriodic { period: vec![0, 1], from: 0 })
            .unwrap();
        let x = two_level(w, 3, |i1, i0| (i1 + i0) % 2, q);
        let Instance::Coloring(c) = LowerBound.forward(&x).unwrap() else { panic!() };
        assert_eq!(crate::chain::chain_depth(&c), 1);
        let prob = LowerBound.source_problem(&x).unwrap();
        for v in 0..2 {
            assert!(check(&prob, &x, &Solution::Natural(v)).unwrap().is_accept());
        }
    }

    #[test]
    fn tuple_order_matters() {
        // c{i0<i1} must read p⟨i1,i0⟩, not p⟨i0,i1⟩.
        let p = Stream::unknown((0..100).map(|code| {
            let t = untuple(code, 2).unwrap();
            (t[0] > t[1]) as u64
        }).collect());
        let c = lower_bound_coloring(&p, 2, 6).unwrap();
        assert!(c.table().iter().all(|&v| v == 1));
    }

    #[test]
    fn short_prefix_is_an_error() {
        let p = Stream::unknown(vec![0; 5]);
        assert!(matches!(
            lower_bound_coloring(&p, 2, 6),
            Err(ConstructionError::Encoding(wlab_encodings::EncodingError::InsufficientPrefix { .. }))
        ));
    }
}
