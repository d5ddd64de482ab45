use wlab_encodings::{tuple, untuple};
use wlab_problems::{Colors, Coloring, StableAnnotation};

use crate::{RamseyError, Result};

/// Combine `cs` into one colouring whose homogeneous sets are homogeneous for
/// every component.
///
/// Finite case (all `k` colours): `α(v_1..v_m) = Σ v_i·k^{m-i}` (first colouring
/// most significant), `k^m` colours. Unbounded case: right-nested Cantor
/// tupling. Stability annotations are mapped through `α` when every component
/// carries one; the horizon is the largest component horizon.
pub fn build_product_coloring(cs: &[Coloring]) -> Result<Coloring> {
    let first = cs.first().ok_or_else(|| RamseyError::Invalid("empty colouring list".into()))?;
    let (n, w) = (first.arity(), first.window());
    if cs.iter().any(|c| c.arity() != n || c.window() != w) {
        return Err(RamseyError::Invalid("colourings differ in arity or window".into()));
    }
    let colors = product_colors(cs)?;
    let alpha = |vals: &[u32]| -> u32 { encode(colors_of(cs), vals) };
    let mut vals = vec![0u32; cs.len()];
    let out = Coloring::from_fn(n, colors, w, |s| {
        for (v, c) in vals.iter_mut().zip(cs) {
            *v = c.color_of(s);
        }
        alpha(&vals)
    })?;
    let annotations: Option<Vec<&StableAnnotation>> = cs.iter().map(|c| c.annotation()).collect();
    match annotations {
        Some(anns) if n >= 1 => {
            let limits: Vec<Coloring> = anns.iter().map(|a| (*a.limit).clone()).collect();
            let limit = build_product_coloring(&limits)?;
            let horizon = anns.iter().map(|a| a.horizon).max().unwrap_or(0);
            Ok(out.with_annotation(StableAnnotation { limit: Box::new(limit), horizon })?)
        }
        _ => Ok(out),
    }
}

/// Digits of a product colour, in the order of the component list.
pub fn product_digits(components: &[Coloring], value: u32) -> Vec<u32> {
    decode(colors_of(components), value, components.len())
}

fn colors_of(cs: &[Coloring]) -> Colors {
    cs[0].colors()
}

fn product_colors(cs: &[Coloring]) -> Result<Colors> {
    let c0 = cs[0].colors();
    match c0 {
        Colors::Finite(k) => {
            if cs.iter().any(|c| c.colors() != c0) {
                return Err(RamseyError::Invalid("finite colourings must share k".into()));
            }
            let total = (k as u64).checked_pow(cs.len() as u32).filter(|&t| t <= u32::MAX as u64);
            total.map(|t| Colors::Finite(t as u32)).ok_or(RamseyError::Overflow)
        }
        Colors::Unbounded { .. } => {
            let mut bounds = Vec::with_capacity(cs.len());
            for c in cs {
                match c.colors() {
                    Colors::Unbounded { unbounded } => bounds.push(unbounded as u64),
                    Colors::Finite(_) => {
                        return Err(RamseyError::Invalid("cannot mix finite and unbounded colourings".into()))
                    }
                }
            }
            let b = tuple(&bounds).map_err(|_| RamseyError::Overflow)?;
            u32::try_from(b).map(Colors::unbounded).map_err(|_| RamseyError::Overflow)
        }
    }
}

fn encode(colors: Colors, vals: &[u32]) -> u32 {
    match colors {
        Colors::Finite(k) => vals.iter().fold(0u32, |acc, &v| acc * k + v),
        Colors::Unbounded { .. } => {
            let v: Vec<u64> = vals.iter().map(|&x| x as u64).collect();
            tuple(&v).expect("bounded by the tupled colour bound") as u32
        }
    }
}

fn decode(colors: Colors, value: u32, m: usize) -> Vec<u32> {
    match colors {
        Colors::Finite(k) => {
            let mut out = vec![0u32; m];
            let mut v = value;
            for d in out.iter_mut().rev() {
                *d = v % k;
                v /= k;
            }
            out
        }
        Colors::Unbounded { .. } => {
            untuple(value as u64, m).expect("m ≥ 1").into_iter().map(|x| x as u32).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_component_is_identity() {
        let c = Coloring::from_fn(2, Colors::Finite(3), 7, |s| ((s[0] * s[1]) % 3) as u32).unwrap();
        assert_eq!(build_product_coloring(&[c.clone()]).unwrap(), c);
        let u = Coloring::from_fn(2, Colors::unbounded(9), 7, |s| (s[1] % 10) as u32).unwrap();
        assert_eq!(build_product_coloring(&[u.clone()]).unwrap(), u);
    }

    #[test]
    fn digit_order() {
        let c1 = Coloring::constant(2, Colors::Finite(2), 6, 0).unwrap();
        let c2 = Coloring::constant(2, Colors::Finite(2), 6, 1).unwrap();
        let p = build_product_coloring(&[c1.clone(), c2.clone()]).unwrap();
        assert_eq!(p.colors(), Colors::Finite(4));
        assert!(p.table().iter().all(|&v| v == 1));
        assert_eq!(product_digits(&[c1, c2], 1), vec![0, 1]);
    }

    #[test]
    fn unbounded_uses_tupling() {
        let c1 = Coloring::constant(1, Colors::unbounded(3), 5, 1).unwrap();
        let c2 = Coloring::constant(1, Colors::unbounded(3), 5, 2).unwrap();
        let p = build_product_coloring(&[c1.clone(), c2.clone()]).unwrap();
        assert_eq!(p.color(&[0]).unwrap(), 8);
        assert_eq!(product_digits(&[c1, c2], 8), vec![1, 2]);
    }

    #[test]
    fn stability_preserved() {
        let w = 10;
        let mk = |f: fn(u64) -> u32| {
            let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| f(s[0])).unwrap();
            Coloring::from_fn(2, Colors::Finite(2), w, |s| if s[1] >= 3 { f(s[0]) } else { (s[1] % 2) as u32 })
                .unwrap()
                .with_annotation(StableAnnotation { limit: Box::new(lim), horizon: 3 })
                .unwrap()
        };
        let p = build_product_coloring(&[mk(|a| (a % 2) as u32), mk(|a| (a < 4) as u32)]).unwrap();
        let ann = p.annotation().unwrap();
        assert_eq!(ann.horizon, 3);
        assert_eq!(ann.limit.color(&[1]).unwrap(), 0b11);
        assert_eq!(ann.limit.color(&[6]).unwrap(), 0b00);
    }

    #[test]
    fn mismatches_rejected() {
        let a = Coloring::constant(2, Colors::Finite(2), 6, 0).unwrap();
        let b = Coloring::constant(2, Colors::Finite(2), 7, 0).unwrap();
        let c = Coloring::constant(2, Colors::Finite(3), 6, 0).unwrap();
        assert!(build_product_coloring(&[a.clone(), b]).is_err());
        assert!(build_product_coloring(&[a, c]).is_err());
    }
}
