use rayon::prelude::*;
use wlab_encodings::binomial;
use wlab_problems::{Coloring, HomSet};

use crate::{RamseyError, Result};

/// Resource limits for a search.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    /// Maximum number of DFS nodes visited.
    pub max_nodes: Option<u64>,
}

/// Parameters of a homogeneous-set search.
#[derive(Debug, Clone, Copy)]
pub struct HomSearch {
    pub size: usize,
    /// Only accept this colour.
    pub color: Option<u32>,
    /// Smallest admissible element.
    pub min_element: u64,
    pub limits: SearchLimits,
}

impl HomSearch {
    pub fn new(size: usize) -> Self {
        Self { size, color: None, min_element: 0, limits: SearchLimits::default() }
    }
}

struct Dfs<'a> {
    c: &'a Coloring,
    size: usize,
    want: Option<u32>,
    stack: Vec<u64>,
    color: Option<u32>,
    nodes: u64,
    max_nodes: Option<u64>,
    buf: Vec<u64>,
    idx: Vec<usize>,
}

impl<'a> Dfs<'a> {
    fn new(c: &'a Coloring, q: &HomSearch) -> Self {
        Self {
            c,
            size: q.size,
            want: q.color,
            stack: Vec::with_capacity(q.size),
            color: None,
            nodes: 0,
            max_nodes: q.limits.max_nodes,
            buf: vec![0; c.arity()],
            idx: Vec::with_capacity(c.arity()),
        }
    }

    /// Colour that pushing `x` forces, or `None` if `x` breaks homogeneity.
    /// `Some(None)` means no complete n-subset exists yet.
    fn admissible(&mut self, x: u64) -> Option<Option<u32>> {
        let n = self.c.arity();
        let m = self.stack.len();
        if n == 0 {
            return Some(Some(self.c.color_of(&[])));
        }
        if m + 1 < n {
            return Some(self.color);
        }
        // Every (n-1)-subset of the stack, completed by x.
        let k = n - 1;
        self.idx.clear();
        self.idx.extend(0..k);
        let mut color = self.color;
        loop {
            for (j, &i) in self.idx.iter().enumerate() {
                self.buf[j] = self.stack[i];
            }
            self.buf[k] = x;
            let v = self.c.color_of(&self.buf);
            match color {
                None => {
                    if self.want.map_or(false, |w| w != v) {
                        return None;
                    }
                    color = Some(v);
                }
                Some(cv) if cv != v => return None,
                _ => {}
            }
            // Next k-combination of 0..m.
            let mut i = k;
            loop {
                if i == 0 {
                    return Some(color);
                }
                i -= 1;
                if self.idx[i] < m - (k - i) {
                    self.idx[i] += 1;
                    for j in i + 1..k {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.max_nodes {
            Some(b) if self.nodes > b => Err(RamseyError::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    /// Visit homogeneous sets of the target size in lexicographic order;
    /// `visit` returns `false` to stop.
    fn run(&mut self, from: u64, visit: &mut dyn FnMut(&[u64], u32) -> bool) -> Result<bool> {
        let w = self.c.window();
        if self.stack.len() == self.size {
            let col = self.color.unwrap_or(0);
            return Ok(visit(&self.stack, col));
        }
        let need = (self.size - self.stack.len()) as u64;
        let mut x = from;
        while x + need <= w {
            self.tick()?;
            if let Some(col) = self.admissible(x) {
                let saved = self.color;
                self.color = col;
                self.stack.push(x);
                let go_on = self.run(x + 1, visit)?;
                self.stack.pop();
                self.color = saved;
                if !go_on {
                    return Ok(false);
                }
            }
            x += 1;
        }
        Ok(true)
    }
}

fn check_size(c: &Coloring, size: usize) -> Result<()> {
    if size < c.arity() || size == 0 {
        return Err(RamseyError::SizeBelowArity { size, arity: c.arity() });
    }
    Ok(())
}

/// General search entry point: the lexicographically least solution.
pub fn solve_with(c: &Coloring, q: &HomSearch) -> Result<HomSet> {
    check_size(c, q.size)?;
    let mut dfs = Dfs::new(c, q);
    let mut found = None;
    dfs.run(q.min_element, &mut |s, col| {
        found = Some(HomSet::new(s.to_vec(), col));
        false
    })?;
    found.ok_or(RamseyError::NoneExists { size: q.size, window: c.window() })
}

/// The lexicographically least homogeneous set of exactly `size` elements.
///
/// For `size == arity` with `arity == 0` sets the colour is that of `∅`.
pub fn solve_homogeneous(c: &Coloring, size: usize) -> Result<HomSet> {
    solve_with(c, &HomSearch::new(size))
}

/// Same answer as [`solve_homogeneous`], searching first elements in parallel.
pub fn solve_homogeneous_parallel(c: &Coloring, size: usize) -> Result<HomSet> {
    check_size(c, size)?;
    let w = c.window();
    let firsts: Vec<u64> = (0..w.saturating_sub(size as u64 - 1)).collect();
    let best = firsts
        .par_iter()
        .filter_map(|&f| {
            let mut dfs = Dfs::new(c, &HomSearch::new(size));
            if dfs.admissible(f).is_none() {
                return None;
            }
            dfs.color = dfs.admissible(f).unwrap();
            dfs.stack.push(f);
            let mut found = None;
            dfs.run(f + 1, &mut |s, col| {
                found = Some(HomSet::new(s.to_vec(), col));
                false
            })
            .ok()?;
            found
        })
        .min_by(|a, b| a.elements.cmp(&b.elements));
    best.ok_or(RamseyError::NoneExists { size, window: w })
}

/// Every homogeneous set of exactly `size` elements, lexicographically.
///
/// Refuses when `C(window, size)` exceeds `budget`.
pub fn all_homogeneous(c: &Coloring, size: usize, budget: u64) -> Result<Vec<HomSet>> {
    check_size(c, size)?;
    let total = binomial(c.window(), size as u64).unwrap_or(u64::MAX);
    if total > budget {
        return Err(RamseyError::BudgetExceeded { budget });
    }
    let mut dfs = Dfs::new(c, &HomSearch::new(size));
    let mut out = Vec::new();
    dfs.run(0, &mut |s, col| {
        out.push(HomSet::new(s.to_vec(), col));
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_encodings::Subsets;
    use wlab_problems::{homogeneous_color, Colors};

    fn pentagon() -> Coloring {
        Coloring::from_fn(2, Colors::Finite(2), 5, |s| {
            let d = s[1] - s[0];
            if d == 1 || d == 4 { 0 } else { 1 }
        })
        .unwrap()
    }

    /// Oracle: filter all subsets in lex order.
    fn naive(c: &Coloring, size: usize) -> Vec<HomSet> {
        Subsets::new(c.window(), size)
            .filter_map(|s| homogeneous_color(c, &s).map(|col| HomSet::new(s, col)))
            .collect()
    }

    #[test]
    fn constant_coloring() {
        let c = Coloring::constant(2, Colors::Finite(2), 10, 0).unwrap();
        assert_eq!(solve_homogeneous(&c, 5).unwrap(), HomSet::new(vec![0, 1, 2, 3, 4], 0));
        let c4 = Coloring::constant(2, Colors::Finite(2), 4, 0).unwrap();
        assert_eq!(all_homogeneous(&c4, 3, 100).unwrap().len(), 4);
    }

    #[test]
    fn parity_of_max_matches_oracle() {
        let c = Coloring::from_fn(2, Colors::Finite(2), 12, |s| (s[1] % 2) as u32).unwrap();
        let oracle = naive(&c, 4);
        let got = solve_homogeneous(&c, 4).unwrap();
        assert_eq!(got, oracle[0]);
        assert_eq!(got, HomSet::new(vec![0, 1, 3, 5], 1));
        assert_eq!(all_homogeneous(&c, 4, 10_000).unwrap(), oracle);
        assert_eq!(solve_homogeneous_parallel(&c, 4).unwrap(), got);
    }

    #[test]
    fn pentagon_has_no_triangle() {
        let p = pentagon();
        assert_eq!(naive(&p, 3), vec![]);
        assert_eq!(solve_homogeneous(&p, 3), Err(RamseyError::NoneExists { size: 3, window: 5 }));
        assert_eq!(all_homogeneous(&p, 3, 100).unwrap(), vec![]);
    }

    #[test]
    fn budget_guard() {
        let c = Coloring::constant(2, Colors::Finite(2), 30, 0).unwrap();
        assert_eq!(all_homogeneous(&c, 15, 10), Err(RamseyError::BudgetExceeded { budget: 10 }));
        let q = HomSearch { limits: SearchLimits { max_nodes: Some(3) }, ..HomSearch::new(10) };
        assert_eq!(solve_with(&c, &q), Err(RamseyError::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn fixed_color_and_arity_three() {
        let c = Coloring::from_fn(3, Colors::Finite(2), 9, |s| ((s[0] + s[1] + s[2]) % 2) as u32).unwrap();
        for size in 3..=5 {
            let oracle = naive(&c, size);
            assert_eq!(all_homogeneous(&c, size, 1 << 20).unwrap(), oracle);
            if let Some(first) = oracle.first() {
                assert_eq!(&solve_homogeneous(&c, size).unwrap(), first);
            }
        }
        let q = HomSearch { color: Some(1), ..HomSearch::new(3) };
        let s = solve_with(&c, &q).unwrap();
        assert_eq!(s.color, 1);
        assert_eq!(s.elements, vec![0, 1, 2]);
    }

    #[test]
    fn arity_one() {
        let c = Coloring::from_fn(1, Colors::Finite(3), 10, |s| (s[0] % 3) as u32).unwrap();
        assert_eq!(solve_homogeneous(&c, 3).unwrap(), HomSet::new(vec![0, 3, 6], 0));
    }
}
