use std::collections::{BTreeMap, BTreeSet};

use wlab_encodings::{pair, unpair, Stream};
use wlab_problems::{Alphabet, Instance, Problem, Solution, TreeInstance, TreeMode};

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// `x_n := w_n 0̂`, materialised to the tree depth.
pub fn enum_tree_to_sequence(t: &TreeInstance) -> Vec<Stream> {
    t.words.iter().map(|w| Stream::with_constant_tail(w, 0, t.depth.max(w.len()))).collect()
}

/// Enumerate a tree whose paths are the cluster points of `xs`.
///
/// The root is present from the start. Stage `n` finds the longest prefix
/// `w` of `x_n` enumerated so far and enumerates `x_n|(|w|+1)`, capped at
/// `depth`. `bounds[i]` bounds every `x_n(i)`; the bounds stand for the
/// compactness annotation and are required. Returns the tree and the number
/// of stages run (one per inspected term).
pub fn sequence_to_cluster_tree(
    xs: &[Stream],
    bounds: Option<&[u64]>,
    depth: usize,
) -> Result<(TreeInstance, usize)> {
    let bounds = bounds.ok_or_else(|| ConstructionError::MissingAnnotation("componentwise bounds".into()))?;
    if bounds.len() < depth {
        return Err(ConstructionError::MissingAnnotation(format!("bounds for {depth} positions")));
    }
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([Vec::new()]);
    let mut words = Vec::with_capacity(xs.len());
    for (n, x) in xs.iter().enumerate() {
        let mut prefix = Vec::with_capacity(depth);
        for i in 0..depth as u64 {
            let v = x.value_at(i).ok_or(ConstructionError::Encoding(
                wlab_encodings::EncodingError::InsufficientPrefix { stream: n, needed: i },
            ))?;
            if v > bounds[i as usize] {
                return Err(shape(format!("x_{n}({i}) = {v} exceeds the bound {}", bounds[i as usize])));
            }
            prefix.push(v);
        }
        let known = (0..=depth).rev().find(|&l| seen.contains(&prefix[..l])).unwrap_or(0);
        let next = prefix[..(known + 1).min(depth)].to_vec();
        seen.insert(next.clone());
        words.push(next);
    }
    Ok((TreeInstance::enumeration(words, depth), xs.len()))
}

/// A pair-coded tree together with the stage bookkeeping of its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTree {
    pub tree: TreeInstance,
    /// Stage at which each word of `S` was decided in.
    pub added: BTreeMap<Vec<u64>, usize>,
}

/// Stage-`n` rejection test: `u` was decided out before stage `n` iff it was
/// eligible at some stage `s < n` (`|u| ≤ s`, all symbols `≤ s`) without
/// having been decided in by that stage.
fn rejected_before(added: &BTreeMap<Vec<u64>, usize>, u: &[u64], n: usize) -> bool {
    if u.is_empty() {
        return false;
    }
    let s = u.len().max(u.iter().copied().max().unwrap_or(0) as usize);
    if s >= n {
        return false;
    }
    !matches!(added.get(u), Some(&stage) if stage <= s)
}

/// Decide a finitely branching tree `S` with `pr₁([S]) = [T]` from an
/// enumeration of `T`.
///
/// At stage `n` the word `u_{w,v} = ⟨w(0),v(0)⟩…⟨w(k-1),v(k-1)⟩` for
/// `w = w_n` and all its prefixes are decided in, with `v` the least word
/// none of whose prefixes is already decided out.
pub fn kl_plus_to_kl(t: &TreeInstance) -> Result<PairTree> {
    if t.mode != TreeMode::Enumeration {
        return Err(shape("expected an enumerated tree"));
    }
    let mut added: BTreeMap<Vec<u64>, usize> = BTreeMap::from([(Vec::new(), 0)]);
    for (n, w) in t.words.iter().enumerate() {
        let mut u: Vec<u64> = Vec::with_capacity(w.len());
        for &a in w {
            let mut v = 0u64;
            loop {
                u.push(pair(a, v)?);
                if !rejected_before(&added, &u, n) {
                    break;
                }
                u.pop();
                v += 1;
            }
        }
        for l in 0..=u.len() {
            added.entry(u[..l].to_vec()).or_insert(n);
        }
    }
    let words: Vec<Vec<u64>> = added.keys().cloned().collect();
    let tree = TreeInstance { mode: TreeMode::CharacteristicFunction, alphabet: Alphabet::Naturals, words, depth: t.depth };
    Ok(PairTree { tree, added })
}

/// `pr₁`: first components of a pair-coded word.
pub fn project_first(u: &[u64]) -> Vec<u64> {
    u.iter().map(|&x| unpair(x).0).collect()
}

/// `KL₊ ≤sW KL`: `H` is `pr₁`.
pub struct KlPlusToKl;

impl Reduction for KlPlusToKl {
    fn info(&self) -> ReductionInfo {
        ReductionInfo { name: "thm5.6-kl-plus", source: "KL_+", target: "KL", strength: Strength::Strong, anchor: "Theorem 5.6" }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Tree(t) => Ok(Instance::Tree(kl_plus_to_kl(t)?.tree)),
            _ => Err(shape("expected an enumerated tree")),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::Word(u) => Ok(Solution::Word(project_first(u))),
            _ => Err(shape("expected a word")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Tree(_) => Ok(Problem::KlPlus),
            _ => Err(shape("expected an enumerated tree")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_rule() {
        let t = TreeInstance::enumeration(vec![vec![], vec![5], vec![5, 7]], 4);
        let xs = enum_tree_to_sequence(&t);
        assert_eq!(xs[0].prefix, vec![0, 0, 0, 0]);
        assert_eq!(xs[2].prefix, vec![5, 7, 0, 0]);
        assert_eq!(xs[2].limit(), Some(0));
    }

    #[test]
    fn constant_sequence_enumerates_prefixes() {
        let x = Stream::constant(3, 4);
        let xs = vec![x; 6];
        let (t, stages) = sequence_to_cluster_tree(&xs, Some(&[5; 4]), 4).unwrap();
        assert_eq!(stages, 6);
        assert_eq!(t.words, vec![vec![3], vec![3, 3], vec![3, 3, 3], vec![3, 3, 3, 3], vec![3, 3, 3, 3], vec![3, 3, 3, 3]]);
        assert!(sequence_to_cluster_tree(&[Stream::constant(3, 4)], None, 4).is_err());
    }

    #[test]
    fn alternating_points_interleave() {
        let a = Stream::constant(0, 3);
        let b = Stream::constant(1, 3);
        let xs: Vec<Stream> = (0..6).map(|i| if i % 2 == 0 { a.clone() } else { b.clone() }).collect();
        let (t, _) = sequence_to_cluster_tree(&xs, Some(&[1; 3]), 3).unwrap();
        assert_eq!(t.words, vec![vec![0], vec![1], vec![0, 0], vec![1, 1], vec![0, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn pair_tree_projects_onto_the_input() {
        let t = TreeInstance::enumeration(vec![vec![], vec![5], vec![5, 7]], 2);
        let s = kl_plus_to_kl(&t).unwrap();
        let deep: Vec<Vec<u64>> = s.tree.words.iter().filter(|u| u.len() == 2).cloned().collect();
        assert_eq!(deep.len(), 1);
        assert_eq!(project_first(&deep[0]), vec![5, 7]);
        s.tree.validate().unwrap();
    }

    #[test]
    fn late_small_words_get_fresh_witnesses() {
        let mut words: Vec<Vec<u64>> = (0..6).map(|i| vec![9, i]).collect();
        words.push(vec![0]);
        words.push(vec![0, 1]);
        let t = TreeInstance::enumeration(words, 2);
        let s = kl_plus_to_kl(&t).unwrap();
        let level1: Vec<&Vec<u64>> = s.tree.words.iter().filter(|u| u.len() == 1).collect();
        let firsts: BTreeSet<u64> = level1.iter().map(|u| unpair(u[0]).0).collect();
        // One witness per first component.
        assert_eq!(firsts.len(), level1.len());
        let u0 = level1.iter().find(|u| unpair(u[0]).0 == 0).unwrap();
        assert!(u0[0] >= 6, "a witness decided before stage 6 would have been rejected");
    }

    #[test]
    fn only_root_when_nothing_enumerated() {
        let t = TreeInstance::enumeration(vec![vec![]], 3);
        let s = kl_plus_to_kl(&t).unwrap();
        assert_eq!(s.tree.words, vec![Vec::<u64>::new()]);
    }
}
