use serde::{Deserialize, Serialize};
use wlab_encodings::{binomial, colex_rank, colex_unrank, is_strictly_increasing, theta_decode, theta_encode, Subsets};

use crate::{ProblemError, Result};

/// Colour range of a colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Colors {
    /// Colours `0..k`.
    Finite(u32),
    /// Colours in `ℕ`; `bound` is file-format metadata (all entries are `≤ bound`).
    Unbounded { unbounded: u32 },
}

impl Colors {
    pub fn unbounded(bound: u32) -> Self {
        Colors::Unbounded { unbounded: bound }
    }

    /// Number of colour values the table may use.
    pub fn count(&self) -> u32 {
        match *self {
            Colors::Finite(k) => k,
            Colors::Unbounded { unbounded } => unbounded + 1,
        }
    }

    pub fn admits(&self, v: u32) -> bool {
        v < self.count()
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Colors::Unbounded { .. })
    }
}

/// Ground-truth limit structure of a stable colouring.
///
/// `limit` has arity `n-1` and gives `lim_i c(A∪{i})`; for every `i ≥ horizon`
/// with `i > max A` the table already agrees with the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableAnnotation {
    pub limit: Box<Coloring>,
    pub horizon: u64,
}

/// An arity-`n` colouring of `[{0..W-1}]^n`.
///
/// The table is stored in colexicographic order for constant-time lookup; the
/// JSON form lists entries in increasing `ϑ_n` rank. Arity 0 is allowed only
/// as the limit of a stable arity-1 colouring (a single entry).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringFile", into = "ColoringFile")]
pub struct Coloring {
    arity: usize,
    colors: Colors,
    window: u64,
    table: Vec<u32>,
    annotation: Option<StableAnnotation>,
}

impl Coloring {
    /// Tabulate `f` over all `arity`-subsets of the window.
    pub fn from_fn(arity: usize, colors: Colors, window: u64, mut f: impl FnMut(&[u64]) -> u32) -> Result<Self> {
        let size = table_len(window, arity)?;
        let mut table = vec![0u32; size];
        for s in Subsets::new(window, arity) {
            let v = f(&s);
            if !colors.admits(v) {
                return Err(ProblemError::BadColor { value: v, colors: colors.count() });
            }
            table[colex_rank(&s) as usize] = v;
        }
        Ok(Self { arity, colors, window, table, annotation: None })
    }

    /// The constant colouring.
    pub fn constant(arity: usize, colors: Colors, window: u64, value: u32) -> Result<Self> {
        Self::from_fn(arity, colors, window, |_| value)
    }

    /// Build from a table listed in increasing `ϑ_n` rank order.
    pub fn from_theta_table(arity: usize, colors: Colors, window: u64, table: &[u32]) -> Result<Self> {
        let order = theta_order(window, arity)?;
        if order.len() != table.len() {
            return Err(ProblemError::TableLength { expected: order.len(), got: table.len() });
        }
        let mut dense = vec![0u32; table.len()];
        for (set, &v) in order.iter().zip(table) {
            if !colors.admits(v) {
                return Err(ProblemError::BadColor { value: v, colors: colors.count() });
            }
            dense[colex_rank(set) as usize] = v;
        }
        Ok(Self { arity, colors, window, table: dense, annotation: None })
    }

    /// Table entries in increasing `ϑ_n` rank order.
    pub fn theta_table(&self) -> Vec<u32> {
        theta_order(self.window, self.arity)
            .expect("window validated at construction")
            .iter()
            .map(|s| self.table[colex_rank(s) as usize])
            .collect()
    }

    pub fn with_annotation(mut self, annotation: StableAnnotation) -> Result<Self> {
        self.annotation = Some(annotation);
        self.validate()?;
        Ok(self)
    }

    /// Attach an annotation without re-validating it.
    pub fn with_annotation_unchecked(mut self, annotation: Option<StableAnnotation>) -> Self {
        self.annotation = annotation;
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn colors(&self) -> Colors {
        self.colors
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn annotation(&self) -> Option<&StableAnnotation> {
        self.annotation.as_ref()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Colour of a set, with full input validation.
    pub fn color(&self, set: &[u64]) -> Result<u32> {
        if set.len() != self.arity {
            return Err(ProblemError::WrongArity { expected: self.arity, got: set.len() });
        }
        if !is_strictly_increasing(set) {
            return Err(ProblemError::NotIncreasing(set.to_vec()));
        }
        if let Some(&m) = set.last() {
            if m >= self.window {
                return Err(ProblemError::OutOfWindow { element: m, window: self.window });
            }
        }
        Ok(self.table[colex_rank(set) as usize])
    }

    /// Colour of a strictly increasing in-window set of the right size.
    #[inline]
    pub fn color_of(&self, set: &[u64]) -> u32 {
        debug_assert!(set.len() == self.arity && is_strictly_increasing(set));
        self.table[colex_rank(set) as usize]
    }

    /// Colour by colexicographic index.
    #[inline]
    pub fn color_at(&self, colex: usize) -> u32 {
        self.table[colex]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Overwrite one entry (mutation tests use this to corrupt instances).
    pub fn set_color(&mut self, set: &[u64], value: u32) -> Result<()> {
        self.color(set)?;
        if !self.colors.admits(value) {
            return Err(ProblemError::BadColor { value, colors: self.colors.count() });
        }
        self.table[colex_rank(set) as usize] = value;
        Ok(())
    }

    /// The restriction to `{0..window-1}` (annotation restricted alongside).
    pub fn restrict(&self, window: u64) -> Result<Coloring> {
        if window > self.window {
            return Err(ProblemError::OutOfWindow { element: window, window: self.window });
        }
        let mut out = Coloring::from_fn(self.arity, self.colors, window, |s| self.color_of(s))?;
        if let Some(a) = &self.annotation {
            out.annotation = Some(StableAnnotation {
                limit: Box::new(a.limit.restrict(window)?),
                horizon: a.horizon.min(window),
            });
        }
        Ok(out)
    }

    /// All sets of the window together with their colours, lexicographically.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<u64>, u32)> + '_ {
        Subsets::new(self.window, self.arity).map(move |s| {
            let v = self.color_of(&s);
            (s, v)
        })
    }

    /// Check colour range and, when present, the stability annotation.
    pub fn validate(&self) -> Result<()> {
        let expected = table_len(self.window, self.arity)?;
        if self.table.len() != expected {
            return Err(ProblemError::TableLength { expected, got: self.table.len() });
        }
        if let Some(&v) = self.table.iter().find(|&&v| !self.colors.admits(v)) {
            return Err(ProblemError::BadColor { value: v, colors: self.colors.count() });
        }
        if let Some(a) = &self.annotation {
            self.check_annotation(a)?;
        }
        Ok(())
    }

    fn check_annotation(&self, a: &StableAnnotation) -> Result<()> {
        if self.arity == 0 {
            return Err(ProblemError::BadAnnotation("arity-0 colourings carry no limit".into()));
        }
        let lim = &a.limit;
        if lim.arity + 1 != self.arity || lim.window != self.window {
            return Err(ProblemError::BadAnnotation(format!(
                "limit must have arity {} and window {}",
                self.arity - 1,
                self.window
            )));
        }
        let mut buf = Vec::with_capacity(self.arity);
        for base in Subsets::new(self.window, self.arity - 1) {
            let start = base.last().map_or(0, |m| m + 1).max(a.horizon);
            let want = lim.color_of(&base);
            for i in start..self.window {
                buf.clear();
                buf.extend_from_slice(&base);
                buf.push(i);
                let got = self.color_of(&buf);
                if got != want {
                    return Err(ProblemError::BadAnnotation(format!(
                        "c({buf:?}) = {got} but the annotated limit at {base:?} is {want} (horizon {})",
                        a.horizon
                    )));
                }
            }
        }
        Ok(())
    }
}

fn table_len(window: u64, arity: usize) -> Result<usize> {
    let len = binomial(window, arity as u64).ok_or(ProblemError::WindowTooLarge { window, arity })?;
    if len > 50_000_000 {
        return Err(ProblemError::WindowTooLarge { window, arity });
    }
    Ok(len as usize)
}

/// All `arity`-subsets of the window sorted by `ϑ_n` rank.
fn theta_order(window: u64, arity: usize) -> Result<Vec<Vec<u64>>> {
    table_len(window, arity)?;
    if arity == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut keyed: Vec<(u64, Vec<u64>)> =
        Subsets::new(window, arity).map(|s| (theta_encode(&s).expect("in-window ranks fit"), s)).collect();
    keyed.sort_unstable_by_key(|(r, _)| *r);
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

/// Decode a `ϑ_n` rank into a set, checking it lies in the window.
pub fn theta_set(rank: u64, arity: usize, window: u64) -> Result<Vec<u64>> {
    let s = theta_decode(rank, arity)?;
    match s.last() {
        Some(&m) if m >= window => Err(ProblemError::OutOfWindow { element: m, window }),
        _ => Ok(s),
    }
}

/// Inverse lookup of a colex index.
pub fn colex_set(index: u64, arity: usize) -> Vec<u64> {
    colex_unrank(index, arity)
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    arity: usize,
    colors: Colors,
    window: u64,
    table: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    annotation: Option<StableAnnotation>,
}

impl TryFrom<ColoringFile> for Coloring {
    type Error = ProblemError;

    fn try_from(f: ColoringFile) -> Result<Self> {
        let c = Coloring::from_theta_table(f.arity, f.colors, f.window, &f.table)?;
        match f.annotation {
            Some(a) => c.with_annotation(a),
            None => Ok(c),
        }
    }
}

impl From<Coloring> for ColoringFile {
    fn from(c: Coloring) -> Self {
        let table = c.theta_table();
        ColoringFile { arity: c.arity, colors: c.colors, window: c.window, table, annotation: c.annotation }
    }
}

/// A finite homogeneous-set candidate with a claimed colour.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomSet {
    pub elements: Vec<u64>,
    pub color: u32,
}

impl HomSet {
    pub fn new(elements: Vec<u64>, color: u32) -> Self {
        Self { elements, color }
    }
}

/// True iff every `n`-subset of `m.elements` has colour `m.color`.
///
/// Window violations and malformed sets are errors, not `false`.
pub fn check_homogeneous(c: &Coloring, m: &HomSet) -> Result<bool> {
    if !is_strictly_increasing(&m.elements) {
        return Err(ProblemError::NotIncreasing(m.elements.clone()));
    }
    if let Some(&x) = m.elements.last() {
        if x >= c.window {
            return Err(ProblemError::OutOfWindow { element: x, window: c.window });
        }
    }
    if m.elements.len() < c.arity {
        return Err(ProblemError::TooSmall { size: m.elements.len(), arity: c.arity });
    }
    Ok(homogeneous_color(c, &m.elements) == Some(m.color))
}

/// The common colour of all `n`-subsets of `elements`, if there is one.
pub fn homogeneous_color(c: &Coloring, elements: &[u64]) -> Option<u32> {
    let n = c.arity;
    if elements.len() < n {
        return None;
    }
    let mut first: Option<u32> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    let mut buf = vec![0u64; n];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = elements[i];
        }
        let v = c.color_of(&buf);
        match first {
            None => first = Some(v),
            Some(f) if f != v => return None,
            _ => {}
        }
        // Advance idx to the next n-combination of positions.
        let len = elements.len();
        let mut i = n;
        loop {
            if i == 0 {
                return first;
            }
            i -= 1;
            if idx[i] < len - (n - i) {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Can `m` be continued to an infinite homogeneous set of the same colour?
///
/// Decided from the annotation chain: with `L_1, L_2, …` the iterated limit
/// colourings, an infinite continuation exists iff `m` is homogeneous and
/// every `L_j` is constant with colour `m.color` on the `(n-j)`-subsets of
/// `m` (for `j = n` the single value `L_n(∅)`). `Some(false)` when a known
/// level refutes the continuation, `Some(true)` when every level down to
/// arity 0 is annotated and agrees, `None` when the chain ends earlier.
pub fn extendable(c: &Coloring, m: &HomSet) -> Option<bool> {
    if m.elements.iter().any(|&x| x >= c.window) || homogeneous_color(c, &m.elements) != Some(m.color) {
        return Some(false);
    }
    let mut cur = c;
    while let Some(a) = cur.annotation() {
        let lim = &a.limit;
        if homogeneous_color(lim, &m.elements) != Some(m.color) {
            return Some(false);
        }
        if lim.arity == 0 {
            return Some(true);
        }
        cur = lim;
    }
    None
}
