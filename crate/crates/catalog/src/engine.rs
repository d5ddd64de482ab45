//! Closure of the recorded reductions under the inference rules, with a
//! justification for every derived fact.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::data::{CatalogEdge, Relation, Strength};
use crate::degree::Degree;
use crate::{CatalogError, Result};

/// Rule that justifies one step of a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Recorded,
    Reflexivity,
    Transitivity,
    StrongImpliesWeak,
    JumpMonotone,
    ParallelizationMonotone,
    /// `f ≤sW f^*`, `f^* ≤sW f̂` and `f ≤sW f̂`.
    ClosureOperator,
    Cylinder,
    Separation,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Recorded => "recorded",
            Rule::Reflexivity => "reflexivity",
            Rule::Transitivity => "transitivity",
            Rule::StrongImpliesWeak => "strong implies weak",
            Rule::JumpMonotone => "jump monotone",
            Rule::ParallelizationMonotone => "parallelization monotone",
            Rule::ClosureOperator => "closure operator",
            Rule::Cylinder => "cylinder",
            Rule::Separation => "separation",
        })
    }
}

/// One justified fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub left: String,
    pub relation: Relation,
    pub right: String,
    pub rule: Rule,
    pub provenance: Option<String>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}  [{}", self.left, self.relation, self.right, self.rule)?;
        if let Some(p) = &self.provenance {
            write!(f, ": {p}")?;
        }
        f.write_str("]")
    }
}

/// Rule-application chain, premises before conclusions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    /// Provenance strings of the recorded facts used, in order of first use.
    pub fn provenances(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for s in &self.steps {
            if let Some(p) = &s.provenance {
                if !out.contains(&p.as_str()) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn cites(&self, anchor: &str) -> bool {
        self.steps.iter().any(|s| s.provenance.as_deref().is_some_and(|p| p.contains(anchor)))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Why a query cannot hold: a recorded negative `a ≰ b` together with
/// `a ≤ left` and `right ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub separation: CatalogEdge,
    pub lower: Trace,
    pub upper: Trace,
}

impl Witness {
    pub fn cites(&self, anchor: &str) -> bool {
        self.separation.provenance.contains(anchor)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "blocked by {}", self.separation)?;
        write!(f, "{}{}", self.lower, self.upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Derivation {
    Derivable(Trace),
    /// Every recorded separation that blocks the query, most direct first.
    ContradictsSeparation(Vec<Witness>),
    Unknown { open: Option<String> },
}

impl Derivation {
    pub fn is_derivable(&self) -> bool {
        matches!(self, Derivation::Derivable(_))
    }

    pub fn is_blocked(&self) -> bool {
        matches!(self, Derivation::ContradictsSeparation(_))
    }

    /// Blocking separations; empty unless the query is blocked.
    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Derivation::ContradictsSeparation(ws) => ws,
            _ => &[],
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Derivable(t) => write!(f, "derivable\n{t}"),
            Derivation::ContradictsSeparation(ws) => {
                writeln!(f, "contradicts separation")?;
                for w in ws {
                    write!(f, "{w}")?;
                }
                Ok(())
            }
            Derivation::Unknown { open: Some(q) } => writeln!(f, "unknown (open: {q})"),
            Derivation::Unknown { open: None } => writeln!(f, "unknown"),
        }
    }
}

/// A recorded negative whose positive counterpart is derivable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub separation: CatalogEdge,
    pub derivation: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reason {
    Reflexive,
    Recorded(u32),
    Trans(u32),
    StrongToWeak,
    Jump(u32, u32),
    Hat(u32, u32),
    Closure,
    Cylinder(u32),
}

struct BitMatrix {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { words, rows: vec![vec![0; words]; n] }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.rows[i][j / 64];
        let bit = 1u64 << (j % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

struct Closure {
    m: BitMatrix,
    why: HashMap<(u32, u32), Reason>,
}

impl Closure {
    fn new(n: usize) -> Self {
        Closure { m: BitMatrix::new(n), why: HashMap::new() }
    }

    fn add(&mut self, i: usize, j: usize, r: Reason) -> bool {
        if self.m.set(i, j) {
            self.why.insert((i as u32, j as u32), r);
            true
        } else {
            false
        }
    }

    fn warshall(&mut self) -> bool {
        let n = self.m.rows.len();
        let mut changed = false;
        let mut fresh = vec![0u64; self.m.words];
        for k in 0..n {
            for i in 0..n {
                if i == k || !self.m.get(i, k) {
                    continue;
                }
                let mut any = false;
                for (w, f) in fresh.iter_mut().enumerate() {
                    *f = self.m.rows[k][w] & !self.m.rows[i][w];
                    any |= *f != 0;
                }
                if !any {
                    continue;
                }
                for (w, &f) in fresh.iter().enumerate() {
                    let mut word = f;
                    while word != 0 {
                        let b = word.trailing_zeros() as usize;
                        word &= word - 1;
                        self.add(i, w * 64 + b, Reason::Trans(k as u32));
                    }
                }
                changed = true;
            }
        }
        changed
    }
}

#[derive(Clone, Copy)]
struct Negative {
    left: usize,
    right: usize,
    strength: Strength,
    edge: usize,
}

/// Rule closure over a finite set of degrees.
///
/// Nodes are the degrees of the recorded edges and any extra query degrees,
/// plus their jump and parallelization.
pub struct Engine {
    edges: Vec<CatalogEdge>,
    nodes: Vec<Degree>,
    index: HashMap<Degree, usize>,
    strong: Closure,
    weak: Closure,
    negatives: Vec<Negative>,
    open: Vec<(usize, usize, usize)>,
}

impl Engine {
    pub fn build(edges: &[CatalogEdge], extras: &[Degree]) -> Engine {
        let mut nodes: Vec<Degree> = Vec::new();
        let mut index: HashMap<Degree, usize> = HashMap::new();
        let mut intern = |d: &Degree, nodes: &mut Vec<Degree>| -> usize {
            *index.entry(d.clone()).or_insert_with(|| {
                nodes.push(d.clone());
                nodes.len() - 1
            })
        };
        let mut seeds: Vec<Degree> = Vec::new();
        for e in edges {
            seeds.push(e.left.clone());
            seeds.push(e.right.clone());
        }
        seeds.extend(extras.iter().cloned());
        for d in &seeds {
            intern(d, &mut nodes);
        }
        for d in &seeds {
            intern(&d.clone().jump(1), &mut nodes);
            intern(&d.clone().hat(), &mut nodes);
        }
        drop(intern);

        let n = nodes.len();
        let mut engine = Engine {
            edges: edges.to_vec(),
            nodes,
            index,
            strong: Closure::new(n),
            weak: Closure::new(n),
            negatives: Vec::new(),
            open: Vec::new(),
        };
        engine.seed();
        engine.saturate();
        engine
    }

    fn seed(&mut self) {
        let n = self.nodes.len();
        for i in 0..n {
            self.strong.add(i, i, Reason::Reflexive);
            self.weak.add(i, i, Reason::Reflexive);
        }
        for i in 0..n {
            let d = self.nodes[i].clone();
            let hat = self.index.get(&d.clone().hat()).copied();
            let star = self.index.get(&d.clone().star()).copied();
            if let Some(h) = hat {
                self.strong.add(i, h, Reason::Closure);
            }
            if let Some(s) = star {
                self.strong.add(i, s, Reason::Closure);
                if let Some(h) = hat {
                    self.strong.add(s, h, Reason::Closure);
                }
            }
        }
        for (k, e) in self.edges.iter().enumerate() {
            let a = self.index[&e.left];
            let b = self.index[&e.right];
            let r = Reason::Recorded(k as u32);
            let neg = |left, right, strength| Negative { left, right, strength, edge: k };
            match e.relation {
                Relation::LeqW => {
                    self.weak.add(a, b, r);
                }
                Relation::LeqSW => {
                    self.strong.add(a, b, r);
                }
                Relation::EquivW => {
                    self.weak.add(a, b, r);
                    self.weak.add(b, a, r);
                }
                Relation::EquivSW => {
                    self.strong.add(a, b, r);
                    self.strong.add(b, a, r);
                }
                Relation::StrictW => {
                    self.weak.add(a, b, r);
                    self.negatives.push(neg(b, a, Strength::W));
                }
                Relation::StrictSW => {
                    self.strong.add(a, b, r);
                    self.negatives.push(neg(b, a, Strength::SW));
                }
                Relation::IncomparableW => {
                    self.negatives.push(neg(a, b, Strength::W));
                    self.negatives.push(neg(b, a, Strength::W));
                }
                Relation::IncomparableSW => {
                    self.negatives.push(neg(a, b, Strength::SW));
                    self.negatives.push(neg(b, a, Strength::SW));
                }
                Relation::NleqW => self.negatives.push(neg(a, b, Strength::W)),
                Relation::NleqSW => self.negatives.push(neg(a, b, Strength::SW)),
                Relation::Open => self.open.push((a, b, k)),
            }
        }
    }

    fn saturate(&mut self) {
        let n = self.nodes.len();
        let jump: Vec<Option<usize>> = self.nodes.iter().map(|d| self.index.get(&d.clone().jump(1)).copied()).collect();
        let hat: Vec<Option<usize>> = self.nodes.iter().map(|d| self.index.get(&d.clone().hat()).copied()).collect();
        let cylinders: Vec<usize> = (0..n)
            .filter(|&t| self.index.contains_key(&self.nodes[t].cylinder()))
            .collect();
        loop {
            let mut changed = self.strong.warshall();
            for i in 0..n {
                let row: Vec<usize> = self.strong.m.ones(i).collect();
                for j in row {
                    changed |= self.weak.add(i, j, Reason::StrongToWeak);
                }
            }
            changed |= self.weak.warshall();
            for &t in &cylinders {
                let c = self.index[&self.nodes[t].cylinder()];
                if !self.strong.m.get(c, t) {
                    continue;
                }
                for a in 0..n {
                    if self.weak.m.get(a, t) {
                        changed |= self.strong.add(a, t, Reason::Cylinder(t as u32));
                    }
                }
            }
            for i in 0..n {
                let row: Vec<usize> = self.strong.m.ones(i).collect();
                for j in row {
                    if let (Some(ji), Some(jj)) = (jump[i], jump[j]) {
                        changed |= self.strong.add(ji, jj, Reason::Jump(i as u32, j as u32));
                    }
                    if let (Some(hi), Some(hj)) = (hat[i], hat[j]) {
                        changed |= self.strong.add(hi, hj, Reason::Hat(i as u32, j as u32));
                    }
                }
                let row: Vec<usize> = self.weak.m.ones(i).collect();
                for j in row {
                    if let (Some(hi), Some(hj)) = (hat[i], hat[j]) {
                        changed |= self.weak.add(hi, hj, Reason::Hat(i as u32, j as u32));
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, d: &Degree) -> bool {
        self.index.contains_key(d)
    }

    fn closure(&self, s: Strength) -> &Closure {
        match s {
            Strength::W => &self.weak,
            Strength::SW => &self.strong,
        }
    }

    /// Whether `a ≤ b` at strength `s` is derivable; both must be nodes.
    pub fn holds(&self, a: &Degree, b: &Degree, s: Strength) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.closure(s).m.get(i, j),
            _ => a == b,
        }
    }

    fn trace(&self, s: Strength, i: usize, j: usize) -> Trace {
        let mut out = Trace::default();
        let mut seen = HashSet::new();
        self.explain(s, i, j, &mut out, &mut seen);
        out
    }

    fn explain(&self, s: Strength, i: usize, j: usize, out: &mut Trace, seen: &mut HashSet<(Strength, usize, usize)>) {
        if !seen.insert((s, i, j)) {
            return;
        }
        let reason = self.closure(s).why[&(i as u32, j as u32)];
        let relation = match s {
            Strength::W => Relation::LeqW,
            Strength::SW => Relation::LeqSW,
        };
        let (rule, provenance) = match reason {
            Reason::Reflexive => (Rule::Reflexivity, None),
            Reason::Recorded(k) => (Rule::Recorded, Some(self.edges[k as usize].provenance.clone())),
            Reason::Trans(k) => {
                self.explain(s, i, k as usize, out, seen);
                self.explain(s, k as usize, j, out, seen);
                (Rule::Transitivity, None)
            }
            Reason::StrongToWeak => {
                self.explain(Strength::SW, i, j, out, seen);
                (Rule::StrongImpliesWeak, None)
            }
            Reason::Jump(a, b) => {
                self.explain(Strength::SW, a as usize, b as usize, out, seen);
                (Rule::JumpMonotone, None)
            }
            Reason::Hat(a, b) => {
                self.explain(s, a as usize, b as usize, out, seen);
                (Rule::ParallelizationMonotone, None)
            }
            Reason::Closure => (Rule::ClosureOperator, None),
            Reason::Cylinder(t) => {
                let t = t as usize;
                let c = self.index[&self.nodes[t].cylinder()];
                self.explain(Strength::SW, c, t, out, seen);
                self.explain(Strength::W, i, t, out, seen);
                (Rule::Cylinder, None)
            }
        };
        out.steps.push(Step {
            left: self.nodes[i].to_string(),
            relation,
            right: self.nodes[j].to_string(),
            rule,
            provenance,
        });
    }

    fn separation_step(&self, neg: &Negative) -> Step {
        let e = &self.edges[neg.edge];
        Step {
            left: self.nodes[neg.left].to_string(),
            relation: match neg.strength {
                Strength::W => Relation::NleqW,
                Strength::SW => Relation::NleqSW,
            },
            right: self.nodes[neg.right].to_string(),
            rule: Rule::Separation,
            provenance: Some(e.provenance.clone()),
        }
    }

    fn lookup(&self, d: &Degree) -> Result<usize> {
        self.index.get(d).copied().ok_or_else(|| CatalogError::NotInEngine(d.to_string()))
    }

    /// Recorded negatives blocking `x ≤ y` at strength `s`, shortest traces first.
    fn blocking(&self, x: usize, y: usize, s: Strength) -> Vec<Witness> {
        let mut out = Vec::new();
        for neg in &self.negatives {
            let via = match (neg.strength, s) {
                (Strength::W, _) => Strength::W,
                (Strength::SW, Strength::SW) => Strength::SW,
                (Strength::SW, Strength::W) => continue,
            };
            let c = self.closure(via);
            if c.m.get(neg.left, x) && c.m.get(y, neg.right) {
                out.push(Witness {
                    separation: self.edges[neg.edge].clone(),
                    lower: self.trace(via, neg.left, x),
                    upper: self.trace(via, y, neg.right),
                });
            }
        }
        out.sort_by_key(|w| w.lower.steps.len() + w.upper.steps.len());
        out.dedup();
        out
    }

    fn open_question(&self, x: usize, y: usize) -> Option<String> {
        self.open
            .iter()
            .find(|&&(a, b, _)| (a, b) == (x, y) || (a, b) == (y, x))
            .map(|&(_, _, k)| self.edges[k].provenance.clone())
    }

    fn derive_leq(&self, x: usize, y: usize, s: Strength) -> Derivation {
        if self.closure(s).m.get(x, y) {
            Derivation::Derivable(self.trace(s, x, y))
        } else {
            let ws = self.blocking(x, y, s);
            if !ws.is_empty() {
                return Derivation::ContradictsSeparation(ws);
            }
            Derivation::Unknown { open: self.open_question(x, y) }
        }
    }

    /// Answers a positive query: `leq`, `equiv` or `strict` at either strength.
    pub fn derive(&self, left: &Degree, relation: Relation, right: &Degree) -> Result<Derivation> {
        let x = self.lookup(left)?;
        let y = self.lookup(right)?;
        let s = relation.strength().ok_or(CatalogError::UnsupportedQuery(relation))?;
        match relation {
            Relation::LeqW | Relation::LeqSW => Ok(self.derive_leq(x, y, s)),
            Relation::EquivW | Relation::EquivSW => {
                let up = self.derive_leq(x, y, s);
                let down = self.derive_leq(y, x, s);
                Ok(match (up, down) {
                    (Derivation::Derivable(mut a), Derivation::Derivable(b)) => {
                        a.steps.extend(b.steps);
                        Derivation::Derivable(a)
                    }
                    (b @ Derivation::ContradictsSeparation(_), _) | (_, b @ Derivation::ContradictsSeparation(_)) => b,
                    (Derivation::Unknown { open }, other) | (other, Derivation::Unknown { open }) => {
                        let open = open.or(match other {
                            Derivation::Unknown { open } => open,
                            _ => None,
                        });
                        Derivation::Unknown { open }
                    }
                })
            }
            Relation::StrictW | Relation::StrictSW => Ok(match self.derive_leq(x, y, s) {
                Derivation::Derivable(mut t) => match self.blocking(y, x, s).into_iter().next() {
                    Some(w) => {
                        t.steps.extend(w.lower.steps);
                        t.steps.extend(w.upper.steps);
                        let neg = self.negatives.iter().find(|n| self.edges[n.edge] == w.separation).expect("negative");
                        t.steps.push(self.separation_step(neg));
                        Derivation::Derivable(t)
                    }
                    None => Derivation::Unknown { open: self.open_question(x, y) },
                },
                other => other,
            }),
            _ => Err(CatalogError::UnsupportedQuery(relation)),
        }
    }

    /// Recorded negatives whose positive counterpart is derivable.
    pub fn conflicts(&self) -> Vec<Conflict> {
        self.negatives
            .iter()
            .filter(|neg| self.closure(neg.strength).m.get(neg.left, neg.right))
            .map(|neg| Conflict {
                separation: self.edges[neg.edge].clone(),
                derivation: self.trace(neg.strength, neg.left, neg.right),
            })
            .collect()
    }
}
