//! Catalog data: JSON statements with parameter schemas, expanded into
//! concrete edges.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degree::Degree;
use crate::{CatalogError, Result};

/// Relation between two degrees as stored in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    LeqW,
    #[serde(rename = "leq_sW")]
    LeqSW,
    EquivW,
    #[serde(rename = "equiv_sW")]
    EquivSW,
    StrictW,
    #[serde(rename = "strict_sW")]
    StrictSW,
    IncomparableW,
    #[serde(rename = "incomparable_sW")]
    IncomparableSW,
    NleqW,
    #[serde(rename = "nleq_sW")]
    NleqSW,
    Open,
}

/// Reduction strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strength {
    W,
    #[serde(rename = "sW")]
    SW,
}

impl Relation {
    pub fn strength(self) -> Option<Strength> {
        use Relation::*;
        match self {
            LeqW | EquivW | StrictW | IncomparableW | NleqW => Some(Strength::W),
            LeqSW | EquivSW | StrictSW | IncomparableSW | NleqSW => Some(Strength::SW),
            Open => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Relation::*;
        match self {
            LeqW => "≤W",
            LeqSW => "≤sW",
            EquivW => "≡W",
            EquivSW => "≡sW",
            StrictW => "<W",
            StrictSW => "<sW",
            IncomparableW => "|W",
            IncomparableSW => "|sW",
            NleqW => "≰W",
            NleqSW => "≰sW",
            Open => "≤?",
        }
    }

    /// Parses the operator of a textual query or statement.
    pub fn from_operator(op: &str) -> Option<Relation> {
        use Relation::*;
        Some(match op {
            "<=W" | "≤W" | "≤_W" => LeqW,
            "<=sW" | "≤sW" | "≤_sW" => LeqSW,
            "==W" | "≡W" | "≡_W" => EquivW,
            "==sW" | "≡sW" | "≡_sW" => EquivSW,
            "<W" | "<_W" => StrictW,
            "<sW" | "<_sW" => StrictSW,
            "|W" | "|_W" => IncomparableW,
            "|sW" | "|_sW" => IncomparableSW,
            "!<=W" | "≰W" | "⋢W" => NleqW,
            "!<=sW" | "≰sW" | "⋢sW" => NleqSW,
            "<=?" | "≤?" => Open,
            _ => return None,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::W => "W",
            Strength::SW => "sW",
        })
    }
}

/// A concrete catalog edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEdge {
    pub left: Degree,
    pub right: Degree,
    pub relation: Relation,
    pub provenance: String,
}

impl fmt::Display for CatalogEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} ({})", self.left, self.relation, self.right, self.provenance)
    }
}

/// Parses `"A <=W B"` into its two degrees and relation.
pub fn parse_relation(text: &str) -> Result<(Degree, Relation, Degree)> {
    const OPS: &[&str] = &[
        "!<=sW", "!<=W", "<=sW", "<=W", "==sW", "==W", "<sW", "<W", "|sW", "|W", "<=?", "≤sW", "≤W",
        "≡sW", "≡W", "≰sW", "≰W", "⋢sW", "⋢W", "≤?", "≤_sW", "≤_W", "≡_sW", "≡_W", "<_sW", "<_W",
        "|_sW", "|_W",
    ];
    let mut depth = 0i32;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (pos, &(byte, c)) in chars.iter().enumerate() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ if depth == 0 => {
                let prev_sep = pos == 0 || chars[pos - 1].1.is_whitespace();
                if !prev_sep {
                    continue;
                }
                let rest = &text[byte..];
                for op in OPS {
                    if let Some(after) = rest.strip_prefix(op) {
                        if after.starts_with(char::is_whitespace) {
                            let rel = Relation::from_operator(op).expect("listed operator");
                            let left = Degree::parse(text[..byte].trim())?;
                            let right = Degree::parse(after.trim())?;
                            return Ok((left, rel, right));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    Err(CatalogError::Parse { input: text.to_string(), message: "no relation operator found".into() })
}

/// Parameter value in a statement schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Nat(i64),
    Symbol(String),
}

impl ParamValue {
    fn numeric(&self) -> Option<i64> {
        match self {
            ParamValue::Nat(n) => Some(*n),
            ParamValue::Symbol(_) => None,
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Nat(n) => write!(f, "{n}"),
            ParamValue::Symbol(s) => f.write_str(s),
        }
    }
}

/// A statement as written in the data file: edge templates with `$x` and
/// `$(expr)` placeholders, instantiated over every parameter combination
/// satisfying the `where` constraints.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Statement {
    pub anchor: String,
    #[serde(default, rename = "for")]
    pub ranges: BTreeMap<String, Vec<ParamValue>>,
    #[serde(default, rename = "where")]
    pub constraints: Vec<String>,
    pub edges: Vec<String>,
}

/// A drawn arrow of a figure: `to` lies below `from`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FigureArrow {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub both: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FigureData {
    pub title: String,
    /// Node labels; each entry lists degrees drawn as one node, first one representative.
    pub nodes: Vec<Vec<String>>,
    pub arrows: Vec<FigureArrow>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CatalogFile {
    pub statements: Vec<Statement>,
    #[serde(default)]
    pub figures: BTreeMap<String, FigureData>,
}

type Env = BTreeMap<String, ParamValue>;

/// Expands every statement into concrete edges.
pub fn expand(file: &CatalogFile) -> Result<Vec<CatalogEdge>> {
    let mut edges = Vec::new();
    for st in &file.statements {
        for env in environments(&st.ranges) {
            if !constraints_hold(&st.constraints, &env, &st.anchor)? {
                continue;
            }
            for template in &st.edges {
                let Some(text) = substitute(template, &env, &st.anchor)? else { continue };
                let (left, relation, right) = parse_relation(&text).map_err(|e| CatalogError::Data {
                    anchor: st.anchor.clone(),
                    message: format!("{text}: {e}"),
                })?;
                edges.push(CatalogEdge { left, right, relation, provenance: st.anchor.clone() });
            }
        }
    }
    Ok(edges)
}

fn environments(ranges: &BTreeMap<String, Vec<ParamValue>>) -> Vec<Env> {
    let mut envs = vec![Env::new()];
    for (var, values) in ranges {
        let mut next = Vec::with_capacity(envs.len() * values.len());
        for env in &envs {
            for v in values {
                let mut e = env.clone();
                e.insert(var.clone(), v.clone());
                next.push(e);
            }
        }
        envs = next;
    }
    envs
}

fn data_err(anchor: &str, message: String) -> CatalogError {
    CatalogError::Data { anchor: anchor.to_string(), message }
}

/// Constraints are `var op int` with op in `>=, <=, >, <, ==, !=`, or
/// `var == symbol` / `var != symbol`. Symbolic values count as infinite in
/// order comparisons.
fn constraints_hold(constraints: &[String], env: &Env, anchor: &str) -> Result<bool> {
    for c in constraints {
        let (var, op, rhs) = ["==", "!=", ">=", "<=", ">", "<"]
            .iter()
            .find_map(|op| c.split_once(op).map(|(l, r)| (l.trim(), *op, r.trim())))
            .ok_or_else(|| data_err(anchor, format!("bad constraint `{c}`")))?;
        let value = env.get(var).ok_or_else(|| data_err(anchor, format!("unbound `{var}` in `{c}`")))?;
        let holds = match (value.numeric(), rhs.parse::<i64>()) {
            (Some(v), Ok(r)) => match op {
                "==" => v == r,
                "!=" => v != r,
                ">=" => v >= r,
                "<=" => v <= r,
                ">" => v > r,
                _ => v < r,
            },
            (None, Ok(_)) => matches!(op, ">=" | ">" | "!="),
            (_, Err(_)) => match op {
                "==" => value.to_string() == rhs,
                "!=" => value.to_string() != rhs,
                _ => return Err(data_err(anchor, format!("order comparison with symbol in `{c}`"))),
            },
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces `$x` and `$(expr)`. Returns `None` when an arithmetic
/// placeholder involves a symbolic value or yields a negative number, so the
/// instance is skipped.
fn substitute(template: &str, env: &Env, anchor: &str) -> Result<Option<String>> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(i) = rest.find('$') {
        out.push_str(&rest[..i]);
        rest = &rest[i + 1..];
        if let Some(after) = rest.strip_prefix('(') {
            let end = after.find(')').ok_or_else(|| data_err(anchor, format!("unclosed `$(` in {template}")))?;
            match eval(&after[..end], env, anchor)? {
                Some(v) if v >= 0 => out.push_str(&v.to_string()),
                _ => return Ok(None),
            }
            rest = &after[end + 1..];
        } else {
            let end = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
            let var = &rest[..end];
            let v = env.get(var).ok_or_else(|| data_err(anchor, format!("unbound `${var}` in {template}")))?;
            out.push_str(&v.to_string());
            rest = &rest[end..];
        }
    }
    out.push_str(rest);
    Ok(Some(out))
}

/// Evaluates a sum of signed terms, each a variable or integer literal.
fn eval(expr: &str, env: &Env, anchor: &str) -> Result<Option<i64>> {
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut term = String::new();
    let flush = |term: &mut String, sign: i64, total: &mut i64| -> Result<bool> {
        let t = term.trim();
        if t.is_empty() {
            return Err(data_err(anchor, format!("bad expression `{expr}`")));
        }
        let v = match t.parse::<i64>() {
            Ok(v) => v,
            Err(_) => match env.get(t) {
                Some(ParamValue::Nat(v)) => *v,
                Some(ParamValue::Symbol(_)) => return Ok(false),
                None => return Err(data_err(anchor, format!("unbound `{t}` in `{expr}`"))),
            },
        };
        *total += sign * v;
        term.clear();
        Ok(true)
    };
    for c in expr.chars() {
        if c == '+' || c == '-' {
            if !flush(&mut term, sign, &mut total)? {
                return Ok(None);
            }
            sign = if c == '+' { 1 } else { -1 };
        } else {
            term.push(c);
        }
    }
    if !flush(&mut term, sign, &mut total)? {
        return Ok(None);
    }
    Ok(Some(total))
}
