//! Graphviz export of the recorded figures.

use std::fmt::Write;

use crate::data::{FigureData, Strength};
use crate::degree::Degree;
use crate::engine::Engine;
use crate::{CatalogError, Result};

/// Figures that can be exported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig4,
    Fig5,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig2, Figure::Fig4, Figure::Fig5];

    pub fn key(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }
}

impl std::str::FromStr for Figure {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Figure> {
        let t = s.trim().to_ascii_lowercase();
        let t = t.strip_prefix("figure").or_else(|| t.strip_prefix("fig")).unwrap_or(&t).trim();
        match t {
            "1" => Ok(Figure::Fig1),
            "2" => Ok(Figure::Fig2),
            "4" => Ok(Figure::Fig4),
            "5" => Ok(Figure::Fig5),
            _ => Err(CatalogError::UnknownFigure(s.to_string())),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct Node {
    degrees: Vec<Degree>,
    label: String,
}

/// Renders one figure. Arrows point from the larger to the smaller degree;
/// an arrow is drawn solid when the strong reduction is derivable, dashed
/// when only the weak one is, and listed as omitted otherwise.
/// Degrees drawn in a figure.
pub fn degrees(data: &FigureData) -> Result<Vec<Degree>> {
    data.nodes.iter().flatten().map(|s| Degree::parse(s)).collect()
}

pub fn emit(figure: Figure, data: &FigureData, engine: &Engine) -> Result<String> {
    let mut nodes = Vec::new();
    for entry in &data.nodes {
        let degrees = entry.iter().map(|s| Degree::parse(s)).collect::<Result<Vec<_>>>()?;
        if degrees.is_empty() {
            return Err(CatalogError::Data { anchor: figure.key().into(), message: "empty node".into() });
        }
        let label = degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ≡ ");
        nodes.push(Node { degrees, label });
    }
    let find = |text: &str| -> Result<usize> {
        let d = Degree::parse(text)?;
        nodes.iter().position(|n| n.degrees.contains(&d)).ok_or_else(|| CatalogError::Data {
            anchor: figure.key().into(),
            message: format!("arrow endpoint {d} is not a node"),
        })
    };

    let mut out = String::new();
    writeln!(out, "digraph {} {{", figure.key()).unwrap();
    writeln!(out, "  label=\"{}\";", escape(&data.title)).unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for note in &data.notes {
        writeln!(out, "  // {note}").unwrap();
    }
    for (i, n) in nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(&n.label)).unwrap();
    }

    let mut omitted = Vec::new();
    for arrow in &data.arrows {
        let (from, to) = (find(&arrow.from)?, find(&arrow.to)?);
        let (hi, lo) = (&nodes[from].degrees[0], &nodes[to].degrees[0]);
        let strong = engine.holds(lo, hi, Strength::SW) && (!arrow.both || engine.holds(hi, lo, Strength::SW));
        let weak = engine.holds(lo, hi, Strength::W) && (!arrow.both || engine.holds(hi, lo, Strength::W));
        let style = if strong {
            "solid"
        } else if weak {
            "dashed"
        } else {
            omitted.push(format!("{} {} {}", hi, if arrow.both { "<->" } else { "->" }, lo));
            continue;
        };
        let dir = if arrow.both { ", dir=both" } else { "" };
        writeln!(out, "  n{from} -> n{to} [style={style}{dir}];").unwrap();
    }

    let mut clustered = vec![false; nodes.len()];
    let mut cluster = 0;
    for i in 0..nodes.len() {
        if clustered[i] {
            continue;
        }
        let class: Vec<usize> = (i..nodes.len())
            .filter(|&j| {
                !clustered[j]
                    && engine.holds(&nodes[i].degrees[0], &nodes[j].degrees[0], Strength::W)
                    && engine.holds(&nodes[j].degrees[0], &nodes[i].degrees[0], Strength::W)
            })
            .collect();
        if class.len() < 2 {
            continue;
        }
        writeln!(out, "  subgraph cluster_{cluster} {{").unwrap();
        writeln!(out, "    label=\"≡W\"; style=rounded;").unwrap();
        for &j in &class {
            clustered[j] = true;
            writeln!(out, "    n{j};").unwrap();
        }
        writeln!(out, "  }}").unwrap();
        cluster += 1;
    }
    for o in &omitted {
        writeln!(out, "  // omitted, not derivable from anchored data: {o}").unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
