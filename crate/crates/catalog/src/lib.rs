//! Catalog of reducibility results between Ramsey-type problems and related
//! degrees, an inference engine over closure rules, consistency checking
//! against recorded separations, and DOT export of the degree diagrams.

pub mod data;
pub mod degree;
pub mod dot;
pub mod engine;

use std::sync::OnceLock;

pub use data::{parse_relation, CatalogEdge, CatalogFile, Relation, Strength};
pub use degree::Degree;
pub use dot::Figure;
pub use engine::{Conflict, Derivation, Engine, Rule, Step, Trace, Witness};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unrecognized degree name `{0}`")]
    UnknownDegree(String),
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error("bad catalog data under `{anchor}`: {message}")]
    Data { anchor: String, message: String },
    #[error("catalog json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("degree {0} is not in the engine's node set")]
    NotInEngine(String),
    #[error("relation {0} cannot be queried")]
    UnsupportedQuery(Relation),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
}

pub type Result<T> = std::result::Result<T, CatalogError>;

const SHIPPED: &str = include_str!("../data/catalog.json");

/// An edge that fails the lint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LintIssue {
    pub edge: CatalogEdge,
    pub message: String,
}

/// Loaded catalog. Immutable; the rule closure is computed once on first use.
pub struct Catalog {
    file: CatalogFile,
    edges: Vec<CatalogEdge>,
    engine: OnceLock<Engine>,
}

impl Catalog {
    /// The catalog shipped with this crate.
    pub fn shipped() -> Result<Catalog> {
        Catalog::from_json(SHIPPED)
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let file: CatalogFile = serde_json::from_str(text)?;
        let edges = data::expand(&file)?;
        Ok(Catalog { file, edges, engine: OnceLock::new() })
    }

    pub fn empty() -> Catalog {
        Catalog::from_edges(Vec::new())
    }

    pub fn from_edges(edges: Vec<CatalogEdge>) -> Catalog {
        Catalog { file: CatalogFile::default(), edges, engine: OnceLock::new() }
    }

    pub fn edges(&self) -> &[CatalogEdge] {
        &self.edges
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, edge: CatalogEdge) -> Catalog {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Catalog { file: self.file.clone(), edges, engine: OnceLock::new() }
    }

    /// Copy without the edges whose provenance contains `anchor`.
    pub fn without_provenance(&self, anchor: &str) -> Catalog {
        let edges = self.edges.iter().filter(|e| !e.provenance.contains(anchor)).cloned().collect();
        Catalog { file: self.file.clone(), edges, engine: OnceLock::new() }
    }

    pub fn engine(&self) -> &Engine {
        self.engine.get_or_init(|| Engine::build(&self.edges, &[]))
    }

    /// Engine whose node set also contains `extras`.
    pub fn engine_with(&self, extras: &[Degree]) -> Engine {
        Engine::build(&self.edges, extras)
    }

    pub fn derive(&self, left: &Degree, relation: Relation, right: &Degree) -> Result<Derivation> {
        let engine = self.engine();
        if engine.contains(left) && engine.contains(right) {
            engine.derive(left, relation, right)
        } else {
            self.engine_with(&[left.clone(), right.clone()]).derive(left, relation, right)
        }
    }

    /// Parses and answers a query such as `"RT_{1,2} <=W RT_{2,2}"`.
    pub fn derive_str(&self, query: &str) -> Result<Derivation> {
        let (left, relation, right) = parse_relation(query)?;
        self.derive(&left, relation, &right)
    }

    pub fn check_consistency(&self) -> Vec<Conflict> {
        self.engine().conflicts()
    }

    /// Edges without provenance.
    pub fn lint(&self) -> Vec<LintIssue> {
        self.edges
            .iter()
            .filter(|e| e.provenance.trim().is_empty())
            .map(|e| LintIssue { edge: e.clone(), message: "edge has no provenance anchor".into() })
            .collect()
    }

    pub fn emit_dot(&self, figure: &str) -> Result<String> {
        let figure: Figure = figure.parse()?;
        let data = self.file.figures.get(figure.key()).ok_or_else(|| CatalogError::UnknownFigure(figure.key().into()))?;
        let extras = dot::degrees(data)?;
        if extras.iter().all(|d| self.engine().contains(d)) {
            dot::emit(figure, data, self.engine())
        } else {
            dot::emit(figure, data, &self.engine_with(&extras))
        }
    }
}
