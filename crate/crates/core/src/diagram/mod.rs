//! Quivers, path categories, finite categories, categories of pairs and Nori diagrams.

mod fincat;
mod pairs;
mod quiver;

pub use fincat::{FinCat, Mor};
pub use pairs::{
    distinguished_by_names, enumerate_cubes, enumerate_triples, monos, nori_diagram,
    pairs_category, Cube, NoriDiagram, NoriEdge, PairCat, Square, Triple,
};
pub use quiver::{Edge, Path, PathCategory, Quiver};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("edges do not compose in {0}")]
    NotComposable(String),
    #[error("relation sides {0} and {1} are not parallel")]
    NotParallel(String, String),
    #[error("category is not finite within the rewriting bound; growing paths: {}", .0.join(", "))]
    NonFinite(Vec<String>),
    #[error("not a category: {0}")]
    BadComposition(String),
    #[error("distinguished morphisms are not a subcategory: missing {0}")]
    NotSubcategory(String),
    #[error("empty degree window [{0}, {1}]")]
    EmptyWindow(i64, i64),
}
