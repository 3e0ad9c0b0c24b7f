//! Loading JSON inputs. Every command accepts either the bare object or a
//! catalog entry carrying it.

use std::fs;
use std::io::Read;
use std::path::Path;

use cpg::{CatalogEntry, CpgRepresentation, OrthogonalEmbedding, RectilinearDrawing, SimpleGraph};
use serde::de::DeserializeOwned;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in `{path}`: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("`{path}` is not a {expected}: {detail}")]
    Schema { path: String, expected: &'static str, detail: String },
}

pub fn read_value(path: &Path) -> Result<Value, InputError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|source| InputError::Io { path: name.clone(), source })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| InputError::Io { path: name.clone(), source })?
    };
    serde_json::from_str(&text).map_err(|source| InputError::Json { path: name, source })
}

fn decode<T: DeserializeOwned>(path: &Path, v: Value, expected: &'static str) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| InputError::Schema { path: path.display().to_string(), expected, detail: e.to_string() })
}

fn schema(path: &Path, expected: &'static str, detail: &str) -> InputError {
    InputError::Schema { path: path.display().to_string(), expected, detail: detail.into() }
}

fn entry(path: &Path, v: &Value) -> Result<Option<CatalogEntry>, InputError> {
    if v.get("expected").is_some() && v.get("name").is_some() {
        return decode(path, v.clone(), "catalog entry").map(Some);
    }
    Ok(None)
}

pub fn rep(path: &Path) -> Result<CpgRepresentation, InputError> {
    let v = read_value(path)?;
    match entry(path, &v)? {
        Some(e) => e.rep.ok_or_else(|| schema(path, "representation", "catalog entry has no representation")),
        None => decode(path, v, "representation"),
    }
}

pub fn embedding(path: &Path) -> Result<OrthogonalEmbedding, InputError> {
    let v = read_value(path)?;
    match entry(path, &v)? {
        Some(e) => e.embedding.ok_or_else(|| schema(path, "orthogonal embedding", "catalog entry has no embedding")),
        None => decode(path, v, "orthogonal embedding"),
    }
}

pub fn drawing(path: &Path) -> Result<RectilinearDrawing, InputError> {
    decode(path, read_value(path)?, "rectilinear drawing")
}

/// A graph given directly, or the contact graph of a representation, or the
/// subject graph of a catalog entry.
pub fn graph(path: &Path) -> Result<SimpleGraph, InputError> {
    let v = read_value(path)?;
    if let Some(e) = entry(path, &v)? {
        return e.subject_graph().ok_or_else(|| schema(path, "graph", "catalog entry has no graph"));
    }
    if v.get("paths").is_some() {
        let r: CpgRepresentation = decode(path, v, "representation")?;
        let report = r.validate();
        if !report.ok {
            return Err(schema(path, "valid representation", &format!("{} violations", report.violations.len())));
        }
        return Ok(cpg::contact_graph(&r));
    }
    decode(path, v, "graph")
}

/// Anything `render` can draw.
pub enum Drawable {
    Rep(CpgRepresentation),
    Embedding(OrthogonalEmbedding),
}

pub fn drawable(path: &Path) -> Result<Drawable, InputError> {
    let v = read_value(path)?;
    if let Some(e) = entry(path, &v)? {
        return match (e.rep, e.embedding) {
            (Some(r), _) => Ok(Drawable::Rep(r)),
            (None, Some(emb)) => Ok(Drawable::Embedding(emb)),
            _ => Err(schema(path, "representation or embedding", "catalog entry has neither")),
        };
    }
    if v.get("paths").is_some() {
        return decode(path, v, "representation").map(Drawable::Rep);
    }
    // Rectilinear drawings share the embedding layout; edge labels are dropped.
    let d: RectilinearDrawing = decode(path, v, "embedding or drawing")?;
    Ok(Drawable::Embedding(OrthogonalEmbedding {
        vertices: d.vertices,
        edges: d.edges.into_iter().map(|e| cpg::EmbeddedEdge { u: e.u, v: e.v, polyline: e.polyline }).collect(),
    }))
}
