//! Quivers (finite directed multigraphs) and paths.
//!
//! Composition convention: paths are stored in **application order** — the
//! arrow applied first comes first in the list.  When two paths compose, the
//! one that acts first is the right-hand factor in function-style notation
//! `p * q` ("q then p"); the library works with application order internally
//! and lets the text layer choose how to render products.

use std::collections::HashMap;
use std::fmt;

use crate::error::AlgebraError;

/// Index of a vertex within its quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an arrow within its quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

/// A named arrow between two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver: named vertices and named arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Builds a quiver, checking that names are unique and non-empty and that
    /// all arrow endpoints exist.
    pub fn new(
        vertex_names: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
    ) -> Result<Quiver, AlgebraError> {
        if vertex_names.is_empty() {
            return Err(AlgebraError::InvalidQuiver(
                "a quiver needs at least one vertex".into(),
            ));
        }
        let mut vertex_index = HashMap::new();
        for (i, name) in vertex_names.iter().enumerate() {
            if name.is_empty() {
                return Err(AlgebraError::InvalidQuiver("empty vertex name".into()));
            }
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!(
                    "duplicate vertex name '{name}'"
                )));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut arrow_list = Vec::with_capacity(arrows.len());
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            if name.is_empty() {
                return Err(AlgebraError::InvalidQuiver("empty arrow name".into()));
            }
            if s >= vertex_names.len() || t >= vertex_names.len() {
                return Err(AlgebraError::InvalidQuiver(format!(
                    "arrow '{name}' has an endpoint outside the vertex range"
                )));
            }
            if vertex_index.contains_key(&name) {
                return Err(AlgebraError::InvalidQuiver(format!(
                    "name '{name}' is used for both a vertex and an arrow"
                )));
            }
            if arrow_index.insert(name.clone(), ArrowId(i)).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!(
                    "duplicate arrow name '{name}'"
                )));
            }
            arrow_list.push(Arrow {
                name,
                source: VertexId(s),
                target: VertexId(t),
            });
        }
        Ok(Quiver {
            vertices: vertex_names,
            arrows: arrow_list,
            vertex_index,
            arrow_index,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }
}

/// A path in a quiver, stored in application order: `arrows[0]` acts first.
/// Length-zero paths are the vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn identity(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrow(q: &Quiver, a: ArrowId) -> Path {
        let arr = q.arrow(a);
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// Applies one more arrow after this path (at the target end).  `None`
    /// when the arrow's source is not this path's target.
    pub fn extend(&self, q: &Quiver, a: ArrowId) -> Option<Path> {
        let arr = q.arrow(a);
        if arr.source != self.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Some(Path {
            source: self.source,
            target: arr.target,
            arrows,
        })
    }

    /// Composes two paths: `first` acts first, `then` acts afterwards.
    /// `None` when the endpoints do not match.
    pub fn compose(first: &Path, then: &Path) -> Option<Path> {
        if first.target != then.source {
            return None;
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&then.arrows);
        Some(Path {
            source: first.source,
            target: then.target,
            arrows,
        })
    }

    /// Renders the path function-style (last-applied arrow leftmost), with
    /// `e_v` for idempotents.
    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, q }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical path order: by length, then lexicographically by the arrow
/// sequence in application order, then by source vertex (relevant only for
/// idempotents).
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    q: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.arrows.is_empty() {
            return write!(f, "e_{}", self.q.vertex_name(self.path.source));
        }
        let names: Vec<&str> = self
            .path
            .arrows
            .iter()
            .rev()
            .map(|&a| self.q.arrow(a).name.as_str())
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// All paths of the given length, in canonical order.
pub fn enumerate_paths(q: &Quiver, length: usize) -> Vec<Path> {
    let mut current: Vec<Path> = (0..q.n_vertices())
        .map(|v| Path::identity(VertexId(v)))
        .collect();
    for _ in 0..length {
        let mut next = Vec::new();
        for p in &current {
            for a in 0..q.n_arrows() {
                if let Some(ext) = p.extend(q, ArrowId(a)) {
                    next.push(ext);
                }
            }
        }
        // Extending in prefix order is not globally canonical (extensions of
        // different idempotents interleave), so sort each round.
        next.sort();
        current = next;
    }
    debug_assert!(current.windows(2).all(|w| w[0] < w[1]));
    current
}
