//! Quivers and paths.
//!
//! Paths compose left to right: `ab` means "first `a`, then `b`", so the
//! target of `a` must be the source of `b`. Right modules over the path
//! algebra are then covariant representations of the quiver.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} refers to unknown vertex {vertex:?}")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("arrows {0:?} and {1:?} do not compose")]
    NotComposable(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(name, from, to)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, QuiverError> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, from, to) in arrows {
            q.add_arrow(name.as_ref(), from.as_ref(), to.as_ref())?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(label) {
            return Err(QuiverError::DuplicateVertex(label.to_string()));
        }
        let idx = self.vertices.len();
        self.vertices.push(label.to_string());
        self.vertex_index.insert(label.to_string(), idx);
        Ok(idx)
    }

    pub fn add_arrow(&mut self, name: &str, from: &str, to: &str) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        let endpoint = |v: &str| {
            self.vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| QuiverError::DanglingArrow {
                    arrow: name.to_string(),
                    vertex: v.to_string(),
                })
        };
        let (source, target) = (endpoint(from)?, endpoint(to)?);
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }
    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    /// Builds the path spelled by a sequence of arrow names.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        let mut arrows = Vec::with_capacity(names.len());
        for n in names {
            arrows.push(self.arrow_by_name(n.as_ref())?);
        }
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(
                    self.arrows[w[0]].name.clone(),
                    self.arrows[w[1]].name.clone(),
                ));
            }
        }
        match arrows.first() {
            Some(&a) => Ok(Path {
                source: self.arrows[a].source,
                target: self.arrows[*arrows.last().unwrap()].target,
                arrows,
            }),
            None => Err(QuiverError::UnknownArrow(String::new())),
        }
    }

    /// All paths of length at most `max_len`, stationary paths first, then by
    /// length, lexicographically by arrow index within a length.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::stationary).collect();
        let mut layer: Vec<Path> = (0..self.num_arrows())
            .map(|a| Path::arrow(self, a))
            .collect();
        for _ in 1..=max_len {
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
            // extending each path of a lex-sorted layer by arrows in index
            // order keeps the next layer lex-sorted
            let next: Vec<Path> = layer
                .iter()
                .flat_map(|p| {
                    self.arrows_from(p.target)
                        .map(move |a| p.then_arrow(self, a))
                        .collect::<Vec<_>>()
                })
                .collect();
            layer = next;
        }
        out
    }

    pub fn path_to_string(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in a quiver; an empty arrow list is the stationary path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = q.arrow(a);
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    fn then_arrow(&self, q: &Quiver, a: usize) -> Path {
        debug_assert_eq!(q.arrow(a).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target: q.arrow(a).target,
            arrows,
        }
    }

    /// The same arrows read backwards, a path in the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    /// Checks the endpoint invariant against `q`.
    pub fn is_valid_in(&self, q: &Quiver) -> bool {
        if self.source >= q.num_vertices() || self.target >= q.num_vertices() {
            return false;
        }
        let Some(&first) = self.arrows.first() else {
            return self.source == self.target;
        };
        let ok_ends = q.arrow(first).source == self.source
            && q.arrow(*self.arrows.last().unwrap()).target == self.target;
        ok_ends
            && self
                .arrows
                .windows(2)
                .all(|w| q.arrow(w[0]).target == q.arrow(w[1]).source)
    }

    /// Whether `pattern`'s arrows occur contiguously inside this path.
    pub fn contains_subpath(&self, pattern: &[usize]) -> bool {
        !pattern.is_empty()
            && pattern.len() <= self.arrows.len()
            && self.arrows.windows(pattern.len()).any(|w| w == pattern)
    }
}

/// Length first, then source vertex (for stationary paths), then arrow indices.
pub fn length_lex_cmp(a: &Path, b: &Path) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.arrows.cmp(&b.arrows))
        .then_with(|| a.source.cmp(&b.source))
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
            write!(f, "[{}]", parts.join(" "))
        }
    }
}
