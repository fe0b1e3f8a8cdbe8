use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed multigraph with labelled vertices and edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize, DiagramError> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(DiagramError::DuplicateLabel(label.to_string()));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, label: &str, src: usize, dst: usize) -> Result<usize, DiagramError> {
        if self.edges.iter().any(|e| e.label == label) {
            return Err(DiagramError::DuplicateLabel(label.to_string()));
        }
        for v in [src, dst] {
            if v >= self.vertices.len() {
                return Err(DiagramError::UnknownVertex(v.to_string()));
            }
        }
        self.edges.push(Edge {
            label: label.to_string(),
            src,
            dst,
        });
        Ok(self.edges.len() - 1)
    }

    /// Vertices `0..n` named by their index, no edges.
    pub fn discrete(n: usize) -> Quiver {
        let mut q = Quiver::new();
        for i in 0..n {
            q.add_vertex(&i.to_string()).unwrap();
        }
        q
    }

    pub fn vertex(&self, label: &str) -> Result<usize, DiagramError> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| DiagramError::UnknownVertex(label.to_string()))
    }

    pub fn edge(&self, label: &str) -> Result<usize, DiagramError> {
        self.edges
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| DiagramError::UnknownEdge(label.to_string()))
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == v)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].dst == v)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.out_edges(v) {
                let d = self.edges[e].dst;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    stack.push(d);
                }
            }
        }
        seen == n
    }

    /// Same vertices, every edge reversed.
    pub fn dual(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    label: e.label.clone(),
                    src: e.dst,
                    dst: e.src,
                })
                .collect(),
        }
    }

    /// Paths from `u` to `v` of length at most `max_len`, in canonical order.
    pub fn paths_between(&self, u: usize, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier = vec![Path::identity(u)];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for p in &frontier {
                if p.dst == v {
                    out.push(p.clone());
                }
                for e in self.out_edges(p.dst) {
                    next.push(p.then_edge(self, e));
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    /// All paths of exactly length `len` (any endpoints).
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut frontier: Vec<Path> = (0..self.vertices.len()).map(Path::identity).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &frontier {
                for e in self.out_edges(p.dst) {
                    next.push(p.then_edge(self, e));
                }
            }
            frontier = next;
        }
        frontier.sort();
        frontier
    }

    /// Parse a word `e.f.g` (traversal order) or `id:v` into a path.
    pub fn parse_path(&self, word: &str) -> Result<Path, DiagramError> {
        let word = word.trim();
        if let Some(v) = word.strip_prefix("id:") {
            return Ok(Path::identity(self.vertex(v.trim())?));
        }
        let mut path: Option<Path> = None;
        for label in word.split('.') {
            let e = self.edge(label.trim())?;
            path = Some(match path {
                None => Path::edge(self, e),
                Some(p) => {
                    if p.dst != self.edges[e].src {
                        return Err(DiagramError::NotComposable(word.to_string()));
                    }
                    p.then_edge(self, e)
                }
            });
        }
        path.ok_or_else(|| DiagramError::NotComposable(word.to_string()))
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            format!("id:{}", self.vertices[p.src])
        } else {
            p.edges
                .iter()
                .map(|&e| self.edges[e].label.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A string of composable edges; the empty string is the identity at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub dst: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn identity(v: usize) -> Path {
        Path {
            src: v,
            dst: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(q: &Quiver, e: usize) -> Path {
        Path {
            src: q.edges[e].src,
            dst: q.edges[e].dst,
            edges: vec![e],
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn then_edge(&self, q: &Quiver, e: usize) -> Path {
        debug_assert_eq!(self.dst, q.edges[e].src);
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            src: self.src,
            dst: q.edges[e].dst,
            edges,
        }
    }

    /// `self` followed by `next`, i.e. the composite `next ∘ self`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.dst != next.src {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Some(Path {
            src: self.src,
            dst: next.dst,
            edges,
        })
    }

    /// The same edges read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut edges = self.edges.clone();
        edges.reverse();
        Path {
            src: self.dst,
            dst: self.src,
            edges,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.src, self.dst, self.edges.len(), &self.edges).cmp(&(
            other.src,
            other.dst,
            other.edges.len(),
            &other.edges,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The free category on a quiver, enumerated lazily by path length.
#[derive(Clone, Debug)]
pub struct PathCategory {
    pub quiver: Quiver,
}

impl PathCategory {
    pub fn new(quiver: Quiver) -> PathCategory {
        PathCategory { quiver }
    }

    pub fn objects(&self) -> usize {
        self.quiver.vertices.len()
    }

    /// Morphisms `u -> v` of length at most `max_len`.
    pub fn hom(&self, u: usize, v: usize, max_len: usize) -> Vec<Path> {
        self.quiver.paths_between(u, v, max_len)
    }

    pub fn compose(&self, g: &Path, f: &Path) -> Option<Path> {
        f.then(g)
    }

    pub fn identity(&self, v: usize) -> Path {
        Path::identity(v)
    }

    pub fn has_finite_homs(&self) -> bool {
        self.quiver.is_acyclic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_quiver_homs_grow() {
        let mut q = Quiver::new();
        let v = q.add_vertex("*").unwrap();
        q.add_edge("e", v, v).unwrap();
        let pc = PathCategory::new(q);
        let h = pc.hom(0, 0, 3);
        assert_eq!(h.len(), 4);
        assert_eq!(h[2].len(), 2);
        assert!(!pc.has_finite_homs());
    }

    #[test]
    fn single_edge_has_three_morphisms() {
        let mut q = Quiver::discrete(2);
        q.add_edge("a", 0, 1).unwrap();
        let pc = PathCategory::new(q);
        let total: usize = (0..2)
            .flat_map(|u| (0..2).map(move |v| (u, v)))
            .map(|(u, v)| pc.hom(u, v, 5).len())
            .sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn parse_words() {
        let mut q = Quiver::discrete(3);
        q.add_edge("a", 0, 1).unwrap();
        q.add_edge("b", 1, 2).unwrap();
        let p = q.parse_path("a.b").unwrap();
        assert_eq!((p.src, p.dst), (0, 2));
        assert_eq!(q.path_name(&p), "a.b");
        assert!(q.parse_path("b.a").is_err());
        assert_eq!(q.parse_path("id:1").unwrap(), Path::identity(1));
    }

    #[test]
    fn dual_is_involutive() {
        let mut q = Quiver::discrete(2);
        q.add_edge("a", 0, 1).unwrap();
        assert_eq!(q.dual().dual(), q);
        assert_eq!(q.dual().edges[0].src, 1);
    }
}
