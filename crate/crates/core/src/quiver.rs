//! Finite quivers and their paths.
//!
//! A path stores its arrows in traversal order (first arrow first). Its
//! [`Display`](std::fmt::Display) uses the right-to-left notation
//! `(y|b_r|...|b_1|x)`, so the rightmost arrow is the one applied first.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with named vertices and arrows, both kept in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let mut q = Quiver::empty();
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())?;
        }
        Ok(q)
    }

    pub fn empty() -> Quiver {
        Quiver { vertices: Vec::new(), arrows: Vec::new(), vertex_index: HashMap::new() }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex `{name}`")));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// A quiver with the same vertices and every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    pub fn lazy(&self, v: usize) -> Path {
        Path::lazy(v)
    }

    /// The length-one path along arrow `a`.
    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    /// Builds a path from arrow names in traversal order, checking composability.
    pub fn path(&self, arrow_names: &[&str]) -> Result<Path> {
        let mut it = arrow_names.iter();
        let Some(first) = it.next() else {
            return Err(Error::InvalidQuiver("empty arrow list; use `lazy` for trivial paths".into()));
        };
        let mut p = self.arrow_path(self.arrow_index(first)?);
        for name in it {
            let next = self.arrow_path(self.arrow_index(name)?);
            p = self.compose(&next, &p)?;
        }
        Ok(p)
    }

    /// `p ∘ q`: traverse `q` and then `p`. Lazy paths are neutral.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path> {
        if q.target != p.source {
            return Err(Error::NotComposable(format!(
                "{} ends at `{}` but {} starts at `{}`",
                self.display_path(q),
                self.vertex_name(q.target),
                self.display_path(p),
                self.vertex_name(p.source)
            )));
        }
        let mut arrows = q.arrows.clone();
        arrows.extend_from_slice(&p.arrows);
        Ok(Path { source: q.source, target: p.target, arrows })
    }

    /// True iff the quiver has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        self.find_cycle_vertex().is_none()
    }

    /// A vertex on some oriented cycle (Kahn's algorithm leftovers), if any.
    fn find_cycle_vertex(&self) -> Option<usize> {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indeg[v] > 0)
        }
    }

    /// Every path, lazy ones included, sorted by [`Path`]'s order. Fails on an oriented cycle.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>> {
        if let Some(v) = self.find_cycle_vertex() {
            return Err(Error::CyclicQuiver(self.vertex_name(v).to_string()));
        }
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = (0..self.num_vertices()).map(Path::lazy).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    /// All paths from `from` to `to`.
    pub fn paths_between(&self, from: usize, to: usize) -> Result<Vec<Path>> {
        Ok(self.enumerate_paths()?.into_iter().filter(|p| p.source == from && p.target == to).collect())
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = BTreeSet::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.insert(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            out.push(members.into_iter().collect());
        }
        out
    }

    /// The full subquiver on `vertices` (in the given order).
    pub fn full_subquiver(&self, vertices: &[usize]) -> Quiver {
        let mut q = Quiver::empty();
        for &v in vertices {
            q.add_vertex(self.vertex_name(v)).expect("distinct names");
        }
        for a in &self.arrows {
            if vertices.contains(&a.source) && vertices.contains(&a.target) {
                q.add_arrow(&a.name, self.vertex_name(a.source), self.vertex_name(a.target))
                    .expect("endpoints present");
            }
        }
        q
    }

    /// Right-to-left display: `(y|b_r|...|b_1|x)`.
    pub fn display_path(&self, p: &Path) -> String {
        let mut parts = vec![self.vertex_name(p.target).to_string()];
        parts.extend(p.arrows.iter().rev().map(|&a| self.arrows[a].name.clone()));
        parts.push(self.vertex_name(p.source).to_string());
        format!("({})", parts.join("|"))
    }

    /// `a_r*...*a_1`, the product notation used in quiver files, or `e_x` for a lazy path.
    pub fn product_notation(&self, p: &Path) -> String {
        if p.is_lazy() {
            return format!("e_{}", self.vertex_name(p.source));
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A path; `arrows` is in traversal order and empty for the lazy path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_lazy()
    }

    /// Vertices visited, in traversal order.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut vs = vec![self.source];
        vs.extend(self.arrows.iter().map(|&a| q.arrow(a).target));
        vs
    }

    /// Position of the first occurrence of `inner`'s arrows as a contiguous block.
    pub fn find_subpath(&self, inner: &Path) -> Option<usize> {
        if inner.is_lazy() || inner.len() > self.len() {
            return None;
        }
        self.arrows.windows(inner.len()).position(|w| w == inner.arrows.as_slice())
    }
}

/// Length first; lazy paths by vertex; longer paths lexicographically by arrow declaration index.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| if self.is_lazy() { self.source.cmp(&other.source) } else { self.arrows.cmp(&other.arrows) })
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The linearly oriented quiver `1 -> 2 -> ... -> n` with arrows `a1, ..., a(n-1)`.
pub fn linear_quiver(n: usize) -> Quiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
    Quiver::new(&vertices, &arrows).expect("well-formed linear quiver")
}
