//! Finite simple graphs with stable, named vertices.
//!
//! Vertices are opaque string ids mapped to dense indices in declaration
//! order; edges keep their first-seen orientation so that reports can echo
//! the input, but are compared unordered everywhere else.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Graph {}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Validating constructor over string ids.
pub fn make_graph<V, E>(vertices: &[V], edges: &[(E, E)]) -> Result<Graph>
where
    V: AsRef<str>,
    E: AsRef<str>,
{
    let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(name.clone()));
        }
    }
    let mut pairs = Vec::with_capacity(edges.len());
    for (a, b) in edges {
        let (a, b) = (a.as_ref(), b.as_ref());
        let u = *index
            .get(a)
            .ok_or_else(|| Error::UnknownEndpoint(a.to_string()))?;
        let v = *index
            .get(b)
            .ok_or_else(|| Error::UnknownEndpoint(b.to_string()))?;
        pairs.push((u, v));
    }
    Graph::from_parts(names, index, pairs)
}

impl Graph {
    /// Builds a graph from names and index pairs. Duplicate edges collapse
    /// onto their first occurrence.
    pub fn from_indices(names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        Graph::from_parts(names, index, edges)
    }

    fn from_parts(
        names: Vec<String>,
        index: HashMap<String, usize>,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Graph> {
        let n = names.len();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut edge_index = HashMap::with_capacity(pairs.len());
        let mut adj = vec![Vec::new(); n];
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::UnknownEndpoint(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            if edge_index.contains_key(&key(u, v)) {
                continue;
            }
            edge_index.insert(key(u, v), edges.len());
            edges.push((u, v));
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            index,
            edges,
            edge_index,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Edges as index pairs, in insertion order and orientation.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index.contains_key(&key(u, v))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&key(u, v)).copied()
    }

    /// `"u|v"` with endpoints in stored orientation.
    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}|{}", self.names[u], self.names[v])
    }

    pub fn degree(&self, name: &str) -> Result<usize> {
        Ok(self.adj[self.vertex(name)?].len())
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .max()
            .ok_or(Error::EmptyGraph)
    }

    /// Vertices at distance at most `radius` from `centre`, sorted by index.
    pub fn ball(&self, centre: &str, radius: usize) -> Result<Vec<usize>> {
        let start = self.vertex(centre)?;
        Ok(self.ball_of(start, radius))
    }

    pub fn ball_of(&self, start: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        (0..self.vertex_count())
            .filter(|&v| dist[v] != usize::MAX)
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if !seen[v] {
                let comp = self.ball_of(v, usize::MAX);
                for &u in &comp {
                    seen[u] = true;
                }
                out.push(comp);
            }
        }
        out
    }

    /// Pairs `u < v` with `N(u) \ {v} == N(v) \ {u}`; the transposition of
    /// such a pair is always an automorphism.
    pub fn twin_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adj[u].len() != self.adj[v].len() {
                    continue;
                }
                let nu = self.adj[u].iter().filter(|&&w| w != v);
                let nv = self.adj[v].iter().filter(|&&w| w != u);
                if nu.eq(nv) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}
