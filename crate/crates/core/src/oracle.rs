//! Exact colouring parameters by exhaustive search, each with a witness.
//!
//! Colourings are enumerated as restricted growth strings (a position may
//! only use a colour at most one above the largest used so far), which
//! quotients out permutations of colours. The distinguishing searches skip
//! elements fixed by the whole automorphism group (their colour cannot matter,
//! so they take colour 0) and require distinct colours on twin vertices and on
//! the pendant edges of twin leaves, whose transpositions are automorphisms.
//!
//! The top of each search tree is expanded sequentially into prefixes which
//! are then completed in parallel; the first witness in prefix order wins, so
//! results do not depend on the execution strategy.

use crate::colouring::{Colour, Colouring, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::options::Options;
use crate::symmetry::{automorphisms_with, edge_image, is_distinguishing_with};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub witness: Colouring,
}

/// Constraint: `slots[i]` must differ from each `slots[j]` in `conflicts[i]`
/// (all `j < i`).
struct Problem<'a> {
    conflicts: Vec<Vec<usize>>,
    accept: &'a (dyn Fn(&[Colour]) -> bool + Sync),
}

const PREFIX_TARGET: usize = 64;

impl Problem<'_> {
    fn allowed(&self, assign: &[Colour], pos: usize, colour: Colour) -> bool {
        self.conflicts[pos].iter().all(|&j| assign[j] != colour)
    }

    fn dfs(&self, assign: &mut Vec<Colour>, used: Colour, k: Colour) -> bool {
        let pos = assign.len();
        if pos == self.conflicts.len() {
            return (self.accept)(assign);
        }
        for colour in 0..=used.min(k - 1) {
            if self.allowed(assign, pos, colour) {
                assign.push(colour);
                let next = if colour == used { used + 1 } else { used };
                if self.dfs(assign, next, k) {
                    return true;
                }
                assign.pop();
            }
        }
        false
    }

    /// All feasible prefixes of length `depth`, in lexicographic order.
    fn prefixes(&self, depth: usize, k: Colour) -> Vec<Vec<Colour>> {
        let mut level: Vec<Vec<Colour>> = vec![Vec::new()];
        for pos in 0..depth {
            let mut next = Vec::new();
            for p in &level {
                let used = p.iter().max().map_or(0, |&m| m + 1);
                for colour in 0..=used.min(k - 1) {
                    if self.allowed(p, pos, colour) {
                        let mut q = p.clone();
                        q.push(colour);
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        level
    }

    /// First accepted assignment with at most `k` colours, in RGS order.
    fn solve(&self, k: Colour, opts: &Options) -> Option<Vec<Colour>> {
        let len = self.conflicts.len();
        if k == 0 {
            return None;
        }
        let mut depth = 0;
        let mut prefixes = vec![Vec::new()];
        if opts.exec.is_parallel() {
            while depth < len && prefixes.len() < PREFIX_TARGET {
                depth += 1;
                prefixes = self.prefixes(depth, k);
            }
        }
        opts.exec.find_map_first(&prefixes, |p| {
            let mut assign = p.clone();
            let used = p.iter().max().map_or(0, |&m| m + 1);
            self.dfs(&mut assign, used, k).then_some(assign)
        })
    }

    /// Least `k` in `lower..=upper` admitting an accepted assignment.
    fn minimise(&self, lower: usize, upper: usize, opts: &Options) -> Option<(usize, Vec<Colour>)> {
        (lower.max(1)..=upper.max(1)).find_map(|k| self.solve(k as Colour, opts).map(|a| (k, a)))
    }
}

fn check_cap(g: &Graph, opts: &Options) -> Result<()> {
    if g.vertex_count() > opts.caps.oracle_vertices {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the oracle cap {}",
            g.vertex_count(),
            opts.caps.oracle_vertices
        )));
    }
    Ok(())
}

/// Least number of colours in a distinguishing vertex colouring.
pub fn distinguishing_number(g: &Graph) -> Result<OracleResult> {
    distinguishing_number_with(g, &Options::default())
}

pub fn distinguishing_number_with(g: &Graph, opts: &Options) -> Result<OracleResult> {
    check_cap(g, opts)?;
    let n = g.vertex_count();
    let group = automorphisms_with(g, opts)?;
    if group.is_trivial() {
        return Ok(OracleResult {
            value: 1,
            witness: Colouring::constant(Kind::Vertex, n, 0),
        });
    }
    let fixed = group.fixed_vertices();
    let free: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
    let slot_of = |v: usize| free.iter().position(|&f| f == v);
    let mut conflicts = vec![Vec::new(); free.len()];
    let mut twin_degree = vec![0usize; n];
    for (u, v) in g.twin_pairs() {
        twin_degree[u] += 1;
        twin_degree[v] += 1;
        if let (Some(i), Some(j)) = (slot_of(u), slot_of(v)) {
            conflicts[j.max(i)].push(j.min(i));
        }
    }
    // twin classes are cliques of the twin relation
    let lower = twin_degree.iter().max().map_or(1, |&d| d + 1);
    let expand = |assign: &[Colour]| {
        let mut colours = vec![0; n];
        for (slot, &v) in free.iter().enumerate() {
            colours[v] = assign[slot];
        }
        Colouring::new(Kind::Vertex, colours)
    };
    let accept = |assign: &[Colour]| {
        let c = expand(assign);
        match group.elements() {
            Some(elements) if elements.len() <= 4096 => elements
                .iter()
                .skip(1)
                .all(|p| (0..n).any(|v| c.get(v) != c.get(p[v]))),
            _ => is_distinguishing_with(g, &c, opts).unwrap_or(false),
        }
    };
    let problem = Problem {
        conflicts,
        accept: &accept,
    };
    let (value, assign) = problem
        .minimise(lower, free.len(), opts)
        .ok_or_else(|| Error::Invariant("no distinguishing colouring found".into()))?;
    Ok(OracleResult {
        value,
        witness: expand(&assign),
    })
}

/// Least number of colours in a distinguishing edge colouring.
pub fn distinguishing_index(g: &Graph) -> Result<OracleResult> {
    distinguishing_index_with(g, &Options::default())
}

pub fn distinguishing_index_with(g: &Graph, opts: &Options) -> Result<OracleResult> {
    check_cap(g, opts)?;
    if g.components().iter().any(|comp| comp.len() <= 2) {
        return Err(Error::K1K2Component);
    }
    let m = g.edge_count();
    let group = automorphisms_with(g, opts)?;
    if group.is_trivial() {
        return Ok(OracleResult {
            value: 1,
            witness: Colouring::constant(Kind::Edge, m, 0),
        });
    }
    let edge_perms: Vec<Vec<usize>> = group
        .generators()
        .iter()
        .map(|p| edge_image(g, p))
        .collect();
    let free: Vec<usize> = (0..m)
        .filter(|&e| edge_perms.iter().any(|p| p[e] != e))
        .collect();
    let slot_of = |e: usize| free.iter().position(|&f| f == e);
    let mut conflicts = vec![Vec::new(); free.len()];
    let mut lower = 1;
    let mut twin_leaf_count = vec![0usize; g.vertex_count()];
    for (u, v) in g.twin_pairs() {
        if g.degree_of(u) == 1 && g.degree_of(v) == 1 && !g.has_edge(u, v) {
            let hub = g.neighbours(u)[0];
            twin_leaf_count[hub] += 1;
            let e = g.edge_id(u, hub).unwrap();
            let f = g.edge_id(v, hub).unwrap();
            if let (Some(i), Some(j)) = (slot_of(e), slot_of(f)) {
                conflicts[i.max(j)].push(i.min(j));
            }
        }
    }
    for &pairs in &twin_leaf_count {
        if pairs > 0 {
            // t twin leaves at a hub give t(t-1)/2 pairs
            let t = (1..).find(|t| t * (t - 1) / 2 == pairs).unwrap_or(1);
            lower = lower.max(t);
        }
    }
    let expand = |assign: &[Colour]| {
        let mut colours = vec![0; m];
        for (slot, &e) in free.iter().enumerate() {
            colours[e] = assign[slot];
        }
        Colouring::new(Kind::Edge, colours)
    };
    let accept = |assign: &[Colour]| is_distinguishing_with(g, &expand(assign), opts).unwrap_or(false);
    let problem = Problem {
        conflicts,
        accept: &accept,
    };
    let (value, assign) = problem
        .minimise(lower, free.len(), opts)
        .ok_or_else(|| Error::Invariant("no distinguishing edge colouring found".into()))?;
    Ok(OracleResult {
        value,
        witness: expand(&assign),
    })
}

fn proper_search(adjacency: Vec<Vec<usize>>, kind: Kind, lower: usize, opts: &Options) -> Result<OracleResult> {
    let len = adjacency.len();
    let conflicts: Vec<Vec<usize>> = adjacency
        .iter()
        .enumerate()
        .map(|(i, nbrs)| nbrs.iter().copied().filter(|&j| j < i).collect())
        .collect();
    let accept = |_: &[Colour]| true;
    let problem = Problem {
        conflicts,
        accept: &accept,
    };
    if len == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: Colouring::new(kind, Vec::new()),
        });
    }
    let (value, assign) = problem
        .minimise(lower, len, opts)
        .ok_or_else(|| Error::Invariant("no proper colouring found".into()))?;
    Ok(OracleResult {
        value,
        witness: Colouring::new(kind, assign),
    })
}

/// Least number of colours in a proper vertex colouring.
pub fn chromatic_number(g: &Graph) -> Result<OracleResult> {
    chromatic_number_with(g, &Options::default())
}

pub fn chromatic_number_with(g: &Graph, opts: &Options) -> Result<OracleResult> {
    check_cap(g, opts)?;
    let adjacency = (0..g.vertex_count())
        .map(|v| g.neighbours(v).to_vec())
        .collect();
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    proper_search(adjacency, Kind::Vertex, lower, opts)
}

/// Least number of colours in a proper edge colouring.
pub fn chromatic_index(g: &Graph) -> Result<OracleResult> {
    chromatic_index_with(g, &Options::default())
}

pub fn chromatic_index_with(g: &Graph, opts: &Options) -> Result<OracleResult> {
    check_cap(g, opts)?;
    let adjacency: Vec<Vec<usize>> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let mut around: Vec<usize> = g
                .neighbours(u)
                .iter()
                .map(|&w| g.edge_id(u, w).unwrap())
                .chain(g.neighbours(v).iter().map(|&w| g.edge_id(v, w).unwrap()))
                .filter(|&f| f != e)
                .collect();
            around.sort_unstable();
            around.dedup();
            around
        })
        .collect();
    let lower = g.max_degree().unwrap_or(0).max(1);
    proper_search(adjacency, Kind::Edge, lower, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    DistinguishingNumber,
    DistinguishingIndex,
    ChromaticNumber,
    ChromaticIndex,
}

impl std::str::FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(Parameter::DistinguishingNumber),
            "Dprime" | "D'" => Ok(Parameter::DistinguishingIndex),
            "chi" => Ok(Parameter::ChromaticNumber),
            "chiprime" | "chi'" => Ok(Parameter::ChromaticIndex),
            other => Err(Error::Parse(format!("unknown parameter `{other}`"))),
        }
    }
}

pub fn compute(g: &Graph, parameter: Parameter, opts: &Options) -> Result<OracleResult> {
    match parameter {
        Parameter::DistinguishingNumber => distinguishing_number_with(g, opts),
        Parameter::DistinguishingIndex => distinguishing_index_with(g, opts),
        Parameter::ChromaticNumber => chromatic_number_with(g, opts),
        Parameter::ChromaticIndex => chromatic_index_with(g, opts),
    }
}
